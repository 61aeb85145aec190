"""Values as printed in the published appendix tables, transcribed verbatim.

Entries are strings in the scalar grammar of :func:`vlplus.scalars.parse_scalar`.
They are comparison targets only; nothing in the package computes from them
except the orientation and mismatch reports.
"""

from __future__ import annotations

from .scalars import parse_scalar

D = "((4*k-1)*(4*k-9))"

TABLE1 = [
    ["1/(4*k)^2", "1/(2*k)", "1/(2*k)", "2", "1"],
    ["0", "0", "1/(2*k)", "1", "1/(4*k)"],
    ["1", "3", "0", "0", "0"],
    ["0", "1", "2", "0", "1"],
    ["0", "0", "1", "3", "0"],
]

TABLE2 = [
    [f"48*k^2/{D}", f"-24*(16*k-3)*k/{D}", f"2*(8*k^2-20*k+3)/{D}", f"-6*(8*k^2-16*k+3)/{D}", "24*k/(4*k-9)"],
    [f"-16*k^2/{D}", f"8*(16*k-3)*k/{D}", f"1/{D}", f"2*(8*k^2-16*k+3)/{D}", "-8*k/(4*k-9)"],
    [f"12*k/{D}", f"-3*(16*k^2-8*k+3)/{D}", f"-3/(4*k*{D})", f"-(72*k-27)/(12*k*{D})", "(4*k-3)/(4*k-9)"],
    [f"-4*k/{D}", f"(16*k^2-8*k+3)/{D}", f"1/(4*k*{D})", f"(8*k-3)/(4*k*{D})", "-2/(4*k-9)"],
    [f"8*(2*k-3)*k/{D}", f"-2*(16*k^2+12*k-9)/{D}", f"-(2*k-3)/(2*k*{D})", f"-(2*k-3)*(8*k-3)/(2*k*{D})", "6/(4*k-9)"],
]

TABLE3 = [
    ["0", "2", "0", "0", "0", "0", "0", "0", "0", "0", "5", "0"],
    ["0", "0", "4", "0", "0", "0", "3", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "6", "1", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "5", "2", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "4", "0", "3", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "3", "0", "2", "2", "0", "0"],
    ["0", "0", "0", "0", "0", "6", "0", "0", "0", "0", "0", "1"],
    ["0", "0", "2", "0", "0", "0", "3", "0", "0", "0", "1/(2*k)", "0"],
    ["0", "0", "0", "4", "0", "0", "1/(2*k)", "1", "0", "0", "0", "0"],
    ["1/(64*k^4)", "9/(16*k^3)", "3/(2*k^2)", "-15/k", "12/k", "-9/k", "3/(2*k^2)", "6/k", "2/k^2", "3/(8*k^2)", "3/(64*k^3)", "0"],
    ["1/(4*k)^4", "6/k^3", "3/(2*k^2)", "15/(2*k)", "0", "9/(2*k)", "0", "0", "5/(4*k^2)", "0", "0", "0"],
    ["0", "0", "0", "0", "3", "2", "0", "0", "0", "1/(2*k)", "0", "0"],
]

# rows c_1..c_12, columns C_1..C_6
TABLE4 = [
    ["-13392*k/269", "-73464*k^2/269", "1164704*k^3/1345", "-613408*k^3/1345", "323568*k^3/1345", "-91552*k^2/1345"],
    ["19/538", "35*k/269", "-1204*k^2/807", "188*k^2/807", "-418*k^2/807", "-16*k/269"],
    ["25/(538*k)", "131/269", "602*k/4035", "-94*k/4035", "209*k/4035", "8/1345"],
    ["-25/(12912*k^2)", "-85/(8608*k)", "19573/96840", "-3941/96840", "3617/193680", "-1/(4035*k)"],
    ["25/(2152*k^2)", "255/(4304*k)", "-3433/16140", "3941/16140", "-3617/32280", "2/(1345*k)"],
    ["-125/(4304*k^2)", "-1275/(8608*k)", "3433/6456", "-713/6456", "3617/12912", "-1/(269*k)"],
    ["-50/(807*k)", "-85/269", "-2408*k/12105", "376*k/12105", "-836*k/12105", "-32/4035"],
    ["125/(3228*k^2)", "425/(2152*k)", "-3433/4842", "713/4842", "-389/9684", "4/(807*k)"],
    ["25/(538*k)", "255/1076", "4637*k/4035", "3941*k/4035", "4453*k/8070", "1361/2690"],
    ["25/(538*k)", "255/1076", "-3433*k/4035", "-4129*k/4035", "-3617*k/8070", "8/1345"],
    ["50/269", "-14*k/269", "2408*k^2/4035", "-376*k^2/4035", "836*k^2/4035", "32*k/1345"],
    ["375/(2152*k^2)", "3825/(4304*k)", "-3433/1076", "713/1076", "-3617/2152", "6/(269*k)"],
]

# rows c_1..c_12, columns C_7..C_12
TABLE5 = [
    ["0", "661872*k^2/1345", "-1465296*k^3/1345", "82432*k^4/1345", "14592*k^4/1345", "304384*k^3/1345"],
    ["0", "-94*k/269", "482*k^2/269", "-32*k^3/807", "128*k^3/807", "72*k^2/269"],
    ["0", "-1251/2690", "-241*k/1345", "16*k^2/4035", "-64*k^2/4035", "-36*k/1345"],
    ["0", "417/(21520*k)", "-3553/64560", "-2*k/12105", "8*k/12105", "3/2690"],
    ["0", "-1251/(10760*k)", "3553/10760", "4*k/4035", "-16*k/4035", "-9/1345"],
    ["0", "1251/(4304*k)", "-3553/4304", "-2*k/807", "8*k/807", "9/538"],
    ["0", "834/1345", "964*k/4035", "-64*k^2/12105", "256*k^2/12105", "48*k/1345"],
    ["0", "-417/(1076*k)", "3553/3228", "8*k/2421", "-32*k/2421", "-6/269"],
    ["0", "-1251/2690", "-4517*k/2690", "16*k^2/4035", "-64*k^2/4035", "-2726*k/1345"],
    ["0", "-1251/2690", "3553*k/2690", "16*k^2/4035", "-64*k^2/4035", "2654*k/1345"],
    ["0", "188*k/1345", "-964*k^2/1345", "64*k^3/4035", "-256*k^3/4035", "-144*k^2/1345"],
    ["1", "-3753/(2152*k)", "10659/2152", "4*k/269", "-16*k/269", "-27/269"],
]

TABLE6 = [
    ["5", "2", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "4", "1", "2", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "3", "0", "2", "2", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "3", "0", "2", "2", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "4", "0", "1", "2", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "2", "0", "3", "2", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "5", "2"],
    ["3", "0", "0", "0", "2", "1/(2*k)", "0", "0", "0", "0", "0"],
    ["0", "2", "1", "0", "0", "1", "0", "0", "1/(2*k)", "0", "0"],
    ["0", "0", "0", "3", "0", "0", "2", "0", "0", "1/(2*k)", "0"],
    ["256*k^3", "192*k^2", "192*k^2", "48*k", "96*k^2", "96*k", "4", "16*k", "6", "0", "0"],
]

DET_TABLE1 = "-(16*k^2-40*k+9)/(16*k^2)"
DET_TABLE3 = "-36315/(128*k^8)"
DET_TABLE6 = "-(24/k^2)*(1536*k^4-2592*k^3+1072*k^2-58*k+15)"

BETA = "(64*k^2-16*k-18)/((4*k-1)*(4*k-9))"

# coordinates of J_{-1}E in a_1..a_5 and of J_{-1}J in c_1..c_12
J1E_COORDS = ["1/(4*k^2)", "6/k", "12-1/k", "8*k-17", "6+3/(4*k)"]
J1J_COORDS = [
    "1/(16*k^4)", "11/(2*k^3)", "12/k^2", "558/k", "-87/k", "186/k",
    "90/k^2", "72/k", "43/k^2", "117/(2*k^2)", "51/(8*k^3)", "105/(16*k^2)",
]
L2SQ_J_COORDS = TABLE3[9]
L2_4_ONE_COORDS = TABLE3[10]

# the two decimal (constant, coefficient of 1/k) pairs printed for rho and sigma
RHO_SIGMA_CANDIDATES = {
    "statement": {"rho": ("3.28", "0.098"), "sigma": ("2.87", "-0.39")},
    "proof": {"rho": ("3.06", "0.098"), "sigma": ("3.73", "-0.39")},
}


def parsed(table: list[list[str]]):
    return [[parse_scalar(x, symbolic=True) for x in row] for row in table]


def parsed_vector(vec: list[str]):
    return [parse_scalar(x, symbolic=True) for x in vec]
