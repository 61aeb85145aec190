import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlplus.cli import run
from vlplus.expr import Alpha, Expr, ExprSyntaxError, Mode, State, Vir, eval_text, parse_expr, print_expr
from vlplus.fock import E_elem, F_elem, FockElement, Lattice
from vlplus.vertex import J_elem, L_power, mode_apply, virasoro

LAT = Lattice(3)

states = st.one_of(
    st.sampled_from([State("1"), State("J"), State("w"), State("E"), State("F")]),
    st.builds(State, st.sampled_from(["E", "F"]), st.integers(1, 4)),
)
simple_ops = st.one_of(st.builds(Alpha, st.integers(-5, 5)), st.builds(Vir, st.integers(-5, 5)))


def exprs():
    return st.recursive(
        st.builds(lambda ops, s: Expr(tuple(ops), s), st.lists(simple_ops, max_size=3), states),
        lambda inner: st.builds(
            lambda ops, e, n, s: Expr(tuple(ops) + (Mode(e, n),), s),
            st.lists(simple_ops, max_size=2), inner, st.integers(-4, 3), states,
        ),
        max_leaves=4,
    )


@settings(max_examples=100)
@given(exprs())
def test_print_parse_round_trip(e):
    assert parse_expr(print_expr(e)) == e


def test_evaluation_examples():
    assert eval_text("L(-2) L(-2) E", LAT) == L_power(LAT, -2, 2, E_elem(1))
    assert eval_text("[J]_-1 E", LAT) == mode_apply(LAT, J_elem(LAT), -1, E_elem(1))
    assert eval_text("a(-3) a(-1) E2", LAT) == E_elem(2, (3, 1))
    assert eval_text("L(-1) E", LAT) == F_elem(1, (1,))
    assert eval_text("  [J]_0 1 ", LAT) == FockElement()
    assert eval_text("L(-2) [w]_1 F", LAT) == virasoro(LAT, -2, F_elem(1) * 3)


@pytest.mark.parametrize(
    "text,offset,expected",
    [
        ("", 0, {"a(", "L(", "[", "1", "E", "F", "J", "w"}),
        ("a(-1", 4, {")"}),
        ("L(x) E", 2, {"INT"}),
        ("[J]-1 E", 2, {"]_"}),
        ("E F", 2, {"end of input"}),
        ("a(-1) é", 6, {"a(", "L(", "[", "1", "E", "F", "J", "w"}),
        ("é E", 0, {"a(", "L(", "[", "1", "E", "F", "J", "w"}),
    ],
)
def test_syntax_errors(text, offset, expected):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.offset == offset
    assert info.value.expected == frozenset(expected)


def test_offset_counts_bytes():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("a(-1) ü )")
    assert info.value.offset == len("a(-1) ".encode())


def test_zero_charge_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("E0")


# --- CLI ------------------------------------------------------------------


def cli(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def test_cli_tables_json_deterministic(capsys):
    code, out1 = cli(capsys, "tables", "--id", "1")
    _, out2 = cli(capsys, "tables", "--id", "1")
    assert code == 0 and out1 == out2
    data = json.loads(out1)
    assert data["determinant"] == "(-16*k^2 + 40*k - 9)/(16*k^2)"
    assert "mismatches" not in data


def test_cli_tables_compare_paper(capsys):
    code, out = cli(capsys, "tables", "--id", "6", "--compare-paper")
    data = json.loads(out)
    assert code == 0
    assert data["mismatches"] == [{"row": 9, "col": 6, "computed": "2", "printed": "1"}]


def test_cli_tables_csv_and_latex(capsys):
    code, out = cli(capsys, "tables", "--id", "2", "--format", "csv")
    assert code == 0 and out.startswith(",A_{1}")
    code, out = cli(capsys, "tables", "--id", "3", "--format", "latex")
    assert code == 0 and "\\begin{tabular}" in out


def test_cli_constants(capsys):
    code, out = cli(capsys, "constants", "--at-k", "3")
    data = json.loads(out)
    assert code == 0
    assert data["at_k"]["beta"] == "170/11" and data["gamma"] == "64"
    assert data["gamma_is_16rho_plus_4sigma"] is True and data["printed_pair_match"] is None


def test_cli_eval_symbolic(capsys):
    code, out = cli(capsys, "eval", "--k", "sym", "--expr", "L(0) E")
    data = json.loads(out)
    assert code == 0 and data["k"] == "sym"
    assert {"parts": [], "charge": 1, "coeff": "k"} in data["element"]


def test_cli_eval_syntax_error(capsys):
    code, out = cli(capsys, "eval", "--expr", "L(-2 E")
    data = json.loads(out)
    assert code == 1
    assert data["error"] == "ExprSyntaxError" and data["offset"] == 4 and data["expected"] == [")"]


def test_cli_congruent(capsys):
    code, out = cli(capsys, "congruent", "--k", "3", "--lhs", "[J]_-1 E", "--rhs", "L(-2) L(-2) E")
    data = json.loads(out)
    # beta = 170/11 at k=3, so the bare L(-2)^2E is not congruent
    assert code == 1 and data["congruent"] is False
    code, out = cli(capsys, "congruent", "--lhs", "a(-1) F", "--rhs", "1")
    assert code == 1 and json.loads(out)["error"] == "NotHomogeneousError"
    code, out = cli(capsys, "congruent", "--lhs", "L(-1) E", "--rhs", "L(-1) L(-1) L(-1) L(-1) 1")
    assert code == 0 and json.loads(out)["verified"] is True


def test_cli_c2dim(capsys):
    code, out = cli(capsys, "c2dim", "--k", "3", "--max-weight", "6")
    rows = out.strip().splitlines()
    assert code == 0 and rows[0] == "weight,ambient_dim,c2_rank,quotient_dim"
    assert [int(r.split(",")[3]) for r in rows[1:]] == [1, 0, 1, 1, 2, 1, 2]


def test_cli_schur(capsys):
    code, out = cli(capsys, "schur", "--j", "2", "--m", "1")
    assert code == 0 and len(json.loads(out)["element"]) == 2


def test_cli_report_markdown(capsys):
    code, out = cli(capsys, "report", "--no-c2", "--format", "markdown")
    assert code == 0 and out.startswith("# V_L^+ report")


def test_cli_usage_errors(capsys):
    assert run([]) == 2
    assert run(["tables", "--id", "9"]) == 2
    assert run(["eval", "--k", "zero", "--expr", "E"]) == 2
    assert run(["constants", "--at-k", "0"]) == 2
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vlplus", "schur", "--j", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["element"] == [{"parts": [1], "charge": 0, "coeff": "1"}]
