"""The ten acceptance criteria as callable checks, shared by the CLI and the tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from . import printed, report
from .c2 import spanning_check
from .fock import FockElement, Lattice, partitions, theta, vacuum
from .scalars import Poly, parse_scalar
from .vertex import (
    CENTRAL_CHARGE,
    mode_apply,
    mode_apply_oracle,
    virasoro,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {status}  {self.title}  ({self.seconds:.2f}s, limit {self.limit:.0f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit_seconds": self.limit, "details": self.details}


def _timed(number: int, title: str, limit: float, fn: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, details = fn()
    dt = time.perf_counter() - t0
    if dt > limit:
        details["timeout"] = f"took {dt:.1f}s"
    return CriterionResult(number, title, ok and dt <= limit, dt, limit, details)


def _forward_table_check(tid: int) -> tuple[bool, dict]:
    t = report.emit_table(tid)
    details = {
        "entries_match": t.entries_match,
        "mismatches": [m.to_json() for m in t.mismatches],
        "determinant": str(t.determinant),
        "printed_determinant": str(t.printed_determinant),
    }
    return t.entries_match and bool(t.determinant_matches), details


def criterion_1():
    return _timed(1, "Table 1 entries and determinant", 5, lambda: _forward_table_check(1))


def criterion_2():
    return _timed(2, "Table 3 entries and determinant", 30, lambda: _forward_table_check(3))


def criterion_3():
    return _timed(3, "Table 6 entries and determinant", 30, lambda: _forward_table_check(6))


def criterion_4():
    def run():
        reps = {i: report.emit_table(i) for i in (2, 4, 5)}
        details = {
            str(i): {
                "orientation": r.orientation,
                "product_identity": r.product_identity,
                "mismatch_count": len(r.mismatches),
                "printed_self_consistent": r.printed_self_consistent,
            }
            for i, r in reps.items()
        }
        ok = all(r.product_identity and r.orientation is not None for r in reps.values())
        return ok, details

    return _timed(4, "inverse products and comparison with Tables 2, 4, 5", 60, run)


def criterion_5(k: int = 3):
    def run():
        cc = report.corollary_constants()
        expected = parse_scalar(printed.BETA, symbolic=True)
        from .c2 import congruent
        from .fock import E_elem
        from .vertex import J_elem, L_power

        lat = Lattice(k)
        E = E_elem(1)
        beta_k = cc.beta(k)
        cert = congruent(lat, mode_apply(lat, J_elem(lat), -1, E), L_power(lat, -2, 2, E) * beta_k)
        ok = cc.beta == expected and cert.member and cert.verified and report.beta_residual_zero()
        if k == 3:
            ok = ok and beta_k == Fraction(170, 11)
        return ok, {"beta": str(cc.beta), "beta_at_k": str(beta_k), "certificate": cert.to_json()}

    return _timed(5, "beta symbolic and C2 certificate", 120, run)


def criterion_6(k: int = 3):
    def run():
        from .c2 import congruent
        from .vertex import J_elem, L_power

        cc = report.corollary_constants()
        cmp_ = report.compare_printed_pairs(cc.rho, cc.sigma)
        lat = Lattice(k)
        J = J_elem(lat)
        rhs = L_power(lat, -2, 2, J) * cc.rho(k) + L_power(lat, -2, 4, vacuum()) * cc.sigma(k)
        cert = congruent(lat, mode_apply(lat, J, -1, J), rhs)
        ok = cc.gamma == cc.rho * 16 + cc.sigma * 4 and cert.member and cert.verified and cmp_["match"] in (None, "statement", "proof", "both")
        return ok, {"constants": cc.to_json(), "printed_pair_match": cmp_["match"], "comparison": cmp_,
                    "certificate": cert.to_json()}

    return _timed(6, "rho, sigma, gamma and the weight-8 certificate", 300, run)


def criterion_7():
    def run():
        results = {}
        for m in (1, 2):
            results[f"pairing m={m}"] = report.lemma_charge_identity(m, m)
        for n in (1, 2, 3):
            for m in (1, 2):
                results[f"product n={n} m={m}"] = report.lemma_product_identity(n, m)
                results[f"derivative n={n} m={m}"] = report.derivative_identity(n, m)
        for m in (1, 2, 3):
            results[f"L(-1)E^{m}"] = report.derivative_of_E(m)
        return all(results.values()), {"failed": [k for k, v in results.items() if not v], "count": len(results)}

    return _timed(7, "charged-sector identities (symbolic k)", 30, run)


# ---------------------------------------------------------------------------
# axioms


def random_monomial(rng: random.Random, max_heis: int = 3, charges=(-1, 0, 1)) -> FockElement:
    n = rng.randint(0, max_heis)
    parts = rng.choice(partitions(n))
    coeff = Fraction(rng.choice([1, -1, 2, 3]), rng.choice([1, 2]))
    return FockElement.monomial(parts, rng.choice(charges), coeff)


def _wt(lat: Lattice, e: FockElement) -> int:
    return max(lat.weight_of(k) for k in e.terms)


def axiom_suite(k: int = 3, seed: int = 20240601, oracle_cases: int = 200) -> dict:
    lat = Lattice(k)
    rng = random.Random(seed)
    failures: list[str] = []
    counts = dict.fromkeys(["creation", "vacuum", "derivative", "virasoro", "commutator", "weight", "theta", "oracle"], 0)

    def check(kind: str, ok: bool, what: str):
        counts[kind] += 1
        if not ok:
            failures.append(f"{kind}: {what}")

    one = vacuum()
    for _ in range(25):
        v = random_monomial(rng)
        check("creation", mode_apply(lat, v, -1, one) == v, str(v))
        n = rng.randint(0, 3)
        check("creation", not mode_apply(lat, v, n, one), f"{v} mode {n}")
        check("vacuum", mode_apply(lat, one, -1, v) == v, str(v))
        n = rng.choice([-3, -2, 0, 1, 2])
        check("vacuum", not mode_apply(lat, one, n, v), f"1 mode {n}")
    for _ in range(25):
        v, w = random_monomial(rng), random_monomial(rng)
        n = rng.randint(-4, 2)
        lhs = mode_apply(lat, virasoro(lat, -1, v), n, w)
        check("derivative", lhs == mode_apply(lat, v, n - 1, w) * (-n), f"{v}, {w}, {n}")
    for m in range(-3, 4):
        for n in range(-3, 4):
            w = random_monomial(rng)
            lhs = virasoro(lat, m, virasoro(lat, n, w)) - virasoro(lat, n, virasoro(lat, m, w))
            rhs = virasoro(lat, m + n, w) * (m - n)
            if m + n == 0:
                rhs = rhs + w * Fraction(m**3 - m, 12) * CENTRAL_CHARGE
            check("virasoro", lhs == rhs, f"m={m} n={n} on {w}")
    tries = 0
    while counts["commutator"] < 40 and tries < 400:
        tries += 1
        u, v, w = (random_monomial(rng, 2) for _ in range(3))
        if _wt(lat, u) + _wt(lat, v) + _wt(lat, w) > 9:
            continue
        m, n = rng.randint(-2, 2), rng.randint(-2, 2)
        lhs = mode_apply(lat, u, m, mode_apply(lat, v, n, w)) - mode_apply(lat, v, n, mode_apply(lat, u, m, w))
        rhs = FockElement()
        i = 0
        # u_i v has weight wt u + wt v - i - 1, so it vanishes for i >= wt u + wt v
        bound = _wt(lat, u) + _wt(lat, v)
        while i <= bound:
            c = comb(m, i) if m >= 0 else (-1) ** i * comb(-m + i - 1, i)
            if c:
                rhs = rhs + mode_apply(lat, mode_apply(lat, u, i, v), m + n - i, w) * c
            i += 1
        check("commutator", lhs == rhs, f"{u}, {v}, {w}, m={m}, n={n}")
    for _ in range(40):
        u, v = random_monomial(rng), random_monomial(rng)
        n = rng.randint(-4, 3)
        out = mode_apply(lat, u, n, v)
        target = _wt(lat, u) + _wt(lat, v) - n - 1
        check("weight", all(lat.weight_of(key) == target for key in out.terms), f"{u}_{n}{v}")
        check("theta", theta(out) == mode_apply(lat, theta(u), n, theta(v)), f"{u}_{n}{v}")
    done = 0
    while done < oracle_cases:
        u, v = random_monomial(rng, 3), random_monomial(rng, 3)
        t = rng.randint(-5, 3)
        if _wt(lat, u) + _wt(lat, v) - t - 1 > 12:
            continue
        check("oracle", mode_apply(lat, u, t, v) == mode_apply_oracle(lat, u, t, v), f"{u}_{t}{v}")
        done += 1
    return {"counts": counts, "failures": failures[:20], "failure_count": len(failures)}


def criterion_8(k: int = 3):
    def run():
        res = axiom_suite(k)
        return res["failure_count"] == 0 and res["counts"]["oracle"] >= 200, res

    return _timed(8, "axiom property suite", 300, run)


def criterion_9(k: int = 3, max_weight: int = 20):
    def run():
        rep = spanning_check(Lattice(k), max_weight)
        named_ok = all(rep.named.values())
        ok = rep.ok and named_ok and rep.total_quotient_dim <= 2 * k + 9
        return ok, {
            "quotient_dims": [w.quotient_dim for w in rep.weights],
            "total": rep.total_quotient_dim,
            "bound": rep.bound,
            "residual_zero": all(w.residual_zero for w in rep.weights),
            "named": rep.named,
        }

    return _timed(9, "spanning certificate to the weight cap", 1200, run)


def criterion_10(kmax: int = 100):
    def run():
        g = report.determinant_guards(kmax)
        quartic = Poly([15, -58, 1072, -2592, 1536])
        ok = g["quadratic_roots_expected"] and not g["quartic_integer_roots"] and all(quartic(k) != 0 for k in range(1, kmax + 1))
        return ok, g

    return _timed(10, "determinant nonvanishing guards", 1, run)


def run_all(k: int = 3, max_weight: int | None = None) -> list[CriterionResult]:
    mw = 4 * k + 8 if max_weight is None else max_weight
    return [
        criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(k), criterion_6(k),
        criterion_7(), criterion_8(k), criterion_9(k, mw), criterion_10(),
    ]


