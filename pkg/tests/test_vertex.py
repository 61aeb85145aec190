from fractions import Fraction
from math import comb

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from vlplus.fock import E_elem, F_elem, FockElement, Lattice, charged, theta, vacuum
from vlplus.scalars import K
from vlplus.vertex import (
    CENTRAL_CHARGE,
    J_elem,
    KAffine,
    OracleCapError,
    apply_alpha,
    charge_pairing_terms,
    mode_apply,
    mode_apply_oracle,
    omega,
    schur_p,
    virasoro,
)

LAT = Lattice(3)
SYM = Lattice.symbolic()

monomials = st.builds(
    lambda parts, m, c: FockElement.monomial(parts, m, c),
    st.lists(st.integers(1, 3), max_size=3),
    st.integers(-1, 1),
    st.sampled_from([Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3)]),
)
light = st.builds(
    lambda parts, m: FockElement.monomial(parts, m),
    st.lists(st.integers(1, 2), max_size=2),
    st.sampled_from([0, 0, 1, -1]),
)
elements = st.lists(monomials, min_size=1, max_size=2).map(lambda ms: sum(ms, FockElement()))


def wt(lat, e):
    return max(lat.weight_of(key) for key in e.terms)


def on_charge(e: FockElement, m: int) -> FockElement:
    return FockElement({(p, m): c for (p, _), c in e.terms.items()})


# --- known values ---------------------------------------------------------


def test_heisenberg_commutator():
    e = FockElement.monomial((2, 1), 1)
    lhs = apply_alpha(LAT, 2, apply_alpha(LAT, -2, e)) - apply_alpha(LAT, -2, apply_alpha(LAT, 2, e))
    assert lhs == e * (2 * 3 * 2)


@pytest.mark.parametrize("lat", [LAT, SYM], ids=["k3", "sym"])
def test_derivative_of_E(lat):
    assert virasoro(lat, -1, E_elem(1)) == F_elem(1, (1,))
    assert virasoro(lat, 0, E_elem(1)) == E_elem(1) * lat.kk


@pytest.mark.parametrize("lat", [LAT, SYM], ids=["k3", "sym"])
def test_virasoro_vector(lat):
    w = omega(lat)
    assert virasoro(lat, 0, w) == w * 2
    assert virasoro(lat, 2, w) == vacuum() * Fraction(CENTRAL_CHARGE, 2)
    assert not virasoro(lat, 1, w)


@pytest.mark.parametrize("lat", [LAT, SYM], ids=["k3", "sym"])
def test_J_is_primary_of_weight_4(lat):
    J = J_elem(lat)
    assert virasoro(lat, 0, J) == J * 4
    for n in (1, 2, 3, 4):
        assert not virasoro(lat, n, J)


def test_omega_weights_symbolic():
    assert omega(SYM).coeff((1, 1)) == 1 / (4 * K)


@pytest.mark.parametrize("j", range(0, 7))
def test_charge_pairing_is_schur(j):
    # (e^a)_{-2k-1-j} e^a = p_j(alpha) e^{2 alpha}
    k = LAT.k
    out = mode_apply(LAT, charged(1), -2 * k - 1 - j, charged(1))
    assert out == on_charge(schur_p(j, 1), 2)


def test_charge_pairing_opposite_charges():
    # (e^a)_{2k-1-j} e^{-a} = p_j(alpha) 1 and vanishes for j < 0
    k = LAT.k
    assert mode_apply(LAT, charged(1), 2 * k - 1, charged(-1)) == vacuum()
    assert not mode_apply(LAT, charged(1), 2 * k, charged(-1))


def test_charge_pairing_terms_symbolic_index():
    idx, a, total = charge_pairing_terms(SYM, 1, KAffine(-3, -2), 1)
    assert (idx, a, total) == (KAffine(2, 0), 1, 2)
    assert idx.at(7) == 2


def test_symbolic_and_fixed_agree_at_k3():
    v = FockElement.monomial((2, 1), 1)
    w = FockElement.monomial((1,), -1)
    sym = mode_apply(SYM, v, KAffine(-2, 2), w)
    fixed = mode_apply(LAT, v, 4, w)
    assert {key: c(3) for key, c in sym.terms.items()} == dict(fixed.terms)


def test_schur_small():
    assert schur_p(0, 5) == vacuum()
    assert schur_p(2, 1) == FockElement({((2,), 0): Fraction(1, 2), ((1, 1), 0): Fraction(1, 2)})
    with pytest.raises(ValueError):
        schur_p(-1, 1)


@given(st.integers(1, 8), st.integers(-3, 3))
def test_schur_newton_recurrence(j, m):
    # j p_j = sum_n m alpha(-n) p_{j-n}
    rhs = FockElement()
    for n in range(1, j + 1):
        rhs = rhs + apply_alpha(LAT, -n, schur_p(j - n, m)) * m
    assert schur_p(j, m) * j == rhs


def test_oracle_cap():
    with pytest.raises(OracleCapError):
        mode_apply_oracle(LAT, E_elem(2), -1, E_elem(2), cap=10)


# --- properties -----------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(elements, st.integers(-3, 3))
def test_creation_and_vacuum(v, n):
    one = vacuum()
    assert mode_apply(LAT, v, -1, one) == v
    assert mode_apply(LAT, one, -1, v) == v
    if n >= 0:
        assert not mode_apply(LAT, v, n, one)
    if n != -1:
        assert not mode_apply(LAT, one, n, v)


@settings(max_examples=40, deadline=None)
@given(elements, elements, st.integers(-4, 2))
def test_derivative_property(v, w, n):
    assert mode_apply(LAT, virasoro(LAT, -1, v), n, w) == mode_apply(LAT, v, n - 1, w) * (-n)


@settings(max_examples=30, deadline=None)
@given(elements, st.integers(-3, 3), st.integers(-3, 3))
def test_virasoro_relations(w, m, n):
    lhs = virasoro(LAT, m, virasoro(LAT, n, w)) - virasoro(LAT, n, virasoro(LAT, m, w))
    rhs = virasoro(LAT, m + n, w) * (m - n)
    if m + n == 0:
        rhs = rhs + w * Fraction(m**3 - m, 12)
    assert lhs == rhs


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(light, light, light, st.integers(-2, 2), st.integers(-2, 2))
def test_commutator_formula(u, v, w, m, n):
    assume(wt(LAT, u) + wt(LAT, v) + wt(LAT, w) <= 9)
    lhs = mode_apply(LAT, u, m, mode_apply(LAT, v, n, w)) - mode_apply(LAT, v, n, mode_apply(LAT, u, m, w))
    rhs = FockElement()
    for i in range(wt(LAT, u) + wt(LAT, v) + 1):
        c = comb(m, i) if m >= 0 else (-1) ** i * comb(-m + i - 1, i)
        if c:
            rhs = rhs + mode_apply(LAT, mode_apply(LAT, u, i, v), m + n - i, w) * c
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(monomials, monomials, st.integers(-4, 3))
def test_weight_additivity_and_theta(u, v, n):
    out = mode_apply(LAT, u, n, v)
    target = wt(LAT, u) + wt(LAT, v) - n - 1
    assert all(LAT.weight_of(key) == target for key in out.terms)
    assert theta(out) == mode_apply(LAT, theta(u), n, theta(v))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4]), monomials, monomials, st.integers(-5, 3))
def test_oracle_agrees(k, u, v, t):
    lat = Lattice(k)
    assume(wt(lat, u) + wt(lat, v) - t - 1 <= 12)
    assert mode_apply(lat, u, t, v) == mode_apply_oracle(lat, u, t, v)
