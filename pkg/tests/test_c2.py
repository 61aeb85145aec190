import json
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from vlplus.c2 import (
    PRIME,
    ModpEchelon,
    _annihilator_fractions,
    c2_component,
    congruent,
    exact_annihilator,
    generator_element,
    generator_refs,
    in_c2_plus,
    quotient_dim,
    spanning_check,
    vl_plus_basis,
)
from vlplus.fock import E_elem, F_elem, FockElement, Lattice, NotHomogeneousError
from vlplus.linalg import ExactMatrix, rank
from vlplus.scalars import ScalarModeError
from vlplus.vertex import J_elem, L_power, mode_apply, virasoro

LAT = Lattice(3)

# frozen: dim (V_L^+ / C_2)_n at k=3, weights 0..14
QUOTIENT_K3 = [1, 0, 1, 1, 2, 1, 2, 1, 1, 0, 0, 0, 0, 0, 0]


def brute_quotient_dim(lat, n):
    """Rank of all full generators u_{-2}v in monomial coordinates, no coordinate tricks."""
    gens = [generator_element(lat, r, n) for r in generator_refs(lat, n)]
    gens = [g for g in gens if g]
    ambient = len(vl_plus_basis(lat, n))
    if not gens:
        return ambient
    cols = sorted({key for g in gens for key in g.terms})
    M = ExactMatrix([[g.terms.get(c, Fraction(0)) for c in cols] for g in gens])
    return ambient - rank(M)


def test_frozen_quotient_dims_k3():
    assert [quotient_dim(LAT, n) for n in range(15)] == QUOTIENT_K3


@pytest.mark.parametrize("k,n", [(3, n) for n in range(0, 10)] + [(4, n) for n in (4, 5, 8, 9)])
def test_quotient_dim_matches_brute_force(k, n):
    lat = Lattice(k)
    assert quotient_dim(lat, n) == brute_quotient_dim(lat, n)


def test_low_weight_values():
    assert quotient_dim(LAT, 0) == 1
    assert quotient_dim(LAT, 1) == 0
    assert quotient_dim(LAT, 7) <= 1


def test_reduced_basis_is_independent():
    comp = c2_component(LAT, 6)
    basis = comp.reduced_basis()
    assert len(basis) == comp.rank
    cols = sorted({key for g in basis for key in g.terms})
    assert rank(ExactMatrix([[g.terms.get(c, 0) for c in cols] for g in basis])) == comp.rank


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_modp_rank_matches_sympy(data):
    nr, nc = data.draw(st.integers(1, 5)), data.draw(st.integers(1, 5))
    rows = [[data.draw(st.integers(-3, 3)) for _ in range(nc)] for _ in range(nr)]
    ech = ModpEchelon(nc)
    for r in rows:
        ech.add(np.array([x % PRIME for x in r], dtype=np.int64))
    assert ech.rank == sympy.Matrix(rows).rank()


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_annihilator_agrees_with_fraction_fallback(data):
    ncols = data.draw(st.integers(1, 6))
    vecs = [
        {i: Fraction(data.draw(st.integers(-4, 4)), data.draw(st.integers(1, 3))) for i in range(ncols)}
        for _ in range(data.draw(st.integers(0, 5)))
    ]
    vecs = [{i: x for i, x in v.items() if x} for v in vecs]
    fast = exact_annihilator(vecs, ncols)
    slow = _annihilator_fractions(vecs, ncols)
    r = sympy.Matrix([[v.get(i, 0) for i in range(ncols)] for v in vecs]).rank() if vecs else 0
    assert len(fast) == len(slow) == ncols - r
    for f in fast:
        assert all(sum(f.get(i, 0) * x for i, x in v.items()) == 0 for v in vecs)


def test_derivative_is_in_c2():
    # alpha(-1)F = L(-1)E = E_{-2} 1
    cert = congruent(LAT, F_elem(1, (1,)), FockElement())
    assert cert.member and cert.verified and cert.method == "explicit"
    data = json.loads(json.dumps(cert.to_json()))
    assert data["weight"] == 4 and data["congruent"] is True


def test_weight9_vanishes():
    cert = congruent(LAT, L_power(LAT, -2, 3, E_elem(1)), FockElement())
    assert cert.member


def test_non_member_has_no_certificate():
    cert = congruent(LAT, virasoro(LAT, -2, E_elem(1)), FockElement())
    assert not cert.member and not cert.verified
    assert cert.to_json()["coefficients"] is None


def test_quotient_spanned_by_listed_elements():
    L2E = virasoro(LAT, -2, E_elem(1))
    assert in_c2_plus(LAT, L2E * 5, [L2E])
    assert not in_c2_plus(LAT, L2E, [])


def test_congruence_input_errors():
    with pytest.raises(NotHomogeneousError):
        congruent(LAT, E_elem(1), J_elem(LAT))
    with pytest.raises(ValueError):
        congruent(Lattice(2), E_elem(1), FockElement())
    with pytest.raises(ScalarModeError):
        congruent(Lattice.symbolic(), E_elem(1), FockElement())
    cert = congruent(LAT, F_elem(1), FockElement())
    assert not cert.member and cert.method == "not-theta-fixed"


def _random_basis_element(rng, lat, n):
    b = vl_plus_basis(lat, n)
    return b[rng.randrange(len(b))].element() if len(b) else None


@pytest.mark.parametrize("seed", range(6))
def test_ideal_and_commutativity(seed):
    rng = random.Random(seed)
    a, b = rng.choice([(2, 3), (3, 4), (2, 4), (3, 3), (4, 4)])
    u, v = _random_basis_element(rng, LAT, a), _random_basis_element(rng, LAT, b)
    # u_{-2}v lies in C_2 and u_{-1}v = v_{-1}u modulo C_2
    assert c2_component(LAT, a + b + 1).contains(mode_apply(LAT, u, -2, v))
    uv = mode_apply(LAT, u, -1, v)
    vu = mode_apply(LAT, v, -1, u)
    assert congruent(LAT, uv, vu).member


def test_spanning_check_refuses_low_cap():
    with pytest.raises(ValueError):
        spanning_check(LAT, 10)


def test_spanning_report_json_shape():
    rep = spanning_check(LAT, 20)
    data = rep.to_json()
    assert rep.ok and rep.total_quotient_dim == 10 and rep.bound == 15
    assert json.loads(json.dumps(data)) == data
