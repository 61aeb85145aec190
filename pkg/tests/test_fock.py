from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import partition as npartitions
from sympy.utilities.iterables import partitions as sympy_partitions

from vlplus.fock import (
    E_elem,
    F_elem,
    FockElement,
    Lattice,
    NotHomogeneousError,
    alpha_length,
    element_from_json,
    element_to_json,
    enumerate_basis,
    is_theta_fixed,
    partitions,
    plus_project,
    sector_basis,
    theta,
    vl_plus_dim,
    weight,
)
from vlplus.scalars import K

# frozen: dim V_L^+ at k=3 for weights 0..20
VL_PLUS_DIMS_K3 = [1, 0, 1, 2, 4, 5, 9, 12, 19, 25, 37, 49, 71, 92, 127, 166, 224, 288, 382, 488, 636]


def dim_oracle(k: int, n: int) -> int:
    """(dim V_L + trace theta)/2 using sympy's partition machinery."""
    full = sum(int(npartitions(n - m * m * k)) for m in range(-n, n + 1) if n - m * m * k >= 0)
    signed = sum((-1) ** sum(p.values()) for p in sympy_partitions(n)) if n else 1
    return (full + signed) // 2


@pytest.mark.parametrize("n", range(0, 16))
def test_partitions_count_and_order(n):
    ps = partitions(n)
    assert len(ps) == int(npartitions(n))
    assert len(set(ps)) == len(ps)
    assert all(list(p) == sorted(p, reverse=True) and sum(p) == n for p in ps)


def test_vl_plus_dims_frozen():
    lat = Lattice(3)
    assert [vl_plus_dim(lat, n) for n in range(21)] == VL_PLUS_DIMS_K3


@pytest.mark.parametrize("k", [3, 4, 5])
def test_vl_plus_dims_match_trace_oracle(k):
    lat = Lattice(k)
    for n in range(0, 18):
        assert vl_plus_dim(lat, n) == dim_oracle(k, n), n


def test_basis_elements_are_theta_fixed():
    lat = Lattice(3)
    for n in range(12):
        for b in enumerate_basis(lat, "VL+", n):
            assert is_theta_fixed(b.element()), b


def test_sector_basis_kinds():
    # even length pairs with E, odd with F
    vecs = sector_basis(1, 3)
    assert [str(v) for v in vecs] == ["a(-3)F", "a(-2)a(-1)E", "a(-1)a(-1)a(-1)F"]


def test_symbolic_sector_weight():
    lat = Lattice.symbolic()
    basis = enumerate_basis(lat, 1, K + 2)
    assert len(basis) == 2
    assert weight(lat, basis[0].element()) == K + 2


def test_theta_on_charged_states():
    assert theta(E_elem(2)) == E_elem(2)
    assert theta(F_elem(1)) == -F_elem(1)
    assert theta(F_elem(1, (1,))) == F_elem(1, (1,))
    assert theta(FockElement.monomial((2,), 0)) == -FockElement.monomial((2,), 0)


monomials = st.builds(
    lambda parts, m, c: FockElement.monomial(parts, m, c),
    st.lists(st.integers(1, 4), max_size=4),
    st.integers(-2, 2),
    st.fractions(max_denominator=6).filter(bool),
)


@given(st.lists(monomials, max_size=4))
def test_theta_is_an_involution(ms):
    e = sum(ms, FockElement())
    assert theta(theta(e)) == e
    assert is_theta_fixed(plus_project(e))


@given(st.lists(monomials, max_size=4))
def test_json_round_trip(ms):
    e = sum(ms, FockElement())
    assert element_from_json(Lattice(3), element_to_json(e)) == e


def test_inhomogeneous_weight_raises():
    lat = Lattice(3)
    with pytest.raises(NotHomogeneousError):
        weight(lat, E_elem(1) + FockElement.monomial((1, 1), 0))
    with pytest.raises(NotHomogeneousError):
        weight(lat, FockElement())


def test_alpha_length_and_zero():
    assert alpha_length(E_elem(1, (3, 1, 1))) == 3
    with pytest.raises(ValueError):
        alpha_length(FockElement())


def test_bad_inputs():
    with pytest.raises(ValueError):
        Lattice(0)
    with pytest.raises(ValueError):
        E_elem(0)
    with pytest.raises(ValueError):
        enumerate_basis(Lattice(3), "M2", 3)


def test_zero_coefficients_are_dropped():
    e = FockElement.monomial((1,), 0, Fraction(1, 2)) * 2 - FockElement.monomial((1,), 0)
    assert not e and len(e) == 0
