from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from vlplus.fock import E_elem, F_elem, FockElement, Lattice, enumerate_basis
from vlplus.linalg import (
    ExactMatrix,
    NotInSpanError,
    ShapeError,
    SingularMatrixError,
    cofactor_determinant,
    determinant,
    expand_in_basis,
    in_span,
    invert,
    rank,
    reconstruct,
    rref,
    to_latex,
)
from vlplus.scalars import K, reduce


@st.composite
def square_int_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return [[draw(st.integers(-5, 5)) for _ in range(n)] for _ in range(n)]


@settings(max_examples=80, deadline=None)
@given(square_int_matrices())
def test_bareiss_matches_cofactor_and_sympy(rows):
    M = ExactMatrix([[Fraction(x) for x in r] for r in rows])
    d = determinant(M)
    assert d == cofactor_determinant(M)
    assert d == int(sympy.Matrix(rows).det())


@settings(max_examples=50, deadline=None)
@given(square_int_matrices(4))
def test_inverse_or_singular(rows):
    M = ExactMatrix([[Fraction(x) for x in r] for r in rows])
    if sympy.Matrix(rows).det() == 0:
        with pytest.raises(SingularMatrixError):
            invert(M)
    else:
        inv = invert(M)
        assert (M @ inv).is_identity()
        expected = sympy.Matrix(rows).inv()
        assert all(inv[i, j] == Fraction(str(expected[i, j])) for i in range(M.nrows) for j in range(M.ncols))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_matches_sympy(nr, nc, data):
    rows = [[data.draw(st.integers(-2, 2)) for _ in range(nc)] for _ in range(nr)]
    assert rank(ExactMatrix(rows)) == sympy.Matrix(rows).rank()


def test_symbolic_determinant_and_inverse():
    M = ExactMatrix([[K, 1], [reduce([1], [0, 2]), K]])
    assert determinant(M) == K * K - 1 / (2 * K)
    assert (M @ invert(M)).is_identity()


def test_rref_pivots():
    R, piv = rref(ExactMatrix([[Fraction(2), Fraction(4), Fraction(1)], [Fraction(1), Fraction(2), Fraction(0)]]))
    assert piv == [0, 2]
    assert R.rows[0][:2] == [1, 2]


def test_shape_errors():
    with pytest.raises(ShapeError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        ExactMatrix([[1, 2]]) @ ExactMatrix([[1, 2]])


def test_in_span_coefficients_and_residual():
    a = E_elem(1, (1, 1))
    b = F_elem(1, (2,))
    target = a * 3 - b * Fraction(1, 2)
    res = in_span(target, [a, b])
    assert res and res.coefficients == [3, Fraction(-1, 2)]
    miss = in_span(target + FockElement.monomial((4,), 0), [a, b])
    assert not miss and miss.residual


def test_in_span_rejects_mixed_weights():
    with pytest.raises(ValueError):
        in_span(E_elem(1), [FockElement.monomial((1, 1), 0)], Lattice(3))


def test_expand_in_basis_round_trip():
    lat = Lattice(3)
    basis = enumerate_basis(lat, "VL+", 6)
    e = basis[0].element() * 2 + basis[-1].element() * Fraction(-3, 4)
    coords = expand_in_basis(e, basis)
    assert reconstruct(coords) == e
    with pytest.raises(NotInSpanError):
        expand_in_basis(FockElement.monomial((5, 1), 1), basis)


def test_latex_layout():
    out = to_latex(ExactMatrix([[1 / (2 * K), Fraction(3)]]), ["x"], ["a", "b"])
    assert "\\frac{1}{2k}" in out and out.startswith("\\begin{tabular}")
