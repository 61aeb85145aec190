"""Dense exact linear algebra over Q and Q(k).

Determinants use fraction-free (Bareiss) elimination on rows whose
denominators have been cleared, so the intermediate entries are integers or
polynomials and every division is exact.  Inversion and solving use plain
Gauss-Jordan over the field; the pivot is always the first nonzero entry of
the column so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import lcm
from typing import Sequence

from .fock import BasisVector, FockElement, GradedBasis, Key, format_key
from .scalars import Poly, RationalFunction, format_scalar, poly_gcd


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    def __init__(self, determinant):
        super().__init__(f"matrix is singular (determinant {format_scalar(determinant)})")
        self.determinant = determinant


class NotInSpanError(ValueError):
    def __init__(self, residual: FockElement):
        keys = ", ".join(format_key(k) for k, _ in residual)
        super().__init__(f"element is not in the span; residual monomials: {keys}")
        self.residual = residual


class ExactMatrix:
    """Row-major matrix of exact scalars."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ShapeError("ragged rows")

    @classmethod
    def identity(cls, n: int, one=1) -> "ExactMatrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for x, y in zip(r, c):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.rows)])

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix([[fn(x) for x in r] for r in self.rows])

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            (x == 1) if i == j else (not x) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def to_json(self) -> dict:
        return {"shape": [self.nrows, self.ncols], "entries": [[format_scalar(x) for x in r] for r in self.rows]}

    def __repr__(self):
        return "ExactMatrix(" + "; ".join(", ".join(format_scalar(x) for x in r) for r in self.rows) + ")"


# ---------------------------------------------------------------------------
# determinant


def _clear_row(row: list):
    """Scale a row to integer / polynomial entries; return (row, multiplier)."""
    if all(isinstance(x, (int, Fraction)) for x in row):
        m = _fold(lcm, (Fraction(x).denominator for x in row), 1)
        return [int(Fraction(x) * m) for x in row], Fraction(m)
    rfs = [RationalFunction.coerce(x) for x in row]
    den = Poly.constant(1)
    for x in rfs:
        if not x.den.is_one():
            g = poly_gcd(den, x.den)
            den = divmod(den * x.den, g)[0]
    scaled = []
    for x in rfs:
        q, r = divmod(den, x.den)
        assert r.is_zero()
        scaled.append(x.num * q)
    return scaled, RationalFunction(den)


def _exact_div(a, b):
    if isinstance(a, Poly):
        q, r = divmod(a, b)
        if not r.is_zero():
            raise ArithmeticError("Bareiss division was not exact")
        return q
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, Poly) else not x


def determinant(M: ExactMatrix):
    """Exact determinant by fraction-free elimination."""
    if M.nrows != M.ncols:
        raise ShapeError(f"determinant of non-square {M.shape} matrix")
    n = M.nrows
    if n == 0:
        return Fraction(1)
    cleared = [_clear_row(r) for r in M.rows]
    symbolic = any(isinstance(m, RationalFunction) for _, m in cleared)
    if symbolic:
        rows = [[x if isinstance(x, Poly) else Poly.constant(x) for x in r] for r, _ in cleared]
        zero, one = Poly(), Poly.constant(1)
    else:
        rows = [r for r, _ in cleared]
        zero, one = 0, 1
    sign = 1
    prev = one
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if not _is_zero(rows[i][c])), None)
        if piv is None:
            return RationalFunction() if symbolic else Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, n):
            ri = rows[i]
            for j in range(c + 1, n):
                ri[j] = _exact_div(ri[j] * p - ri[c] * rows[c][j], prev)
            ri[c] = zero
        prev = p
    det = rows[n - 1][n - 1]
    scale = 1
    for _, m in cleared:
        scale = scale * m
    if symbolic:
        return RationalFunction(det * Poly.constant(sign)) / RationalFunction.coerce(scale)
    return Fraction(sign * det) / scale


def cofactor_determinant(M: ExactMatrix):
    """Laplace expansion along the first row (small matrices; test oracle)."""
    n = M.nrows
    if n != M.ncols:
        raise ShapeError("non-square")
    if n == 0:
        return 1
    if n == 1:
        return M.rows[0][0]
    total = 0
    for j, x in enumerate(M.rows[0]):
        if not x:
            continue
        minor = ExactMatrix([r[:j] + r[j + 1 :] for r in M.rows[1:]])
        term = x * cofactor_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# elimination over the field


def _inv(x):
    return x.inverse() if isinstance(x, RationalFunction) else 1 / Fraction(x)


def rref(M: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    rows = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, M.nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _inv(rows[r][c])
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(M.nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == M.nrows:
            break
    return ExactMatrix(rows), pivots


def rank(M: ExactMatrix) -> int:
    return len(rref(M)[1])


def invert(M: ExactMatrix) -> ExactMatrix:
    if M.nrows != M.ncols:
        raise ShapeError(f"cannot invert {M.shape} matrix")
    n = M.nrows
    one = 1
    for r in M.rows:
        for x in r:
            if isinstance(x, RationalFunction):
                one = RationalFunction.coerce(1)
    aug = ExactMatrix([r + [one if i == j else 0 * one for j in range(n)] for i, r in enumerate(M.rows)])
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError(determinant(M))
    return ExactMatrix([r[n:] for r in R.rows])


# ---------------------------------------------------------------------------
# spans of Fock elements


@dataclass
class SpanResult:
    member: bool
    coefficients: list | None
    residual: FockElement = field(default_factory=FockElement)

    def __bool__(self):
        return self.member


def _element_columns(elems: Sequence[FockElement]) -> list[Key]:
    keys = set()
    for e in elems:
        keys.update(e.terms)
    return sorted(keys, key=lambda k: (sum(k[0]), tuple(-x for x in k[0]), k[1]))


def in_span(e: FockElement, generators: Sequence[FockElement], lat=None) -> SpanResult:
    """Decide ``e in span(generators)`` exactly.

    On success the coefficients reconstruct ``e``; otherwise ``residual`` is
    the normal form of ``e`` modulo the span (nonzero, witnessing exclusion).
    """
    if lat is not None:
        ws = {lat.weight_of(k) for g in list(generators) + [e] for k in g.terms}
        if len(ws) > 1:
            raise ValueError(f"in_span needs a single weight, got {sorted(map(str, ws))}")
    if not e:
        return SpanResult(True, [0] * len(generators))
    cols = _element_columns(list(generators) + [e])
    index = {k: i for i, k in enumerate(cols)}
    ng = len(generators)
    # columns: one per monomial; rows: generators with an identity tag block
    rows = []
    for i, g in enumerate(generators):
        vec = [0] * len(cols)
        for k, c in g.terms.items():
            vec[index[k]] = c
        tag = [0] * ng
        tag[i] = 1
        rows.append(vec + tag)
    # reduce the target against an echelon form of the generators
    echelon: list[tuple[int, list]] = []
    for row in rows:
        row = list(row)
        for c, prow in echelon:
            if row[c]:
                f = row[c]
                row = [x - f * y if y else x for x, y in zip(row, prow)]
        lead = next((c for c in range(len(cols)) if row[c]), None)
        if lead is None:
            continue
        inv = _inv(row[lead])
        row = [x * inv if x else x for x in row]
        for idx, (c, prow) in enumerate(echelon):
            if prow[lead]:
                f = prow[lead]
                echelon[idx] = (c, [x - f * y if y else x for x, y in zip(prow, row)])
        echelon.append((lead, row))
    target = [0] * len(cols)
    for k, c in e.terms.items():
        target[index[k]] = c
    target = target + [0] * ng
    for c, prow in echelon:
        if target[c]:
            f = target[c]
            target = [x - f * y if y else x for x, y in zip(target, prow)]
    residual = FockElement({cols[i]: target[i] for i in range(len(cols)) if target[i]})
    if residual:
        return SpanResult(False, None, residual)
    coeffs = [-x for x in target[len(cols):]]
    recon = FockElement()
    for lam, g in zip(coeffs, generators):
        if lam:
            recon = recon + g * lam
    if recon != e:
        raise ArithmeticError("span certificate failed reconstruction")
    return SpanResult(True, coeffs)


@dataclass
class CoordinateVector:
    basis: GradedBasis | Sequence[FockElement]
    coords: list

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def expand_in_basis(e: FockElement, basis) -> CoordinateVector:
    """Coordinates of ``e`` in a graded basis (or any list of independent elements)."""
    if isinstance(basis, GradedBasis) or (basis and isinstance(basis[0], BasisVector)):
        vecs = list(basis)
        coords = [e.terms.get(v.lead, 0) for v in vecs]
        recon = FockElement()
        for c, v in zip(coords, vecs):
            if c:
                recon = recon + v.element() * c
        residual = e - recon
        if residual:
            raise NotInSpanError(residual)
        return CoordinateVector(basis, coords)
    result = in_span(e, list(basis))
    if not result.member:
        raise NotInSpanError(result.residual)
    return CoordinateVector(basis, result.coefficients)


def reconstruct(coords: CoordinateVector) -> FockElement:
    out = FockElement()
    for c, b in zip(coords.coords, coords.basis):
        if c:
            out = out + (b.element() if isinstance(b, BasisVector) else b) * c
    return out


# ---------------------------------------------------------------------------
# LaTeX


def to_latex(M: ExactMatrix, row_labels: Sequence[str], col_labels: Sequence[str]) -> str:
    """Render as a tabular in the layout of a labelled change-of-basis table."""
    spec = "||c|" + "c|" * M.ncols + "|"
    lines = [f"\\begin{{tabular}}{{{spec}}}", "\\hline", " & " + " & ".join(f"${c}$" for c in col_labels) + " \\\\", "\\hline"]
    for lab, row in zip(row_labels, M.rows):
        lines.append(f"${lab}$ & " + " & ".join(f"${latex_scalar(x)}$" for x in row) + " \\\\")
        lines.append("\\hline")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def latex_scalar(x) -> str:
    s = format_scalar(x)
    if "/" not in s:
        return s.replace("*", "")
    num, den = s.rsplit("/", 1)
    return f"\\frac{{{num.strip('()').replace('*', '')}}}{{{den.strip('()').replace('*', '')}}}"
