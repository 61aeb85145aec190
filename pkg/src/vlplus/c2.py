"""Weight components of C_2(V_L^+) at a fixed integer k.

The span of the products ``u_{-2} v`` in weight N is computed in two layers:

1. Every generator is reduced modulo a 26-bit prime in an incrementally
   maintained reduced echelon form (numpy).  A set of generators that is
   independent mod p is independent over Q, so the rank found this way is an
   exact lower bound; when it equals the ambient dimension the component is
   proven saturated.
2. Otherwise the annihilator of the selected generators is computed exactly
   (multi-modular elimination, rational reconstruction, then verified with
   exact integer arithmetic) and every remaining generator is checked against
   it.  That pins the rank over Q exactly and gives an exact membership test.

A vector of V_L^+ is recorded by its coordinates in the graded basis; since
the vector is theta-fixed those are its coefficients on the monomials of
nonnegative charge.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .fock import (
    E_elem,
    FockElement,
    GradedBasis,
    Key,
    Lattice,
    NotHomogeneousError,
    enumerate_basis,
    is_theta_fixed,
    vacuum,
)
from .vertex import J_elem, L_power, _mode_monomial, mode_apply, virasoro

log = logging.getLogger(__name__)

PRIME = 67108859  # largest prime below 2**26: products of two residues fit int64 sums


class C2Error(ValueError):
    pass


# ---------------------------------------------------------------------------
# modular echelon


class ModpEchelon:
    """Reduced row echelon form over F_p, grown one vector at a time."""

    def __init__(self, ncols: int, p: int = PRIME):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((max(ncols, 1), max(ncols, 1)), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        n = len(self.pivots)
        if n:
            v = (v - (v[self.pivots] @ self.rows[:n]) % self.p) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        """Insert ``v``; return True when it was independent."""
        if len(self.pivots) == self.ncols:
            return False
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if not len(nz):
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        n = len(self.pivots)
        if n:
            col = self.rows[:n, c].copy()
            self.rows[:n] = (self.rows[:n] - np.outer(col, v) % self.p) % self.p
        self.rows[n] = v
        self.pivots.append(c)
        return True


def _to_modp(vec: dict[int, Fraction], ncols: int, p: int) -> np.ndarray:
    out = np.zeros(ncols, dtype=np.int64)
    for i, c in vec.items():
        den = c.denominator % p
        if not den:
            raise ArithmeticError(f"denominator divisible by the modulus {p}")
        out[i] = (c.numerator % p) * pow(den, -1, p) % p
    return out


# ---------------------------------------------------------------------------
# exact annihilator by multi-modular elimination


def _primes_below(start: int, count: int) -> list[int]:
    out, n = [], start
    while len(out) < count:
        n -= 1
        if n % 2 and all(n % d for d in range(3, int(n**0.5) + 1, 2)):
            out.append(n)
    return out


_PRIMES = [PRIME] + _primes_below(PRIME, 120)


def _integral_rows(vectors: Sequence[dict[int, Fraction]]) -> list[dict[int, int]]:
    out = []
    for vec in vectors:
        m = _fold(lcm, (c.denominator for c in vec.values()), 1)
        row = {i: int(c * m) for i, c in vec.items()}
        g = _fold(gcd, row.values(), 0) or 1
        out.append({i: x // g for i, x in row.items()})
    return out


def _nullspace_modp(rows: list[dict[int, int]], ncols: int, p: int):
    M = np.zeros((len(rows), ncols), dtype=np.int64)
    for r, row in enumerate(rows):
        for i, x in row.items():
            M[r, i] = x % p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        nz = np.flatnonzero(M[r:, c])
        if not len(nz):
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        M = (M - np.outer(col, M[r]) % p) % p
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    null = []
    for f in free:
        x = np.zeros(ncols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = (-M[i, f]) % p
        null.append(x)
    return pivots, free, null


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    a %= m
    bound = int((m // 2) ** 0.5)
    r0, r1, s0, s1 = m, a, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def exact_annihilator(vectors: Sequence[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of ``{f : f . v = 0 for all v}`` over Q, verified exactly."""
    rows = _integral_rows(vectors)
    if not rows:
        return [{i: Fraction(1)} for i in range(ncols)]
    modulus = 1
    acc = None
    pivots_ref = None
    for p in _PRIMES:
        pivots, free, null = _nullspace_modp(rows, ncols, p)
        if pivots_ref is None or pivots < pivots_ref:
            pivots_ref, acc, modulus = pivots, None, 1
        if pivots != pivots_ref:
            continue
        if acc is None:
            acc = [[int(x) for x in vec] for vec in null]
            modulus = p
        else:
            # CRT combine
            inv = pow(modulus, -1, p)
            for vec, new in zip(acc, null):
                for i in range(ncols):
                    a, b = vec[i], int(new[i])
                    vec[i] = a + modulus * (((b - a) * inv) % p)
            modulus *= p
        cand = []
        for vec in acc:
            fv = {}
            for i, a in enumerate(vec):
                if a % modulus:
                    q = _rational_reconstruct(a, modulus)
                    if q is None:
                        break
                    fv[i] = q
            else:
                cand.append(fv)
                continue
            break
        if len(cand) == len(acc) and _annihilates(cand, rows):
            return cand
    return _annihilator_fractions(vectors, ncols)


def _annihilates(functionals, rows) -> bool:
    return all(sum(f.get(i, 0) * x for i, x in row.items()) == 0 for f in functionals for row in rows)


def _annihilator_fractions(vectors, ncols):
    # slow exact fallback: RREF over Q
    rows = [dict(v) for v in vectors]
    piv_rows: list[tuple[int, dict]] = []
    for row in rows:
        for c, pr in piv_rows:
            if row.get(c):
                f = row[c]
                for i, x in pr.items():
                    row[i] = row.get(i, 0) - f * x
                row = {i: x for i, x in row.items() if x}
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = {i: x * inv for i, x in row.items()}
        for idx, (pc, pr) in enumerate(piv_rows):
            if pr.get(c):
                f = pr[c]
                new = dict(pr)
                for i, x in row.items():
                    new[i] = new.get(i, 0) - f * x
                piv_rows[idx] = (pc, {i: x for i, x in new.items() if x})
        piv_rows.append((c, row))
    pivset = {c for c, _ in piv_rows}
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = {f: Fraction(1)}
        for c, pr in piv_rows:
            if pr.get(f):
                vec[c] = -pr[f]
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class GeneratorRef:
    """The product ``u_{-2} v`` with ``u`` = basis[u_index] of weight ``a``."""

    a: int
    u_index: int
    v_index: int

    def as_list(self) -> list[int]:
        return [self.a, self.u_index, self.v_index]


@dataclass
class C2Component:
    lat: Lattice
    weight: int
    basis: GradedBasis
    generator_refs: list[GeneratorRef]
    vectors: list[dict[int, Fraction]]
    selected: list[int]
    functionals: list[dict[int, Fraction]] = field(default_factory=list)
    complete: bool = True

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.selected)

    @property
    def quotient_dim(self) -> int:
        return self.ambient_dim - self.rank

    @property
    def saturated(self) -> bool:
        return self.rank == self.ambient_dim

    def generators(self) -> list[FockElement]:
        return [coords_to_element(self.basis, v) for v in self.vectors]

    def reduced_basis(self) -> list[FockElement]:
        """A basis of the span: the selected generators."""
        return [coords_to_element(self.basis, self.vectors[i]) for i in self.selected]

    def contains(self, e: FockElement) -> bool:
        """Exact membership of a weight-``weight`` vector in C_2."""
        if not e:
            return True
        if not is_theta_fixed(e):
            return False
        vec = element_coords(self.lat, self.basis, e)
        if self.saturated:
            return True
        return all(sum(f.get(i, 0) * x for i, x in vec.items()) == 0 for f in self.functionals)

    def quotient_coords(self, e: FockElement) -> tuple:
        """Image of ``e`` in V_N / C_2 under the exact annihilator functionals."""
        if self.saturated or not e:
            return tuple(Fraction(0) for _ in self.functionals)
        vec = element_coords(self.lat, self.basis, e)
        return tuple(sum((f.get(i, 0) * x for i, x in vec.items()), Fraction(0)) for f in self.functionals)


def in_c2_plus(lat: Lattice, e: FockElement, extras: Sequence[FockElement]) -> bool:
    """Exact test of ``e in C_2 + span(extras)`` (all of one weight)."""
    from .linalg import ExactMatrix, rank

    if not e:
        return True
    n = lat.weight_of(next(iter(e.terms)))
    comp = c2_component(lat, n)
    if comp.saturated:
        return True
    q = list(comp.quotient_coords(e))
    rows = [list(comp.quotient_coords(s)) for s in extras if s]
    if not any(q):
        return True
    if not rows:
        return False
    return rank(ExactMatrix(rows)) == rank(ExactMatrix(rows + [q]))


def coords_to_element(basis: GradedBasis, vec: dict[int, Fraction]) -> FockElement:
    out = FockElement()
    for i, c in sorted(vec.items()):
        out = out + basis[i].element() * c
    return out


def _lead_index(basis: GradedBasis) -> dict[Key, int]:
    return {v.lead: i for i, v in enumerate(basis)}


_INDEX_CACHE: dict = {}
_BASIS_CACHE: dict = {}


def vl_plus_basis(lat: Lattice, n: int) -> GradedBasis:
    key = (lat.k, n)
    if key not in _BASIS_CACHE:
        _BASIS_CACHE[key] = enumerate_basis(lat, "VL+", n)
    return _BASIS_CACHE[key]


def element_coords(lat: Lattice, basis: GradedBasis, e: FockElement) -> dict[int, Fraction]:
    """Coordinates of a theta-fixed vector (reads the charge >= 0 monomials)."""
    key = (lat.k, basis.weight)
    index = _INDEX_CACHE.get(key)
    if index is None:
        index = _INDEX_CACHE[key] = _lead_index(basis)
    out = {}
    for k, c in e.terms.items():
        if k[1] < 0:
            continue
        i = index.get(k)
        if i is None:
            raise C2Error(f"monomial {k} is outside V_L^+ of weight {basis.weight}")
        out[i] = c
    return out


def _product_coords(lat: Lattice, basis: GradedBasis, u: FockElement, v: FockElement, t: int = -2):
    """Coordinates of ``u_t v`` computing only the charge >= 0 half."""
    acc: dict[Key, object] = {}
    for uk, uc in u.terms.items():
        for vk, vc in v.terms.items():
            if uk[1] + vk[1] < 0:
                continue
            coeff = uc * vc
            for key, c in _mode_monomial(lat, uk, t, vk).items():
                acc[key] = acc.get(key, 0) + coeff * c
    return element_coords(lat, basis, FockElement(acc))


def generator_refs(lat: Lattice, n: int) -> Iterable[GeneratorRef]:
    for a in range(1, n):
        bu = vl_plus_basis(lat, a)
        bv = vl_plus_basis(lat, n - 1 - a)
        for i in range(len(bu)):
            for j in range(len(bv)):
                yield GeneratorRef(a, i, j)


def generator_element(lat: Lattice, ref: GeneratorRef, n: int) -> FockElement:
    u = vl_plus_basis(lat, ref.a)[ref.u_index].element()
    v = vl_plus_basis(lat, n - 1 - ref.a)[ref.v_index].element()
    return mode_apply(lat, u, -2, v)


_COMPONENT_CACHE: dict = {}


def c2_component(lat: Lattice, n: int, *, full: bool = False) -> C2Component:
    """C_2(V_L^+) in weight ``n``.

    With ``full=False`` generation stops as soon as the span fills the
    weight space; ``full=True`` always computes every generator.
    """
    lat.require_c2_range()
    if n < 0:
        raise C2Error("weight must be nonnegative")
    cached = _COMPONENT_CACHE.get((lat.k, n))
    if cached is not None and (cached.complete or not full):
        return cached
    basis = vl_plus_basis(lat, n)
    m = len(basis)
    ech = ModpEchelon(m)
    refs, vectors, selected = [], [], []
    complete = True
    for ref in generator_refs(lat, n):
        if ech.rank == m and not full:
            complete = False
            break
        u = vl_plus_basis(lat, ref.a)[ref.u_index].element()
        v = vl_plus_basis(lat, n - 1 - ref.a)[ref.v_index].element()
        vec = _product_coords(lat, basis, u, v)
        refs.append(ref)
        vectors.append(vec)
        if vec and ech.add(_to_modp(vec, m, ech.p)):
            selected.append(len(vectors) - 1)
    comp = C2Component(lat, n, basis, refs, vectors, selected, complete=complete)
    if comp.rank < m:
        _certify_rank(comp)
    log.debug("C2 weight %d: dim %d, rank %d, generators %d", n, m, comp.rank, len(refs))
    _COMPONENT_CACHE[(lat.k, n)] = comp
    return comp


def _certify_rank(comp: C2Component):
    m = comp.ambient_dim
    while True:
        funcs = exact_annihilator([comp.vectors[i] for i in comp.selected], m)
        chosen = set(comp.selected)
        extra = None
        for idx, vec in enumerate(comp.vectors):
            if idx in chosen or not vec:
                continue
            if any(sum(f.get(i, 0) * x for i, x in vec.items()) for f in funcs):
                extra = idx
                break
        if extra is None:
            comp.functionals = funcs
            return
        # independent over Q though dependent mod p
        comp.selected = sorted(chosen | {extra})


def quotient_dim(lat: Lattice, n: int) -> int:
    return c2_component(lat, n).quotient_dim


def clear_caches():
    _COMPONENT_CACHE.clear()
    _BASIS_CACHE.clear()
    _INDEX_CACHE.clear()


# ---------------------------------------------------------------------------
# congruences


@dataclass
class CongruenceCertificate:
    lhs: FockElement
    rhs: FockElement
    weight: int | None
    member: bool
    method: str
    generator_refs: list[GeneratorRef] = field(default_factory=list)
    coefficients: list | None = None
    verified: bool = False

    def to_json(self) -> dict:
        from .scalars import format_scalar

        return {
            "weight": self.weight,
            "congruent": self.member,
            "method": self.method,
            "generators": [r.as_list() for r in self.generator_refs],
            "coefficients": None if self.coefficients is None else [format_scalar(c) for c in self.coefficients],
            "verified": self.verified,
        }


def _solve_fractions(columns: list[dict[int, Fraction]], target: dict[int, Fraction]):
    """Find x with sum x_j columns[j] = target (columns independent); None if impossible."""
    nvar = len(columns)
    # rows indexed by coordinate; augmented dense matrix
    coords = sorted({i for c in columns for i in c} | set(target))
    mat = [[col.get(i, Fraction(0)) for col in columns] + [target.get(i, Fraction(0))] for i in coords]
    r = 0
    pivcols = []
    for c in range(nvar):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivcols.append(c)
        r += 1
    if any(row[-1] for row in mat[r:]):
        return None
    x = [Fraction(0)] * nvar
    for i, c in enumerate(pivcols):
        x[c] = mat[i][-1]
    return x


def congruent(lat: Lattice, lhs: FockElement, rhs: FockElement, *, max_solve: int = 120) -> CongruenceCertificate:
    """Decide ``lhs = rhs mod C_2(V_L^+)`` and, for small weights, produce coefficients."""
    lat.require_c2_range()
    diff = lhs - rhs
    if not diff:
        return CongruenceCertificate(lhs, rhs, None, True, "identical", [], [], True)
    weights = {lat.weight_of(k) for k in diff.terms}
    if len(weights) != 1:
        raise NotHomogeneousError(f"lhs - rhs is inhomogeneous (weights {sorted(weights)})")
    n = weights.pop()
    if not is_theta_fixed(diff):
        return CongruenceCertificate(lhs, rhs, n, False, "not-theta-fixed")
    comp = c2_component(lat, n)
    member = comp.contains(diff)
    if not member:
        # an annihilating functional separates lhs - rhs from C_2; nothing to reconstruct
        return CongruenceCertificate(lhs, rhs, n, False, "annihilator")
    if comp.rank > max_solve:
        # membership is exact (saturation or annihilators) but no coefficient list is produced
        return CongruenceCertificate(lhs, rhs, n, True, "saturated" if comp.saturated else "annihilator")
    target = element_coords(lat, comp.basis, diff)
    cols = [comp.vectors[i] for i in comp.selected]
    x = _solve_fractions(cols, target)
    refs, coeffs = [], []
    recon = FockElement()
    for j, lam in enumerate(x or []):
        if lam:
            idx = comp.selected[j]
            refs.append(comp.generator_refs[idx])
            coeffs.append(lam)
            recon = recon + generator_element(lat, comp.generator_refs[idx], n) * lam
    verified = x is not None and recon == diff
    return CongruenceCertificate(lhs, rhs, n, x is not None, "explicit", refs, coeffs, verified)


# ---------------------------------------------------------------------------
# spanning check for the quotient


def spanning_list(lat: Lattice) -> list[tuple[str, FockElement]]:
    """Vectors whose images span V_L^+/C_2(V_L^+) (main theorem list)."""
    k = lat.k
    one, E = vacuum(), E_elem(1)
    J = J_elem(lat)
    out = [(f"L(-2)^{i}E", L_power(lat, -2, i, E)) for i in range(3)]
    out += [(f"L(-2)^{m}1", L_power(lat, -2, m, one)) for m in range(2 * k + 3)]
    out += [("J", J), ("J_-1^2 1", mode_apply(lat, J, -1, J)), ("L(-2)J", virasoro(lat, -2, J))]
    return out


@dataclass
class WeightReport:
    weight: int
    ambient_dim: int
    c2_rank: int
    quotient_dim: int
    listed: list[str]
    residual_zero: bool


@dataclass
class SpanningReport:
    k: int
    max_weight: int
    weights: list[WeightReport]
    named: dict[str, bool]

    @property
    def total_quotient_dim(self) -> int:
        return sum(w.quotient_dim for w in self.weights)

    @property
    def bound(self) -> int:
        return 2 * self.k + 9

    @property
    def ok(self) -> bool:
        return (
            all(w.residual_zero for w in self.weights)
            and self.total_quotient_dim <= self.bound
            and all(self.named.values())
        )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "max_weight": self.max_weight,
            "weights": [w.__dict__ for w in self.weights],
            "total_quotient_dim": self.total_quotient_dim,
            "bound": self.bound,
            "named": self.named,
            "ok": self.ok,
        }


def spanning_check(lat: Lattice, max_weight: int | None = None) -> SpanningReport:
    lat.require_c2_range()
    k = lat.k
    if max_weight is None:
        max_weight = 4 * k + 8
    if max_weight < 4 * k + 8:
        raise C2Error(f"spanning check needs max_weight >= 4k+8 = {4 * k + 8}")
    listed = spanning_list(lat)
    by_weight: dict[int, list[tuple[str, FockElement]]] = {}
    for name, vec in listed:
        by_weight.setdefault(lat.weight_of(next(iter(vec.terms))), []).append((name, vec))
    reports = []
    for n in range(max_weight + 1):
        comp = c2_component(lat, n)
        extra = by_weight.get(n, [])
        if comp.saturated:
            residual_zero = True
        else:
            ech = ModpEchelon(comp.ambient_dim)
            for i in comp.selected:
                ech.add(_to_modp(comp.vectors[i], comp.ambient_dim, ech.p))
            for _, vec in extra:
                ech.add(_to_modp(element_coords(lat, comp.basis, vec), comp.ambient_dim, ech.p))
            residual_zero = ech.rank == comp.ambient_dim
        reports.append(WeightReport(n, comp.ambient_dim, comp.rank, comp.quotient_dim, [s for s, _ in extra], residual_zero))
    named = {}
    top = 4 * k + 6
    if top <= max_weight:
        comp = c2_component(lat, top)
        for i, bv in enumerate(enumerate_basis(lat, 2, top)):
            named[f"g{i + 1}"] = comp.contains(bv.element())
        named[f"L(-2)^{2 * k + 3}1"] = comp.contains(L_power(lat, -2, 2 * k + 3, vacuum()))
    named["L(-2)^3E"] = c2_component(lat, k + 6).contains(L_power(lat, -2, 3, E_elem(1)))
    return SpanningReport(k, max_weight, reports, named)
