"""The state space V_L = M(1) (x) C[L] for the rank-one lattice L = Z alpha.

A basis monomial ``alpha(-n_1)...alpha(-n_r) (x) e^{m alpha}`` is stored as the
key ``(parts, m)`` where ``parts`` is the descending tuple ``(n_1, ..., n_r)``.
Elements are sparse maps from keys to exact scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Union

from .scalars import (
    K,
    RationalFunction,
    Scalar,
    ScalarModeError,
    format_scalar,
    parse_scalar,
)

Parts = tuple[int, ...]
Key = tuple[Parts, int]


class NotHomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Lattice parameter: ``<alpha, alpha> = 2k``.

    ``k=None`` selects symbolic mode, where scalars live in Q(k).
    """

    k: int | None = 3

    def __post_init__(self):
        if self.k is not None and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"k must be a positive integer, got {self.k!r}")

    @classmethod
    def symbolic(cls) -> "Lattice":
        return cls(None)

    @property
    def is_symbolic(self) -> bool:
        return self.k is None

    @property
    def kk(self) -> Scalar:
        """``k`` as a scalar of this lattice's mode."""
        return K if self.k is None else Fraction(self.k)

    def scalar(self, x) -> Scalar:
        if isinstance(x, RationalFunction):
            if not self.is_symbolic:
                if x.is_constant():
                    return x.constant_value()
                raise ScalarModeError(f"symbolic scalar {x} used with fixed k={self.k}")
            return x
        if isinstance(x, str):
            return self.scalar(parse_scalar(x, symbolic=self.is_symbolic))
        x = Fraction(x)
        return RationalFunction.coerce(x) if self.is_symbolic else x

    @property
    def label(self) -> str:
        return "sym" if self.k is None else str(self.k)

    def weight_of(self, key: Key):
        parts, m = key
        w = sum(parts)
        if m == 0:
            return w
        return w + m * m * self.k if self.k is not None else K * (m * m) + w

    def require_c2_range(self):
        if self.k is None:
            raise ScalarModeError("C2 computations need a fixed integer k")
        if self.k < 3:
            raise ValueError(
                f"k={self.k} is not supported: the C2 argument assumes k >= 3 "
                "(k = 1, 2 reduce to other known vertex operator algebras)"
            )


def merge_parts(p: Parts, q: Parts) -> Parts:
    if not p:
        return q
    if not q:
        return p
    return tuple(sorted(p + q, reverse=True))


def _mono_sort_key(key: Key):
    parts, m = key
    return (sum(parts), tuple(-x for x in parts), m)


class FockElement:
    """Finite linear combination of basis monomials with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Key, Scalar] = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def _trusted(cls, terms: dict) -> "FockElement":
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def monomial(cls, parts: Iterable[int] = (), charge: int = 0, coeff=1) -> "FockElement":
        parts = tuple(sorted(parts, reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"creation indices must be positive: {parts}")
        return cls({(parts, charge): coeff})

    # container protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Key, Scalar]]:
        return iter(sorted(self.terms.items(), key=lambda kv: _mono_sort_key(kv[0])))

    def coeff(self, parts: Iterable[int], charge: int = 0):
        return self.terms.get((tuple(sorted(parts, reverse=True)), charge), 0)

    # linear structure --------------------------------------------------------

    def __add__(self, other: "FockElement") -> "FockElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return FockElement._trusted(out)

    def __neg__(self):
        return FockElement._trusted({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "FockElement") -> "FockElement":
        return self + (-other)

    def __mul__(self, c) -> "FockElement":
        if isinstance(c, FockElement):
            return NotImplemented
        if not c:
            return FockElement()
        return FockElement._trusted({k: v * c for k, v in self.terms.items() if v * c})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "FockElement":
        return self * (1 / Fraction(c) if isinstance(c, int) else 1 / c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, FockElement):
            return NotImplemented
        return (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({format_scalar(c)}){format_key(k)}" for k, c in self)

    def charges(self) -> set[int]:
        return {m for (_, m) in self.terms}

    def heisenberg_product(self, other: "FockElement") -> "FockElement":
        """Product in the polynomial algebra M(1); ``other`` must have charge 0."""
        out: dict[Key, Scalar] = {}
        for (p, m), c in self.terms.items():
            for (q, m2), d in other.terms.items():
                if m2:
                    raise ValueError("heisenberg_product needs a charge-0 right factor")
                key = (merge_parts(p, q), m)
                out[key] = out.get(key, 0) + c * d
        return FockElement(out)


def format_key(key: Key) -> str:
    parts, m = key
    s = "".join(f"a(-{n})" for n in parts)
    if m == 0:
        return s + "1" if not s else s
    return s + (f"e^({m})" if m != 1 else "e^(1)")


def vacuum() -> FockElement:
    return FockElement({((), 0): 1})


def charged(m: int, parts: Iterable[int] = (), coeff=1) -> FockElement:
    return FockElement.monomial(parts, m, coeff)


def E_elem(m: int = 1, parts: Iterable[int] = ()) -> FockElement:
    """``alpha(-parts) (x) (e^{m alpha} + e^{-m alpha})``."""
    if m < 1:
        raise ValueError(f"E^m needs m >= 1, got {m}")
    return charged(m, parts) + charged(-m, parts)


def F_elem(m: int = 1, parts: Iterable[int] = ()) -> FockElement:
    """``alpha(-parts) (x) (e^{m alpha} - e^{-m alpha})``."""
    if m < 1:
        raise ValueError(f"F^m needs m >= 1, got {m}")
    return charged(m, parts) - charged(-m, parts)


# ---------------------------------------------------------------------------
# grading, theta, length


def weight(lat: Lattice, e: FockElement):
    """Common L(0)-eigenvalue of a homogeneous element."""
    if not e:
        raise NotHomogeneousError("the zero element has no weight")
    ws = {lat.weight_of(key) for key in e.terms}
    if len(ws) != 1:
        raise NotHomogeneousError(f"element mixes weights {sorted(map(str, ws))}")
    return ws.pop()


def is_homogeneous(lat: Lattice, e: FockElement) -> bool:
    return len({lat.weight_of(key) for key in e.terms}) <= 1


def theta(e: FockElement) -> FockElement:
    return FockElement._trusted(
        {(p, -m): (-c if len(p) % 2 else c) for (p, m), c in e.terms.items()}
    )


def plus_project(e: FockElement) -> FockElement:
    return (e + theta(e)) * Fraction(1, 2)


def is_theta_fixed(e: FockElement) -> bool:
    return theta(e) == e


def alpha_length(e: FockElement) -> int:
    if not e:
        raise ValueError("length of the zero element is undefined")
    return max(len(p) for (p, _) in e.terms)


# ---------------------------------------------------------------------------
# partitions and graded bases


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Parts, ...]:
    """Partitions of ``n`` as descending tuples, largest first part first."""
    if n < 0:
        return ()
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n))


@dataclass(frozen=True)
class BasisVector:
    """One member of a graded basis: ``alpha(-parts)`` times 1, E^m or F^m."""

    parts: Parts
    sector: int = 0  # 0 means M(1); m >= 1 means E^m/F^m
    kind: str = "1"  # "1" (charge 0), "E" or "F"

    def element(self) -> FockElement:
        if self.sector == 0:
            return FockElement.monomial(self.parts, 0)
        return E_elem(self.sector, self.parts) if self.kind == "E" else F_elem(self.sector, self.parts)

    @property
    def lead(self) -> Key:
        """Key of the distinguished monomial whose coefficient is this coordinate."""
        return (self.parts, self.sector)

    def __str__(self):
        body = "".join(f"a(-{n})" for n in self.parts)
        tail = "1" if self.sector == 0 else (self.kind if self.sector == 1 else f"{self.kind}{self.sector}")
        return body + tail


@dataclass(frozen=True)
class GradedBasis:
    space: str
    weight: object
    vectors: tuple[BasisVector, ...]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def elements(self) -> list[FockElement]:
        return [v.element() for v in self.vectors]


Space = Union[str, int]


def m1_basis(n: int, parity: int) -> list[BasisVector]:
    return [BasisVector(p) for p in partitions(n) if len(p) % 2 == parity]


def sector_basis(m: int, heis_weight: int) -> list[BasisVector]:
    """Basis of V_L^+(m) in Heisenberg weight ``heis_weight`` (total weight minus m^2 k)."""
    out = []
    for p in partitions(heis_weight):
        out.append(BasisVector(p, m, "E" if len(p) % 2 == 0 else "F"))
    return out


def enumerate_basis(lat: Lattice, space: Space, weight_n) -> GradedBasis:
    """Ordered basis of a homogeneous subspace.

    ``space`` is ``"M1+"``, ``"M1-"``, ``"VL+"`` or a positive int ``m`` for
    the charge sector V_L^+(m).  In symbolic mode ``weight_n`` may be a
    polynomial in k for sector spaces.
    """
    if space in ("M1+", "M1-"):
        n = _int_weight(weight_n)
        vecs = m1_basis(n, 0 if space == "M1+" else 1)
    elif space == "VL+":
        if lat.is_symbolic:
            raise ScalarModeError("the full V_L^+ basis needs a fixed k")
        n = _int_weight(weight_n)
        vecs = m1_basis(n, 0)
        m = 1
        while m * m * lat.k <= n:
            vecs += sector_basis(m, n - m * m * lat.k)
            m += 1
    elif isinstance(space, int) and space >= 1:
        floor = lat.weight_of(((), space))
        heis = weight_n - floor
        if isinstance(heis, RationalFunction):
            if not heis.is_constant():
                raise ValueError(f"weight {weight_n} is not k-shifted from the sector floor {floor}")
            heis = heis.constant_value()
        heis = int(heis) if Fraction(heis).denominator == 1 else None
        if heis is None:
            raise ValueError(f"non-integral weight {weight_n}")
        vecs = sector_basis(space, heis) if heis >= 0 else []
    else:
        raise ValueError(f"unknown space selector {space!r}")
    return GradedBasis(str(space), weight_n, tuple(vecs))


def _int_weight(w) -> int:
    if isinstance(w, RationalFunction):
        w = w.constant_value()
    if Fraction(w).denominator != 1:
        raise ValueError(f"non-integral weight {w}")
    w = int(w)
    if w < 0:
        raise ValueError(f"weight must be nonnegative, got {w}")
    return w


def vl_plus_dim(lat: Lattice, n: int) -> int:
    return len(enumerate_basis(lat, "VL+", n))


# ---------------------------------------------------------------------------
# JSON


def element_to_json(e: FockElement) -> list[dict]:
    return [{"parts": list(p), "charge": m, "coeff": format_scalar(c)} for (p, m), c in e]


def element_from_json(lat: Lattice, data: list[dict]) -> FockElement:
    out: dict[Key, Scalar] = {}
    for item in data:
        key = (tuple(sorted(item["parts"], reverse=True)), int(item["charge"]))
        out[key] = out.get(key, 0) + lat.scalar(item["coeff"])
    return FockElement(out)
