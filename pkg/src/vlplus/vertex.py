"""Vertex operators on V_L: Heisenberg modes, general modes ``v_t w``,
Schur polynomial states, the Virasoro element and J.

``mode_apply`` works from the normal-ordered form of ``Y(v, z)``:

* each factor ``alpha(-n)`` of ``v`` becomes the field
  ``(1/(n-1)!) d^{n-1} alpha(z)``, split into a creation half
  ``sum_{i>=0} C(n-1+i, n-1) alpha(-n-i) z^i`` and an annihilation half
  ``sum_{j>=0} (-1)^{n-1} C(j+n-1, n-1) alpha(j) z^{-j-n}``;
* the charge ``e^{a alpha}`` contributes ``exp(sum a alpha(-n) z^n / n)``
  (creation), ``exp(-sum a alpha(n) z^{-n} / n)`` (annihilation), the charge
  shift and ``z^{2kab}``.

All annihilation pieces act on ``w`` first, then the creation pieces
multiply.  ``mode_apply_oracle`` recomputes the same modes through the
iterate formula for normal-ordered products and literal exponential series,
sharing none of that machinery.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple

from .fock import (
    E_elem,
    F_elem,
    FockElement,
    Key,
    Lattice,
    Parts,
    merge_parts,
    partitions,
    vacuum,
)
from .scalars import RationalFunction, ScalarModeError


class KAffine(NamedTuple):
    """Mode index ``const + kcoef * k`` (only needed in symbolic mode)."""

    const: int
    kcoef: int = 0

    def at(self, k: int) -> int:
        return self.const + self.kcoef * k


class SymbolicDegreeError(ScalarModeError):
    """A symbolic-k mode needs a creation degree that depends on k."""


class OracleCapError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Heisenberg modes


def _remove_part(parts: Parts, n: int) -> Parts:
    i = parts.index(n)
    return parts[:i] + parts[i + 1 :]


def apply_alpha(lat: Lattice, n: int, e: FockElement) -> FockElement:
    """``alpha(n) e`` using ``[alpha(m), alpha(n)] = 2km delta_{m+n,0}``."""
    kk = lat.kk
    out: dict[Key, object] = {}
    if n < 0:
        for (p, m), c in e.terms.items():
            key = (merge_parts((-n,), p), m)
            out[key] = out.get(key, 0) + c
    elif n == 0:
        for (p, m), c in e.terms.items():
            if m:
                out[(p, m)] = c * (2 * m) * kk
    else:
        for (p, m), c in e.terms.items():
            cnt = p.count(n)
            if cnt:
                key = (_remove_part(p, n), m)
                out[key] = out.get(key, 0) + c * (cnt * 2 * n) * kk
    return FockElement(out)


# ---------------------------------------------------------------------------
# Schur polynomials


def _z_lambda(parts: Parts) -> int:
    z = 1
    for n, mult in Counter(parts).items():
        z *= n**mult * factorial(mult)
    return z


@lru_cache(maxsize=None)
def _schur_terms(j: int, a: int) -> dict[Parts, Fraction]:
    # p_j(x) = sum_{lambda |- j} prod x_{lambda_i} / z_lambda with x_n = a alpha(-n)
    return {lam: Fraction(a ** len(lam), _z_lambda(lam)) for lam in partitions(j)} if a or j == 0 else {}


def schur_p(j: int, m: int) -> FockElement:
    """``p_j(m alpha)``: coefficient of z^j in exp(sum m alpha(-n) z^n / n) applied to 1."""
    if j < 0:
        raise ValueError("Schur index must be nonnegative")
    return FockElement({(lam, 0): c for lam, c in _schur_terms(j, m).items()})


# ---------------------------------------------------------------------------
# creation series


@lru_cache(maxsize=None)
def _creation_fields(record: Parts, d: int) -> dict[Parts, Fraction]:
    """Coefficient of z^d in prod_{n in record} sum_i C(n-1+i, n-1) alpha(-n-i) z^i."""
    if not record:
        return {(): Fraction(1)} if d == 0 else {}
    n, rest = record[0], record[1:]
    out: dict[Parts, Fraction] = {}
    for i in range(d + 1):
        sub = _creation_fields(rest, d - i)
        if not sub:
            continue
        c = comb(n - 1 + i, n - 1)
        for p, v in sub.items():
            key = merge_parts((n + i,), p)
            out[key] = out.get(key, 0) + c * v
    return {p: v for p, v in out.items() if v}


@lru_cache(maxsize=None)
def _creation_block(record: Parts, a: int, d: int) -> tuple[tuple[Parts, Fraction], ...]:
    """Coefficient of z^d in exp(sum a alpha(-n) z^n/n) * prod of creation fields."""
    out: dict[Parts, Fraction] = {}
    for i in range(d + 1):
        fields = _creation_fields(record, i)
        if not fields:
            continue
        schur = _schur_terms(d - i, a)
        for p, v in fields.items():
            for q, s in schur.items():
                key = merge_parts(p, q)
                out[key] = out.get(key, 0) + v * s
    return tuple((p, v) for p, v in out.items() if v)


# ---------------------------------------------------------------------------
# annihilation stage


def _annihilation_states(lat: Lattice, vparts: Parts, a: int, wparts: Parts, b: int):
    """Act with every annihilation piece of Y(v, z) on the Heisenberg part of w.

    Returns ``{(zpow, record, remaining_parts): coeff}`` where ``zpow`` excludes
    the charge pairing and ``record`` lists the fields left on the creation side.
    """
    kk = lat.kk
    two_k = 2 * kk
    # exp(-a sum alpha(n) z^{-n}/n) acts on a product of creators part by part:
    # each alpha(-n) either survives or is replaced by -2ka z^{-n}.
    states: dict[tuple, object] = {}
    if a:
        counts = sorted(Counter(wparts).items(), reverse=True)
        partial = {(0, ()): 1}
        for n, cnt in counts:
            nxt = {}
            for (zp, kept), c in partial.items():
                for removed in range(cnt + 1):
                    coeff = comb(cnt, removed) * (-two_k * a) ** removed if removed else 1
                    key = (zp - n * removed, kept + (n,) * (cnt - removed))
                    nxt[key] = nxt.get(key, 0) + c * coeff
            partial = nxt
        for (zp, kept), c in partial.items():
            states[(zp, (), kept)] = c
    else:
        states[(0, (), wparts)] = 1

    for n, mult in sorted(Counter(vparts).items(), reverse=True):
        sign = -1 if (n - 1) % 2 else 1
        nxt: dict[tuple, object] = {}
        for (zp, rec, rem), c in states.items():
            # choose how many of the `mult` identical fields act as annihilators
            layer = {(zp, rem): c}
            for used in range(mult + 1):
                if used:
                    new_layer = {}
                    for (zq, r), cc in layer.items():
                        if b:
                            key = (zq - n, r)
                            new_layer[key] = new_layer.get(key, 0) + cc * (sign * b) * two_k
                        for j, cnt in Counter(r).items():
                            coeff = sign * comb(j + n - 1, n - 1) * cnt * j
                            key = (zq - j - n, _remove_part(r, j))
                            new_layer[key] = new_layer.get(key, 0) + cc * coeff * two_k
                    layer = new_layer
                binom = comb(mult, used)
                new_rec = merge_parts(rec, (n,) * (mult - used))
                for (zq, r), cc in layer.items():
                    if cc:
                        key = (zq, new_rec, r)
                        nxt[key] = nxt.get(key, 0) + cc * binom
        states = {key: c for key, c in nxt.items() if c}
    return states


_MODE_CACHE: dict = {}


def _target_degree(lat: Lattice, t, a: int, b: int) -> int:
    """Integer z-power ``s`` such that ``z^{2kab} z^s`` is ``z^{-t-1}``."""
    if lat.is_symbolic:
        t = t if isinstance(t, KAffine) else KAffine(int(t), 0)
        kc = -t.kcoef - 2 * a * b
        if kc:
            raise SymbolicDegreeError(
                f"mode {t} of a charge-{a} state on a charge-{b} state needs a k-dependent degree"
            )
        return -t.const - 1
    if isinstance(t, KAffine):
        t = t.at(lat.k)
    return -t - 1 - 2 * lat.k * a * b


def _mode_monomial(lat: Lattice, vkey: Key, t, wkey: Key) -> dict[Key, object]:
    cache_key = (lat.k, vkey, t, wkey)
    hit = _MODE_CACHE.get(cache_key)
    if hit is not None:
        return hit
    (vparts, a), (wparts, b) = vkey, wkey
    s = _target_degree(lat, t, a, b)
    out: dict[Key, object] = {}
    # the creation side only raises z-powers, so states above s never contribute
    if s >= -sum(vparts) - sum(wparts):
        for (zp, rec, rem), c in _annihilation_states(lat, vparts, a, wparts, b).items():
            d = s - zp
            if d < 0:
                continue
            for q, qc in _creation_block(rec, a, d):
                key = (merge_parts(q, rem), a + b)
                out[key] = out.get(key, 0) + c * qc
        out = {key: c for key, c in out.items() if c}
    _MODE_CACHE[cache_key] = out
    return out


def mode_apply(lat: Lattice, v: FockElement, t, w: FockElement) -> FockElement:
    """``v_t w``: the coefficient of z^{-t-1} in Y(v, z) w.

    ``t`` is an int, or (symbolic mode, charged states) a :class:`KAffine`.
    """
    out: dict[Key, object] = {}
    for vk, vc in v.terms.items():
        for wk, wc in w.terms.items():
            coeff = vc * wc
            for key, c in _mode_monomial(lat, vk, t, wk).items():
                out[key] = out.get(key, 0) + coeff * c
    return FockElement(out)


def clear_mode_cache():
    _MODE_CACHE.clear()


def charge_pairing_terms(lat: Lattice, a: int, t: KAffine, b: int):
    """Describe ``(e^{a alpha})_t e^{b alpha}`` when the Schur index may depend on k.

    Returns ``(index, a, a + b)`` meaning ``p_index(a alpha) (x) e^{(a+b) alpha}``
    with ``index`` a :class:`KAffine`.  This is the exact closed form of
    ``Y(e^{a alpha}, z) e^{b alpha} = z^{2kab} exp(sum a alpha(-n) z^n/n) e^{(a+b) alpha}``.
    """
    return KAffine(-t.const - 1, -t.kcoef - 2 * a * b), a, a + b


# ---------------------------------------------------------------------------
# Virasoro element, J, named states


def omega(lat: Lattice) -> FockElement:
    return FockElement.monomial((1, 1), 0, 1 / (4 * lat.kk))


def J_elem(lat: Lattice) -> FockElement:
    kk = lat.kk
    return (
        FockElement.monomial((1, 1, 1, 1), 0, 1 / (4 * kk * kk))
        + FockElement.monomial((3, 1), 0, -1 / kk)
        + FockElement.monomial((2, 2), 0, 3 / (4 * kk))
    )


def virasoro(lat: Lattice, n: int, e: FockElement) -> FockElement:
    """``L(n) e = omega_{n+1} e``."""
    return mode_apply(lat, omega(lat), n + 1, e)


def L_power(lat: Lattice, n: int, power: int, e: FockElement) -> FockElement:
    for _ in range(power):
        e = virasoro(lat, n, e)
    return e


def build_named(lat: Lattice, name: str, m: int = 1) -> FockElement:
    """Named states: ``one``, ``E``, ``F``, ``Em``/``Fm`` (with m), ``omega``, ``J``."""
    if name == "one":
        return vacuum()
    if name in ("E", "Em"):
        return E_elem(m if name == "Em" else 1)
    if name in ("F", "Fm"):
        return F_elem(m if name == "Fm" else 1)
    if name == "omega":
        return omega(lat)
    if name == "J":
        return J_elem(lat)
    raise ValueError(f"unknown named state {name!r}")


CENTRAL_CHARGE = 1


# ---------------------------------------------------------------------------
# independent oracle


@dataclass
class _OracleCtx:
    lat: Lattice
    cap: int


def _heis_weight(key: Key) -> int:
    return sum(key[0])


def _vacuum_exp_apply(lat: Lattice, a: int, elem: FockElement, power_limit: int) -> dict[int, FockElement]:
    """exp(-a sum_{n>0} alpha(n) z^{-n}/n) elem, as {negative z-power: element}."""
    # literal exponential: sum_r X^r / r!, X = -a sum_n alpha(n) z^{-n} / n
    result = {0: elem}
    layer = {0: elem}
    r = 0
    while layer:
        r += 1
        nxt: dict[int, FockElement] = {}
        for zp, x in layer.items():
            for n in range(1, power_limit + 1):
                y = apply_alpha(lat, n, x)
                if y:
                    y = y * Fraction(-a, n)
                    nxt[zp - n] = nxt.get(zp - n, FockElement()) + y
        layer = {zp: x * Fraction(1, r) for zp, x in nxt.items() if x}
        for zp, x in layer.items():
            result[zp] = result.get(zp, FockElement()) + x
    return result


def _creation_exp_coeff(a: int, d: int) -> FockElement:
    """Coefficient of z^d in exp(sum a alpha(-n) z^n / n) 1 by literal power series."""
    # series X = sum_{n=1..d} a alpha(-n) z^n / n; accumulate X^r / r!
    total = FockElement({((), 0): 1}) if d == 0 else FockElement()
    power = {0: FockElement({((), 0): 1})}
    for r in range(1, d + 1):
        nxt: dict[int, FockElement] = {}
        for deg, x in power.items():
            for n in range(1, d - deg + 1):
                y = FockElement({(merge_parts((n,), p), m): c * Fraction(a, n) for (p, m), c in x.terms.items()})
                nxt[deg + n] = nxt.get(deg + n, FockElement()) + y
        power = {deg: x * Fraction(1, r) for deg, x in nxt.items()}
        if d in power:
            total = total + power[d]
    return total


def _oracle_exp(ctx: _OracleCtx, a: int, t: int, w: FockElement) -> FockElement:
    lat = ctx.lat
    out = FockElement()
    for (wp, b), c in w.terms.items():
        elem = FockElement({(wp, b): c})
        s = -t - 1 - 2 * lat.k * a * b
        for zp, x in _vacuum_exp_apply(lat, a, elem, sum(wp)).items():
            d = s - zp
            if d < 0:
                continue
            cre = _creation_exp_coeff(a, d)
            shifted = FockElement({(p, m + a): cc for (p, m), cc in x.terms.items()})
            out = out + _times_m1(shifted, cre)
    return out


def _times_m1(x: FockElement, m1: FockElement) -> FockElement:
    out: dict[Key, object] = {}
    for (p, m), c in x.terms.items():
        for (q, _), d in m1.terms.items():
            key = (merge_parts(p, q), m)
            out[key] = out.get(key, 0) + c * d
    return FockElement(out)


def _oracle_mono(ctx: _OracleCtx, vkey: Key, t: int, w: FockElement) -> FockElement:
    lat = ctx.lat
    vparts, a = vkey
    if not vparts:
        return _oracle_exp(ctx, a, t, w)
    n, rest = vparts[0], (vparts[1:], a)
    wt_rest = sum(rest[0]) + a * a * lat.k
    out = FockElement()
    for (wp, b), c in w.terms.items():
        wmono = FockElement({(wp, b): c})
        wt_w = sum(wp) + b * b * lat.k
        floor = (a + b) ** 2 * lat.k
        # (alpha(-n) v')_t = sum_i C(n+i-1, i) [alpha(-n-i) v'_{t+i} - (-1)^n v'_{t-n-i} alpha(i)]
        i = 0
        while wt_rest + wt_w - (t + i) - 1 >= floor:
            inner = _oracle_mono(ctx, rest, t + i, wmono)
            if inner:
                out = out + apply_alpha(lat, -n - i, inner) * comb(n + i - 1, i)
            i += 1
        sign = -1 if n % 2 == 0 else 1
        for i in range(0, sum(wp) + 1):
            hit = apply_alpha(lat, i, wmono)
            if hit:
                out = out + _oracle_mono(ctx, rest, t - n - i, hit) * (sign * comb(n + i - 1, i))
    return out


def mode_apply_oracle(lat: Lattice, v: FockElement, t: int, w: FockElement, cap: int = 16) -> FockElement:
    """Independent recomputation of ``v_t w`` (fixed k, small weights only)."""
    if lat.is_symbolic:
        raise ScalarModeError("the oracle runs at fixed k")
    wv = max((lat.weight_of(key) for key in v.terms), default=0)
    ww = max((lat.weight_of(key) for key in w.terms), default=0)
    if wv + ww > cap:
        raise OracleCapError(f"weight {wv}+{ww} exceeds oracle cap {cap}")
    ctx = _OracleCtx(lat, cap)
    out = FockElement()
    for vk, vc in v.terms.items():
        out = out + _oracle_mono(ctx, vk, t, w) * vc
    return out
