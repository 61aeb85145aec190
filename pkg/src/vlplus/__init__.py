"""Exact computations in the rank-one lattice vertex operator algebra V_L^+.

Modules:

* ``scalars``: Q(k) rational functions (symbolic k) next to plain fractions.
* ``fock``: the Fock space V_L, its graded bases and the theta involution.
* ``vertex``: modes ``v_t w``, the Virasoro element, J, and an independent oracle.
* ``linalg``: exact determinants, inverses and span membership.
* ``c2``: weight components of C_2(V_L^+) at fixed k, congruences, spanning checks.
* ``report``: the appendix tables, constants and identity checks.
* ``expr`` and ``cli``: the expression language and the command line.
"""

from .fock import E_elem, F_elem, FockElement, Lattice, enumerate_basis, vacuum
from .scalars import RationalFunction, format_scalar, parse_scalar
from .vertex import J_elem, mode_apply, mode_apply_oracle, omega, virasoro

__version__ = "0.1.0"

__all__ = [
    "E_elem",
    "F_elem",
    "FockElement",
    "J_elem",
    "Lattice",
    "RationalFunction",
    "enumerate_basis",
    "format_scalar",
    "mode_apply",
    "mode_apply_oracle",
    "omega",
    "parse_scalar",
    "vacuum",
    "virasoro",
]
