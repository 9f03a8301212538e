"""The two dimension witnesses and their analytic reference curves.

Both witnesses are functionals of eight probabilities p(+1 | x, s), where
x is the two-bit preparation label and s a binary measurement setting
(Bob's input y for the AB pair, Charlie's input z for the AC pair):

* ``w1`` -- the linear random-access-code witness: a signed sum whose sign
  for (x, s) is + when bit ``s`` of x is 0. Classical maximum 2, qubit
  maximum 2*sqrt(2).
* ``w2`` -- the nonlinear determinant witness: the 2x2 determinant of
  column differences in x2, rows indexed by s. Classical value 0, qubit
  maximum 1. The signed determinant is returned; violation is judged on
  its magnitude because the sign flips under relabeling of settings.

`closed_form` evaluates the analytic curves of both witnesses for the
canonical scenarios as functions of the coupling angle; the simulation is
required to reproduce them to 1e-9, which the verification suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channel import check_coupling
from .scenario import ProbTable

__all__ = [
    "CLASSICAL_BOUND_W1",
    "QUANTUM_BOUND_W1",
    "CLASSICAL_BOUND_W2",
    "QUANTUM_BOUND_W2",
    "VIOLATION_TOL",
    "WitnessValue",
    "Violation",
    "qrac_value",
    "determinant_value",
    "w1",
    "w2",
    "w1_given_z",
    "w2_given_z",
    "closed_form",
    "violation",
]

CLASSICAL_BOUND_W1 = 2.0
QUANTUM_BOUND_W1 = 2.0 * np.sqrt(2.0)
CLASSICAL_BOUND_W2 = 0.0
QUANTUM_BOUND_W2 = 1.0
#: Slack used both for bound invariants and violation decisions.
VIOLATION_TOL = 1e-9

#: Sign of the w1 term for (x, s): + iff bit s of x is 0.
QRAC_SIGNS = tuple(tuple(1 if ((x >> (1 - s)) & 1) == 0 else -1 for s in range(2)) for x in range(4))

Accessor = Callable[[int, int], float]


@dataclass(frozen=True)
class WitnessValue:
    """A witness evaluation: which functional, which pair, optional z."""

    kind: str  # "w1" | "w2"
    pair: str  # "ab" | "ac"
    value: float
    z: int | None = None

    def __post_init__(self):
        if self.kind not in ("w1", "w2"):
            raise ValueError(f"kind must be 'w1' or 'w2', got {self.kind!r}")
        if self.pair not in ("ab", "ac"):
            raise ValueError(f"pair must be 'ab' or 'ac', got {self.pair!r}")
        bound = QUANTUM_BOUND_W1 if self.kind == "w1" else QUANTUM_BOUND_W2
        if abs(self.value) > bound + VIOLATION_TOL:
            raise ValueError(f"{self.kind} value {self.value} exceeds the qubit bound {bound}")


@dataclass(frozen=True)
class Violation:
    violated: bool
    margin: float


def qrac_value(p: Accessor) -> float:
    """Signed sum of the eight probabilities with the random-access signs."""
    return float(sum(QRAC_SIGNS[x][s] * p(x, s) for x in range(4) for s in range(2)))


def determinant_value(p: Accessor) -> float:
    """Signed determinant of the 2x2 matrix of x2-differences.

    Row s, column x1: p(+1 | x1 0, s) - p(+1 | x1 1, s).
    """
    m = [[p(2 * x1, s) - p(2 * x1 + 1, s) for x1 in range(2)] for s in range(2)]
    return float(m[0][0] * m[1][1] - m[0][1] * m[1][0])


def _accessor(table: ProbTable, pair: str, z: int | None) -> Accessor:
    if pair == "ab":
        if z is None:
            return lambda x, s: table.p_bob_plus(x, s)
        if z not in (0, 1):
            raise ValueError(f"z must be 0 or 1, got {z!r}")
        return lambda x, s: table.p_bob_plus_given_z(x, s, z)
    if pair == "ac":
        if z is not None:
            raise ValueError("the AC pair uses z itself as the setting; conditioning on z is meaningless")
        return lambda x, s: table.p_charlie_plus(x, s)
    raise ValueError(f"pair must be 'ab' or 'ac', got {pair!r}")


def w1(table: ProbTable, pair: str = "ab", z: int | None = None) -> WitnessValue:
    """Linear witness between the sender and the selected observer."""
    return WitnessValue(kind="w1", pair=pair, value=qrac_value(_accessor(table, pair, z)), z=z)


def w2(table: ProbTable, pair: str = "ab", z: int | None = None) -> WitnessValue:
    """Determinant witness between the sender and the selected observer."""
    return WitnessValue(kind="w2", pair=pair, value=determinant_value(_accessor(table, pair, z)), z=z)


def w1_given_z(table: ProbTable, z: int) -> WitnessValue:
    """Linear AB witness conditioned on Charlie's input z."""
    return w1(table, pair="ab", z=z)


def w2_given_z(table: ProbTable, z: int) -> WitnessValue:
    """Determinant AB witness conditioned on Charlie's input z."""
    return w2(table, pair="ab", z=z)


_CLOSED_FORMS = {
    "w1_ab": lambda e: np.sqrt(2.0) * (np.cos(e) + 1.0),
    "w1_ac": lambda e: 2.0 * np.sqrt(2.0) * np.sin(e) ** 2,
    "w2_ab": lambda e: ((np.cos(e) + 1.0) / 2.0) ** 2,
    "w2_ac": lambda e: np.sin(e) ** 4,
    "w1_ab_z": lambda e: np.sqrt(2.0) * np.cos(e) + np.sqrt(2.0),
    "w2_ab_z": lambda e: np.cos(e),
}


def closed_form(kind: str, eps: float) -> float:
    """Analytic witness value of the matching canonical scenario.

    ``kind`` is one of w1_ab, w1_ac, w2_ab, w2_ac (z-averaged curves) or
    w1_ab_z, w2_ab_z (the z-conditioned AB curves, identical for both z).
    """
    try:
        f = _CLOSED_FORMS[kind]
    except KeyError:
        raise ValueError(f"unknown closed form {kind!r}; expected one of {sorted(_CLOSED_FORMS)}") from None
    return float(f(check_coupling(eps)))


def violation(kind: str, value: float) -> Violation:
    """Classical-bound test: w1 violates above 2, w2 on any nonzero magnitude."""
    if kind == "w1":
        return Violation(violated=value > CLASSICAL_BOUND_W1 + VIOLATION_TOL, margin=value - CLASSICAL_BOUND_W1)
    if kind == "w2":
        return Violation(violated=abs(value) > VIOLATION_TOL, margin=abs(value))
    raise ValueError(f"kind must be 'w1' or 'w2', got {kind!r}")
