"""Min-entropy evaluation and witness-based randomness certification.

Exact min-entropies are read off a probability table; certified rates come
from the closed-form relations between a witness value and the adversary's
best guessing probability. All entropies are in bits.

Certification below the classical bound is defined as zero: a linear
witness at or under 2 certifies nothing, so `h_from_w1` clamps there
instead of evaluating the formula outside its meaningful domain.

Note on `hmin_global_bound`: it evaluates the factorized guessing-
probability expression (Charlie's average term plus Bob's worst case) as
printed. That expression treats the two outcomes as uncorrelated given the
inputs, which the exact joint state does not satisfy for every coupling
angle; in a narrow window around eps ~ 0.87 (and its mirror about pi/2)
the "bound" actually exceeds the exact global min-entropy of the canonical
linear-witness scenario. The suite documents this; the value returned is
the literal formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import check_coupling
from .scenario import ProbTable
from .witness import QUANTUM_BOUND_W1, QUANTUM_BOUND_W2, VIOLATION_TOL, closed_form, w1, w1_given_z, w2_given_z

__all__ = [
    "SuperQuantumWitnessError",
    "EntropyReport",
    "hmin_global_exact",
    "hmin_local_bob_exact",
    "hmin_global_bound",
    "h_from_w1",
    "h_from_w2",
    "bob_certified",
    "charlie_certified",
    "entropy_report",
]


class SuperQuantumWitnessError(ValueError):
    """Raised when a witness value exceeds the qubit maximum."""


def _bits(guess_prob: float) -> float:
    # Guard (1 + 1e-16)-style rounding; entropies are nonnegative.
    return max(0.0, -float(np.log2(guess_prob)))


def hmin_global_exact(table: ProbTable) -> float:
    """Global min-entropy of (b, c): average best joint guess over inputs."""
    guess = np.mean(table.probs.max(axis=(3, 4)))
    return _bits(guess)


def hmin_local_bob_exact(table: ProbTable) -> float:
    """Local min-entropy of b from the z-averaged marginal."""
    guess = np.mean([max(table.bob_marginal(x, y)) for x in range(4) for y in range(2)])
    return _bits(guess)


def hmin_global_bound(table: ProbTable) -> float:
    """Factorized two-term expression: Charlie average + Bob worst case.

    See the module docstring: this is not a true lower bound on
    `hmin_global_exact` for every coupling angle.
    """
    guess_charlie = np.mean([max(table.charlie_marginal(x, z)) for x in range(4) for z in range(2)])
    guess_bob_worst = table.probs.sum(axis=4).max()
    return _bits(guess_charlie) + _bits(guess_bob_worst)


def _certified_bits(ratio: float) -> float:
    # ratio in [0, 1]: normalized distance of the witness from its maximum.
    inner = max(1.0 - ratio * ratio, 0.0)
    guess = 0.5 + 0.5 * np.sqrt((1.0 + np.sqrt(inner)) / 2.0)
    return _bits(guess)


def h_from_w1(w: float) -> float:
    """Certified bits of Bob's outcome from a linear witness value.

    Zero at or below the classical bound 2; the qubit maximum 2*sqrt(2)
    certifies -log2((2 + sqrt(2))/4) ~ 0.2284 bits.
    """
    w = float(w)
    if w > QUANTUM_BOUND_W1 + VIOLATION_TOL:
        raise SuperQuantumWitnessError(f"w1 value {w} exceeds the qubit maximum {QUANTUM_BOUND_W1}")
    if w <= 2.0:
        return 0.0
    return _certified_bits(min((w * w - 4.0) / 4.0, 1.0))


def h_from_w2(w: float) -> float:
    """Certified bits from a determinant witness; uses the magnitude.

    The relation depends on w^2 only, so the determinant's labeling sign
    is irrelevant.
    """
    a = abs(float(w))
    if a > QUANTUM_BOUND_W2 + VIOLATION_TOL:
        raise SuperQuantumWitnessError(f"w2 magnitude {a} exceeds the qubit maximum {QUANTUM_BOUND_W2}")
    return _certified_bits(min(a, 1.0))


def bob_certified(eps: float, kind: str) -> float:
    """Certified rate on Bob's side from the z-conditioned witness curves."""
    eps = check_coupling(eps)
    if kind == "w1":
        return h_from_w1(closed_form("w1_ab_z", eps))
    if kind == "w2":
        return h_from_w2(closed_form("w2_ab_z", eps))
    raise ValueError(f"kind must be 'w1' or 'w2', got {kind!r}")


def charlie_certified(eps: float) -> float:
    """Certified rate on Charlie's side: the AC pair is a clean two-observer
    protocol, so the linear-witness relation applies directly."""
    return h_from_w1(closed_form("w1_ac", check_coupling(eps)))


@dataclass(frozen=True)
class EntropyReport:
    """All entropy figures for one table, in bits.

    ``hmin_global_bound`` is the literal factorized expression; it may
    exceed ``hmin_global_exact`` in a known window of coupling angles (see
    module docstring), so no ordering is enforced here.
    """

    hmin_global_exact: float
    hmin_local_bob_exact: float
    hmin_global_bound: float
    h_bob_certified_w1: float
    h_bob_certified_w2: float
    h_charlie_certified: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} is negative")


def entropy_report(table: ProbTable) -> EntropyReport:
    """Evaluate every entropy figure on one simulated table.

    Certified rates use the simulated witness values. Bob's rates take the
    worse of the two z-conditioned witnesses (the adversary knows z); the
    canonical scenarios make both z values identical.
    """
    return EntropyReport(
        hmin_global_exact=hmin_global_exact(table),
        hmin_local_bob_exact=hmin_local_bob_exact(table),
        hmin_global_bound=hmin_global_bound(table),
        h_bob_certified_w1=min(h_from_w1(w1_given_z(table, z).value) for z in (0, 1)),
        h_bob_certified_w2=min(h_from_w2(w2_given_z(table, z).value) for z in (0, 1)),
        h_charlie_certified=h_from_w1(w1(table, pair="ac").value),
    )
