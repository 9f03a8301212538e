"""Prepare-and-measure scenarios and their exact outcome statistics.

A `Scenario` bundles the four sender preparations (Bloch vectors indexed by
the two-bit input ``x``), Bob's two projective axes (input ``y``), Charlie's
two interaction axes (input ``z``), the ancilla readout axis, and the prior
over ``z``. `build_table` turns a scenario plus a coupling angle into the
full conditional distribution p(b, c | x, y, z).

Index conventions:

* ``x`` in 0..3 encodes the bit pair (x1, x2) as ``x = 2*x1 + x2``.
* ``y``, ``z`` in {0, 1}.
* outcome index 0 is the classical bit +1 (projector along the +axis),
  outcome index 1 is -1.

Probabilities are always computed from the exact interaction channel;
`p_bob_plus_closed_form` and `p_charlie_plus_closed_form` provide the
independent Bloch-algebra route used by the verification suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import channel
from .qubit import NORM_TOL, bloch_to_density, partial_trace, projector

__all__ = [
    "OUTCOMES",
    "Scenario",
    "ProbTable",
    "InvalidScenarioError",
    "canonical_w1_scenario",
    "canonical_w2_scenario",
    "p_joint",
    "p_bob",
    "p_bob_given_z",
    "p_charlie",
    "build_table",
    "p_bob_plus_closed_form",
    "p_charlie_plus_closed_form",
]

#: Classical outcome labels in storage order.
OUTCOMES = (1, -1)

#: Probability sums must match 1 within this much.
PROB_TOL = 1e-12


class InvalidScenarioError(ValueError):
    """Raised when a scenario configuration violates its invariants."""


def _as_locked(a, shape, name: str) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.shape != shape:
        raise InvalidScenarioError(f"{name} must have shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Scenario:
    """One full configuration of the three-observer experiment.

    Immutable; all vector fields are stored as write-locked float arrays.
    """

    preparations: np.ndarray  # (4, 3) Bloch vectors, one per input x
    bob_axes: np.ndarray  # (2, 3) unit axes, one per input y
    charlie_axes: np.ndarray  # (2, 3) unit interaction axes, one per input z
    ancilla_axis: np.ndarray  # (3,) unit readout axis for the ancilla
    z_prior: np.ndarray = field(default=(0.5, 0.5))  # p(z=0), p(z=1)

    def __post_init__(self):
        object.__setattr__(self, "preparations", _as_locked(self.preparations, (4, 3), "preparations"))
        object.__setattr__(self, "bob_axes", _as_locked(self.bob_axes, (2, 3), "bob_axes"))
        object.__setattr__(self, "charlie_axes", _as_locked(self.charlie_axes, (2, 3), "charlie_axes"))
        object.__setattr__(self, "ancilla_axis", _as_locked(self.ancilla_axis, (3,), "ancilla_axis"))
        object.__setattr__(self, "z_prior", _as_locked(self.z_prior, (2,), "z_prior"))
        for i, r in enumerate(self.preparations):
            if np.linalg.norm(r) > 1.0 + NORM_TOL:
                raise InvalidScenarioError(f"preparation {i} has Bloch norm {np.linalg.norm(r)} > 1")
        for name, axes in (("bob_axes", self.bob_axes), ("charlie_axes", self.charlie_axes)):
            for i, a in enumerate(axes):
                if abs(np.linalg.norm(a) - 1.0) > NORM_TOL:
                    raise InvalidScenarioError(f"{name}[{i}] is not a unit vector")
        if abs(np.linalg.norm(self.ancilla_axis) - 1.0) > NORM_TOL:
            raise InvalidScenarioError("ancilla_axis is not a unit vector")
        if np.any(self.z_prior < 0.0) or abs(self.z_prior.sum() - 1.0) > PROB_TOL:
            raise InvalidScenarioError(f"z_prior {self.z_prior} is not a probability pair")

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        """Plain nested-list form; floats survive a JSON round trip exactly."""
        return {
            "preparations": self.preparations.tolist(),
            "bob_axes": self.bob_axes.tolist(),
            "charlie_axes": self.charlie_axes.tolist(),
            "ancilla_axis": self.ancilla_axis.tolist(),
            "z_prior": self.z_prior.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            return cls(
                preparations=data["preparations"],
                bob_axes=data["bob_axes"],
                charlie_axes=data["charlie_axes"],
                ancilla_axis=data["ancilla_axis"],
                z_prior=data.get("z_prior", (0.5, 0.5)),
            )
        except KeyError as exc:
            raise InvalidScenarioError(f"scenario document is missing field {exc}") from exc

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "Scenario":
        return cls.from_dict(json.loads(Path(path).read_text()))


def canonical_w1_scenario() -> Scenario:
    """Settings that maximize the linear witness pair (W1AB, W1AC).

    Preparations are the four diagonal states ((-1)^x1, 0, (-1)^x2)/sqrt(2);
    both observers measure along the x and z axes of the Bloch sphere.
    """
    s = 1.0 / np.sqrt(2.0)
    preps = [[s * (-1) ** x1, 0.0, s * (-1) ** x2] for x1 in (0, 1) for x2 in (0, 1)]
    axes = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    return Scenario(
        preparations=preps,
        bob_axes=axes,
        charlie_axes=axes,
        ancilla_axis=[1.0, 0.0, 0.0],
    )


def canonical_w2_scenario() -> Scenario:
    """Settings that maximize the determinant witness pair (W2AB, W2AC).

    Preparations sit on the measurement axes themselves: +-z for x1 = 0 and
    +-x for x1 = 1.
    """
    preps = [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]
    axes = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]
    return Scenario(
        preparations=preps,
        bob_axes=axes,
        charlie_axes=axes,
        ancilla_axis=[1.0, 0.0, 0.0],
    )


# -- exact channel probabilities ----------------------------------------


def p_bob_given_z(s: Scenario, eps: float, x: int, y: int, z: int) -> np.ndarray:
    """Distribution of Bob's outcome for fixed z, from the marginal channel.

    Entry 0 is p(b = +1); entry 1 its complement, so the pair is exactly
    normalized.
    """
    rho = channel.bob_state(bloch_to_density(s.preparations[x]), s.charlie_axes[z], eps)
    p_plus = float(np.trace(projector(s.bob_axes[y]) @ rho).real)
    return np.array([p_plus, 1.0 - p_plus])


def p_bob(s: Scenario, eps: float, x: int, y: int) -> np.ndarray:
    """Bob's outcome distribution averaged over z with the scenario prior."""
    return s.z_prior[0] * p_bob_given_z(s, eps, x, y, 0) + s.z_prior[1] * p_bob_given_z(s, eps, x, y, 1)


def p_charlie(s: Scenario, eps: float, x: int, z: int) -> np.ndarray:
    """Distribution of Charlie's ancilla readout (independent of y)."""
    rho = channel.charlie_state(bloch_to_density(s.preparations[x]), s.charlie_axes[z], eps)
    p_plus = float(np.trace(projector(s.ancilla_axis) @ rho).real)
    return np.array([p_plus, 1.0 - p_plus])


def _joint_cell(rho_joint: np.ndarray, bob_axis, anc_axis) -> np.ndarray:
    """Joint (b, c) distribution for one measurement pair on a 4x4 state.

    The +1 row is obtained by direct projection; the -1 row is the
    remainder against the (y-independent) ancilla marginal. Subtracting
    twice makes the split exact in IEEE arithmetic (one of the two parts
    always lands in the Sterbenz range of the marginal), so summing out b
    reproduces Charlie's marginal bit for bit regardless of y.
    """
    rho_c = partial_trace(rho_joint, keep="ancilla")
    m_plus = float(np.trace(projector(anc_axis) @ rho_c).real)
    m_plus = min(max(m_plus, 0.0), 1.0)
    marg = (m_plus, 1.0 - m_plus)

    p_b = projector(bob_axis)
    out = np.empty((2, 2))
    for ic, c in enumerate(OUTCOMES):
        proj_pair = np.kron(p_b, projector(c * np.asarray(anc_axis)))
        top = float(np.trace(proj_pair @ rho_joint).real)
        top = min(max(top, 0.0), marg[ic])
        bottom = marg[ic] - top
        out[0, ic] = marg[ic] - bottom  # within 1 ulp of the traced value
        out[1, ic] = bottom
    return out


def p_joint(s: Scenario, eps: float, x: int, y: int, z: int) -> np.ndarray:
    """Joint distribution over (b, c) from the full 4x4 evolution.

    Returns a (2, 2) array indexed [b, c] with index 0 for outcome +1.
    """
    rho_joint = channel.evolve_joint(bloch_to_density(s.preparations[x]), s.charlie_axes[z], eps)
    return _joint_cell(rho_joint, s.bob_axes[y], s.ancilla_axis)


@dataclass(frozen=True)
class ProbTable:
    """The complete conditional distribution p(b, c | x, y, z).

    ``probs`` has shape (4, 2, 2, 2, 2) indexed [x, y, z, b, c] with
    outcome index 0 for +1. Immutable once built.
    """

    probs: np.ndarray
    scenario: Scenario
    eps: float

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.shape != (4, 2, 2, 2, 2):
            raise InvalidScenarioError(f"probability table must have shape (4,2,2,2,2), got {probs.shape}")
        if probs.min() < 0.0 or probs.max() > 1.0 + PROB_TOL:
            raise InvalidScenarioError("probability table entries outside [0, 1]")
        sums = probs.sum(axis=(3, 4))
        if np.abs(sums - 1.0).max() > PROB_TOL:
            raise InvalidScenarioError("probability table cells do not sum to 1")
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "eps", float(self.eps))

    def joint(self, x: int, y: int, z: int) -> np.ndarray:
        """The (2, 2) distribution over (b, c) for one input triple."""
        return self.probs[x, y, z]

    def bob_marginal_given_z(self, x: int, y: int, z: int) -> np.ndarray:
        """Bob's outcome distribution with z known."""
        return self.probs[x, y, z].sum(axis=1)

    def bob_marginal(self, x: int, y: int) -> np.ndarray:
        """Bob's outcome distribution averaged over z with the prior."""
        prior = self.scenario.z_prior
        return prior[0] * self.bob_marginal_given_z(x, y, 0) + prior[1] * self.bob_marginal_given_z(x, y, 1)

    def charlie_marginal(self, x: int, z: int) -> np.ndarray:
        """Charlie's outcome distribution (y-independent; stored at y = 0)."""
        return self.probs[x, 0, z].sum(axis=0)

    def p_bob_plus(self, x: int, y: int) -> float:
        return float(self.bob_marginal(x, y)[0])

    def p_bob_plus_given_z(self, x: int, y: int, z: int) -> float:
        return float(self.bob_marginal_given_z(x, y, z)[0])

    def p_charlie_plus(self, x: int, z: int) -> float:
        return float(self.charlie_marginal(x, z)[0])


def build_table(s: Scenario, eps: float) -> ProbTable:
    """Fill all 64 joint probabilities for one coupling angle."""
    probs = np.empty((4, 2, 2, 2, 2))
    for z in range(2):
        for x in range(4):
            rho_joint = channel.evolve_joint(bloch_to_density(s.preparations[x]), s.charlie_axes[z], eps)
            for y in range(2):
                probs[x, y, z] = _joint_cell(rho_joint, s.bob_axes[y], s.ancilla_axis)
    return ProbTable(probs=probs, scenario=s, eps=eps)


# -- independent Bloch-algebra route (verification oracle) ---------------


def p_bob_plus_closed_form(s: Scenario, eps: float, x: int, y: int, z: int) -> float:
    """p(b = +1 | x, y, z) by plain vector algebra.

    Bob's Bloch vector after the interaction is the partial dephasing
    ``cos(eps) r + (1 - cos(eps)) (r . w) w`` toward Charlie's axis w.
    """
    eps = channel.check_coupling(eps)
    r = s.preparations[x]
    w = s.charlie_axes[z]
    nu = s.bob_axes[y]
    ce = np.cos(eps)
    r_after = ce * r + (1.0 - ce) * float(r @ w) * w
    return 0.5 * (1.0 + float(nu @ r_after))


def p_charlie_plus_closed_form(s: Scenario, eps: float, x: int, z: int) -> float:
    """p(c = +1 | x, z) by plain vector algebra.

    The ancilla ends in a mixture of Bloch vectors (1, 0, 0) and
    (cos 2eps, -sin 2eps, 0), weighted by the overlap of the preparation
    with the two half-spaces of Charlie's axis.
    """
    eps = channel.check_coupling(eps)
    r = s.preparations[x]
    w = s.charlie_axes[z]
    q_minus = 0.5 * (1.0 - float(w @ r))
    anc = (1.0 - q_minus) * np.array([1.0, 0.0, 0.0]) + q_minus * np.array(
        [np.cos(2.0 * eps), -np.sin(2.0 * eps), 0.0]
    )
    return 0.5 * (1.0 + float(s.ancilla_axis @ anc))
