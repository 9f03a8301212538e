"""The weak-measurement interaction between the flying qubit and the ancilla.

Charlie couples the incoming qubit to a fresh ``|+>`` ancilla with a
controlled phase kick of strength ``eps`` (radians): nothing happens on the
half of the Bloch sphere aligned with his measurement axis, while the
antipodal component imprints a relative phase ``2*eps`` on the ancilla.
``eps = 0`` is no interaction; ``eps = pi/2`` fully dephases the system in
the chosen basis and maximally rotates the ancilla.

The exact marginal channels to Bob (`bob_state`) and Charlie
(`charlie_state`) agree with the partial traces of `evolve_joint` to
rounding error; this equality is exercised by the test suite.
"""

from __future__ import annotations

import numpy as np

from .qubit import IDENTITY, check_density, partial_trace, projector, tensor

__all__ = [
    "CouplingRangeError",
    "phase_kick",
    "controlled_kick",
    "evolve_joint",
    "bob_state",
    "charlie_state",
    "check_coupling",
    "PLUS_BLOCH",
]

#: Bloch vector of the ancilla's initial |+> state.
PLUS_BLOCH = np.array([1.0, 0.0, 0.0])
PLUS_BLOCH.setflags(write=False)


class CouplingRangeError(ValueError):
    """Raised when the coupling angle lies outside [0, pi]."""


def check_coupling(eps: float) -> float:
    """Validate the coupling angle; values outside [0, pi] are rejected."""
    eps = float(eps)
    if not 0.0 <= eps <= np.pi:
        raise CouplingRangeError(f"coupling angle {eps} outside [0, pi]")
    return eps


def phase_kick(eps: float) -> np.ndarray:
    """The conditional ancilla unitary ``diag(e^{i eps}, e^{-i eps})``."""
    eps = check_coupling(eps)
    return np.diag([np.exp(1j * eps), np.exp(-1j * eps)])


def controlled_kick(axis, eps: float) -> np.ndarray:
    """Total 4x4 unitary: identity on +axis, phase kick on -axis.

    ``U = P(+axis) x I + P(-axis) x phase_kick(eps)`` with the system slot
    first; assembled as ``I x I + P(-axis) x (phase_kick(eps) - I)`` so that
    zero coupling gives the exact identity. Unitary for every (axis, eps).
    """
    axis = np.asarray(axis, dtype=float)
    projector(axis)  # reject non-unit axes up front
    return tensor(IDENTITY, IDENTITY) + tensor(projector(-axis), phase_kick(eps) - IDENTITY)


def evolve_joint(rho, axis, eps: float) -> np.ndarray:
    """Joint system+ancilla state ``U (rho x |+><+|) U^dag``."""
    rho = check_density(rho, dim=2)
    u = controlled_kick(axis, eps)
    joint = tensor(rho, projector(PLUS_BLOCH))
    return u @ joint @ u.conj().T


def bob_state(rho, axis, eps: float) -> np.ndarray:
    """System state forwarded to Bob after the interaction.

    Equals ``Tr_ancilla evolve_joint(rho, axis, eps)``; implemented as the
    exact marginal channel, a partial dephasing toward ``axis``:
    ``(1 - cos eps)(P+ rho P+ + P- rho P-) + cos(eps) rho``.
    """
    rho = check_density(rho, dim=2)
    eps = check_coupling(eps)
    p_plus = projector(np.asarray(axis, dtype=float))
    p_minus = IDENTITY - p_plus
    ce = np.cos(eps)
    dephased = p_plus @ rho @ p_plus + p_minus @ rho @ p_minus
    return (1.0 - ce) * dephased + ce * rho


def charlie_state(rho, axis, eps: float) -> np.ndarray:
    """Ancilla state kept by Charlie after the interaction.

    Equals ``Tr_system evolve_joint(rho, axis, eps)``: a mixture of the
    untouched ``|+><+|`` and its phase-kicked image, weighted by the
    overlap of ``rho`` with the two half-spaces of ``axis``.
    """
    rho = check_density(rho, dim=2)
    p_minus = IDENTITY - projector(np.asarray(axis, dtype=float))
    weight_minus = float(np.trace(p_minus @ rho).real)
    plus = projector(PLUS_BLOCH)
    v = phase_kick(eps)
    return (1.0 - weight_minus) * plus + weight_minus * (v @ plus @ v.conj().T)


def bob_state_from_joint(rho, axis, eps: float) -> np.ndarray:
    """Bob's marginal via the 4x4 route; reference path for tests."""
    return partial_trace(evolve_joint(rho, axis, eps), keep="system")


def charlie_state_from_joint(rho, axis, eps: float) -> np.ndarray:
    """Charlie's marginal via the 4x4 route; reference path for tests."""
    return partial_trace(evolve_joint(rho, axis, eps), keep="ancilla")
