"""Entropies and the communication figures of merit.

All entropies are in bits.  The two map-based quantities take the global map
as a plain function on matrices (see :func:`ctrlchan.control.controlled_map`
and friends), so they work uniformly for controlled pairs, the switch, the
classical baseline, or any bare channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channels import standard_channel
from .control import ControlState, switch_map
from .linalg import DEFAULT_TOL, partial_trace, readonly, validate_density_matrix

_ENTROPY_CLAMP = 1e-12


def shannon_entropy(probs) -> float:
    """-sum p log2 p with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float)
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def entropy(rho, tol: float = DEFAULT_TOL) -> float:
    """Von Neumann entropy of a density matrix, in bits.

    Eigenvalues in (-1e-12, 0) are clamped to zero; anything more negative is
    rejected as an invalid state.
    """
    rho = validate_density_matrix(rho, tol)
    w = np.linalg.eigvalsh(rho)
    if float(w[0]) < -_ENTROPY_CLAMP:
        raise ValueError(f"eigenvalue {w[0]:.3e} below the clamping window")
    return shannon_entropy(np.clip(w, 0.0, None))


def binary_entropy(p: float) -> float:
    """H2(p) = -p log2 p - (1-p) log2 (1-p) on [0, 1]."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return shannon_entropy([p, 1.0 - p])


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted list of input states: probabilities and density matrices."""

    items: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        if not self.items:
            raise ValueError("ensemble must contain at least one state")
        frozen = []
        total = 0.0
        dim = None
        for idx, (p, rho) in enumerate(self.items):
            p = float(p)
            if p < -DEFAULT_TOL:
                raise ValueError(f"items[{idx}] has negative probability {p}")
            rho = validate_density_matrix(rho)
            if dim is None:
                dim = rho.shape[0]
            elif rho.shape[0] != dim:
                raise ValueError(
                    f"items[{idx}] has dimension {rho.shape[0]}, expected {dim}"
                )
            total += p
            frozen.append((p, readonly(rho)))
        if abs(total - 1.0) > DEFAULT_TOL:
            raise ValueError(f"probabilities sum to {total:.6g}, expected 1")
        object.__setattr__(self, "items", tuple(frozen))

    @property
    def dim(self) -> int:
        return self.items[0][1].shape[0]


def holevo_lower_bound(output_map: Callable[[np.ndarray], np.ndarray], ensemble: Ensemble) -> float:
    """Mutual information of the flagged ensemble-output state.

    On the classical-quantum state sum_a p_a |a><a| (x) M(rho_a) the mutual
    information between flag and output reduces to the ensemble quantity
    S(sum_a p_a M(rho_a)) - sum_a p_a S(M(rho_a)), which is computed blockwise
    here.  It lower-bounds the Holevo information of the map.
    """
    outputs = [output_map(rho) for _, rho in ensemble.items]
    shape = outputs[0].shape
    for out in outputs[1:]:
        if out.shape != shape:
            raise ValueError("map produced outputs of differing dimensions")
    average = np.zeros(shape, dtype=complex)
    conditional = 0.0
    for (p, _), out in zip(ensemble.items, outputs):
        average += p * out
        if p > 0.0:
            conditional += p * entropy(out)
    return entropy(average) - conditional


def coherent_info_bound(output_map: Callable[[np.ndarray], np.ndarray], input_bipartite) -> float:
    """H(B) - H(AB) for the state (Id (x) M)(input), a quantum-capacity bound.

    The input must be a density matrix on reference (x) target with the two
    factors of equal dimension; the map is applied to the target factor block
    by block (it must be linear).  The result may be negative.
    """
    nu0 = validate_density_matrix(input_bipartite)
    n = nu0.shape[0]
    d = math.isqrt(n)
    if d * d != n:
        raise ValueError(
            f"bipartite input of side {n} does not split into equal factors"
        )
    blocks = nu0.reshape(d, d, d, d)
    mapped = [[output_map(np.ascontiguousarray(blocks[m, :, k, :])) for k in range(d)] for m in range(d)]
    d_out = mapped[0][0].shape[0]
    nu = np.zeros((d * d_out, d * d_out), dtype=complex)
    for m in range(d):
        for k in range(d):
            nu[m * d_out:(m + 1) * d_out, k * d_out:(k + 1) * d_out] = mapped[m][k]
    h_joint = entropy(nu)
    h_out = entropy(partial_trace(nu, d, d_out, keep="second"))
    return h_out - h_joint


def switch_holevo_qubit() -> float:
    """Exact ensemble information of the maximally noisy qubit pair in an
    order superposition with a balanced control: -3/8 - (5/8) log2(5/8)."""
    return -3.0 / 8.0 - (5.0 / 8.0) * np.log2(5.0 / 8.0)


def cc_dephasing_bound(p: float) -> float:
    """Closed-form coherent-information bound p - H2(p) + H2((1-p)/2).

    This is the value reached by the coherently controlled phase-flip and
    bit-flip pair with transformation matrices sqrt(p) sigma_z and
    sqrt(p) sigma_x on a maximally entangled input; it is positive for all p.
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return p - binary_entropy(p) + binary_entropy((1.0 - p) / 2.0)


def switch_holevo_qubit_gridsearch(
    angle_step: float = np.pi / 60.0,
    prob_step: float = 0.05,
) -> tuple[float, tuple[float, float, float]]:
    """Coarse maximisation of the two-state ensemble information through the
    depolarising qubit switch.

    Candidate states are restricted to the x-z plane of the Bloch sphere:
    the switch map commutes with any joint unitary rotation of the ensemble,
    and two pure qubit states can always be rotated into that plane, so the
    restriction loses nothing.  Returns (best value, (theta0, theta1, p0)).
    """
    ch = standard_channel("depolarising", 2)
    out_map = switch_map(ch, ch, ControlState.plus())

    thetas = np.arange(0.0, np.pi + angle_step / 2.0, angle_step)
    states = [
        np.array([np.cos(th / 2.0), np.sin(th / 2.0)], dtype=complex)
        for th in thetas
    ]
    outputs = [out_map(np.outer(s, s.conj())) for s in states]
    entropies = [entropy(out) for out in outputs]
    probs = np.arange(prob_step, 1.0, prob_step)

    best = -np.inf
    best_point = (0.0, 0.0, 0.0)
    for idx0 in range(len(thetas)):
        for idx1 in range(idx0, len(thetas)):
            for p0 in probs:
                avg = p0 * outputs[idx0] + (1.0 - p0) * outputs[idx1]
                value = entropy(avg) - p0 * entropies[idx0] - (1.0 - p0) * entropies[idx1]
                if value > best:
                    best = value
                    best_point = (float(thetas[idx0]), float(thetas[idx1]), float(p0))
    return float(best), best_point
