"""Distinguishing two implementations of the same channel.

One interferometer arm carries a fixed implementation; the other carries one
of two dilations of the *same* CPTP map that differ in their transformation
matrices T and T'.  The resulting joint outputs differ only in their
interference blocks, which makes the distance between them computable in
closed form and bounded by the spectral norm of tau = T - T'.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import choi_of
from .control import ControlState, controlled_output
from .implementations import ChannelImplementation, transformation_matrix
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    dagger,
    hermitian_eig,
    spectral_norm,
    trace_norm,
    validate_density_matrix,
)


@dataclass(frozen=True, eq=False)
class DiscriminationInstance:
    """A fixed reference arm and two candidate dilations of one channel."""

    fixed: ChannelImplementation
    candidate_a: ChannelImplementation
    candidate_b: ChannelImplementation

    def __post_init__(self):
        d = self.fixed.dim
        if self.candidate_a.dim != d or self.candidate_b.dim != d:
            raise ValueError("all implementations must share the target dimension")
        dev = float(np.max(np.abs(
            choi_of(self.candidate_a.channel) - choi_of(self.candidate_b.channel)
        )))
        if dev > DEFAULT_TOL:
            raise ValueError(
                f"candidates implement different channels: Choi deviation {dev:.3e}"
            )


def trace_distance(rho, sigma) -> float:
    """(1/2) || rho - sigma ||_1 between two density matrices."""
    rho = validate_density_matrix(rho)
    sigma = validate_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(f"shape mismatch: {rho.shape} vs {sigma.shape}")
    return 0.5 * trace_norm(rho - sigma)


def output_distance(
    inst: DiscriminationInstance,
    control: ControlState,
    rho,
    *,
    agree_tol: float = 1e-10,
) -> float:
    """Trace distance between the two joint outputs on input ``rho``.

    Computed twice: directly on the two controlled outputs, and through the
    closed form |a b| * || tau rho T0^dag ||_1 with tau the difference of the
    candidate transformation matrices.  The two routes must agree within
    ``agree_tol``; the direct value is returned.
    """
    rho = validate_density_matrix(rho)
    out_a = controlled_output(inst.fixed, inst.candidate_a, control, rho)
    out_b = controlled_output(inst.fixed, inst.candidate_b, control, rho)
    direct = 0.5 * trace_norm(out_a.matrix - out_b.matrix)

    t0 = transformation_matrix(inst.fixed)
    tau = transformation_matrix(inst.candidate_a) - transformation_matrix(inst.candidate_b)
    closed = abs(control.a * np.conj(control.b)) * trace_norm(tau @ rho @ dagger(t0))
    if abs(direct - closed) > agree_tol:
        raise ValueError(
            f"closed form {closed:.12g} and direct distance {direct:.12g} disagree"
        )
    return direct


def diamond_bound(t1, t1p) -> float:
    """(1/2) || T - T' ||_2, an upper bound on the distance between the two
    global channels in the worst case over inputs and reference systems."""
    t1 = as_matrix(t1)
    t1p = as_matrix(t1p)
    if t1.shape != t1p.shape:
        raise ValueError(f"shape mismatch: {t1.shape} vs {t1p.shape}")
    return 0.5 * spectral_norm(t1 - t1p)


def optimal_input(t1, t1p, degeneracy_tol: float = 1e-10) -> np.ndarray:
    """Pure input maximising <psi| tau^dag tau |psi> with tau = T - T'.

    With a transparent reference arm (identity channel, T0 = 1) this input
    saturates :func:`diamond_bound`.  When the top eigenvalue is degenerate
    the result is made deterministic: project the lowest-index basis vector
    with nonzero overlap onto the top eigenspace, which also fixes the phase
    (that component comes out real positive).
    """
    t1 = as_matrix(t1)
    t1p = as_matrix(t1p)
    if t1.shape != t1p.shape:
        raise ValueError(f"shape mismatch: {t1.shape} vs {t1p.shape}")
    tau = t1 - t1p
    if float(np.max(np.abs(tau))) == 0.0:
        raise ValueError("transformation matrices are identical")
    gram = dagger(tau) @ tau
    w, v = hermitian_eig(gram)
    top = w >= w[0] - degeneracy_tol * max(float(w[0]), 1.0)
    vtop = v[:, top]
    proj = vtop @ vtop.conj().T
    for k in range(proj.shape[0]):
        column = proj[:, k]
        weight = float(np.linalg.norm(column))
        if weight > 1e-6:
            return column / weight
    raise RuntimeError("projector onto the top eigenspace is numerically zero")


def success_probability(distance: float) -> float:
    """Best probability of telling two equiprobable outputs apart: (1 + D)/2."""
    distance = float(distance)
    if distance < -1e-12 or distance > 1.0 + 1e-12:
        raise ValueError(f"distance must lie in [0, 1], got {distance}")
    return 0.5 * (1.0 + min(max(distance, 0.0), 1.0))


def max_depolarising_distance(d: int) -> float:
    """Largest reachable diamond bound for two dilations of the maximally
    noisy channel in dimension d: 1/sqrt(d).

    Both transformation matrices satisfy Tr[T^dag T] <= 1/d, and the
    Hilbert-Schmidt norm dominates the spectral norm, so no admissible pair
    exceeds this value; the pair +/- (1/sqrt(d)) |0><0| attains it.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d}")
    return 1.0 / np.sqrt(float(d))
