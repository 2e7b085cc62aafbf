"""Joint control-target outputs for channel pairs under a quantum control.

Three global maps are provided, all returning the (2d x 2d) joint state of
the control qubit and the target in 2 x 2 block form:

* :func:`controlled_output` routes the target through one of two channel
  boxes in superposition.  The diagonal blocks are the individual channel
  outputs; the off-diagonal (interference) blocks are governed by the
  transformation matrices of the two implementations, so the result depends
  on *how* each channel is realised, not just on the CPTP maps.
* :func:`classical_control` is the decohered baseline: a statistical mixture
  of the two arms, with no interference blocks.
* :func:`switch_output` applies the two channels in an order entangled with
  the control.  Its output depends only on the CPTP maps; remixing the Kraus
  lists leaves it invariant.

:func:`stinespring_oracle` recomputes the controlled output by brute force,
evolving an explicit control x target x environments pure state and tracing
the environments out.  It exists to cross-check the closed-form blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channels import Channel, apply
from .implementations import ChannelImplementation, transformation_matrix
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    dagger,
    hermitian_eig,
    is_hermitian,
    readonly,
    validate_density_matrix,
)


@dataclass(frozen=True)
class ControlState:
    """Pure control-qubit state a|0> + b|1>, normalised within tolerance."""

    a: complex
    b: complex

    def __post_init__(self):
        a = complex(self.a)
        b = complex(self.b)
        norm_sq = abs(a) ** 2 + abs(b) ** 2
        if abs(norm_sq - 1.0) > DEFAULT_TOL:
            raise ValueError(f"control amplitudes have squared norm {norm_sq:.6g}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def plus(cls) -> "ControlState":
        return cls(1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0))

    @classmethod
    def basis(cls, index: int) -> "ControlState":
        if index not in (0, 1):
            raise ValueError(f"control basis index must be 0 or 1, got {index}")
        return cls(1.0 - index, index)


@dataclass(frozen=True, eq=False)
class ControlledOutput:
    """Joint control-target density matrix with named d x d block views."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        n = m.shape[0]
        if m.shape[0] != m.shape[1] or n % 2 != 0:
            raise ValueError(f"joint output must be square with even side, got {m.shape}")
        if not is_hermitian(m, DEFAULT_TOL):
            raise ValueError("joint output is not Hermitian within tolerance")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > DEFAULT_TOL:
            raise ValueError(f"joint output has trace {tr:.6g}, expected 1")
        w = np.linalg.eigvalsh(m)
        if float(w[0]) < -DEFAULT_TOL:
            raise ValueError(f"joint output has a negative eigenvalue {w[0]:.3e}")
        object.__setattr__(self, "matrix", readonly(m))

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def diag0(self) -> np.ndarray:
        d = self.target_dim
        return self.matrix[:d, :d]

    @property
    def diag1(self) -> np.ndarray:
        d = self.target_dim
        return self.matrix[d:, d:]

    @property
    def offdiag01(self) -> np.ndarray:
        d = self.target_dim
        return self.matrix[:d, d:]

    @property
    def offdiag10(self) -> np.ndarray:
        d = self.target_dim
        return self.matrix[d:, :d]


def _common_dim(i0: ChannelImplementation, i1: ChannelImplementation) -> int:
    if i0.dim != i1.dim:
        raise ValueError(
            f"implementations act on different dimensions: {i0.dim} vs {i1.dim}"
        )
    return i0.dim


def controlled_map(
    i0: ChannelImplementation,
    i1: ChannelImplementation,
    control: ControlState,
) -> Callable[[np.ndarray], np.ndarray]:
    """Linear map rho -> joint output matrix, as a plain function.

    The returned function evaluates the block form

        [[ |a|^2 C0(rho),        a b* T0 rho T1^dag ],
         [ a* b T1 rho T0^dag,   |b|^2 C1(rho)      ]]

    and accepts arbitrary square matrices: it is linear in rho, so it can be
    applied to operator blocks as well as to density matrices.
    """
    d = _common_dim(i0, i1)
    t0 = transformation_matrix(i0)
    t1 = transformation_matrix(i1)
    t1_dag = dagger(t1)
    t0_dag = dagger(t0)
    a, b = control.a, control.b
    w0 = abs(a) ** 2
    w1 = abs(b) ** 2
    cross = a * np.conj(b)

    def output(rho) -> np.ndarray:
        rho = as_matrix(rho)
        if rho.shape != (d, d):
            raise ValueError(f"input of shape {rho.shape} does not match dimension {d}")
        return np.block([
            [w0 * apply(i0.channel, rho, validate=False), cross * (t0 @ rho @ t1_dag)],
            [np.conj(cross) * (t1 @ rho @ t0_dag), w1 * apply(i1.channel, rho, validate=False)],
        ])

    return output


def controlled_output(
    i0: ChannelImplementation,
    i1: ChannelImplementation,
    control: ControlState,
    rho,
) -> ControlledOutput:
    """Coherently control between two channel implementations on input ``rho``."""
    rho = validate_density_matrix(rho)
    return ControlledOutput(controlled_map(i0, i1, control)(rho))


def _embedded_env(env: np.ndarray) -> np.ndarray:
    """Environment state on a register one slot larger than the dilation basis.

    Slot 0 carries the part of the initial state outside the span of the
    dilation basis states, so subnormalised amplitude vectors embed exactly.
    """
    weight = float(np.sum(np.abs(env) ** 2))
    rest = np.sqrt(max(1.0 - weight, 0.0))
    return np.concatenate(([rest], env))


def stinespring_oracle(
    i0: ChannelImplementation,
    i1: ChannelImplementation,
    control: ControlState,
    rho,
) -> ControlledOutput:
    """Reference computation of the controlled output via explicit dilation.

    For each eigenvector of ``rho``, the joint pure state over
    control x target x env0 x env1 is built directly: the |0> branch applies
    the Kraus operators of the first channel while the second environment
    stays in its initial state, and vice versa.  Both environments are then
    traced out and the results mixed with the eigenvalues of ``rho``.
    """
    d = _common_dim(i0, i1)
    rho = validate_density_matrix(rho)
    if rho.shape != (d, d):
        raise ValueError(f"input of shape {rho.shape} does not match dimension {d}")
    kraus0 = i0.channel.kraus
    kraus1 = i1.channel.kraus
    e0 = _embedded_env(i0.env)
    e1 = _embedded_env(i1.env)
    n0 = len(kraus0) + 1
    n1 = len(kraus1) + 1
    w, vecs = hermitian_eig(rho)
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    for idx in range(w.size):
        lam = float(w[idx])
        if lam < 1e-12:
            continue
        psi = vecs[:, idx]
        amp = np.zeros((2, d, n0, n1), dtype=complex)
        for i, k in enumerate(kraus0):
            amp[0, :, i + 1, :] += control.a * np.outer(k @ psi, e1)
        for j, l in enumerate(kraus1):
            amp[1, :, :, j + 1] += control.b * np.outer(l @ psi, e0)
        joint = amp.reshape(2 * d, n0 * n1)
        out += lam * (joint @ joint.conj().T)
    return ControlledOutput(out)


def classical_map(
    i0: ChannelImplementation,
    i1: ChannelImplementation,
    weights: tuple[float, float],
) -> Callable[[np.ndarray], np.ndarray]:
    """Linear map for the decohered-control mixture of the two arms."""
    d = _common_dim(i0, i1)
    w0, w1 = float(weights[0]), float(weights[1])
    if w0 < -DEFAULT_TOL or w1 < -DEFAULT_TOL or abs(w0 + w1 - 1.0) > DEFAULT_TOL:
        raise ValueError(f"weights must be nonnegative and sum to 1, got {weights}")

    def output(rho) -> np.ndarray:
        rho = as_matrix(rho)
        if rho.shape != (d, d):
            raise ValueError(f"input of shape {rho.shape} does not match dimension {d}")
        out = np.zeros((2 * d, 2 * d), dtype=complex)
        out[:d, :d] = w0 * apply(i0.channel, rho, validate=False)
        out[d:, d:] = w1 * apply(i1.channel, rho, validate=False)
        return out

    return output


def classical_control(
    i0: ChannelImplementation,
    i1: ChannelImplementation,
    weights: tuple[float, float],
    rho,
) -> ControlledOutput:
    """Classically control between the two arms: w0 |0><0| (x) C0(rho) + w1 |1><1| (x) C1(rho).

    Equivalently, the coherently controlled output with the interference
    blocks zeroed; no implementation dependence survives.
    """
    rho = validate_density_matrix(rho)
    return ControlledOutput(classical_map(i0, i1, weights)(rho))


def switch_map(
    ch0: Channel,
    ch1: Channel,
    control: ControlState,
) -> Callable[[np.ndarray], np.ndarray]:
    """Linear map for the order superposition of two channels.

    Blocks, with {K_i} and {L_j} the Kraus lists of the two channels:

        diag:      |a|^2 C1(C0(rho))            |b|^2 C0(C1(rho))
        offdiag:   a b* sum_ij L_j K_i rho L_j^dag K_i^dag    (and h.c.)

    The off-diagonal sums are invariant under remixing either Kraus list, so
    the map depends only on the two CPTP maps.
    """
    if ch0.dim != ch1.dim:
        raise ValueError(f"channels act on different dimensions: {ch0.dim} vs {ch1.dim}")
    d = ch0.dim
    a, b = control.a, control.b
    cross = a * np.conj(b)
    kraus0 = ch0.kraus
    kraus1 = ch1.kraus
    kraus0_dag = tuple(dagger(k) for k in kraus0)
    kraus1_dag = tuple(dagger(l) for l in kraus1)

    def output(rho) -> np.ndarray:
        rho = as_matrix(rho)
        if rho.shape != (d, d):
            raise ValueError(f"input of shape {rho.shape} does not match dimension {d}")
        d00 = abs(a) ** 2 * apply(ch1, apply(ch0, rho, validate=False), validate=False)
        d11 = abs(b) ** 2 * apply(ch0, apply(ch1, rho, validate=False), validate=False)
        off01 = np.zeros((d, d), dtype=complex)
        off10 = np.zeros((d, d), dtype=complex)
        for i, k in enumerate(kraus0):
            for j, l in enumerate(kraus1):
                off01 += l @ k @ rho @ kraus1_dag[j] @ kraus0_dag[i]
                off10 += k @ l @ rho @ kraus0_dag[i] @ kraus1_dag[j]
        return np.block([
            [d00, cross * off01],
            [np.conj(cross) * off10, d11],
        ])

    return output


def switch_output(ch0: Channel, ch1: Channel, control: ControlState, rho) -> ControlledOutput:
    """Send ``rho`` through the two channels in a controlled order superposition."""
    rho = validate_density_matrix(rho)
    return ControlledOutput(switch_map(ch0, ch1, control)(rho))
