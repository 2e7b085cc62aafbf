"""Quantum channels as Kraus-operator lists, with Choi-matrix machinery.

A channel here is always a completely positive trace-preserving map on a
d-dimensional system, carried as a finite list of d x d Kraus operators
``{K_i}`` with ``sum_i K_i^dag K_i = 1``.  The Choi matrix lives on the
input (x) output index space with the input factor on the slow index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    SIGMA_X,
    SIGMA_Z,
    as_matrix,
    choi_vec,
    dagger,
    hermitian_eig,
    is_hermitian,
    is_isometry,
    partial_trace,
    readonly,
    unvec,
    validate_density_matrix,
)

STANDARD_KINDS = (
    "identity",
    "depolarising",
    "partial_depolarising",
    "phase_flip",
    "bit_flip",
    "unitary",
    "constant",
)


@dataclass(frozen=True, eq=False)
class Channel:
    """A CPTP map given by a non-empty tuple of equal-size Kraus operators."""

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.kraus)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for idx, k in enumerate(ops):
            if k.shape[0] != k.shape[1]:
                raise ValueError(f"kraus[{idx}] is not square: shape {k.shape}")
        d = ops[0].shape[0]
        for idx, k in enumerate(ops):
            if k.shape[0] != d:
                raise ValueError(
                    f"kraus[{idx}] has dimension {k.shape[0]}, expected {d}"
                )
        total = sum(dagger(k) @ k for k in ops)
        dev = float(np.max(np.abs(total - np.eye(d))))
        if dev > DEFAULT_TOL:
            raise ValueError(
                f"kraus operators are not trace-preserving: "
                f"max |sum K^dag K - 1| = {dev:.3e}"
            )
        object.__setattr__(self, "kraus", tuple(readonly(k) for k in ops))

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


def validate_channel(kraus) -> Channel:
    """Build a :class:`Channel` from a sequence of matrices, checking that all
    are square, equally sized, and jointly trace-preserving."""
    return Channel(tuple(kraus))


def apply(ch: Channel, rho, *, validate: bool = True) -> np.ndarray:
    """Send a state through the channel: rho -> sum_i K_i rho K_i^dag.

    With ``validate=False`` the input is used as-is, which extends the map
    linearly to arbitrary matrices (useful when acting on operator blocks).
    """
    rho = as_matrix(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise ValueError(f"state of shape {rho.shape} does not match dimension {ch.dim}")
    if validate:
        rho = validate_density_matrix(rho)
    out = np.zeros_like(rho)
    for k in ch.kraus:
        out += k @ rho @ dagger(k)
    return out


def choi_of(ch: Channel) -> np.ndarray:
    """Choi matrix C = sum_i |K_i>><<K_i| (positive semidefinite, d^2 x d^2)."""
    d = ch.dim
    c = np.zeros((d * d, d * d), dtype=complex)
    for k in ch.kraus:
        v = choi_vec(k)
        c += np.outer(v, v.conj())
    return c


def validate_choi(c, tol: float = DEFAULT_TOL) -> int:
    """Check the Choi-matrix invariants and return the system dimension.

    The matrix must be Hermitian positive semidefinite with its partial trace
    over the output factor equal to the identity on the input factor.
    """
    c = as_matrix(c)
    n = c.shape[0]
    if c.shape[0] != c.shape[1]:
        raise ValueError(f"Choi matrix must be square, got shape {c.shape}")
    d = math.isqrt(n)
    if d * d != n:
        raise ValueError(f"Choi matrix side {n} is not a perfect square")
    if not is_hermitian(c, tol):
        raise ValueError("Choi matrix is not Hermitian within tolerance")
    w = np.linalg.eigvalsh(c)
    if float(w[0]) < -tol:
        raise ValueError(f"Choi matrix has a negative eigenvalue {w[0]:.3e}")
    marginal = partial_trace(c, d, d, keep="first")
    dev = float(np.max(np.abs(marginal - np.eye(d))))
    if dev > tol:
        raise ValueError(
            f"Choi matrix input marginal deviates from identity by {dev:.3e}"
        )
    return d


def canonical_kraus(choi, rank_tol: float = 1e-12, tol: float = DEFAULT_TOL) -> Channel:
    """Kraus operators from the nonzero eigenpairs of a Choi matrix.

    Each operator is ``unvec(sqrt(lam_k) v_k)``; eigenvalues at or below
    ``rank_tol`` times the largest are dropped.
    """
    c = as_matrix(choi)
    d = validate_choi(c, tol)
    w, v = hermitian_eig(c, tol)
    cutoff = rank_tol * max(float(w[0]), 0.0)
    ops = [
        unvec(np.sqrt(lam) * v[:, k], d, d)
        for k, lam in enumerate(w)
        if lam > cutoff
    ]
    return Channel(tuple(ops))


def remix(ch: Channel, u, tol: float = DEFAULT_TOL) -> Channel:
    """Rewrite the Kraus list as K'_i = sum_r u_{ir} K_r.

    ``u`` must have orthonormal columns: a unitary, or a taller rectangular
    isometry to grow the list.  If ``u`` has more columns than there are Kraus
    operators, the list is first padded with zero operators.  The represented
    CPTP map is unchanged.
    """
    u = as_matrix(u)
    if not is_isometry(u, tol):
        raise ValueError("remix matrix must have orthonormal columns")
    n_new, n_old = u.shape
    ops = list(ch.kraus)
    if n_old < len(ops):
        raise ValueError(
            f"remix matrix has {n_old} columns but the channel has "
            f"{len(ops)} Kraus operators"
        )
    d = ch.dim
    while len(ops) < n_old:
        ops.append(np.zeros((d, d), dtype=complex))
    new_ops = []
    for i in range(n_new):
        acc = np.zeros((d, d), dtype=complex)
        for r in range(n_old):
            acc += u[i, r] * ops[r]
        new_ops.append(acc)
    return Channel(tuple(new_ops))


def weyl_basis(d: int) -> list[np.ndarray]:
    """The d^2 unitaries U_(a,b) = X^a Z^b, ordered by index i = a*d + b.

    X|k> = |k+1 mod d> and Z|k> = w^k |k> with w = exp(2 pi i / d); these
    satisfy Tr[U_i^dag U_j] = d delta_ij.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    x = np.zeros((d, d), dtype=complex)
    x[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    z = np.diag(omega ** np.arange(d))
    basis = []
    for a in range(d):
        xa = np.linalg.matrix_power(x, a)
        for b in range(d):
            basis.append(xa @ np.linalg.matrix_power(z, b))
    return basis


def _check_mixing_param(p, name: str) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def standard_channel(kind: str, d: int = 2, param=None) -> Channel:
    """Build one of the named channel families.

    kind:
        ``identity``; ``depolarising`` (maps everything to 1/d, Kraus
        ``{U_i/d}`` over the Weyl basis); ``partial_depolarising`` with
        ``param=q`` mixing identity (weight q) into the depolarising channel;
        ``phase_flip`` / ``bit_flip`` with ``param=p`` (qubit only);
        ``unitary`` with ``param`` the unitary matrix; ``constant`` with
        ``param`` the fixed output density matrix.
    """
    if kind == "identity":
        return Channel((np.eye(d, dtype=complex),))
    if kind == "depolarising":
        return Channel(tuple(u / d for u in weyl_basis(d)))
    if kind == "partial_depolarising":
        q = _check_mixing_param(param, "q")
        basis = weyl_basis(d)
        ops = [np.sqrt(d * d * q + 1.0 - q) / d * basis[0]]
        ops += [np.sqrt(1.0 - q) / d * u for u in basis[1:]]
        return Channel(tuple(ops))
    if kind in ("phase_flip", "bit_flip"):
        if d != 2:
            raise ValueError(f"{kind} channel is defined for qubits only")
        p = _check_mixing_param(param, "p")
        pauli = SIGMA_Z if kind == "phase_flip" else SIGMA_X
        return Channel((np.sqrt(1.0 - p) * np.eye(2, dtype=complex), np.sqrt(p) * pauli))
    if kind == "unitary":
        u = as_matrix(param)
        if u.shape != (d, d) or not is_isometry(u):
            raise ValueError(f"parameter must be a {d} x {d} unitary matrix")
        return Channel((u,))
    if kind == "constant":
        sigma = validate_density_matrix(as_matrix(param))
        if sigma.shape != (d, d):
            raise ValueError(
                f"constant output of shape {sigma.shape} does not match dimension {d}"
            )
        w, v = hermitian_eig(sigma)
        ops = []
        for j in range(d):
            if w[j] <= 1e-14:
                continue
            for m in range(d):
                k = np.zeros((d, d), dtype=complex)
                k[:, m] = np.sqrt(w[j]) * v[:, j]
                ops.append(k)
        return Channel(tuple(ops))
    raise ValueError(f"unknown channel kind '{kind}'; known kinds: {STANDARD_KINDS}")
