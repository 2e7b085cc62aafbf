"""Dense complex linear algebra shared by every other module.

Operators are plain numpy arrays of dtype complex128.  Two conventions are
fixed here and relied on everywhere else:

* computational basis ``{|0>, ..., |d-1>}``, 0-indexed;
* tensor products put the first factor on the slowest index, so the first
  factor labels the blocks of the Kronecker product.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_TOL = 1e-9

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-D complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of ndim {arr.ndim}")
    return arr


def readonly(m) -> np.ndarray:
    """Copy to a complex array and mark it immutable."""
    arr = np.array(m, dtype=complex)
    arr.setflags(write=False)
    return arr


def ket(index: int, dim: int) -> np.ndarray:
    """Computational basis vector |index> in dimension ``dim``."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(vec) -> np.ndarray:
    """Rank-1 projector |v><v| for a state vector."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def tensor(a, b) -> np.ndarray:
    """Kronecker product; the first factor indexes the blocks."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dim_first: int, dim_second: int, keep: str = "first") -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``m`` must be square with side ``dim_first * dim_second``; ``keep``
    selects which factor survives.
    """
    m = as_matrix(m)
    n = dim_first * dim_second
    if m.shape != (n, n):
        raise ValueError(
            f"matrix of shape {m.shape} does not match dimensions "
            f"{dim_first} x {dim_second}"
        )
    blocks = m.reshape(dim_first, dim_second, dim_first, dim_second)
    if keep == "first":
        return np.einsum("abcb->ac", blocks)
    if keep == "second":
        return np.einsum("abad->bd", blocks)
    raise ValueError("keep must be 'first' or 'second'")


def choi_vec(t) -> np.ndarray:
    """Vectorize an operator as sum_m |m> (x) T|m>, input index slowest."""
    return as_matrix(t).T.flatten()


def unvec(v, dim_in: int | None = None, dim_out: int | None = None) -> np.ndarray:
    """Inverse of :func:`choi_vec`; dimensions inferred as square if omitted."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = v.size
    if dim_in is None and dim_out is None:
        d = math.isqrt(n)
        if d * d != n:
            raise ValueError(f"vector of length {n} is not square; pass dimensions")
        dim_in = dim_out = d
    elif dim_in is None:
        dim_in = n // dim_out
    elif dim_out is None:
        dim_out = n // dim_in
    if dim_in * dim_out != n:
        raise ValueError(f"dimensions {dim_in} x {dim_out} do not match length {n}")
    return v.reshape(dim_in, dim_out).T.copy()


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_isometry(u, tol: float = DEFAULT_TOL) -> bool:
    """True when the columns of ``u`` are orthonormal."""
    u = as_matrix(u)
    if u.shape[0] < u.shape[1]:
        return False
    gram = u.conj().T @ u
    return bool(np.max(np.abs(gram - np.eye(u.shape[1]))) <= tol)


def hermitian_eig(m, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues descending, orthonormal eigenvector columns).
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def pseudoinverse(m, rank_tol: float = 1e-12, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a Hermitian positive semidefinite matrix.

    Eigenvalues at or below ``rank_tol`` times the largest eigenvalue are
    treated as zero; a negative eigenvalue beyond ``tol`` is an error.
    """
    w, v = hermitian_eig(m, tol)
    wmax = float(w[0]) if w.size else 0.0
    if w.size and float(w[-1]) < -tol * max(wmax, 1.0):
        raise ValueError(f"matrix has a negative eigenvalue {w[-1]:.3e}")
    cutoff = rank_tol * max(wmax, 0.0)
    keep = w > cutoff
    if not np.any(keep):
        return np.zeros_like(as_matrix(m))
    vk = v[:, keep]
    return (vk / w[keep]) @ vk.conj().T


def trace_norm(m) -> float:
    """Sum of singular values."""
    return float(np.linalg.norm(as_matrix(m), "nuc"))


def spectral_norm(m) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(as_matrix(m), 2))


def hs_norm(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(as_matrix(m)))


def validate_density_matrix(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the coerced array."""
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not is_hermitian(rho, tol):
        raise ValueError("density matrix is not Hermitian within tolerance")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix has trace {tr:.6g}, expected 1")
    w = np.linalg.eigvalsh(rho)
    if float(w[0]) < -tol:
        raise ValueError(f"density matrix has a negative eigenvalue {w[0]:.3e}")
    return rho
