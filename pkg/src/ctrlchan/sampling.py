"""Seeded random generators for states, unitaries, channels, environment
vectors and admissible interference matrices.

Used by the property-test suites and by the randomised reproduction cases of
the CLI; every function takes an explicit ``numpy.random.Generator``.
"""

from __future__ import annotations

import numpy as np

from .channels import Channel, choi_of
from .implementations import ChannelImplementation
from .linalg import hermitian_eig, unvec


def _complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed isometry with orthonormal columns (rows >= cols)."""
    if rows < cols:
        raise ValueError(f"need rows >= cols, got {rows} x {cols}")
    g = _complex_gaussian((rows, cols), rng)
    q, r = np.linalg.qr(g)
    diag = np.diag(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return q * phases.conj()


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return haar_isometry(d, d, rng)


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    v = _complex_gaussian(d, rng)
    return v / np.linalg.norm(v)


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random mixed state from a Gaussian purification of the given rank."""
    r = d if rank is None else rank
    g = _complex_gaussian((d, r), rng)
    m = g @ g.conj().T
    return m / np.trace(m)


def random_channel(d: int, kraus_count: int, rng: np.random.Generator) -> Channel:
    """Uniform CPTP map: a Haar isometry d -> d*k sliced into k Kraus blocks."""
    v = haar_isometry(d * kraus_count, d, rng)
    return Channel(tuple(v[i * d:(i + 1) * d, :] for i in range(kraus_count)))


def random_env(n: int, rng: np.random.Generator, norm: float | None = None) -> np.ndarray:
    """Random environment amplitude vector with <e|e> <= 1.

    ``norm`` pins the vector norm exactly; by default the squared norm is
    drawn uniformly from [0, 1).
    """
    v = _complex_gaussian(n, rng)
    v /= np.linalg.norm(v)
    if norm is None:
        norm = float(np.sqrt(rng.uniform(0.0, 1.0)))
    if not 0.0 <= norm <= 1.0:
        raise ValueError(f"norm must lie in [0, 1], got {norm}")
    return v * norm


def random_implementation(
    d: int, kraus_count: int, rng: np.random.Generator, env_norm: float | None = None
) -> ChannelImplementation:
    ch = random_channel(d, kraus_count, rng)
    return ChannelImplementation(ch, random_env(kraus_count, rng, env_norm))


def random_admissible_t(
    ch: Channel, rng: np.random.Generator, rank_tol: float = 1e-12
) -> np.ndarray:
    """Random interference matrix satisfying the dilation constraint.

    Draws Gaussian coefficients on the range of the Choi matrix, then scales
    so the quadratic form <<T|C^+|T>> lands uniformly in [0, 1).
    """
    c = choi_of(ch)
    w, v = hermitian_eig(c)
    keep = w > rank_tol * max(float(w[0]), 0.0)
    lam = w[keep]
    vecs = v[:, keep]
    coeff = _complex_gaussian(lam.size, rng)
    qform = float(np.sum(np.abs(coeff) ** 2 / lam))
    target = rng.uniform(0.0, 1.0)
    coeff *= np.sqrt(target / qform)
    tvec = vecs @ coeff
    return unvec(tvec, ch.dim, ch.dim)


def random_depolarising_t(
    d: int, rng: np.random.Generator, hs_norm_sq: float | None = None
) -> np.ndarray:
    """Random matrix with Tr[T^dag T] = hs_norm_sq (default uniform in (0, 1/d])."""
    g = _complex_gaussian((d, d), rng)
    g /= np.linalg.norm(g)
    if hs_norm_sq is None:
        hs_norm_sq = rng.uniform(0.0, 1.0 / d)
    return g * np.sqrt(hs_norm_sq)
