"""Eigen-solving and Krylov time propagation for sparse Hamiltonians."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .basis import RydbergBasis, StateDictionary, sector_overlap
from .hamiltonians import SparseOperator

DENSE_DIM_LIMIT = 4096


class SolverError(RuntimeError):
    pass


class ConvergenceError(SolverError):
    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


def normalize(psi: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    return psi / nrm


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None   # columns, aligned with eigenvalues
    residuals: np.ndarray


def _residuals(h: SparseOperator, vals, vecs) -> np.ndarray:
    return np.array(
        [np.linalg.norm(h.matrix @ vecs[:, k] - vals[k] * vecs[:, k]) for k in range(len(vals))]
    )


def dense_eigs(h: SparseOperator, k: int | None = None, vectors: bool = True) -> SpectrumResult:
    """Lowest-k eigenpairs by dense diagonalization (oracle backend)."""
    if h.dim > DENSE_DIM_LIMIT:
        raise SolverError(f"dimension {h.dim} exceeds the dense limit {DENSE_DIM_LIMIT}")
    if k is None:
        k = h.dim
    dense = h.to_dense()
    if vectors:
        vals, vecs = sla.eigh(dense)
        vals, vecs = vals[:k], vecs[:, :k]
        return SpectrumResult(vals, vecs, _residuals(h, vals, vecs))
    vals = sla.eigh(dense, eigvals_only=True)[:k]
    return SpectrumResult(vals, None, np.full(k, np.nan))


def lanczos_ground_state(
    h: SparseOperator,
    tol: float = 1e-10,
    max_iter: int = 2000,
    seed: int = 0,
) -> tuple[float, np.ndarray]:
    """Ground-state pair by Lanczos with full reorthogonalization.

    Deterministic for a given seed.  Raises :class:`ConvergenceError`
    carrying the best estimate if ``max_iter`` steps do not converge.
    """
    n = h.dim
    limit = min(max_iter, n)
    rng = np.random.default_rng(seed)
    # Start from the lowest-diagonal basis state (a good approximation when
    # off-diagonal couplings are weak) plus a small random component so every
    # symmetry sector is reachable.
    start = np.zeros(n)
    start[int(np.argmin(h.matrix.diagonal()))] = 1.0
    start += 1e-3 * rng.standard_normal(n) / np.sqrt(n)
    # grow the Krylov basis in chunks; most runs stop well before max_iter
    q = np.empty((min(limit + 1, 64), n))
    q[0] = normalize(start)
    alphas: list[float] = []
    betas: list[float] = []
    e_prev = np.inf
    for it in range(limit):
        if it + 1 >= q.shape[0]:
            grow = min(64, limit + 1 - q.shape[0])
            q = np.concatenate([q, np.empty((grow, n))])
        w = h.matrix @ q[it]
        alpha = float(q[it] @ w)
        alphas.append(alpha)
        w = w - alpha * q[it]
        if betas:
            w = w - betas[-1] * q[it - 1]
        # full reorthogonalization; repeat once if the norm dropped sharply
        # (the usual "twice is enough" criterion)
        span = q[: it + 1]
        norm_before = float(np.linalg.norm(w))
        w = w - span.T @ (span @ w)
        beta = float(np.linalg.norm(w))
        if beta < 0.5 * norm_before:
            w = w - span.T @ (span @ w)
            beta = float(np.linalg.norm(w))
        # only the lowest Ritz pair is needed; stebz is robust to the tight
        # eigenvalue clusters these Hamiltonians produce
        tri_vals, tri_vecs = sla.eigh_tridiagonal(
            alphas, betas, select="i", select_range=(0, 0), lapack_driver="stebz"
        )
        e0 = float(tri_vals[0])
        if beta < 1e-14:
            # invariant subspace: the Ritz value is exact
            return e0, normalize(span.T @ tri_vecs[:, 0])
        converged = abs(e0 - e_prev) <= tol * max(1.0, abs(e0))
        resid_est = beta * abs(tri_vecs[-1, 0])
        if converged and resid_est <= np.sqrt(tol) * max(1.0, abs(e0)):
            return e0, normalize(span.T @ tri_vecs[:, 0])
        e_prev = e0
        betas.append(beta)
        q[it + 1] = w / beta
    raise ConvergenceError(
        f"Lanczos did not converge in {max_iter} iterations", best_estimate=e_prev
    )


def ground_state(h: SparseOperator, seed: int = 0) -> tuple[float, np.ndarray]:
    """Dense below the oracle limit, Lanczos above it."""
    if h.dim <= DENSE_DIM_LIMIT:
        res = dense_eigs(h, k=1)
        return float(res.eigenvalues[0]), res.eigenvectors[:, 0]
    return lanczos_ground_state(h, seed=seed)


def krylov_step(h: SparseOperator, psi: np.ndarray, dt: float, m: int = 20) -> np.ndarray:
    """One step of exp(-i H dt) psi via an m-dimensional Lanczos projection."""
    n = h.dim
    m = min(m, n)
    v = np.empty((m, n), dtype=complex)
    v[0] = psi
    alphas = np.zeros(m)
    betas = np.zeros(max(m - 1, 0))
    size = m
    for j in range(m):
        w = h.matrix @ v[j]
        alphas[j] = float(np.real(np.vdot(v[j], w)))
        w = w - alphas[j] * v[j]
        if j > 0:
            w = w - betas[j - 1] * v[j - 1]
        for i in range(j + 1):  # reorthogonalize the short recurrence
            w = w - np.vdot(v[i], w) * v[i]
        if j == m - 1:
            break
        b = np.linalg.norm(w)
        if b < 1e-13:
            size = j + 1  # breakdown: the Krylov space closed early
            break
        betas[j] = b
        v[j + 1] = w / b
    tri = np.diag(alphas[:size]) + np.diag(betas[: size - 1], 1) + np.diag(betas[: size - 1], -1)
    small = sla.expm(-1j * dt * tri)
    return v[:size].T @ small[:, 0]


def krylov_evolve(
    h: SparseOperator,
    psi: np.ndarray,
    t_total: float,
    dt: float,
    m_krylov: int = 20,
):
    """Trajectory of exp(-i H t) psi sampled every ``dt``.

    Returns ``(times, states)`` with ``states[k]`` the state at
    ``times[k]``; ``states[0]`` is the (normalized) initial state.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    psi = normalize(np.asarray(psi, dtype=complex))
    n_steps = int(round(t_total / dt))
    times = np.arange(n_steps + 1) * dt
    states = np.empty((n_steps + 1, h.dim), dtype=complex)
    states[0] = psi
    for k in range(n_steps):
        states[k + 1] = krylov_step(h, states[k], dt, m_krylov)
    return times, states


def sector_eigenstates(
    h: SparseOperator,
    basis: RydbergBasis,
    dictionary: StateDictionary,
    k: int,
):
    """Low-lying eigenpairs annotated with spin-1-sector overlaps.

    Returns ``(spectrum, overlaps, band)`` where ``band`` indexes the k
    eigenstates of maximal sector overlap (sorted by energy).  A warning is
    emitted when no overlap exceeds 1/2 and the band is ambiguous.
    """
    import warnings

    res = dense_eigs(h)
    overlaps = np.array(
        [sector_overlap(res.eigenvectors[:, j], basis, dictionary) for j in range(h.dim)]
    )
    band = np.sort(np.argsort(-overlaps, kind="stable")[:k])
    if overlaps[band].max() < 0.5:
        warnings.warn("spin-1 band is ambiguous: all sector overlaps below 0.5")
    return res, overlaps, band
