"""Thick-restart Lanczos with full reorthogonalization.

Computes the lowest eigenvalues (and optionally the ground-state vector) of
a sector Hamiltonian using only matrix-vector products.  The Krylov basis
is kept fully orthogonal; when the per-cycle basis fills up, the lowest
Ritz vectors are retained and the iteration continues from the last
residual direction.  Runs are deterministic for a fixed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .basis import SectorBasis
from .hamiltonian import HamiltonianOperator
from .lattice import LatticeSpec, build
from .tridiag import symm_eigh

_DENSE_CUTOFF = 24


class SolverError(RuntimeError):
    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(frozen=True)
class LanczosConfig:
    tol: float = 1e-12
    max_krylov: int = 300
    max_restarts: int = 50
    n_eigs: int = 2
    seed: int = 20240901
    degeneracy_tol: float = 1e-8
    # cap on the Krylov-basis workspace; above it the per-cycle basis
    # shrinks and convergence relies on restarts instead
    max_workspace_bytes: int = 2 * 2**30

    def __post_init__(self):
        if self.tol <= 0 or self.n_eigs < 1:
            raise ValueError("tol must be positive and n_eigs >= 1")
        if self.max_krylov <= 2 * self.n_eigs:
            raise ValueError("max_krylov must exceed 2 * n_eigs")


@dataclass
class GroundStateResult:
    energies: list
    residuals: list
    iterations: int
    sector: tuple  # (n_sites, n_up)
    degenerate: bool
    converged: bool = True
    vector: np.ndarray | None = None

    def as_dict(self):
        return {
            "energies": [float(e) for e in self.energies],
            "residuals": [float(r) for r in self.residuals],
            "iterations": self.iterations,
            "sector": list(self.sector),
            "degenerate": bool(self.degenerate),
            "converged": bool(self.converged),
        }


def _dense_lowest(op, cfg, want_vector):
    dim = op.dim
    a = np.zeros((dim, dim))
    e = np.zeros(dim)
    for c in range(dim):
        e[c] = 1.0
        a[:, c] = op.apply(e)
        e[c] = 0.0
    vals, vecs = symm_eigh(a)
    k = min(cfg.n_eigs, dim)
    residuals = [float(np.linalg.norm(a @ vecs[:, i] - vals[i] * vecs[:, i]))
                 for i in range(k)]
    degenerate = dim > 1 and k >= 2 and vals[1] - vals[0] < cfg.degeneracy_tol
    return GroundStateResult(
        energies=list(vals[:k]), residuals=residuals, iterations=dim,
        sector=(op.basis.n_sites, op.basis.n_up), degenerate=degenerate,
        vector=vecs[:, 0].copy() if want_vector else None)


def effective_krylov(dim: int, cfg: LanczosConfig) -> int:
    m = min(cfg.max_krylov, dim)
    cap = int(cfg.max_workspace_bytes // (8 * max(dim, 1))) - 1
    m = min(m, max(cap, 2 * cfg.n_eigs + 4))
    return max(m, min(dim, 2 * cfg.n_eigs + 2))


def lowest_eigs(op: HamiltonianOperator, cfg: LanczosConfig = LanczosConfig(),
                want_vector: bool = False) -> GroundStateResult:
    """Lowest ``cfg.n_eigs`` eigenvalues of ``op`` with certified residuals."""
    dim = op.dim
    if dim <= max(_DENSE_CUTOFF, 2 * cfg.n_eigs + 2):
        return _dense_lowest(op, cfg, want_vector)

    k = cfg.n_eigs
    m = effective_krylov(dim, cfg)
    rng = np.random.default_rng(cfg.seed)
    V = np.zeros((m + 1, dim))
    T = np.zeros((m, m))
    v0 = rng.standard_normal(dim)
    V[0] = v0 / np.linalg.norm(v0)
    ell = 0
    applies = 0
    best_residual = np.inf
    check_every = 10

    for cycle in range(cfg.max_restarts + 1):
        j = ell
        beta = 0.0
        while j < m:
            w = op.apply(V[j])
            applies += 1
            h = V[: j + 1] @ w
            w -= V[: j + 1].T @ h
            h2 = V[: j + 1] @ w
            w -= V[: j + 1].T @ h2
            T[: j + 1, j] = h + h2
            T[j, : j + 1] = T[: j + 1, j]
            beta = np.linalg.norm(w)
            if beta < 1e-13 * max(1.0, abs(T[j, j])):
                # invariant subspace hit; continue in a fresh direction
                w = rng.standard_normal(dim)
                w -= V[: j + 1].T @ (V[: j + 1] @ w)
                w /= np.linalg.norm(w)
                V[j + 1] = w
                beta = 0.0
            else:
                V[j + 1] = w / beta
            if j + 1 < m:
                T[j + 1, j] = T[j, j + 1] = beta
            j += 1
            if j >= min(dim, 2 * k + 2) and (j % check_every == 0 or j == m):
                vals, vecs = symm_eigh(T[:j, :j])
                ests = beta * np.abs(vecs[j - 1, : k])
                if np.all(ests <= 0.1 * cfg.tol) or j >= dim:
                    break

        vals, vecs = symm_eigh(T[:j, :j])
        keep = min(k, j)
        Y = V[:j].T @ vecs[:, :keep]
        residuals = []
        for i in range(keep):
            r = op.apply(Y[:, i]) - vals[i] * Y[:, i]
            applies += 1
            residuals.append(float(np.linalg.norm(r)))
        best_residual = min(best_residual, max(residuals))
        if max(residuals) <= cfg.tol or j >= dim:
            degenerate = keep >= 2 and vals[1] - vals[0] < cfg.degeneracy_tol
            return GroundStateResult(
                energies=list(vals[:keep]), residuals=residuals,
                iterations=applies,
                sector=(op.basis.n_sites, op.basis.n_up),
                degenerate=degenerate,
                vector=Y[:, 0].copy() if want_vector else None)

        # thick restart: retain the lowest Ritz vectors plus the residual
        # direction, then continue the recurrence
        ell = min(k + 8, j - 1, m - 2)
        V[:ell] = (V[:j].T @ vecs[:, :ell]).T
        V[ell] = V[j]
        T[:, :] = 0.0
        T[:ell, :ell] = np.diag(vals[:ell])

    raise SolverError(
        f"Lanczos did not reach tol={cfg.tol:g} after {cfg.max_restarts} "
        f"restarts (best residual {best_residual:.3e})",
        best_residual=best_residual)


class SectorPolicy:
    MIN_ABS_SZ = "min"
    SCAN_ALL = "scan"


def sector_dims(n_sites: int):
    base = (n_sites + 1) // 2
    return {n_up: comb(n_sites, n_up) for n_up in range(base, n_sites + 1)}


def ground_energy(spec: LatticeSpec, cfg: LanczosConfig = LanczosConfig(),
                  sector_policy: str = SectorPolicy.MIN_ABS_SZ,
                  want_vector: bool = False) -> GroundStateResult:
    """Ground-state solve with sector dispatch.

    ``min`` solves the smallest-|Sz| sector only (sufficient for the ground
    energy, since every spin multiplet reaches that sector); ``scan`` solves
    every sector with Sz >= 0 and returns the global minimum.
    """
    bonds = build(spec)
    n = spec.n_sites
    if sector_policy == SectorPolicy.MIN_ABS_SZ:
        sectors = [(n + 1) // 2]
    elif sector_policy == SectorPolicy.SCAN_ALL:
        sectors = list(range((n + 1) // 2, n + 1))
    else:
        raise ValueError(f"unknown sector policy {sector_policy!r}")
    best = None
    for n_up in sectors:
        basis = SectorBasis(n, n_up)
        op = HamiltonianOperator(bonds, basis)
        res = lowest_eigs(op, cfg, want_vector=want_vector)
        if best is None or res.energies[0] < best.energies[0]:
            best = res
    return best
