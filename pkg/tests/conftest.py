"""Shared fixtures and the independent dense oracle.

The oracle builds the full 2^n Hamiltonian directly from bit arithmetic on
configuration integers and diagonalizes it with numpy; it shares no code
with the package's sector basis, matrix-free apply, or tridiagonal solver.
"""

import numpy as np
import pytest

from schupp import EnergyCache, LanczosConfig


def dense_full_hamiltonian(bonds):
    """Dense Hamiltonian on the full 2^n space, indexed by configuration."""
    n = bonds.n_sites
    dim = 1 << n
    h = np.zeros((dim, dim))
    c = np.arange(dim)
    for i, j, w in bonds.bonds:
        bi = (c >> i) & 1
        bj = (c >> j) & 1
        h[c, c] += 0.25 * w * np.where(bi == bj, 1.0, -1.0)
        anti = np.nonzero(bi != bj)[0]
        flipped = anti ^ ((1 << i) | (1 << j))
        h[flipped, anti] += 0.5 * w
    return h


def sector_configs(n_sites, n_up):
    """Ascending configuration integers with the given up-spin count."""
    return [c for c in range(1 << n_sites) if c.bit_count() == n_up]


def dense_sector_hamiltonian(bonds, n_up):
    """Dense Hamiltonian restricted to one magnetization sector."""
    cfgs = sector_configs(bonds.n_sites, n_up)
    h = dense_full_hamiltonian(bonds)
    return h[np.ix_(cfgs, cfgs)]


def oracle_ground_energy(bonds):
    """Lowest eigenvalue of the full dense Hamiltonian (numpy)."""
    return float(np.linalg.eigvalsh(dense_full_hamiltonian(bonds))[0])


@pytest.fixture(scope="session")
def cfg():
    return LanczosConfig()


@pytest.fixture(scope="session")
def shared_cache(tmp_path_factory):
    """One on-disk energy cache for the whole session, so expensive solves
    (shared between unit and acceptance tests) happen once."""
    return EnergyCache(str(tmp_path_factory.mktemp("energy-cache")))
