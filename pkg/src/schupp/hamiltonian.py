"""Matrix-free application of a Heisenberg bond Hamiltonian in one sector.

Each bond (i, j, w) contributes w * S_i.S_j, expanded as
Sz_i Sz_j + (S+_i S-_j + S-_i S+_j) / 2.  The diagonal part is +-w/4 per
alignment; the exchange part connects anti-aligned configurations with
amplitude w/2 and never changes the total magnetization.
"""

from __future__ import annotations

import numpy as np

from .basis import SectorBasis
from .lattice import BondList


class HamiltonianOperator:
    """Real symmetric operator of dimension ``basis.dim``."""

    def __init__(self, bonds: BondList, basis: SectorBasis):
        if bonds.n_sites != basis.n_sites:
            raise ValueError("bond list and basis disagree on site count")
        self.bonds = bonds
        self.basis = basis
        self._diag = None
        self._pairs = None

    @property
    def dim(self) -> int:
        return self.basis.dim

    def _build(self):
        basis = self.basis
        configs = basis.configs
        diag = np.zeros(basis.dim)
        pairs = []
        one = np.uint32(1)
        for i, j, w in self.bonds.bonds:
            bi = (configs >> np.uint32(i)) & one
            bj = (configs >> np.uint32(j)) & one
            anti = bi ^ bj
            diag += 0.25 * w - 0.5 * w * anti
            # one representative per exchange pair: the configuration with
            # spin up at the lower site maps to a larger partner
            src = np.nonzero((bi & ~bj).astype(bool))[0].astype(np.int64)
            mask = np.uint32((1 << i) | (1 << j))
            dst = basis.rank_many(configs[src] ^ mask)
            idx_t = np.int64 if basis.dim > np.iinfo(np.int32).max else np.int32
            pairs.append((0.5 * w, src.astype(idx_t), dst.astype(idx_t)))
        self._diag = diag
        self._pairs = pairs

    def diagonal(self) -> np.ndarray:
        if self._diag is None:
            self._build()
        return self._diag

    def apply(self, x: np.ndarray) -> np.ndarray:
        if x.shape != (self.dim,):
            raise ValueError(f"vector has shape {x.shape}, expected ({self.dim},)")
        if self._pairs is None:
            self._build()
        y = self._diag * x
        for half_w, src, dst in self._pairs:
            # src/dst are each duplicate-free, so fancy += is safe
            y[src] += half_w * x[dst]
            y[dst] += half_w * x[src]
        return y

    matvec = apply
