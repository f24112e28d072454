"""Fixed-magnetization configuration basis with rank/unrank maps.

Configurations are bitstrings (bit ``i`` set means spin up at site ``i``),
ordered lexicographically by integer value.  Ranking uses the combinatorial
number system, so no hashing or search is involved.
"""

from __future__ import annotations

from functools import cached_property
from math import comb

import numpy as np

MAX_SITES = 32


class BasisError(ValueError):
    pass


class SectorBasis:
    """All ``n_sites``-bit configurations with exactly ``n_up`` bits set."""

    def __init__(self, n_sites: int, n_up: int):
        if not 1 <= n_sites <= MAX_SITES:
            raise BasisError(f"n_sites must be in [1, {MAX_SITES}]")
        if not 0 <= n_up <= n_sites:
            raise BasisError("n_up out of range")
        self.n_sites = n_sites
        self.n_up = n_up
        self.dim = comb(n_sites, n_up)
        # binom[p][k] = C(p, k); rank(c) = sum over ascending set bits p_i
        # of C(p_i, i+1)
        self._binom = np.array(
            [[comb(p, k) for k in range(n_sites + 2)]
             for p in range(n_sites + 1)], dtype=np.int64)

    @cached_property
    def configs(self) -> np.ndarray:
        """All sector configurations, ascending (built on first use)."""
        out = np.empty(self.dim, dtype=np.uint32)
        pos = 0
        chunk = 1 << 22
        total = 1 << self.n_sites
        for start in range(0, total, chunk):
            c = np.arange(start, min(start + chunk, total), dtype=np.uint32)
            sel = c[np.bitwise_count(c) == self.n_up]
            out[pos:pos + len(sel)] = sel
            pos += len(sel)
        assert pos == self.dim
        return out

    def rank(self, config: int) -> int:
        if config < 0 or config >> self.n_sites:
            raise BasisError("configuration out of range")
        if int(config).bit_count() != self.n_up:
            raise BasisError("configuration has wrong magnetization")
        r, k = 0, 0
        for p in range(self.n_sites):
            if (config >> p) & 1:
                k += 1
                r += self._binom[p, k]
        return int(r)

    def rank_many(self, configs: np.ndarray) -> np.ndarray:
        """Vectorized rank; assumes correct popcount."""
        c = configs.astype(np.uint32, copy=False)
        r = np.zeros(c.shape, dtype=np.int64)
        k = np.zeros(c.shape, dtype=np.int64)
        for p in range(self.n_sites):
            bit = ((c >> np.uint32(p)) & np.uint32(1)).astype(np.int64)
            k += bit
            r += bit * self._binom[p][k]
        return r

    def unrank(self, index: int) -> int:
        if not 0 <= index < self.dim:
            raise BasisError("index out of range")
        c = 0
        rem = index
        k = self.n_up
        p = self.n_sites - 1
        while k > 0:
            if self._binom[p, k] <= rem:
                rem -= self._binom[p, k]
                c |= 1 << p
                k -= 1
            p -= 1
        return c

    def __repr__(self):
        return f"SectorBasis(n_sites={self.n_sites}, n_up={self.n_up}, dim={self.dim})"
