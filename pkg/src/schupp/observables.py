"""Ground-state spin-spin correlations <S_i . S_j> and whole-lattice profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import SectorBasis
from .eigensolver import LanczosConfig, ground_energy
from .lattice import LatticeSpec, build


class DegenerateGroundStateError(RuntimeError):
    """Correlations are basis-dependent for a degenerate ground state."""


def correlation(vector: np.ndarray, basis: SectorBasis, i: int, j: int) -> float:
    """<v| S_i . S_j |v> for a normalized state in the given sector."""
    if i == j:
        return 0.75 * float(vector @ vector)
    configs = basis.configs
    one = np.uint32(1)
    bi = (configs >> np.uint32(i)) & one
    bj = (configs >> np.uint32(j)) & one
    anti = (bi ^ bj).astype(bool)
    zz = 0.25 * (float(vector @ vector) - 2.0 * float(vector[anti] @ vector[anti]))
    sel = np.nonzero((bi & ~bj).astype(bool))[0]
    mask = np.uint32((1 << i) | (1 << j))
    partner = basis.rank_many(configs[sel] ^ mask)
    exchange = float(vector[sel] @ vector[partner])
    return zz + exchange


@dataclass
class CorrelationSeries:
    spec: LatticeSpec
    anchor: int
    values: list  # of (site, <S_anchor . S_site>)
    ground_energy: float

    def distances(self):
        """(column distance, correlation) pairs, anchor excluded."""
        ny = self.spec.ny
        ax = self.anchor // ny
        return [(abs(site // ny - ax), c) for site, c in self.values
                if site != self.anchor]


def profile(spec: LatticeSpec, anchor: int = 0,
            cfg: LanczosConfig = LanczosConfig()) -> CorrelationSeries:
    """Correlations of one anchor site with every site, from one ground state."""
    if not 0 <= anchor < spec.n_sites:
        raise ValueError("anchor site out of range")
    res = ground_energy(spec, cfg, want_vector=True)
    if res.degenerate:
        raise DegenerateGroundStateError(
            f"ground state of {spec.family.value} {spec.nx}x{spec.ny} is "
            "degenerate; correlations are not well-defined")
    basis = SectorBasis(spec.n_sites, res.sector[1])
    v = res.vector
    values = [(j, correlation(v, basis, anchor, j))
              for j in range(spec.n_sites)]
    return CorrelationSeries(spec=spec, anchor=anchor, values=values,
                             ground_energy=res.energies[0])


def energy_sum_rule(series: CorrelationSeries,
                    cfg: LanczosConfig = LanczosConfig()) -> float:
    """Residual of sum_bonds w <S_i.S_j> = E0 (needs all-pairs correlations).

    Provided for diagnostics on small systems: recomputes the full
    correlation matrix from the ground state.
    """
    spec = series.spec
    res = ground_energy(spec, cfg, want_vector=True)
    basis = SectorBasis(spec.n_sites, res.sector[1])
    total = sum(w * correlation(res.vector, basis, i, j)
                for i, j, w in build(spec).bonds)
    return total - res.energies[0]
