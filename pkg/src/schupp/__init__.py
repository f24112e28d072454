"""Ground-state energy inequalities for antiferromagnetic Heisenberg lattices."""

from .analysis import (DecayClass, FitModel, FitResult, classify_decay,
                       conjecture_table, fit_exp, fit_power)
from .basis import SectorBasis
from .cache import EnergyCache, default_cache
from .eigensolver import (GroundStateResult, LanczosConfig, SectorPolicy,
                          ground_energy, lowest_eigs)
from .hamiltonian import HamiltonianOperator
from .inequality import DeltaRecord, counterexample_check, delta, delta_at, sweep
from .lattice import (BondList, Crossing, CutSpec, Family, InterfaceMatrix,
                      LatticeSpec, build, canonical_key, chain,
                      check_applicability, crossed_ladder, cut, cut_from_d2,
                      double, pyro_a, pyro_b, rectangle, square_ladder)
from .observables import CorrelationSeries, correlation, profile

__all__ = [name for name in dir() if not name.startswith("_")]
