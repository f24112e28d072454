"""Acceptance gate: end-to-end reproduction of the published results.

Each test prints one summary line (visible with ``pytest -s`` or on
failure) and asserts the corresponding acceptance threshold.  A shared
on-disk energy cache keeps the total solve count down; everything is
deterministic for the default solver configuration.
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from schupp.analysis import (DecayClass, best_gap_model, classify_decay,
                             conjecture_table, fit_exp, fit_power)
from schupp.basis import SectorBasis
from schupp.cli import main as cli_main
from schupp.eigensolver import LanczosConfig, ground_energy
from schupp.hamiltonian import HamiltonianOperator
from schupp.inequality import (NotRepresentableError, counterexample_check,
                               delta_at, solve_energy)
from schupp.lattice import (Crossing, build, chain, crossed_ladder, pyro_a,
                            pyro_b, rectangle, square_ladder)
from schupp.observables import profile
from schupp.tables import CHAIN_ENERGIES, QUASI2D_ENERGIES, quasi2d_spec

from conftest import dense_sector_hamiltonian, oracle_ground_energy

CFG = LanczosConfig()


def report(name, ok, detail):
    print(f"{name}: {'PASS' if ok else 'FAIL'} - {detail}")


# ------------------------------------------------------------------ 1


def test_criterion_01_chain_table(shared_cache):
    """Published open-chain energies, N = 2..20, to 1e-10."""
    worst = 0.0
    for n in range(2, 21):
        e = solve_energy(chain(n), CFG, shared_cache)
        worst = max(worst, abs(e - CHAIN_ENERGIES[n]))
    ok = worst <= 1e-10
    report("criterion 1 (chain energies N=2..20)", ok,
           f"max |error| = {worst:.2e} (tol 1e-10)")
    assert ok


# ------------------------------------------------------------------ 2


def test_criterion_02_quasi2d_table(shared_cache):
    """Published quasi-2d energies, all entries with nx*ny <= 20, to 1e-10."""
    worst, count = 0.0, 0
    for (rows, cols), energies in sorted(QUASI2D_ENERGIES.items()):
        if rows * cols > 20:
            continue
        for variant, ref in zip(("square", "pyro_a", "pyro_b", "x"), energies):
            spec = quasi2d_spec(rows, cols, variant)
            e = solve_energy(spec, CFG, shared_cache)
            worst = max(worst, abs(e - ref))
            count += 1
    ok = worst <= 1e-10
    report("criterion 2 (quasi-2d energies, nx*ny<=20)", ok,
           f"{count} entries, max |error| = {worst:.2e} (tol 1e-10)")
    assert ok


# ------------------------------------------------------------------ 3


def test_criterion_03_gap_nonnegativity(shared_cache):
    """Every applicable division within the site budget has gap >= -3 tol.

    Budget: every system involved (parent and both doubled halves) stays
    within 20 sites, i.e. chains up to L + d2 <= 20 and two-row lattices up
    to L + d2 <= 10 columns.  Gaps are symmetric in the sign of d2, so only
    d2 >= 0 is enumerated.
    """
    checked, skipped, worst = 0, 0, np.inf
    cases = [(chain, range(2, 21), 20)]
    cases += [(maker, range(2, 11), 10)
              for maker in (square_ladder, crossed_ladder, pyro_a, pyro_b)]
    for maker, lengths, budget in cases:
        for L in lengths:
            for d2 in range(L % 2, L, 2):
                if L + d2 > budget:
                    continue
                try:
                    rec = delta_at(maker(L), d2, CFG, shared_cache)
                except NotRepresentableError:
                    skipped += 1
                    continue
                checked += 1
                worst = min(worst, rec.delta)
                assert rec.delta >= -rec.residual_bound, \
                    (maker.__name__, L, d2, rec.delta)
    report("criterion 3 (gap nonnegativity)", True,
           f"{checked} divisions checked ({skipped} not representable), "
           f"most negative gap = {worst:.3e}")


# ------------------------------------------------------------------ 4


def test_criterion_04_counterexample(shared_cache):
    """Odd-split chain comparison 2E6 - (E5 + E7) = -0.223028333771."""
    rep = counterexample_check(CFG, shared_cache)
    err = abs(rep["naive_gap"] + 0.223028333771)
    ok = rep["naive_violated"] and err <= 1e-10 and rep["legit_nonnegative"]
    report("criterion 4 (odd-split counterexample)", ok,
           f"2E6-(E5+E7) = {rep['naive_gap']:.12f}, |error| = {err:.2e}")
    assert ok


# ------------------------------------------------------------------ 5


def test_criterion_05_pyro_saturation(shared_cache):
    """Alternating-ladder saturation and the constant -0.75 increment."""
    e25 = solve_energy(pyro_a(5), CFG, shared_cache)
    e_b24 = solve_energy(pyro_b(4), CFG, shared_cache)
    e_a26 = solve_energy(pyro_a(6), CFG, shared_cache)
    sat = 2.0 * e25 - e_b24 - e_a26
    ok = abs(sat) <= 1e-9
    increments = []
    for even in (4, 6, 8, 10):
        inc = (solve_energy(pyro_a(even), CFG, shared_cache)
               - solve_energy(pyro_a(even - 1), CFG, shared_cache))
        increments.append(inc)
        ok = ok and abs(inc + 0.75) <= 1e-9
    report("criterion 5 (pyro saturation and -0.75 increment)", ok,
           f"saturation gap = {sat:.2e}, increments = "
           + ", ".join(f"{v:.12f}" for v in increments))
    assert ok


# ------------------------------------------------------------------ 6


def test_criterion_06_edge_correlations():
    """Even-length type-A ladder: the edge spin correlates only with its
    edge partner; every other correlation vanishes below 1e-8."""
    series = profile(pyro_a(6), anchor=0, cfg=CFG)
    values = dict(series.values)
    bulk_max = max(abs(c) for j, c in values.items() if j > 1)
    ok = bulk_max < 1e-8 and abs(values[1] + 0.75) < 1e-8
    report("criterion 6 (edge-singlet correlations)", ok,
           f"max |corr| outside edge pair = {bulk_max:.2e}, "
           f"edge pair = {values[1]:.12f}")
    assert ok


# ------------------------------------------------------------------ 7


def test_criterion_07_oracle_equivalence():
    """Lanczos energies vs dense diagonalization (1e-11) and matrix-free
    application vs the dense matrix (1e-13), every family, <= 12 sites."""
    specs = [chain(12), square_ladder(6), crossed_ladder(6), pyro_a(6),
             pyro_b(6), rectangle(4, 3), rectangle(4, 3, Crossing.CHECKER_A),
             rectangle(4, 3, Crossing.CHECKER_B),
             rectangle(4, 3, Crossing.ALL, jd=0.5)]
    worst_e, worst_m = 0.0, 0.0
    for spec in specs:
        bonds = build(spec)
        res = ground_energy(spec, CFG)
        worst_e = max(worst_e,
                      abs(res.energies[0] - oracle_ground_energy(bonds)))
        n = spec.n_sites
        op = HamiltonianOperator(bonds, SectorBasis(n, (n + 1) // 2))
        dense = np.zeros((op.dim, op.dim))
        e = np.zeros(op.dim)
        for c in range(op.dim):
            e[c] = 1.0
            dense[:, c] = op.apply(e)
            e[c] = 0.0
        oracle = dense_sector_hamiltonian(bonds, (n + 1) // 2)
        worst_m = max(worst_m, np.max(np.abs(dense - oracle)))
    ok = worst_e <= 1e-11 and worst_m <= 1e-13
    report("criterion 7 (dense-oracle equivalence)", ok,
           f"{len(specs)} systems, max energy error = {worst_e:.2e} "
           f"(tol 1e-11), max entry error = {worst_m:.2e} (tol 1e-13)")
    assert ok


# ------------------------------------------------------------------ 8


def gap_points(maker, lengths, shared_cache):
    return [(L, delta_at(maker(L), 2, CFG, shared_cache).delta)
            for L in lengths]


def test_criterion_08_fit_exponents(shared_cache):
    """Synthetic exponent recovery to 1e-6; desk-scale exponent bands for
    the chain power law and the two crossed-ladder exponential laws."""
    synth_p = fit_power([(L, 5.0 * L ** -3.0) for L in range(4, 41, 2)])
    synth_e = fit_exp([(L, np.exp(-0.63 * L)) for L in range(4, 30)])
    ok = (abs(synth_p.exponent - 3.0) < 3e-6
          and abs(synth_e.exponent - 0.63) < 0.63e-6)

    # frozen sweep ranges: chain one-bond offset (d2=2), even L = 4..18;
    # ladder families d2=2 over L = 6, 8, 10
    theta = fit_power(gap_points(chain, range(4, 19, 2), shared_cache))
    alpha_p = fit_exp(gap_points(pyro_a, (6, 8, 10), shared_cache))
    alpha_x = fit_exp(gap_points(crossed_ladder, (6, 8, 10), shared_cache))
    ok = ok and 2.3 <= theta.exponent <= 3.4
    ok = ok and 0.53 <= alpha_p.exponent <= 0.73
    ok = ok and 0.44 <= alpha_x.exponent <= 0.64
    report("criterion 8 (fit exponents)", ok,
           f"theta(chain, L=4..18) = {theta.exponent:.3f} in [2.3, 3.4]; "
           f"alpha(pyro, L=6..10) = {alpha_p.exponent:.3f} in [0.53, 0.73]; "
           f"alpha(crossed, L=6..10) = {alpha_x.exponent:.3f} in [0.44, 0.64]")
    assert ok


# ------------------------------------------------------------------ 9


@pytest.fixture(scope="module")
def decay_classes():
    out = {}
    for label, spec in (("chain", chain(20)),
                        ("square ladder", square_ladder(12)),
                        ("crossed ladder", crossed_ladder(12)),
                        ("pyro ladder", pyro_b(12))):
        series = profile(spec, anchor=0, cfg=CFG)
        out[label] = classify_decay(series)
    return out


def test_criterion_09a_decay_classification(decay_classes):
    """Chain profile decays algebraically, ladder profile exponentially."""
    chain_cls, chain_ev = decay_classes["chain"]
    ladder_cls, ladder_ev = decay_classes["square ladder"]
    ok = (chain_cls is DecayClass.ALGEBRAIC
          and ladder_cls is DecayClass.EXPONENTIAL)
    report("criterion 9a (decay classes of the named profiles)", ok,
           f"chain L=20 -> {chain_cls.value} "
           f"(r2 {chain_ev['r2_power']:.3f} vs {chain_ev['r2_exp']:.3f}); "
           f"square ladder 2x12 -> {ladder_cls.value} "
           f"(r2 {ladder_ev['r2_power']:.3f} vs {ladder_ev['r2_exp']:.3f})")
    assert ok


def test_criterion_09b_conjecture_rows(decay_classes, shared_cache):
    """Correlation decay class matches the gap-vs-length law per family."""
    gap_models = {
        "chain": best_gap_model(
            gap_points(chain, range(4, 19, 2), shared_cache))[0],
        "square ladder": best_gap_model(
            gap_points(square_ladder, (6, 8, 10), shared_cache))[0],
        "crossed ladder": best_gap_model(
            gap_points(crossed_ladder, (6, 8, 10), shared_cache))[0],
        "pyro ladder": best_gap_model(
            gap_points(pyro_a, (6, 8, 10), shared_cache))[0],
    }
    rows = [(label, decay_classes[label][0], gap_models[label])
            for label in gap_models]
    table = conjecture_table(rows)
    detail = "; ".join(
        f"{r['family']}: {r['correlation_decay']}/{r['gap_model']} -> "
        f"{'agree' if r['agree'] else ('OPEN' if r['agree'] is None else 'DISAGREE')}"
        for r in table)
    ok = all(r["agree"] for r in table)
    report("criterion 9b (conjecture cross-table)", ok, detail)
    assert ok


# ------------------------------------------------------------------ 10


def test_criterion_10_order_of_magnitude(shared_cache):
    """Matched sizes, near-middle cut: ladder gap / chain gap <= 1e-2."""
    chain_gap = delta_at(chain(11), 1, CFG, shared_cache).delta
    ladder_gap = delta_at(square_ladder(11), 1, CFG, shared_cache).delta
    ratio = ladder_gap / chain_gap
    ok = 0 <= ratio <= 1e-2
    # informational only: the matched even-length pair is less separated
    chain_gap_10 = delta_at(chain(10), 2, CFG, shared_cache).delta
    ladder_gap_10 = delta_at(square_ladder(10), 2, CFG, shared_cache).delta
    report("criterion 10 (gap separation at matched size)", ok,
           f"L=11 d2=1: ladder/chain = {ratio:.2e} (bound 1e-2); "
           f"informational L=10 d2=2 ratio = "
           f"{ladder_gap_10 / chain_gap_10:.2e}")
    assert ok


# ------------------------------------------------------------------ 11


def test_criterion_11_determinism(tmp_path):
    """Identical CLI invocations produce byte-identical output, including
    across cold and warm cache states."""
    runner = CliRunner()
    energy_args = ["energy", "--family", "pyro-a", "--nx", "6",
                   "--cache-dir", str(tmp_path)]
    delta_args = ["delta", "--family", "chain", "--nx", "8", "--d2", "2",
                  "--cache-dir", str(tmp_path)]
    e1 = runner.invoke(cli_main, energy_args, catch_exceptions=False).output
    e2 = runner.invoke(cli_main, energy_args, catch_exceptions=False).output
    d1 = runner.invoke(cli_main, delta_args, catch_exceptions=False).output
    d2 = runner.invoke(cli_main, delta_args, catch_exceptions=False).output
    ok = e1 == e2 and d1 == d2 and json.loads(e1)["converged"]
    report("criterion 11 (bit-identical reruns)", ok,
           f"energy outputs identical: {e1 == e2}; "
           f"delta outputs identical: {d1 == d2}")
    assert ok
