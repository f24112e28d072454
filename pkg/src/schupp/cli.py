"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 bad flags, 3 solver
failure, 4 memory guard refusal.
"""

from __future__ import annotations

import json
import sys
from math import comb

import click

from . import analysis, inequality, observables, tables
from .cache import default_cache
from .eigensolver import (LanczosConfig, SectorPolicy, effective_krylov,
                          ground_energy, SolverError)
from .lattice import (Crossing, CutSpec, Family, LatticeSpec, canonical_key,
                      check_applicability, cut, cut_from_d2, LatticeError)

EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_MEMORY = 4

_FAMILIES = [f.value for f in Family]
_CROSSINGS = [c.value for c in Crossing]


def _fmt(v: float) -> str:
    return f"{v:.15g}"


def _spec_options(fn):
    opts = [
        click.option("--family", type=click.Choice(_FAMILIES), required=True),
        click.option("--nx", type=int, required=True),
        click.option("--ny", type=int, default=0,
                     help="rows; defaults per family"),
        click.option("--crossing", type=click.Choice(_CROSSINGS),
                     default="none"),
        click.option("--j", type=float, default=1.0),
        click.option("--jd", type=float, default=0.0),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _solver_options(fn):
    opts = [
        click.option("--tol", type=float, default=1e-12),
        click.option("--seed", type=int, default=20240901),
        click.option("--cache-dir", type=click.Path(), default=None),
        click.option("--max-mem", type=float, default=8.0,
                     help="memory budget in GiB"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _make_spec(family, nx, ny, crossing, j, jd) -> LatticeSpec:
    try:
        return LatticeSpec(Family(family), nx, ny,
                           crossing=Crossing(crossing), j=j, jd=jd)
    except LatticeError as exc:
        raise click.UsageError(str(exc))


def _make_cfg(tol, seed) -> LanczosConfig:
    return LanczosConfig(tol=tol, seed=seed)


def _guard_memory(n_sites: int, cfg: LanczosConfig, max_mem_gib: float):
    dim = comb(n_sites, (n_sites + 1) // 2)
    m = effective_krylov(dim, cfg)
    # Krylov basis + per-bond index tables (~3 bonds/site, int32 pairs)
    need = (m + 4) * dim * 8 + 3 * n_sites * dim * 4
    if need > max_mem_gib * 2**30:
        click.echo(f"refusing: estimated {need / 2**30:.1f} GiB exceeds "
                   f"--max-mem {max_mem_gib:g} GiB", err=True)
        sys.exit(EXIT_MEMORY)


@click.group()
def main():
    """Heisenberg ground-state energies, inequality gaps, and decay fits."""


@main.command()
@_spec_options
@_solver_options
@click.option("--sector", type=click.Choice(["min", "scan"]), default="min")
def energy(family, nx, ny, crossing, j, jd, tol, seed, cache_dir, max_mem,
           sector):
    """Ground-state energy of one lattice."""
    spec = _make_spec(family, nx, ny, crossing, j, jd)
    cfg = _make_cfg(tol, seed)
    _guard_memory(spec.n_sites, cfg, max_mem)
    cache = default_cache(cache_dir)
    policy = (SectorPolicy.MIN_ABS_SZ if sector == "min"
              else SectorPolicy.SCAN_ALL)
    try:
        if sector == "min" and cache is not None:
            hit = cache.get(canonical_key(spec), cfg.tol)
            if hit is not None:
                # same key set as a fresh solve so cold and warm runs
                # print byte-identical JSON
                click.echo(json.dumps(
                    {k: hit[k] for k in ("energies", "residuals", "iterations",
                                         "sector", "degenerate", "converged")},
                    sort_keys=True))
                return
        res = ground_energy(spec, cfg, policy)
    except SolverError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        sys.exit(EXIT_SOLVER)
    if sector == "min":
        cache.put(canonical_key(spec), cfg.tol, res.as_dict())
    click.echo(json.dumps(res.as_dict(), sort_keys=True))


@main.command()
@_spec_options
@_solver_options
@click.option("--d2", type=int, default=None,
              help="twice the cut offset from the middle")
@click.option("--cut", "cut_m", type=int, default=None,
              help="columns left of the cut")
def delta(family, nx, ny, crossing, j, jd, tol, seed, cache_dir, max_mem,
          d2, cut_m):
    """Inequality gap for one division (CSV row)."""
    spec = _make_spec(family, nx, ny, crossing, j, jd)
    if (d2 is None) == (cut_m is None):
        raise click.UsageError("give exactly one of --d2 / --cut")
    try:
        cutspec = (CutSpec(cut_m, spec.nx - cut_m) if cut_m is not None
                   else cut_from_d2(spec, d2))
    except LatticeError as exc:
        raise click.UsageError(str(exc))
    cfg = _make_cfg(tol, seed)
    _guard_memory(spec.nx + abs(cutspec.d2) * spec.ny, cfg, max_mem)
    cache = default_cache(cache_dir)
    try:
        rec = inequality.delta(spec, cutspec, cfg, cache)
    except inequality.NotRepresentableError as exc:
        click.echo(f"not applicable: {exc}", err=True)
        sys.exit(EXIT_SOLVER)
    except SolverError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        sys.exit(EXIT_SOLVER)
    click.echo(inequality.CSV_HEADER + ",status")
    click.echo(rec.csv_row() + ",ok")


@main.command()
@_spec_options
@_solver_options
@click.option("--lmin", type=int, required=True)
@click.option("--lmax", type=int, required=True)
@click.option("--d2", "d2_list", type=int, multiple=True, default=(2,))
def sweep(family, nx, ny, crossing, j, jd, tol, seed, cache_dir, max_mem,
          lmin, lmax, d2_list):
    """Gap records across a length range (CSV). --nx is ignored."""
    cfg = _make_cfg(tol, seed)
    cache = default_cache(cache_dir)
    _guard_memory((lmax + max(abs(d) for d in d2_list)) *
                  max(_make_spec(family, max(lmin, 2), ny, crossing, j, jd).ny, 1),
                  cfg, max_mem)

    def make(length):
        return _make_spec(family, length, ny, crossing, j, jd)

    records, errors = inequality.sweep(
        make, range(lmin, lmax + 1), sorted(d2_list), cfg, cache)
    click.echo(inequality.CSV_HEADER + ",status")
    for rec in records:
        click.echo(rec.csv_row() + ",ok")
    for length, d2, msg in errors:
        click.echo(f"{family},{length},,,{d2},,,,,,error: {msg}")


@main.command()
@_spec_options
@_solver_options
@click.option("--anchor", type=int, default=0)
def profile(family, nx, ny, crossing, j, jd, tol, seed, cache_dir, max_mem,
            anchor):
    """Correlation profile of one anchor site (CSV)."""
    spec = _make_spec(family, nx, ny, crossing, j, jd)
    cfg = _make_cfg(tol, seed)
    _guard_memory(spec.n_sites, cfg, max_mem)
    try:
        series = observables.profile(spec, anchor, cfg)
    except observables.DegenerateGroundStateError as exc:
        click.echo(f"refused: {exc}", err=True)
        sys.exit(EXIT_SOLVER)
    except SolverError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        sys.exit(EXIT_SOLVER)
    click.echo("site,x,y,distance,corr")
    ny_ = spec.ny
    ax = anchor // ny_
    for site, c in series.values:
        click.echo(f"{site},{site // ny_},{site % ny_},"
                   f"{abs(site // ny_ - ax)},{_fmt(c)}")


@main.command()
@click.option("--model", type=click.Choice(["power", "exp"]), required=True)
@click.option("--input", "path", type=click.Path(exists=True), required=True)
@click.option("--noise-floor", type=float, default=analysis.DEFAULT_NOISE_FLOOR)
def fit(model, path, noise_floor):
    """Fit a decay law to a sweep or profile CSV."""
    points = _read_points(path)
    try:
        if model == "power":
            res = analysis.fit_power(points, noise_floor)
        else:
            res = analysis.fit_exp(points, noise_floor)
    except analysis.FitDataError as exc:
        raise click.UsageError(str(exc))
    click.echo(json.dumps(res.as_dict(), sort_keys=True))


def _read_points(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    if "delta" in header:
        xi, yi = header.index("nx"), header.index("delta")
        rows = [r for r in rows if r[-1] == "ok"]
        return [(float(r[xi]), float(r[yi])) for r in rows]
    if "corr" in header:
        xi, yi = header.index("distance"), header.index("corr")
        return [(float(r[xi]), abs(float(r[yi]))) for r in rows
                if float(r[xi]) > 0]
    raise click.UsageError(f"unrecognized CSV header in {path}")


@main.command()
@_spec_options
@click.option("--cut", "cut_m", type=int, required=True,
              help="columns left of the cut")
def check(family, nx, ny, crossing, j, jd, cut_m):
    """Applicability (PSD) check for one cut interface."""
    spec = _make_spec(family, nx, ny, crossing, j, jd)
    try:
        _, _, iface = cut(spec, CutSpec(cut_m, spec.nx - cut_m))
    except LatticeError as exc:
        raise click.UsageError(str(exc))
    app = check_applicability(iface)
    verdict = "applicable" if app.applicable else "not_representable"
    click.echo(json.dumps({
        "verdict": verdict,
        "eigenvalues": [float(e) for e in app.eigenvalues],
        "reason": app.reason,
    }, sort_keys=True))
    if not app.applicable:
        sys.exit(EXIT_VERIFY_FAIL)


@main.command()
@_solver_options
@click.option("--max-sites", type=int, default=16)
def verify(tol, seed, cache_dir, max_mem, max_sites):
    """Recompute every reference-table entry within the site budget."""
    cfg = _make_cfg(tol, seed)
    _guard_memory(max_sites, cfg, max_mem)
    cache = default_cache(cache_dir)
    failures = 0
    for spec, ref, label in tables.reference_entries(max_sites):
        try:
            e = inequality.solve_energy(spec, cfg, cache)
        except SolverError as exc:
            click.echo(f"{label}: SOLVER FAILURE {exc}")
            failures += 1
            continue
        err = e - ref
        ok = abs(err) <= 1e-10
        failures += 0 if ok else 1
        click.echo(f"{label}: computed {_fmt(e)} reference {_fmt(ref)} "
                   f"delta {err:+.2e} {'pass' if ok else 'FAIL'}")
    click.echo(f"{'all entries pass' if not failures else f'{failures} failures'}")
    if failures:
        sys.exit(EXIT_VERIFY_FAIL)


@main.command()
@_solver_options
def counterexample(tol, seed, cache_dir, max_mem):
    """Show that the odd-split chain inequality fails while the even split holds."""
    cfg = _make_cfg(tol, seed)
    cache = default_cache(cache_dir)
    report = inequality.counterexample_check(cfg, cache)
    click.echo(json.dumps(
        {k: (_fmt(v) if isinstance(v, float) else v)
         for k, v in report.items()}, sort_keys=True))


if __name__ == "__main__":
    main()
