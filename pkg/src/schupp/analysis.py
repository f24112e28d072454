"""Decay-law fitting: power law vs exponential gaps, correlation fall-off."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import linregress

DEFAULT_NOISE_FLOOR = 1e-9


class FitModel(str, Enum):
    POWER_LAW = "power"
    EXPONENTIAL = "exp"


class DecayClass(str, Enum):
    ALGEBRAIC = "algebraic"
    EXPONENTIAL = "exponential"
    CONSTANT = "constant"
    UNDETERMINED = "undetermined"


class FitDataError(ValueError):
    """Fewer than three points survive the noise floor."""


@dataclass
class FitResult:
    model: FitModel
    exponent: float
    amplitude: float
    std_err: float
    r_squared: float
    n_points: int
    excluded: int

    def as_dict(self):
        return {
            "model": self.model.value,
            "exponent": self.exponent,
            "amplitude": self.amplitude,
            "std_err": self.std_err,
            "r_squared": self.r_squared,
            "n_points": self.n_points,
            "excluded": self.excluded,
        }


def _usable(points, noise_floor):
    kept = [(x, y) for x, y in points if y > noise_floor and x > 0]
    excluded = len(list(points)) - len(kept)
    if len(kept) < 3:
        raise FitDataError(
            f"only {len(kept)} points above the noise floor {noise_floor:g}")
    return kept, excluded


def fit_power(points, noise_floor: float = DEFAULT_NOISE_FLOOR) -> FitResult:
    """y ~ A x^(-theta) by least squares on (ln x, ln y)."""
    kept, excluded = _usable(points, noise_floor)
    x = np.log([p[0] for p in kept])
    y = np.log([p[1] for p in kept])
    reg = linregress(x, y)
    return FitResult(FitModel.POWER_LAW, exponent=-reg.slope,
                     amplitude=float(np.exp(reg.intercept)),
                     std_err=float(reg.stderr),
                     r_squared=float(reg.rvalue ** 2),
                     n_points=len(kept), excluded=excluded)


def fit_exp(points, noise_floor: float = DEFAULT_NOISE_FLOOR) -> FitResult:
    """y ~ A exp(-alpha x) by least squares on (x, ln y)."""
    kept, excluded = _usable(points, noise_floor)
    x = np.array([p[0] for p in kept], dtype=float)
    y = np.log([p[1] for p in kept])
    reg = linregress(x, y)
    return FitResult(FitModel.EXPONENTIAL, exponent=-reg.slope,
                     amplitude=float(np.exp(reg.intercept)),
                     std_err=float(reg.stderr),
                     r_squared=float(reg.rvalue ** 2),
                     n_points=len(kept), excluded=excluded)


def _site_points(series, noise_floor):
    """(plot distance, |correlation|) per site, anchor excluded.

    The plot coordinate is the separation along the site ordering, the same
    axis the correlation profiles are drawn against.
    """
    pts = [(float(abs(site - series.anchor)), abs(c))
           for site, c in series.values if site != series.anchor]
    return sorted((x, v) for x, v in pts if v > noise_floor)


def _alternating_fit_r2(x, lny, trend):
    """r^2 of a log-space OLS fit with an alternation nuisance regressor.

    Antiferromagnetic correlations carry a (-1)^x sublattice modulation on
    top of the decay envelope; fitting it jointly keeps the power-law vs
    exponential comparison about the envelope alone.
    """
    a = np.stack([np.ones_like(x), trend, (-1.0) ** x], axis=1)
    coef, *_ = np.linalg.lstsq(a, lny, rcond=None)
    resid = lny - a @ coef
    ss_tot = float(np.sum((lny - lny.mean()) ** 2))
    return 1.0 - float(resid @ resid) / ss_tot


def classify_decay(series, noise_floor: float = DEFAULT_NOISE_FLOOR,
                   margin: float = 0.05):
    """Algebraic vs exponential vs constant fall-off of |<S_a . S_j>|.

    Returns (DecayClass, evidence dict).  The winning decaying model must
    beat the other by ``margin`` in r^2; a constant profile is recognized by
    a linear fit whose offset is significant and whose relative drop over
    the observed range is small.
    """
    pts = _site_points(series, noise_floor)
    evidence = {"n_points": len(pts)}
    if len(pts) < 5:
        return DecayClass.UNDETERMINED, evidence
    x = np.array([p[0] for p in pts])
    v = np.array([p[1] for p in pts])
    # constant-offset candidate: |c| = a + b*x with significant a and
    # little overall decay
    lin = linregress(x, v)
    a_err = float(lin.intercept_stderr)
    drop = (v.max() - v.min()) / v.max()
    evidence["linear_offset"] = float(lin.intercept)
    evidence["linear_offset_err"] = a_err
    evidence["relative_drop"] = float(drop)
    if lin.intercept > 3.0 * a_err and drop < 0.5:
        return DecayClass.CONSTANT, evidence
    lny = np.log(v)
    r2_power = _alternating_fit_r2(x, lny, np.log(x))
    r2_exp = _alternating_fit_r2(x, lny, x)
    evidence["r2_power"] = r2_power
    evidence["r2_exp"] = r2_exp
    if r2_exp >= r2_power + margin:
        return DecayClass.EXPONENTIAL, evidence
    if r2_power >= r2_exp + margin:
        return DecayClass.ALGEBRAIC, evidence
    return DecayClass.UNDETERMINED, evidence


def best_gap_model(points, noise_floor: float = DEFAULT_NOISE_FLOOR):
    """Higher-r^2 model for gap-vs-length data, with both fits."""
    power = fit_power(points, noise_floor)
    expo = fit_exp(points, noise_floor)
    best = (FitModel.EXPONENTIAL if expo.r_squared >= power.r_squared
            else FitModel.POWER_LAW)
    return best, power, expo


def conjecture_table(rows):
    """Cross-check correlation decay class against the gap-vs-length law.

    ``rows`` holds (label, DecayClass, gap FitModel) triples.  A row agrees
    when exponential pairs with exponential and algebraic with power law;
    undetermined classes are flagged with no agreement claim.
    """
    out = []
    for label, decay, gap_model in rows:
        if decay in (DecayClass.UNDETERMINED, DecayClass.CONSTANT):
            agree = None
        else:
            agree = (decay, gap_model) in (
                (DecayClass.EXPONENTIAL, FitModel.EXPONENTIAL),
                (DecayClass.ALGEBRAIC, FitModel.POWER_LAW),
            )
        out.append({"family": label, "correlation_decay": decay.value,
                    "gap_model": gap_model.value, "agree": agree})
    return out
