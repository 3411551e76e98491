"""
Residual analysis of drag samples against correlations.

A correlation is said to deviate systematically from a dataset when the
signs of the relative residuals (cf_obs - cf_pred)/cf_pred fail an exact
two-sided binomial sign test at the chosen significance level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binomtest

from .correlations import BL_CONSTANT, bl_drag_logsq
from .profile import DomainError
from .scaling import length_scale

__all__ = [
    "DragSample",
    "ComparisonReport",
    "MissingReynoldsError",
    "LambdaThetaRow",
    "sign_test",
    "evaluate",
    "figure_table",
    "lambda_theta_table",
    "prediction_columns",
    "synth_dragset",
    "SIGNIFICANCE",
]

SIGNIFICANCE = 0.05
# relative residuals this small are counted as ties in the sign test
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class DragSample:
    cf: float
    re_eff: float | None = None
    re_theta: float | None = None
    source: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.cf) and self.cf > 0):
            raise ValueError(f"cf must be positive, got {self.cf!r} ({self.source})")
        if self.re_eff is None and self.re_theta is None:
            raise ValueError(f"sample {self.source!r} has neither re_eff nor re_theta")

    def reynolds(self, kind):
        return getattr(self, kind)


@dataclass(frozen=True)
class ComparisonReport:
    correlation: object
    residuals: tuple[float, ...]
    mean_rel: float
    rms_rel: float
    n_pos: int
    n_neg: int
    p_sign: float
    systematic: bool
    alpha: float = SIGNIFICANCE

    @property
    def n(self):
        return len(self.residuals)


class MissingReynoldsError(ValueError):
    def __init__(self, kind, sources):
        self.kind = kind
        self.sources = list(sources)
        super().__init__(f"samples lack {kind}: " + ", ".join(repr(s) for s in self.sources))


def sign_test(n_pos: int, n_neg: int) -> float:
    """Exact two-sided binomial sign-test p-value (1 when there are no signs)."""
    n = n_pos + n_neg
    if n == 0:
        return 1.0
    return float(binomtest(n_pos, n, 0.5, alternative="two-sided").pvalue)


def _arguments(samples, corr):
    kind = corr.reynolds
    missing = [s.source for s in samples if s.reynolds(kind) is None]
    if missing:
        raise MissingReynoldsError(kind, missing)
    return np.array([s.reynolds(kind) for s in samples], dtype=float)


def evaluate(samples, corr, alpha: float = SIGNIFICANCE) -> ComparisonReport:
    """Residual statistics of ``samples`` against a single correlation."""
    samples = list(samples)
    if not samples:
        raise ValueError("no samples")
    re = _arguments(samples, corr)
    pred = np.array([corr(r) for r in re])
    obs = np.array([s.cf for s in samples])
    resid = obs / pred - 1.0
    resid[np.abs(resid) <= ZERO_TOL] = 0.0
    n_pos = int(np.count_nonzero(resid > 0))
    n_neg = int(np.count_nonzero(resid < 0))
    p = sign_test(n_pos, n_neg)
    return ComparisonReport(
        correlation=corr,
        residuals=tuple(float(r) for r in resid),
        mean_rel=float(resid.mean()),
        rms_rel=float(np.sqrt(np.mean(resid ** 2))),
        n_pos=n_pos,
        n_neg=n_neg,
        p_sign=p,
        systematic=p < alpha,
        alpha=alpha,
    )


def prediction_columns(corrs):
    """Column names cf_pred_<tag>, numbered when a tag repeats."""
    names = []
    seen = {}
    for c in corrs:
        seen[c.tag] = seen.get(c.tag, 0) + 1
    count = {}
    for c in corrs:
        if seen[c.tag] > 1:
            count[c.tag] = count.get(c.tag, 0) + 1
            names.append(f"cf_pred_{c.tag}{count[c.tag]}")
        else:
            names.append(f"cf_pred_{c.tag}")
    return names


def figure_table(samples, corrs=()):
    """
    Plot-ready rows: source, re_eff, re_theta, cf_obs and one prediction
    per correlation.

    Rows are sorted by re_eff when every sample has it, else by re_theta.
    Absent Reynolds values are None.
    """
    samples = list(samples)
    corrs = list(corrs)
    preds = [[corr(r) for r in _arguments(samples, corr)] for corr in corrs]
    names = prediction_columns(corrs)
    rows = []
    for i, s in enumerate(samples):
        row = {"source": s.source, "re_eff": s.re_eff, "re_theta": s.re_theta, "cf_obs": s.cf}
        for name, col in zip(names, preds):
            row[name] = float(col[i])
        rows.append(row)
    key = "re_eff" if all(s.re_eff is not None for s in samples) else "re_theta"
    if key == "re_theta" and not all(s.re_theta is not None for s in samples):
        # mixed coverage: fall back to whichever argument is present
        return sorted(rows, key=lambda r: r["re_eff"] if r["re_eff"] is not None else r["re_theta"])
    return sorted(rows, key=lambda r: r[key])


@dataclass(frozen=True)
class LambdaThetaRow:
    source: str
    length_scale: float
    theta: float
    ratio: float | None
    re_eff: float
    re_theta: float


def lambda_theta_table(profiles, re_results, thetas):
    """
    One row per profile relating the wall-layer length scale to the
    momentum thickness.  ``thetas`` holds (theta, re_theta) pairs; the
    ratio is None where theta is zero.
    """
    profiles, re_results, thetas = list(profiles), list(re_results), list(thetas)
    if not len(profiles) == len(re_results) == len(thetas):
        raise ValueError("profiles, fits and thetas must have equal length")
    rows = []
    for p, res, (theta, re_theta) in zip(profiles, re_results, thetas):
        lam = res.length_scale
        if lam is None:
            lam = length_scale(res.re_eff, p.U_inf, p.nu)
        ratio = lam / theta if theta != 0 else None
        rows.append(LambdaThetaRow(p.name, lam, theta, ratio, res.re_eff, re_theta))
    return rows


def synth_dragset(C=BL_CONSTANT, n=40, re_lo=1e5, re_hi=1e8, noise_rel=0.03,
                  seed=0, source="synth"):
    """
    Drag samples cf = C/ln(Re)**2 * (1 + d) with Re log-uniform in
    [re_lo, re_hi] and d uniform in [-noise_rel, noise_rel].

    Draws come from numpy's PCG64 generator: n log-Reynolds values first,
    then n noise values.
    """
    if not math.e < re_lo < re_hi:
        raise DomainError(f"need e < re_lo < re_hi, got {re_lo!r}, {re_hi!r}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if not 0 <= noise_rel < 1:
        raise DomainError(f"noise_rel must lie in [0, 1), got {noise_rel!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    re = np.exp(rng.uniform(math.log(re_lo), math.log(re_hi), n))
    d = rng.uniform(-noise_rel, noise_rel, n)
    return [DragSample(cf=bl_drag_logsq(float(r), C) * (1.0 + float(e)), re_eff=float(r),
                       source=f"{source}{i:03d}")
            for i, (r, e) in enumerate(zip(re, d))]
