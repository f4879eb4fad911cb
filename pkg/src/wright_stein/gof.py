"""Sample-based Stein-discrepancy goodness-of-fit statistics.

For each test function h the engine solves the Stein equation once, then
averages (A f_h)(X_i) = f_h''(X_i) - (1/3) X_i f_h(X_i) over the sample.
Under the target law every such mean vanishes in expectation, so the
standardized statistics behave like standard normals; the verdict thresholds
(4 to accept, 5 to reject, gap inconclusive) are deliberate crude
multiple-testing slack for a family of at most 16 functions.

The symmetric engine additionally tests the sign-balance condition
P(X >= 0) = 1/2 with a binomial z-score; matching |X| alone is not enough
to identify the symmetric law, so a lopsided sign split rejects on its own.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError
from .numerics import DEFAULT_CONFIG, QuadratureConfig
from .mwright import SampleSet
from .stein import TestFunction, default_grid, solve_stein, solve_stein_sym

__all__ = [
    "FunctionStat",
    "SignBalance",
    "DiscrepancyReport",
    "default_test_functions",
    "discrepancy",
    "discrepancy_sym",
    "ACCEPT_THRESHOLD",
    "REJECT_THRESHOLD",
]

ACCEPT_THRESHOLD = 4.0
REJECT_THRESHOLD = 5.0
SIGN_Z_ACCEPT = 3.0
SIGN_Z_REJECT = 5.0
MIN_SAMPLES = 100
CLIP_WARN_FRACTION = 0.01


@dataclass(frozen=True)
class FunctionStat:
    label: str
    mean: float
    std_error: float
    standardized: float


@dataclass(frozen=True)
class SignBalance:
    fraction_nonneg: float
    z_score: float


@dataclass(frozen=True)
class DiscrepancyReport:
    per_function: tuple
    max_standardized: float
    n: int
    clipped: int
    clipped_warning: bool
    verdict: str  # consistent | rejected | inconclusive
    sign_balance: SignBalance | None = None
    at_zero: int = 0

    def to_table(self) -> str:
        buf = io.StringIO()
        buf.write(f"{'label':<12} {'mean':>14} {'std_error':>14} {'standardized':>14}\n")
        for s in self.per_function:
            buf.write(
                f"{s.label:<12} {s.mean:>14.6e} {s.std_error:>14.6e} "
                f"{s.standardized:>14.4f}\n"
            )
        buf.write(f"n = {self.n}, clipped = {self.clipped}")
        if self.clipped_warning:
            buf.write("  [warning: clipped fraction > 1%]")
        buf.write("\n")
        if self.sign_balance is not None:
            buf.write(
                f"sign balance: fraction_nonneg = {self.sign_balance.fraction_nonneg:.6f}, "
                f"z = {self.sign_balance.z_score:.3f}\n"
            )
            buf.write(f"at_zero = {self.at_zero}\n")
        buf.write(f"max standardized = {self.max_standardized:.4f}\n")
        buf.write(f"verdict: {self.verdict}\n")
        return buf.getvalue()

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("label,mean,std_error,standardized\n")
        for s in self.per_function:
            buf.write(
                f"{s.label},{s.mean:.17g},{s.std_error:.17g},{s.standardized:.17g}\n"
            )
        buf.write(f"# n={self.n}\n")
        buf.write(f"# clipped={self.clipped}\n")
        if self.sign_balance is not None:
            buf.write(
                f"# sign_balance fraction_nonneg={self.sign_balance.fraction_nonneg:.17g} "
                f"z={self.sign_balance.z_score:.17g}\n"
            )
            buf.write(f"# at_zero={self.at_zero}\n")
        buf.write(f"# verdict={self.verdict}\n")
        return buf.getvalue()


def _family() -> list[TestFunction]:
    fns = [
        TestFunction(np.cos, 1.0, "cos", even=True),
        TestFunction(np.sin, 1.0, "sin", even=False),
        TestFunction(lambda x: np.cos(2 * x), 1.0, "cos2", even=True),
        TestFunction(lambda x: np.sin(2 * x), 1.0, "sin2", even=False),
        TestFunction(lambda x: np.cos(3 * x), 1.0, "cos3", even=True),
        TestFunction(lambda x: np.sin(3 * x), 1.0, "sin3", even=False),
        TestFunction(lambda x: np.exp(-np.abs(x)), 1.0, "exp1", even=True),
        TestFunction(lambda x: np.exp(-2 * np.abs(x)), 1.0, "exp2", even=True),
        TestFunction(lambda x: np.exp(-3 * np.abs(x)), 1.0, "exp3", even=True),
        TestFunction(lambda x: 1.0 / (1.0 + x * x), 1.0, "invquad", even=True),
        TestFunction(np.arctan, math.pi / 2, "atan", even=False),
        TestFunction(lambda x: np.cos(4 * x), 1.0, "cos4", even=True),
        TestFunction(lambda x: np.sin(4 * x), 1.0, "sin4", even=False),
        TestFunction(lambda x: np.exp(-4 * np.abs(x)), 1.0, "exp4", even=True),
        TestFunction(lambda x: (1.0 + x * x) ** -2, 1.0, "invquad2", even=True),
        TestFunction(lambda x: x / (1.0 + x * x), 0.5, "ratio", even=False),
    ]
    return fns


def default_test_functions(k: int) -> list[TestFunction]:
    """First k members of the fixed documented family (1 <= k <= 16).

    Order: cos(jx), sin(jx) for j = 1, 2, 3; exp(-j|x|) for j = 1, 2, 3;
    1/(1+x^2); arctan; then cos(4x), sin(4x), exp(-4|x|), 1/(1+x^2)^2,
    x/(1+x^2).  Sup norms are exact.  The exponentials carry |x| so they
    stay bounded on the whole line: on the half-line domain this is the
    same function as exp(-jx), and the symmetric engine requires bounded h.
    """
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= 16):
        raise RangeError(f"default_test_functions requires 1 <= k <= 16, got {k}")
    return _family()[: int(k)]


def _sample_values(samples) -> np.ndarray:
    if isinstance(samples, SampleSet):
        return np.asarray(samples.values, dtype=float)
    return np.asarray(samples, dtype=float)


def _operator_means(vals, hs, symmetric, grid, cfg):
    n = vals.size
    x_cap = float(np.max(np.abs(grid)))
    inside = np.abs(vals) <= x_cap
    clipped = int(n - np.count_nonzero(inside))
    vin = vals[inside]
    w = np.abs(vin) if symmetric else vin

    stats = []
    for h in hs:
        if symmetric:
            sol = solve_stein_sym(h, grid, cfg)
        else:
            sol = solve_stein(h, grid, cfg)
        f_at, fpp_at = sol.interpolators()
        av = np.zeros(n)
        av[inside] = fpp_at(vin) - (w / 3.0) * f_at(vin)
        mean = float(np.mean(av))
        sd = float(np.std(av, ddof=1)) if n >= 2 else 0.0
        se = sd / math.sqrt(n)
        if se > 0:
            standardized = abs(mean) / se
        else:
            standardized = 0.0 if mean == 0 else math.inf
        stats.append(FunctionStat(h.label, mean, se, standardized))
    return stats, clipped


def discrepancy(
    samples,
    hs,
    grid: np.ndarray | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> DiscrepancyReport:
    """Half-line Stein discrepancy of a non-negative sample against M_{1/3}."""
    vals = _sample_values(samples)
    if vals.size < MIN_SAMPLES:
        raise DomainError(f"discrepancy requires n >= {MIN_SAMPLES}, got {vals.size}")
    if np.any(vals < 0):
        raise DomainError("half-line discrepancy requires non-negative samples")
    if grid is None:
        grid = default_grid()
    stats, clipped = _operator_means(vals, hs, False, grid, cfg)
    max_std = max((s.standardized for s in stats), default=0.0)
    if max_std > REJECT_THRESHOLD:
        verdict = "rejected"
    elif max_std < ACCEPT_THRESHOLD:
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    return DiscrepancyReport(
        per_function=tuple(stats),
        max_standardized=max_std,
        n=int(vals.size),
        clipped=clipped,
        clipped_warning=clipped > CLIP_WARN_FRACTION * vals.size,
        verdict=verdict,
    )


def discrepancy_sym(
    samples,
    hs,
    grid: np.ndarray | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> DiscrepancyReport:
    """Symmetric Stein discrepancy against the symmetrized M_{1/3}.

    Combines the operator means with the sign-balance z-score; the latter is
    a necessary condition on its own, so a grossly unbalanced sign split
    rejects even when every operator mean vanishes.  Samples exactly at 0
    use the 0+ branch of f''; their count is reported.
    """
    vals = _sample_values(samples)
    if vals.size < MIN_SAMPLES:
        raise DomainError(f"discrepancy_sym requires n >= {MIN_SAMPLES}, got {vals.size}")
    if grid is None:
        grid = default_grid(symmetric=True)
    n = vals.size
    frac = float(np.count_nonzero(vals >= 0)) / n
    z = (frac - 0.5) * 2.0 * math.sqrt(n)
    at_zero = int(np.count_nonzero(vals == 0.0))

    stats, clipped = _operator_means(vals, hs, True, grid, cfg)
    max_std = max((s.standardized for s in stats), default=0.0)
    if max_std > REJECT_THRESHOLD or abs(z) > SIGN_Z_REJECT:
        verdict = "rejected"
    elif max_std < ACCEPT_THRESHOLD and abs(z) < SIGN_Z_ACCEPT:
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    return DiscrepancyReport(
        per_function=tuple(stats),
        max_standardized=max_std,
        n=n,
        clipped=clipped,
        clipped_warning=clipped > CLIP_WARN_FRACTION * n,
        verdict=verdict,
        sign_balance=SignBalance(frac, z),
        at_zero=at_zero,
    )
