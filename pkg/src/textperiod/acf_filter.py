"""Validation of period hints against the circular ACF curve.

Each hint k gets a lag window halfway to its neighboring candidate periods
N/(k-1) and N/(k+1). A two-segment linear regression is fit over every
split of the window; the split minimizing total squared error must form a
hill (left slope above right slope, normalized angle gap above a small
threshold) for the hint to survive. Accepted hints are refined to the
nearest ACF local maximum: the argmax of a lightly smoothed ACF inside the
window, which is robust to noise micro-maxima on flat-topped hills.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hints import PeriodHint
from .spectrum import AcfCurve, acf, half_spectrum_size

DELTA_THETA_MIN = 0.01
MIN_WINDOW = 3  # smallest splittable window: both sides of the split get 2 points


def ols_line(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line fit; returns (slope, intercept, sse)."""
    xm = xs.mean()
    ym = ys.mean()
    dx = xs - xm
    slope = float(dx @ (ys - ym) / (dx @ dx))
    intercept = float(ym - slope * xm)
    resid = ys - (intercept + slope * xs)
    return slope, intercept, float(resid @ resid)


@dataclass(frozen=True)
class ValidatedPeriod:
    """A hint that passed the hill test, with its refined integer period."""

    source_hint: PeriodHint
    refined_period: int
    slope_left: float
    slope_right: float
    delta_theta: float
    window: tuple[int, int]


def search_window(n: int, k: int) -> tuple[int, int]:
    """Integer lag window around period N/k, halfway to the adjacent candidates.

    Returns (lo, hi) intersected with the valid lag range [2, n-2]; lo > hi
    means the window is empty. For k = 1 the upper neighbor N/(k-1) is
    undefined and the longest observable lag n is used instead.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    if not 1 <= k <= half_spectrum_size(n):
        raise ValueError(f"k={k} out of range [1, {half_spectrum_size(n)}] for n={n}")
    tau = n / k
    tau_prev = n / (k - 1) if k > 1 else float(n)
    tau_next = n / (k + 1)
    lo = int(np.ceil((tau + tau_next) / 2 - 1))
    hi = int(np.floor((tau + tau_prev) / 2 + 1))
    return max(lo, 2), min(hi, n - 2)


def fit_split(curve: AcfCurve, window: tuple[int, int]) -> tuple[int, float, float]:
    """Best two-segment linear fit of the ACF over a lag window.

    For every interior split t the segments [lo, t] and [t, hi] are fit by
    least squares; returns (t_best, slope_left, slope_right) minimizing the
    summed squared residuals due to ties broken toward the smallest t.
    """
    lo, hi = window
    if not (0 <= lo and hi <= curve.n - 1 and hi - lo + 1 >= MIN_WINDOW):
        raise ValueError(f"window {window} too short or out of range (need >= {MIN_WINDOW} lags)")
    lags = np.arange(lo, hi + 1, dtype=float)
    vals = curve.values[lo : hi + 1]
    best_sse = np.inf
    best = None
    for t in range(lo + 1, hi):
        i = t - lo
        sl, _, el = ols_line(lags[: i + 1], vals[: i + 1])
        sr, _, er = ols_line(lags[i:], vals[i:])
        if el + er < best_sse:
            best_sse = el + er
            best = (t, sl, sr)
    return best


def refine_to_acf_peak(curve: AcfCurve, window: tuple[int, int]) -> int:
    """Lag of the ACF maximum inside the window, after light smoothing.

    The smoothing half-width scales with the window so that narrow windows
    are left nearly untouched while wide ones suppress noise micro-maxima.
    ACF is periodic in the lag, so the moving average wraps circularly.
    """
    lo, hi = window
    h = max(1, (hi - lo) // 6)
    kernel = np.full(2 * h + 1, 1.0 / (2 * h + 1))
    padded = np.concatenate((curve.values[-h:], curve.values, curve.values[:h]))
    smoothed = np.convolve(padded, kernel, mode="valid")
    return lo + int(np.argmax(smoothed[lo : hi + 1]))


def acf_filtering(
    x,
    hints: list[PeriodHint],
    *,
    delta_theta: float = DELTA_THETA_MIN,
    diagnostics: list[str] | None = None,
) -> list[ValidatedPeriod]:
    """Validate hints on the ACF of x and return refined integer periods.

    A hint is accepted iff its best split forms a hill: slope_left >
    slope_right and |theta_L - theta_R| > delta_theta, where theta =
    arctan(slope) / (pi/2). Hints with windows too short to split are
    dropped (reported through `diagnostics` when given). Duplicate refined
    periods keep the most powerful source hint; output is ordered by
    descending refined period.
    """
    if not hints:
        return []
    curve = acf(x)
    by_period: dict[int, ValidatedPeriod] = {}
    for hint in hints:
        window = search_window(curve.n, hint.k)
        lo, hi = window
        if hi - lo + 1 < MIN_WINDOW:
            if diagnostics is not None:
                diagnostics.append(
                    f"hint k={hint.k} (period {hint.period:.2f}): window [{lo}, {hi}] "
                    "too short to validate; dropped"
                )
            continue
        _, slope_left, slope_right = fit_split(curve, window)
        dtheta = abs(np.arctan(slope_left) - np.arctan(slope_right)) / (np.pi / 2)
        if not (slope_left > slope_right and dtheta > delta_theta):
            continue
        refined = refine_to_acf_peak(curve, window)
        vp = ValidatedPeriod(
            source_hint=hint,
            refined_period=refined,
            slope_left=float(slope_left),
            slope_right=float(slope_right),
            delta_theta=float(dtheta),
            window=window,
        )
        kept = by_period.get(refined)
        if kept is None or hint.power > kept.source_hint.power:
            by_period[refined] = vp
    return sorted(by_period.values(), key=lambda v: -v.refined_period)
