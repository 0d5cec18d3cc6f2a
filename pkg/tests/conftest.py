"""Shared independent oracles: brute-force DFT, direct Lomb-Scargle, direct ACF.

These deliberately avoid the FFT paths used by the package so that
equivalence tests check two genuinely different routes.
"""
import numpy as np
import pytest


def brute_dft_magnitudes(x):
    """O(N^2) DFT magnitudes of the mean-removed sequence, k = 1 .. ceil((N-1)/2)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    xt = x - x.mean()
    kmax = int(np.ceil((n - 1) / 2))
    ns = np.arange(n)
    mags = np.empty(kmax)
    for k in range(1, kmax + 1):
        re = np.sum(xt * np.cos(2 * np.pi * k * ns / n))
        im = -np.sum(xt * np.sin(2 * np.pi * k * ns / n))
        mags[k - 1] = np.hypot(re, im)
    return mags


def lomb_scargle_direct(x):
    """Textbook Lomb-Scargle power at omega = 2 pi k / N on the mean-removed sequence."""
    x = np.asarray(x, dtype=float)
    n = x.size
    t = np.arange(n, dtype=float)
    xt = x - x.mean()
    kmax = int(np.ceil((n - 1) / 2))
    out = np.empty(kmax)
    for k in range(1, kmax + 1):
        w = 2 * np.pi * k / n
        tau = np.arctan2(np.sum(np.sin(2 * w * t)), np.sum(np.cos(2 * w * t))) / (2 * w)
        ct = np.cos(w * (t - tau))
        st = np.sin(w * (t - tau))
        cc = ct @ ct
        ss = st @ st
        term_c = (xt @ ct) ** 2 / cc if cc > 1e-9 else 0.0
        term_s = (xt @ st) ** 2 / ss if ss > 1e-9 else 0.0
        out[k - 1] = 0.5 * (term_c + term_s)
    return out


def acf_direct(x):
    """O(N^2) circular autocorrelation of the mean-removed sequence."""
    x = np.asarray(x, dtype=float)
    n = x.size
    xt = x - x.mean()
    return np.array([np.sum(xt * np.roll(xt, -tau)) / n for tau in range(n)])


def exhaustive_split(values, lo, hi):
    """Brute-force two-segment SSE minimization over every split of [lo, hi]."""
    lags = np.arange(lo, hi + 1, dtype=float)
    vals = np.asarray(values, dtype=float)[lo : hi + 1]

    def sse(xs, ys):
        slope, intercept = np.polyfit(xs, ys, 1)
        r = ys - (intercept + slope * xs)
        return float(r @ r), float(slope)

    best = None
    for t in range(lo + 1, hi):
        i = t - lo
        el, sl = sse(lags[: i + 1], vals[: i + 1])
        er, sr = sse(lags[i:], vals[i:])
        if best is None or el + er < best[0]:
            best = (el + er, t, sl, sr)
    return best[1], best[2], best[3]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
