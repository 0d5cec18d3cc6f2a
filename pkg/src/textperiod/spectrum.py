"""Periodograms and the circular autocorrelation function.

Both transforms operate on the mean-removed sequence. The half-spectrum
covers k = 1 .. ceil((N-1)/2) at frequencies k/N cycles per token; the DC
bin is excluded so that a nonzero mean cannot masquerade as a period.

Backends:

* ``classic``      -- DFT magnitudes ||X_k||.
* ``lomb_scargle`` -- standard Lomb-Scargle power at the same grid. On a
  uniform integer grid this equals ||X_k||^2 / N exactly (and
  ||X_k||^2 / 2N at the Nyquist bin, where the sine term vanishes), so it
  is evaluated through the FFT. Tests verify the identity against the
  direct O(N * Nf) evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BACKENDS = ("classic", "lomb_scargle")


@dataclass(frozen=True)
class Periodogram:
    """Half-spectrum power estimates over frequencies k/N, k = 1 .. ceil((N-1)/2)."""

    n: int
    powers: np.ndarray
    frequencies: np.ndarray
    backend: str

    def periods(self) -> np.ndarray:
        """Candidate periods N/k in tokens, aligned with powers."""
        return 1.0 / self.frequencies


@dataclass(frozen=True)
class AcfCurve:
    """Circular autocorrelation values at lags 0 .. N-1 of the mean-removed sequence."""

    n: int
    values: np.ndarray


def _as_signal(x, min_len: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < min_len:
        raise ValueError(f"input must be a 1-d sequence with at least {min_len} samples")
    if not np.all(np.isfinite(x)):
        raise ValueError("input contains non-finite values")
    return x


def half_spectrum_size(n: int) -> int:
    return int(np.ceil((n - 1) / 2))


def periodogram(x, backend: str = "classic") -> Periodogram:
    """Spectral power of the mean-removed sequence on the grid f_k = k/N.

    Deterministic; requires N >= 4 and finite input.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    x = _as_signal(x, 4)
    n = x.size
    kmax = half_spectrum_size(n)
    mag = np.abs(np.fft.rfft(x - x.mean()))[1 : kmax + 1]
    if backend == "classic":
        powers = mag
    else:
        powers = mag**2 / n
        if n % 2 == 0:
            # Nyquist: sin(pi*t) == 0 for integer t, only the cosine term remains.
            powers[-1] = mag[-1] ** 2 / (2 * n)
    freqs = np.arange(1, kmax + 1) / n
    return Periodogram(n=n, powers=powers, frequencies=freqs, backend=backend)


def acf(x) -> AcfCurve:
    """Circular autocorrelation of the mean-removed sequence.

    values[tau] = (1/N) * sum_n xt(n) * xt((n + tau) mod N), tau = 0 .. N-1.
    """
    x = _as_signal(x, 2)
    n = x.size
    xt = x - x.mean()
    vals = np.fft.ifft(np.abs(np.fft.fft(xt)) ** 2).real / n
    return AcfCurve(n=n, values=vals)
