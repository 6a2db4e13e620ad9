"""Taylor coefficients of analytic functions, extracted from ring samples."""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def taylor_coefficients(f, n_max, radius=1.0, samples=None):
    """Coefficients t_0 .. t_n_max of f about 0, via FFT on |w| = radius.

    Aliasing folds t_{n + samples} * radius**samples back onto t_n, so the
    radius must lie inside the disk of analyticity and samples must stay
    well above n_max.  The default sample count (a power of two, at least
    8 * (n_max + 1)) keeps the fold-back negligible for functions whose
    coefficients do not grow along the ring.
    """
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    if not radius > 0.0:
        raise DomainError("ring radius must be positive")
    if samples is None:
        samples = 64
        while samples < 8 * (n_max + 1):
            samples *= 2
    elif samples <= n_max:
        raise DomainError("need more ring samples than coefficients")
    k = np.arange(samples)
    ring = radius * np.exp(2j * np.pi * k / samples)
    vals = np.array([f(w) for w in ring], dtype=complex)
    hat = np.fft.fft(vals) / samples
    return hat[: n_max + 1] / radius ** np.arange(n_max + 1, dtype=float)
