"""Self-contained special function kernel.

Everything here is series- or quadrature-based and tuned for the moderate
arguments this package needs (|z| up to about 50).  Series stop on a
relative tail below 1e-16 and abort with ConvergenceError past a hard cap
of 10000 terms; there are no reflection formulas and no asymptotic
branches.  The Jacobi evaluator deliberately runs the three-term recurrence
as a formal identity in the parameters, so it stays valid for the complex
and below -1 parameter values required by the disk-representation
expansions, a regime standard libraries refuse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError

MAX_TERMS = 10000
REL_TAIL = 1e-16

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)) for k = 1..8; enough for 1e-13 accuracy once the
# argument has been shifted above 12
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 via an upward shift and the Stirling series."""
    if x <= 0:
        raise DomainError("log_gamma needs x > 0")
    shift = 0.0
    while x < 12.0:
        shift += math.log(x)
        x += 1.0
    z = 1.0 / (x * x)
    s = _STIRLING[-1]
    for c in _STIRLING[-2::-1]:
        s = s * z + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_TWO_PI + s / x - shift


def gamma(x: float) -> float:
    """Gamma(x) for x > 0."""
    return math.exp(log_gamma(x))


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function I_nu(x) by the ascending series.

    Valid for nu >= 0, x >= 0.  The leading factor (x/2)^nu / Gamma(nu+1)
    is assembled in the log domain so small x and large nu cannot
    underflow prematurely.
    """
    if nu < 0 or x < 0:
        raise DomainError("bessel_i needs nu >= 0 and x >= 0")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    log_lead = nu * math.log(0.5 * x) - log_gamma(nu + 1.0)
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, MAX_TERMS):
        term *= q / (k * (nu + k))
        total += term
        if term <= REL_TAIL * total:
            return math.exp(log_lead + math.log(total))
    raise ConvergenceError("bessel_i series did not converge")


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel function K_nu(x) for nu >= 0, x > 0.

    Evaluates the integral of exp(-x cosh t) cosh(nu t) over t >= 0 by
    composite Gauss-Legendre panels.  The integrand is analytic and decays
    double-exponentially, so this route is uniform in nu (no special
    handling at integer orders) and accurate to roughly 1e-13 relative
    across the x <= 50 range this package uses.
    """
    if nu < 0:
        raise DomainError("bessel_k needs nu >= 0")
    if x <= 0:
        raise DomainError("bessel_k needs x > 0")
    upper = 1.0
    while x * (math.cosh(upper) - 1.0) - nu * upper < 60.0:
        upper += 0.5
        if upper > 80.0:
            raise ConvergenceError("bessel_k truncation search failed")
    base = gauss_legendre(24)
    n_panels = max(8, int(2.0 * upper))
    edges = np.linspace(0.0, upper, n_panels + 1)
    half = 0.5 * (edges[1] - edges[0])
    centers = 0.5 * (edges[1:] + edges[:-1])
    t = centers[:, None] + half * base.nodes[None, :]
    w = half * base.weights
    ch = x * np.cosh(t)
    vals = np.exp(nu * t - ch) + np.exp(-nu * t - ch)
    return float(0.5 * np.sum(vals @ w))


def jacobi_p(n: int, a, b, x):
    """Jacobi polynomial P_n^(a,b)(x) by the forward three-term recurrence.

    The recurrence is treated as a formal polynomial identity in (a, b),
    so the parameters may be complex or lie at or below -1.  x may be a
    scalar or a numpy array.
    """
    if n < 0:
        raise DomainError("jacobi_p needs n >= 0")
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return one
    p_prev = one
    p = (a + 1) * one + (a + b + 2) * (x - 1) / 2
    for m in range(2, n + 1):
        c0 = 2 * m + a + b
        c1 = 2 * m * (m + a + b) * (c0 - 2)
        c2 = (c0 - 1) * (c0 * (c0 - 2) * x + a * a - b * b)
        c3 = 2 * (m + a - 1) * (m + b - 1) * c0
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return p


def _near_nonpositive_int(value) -> bool:
    v = complex(value)
    return (abs(v.imag) < 1e-13 and v.real < 0.5
            and abs(v.real - round(v.real)) < 1e-12)


def hyp0f1(b, z) -> complex:
    """Confluent limit function 0F1(; b; z) by the ascending series."""
    if _near_nonpositive_int(b):
        raise DomainError(f"hyp0f1 pole at b={b}")
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    small = 0
    for k in range(MAX_TERMS):
        term = term * z / ((b + k) * (k + 1))
        total += term
        small = small + 1 if abs(term) <= REL_TAIL * max(abs(total), 1e-300) else 0
        if small >= 2:
            return total
    raise ConvergenceError("hyp0f1 series did not converge")


def hyp1f1(a, b, z) -> complex:
    """Kummer confluent function 1F1(a; b; z) by the ascending series.

    Parameters and argument may be complex.  A nonpositive-integer b is a
    pole unless the a series terminates first.  Accuracy degrades through
    cancellation for strongly negative Re z; the package only evaluates
    moderate arguments.
    """
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    small = 0
    for k in range(MAX_TERMS):
        if abs(complex(a + k)) < 1e-13:
            return total
        if abs(complex(b + k)) < 1e-13:
            raise DomainError(f"hyp1f1 pole at b={b}")
        term = term * (a + k) * z / ((b + k) * (k + 1))
        total += term
        small = small + 1 if abs(term) <= REL_TAIL * max(abs(total), 1e-300) else 0
        if small >= 2:
            return total
    raise ConvergenceError("hyp1f1 series did not converge")


def hyp2f1(a, b, c, z) -> complex:
    """Gauss hypergeometric 2F1(a, b; c; z).

    Terminating cases (a or b a nonpositive integer) are summed exactly for
    any z.  Otherwise the series needs |z| < 1; the single boundary point
    z = 1 with real parameters and c - a - b > 0 is evaluated through the
    Gamma-ratio closed form.
    """
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    terminating = _near_nonpositive_int(a) or _near_nonpositive_int(b)
    if not terminating and abs(z) >= 1.0:
        if abs(z - 1.0) < 1e-14:
            return _hyp2f1_at_one(a, b, c)
        raise ConvergenceError("hyp2f1 series needs |z| < 1 unless terminating")
    small = 0
    for k in range(MAX_TERMS):
        if abs(complex(a + k)) < 1e-13 or abs(complex(b + k)) < 1e-13:
            return total
        if abs(complex(c + k)) < 1e-13:
            raise DomainError(f"hyp2f1 pole at c={c}")
        term = term * (a + k) * (b + k) * z / ((c + k) * (k + 1))
        total += term
        small = small + 1 if abs(term) <= REL_TAIL * max(abs(total), 1e-300) else 0
        if small >= 2:
            return total
    raise ConvergenceError("hyp2f1 series did not converge")


def _hyp2f1_at_one(a, b, c) -> complex:
    for value in (a, b, c):
        if abs(complex(value).imag) > 1e-13:
            raise ConvergenceError("hyp2f1 at z=1 supports real parameters only")
    a, b, c = complex(a).real, complex(b).real, complex(c).real
    s = c - a - b
    if s <= 0:
        raise ConvergenceError("hyp2f1 diverges at z=1 for c - a - b <= 0")
    args = (c, s, c - a, c - b)
    if any(v <= 0 for v in args):
        raise ConvergenceError("hyp2f1 at z=1 needs positive Gamma arguments")
    return complex(math.exp(log_gamma(c) + log_gamma(s)
                            - log_gamma(c - a) - log_gamma(c - b)))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on (-1, 1); immutable once built."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def scaled(self, a: float, b: float):
        """Nodes and weights mapped to the interval (a, b)."""
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        return mid + half * self.nodes, half * self.weights

    def integrate(self, f, a: float, b: float) -> float:
        x, w = self.scaled(a, b)
        return float(np.dot(f(x), w))


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule of the given order, 2 <= order <= 512.

    Nodes start from the Chebyshev-like estimate and are polished by Newton
    iteration on the Legendre recurrence; weights follow from the
    derivative values.  The rule is symmetrized so paired nodes cancel
    exactly.
    """
    if not 2 <= order <= 512:
        raise DomainError("gauss_legendre supports orders 2..512")
    k = np.arange(order)
    x = np.cos(math.pi * (k + 0.75) / (order + 0.5))
    dp = np.zeros_like(x)
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for m in range(2, order + 1):
            p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
        dp = order * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise ConvergenceError("gauss_legendre Newton iteration stalled")
    p0 = np.ones_like(x)
    p1 = x.copy()
    for m in range(2, order + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    dp = order * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    nodes = x[::-1].copy()
    weights = w[::-1].copy()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes=nodes, weights=weights, order=order)
