"""Position-space layer for the trigonometric Poschl-Teller box.

Everything lives on the open interval (0, pi*a): the confining potential,
its superpotential W = -psi_0'/psi_0, normalized bound states of
H = -d^2/dx^2 + V and of the factorized partner H_+ = A^- A^+, plus the
finite-difference residuals and quadrature matrices used to check the
factorization numerically.  Energies scale as 1/a^2 with the box size;
the a = 1 default reproduces E_n = n (n + kappa + kappa').
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .specfun import gauss_legendre, jacobi_p, log_gamma

#: central-difference step for all finite-difference residuals
H_STEP = 1e-5
#: finite-difference grids stay this far from the walls so x +/- h is interior
FD_MARGIN = 10 * H_STEP
FD_POINTS = 2001
#: quadrature grids exclude the walls with this relative margin
QUAD_MARGIN = 1e-6


@dataclass(frozen=True)
class PTParameters:
    """Well strengths and box scale; the box is (0, pi*a)."""

    kappa: float
    kappa_prime: float
    a: float = 1.0

    def __post_init__(self):
        if not (self.kappa > 1 and self.kappa_prime > 1):
            raise DomainError("PTParameters requires kappa > 1 and kappa' > 1")
        if not self.a > 0:
            raise DomainError("PTParameters requires a > 0")

    @property
    def nu(self) -> float:
        return self.kappa + self.kappa_prime

    @property
    def box(self) -> float:
        return math.pi * self.a


@dataclass(frozen=True)
class GridFunction:
    """Sampled real function on a strictly increasing interior grid."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if xs.ndim != 1 or xs.shape != values.shape:
            raise DomainError("GridFunction needs matching 1-d xs and values")
        if xs.size and not (xs[0] > 0 and np.all(np.diff(xs) > 0)):
            raise DomainError("GridFunction grid must be positive and increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    def to_csv(self, path):
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["x", "value"])
            for x, v in zip(self.xs, self.values):
                writer.writerow([f"{x:.17g}", f"{v:.17g}"])


def interior_grid(p: PTParameters, n_points: int = 401, margin: float | None = None):
    """Uniform grid strictly inside the box, default margin 1e-6 * pi * a."""
    if n_points < 2:
        raise DomainError("interior_grid needs at least two points")
    if margin is None:
        margin = QUAD_MARGIN * p.box
    if not 0 < margin < 0.5 * p.box:
        raise DomainError("interior_grid margin must sit inside the box")
    return np.linspace(margin, p.box - margin, n_points)


def _interior(p: PTParameters, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x >= p.box):
        raise DomainError("x must lie strictly inside (0, pi*a)")
    return x


def _scalar_or_array(out):
    return float(out) if out.ndim == 0 else out


def potential(p: PTParameters, x):
    """Trigonometric well with the ground energy subtracted off."""
    x = _interior(p, x)
    u = x / (2.0 * p.a)
    quarter = 1.0 / (4.0 * p.a * p.a)
    k, kp = p.kappa, p.kappa_prime
    out = quarter * (k * (k - 1.0) / np.sin(u) ** 2
                     + kp * (kp - 1.0) / np.cos(u) ** 2) - quarter * p.nu ** 2
    return _scalar_or_array(out)


def superpotential(p: PTParameters, x):
    """W = -psi_0'/psi_0 = (1/2a) [kappa' tan(x/2a) - kappa cot(x/2a)]."""
    x = _interior(p, x)
    u = x / (2.0 * p.a)
    out = (p.kappa_prime * np.tan(u) - p.kappa / np.tan(u)) / (2.0 * p.a)
    return _scalar_or_array(out)


def partner_potential(p: PTParameters, x):
    """V_+ = W^2 + W', the well confining the partner states.

    Equals potential(kappa+1, kappa'+1) shifted up by (nu + 1)/a^2, which is
    what makes the partner spectrum (n + 1)(n + nu + 1).
    """
    x = _interior(p, x)
    u = x / (2.0 * p.a)
    w = (p.kappa_prime * np.tan(u) - p.kappa / np.tan(u)) / (2.0 * p.a)
    w_prime = (p.kappa_prime / np.cos(u) ** 2
               + p.kappa / np.sin(u) ** 2) / (4.0 * p.a * p.a)
    return _scalar_or_array(w * w + w_prime)


def energy(p: PTParameters, n: int) -> float:
    """E_n = n (n + nu) / a^2."""
    if n < 0:
        raise DomainError("energy needs n >= 0")
    return n * (n + p.nu) / (p.a * p.a)


def partner_energy(p: PTParameters, n: int) -> float:
    """e_n = (n + 1)(n + nu + 1) / a^2."""
    if n < 0:
        raise DomainError("partner_energy needs n >= 0")
    return (n + 1) * (n + p.nu + 1) / (p.a * p.a)


def _log_norm(p: PTParameters, n: int) -> float:
    # c_n = a Gamma(n+k+1/2) Gamma(n+k'+1/2) / [n! Gamma(n+k+k') (2n+k+k')]
    k, kp = p.kappa, p.kappa_prime
    return (math.log(p.a)
            + log_gamma(n + k + 0.5) + log_gamma(n + kp + 0.5)
            - log_gamma(n + 1.0) - log_gamma(n + k + kp)
            - math.log(2.0 * n + k + kp))


def eigenfunction(p: PTParameters, n: int, x):
    """Normalized bound state psi_n, vanishing like x^kappa at the left wall."""
    if not 0 <= n <= 50:
        raise DomainError("eigenfunction covers 0 <= n <= 50")
    x = _interior(p, x)
    u = x / (2.0 * p.a)
    shape = (np.cos(u) ** p.kappa_prime * np.sin(u) ** p.kappa
             * jacobi_p(n, p.kappa - 0.5, p.kappa_prime - 0.5, np.cos(x / p.a)))
    out = math.exp(-0.5 * _log_norm(p, n)) * shape
    return _scalar_or_array(np.asarray(out))


def partner_eigenfunction(p: PTParameters, n: int, x):
    """Normalized bound state theta_n of the partner well."""
    shifted = PTParameters(p.kappa + 1.0, p.kappa_prime + 1.0, p.a)
    return eigenfunction(shifted, n, x)


def _fd_grid(p: PTParameters, margin: float = FD_MARGIN):
    return np.linspace(margin, p.box - margin, FD_POINTS)


def _second_diff_margin(p: PTParameters) -> float:
    # second differences see the fourth derivative, which grows like
    # t^(kappa-4) toward a wall; soft exponents below 2 need more room
    # than the first-derivative margin to keep the truncation error down
    return max(FD_MARGIN, 0.01 * p.a)


def _grid_norm(values, xs) -> float:
    # trapezoid L2 norm; xs is uniform
    dx = xs[1] - xs[0]
    mass = float(np.dot(values, values)
                 - 0.5 * (values[0] ** 2 + values[-1] ** 2))
    return math.sqrt(max(mass * dx, 0.0))


def _lower_apply(p: PTParameters, n: int, xs):
    # A^- f = -f' - W f.  H = A^+ A^- fixes the pair only up to a joint
    # sign; this choice is the one that sends psi_{n+1} onto
    # +sqrt(E_{n+1}) theta_n when both families carry their positive
    # normalization constants.
    up = eigenfunction(p, n, xs + H_STEP)
    down = eigenfunction(p, n, xs - H_STEP)
    mid = eigenfunction(p, n, xs)
    return -(up - down) / (2.0 * H_STEP) - superpotential(p, xs) * mid


def factorization_residual(p: PTParameters, n: int):
    """Grid norms (r1, r2) of A^- psi_{n+1} - sqrt(E_{n+1}) theta_n and A^- psi_0.

    Derivatives are central differences with step H_STEP on a grid that
    keeps FD_MARGIN away from the walls; both residuals should come out
    finite-difference-limited, well under 1e-4.
    """
    if not 0 <= n <= 10:
        raise DomainError("factorization_residual covers 0 <= n <= 10")
    xs = _fd_grid(p)
    target = math.sqrt(energy(p, n + 1)) * partner_eigenfunction(p, n, xs)
    r1 = _grid_norm(_lower_apply(p, n + 1, xs) - target, xs)
    r2 = _grid_norm(_lower_apply(p, 0, xs), xs)
    return r1, r2


def schrodinger_residual(p: PTParameters, n: int) -> float:
    """Grid norm of (-psi_n'' + V psi_n)/E_n - psi_n, second differences."""
    if not 1 <= n <= 10:
        raise DomainError("schrodinger_residual covers 1 <= n <= 10")
    xs = _fd_grid(p, _second_diff_margin(p))
    up = eigenfunction(p, n, xs + H_STEP)
    mid = eigenfunction(p, n, xs)
    down = eigenfunction(p, n, xs - H_STEP)
    second = (up - 2.0 * mid + down) / (H_STEP * H_STEP)
    resid = (-second + potential(p, xs) * mid) / energy(p, n) - mid
    return _grid_norm(resid, xs)


def rayleigh_quotient(p: PTParameters, n: int) -> float:
    """<psi_n|H|psi_n> / <psi_n|psi_n> with finite-difference derivatives."""
    if not 0 <= n <= 10:
        raise DomainError("rayleigh_quotient covers 0 <= n <= 10")
    xs = _fd_grid(p, _second_diff_margin(p))
    up = eigenfunction(p, n, xs + H_STEP)
    mid = eigenfunction(p, n, xs)
    down = eigenfunction(p, n, xs - H_STEP)
    second = (up - 2.0 * mid + down) / (H_STEP * H_STEP)
    acted = -second + potential(p, xs) * mid
    dx = xs[1] - xs[0]
    num = float(np.dot(mid, acted) - 0.5 * (mid[0] * acted[0] + mid[-1] * acted[-1]))
    den = float(np.dot(mid, mid) - 0.5 * (mid[0] ** 2 + mid[-1] ** 2))
    return (num * dx) / (den * dx)


def _quad_nodes(p: PTParameters, order: int):
    margin = QUAD_MARGIN * p.box
    return gauss_legendre(order).scaled(margin, p.box - margin)


def gram_matrix(p: PTParameters, n_max: int, order: int = 200):
    """Quadrature Gram matrix of psi_0..psi_{n_max}; identity when exact."""
    if not 0 <= n_max <= 50:
        raise DomainError("gram_matrix covers 0 <= n_max <= 50")
    nodes, weights = _quad_nodes(p, order)
    rows = np.array([eigenfunction(p, n, nodes) for n in range(n_max + 1)])
    return rows @ (weights[:, None] * rows.T)


def _overlap_at(p: PTParameters, n_max: int, order: int):
    nodes, weights = _quad_nodes(p, order)
    psi = np.array([eigenfunction(p, n, nodes) for n in range(n_max + 1)])
    theta = np.array([partner_eigenfunction(p, m, nodes) for m in range(n_max + 1)])
    return psi @ (weights[:, None] * theta.T)


def overlap_matrix(p: PTParameters, n_max: int):
    """U_{nm} = integral of psi_n theta_m; rows approach unit norm as n_max grows.

    Returned complex for interface uniformity; the integrands are real, so
    every entry has zero imaginary part.
    """
    if not 0 <= n_max <= 20:
        raise DomainError("overlap_matrix covers 0 <= n_max <= 20")
    coarse = _overlap_at(p, n_max, 200)
    fine = _overlap_at(p, n_max, 260)
    drift = float(np.max(np.abs(fine - coarse)))
    if drift > 1e-9:
        raise ConvergenceError(f"overlap quadrature drift {drift:.3e} at n_max={n_max}")
    return fine.astype(complex)
