"""Annihilation-operator eigenstates with action identity and temporal stability.

The state attached to (z, alpha) has number-basis coefficients

    c_n = norm * z^n e^{-i alpha E_n} / sqrt(E(n)),   E(n) = E_1 E_2 ... E_n,

so a- |z, alpha> = z |z, alpha> and <H> = |z|^2 exactly.  The exposed
``norm_const`` follows the Bessel convention of the solvable-model family:
for level products E(n) = n! Gamma(n+nu+1) / Gamma(nu+1) it equals
sqrt(|z|^nu / I_nu(2|z|)), the prefactor paired with 1/sqrt(n! Gamma(n+nu+1))
denominators; harmonic reduces to e^{-|z|^2/2}.
"""

from __future__ import annotations

import dataclasses
import functools
import math

import numpy as np

from . import specfun
from .errors import ConvergenceError, DomainError, TruncationError
from .fockspace import FockVector
from .spectrum import CUSTOM, HARMONIC, SpectrumModel

_TAIL_CERT = 1e-12


def _auto_n_max(model: SpectrumModel, r: float) -> int:
    """Walk the series until terms are negligible against the running peak."""
    if model.kind == CUSTOM:
        return model.n_levels - 2
    log_r2 = 2.0 * math.log(r) if r > 0 else -math.inf
    log_term = 0.0
    peak = 0.0
    n = 0
    while n < 20000:
        n += 1
        e_n = model.energy(n)
        log_term += log_r2 - math.log(e_n)
        peak = max(peak, log_term)
        if log_term < peak + math.log(1e-40) and e_n > r * r:
            break
    return max(n, 12)


def gk_log_normalization(model: SpectrumModel, r: float, n_max: int | None = None) -> float:
    """log of S(r) = sum_n r^{2n} / E(n), the squared reciprocal normalization."""
    if r < 0:
        raise DomainError("radial argument must be nonnegative")
    if r == 0.0:
        return 0.0
    if n_max is None:
        n_max = _auto_n_max(model, r)
    logs = model.log_products(n_max)
    terms = 2.0 * np.arange(n_max + 1) * math.log(r) - logs
    m = terms.max()
    return float(m + math.log(np.exp(terms - m).sum()))


def gk_normalization(model: SpectrumModel, r: float, n_max: int | None = None) -> float:
    return math.exp(gk_log_normalization(model, r, n_max))


def gk_normalization_closed(model: SpectrumModel, r: float) -> float:
    """Closed form of S(r): e^{r^2} (harmonic) or Gamma(nu+1) I_nu(2r) / r^nu."""
    if r < 0:
        raise DomainError("radial argument must be nonnegative")
    if model.kind == HARMONIC:
        return math.exp(r * r)
    if model.kind == CUSTOM:
        raise DomainError("no closed normalization for tabulated spectra")
    nu = model.nu
    if r == 0.0:
        return 1.0
    log_val = (
        specfun.log_gamma(nu + 1.0)
        + math.log(specfun.bessel_i(nu, 2.0 * r))
        - nu * math.log(r)
    )
    return math.exp(log_val)


@dataclasses.dataclass(frozen=True)
class GKState:
    """Eigenstate of a- with its construction parameters."""

    z: complex
    alpha: float
    vector: FockVector
    norm_const: float

    @property
    def model(self) -> SpectrumModel:
        return self.vector.model

    @property
    def radius(self) -> float:
        return abs(self.z)

    def energy_mean(self) -> float:
        return self.vector.energy_mean()


def gk_state(
    model: SpectrumModel,
    z: complex,
    alpha: float | None = None,
    n_max: int | None = None,
) -> GKState:
    """Construct the normalized eigenstate of a- with eigenvalue z."""
    z = complex(z)
    if alpha is None:
        alpha = model.alpha
    elif alpha != model.alpha:
        # keep the carried model consistent with the phases actually used
        model = dataclasses.replace(model, alpha=alpha)
    r = abs(z)
    radius = model.radius_estimate()
    # the normalization series lives in u = |z|^2; outside u < radius it diverges
    if r * r >= radius:
        raise DomainError(
            f"|z|^2 = {r * r:.6g} reaches the series radius {radius:.6g}; state diverges"
        )
    if n_max is None:
        n_max = _auto_n_max(model, r)
    log_s = gk_log_normalization(model, r, n_max if r > 0 else None)
    logs = model.log_products(n_max)
    energies = np.array([model.energy(n) for n in range(n_max + 1)])
    ns = np.arange(n_max + 1)
    if r > 0:
        log_mag = ns * math.log(r) - 0.5 * logs - 0.5 * log_s
        phase = np.exp(1j * (ns * np.angle(z) - alpha * energies))
        coeffs = np.exp(log_mag) * phase
    else:
        coeffs = np.zeros(n_max + 1, dtype=complex)
        coeffs[0] = 1.0
    vec = FockVector(model, coeffs)
    tail = vec.tail_bound()
    if not (tail < _TAIL_CERT):
        raise TruncationError(
            f"tail bound {tail:.3e} exceeds {_TAIL_CERT:.0e} at n_max={n_max}",
            suggested_n_max=2 * n_max + 16,
        )
    if model.kind == CUSTOM or model.kind == HARMONIC:
        log_gnu = 0.0
    else:
        log_gnu = specfun.log_gamma(model.nu + 1.0)
    norm_const = math.exp(0.5 * (log_gnu - log_s))
    return GKState(z=z, alpha=alpha, vector=vec, norm_const=norm_const)


def evolve(state: GKState, t: float) -> GKState:
    """Time evolution acts as a shift of the phase parameter: alpha -> alpha + t."""
    energies = np.array([state.model.energy(n) for n in range(state.vector.n_max + 1)])
    twisted = state.vector.coeffs * np.exp(-1j * t * energies)
    return GKState(
        z=state.z,
        alpha=state.alpha + t,
        vector=FockVector(state.model, twisted),
        norm_const=state.norm_const,
    )


def action_identity(state: GKState, rep=None) -> float:
    """Signed defect <H> - |z|^2; zero in exact arithmetic.

    When a ladder rep is supplied, <H> is taken through its h_diag so the
    check also exercises the operator path.
    """
    if rep is None:
        mean = state.vector.normalized().energy_mean()
    else:
        vec = state.vector.padded(rep.n_max).normalized()
        mean = float(np.dot(rep.h_diag, np.abs(vec.coeffs) ** 2))
    return mean - abs(state.z) ** 2


def bargmann_eval(coeffs: FockVector, z: complex, alpha: float) -> complex:
    """Analytic symbol sum_n f_n z^n e^{+i alpha E_n} / sqrt(E(n)).

    Maps the basis vector e_n to a monomial and intertwines a+ with
    multiplication by z.
    """
    model = coeffs.model
    n_top = coeffs.n_max
    logs = model.log_products(n_top)
    energies = np.array([model.energy(n) for n in range(n_top + 1)])
    ns = np.arange(n_top + 1)
    z = complex(z)
    if z == 0:
        monomials = np.zeros(n_top + 1, dtype=complex)
        monomials[0] = 1.0
    else:
        monomials = np.exp(ns * np.log(complex(z)) - 0.5 * logs + 1j * alpha * energies)
    return complex(np.dot(coeffs.coeffs, monomials))


# ---------------------------------------------------------------------------
# identity resolution on the plane


@dataclasses.dataclass(frozen=True)
class RadialMeasure:
    """Radial part of the resolving measure (2/pi) I_nu(2r) K_nu(2r) r dr dphi."""

    nu: float
    r_cutoff: float

    def weight(self, r: float) -> float:
        if r < 0:
            raise DomainError("radial argument must be nonnegative")
        if r == 0.0:
            return 0.0
        return (2.0 / math.pi) * specfun.bessel_i(self.nu, 2.0 * r) * specfun.bessel_k(
            self.nu, 2.0 * r
        ) * r


def pt_measure(kappa: float, kappa_prime: float, n_ref: int = 20) -> RadialMeasure:
    """Resolving measure for level products n! Gamma(n+nu+1) / Gamma(nu+1).

    The cutoff is pushed until the n_ref-th moment integrand has dropped below
    1e-14 of its scale, so truncating the half-line integral is harmless for
    all moments n <= n_ref.
    """
    # kappa = kappa_prime = 1 is the square-well boundary; the measure only
    # needs nu = kappa + kappa_prime > 0, but stay within the solvable family
    if kappa < 1 or kappa_prime < 1:
        raise DomainError("well exponents below 1 are outside the solvable family")
    nu = kappa + kappa_prime
    power = 2 * n_ref + nu + 1
    target = math.log(1e-14)
    # K_nu(2r) ~ sqrt(pi/(4r)) e^{-2r}, so the n_ref integrand behaves like
    # r^power e^{-2r} with log-peak power*log(power/2) - power at r = power/2
    peak = power * math.log(power / 2.0) - power
    r = max(10.0, power / 2.0)
    while r < 200.0:
        log_tail = power * math.log(r) - 2.0 * r + 0.5 * math.log(math.pi / (4.0 * r))
        if log_tail < target + peak:
            break
        r += 5.0
    return RadialMeasure(nu=nu, r_cutoff=r)


@functools.lru_cache(maxsize=64)
def _moment_nodes(cutoff: float, order: int):
    return specfun.gauss_legendre(order).scaled(0.0, cutoff)


def _moment(measure: RadialMeasure, n: int, log_rho: float, order: int) -> float:
    nodes, weights = _moment_nodes(measure.r_cutoff, order)
    nu = measure.nu
    # moment_n = 4 / rho(n) * int K_nu(2r) r^{2n+nu+1} dr with rho-scaled integrand
    total = 0.0
    for r, w in zip(nodes, weights):
        log_k = math.log(specfun.bessel_k(nu, 2.0 * r))
        total += w * math.exp(log_k + (2 * n + nu + 1) * math.log(r) - log_rho)
    return 4.0 * total


def identity_moment_check(model: SpectrumModel, measure: RadialMeasure, n: int) -> float:
    """|moment_n - 1| for the resolving measure; exact value is 1 for every n.

    Evaluated at two quadrature orders (200 and 400 nodes); disagreement
    beyond 1e-9 means the quadrature itself has not settled.
    """
    if model.kind in (HARMONIC, CUSTOM):
        raise DomainError("closed resolving measure is only available for nu-type spectra")
    if abs(model.nu - measure.nu) > 1e-12:
        raise DomainError("measure index does not match the model")
    if n < 0:
        raise DomainError("moment order must be nonnegative")
    log_rho = specfun.log_gamma(n + 1.0) + specfun.log_gamma(n + measure.nu + 1.0)
    coarse = _moment(measure, n, log_rho, 200)
    fine = _moment(measure, n, log_rho, 400)
    if abs(coarse - fine) > 1e-9:
        raise ConvergenceError(
            f"moment quadrature unsettled: order 200 gives {coarse!r}, order 400 gives {fine!r}"
        )
    return abs(fine - 1.0)
