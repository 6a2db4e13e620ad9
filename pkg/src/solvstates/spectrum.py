"""Energy spectra of exactly solvable systems.

A model fixes a dimensionless sequence E_0 = 0 < E_1 < E_2 < ... together
with the cumulative products E(n) = E_1 E_2 ... E_n, E(0) = 1.  Those
products normalize every state family built on top, so they are accumulated
in the log domain to keep large levels representable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

HARMONIC = "harmonic"
POSCHL_TELLER = "poschl_teller"
SQUARE_WELL = "square_well"
CUSTOM = "custom"

#: ratio of end-to-midpoint growth factors beyond which the convergence
#: radius estimate is reported as infinite
_DIVERGENCE_RATIO = 1.2


@dataclass(frozen=True)
class EnergyProduct:
    """Cumulative product E(n), kept as a log with a convenience value."""

    n: int
    log_value: float

    @property
    def value(self) -> float:
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class SpectrumModel:
    """A solvable spectrum plus the phase parameter used by state families."""

    kind: str
    alpha: float = 0.0
    kappa: float | None = None
    kappa_prime: float | None = None
    table: tuple[float, ...] = field(default=())

    # -- constructors --------------------------------------------------

    @classmethod
    def harmonic(cls, alpha=0.0):
        """E_n = n."""
        return cls(HARMONIC, alpha=alpha)

    @classmethod
    def poschl_teller(cls, kappa, kappa_prime, alpha=0.0):
        """E_n = n (n + kappa + kappa'), both strengths > 1."""
        if not (kappa > 1 and kappa_prime > 1):
            raise DomainError("poschl_teller requires kappa > 1 and kappa' > 1")
        return cls(POSCHL_TELLER, alpha=alpha, kappa=float(kappa),
                   kappa_prime=float(kappa_prime))

    @classmethod
    def square_well(cls, alpha=0.0):
        """E_n = n (n + 2); spectrum-level twin of poschl_teller with nu = 2."""
        return cls(SQUARE_WELL, alpha=alpha)

    @classmethod
    def custom(cls, energies, alpha=0.0):
        """Finite table of energies, one per level, starting at exactly 0."""
        table = tuple(float(e) for e in energies)
        if len(table) < 2:
            raise DomainError("custom spectrum needs at least two levels")
        if table[0] != 0.0:
            raise DomainError("custom spectrum must start at E_0 = 0")
        if any(b <= a for a, b in zip(table, table[1:])):
            raise DomainError("custom spectrum must be strictly increasing")
        return cls(CUSTOM, alpha=alpha, table=table)

    @classmethod
    def from_file(cls, path, alpha=0.0):
        """Load a custom spectrum from a text file, one energy per line."""
        values = []
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.strip()
                if not text:
                    continue
                try:
                    values.append(float(text))
                except ValueError as exc:
                    raise DomainError(f"{path}:{lineno}: not a number: {text!r}") from exc
        return cls.custom(values, alpha=alpha)

    # -- spectral data ---------------------------------------------------

    @property
    def nu(self) -> float:
        """Combined strength kappa + kappa' controlling closed forms."""
        if self.kind == POSCHL_TELLER:
            return self.kappa + self.kappa_prime
        if self.kind == SQUARE_WELL:
            return 2.0
        raise DomainError(f"nu is undefined for kind={self.kind!r}")

    @property
    def n_levels(self):
        """Number of tabulated levels, or None for unbounded spectra."""
        return len(self.table) if self.kind == CUSTOM else None

    def energy(self, n: int) -> float:
        if n < 0:
            raise DomainError("level index must be >= 0")
        if self.kind == HARMONIC:
            return float(n)
        if self.kind in (POSCHL_TELLER, SQUARE_WELL):
            return n * (n + self.nu)
        if n >= len(self.table):
            raise DomainError(
                f"custom spectrum has {len(self.table)} levels, index {n} out of range")
        return self.table[n]

    def level_gap(self, n: int) -> float:
        """E_{n+1} - E_n, the eigenvalue of the commutator operator at level n."""
        return self.energy(n + 1) - self.energy(n)

    def energy_product(self, n: int) -> EnergyProduct:
        """E(n) = E_1 ... E_n accumulated as a sum of logs."""
        if n < 0:
            raise DomainError("level index must be >= 0")
        total = 0.0
        for k in range(1, n + 1):
            total += math.log(self.energy(k))
        return EnergyProduct(n=n, log_value=total)

    def log_products(self, n_max: int) -> np.ndarray:
        """Array of log E(n) for n = 0 .. n_max."""
        logs = [math.log(self.energy(k)) for k in range(1, n_max + 1)]
        return np.concatenate([[0.0], np.cumsum(logs)]) if logs else np.zeros(1)

    def radius_estimate(self, n_max: int = 200) -> float:
        """Numerical estimate of lim E(n)^(1/n), the convergence radius of
        sum z^(2n)/E(n).

        Returns math.inf when the geometric-mean sequence is still growing
        strongly at n_max (superlinear spectra).
        """
        if n_max < 10:
            raise DomainError("radius estimate needs n_max >= 10")
        if self.kind == CUSTOM:
            n_max = min(n_max, len(self.table) - 1)
        half = n_max // 2
        s_half = math.exp(self.energy_product(half).log_value / half)
        s_full = math.exp(self.energy_product(n_max).log_value / n_max)
        if s_full / s_half > _DIVERGENCE_RATIO:
            return math.inf
        return s_full
