"""Default numerical tolerances, one table for the whole package.

Every verification case looks its threshold up here by name; callers may
override a whole run with a single value (the CLI --tol flag does exactly
that).  Keys group as suite.check.
"""
from .errors import DomainError

DEFAULTS = {
    # truncated ladder representation
    "ladder.number_operator": 1e-12,
    "ladder.commutator_gaps": 1e-12,
    "ladder.hermiticity": 1e-12,
    # lowering-operator eigenstates
    "gk.eigenstate_residual": 1e-9,
    "gk.tail_bound": 1e-12,
    "gk.action_identity": 1e-8,
    "gk.normalization_closed": 1e-9,
    "gk.identity_moments": 1e-6,
    "gk.temporal_stability": 1e-12,
    # displacement states
    "perelomov.route_agreement": 1e-7,
    "perelomov.harmonic_weights": 1e-10,
    "perelomov.disk_moments": 1e-8,
    "perelomov.kernel_normalization": 1e-12,
    # minimum-uncertainty states
    "gis.closed_vs_recurrence": 1e-10,
    "gis.rs_equality": 1e-8,
    "gis.variance_ratio": 1e-8,
    "gis.theta_laws": 1e-8,
    "gis.lambda_one": 1e-10,
    "gis.bargmann_taylor": 1e-8,
    "gis.kummer_signs": 1e-10,
    "gis.disk_expansion": 1e-8,
    "gis.laplace_bridge": 1e-6,
    # position-space layer
    "position.gram": 1e-8,
    "position.factorization": 1e-4,
    "position.schrodinger": 1e-4,
    "position.overlap_rows": 1e-4,
    "position.rayleigh": 1e-3,
    "position.susy_shift": 1e-6,
    # special-function kernel
    "specfun.kummer_transform": 1e-10,
    "specfun.bessel_wronskian": 1e-10,
    "specfun.jacobi_symmetry": 1e-12,
    "specfun.quadrature_exactness": 1e-13,
}


def resolve(name: str, override: float | None = None) -> float:
    """Tolerance for a named check, with an optional run-wide override."""
    if name not in DEFAULTS:
        raise DomainError(f"unknown tolerance name: {name}")
    return DEFAULTS[name] if override is None else float(override)
