"""Degenerate Eisenstein series on SL(n, Z)."""

from ._core import (  # noqa: F401
    BudgetError,
    CertificationError,
    ConfigError,
    DivergenceError,
    DomainError,
    EvaluatedValue,
    GeometryError,
    IwasawaPoint,
    PoleError,
    __version__,
    act,
    bessel_k_scaled,
    bessel_k_scaled_alt,
    canonical_config,
    completed_zeta,
    constant_square,
    constant_term,
    eisenstein,
    epstein,
    fundamental_domain_mass,
    gamma,
    iwasawa_decompose,
    log_gamma,
    measure_constant,
    reduce_to_fundamental,
    run_command,
    sigma,
    zeta,
)
