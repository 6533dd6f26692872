"""Exact verification toolkit for the finite oscillator star-algebra.

Thin python surface over the C++ core: finite fields, Gauss sums and K
constants, orbit censuses, group orders, Gaussian-binomial identities,
endomorphism-dimension identities, and the generator-composition identity.
"""

from ._core import (
    Field,
    SizeLimitError,
    act,
    appendix_identity_check,
    end_dimension_identity,
    field,
    form_invariants,
    gauss_sum,
    gaussian_binomial,
    group_order,
    k_constant,
    orbit_census,
    product_identity_check,
    run_suite,
    tranche_identity_check,
)

__all__ = [
    "Field",
    "SizeLimitError",
    "act",
    "appendix_identity_check",
    "end_dimension_identity",
    "field",
    "form_invariants",
    "gauss_sum",
    "gaussian_binomial",
    "group_order",
    "k_constant",
    "orbit_census",
    "product_identity_check",
    "run_suite",
    "tranche_identity_check",
]

__version__ = "0.1.0"
