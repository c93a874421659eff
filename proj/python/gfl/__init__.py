"""Exact gamma-filtration subquotients of Severi-Brauer varieties.

Thin re-export of the compiled core: sequence analysis, torsion bounds,
annihilator exponents, and indecomposability certificates. Big integers
cross the boundary as decimal strings.
"""

from gfl._core import (  # noqa: F401
    ArgumentError,
    NotApplicable,
    ResourceError,
    analyze,
    binomial,
    chow_annihilator,
    decomposable_chow_element_a,
    decomposable_chow_element_b,
    decomposable_chow_element_c,
    decomposable_upper_bound_exponent,
    delta_exponent,
    euler_phi_ktheory_valuation,
    gamma_annihilator,
    indecomposability_certificate,
    index_of_tensor_power,
    lambda_bound,
    lambda_special,
    p_coeff,
    reduce_sequence,
    theorem_lower_bound,
    torsion_witness,
    verify_congruence,
    verify_degree2_identity,
    verify_doubly_reduced,
    verify_lemma_reduction,
    verify_paper,
    verify_product_formula,
    vp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
