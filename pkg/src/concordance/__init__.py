"""Exact knot concordance invariants from Seifert matrices.

The package computes, in exact arithmetic wherever the answer is exact:
Alexander polynomials and their cyclotomic factorizations, Arf invariants,
Levine-Tristram signature functions and their normalized integrals, homology
orders of branched cyclic covers, and brute-force certificates that a
satellite-built family of knots sharing one Seifert form is mutually
non-concordant.
"""

__version__ = "0.1.0"

from .covers import CoverReport, LivingstonClassification, classify, cover_order, prime_power_cover_scan
from .family import (
    Certificate,
    InfectionCurve,
    KnotDescription,
    WitnessFamily,
    build_witness_family,
    certify_pair,
    nonconcordance_report,
    satellite_compose,
    seifert_matrix,
)
from .laurent import (
    CyclotomicFactorization,
    LaurentPoly,
    NotAlexander,
    NotDivisible,
    cyclotomic,
    divide_exact,
    normalize_alexander,
    resultant,
    strip_cyclotomic_factors,
)
from .seifert import (
    InvalidSeifert,
    SeifertMatrix,
    alexander_poly,
    alexander_module_presentation,
    arf,
    connected_sum,
    figure_eight,
    left_trefoil,
    mirror_reverse,
    ordinary_signature,
    right_trefoil,
    unknot,
    validate,
)
from .signature import (
    AtJump,
    RhoValue,
    RootIsolationFailure,
    SignatureFunction,
    lt_signature_at,
    rho_integral,
    signature_function,
)

__all__ = [name for name in dir() if not name.startswith("_")]
