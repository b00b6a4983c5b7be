"""Exact resultant arithmetic on integer polynomials and a polynomial
diophantine-approximation lab with certified interval arithmetic."""

__version__ = "0.1.0"

from .bigreal import (
    DEFAULT_PREC_CAP,
    Interval,
    PrecisionExhausted,
    RealConstant,
    cf_convergents,
    const_parse,
)
from .polycore import (
    IntPoly,
    LinearApprox,
    ZCheckTag,
    cauchy_mul,
    content_primitive,
    embed_linear,
    eval_interval,
    height,
    poly_format,
    poly_parse,
    z_check,
)
from .resultant import (
    RatMap,
    box_circle,
    box_minus,
    box_plus,
    box_times,
    ratmap_compose,
    ratmap_make,
    ratmap_parse,
    resultant_int,
)
from .measures import (
    MeasureReport,
    RootSet,
    decay_factorization_check,
    mahler_measure,
    roots_certified,
    squarefree_decomposition,
    theta_measures,
    wirsing_bounds,
)
from .approx import (
    ApproxRecord,
    ClassReport,
    ClassThresholds,
    GrowthDecayPoint,
    SeqClass,
    best_poly,
    brute_force_best,
    classify_mahler,
    exponent_table,
    frob_pow,
    frobenius_min_product_ratio,
    growth_decay_point,
    seq_cmp,
    seq_mul,
    spectra_grid,
    trop_add,
    trop_sub,
    verify_diamond,
    verify_product_law,
)
