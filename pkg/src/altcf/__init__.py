"""Exact alternating series, Pierce expansions and their equivalent continued fractions.

All arithmetic is over exact rationals.  Checks run to a stated finite depth
and report what they verified; nothing here claims a proof of irrationality
or transcendence.
"""

from .analysis import (
    approximants,
    certify_gap,
    conjecture_scan,
    coprime_check,
    measure_scan,
    q_product_check,
    telescope_suite,
    verify_equivalence,
    w_sequence,
)
from .catalog import UnknownConstant, catalog, catalog_names
from .confrac import (
    GCF,
    convergents,
    equivalence_transform,
    eval_finite,
    lemma_check,
    scf_of_rational,
    tail_report,
)
from .constructors import (
    build_from_M,
    cahen_bound_check,
    cahen_scf,
    decompose_to_M,
    kc_series,
    mn_steps,
    sylvester,
)
from .exact import Rat, as_rat, rat_arith, render_decimal
from .reports import Report
from .series import (
    EngelSeries,
    TypeIISeries,
    TypeISeries,
    partial_sums,
    pierce_expand,
    pierce_value,
    scf_to_series,
    sharpness_identity,
    sierpinski_check,
    typeI_to_cf,
    typeII_monotone_check,
    typeII_to_cf,
)
from .streams import DigitCapExceeded, LazySeq, StreamExhausted

__version__ = "0.1.0"

__all__ = [
    "GCF", "LazySeq", "Rat", "Report", "TypeISeries", "TypeIISeries", "EngelSeries",
    "DigitCapExceeded", "StreamExhausted", "UnknownConstant",
    "approximants", "as_rat", "build_from_M", "cahen_bound_check", "cahen_scf", "catalog",
    "catalog_names", "certify_gap", "conjecture_scan", "convergents", "coprime_check",
    "decompose_to_M", "equivalence_transform", "eval_finite", "kc_series", "lemma_check",
    "measure_scan", "mn_steps", "partial_sums", "pierce_expand", "pierce_value",
    "q_product_check", "rat_arith", "render_decimal", "scf_of_rational", "scf_to_series",
    "sharpness_identity", "sierpinski_check", "sylvester", "tail_report", "telescope_suite",
    "typeI_to_cf", "typeII_monotone_check", "typeII_to_cf", "verify_equivalence", "w_sequence",
]
