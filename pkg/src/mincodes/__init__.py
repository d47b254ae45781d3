"""Minimal linear codes from irreducible cyclic codes, and Massey secret sharing on their duals."""

from .errors import MinCodeError
from .galois import FieldElement, FieldSpec, field_build, primitive_element, subfield_index, trace_to_subfield
from .lincode import (
    Codeword,
    LinearCode,
    WeightDistribution,
    condensed_code,
    cyclic_code,
    dual,
    minimum_distance,
    shorten_once,
    shorten_steps,
    weight_distribution,
)
from .minimality import (
    MinimalityCertificate,
    Verdict,
    certify,
    closed_form_predicate,
    covers,
    is_minimal_code_exhaustive,
    is_minimal_vector,
    minimal_codewords,
    minimality_transfer_condensed,
    weight_ratio_sufficient,
)
from .sss import AccessStructure, ShareDeal, access_structure, access_structure_trace, deal, dictator_prediction, reconstruct

__version__ = "0.1.0"

__all__ = [
    "AccessStructure",
    "Codeword",
    "FieldElement",
    "FieldSpec",
    "LinearCode",
    "MinCodeError",
    "MinimalityCertificate",
    "ShareDeal",
    "Verdict",
    "WeightDistribution",
    "access_structure",
    "access_structure_trace",
    "certify",
    "closed_form_predicate",
    "condensed_code",
    "covers",
    "cyclic_code",
    "deal",
    "dictator_prediction",
    "dual",
    "field_build",
    "is_minimal_code_exhaustive",
    "is_minimal_vector",
    "minimal_codewords",
    "minimality_transfer_condensed",
    "minimum_distance",
    "primitive_element",
    "reconstruct",
    "shorten_once",
    "shorten_steps",
    "subfield_index",
    "trace_to_subfield",
    "weight_distribution",
    "weight_ratio_sufficient",
]
