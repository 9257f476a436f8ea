"""First-order language, finite structures, ultraproducts, and the
fundamental-lemma verifier."""

from .syntax import (
    Eq,
    Exists,
    Formula,
    Not,
    Or,
    ParseError,
    Rel,
    free_vars,
    height,
    parse_formula,
    print_formula,
)
from .semantics import (
    IndexedChoice,
    LosVerdict,
    Signature,
    Structure,
    StructureFamily,
    Ultraproduct,
    evaluate,
    existential_witness,
    holds_along,
    los_verify,
    truth_set,
    ultraproduct,
)
from .randgen import random_instance

__all__ = [
    "Eq",
    "Exists",
    "Formula",
    "Not",
    "Or",
    "ParseError",
    "Rel",
    "free_vars",
    "height",
    "parse_formula",
    "print_formula",
    "IndexedChoice",
    "LosVerdict",
    "Signature",
    "Structure",
    "StructureFamily",
    "Ultraproduct",
    "evaluate",
    "existential_witness",
    "holds_along",
    "los_verify",
    "truth_set",
    "ultraproduct",
    "random_instance",
]
