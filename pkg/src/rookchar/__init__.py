"""Exact supercharacter theories for the Borel contraction of GL(n, F_q).

The package classifies superclasses and supercharacters of the contracted
group and of its unipotent radical by decorated rook placements, evaluates
the closed-form character values in exact cyclotomic arithmetic, and checks
everything against independent brute-force computation at small sizes.
"""

from .algebra import Algebra, Elem, Functional, format_element, get_algebra, parse_element
from .canon import (
    ClassLabelG,
    LabelU,
    canonical_decoration,
    class_label_g,
    class_label_u,
    functional_label,
    reduce_lower,
    reduce_upper,
)
from .chars import (
    CharacterTable,
    CharLabelG,
    char_value_g,
    char_value_u,
    table_g,
    table_u,
)
from .cyclotomic import Cyclotomic
from .errors import BudgetError, DomainError, ParseError
from .field import PrimeField
from .oracle import verify_axioms
from .roots import Root, RookPlacement, placements

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "BudgetError",
    "CharLabelG",
    "CharacterTable",
    "ClassLabelG",
    "Cyclotomic",
    "DomainError",
    "Elem",
    "Functional",
    "LabelU",
    "ParseError",
    "PrimeField",
    "Root",
    "RookPlacement",
    "canonical_decoration",
    "char_value_g",
    "char_value_u",
    "class_label_g",
    "class_label_u",
    "format_element",
    "functional_label",
    "get_algebra",
    "parse_element",
    "placements",
    "reduce_lower",
    "reduce_upper",
    "table_g",
    "table_u",
    "verify_axioms",
]
