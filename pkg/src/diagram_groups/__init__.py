"""Diagram groups over semigroup presentations, with Thompson's group F as the main example."""

from .presentation import (
    BoundExceeded,
    Derivation,
    Equal,
    Limits,
    NotEqualWithinBound,
    Presentation,
    PresentationError,
    Step,
    parse_presentation,
    parse_word,
    words_equal_bounded,
)
from .diagram import (
    Diagram,
    DiagramError,
    comp,
    compose,
    dsum,
    equal,
    from_derivation,
    group_inv,
    group_mul,
    inverse,
    parse_diagram,
    reduce,
    to_text,
    trivial,
)
from .thompson import THOMPSON, NormalForm, diagram_to_nf, nf_to_diagram, parse_nf
from .pl import pl_from_diagram, pl_from_nf
from .abelian import in_derived_subgroup_F, rho
from .squier import build_component, pi1_presentation

__all__ = [
    "BoundExceeded", "Derivation", "Equal", "Limits", "NotEqualWithinBound", "Presentation",
    "PresentationError", "Step", "parse_presentation", "parse_word", "words_equal_bounded",
    "Diagram", "DiagramError", "comp", "compose", "dsum", "equal", "from_derivation",
    "group_inv", "group_mul", "inverse", "parse_diagram", "reduce", "to_text", "trivial",
    "THOMPSON", "NormalForm", "diagram_to_nf", "nf_to_diagram", "parse_nf",
    "pl_from_diagram", "pl_from_nf", "in_derived_subgroup_F", "rho",
    "build_component", "pi1_presentation",
]
