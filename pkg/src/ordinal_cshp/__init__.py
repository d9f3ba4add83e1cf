"""Exact ordinal arithmetic and CSHP decision procedures for ordinal spaces."""

__version__ = "0.1.0"

from .notation import (  # noqa: E402
    OMEGA,
    ONE,
    ZERO,
    Kind,
    Order,
    Ordinal,
    ParseError,
    atom,
    classify,
    compare,
    natural,
    parse,
    render,
)
from .arithmetic import (  # noqa: E402
    add,
    canonical_cofinal,
    cofinality,
    decompose_base,
    is_regular_uncountable,
    left_subtract,
    mul,
    pow,
)
from .cshp import decide_coproduct, decide_ordinal, decide_product, explain  # noqa: E402

__all__ = [
    "OMEGA",
    "ONE",
    "ZERO",
    "Kind",
    "Order",
    "Ordinal",
    "ParseError",
    "atom",
    "classify",
    "compare",
    "natural",
    "parse",
    "render",
    "add",
    "mul",
    "pow",
    "left_subtract",
    "cofinality",
    "is_regular_uncountable",
    "decompose_base",
    "canonical_cofinal",
    "decide_ordinal",
    "decide_product",
    "decide_coproduct",
    "explain",
]
