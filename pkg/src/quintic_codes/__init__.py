"""Trace codes over the quintic ring GF(2^m)[v]/(v^5 - 1).

Builds the codes whose coordinates are indexed by the unit group of the
ring, maps them to binary through the coefficient Gray map, and verifies
their Lee weight distributions, Griesmer optimality, dual distance,
codeword minimality and secret-sharing behavior by independent
enumeration at desk scale.
"""

__version__ = "0.1.0"

from .gf2m import FieldContext, field_context
from .quintic_ring import (
    ParityClass,
    QuinticRing,
    RingElement,
    UnitProfile,
    parity_class_of,
    quintic_ring,
)
from .trace_codes import (
    CodeSpec,
    EnumerationBudgetError,
    WeightDistribution,
    classified_distribution,
    code_spec,
    codeword_lee_weight,
    enumerate_distribution,
    evaluate,
    gray,
    lee_weight,
    theoretical_distribution,
    theta,
)

__all__ = [
    "CodeSpec",
    "EnumerationBudgetError",
    "FieldContext",
    "ParityClass",
    "QuinticRing",
    "RingElement",
    "UnitProfile",
    "WeightDistribution",
    "classified_distribution",
    "code_spec",
    "codeword_lee_weight",
    "enumerate_distribution",
    "evaluate",
    "field_context",
    "gray",
    "lee_weight",
    "parity_class_of",
    "quintic_ring",
    "theoretical_distribution",
    "theta",
    "__version__",
]
