"""Arakelov divisor arithmetic for number fields.

Core objects: number fields with exact rational structure and certified
embeddings, fractional ideals in canonical HNF, ideal lattices with exact
LLL and shortest-vector enumeration, Arakelov divisors with the strongly
C-reduced test and reduction algorithm, and a census of all strongly
C-reduced divisors with separation and counting bound verification.
"""

from .numfield import (
    ArchVector,
    FieldElement,
    LogVector,
    NumberField,
    PrecisionExhausted,
    create_field,
    embed,
    norm_trace,
    partial_f,
)
from .ideals import (
    FractionalIdeal,
    PlainLattice,
    contains,
    enumerate_integral_ideals,
    ideal_from_generators,
    ideal_norm,
    invert,
    multiply,
    one_is_primitive,
    scale_ideal,
    unit_ideal,
)
from .lattice import (
    GramMatrix,
    ShortVector,
    covolume_check,
    enumerate_box,
    gram_of,
    is_minimal,
    lll_reduce,
    minimal_element_bounded,
    shortest_vector,
)
from .divisors import (
    ArakelovDivisor,
    CheckResult,
    CSquared,
    ReductionTrace,
    UnitLattice,
    UnitsUnavailable,
    add,
    as_c_squared,
    degree,
    divisor_d,
    is_reduced_usual,
    is_strongly_c_reduced,
    lll_jump,
    negate,
    oriented_distance,
    pic_distance,
    principal_divisor,
    principal_generator,
    quadratic_units,
    reduce,
    reduction_distance_bound,
    unit_lattice_from_elements,
)
from .survey import (
    CensusEntry,
    DeskScaleExceeded,
    SredCensus,
    classify_components,
    cycle_positions,
    enumerate_sred,
    verify_counts,
    verify_separation,
)

__version__ = "0.1.0"
