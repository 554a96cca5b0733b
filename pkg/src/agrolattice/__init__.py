"""Closed spatio-temporal pattern mining over Boolean data cubes.

The pipeline: build a cube of (location, dimension, timestamp) facts,
enumerate its maximal full boxes, order them into a lattice with a Hasse
diagram, and generate temporal association rules scored with exact rational
support and confidence.

Scikit-learn style wrappers live in :mod:`agrolattice.estimators` (imported
on demand to keep the command line light).
"""

from .concepts import (
    AgroTriple,
    TripleSet,
    enumerate_agro_triples,
    enumerate_slice_concepts,
    is_maximal_box,
    oracle_enumerate,
)
from .conformance import ConformanceReport, run_conformance
from .cube import (
    AxisLabels,
    DataCube,
    SliceContext,
    build_cube,
    closure_locs,
    dim_closure,
    dim_friendly,
    loc_closure,
    loc_friendly,
    locs_with_pairs,
    reorient,
    slice_at,
    slice_down,
    slice_up,
    time_closure,
    time_friendly,
)
from .datasets import load_toy_cube
from .errors import (
    AgroLatticeError,
    AxisMismatch,
    BudgetExceeded,
    DuplicateHeader,
    EmptyAxis,
    IndexOutOfBounds,
    NodeNotInLattice,
    ParseError,
    UndefinedConfidence,
    UnknownLabel,
)
from .lattice import (
    ArtificialBound,
    BoundResult,
    FlatConcept,
    SpatioTemporalLattice,
    build_lattice,
    check_isomorphic,
    flatten_lattice,
    join,
    meet,
    precedes,
)
from .rules import AssociationRule, RuleSet, confidence, filter_rules, generate_rules, support

__version__ = "0.1.0"

__all__ = [
    "AgroLatticeError",
    "AgroTriple",
    "ArtificialBound",
    "AssociationRule",
    "AxisLabels",
    "AxisMismatch",
    "BoundResult",
    "BudgetExceeded",
    "ConformanceReport",
    "DataCube",
    "DuplicateHeader",
    "EmptyAxis",
    "FlatConcept",
    "IndexOutOfBounds",
    "NodeNotInLattice",
    "ParseError",
    "RuleSet",
    "SliceContext",
    "SpatioTemporalLattice",
    "TripleSet",
    "UndefinedConfidence",
    "UnknownLabel",
    "build_cube",
    "build_lattice",
    "check_isomorphic",
    "closure_locs",
    "confidence",
    "dim_closure",
    "dim_friendly",
    "enumerate_agro_triples",
    "enumerate_slice_concepts",
    "filter_rules",
    "flatten_lattice",
    "generate_rules",
    "is_maximal_box",
    "join",
    "load_toy_cube",
    "loc_closure",
    "loc_friendly",
    "locs_with_pairs",
    "meet",
    "oracle_enumerate",
    "precedes",
    "reorient",
    "run_conformance",
    "slice_at",
    "slice_down",
    "slice_up",
    "support",
    "time_closure",
    "time_friendly",
]
