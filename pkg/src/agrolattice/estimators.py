"""Scikit-learn style estimators wrapping the mining pipeline.

These let the miners participate in the wider ecosystem: parameters round
trip through ``get_params``/``set_params``, estimators ``clone()`` cleanly,
and inputs are validated numpy arrays of shape (n_locations, n_dimensions,
n_timestamps).  Fitted attributes follow the trailing-underscore convention.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator

from .concepts import enumerate_agro_triples
from .cube import ORIENTATIONS, AxisLabels, DataCube
from .rules import SUPPORT_DENOMINATORS, filter_rules, generate_rules

__all__ = [
    "AgroTripleMiner",
    "TemporalRuleMiner",
    "array_from_cube",
    "cube_from_array",
    "validate_cube_array",
]


def validate_cube_array(X) -> np.ndarray:
    """Check and coerce an incidence array.

    Accepts boolean or 0/1 numeric arrays of shape (n_locations,
    n_dimensions, n_timestamps) and returns a boolean array.
    """
    arr = np.asarray(X)
    if arr.ndim != 3:
        raise ValueError(
            f"expected a 3d array of shape (n_locations, n_dimensions, n_timestamps), "
            f"got {arr.ndim}d with shape {arr.shape}"
        )
    if any(s == 0 for s in arr.shape):
        raise ValueError(f"all axes must be non-empty, got shape {arr.shape}")
    if arr.dtype == bool:
        return arr
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("incidence values must be boolean or 0/1")
    return arr.astype(bool)


def _default_labels(shape: tuple[int, int, int]) -> AxisLabels:
    n_loc, n_dim, n_time = shape
    return AxisLabels(
        tuple(f"L_{i + 1}" for i in range(n_loc)),
        tuple(f"J_{i + 1}" for i in range(n_dim)),
        tuple(f"T_{i + 1}" for i in range(n_time)),
    )


def cube_from_array(X, labels: AxisLabels | None = None, orientation: str = "by_time") -> DataCube:
    """Build a DataCube from a boolean incidence array, generating default
    axis labels when none are given."""
    arr = validate_cube_array(X)
    if labels is None:
        labels = _default_labels(arr.shape)
    elif labels.sizes != arr.shape:
        raise ValueError(f"labels sizes {labels.sizes} do not match array shape {arr.shape}")
    facts = list(zip(*(idx.tolist() for idx in np.nonzero(arr))))
    return DataCube(labels, facts, orientation)


def array_from_cube(cube: DataCube) -> np.ndarray:
    """Dense boolean incidence array of a cube."""
    arr = np.zeros(cube.axes, dtype=bool)
    for g, d, t in cube.incidence:
        arr[g, d, t] = True
    return arr


def _as_exact_fraction(value) -> Fraction:
    # floats go through their decimal string so 0.7 means 7/10, not the
    # nearest binary float
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


class AgroTripleMiner(BaseEstimator):
    """Enumerate every maximal full box of a Boolean incidence cube.

    Parameters
    ----------
    orientation : {"by_time", "by_dimension"}
        Which middle axis the enumeration sweeps.  Both produce identical
        triples.

    Attributes
    ----------
    cube_ : DataCube
    triples_ : TripleSet
    n_triples_ : int
    extent_indicators_, intent_indicators_, time_indicators_ : bool arrays
        One row per triple marking its members on the respective axis.
    """

    def __init__(self, orientation: str = "by_time"):
        self.orientation = orientation

    def fit(self, X, y=None):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {self.orientation!r}")
        cube = X if isinstance(X, DataCube) else cube_from_array(X, orientation=self.orientation)
        self.cube_ = cube
        self.triples_ = enumerate_agro_triples(cube)
        self.n_triples_ = len(self.triples_)
        n = self.n_triples_
        n_loc, n_dim, n_time = cube.axes
        self.extent_indicators_ = np.zeros((n, n_loc), dtype=bool)
        self.intent_indicators_ = np.zeros((n, n_dim), dtype=bool)
        self.time_indicators_ = np.zeros((n, n_time), dtype=bool)
        for i, triple in enumerate(self.triples_):
            self.extent_indicators_[i, list(triple.extent)] = True
            self.intent_indicators_[i, list(triple.intent)] = True
            self.time_indicators_[i, list(triple.times)] = True
        return self


class TemporalRuleMiner(BaseEstimator):
    """Mine temporal association rules from a Boolean incidence cube.

    Parameters
    ----------
    min_support, min_confidence : str, Fraction or float
        Minimum thresholds in [0, 1]; floats are interpreted via their
        decimal rendering so the comparison stays exact.
    support_denominator : {"locations", "dimensions"}
    orientation : {"by_time", "by_dimension"}

    Attributes
    ----------
    cube_ : DataCube
    triples_ : TripleSet
    rules_ : RuleSet of the rules meeting both thresholds
    n_rules_ : int
    """

    def __init__(
        self,
        min_support="0",
        min_confidence="0",
        support_denominator: str = "locations",
        orientation: str = "by_time",
    ):
        self.min_support = min_support
        self.min_confidence = min_confidence
        self.support_denominator = support_denominator
        self.orientation = orientation

    def fit(self, X, y=None):
        if self.support_denominator not in SUPPORT_DENOMINATORS:
            raise ValueError(
                f"support_denominator must be one of {SUPPORT_DENOMINATORS}, "
                f"got {self.support_denominator!r}"
            )
        cube = X if isinstance(X, DataCube) else cube_from_array(X, orientation=self.orientation)
        self.cube_ = cube
        self.triples_ = enumerate_agro_triples(cube)
        rules = generate_rules(self.triples_, support_denominator=self.support_denominator)
        self.rules_ = filter_rules(
            rules,
            _as_exact_fraction(self.min_support),
            _as_exact_fraction(self.min_confidence),
        )
        self.n_rules_ = len(self.rules_)
        return self
