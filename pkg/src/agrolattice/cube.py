"""Boolean spatio-temporal data cubes and their derivation operators.

A cube records which (location, dimension, timestamp) facts hold.  Everything
here is immutable after construction and safe to share across threads; all
operations are pure functions of their inputs.  Set-valued results always
iterate in ascending index order so downstream artifacts are reproducible.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import AxisMismatch, EmptyAxis, IndexOutOfBounds, UnknownLabel

__all__ = [
    "ORIENTATIONS",
    "AxisLabels",
    "DataCube",
    "SliceContext",
    "build_cube",
    "closure_locs",
    "dim_closure",
    "dim_friendly",
    "loc_closure",
    "loc_friendly",
    "locs_with_pairs",
    "reorient",
    "slice_at",
    "slice_down",
    "slice_up",
    "time_closure",
    "time_friendly",
]

ORIENTATIONS = ("by_time", "by_dimension")


def _unique_tuple(values: Iterable[str], axis: str) -> tuple[str, ...]:
    out = tuple(values)
    if not out:
        raise EmptyAxis(axis)
    seen: set[str] = set()
    for v in out:
        if v in seen:
            raise ValueError(f"duplicate {axis} label {v!r}")
        seen.add(v)
    return out


@dataclass(frozen=True)
class AxisLabels:
    """Canonical names for the three cube axes.

    The position of a name is its index; every operation in the package
    speaks indices and uses these lists only at the ingestion and
    serialization boundaries.
    """

    locations: tuple[str, ...]
    dimensions: tuple[str, ...]
    timestamps: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "locations", _unique_tuple(self.locations, "location"))
        object.__setattr__(self, "dimensions", _unique_tuple(self.dimensions, "dimension"))
        object.__setattr__(self, "timestamps", _unique_tuple(self.timestamps, "timestamp"))

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (len(self.locations), len(self.dimensions), len(self.timestamps))

    def location_index(self, name: str) -> int:
        try:
            return self.locations.index(name)
        except ValueError:
            raise UnknownLabel(name, "location") from None

    def dimension_index(self, name: str) -> int:
        try:
            return self.dimensions.index(name)
        except ValueError:
            raise UnknownLabel(name, "dimension") from None

    def timestamp_index(self, name: str) -> int:
        try:
            return self.timestamps.index(name)
        except ValueError:
            raise UnknownLabel(name, "timestamp") from None


def _check_indices(values: Iterable[int], size: int, axis: str) -> tuple[int, ...]:
    """Normalize an index set: dedupe, sort ascending, bounds-check."""
    out = sorted(set(values))
    for v in out:
        if not 0 <= v < size:
            raise IndexOutOfBounds(v, axis, size)
    return tuple(out)


class DataCube:
    """Immutable ternary incidence relation over (location, dimension, timestamp).

    Membership of a fact is exact set membership.  The ``orientation`` marker
    selects which middle axis internal sweeps iterate over ("by_time" sweeps
    timestamp subsets, "by_dimension" sweeps dimension subsets); it never
    changes the logical fact set.
    """

    __slots__ = (
        "labels",
        "incidence",
        "orientation",
        "_loc_rows",
        "_cell_loc_masks",
    )

    def __init__(
        self,
        labels: AxisLabels,
        incidence: Iterable[tuple[int, int, int]],
        orientation: str = "by_time",
    ):
        if orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
        facts = frozenset(incidence)
        n_loc, n_dim, n_time = labels.sizes
        for g, d, t in facts:
            if not 0 <= g < n_loc:
                raise IndexOutOfBounds(g, "location", n_loc)
            if not 0 <= d < n_dim:
                raise IndexOutOfBounds(d, "dimension", n_dim)
            if not 0 <= t < n_time:
                raise IndexOutOfBounds(t, "timestamp", n_time)
        self.labels = labels
        self.incidence = facts
        self.orientation = orientation
        # loc_rows[g][t] = bitmask over dimensions present at (g, t)
        loc_rows = [[0] * n_time for _ in range(n_loc)]
        # cell_loc_masks[d][t] = bitmask over locations incident at (d, t)
        cell = [[0] * n_time for _ in range(n_dim)]
        for g, d, t in facts:
            loc_rows[g][t] |= 1 << d
            cell[d][t] |= 1 << g
        self._loc_rows = tuple(tuple(r) for r in loc_rows)
        self._cell_loc_masks = tuple(tuple(r) for r in cell)

    @property
    def n_locations(self) -> int:
        return len(self.labels.locations)

    @property
    def n_dimensions(self) -> int:
        return len(self.labels.dimensions)

    @property
    def n_timestamps(self) -> int:
        return len(self.labels.timestamps)

    @property
    def axes(self) -> tuple[int, int, int]:
        return self.labels.sizes

    def __contains__(self, fact: tuple[int, int, int]) -> bool:
        return fact in self.incidence

    def __len__(self) -> int:
        return len(self.incidence)

    def __eq__(self, other) -> bool:
        """Logical-content equality: labels and fact set, orientation ignored."""
        if not isinstance(other, DataCube):
            return NotImplemented
        return self.labels == other.labels and self.incidence == other.incidence

    def __hash__(self) -> int:
        return hash((self.labels, self.incidence))

    def __repr__(self) -> str:
        n, k, t = self.axes
        return (
            f"DataCube({n} locations x {k} dimensions x {t} timestamps, "
            f"{len(self.incidence)} facts, orientation={self.orientation!r})"
        )

    def dim_mask_at(self, loc: int, time: int) -> int:
        """Bitmask over dimensions present for ``loc`` at ``time``."""
        return self._loc_rows[loc][time]

    def loc_mask_at(self, dim: int, time: int) -> int:
        """Bitmask over locations incident at ``(dim, time)``."""
        return self._cell_loc_masks[dim][time]


@dataclass(frozen=True)
class SliceContext:
    """One timestamp's Boolean location x dimension table.

    ``rows[g]`` is the sorted tuple of dimension indices present for location
    ``g`` at ``time_idx``; ``row_masks`` is the same data as bitmasks.
    """

    time_idx: int
    n_dimensions: int
    rows: tuple[tuple[int, ...], ...]
    row_masks: tuple[int, ...]

    @property
    def n_locations(self) -> int:
        return len(self.rows)


def build_cube(
    labels: AxisLabels | tuple,
    triples: Iterable[tuple[str, str, str]],
    orientation: str = "by_time",
) -> DataCube:
    """Build a cube from named facts, collapsing duplicates.

    Raises UnknownLabel when a fact name is absent from its axis and
    EmptyAxis when any axis list is empty.
    """
    if not isinstance(labels, AxisLabels):
        labels = AxisLabels(*labels)
    facts = set()
    for loc, dim, time in triples:
        facts.add(
            (
                labels.location_index(loc),
                labels.dimension_index(dim),
                labels.timestamp_index(time),
            )
        )
    return DataCube(labels, facts, orientation)


def reorient(cube: DataCube, orientation: str) -> DataCube:
    """Return a cube with identical facts whose internal sweeps run over the
    other middle axis.  Involutive: reorienting back restores the original
    iteration order."""
    if orientation == cube.orientation:
        return cube
    return DataCube(cube.labels, cube.incidence, orientation)


def slice_at(cube: DataCube, time_idx: int) -> SliceContext:
    """The location x dimension table of one timestamp."""
    if not 0 <= time_idx < cube.n_timestamps:
        raise IndexOutOfBounds(time_idx, "timestamp", cube.n_timestamps)
    masks = tuple(cube.dim_mask_at(g, time_idx) for g in range(cube.n_locations))
    rows = tuple(_bits(m) for m in masks)
    return SliceContext(time_idx, cube.n_dimensions, rows, masks)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


# ---------------------------------------------------------------------------
# Derivation operators on the whole cube.
#
# Each maps a set on one axis to the pairs on the opposite two axes shared by
# every member.  The empty input returns the full opposite product (the
# universal quantification over an empty set holds vacuously).
# ---------------------------------------------------------------------------


def loc_friendly(cube: DataCube, locs: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """(dimension, timestamp) pairs incident to every location in ``locs``."""
    locs = _check_indices(locs, cube.n_locations, "location")
    out = []
    for d in range(cube.n_dimensions):
        for t in range(cube.n_timestamps):
            m = cube.loc_mask_at(d, t)
            if all(m >> g & 1 for g in locs):
                out.append((d, t))
    return tuple(out)


def dim_friendly(cube: DataCube, dims: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """(location, timestamp) pairs incident to every dimension in ``dims``."""
    dims = _check_indices(dims, cube.n_dimensions, "dimension")
    out = []
    for g in range(cube.n_locations):
        for t in range(cube.n_timestamps):
            row = cube.dim_mask_at(g, t)
            if all(row >> d & 1 for d in dims):
                out.append((g, t))
    return tuple(out)


def time_friendly(cube: DataCube, times: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """(location, dimension) pairs incident at every timestamp in ``times``."""
    times = _check_indices(times, cube.n_timestamps, "timestamp")
    out = []
    for g in range(cube.n_locations):
        common = (1 << cube.n_dimensions) - 1
        for t in times:
            common &= cube.dim_mask_at(g, t)
        for d in _bits(common):
            out.append((g, d))
    return tuple(out)


def locs_with_pairs(cube: DataCube, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Locations incident to every (dimension, timestamp) pair given.

    This is the downward half of the flattened-context Galois connection
    whose upward half is :func:`loc_friendly`.
    """
    wanted = sorted(set(pairs))
    mask = (1 << cube.n_locations) - 1
    for d, t in wanted:
        if not 0 <= d < cube.n_dimensions:
            raise IndexOutOfBounds(d, "dimension", cube.n_dimensions)
        if not 0 <= t < cube.n_timestamps:
            raise IndexOutOfBounds(t, "timestamp", cube.n_timestamps)
        mask &= cube.loc_mask_at(d, t)
    return _bits(mask)


def loc_closure(cube: DataCube, locs: Iterable[int]) -> tuple[int, ...]:
    """Double derivation of a location set against the whole cube."""
    return locs_with_pairs(cube, loc_friendly(cube, locs))


def dim_closure(cube: DataCube, dims: Iterable[int]) -> tuple[int, ...]:
    """Double derivation of a dimension set against the whole cube."""
    pairs = dim_friendly(cube, dims)
    common = (1 << cube.n_dimensions) - 1
    for g, t in pairs:
        common &= cube.dim_mask_at(g, t)
    return _bits(common)


def time_closure(cube: DataCube, times: Iterable[int]) -> tuple[int, ...]:
    """Double derivation of a timestamp set against the whole cube."""
    pairs = time_friendly(cube, times)
    common = (1 << cube.n_timestamps) - 1
    for g, d in pairs:
        row = 0
        for t in range(cube.n_timestamps):
            if cube.dim_mask_at(g, t) >> d & 1:
                row |= 1 << t
        common &= row
    return _bits(common)


# ---------------------------------------------------------------------------
# Per-slice derivation and closure.
# ---------------------------------------------------------------------------


def slice_up(context: SliceContext, locs: Iterable[int]) -> tuple[int, ...]:
    """Dimensions common to every location in ``locs`` on this slice."""
    locs = _check_indices(locs, context.n_locations, "location")
    common = (1 << context.n_dimensions) - 1
    for g in locs:
        common &= context.row_masks[g]
    return _bits(common)


def slice_down(context: SliceContext, dims: Iterable[int]) -> tuple[int, ...]:
    """Locations possessing every dimension in ``dims`` on this slice."""
    dims = _check_indices(dims, context.n_dimensions, "dimension")
    need = _mask(dims)
    return tuple(g for g, row in enumerate(context.row_masks) if need & ~row == 0)


def closure_locs(context: SliceContext, locs: Iterable[int]) -> tuple[int, ...]:
    """Slice-level closure of a location set: down(up(locs)).

    The result is a fixed point: applying the closure again returns it
    unchanged.  The input is always contained in the result.
    """
    return slice_down(context, slice_up(context, locs))


def require_same_axes(a: tuple[int, int, int], b: tuple[int, int, int]) -> None:
    if a != b:
        raise AxisMismatch(f"axis sizes differ: {a} vs {b}")
