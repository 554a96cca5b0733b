"""Enumeration of closed spatio-temporal triples (maximal full boxes).

A triple (extent, intent, times) is a maximal full box of the cube: every
cell of extent x intent x times is incident, and no single axis can be
enlarged without breaking that.  Two independent enumerators are provided:
the production sweep (:func:`enumerate_agro_triples`) and an exhaustive
brute-force oracle (:func:`oracle_enumerate`) used to validate it.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .cube import DataCube, SliceContext, require_same_axes
from .errors import BudgetExceeded, IndexOutOfBounds

__all__ = [
    "AgroTriple",
    "TripleSet",
    "enumerate_agro_triples",
    "enumerate_slice_concepts",
    "is_maximal_box",
    "oracle_enumerate",
]

DEFAULT_ORACLE_BUDGET = 1 << 24


def _sorted_bounded(values: Iterable[int], size: int, axis: str) -> tuple[int, ...]:
    out = tuple(sorted(set(values)))
    for v in out:
        if not 0 <= v < size:
            raise IndexOutOfBounds(v, axis, size)
    return out


@dataclass(frozen=True, order=True)
class AgroTriple:
    """A (locations, dimensions, timestamps) index triple over fixed axes.

    Components are stored as sorted, duplicate-free index tuples; `axes`
    records the axis sizes the indices refer to.  Instances produced by the
    enumerators are maximal full boxes with all components non-empty, but the
    type itself also represents raw combinations (bound formulas may yield
    empty components).
    """

    extent: tuple[int, ...]
    intent: tuple[int, ...]
    times: tuple[int, ...]
    axes: tuple[int, int, int]

    def __post_init__(self):
        n_loc, n_dim, n_time = self.axes
        object.__setattr__(self, "extent", _sorted_bounded(self.extent, n_loc, "location"))
        object.__setattr__(self, "intent", _sorted_bounded(self.intent, n_dim, "dimension"))
        object.__setattr__(self, "times", _sorted_bounded(self.times, n_time, "timestamp"))
        object.__setattr__(self, "axes", tuple(self.axes))

    @classmethod
    def from_names(cls, labels, locations, dimensions, timestamps) -> "AgroTriple":
        return cls(
            tuple(labels.location_index(x) for x in locations),
            tuple(labels.dimension_index(x) for x in dimensions),
            tuple(labels.timestamp_index(x) for x in timestamps),
            labels.sizes,
        )

    def component_names(self, labels) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
        return (
            tuple(labels.locations[i] for i in self.extent),
            tuple(labels.dimensions[i] for i in self.intent),
            tuple(labels.timestamps[i] for i in self.times),
        )

    @property
    def sort_key(self):
        return (self.extent, self.intent, self.times)


class TripleSet:
    """Canonically ordered, duplicate-free triples bound to their cube.

    Canonical order is lexicographic on (extent, intent, times) index
    sequences, which makes serialized output stable across runs.
    """

    __slots__ = ("triples", "cube", "_index")

    def __init__(self, triples: Iterable[AgroTriple], cube: DataCube):
        unique = sorted(set(triples), key=lambda t: t.sort_key)
        for t in unique:
            require_same_axes(t.axes, cube.axes)
        self.triples: tuple[AgroTriple, ...] = tuple(unique)
        self.cube = cube
        self._index = {t: i for i, t in enumerate(self.triples)}

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __getitem__(self, i: int) -> AgroTriple:
        return self.triples[i]

    def __contains__(self, triple: AgroTriple) -> bool:
        return triple in self._index

    def index(self, triple: AgroTriple) -> int:
        return self._index[triple]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripleSet):
            return NotImplemented
        return self.triples == other.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def __repr__(self) -> str:
        return f"TripleSet({len(self.triples)} triples)"


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _closed_intersections(rows: list[int], universe: int) -> set[int]:
    """All intersections of subsets of ``rows`` (the empty subset gives
    ``universe``).  These are exactly the closed sets of the context whose
    object rows are ``rows``."""
    closed = {universe}
    for r in rows:
        closed |= {c & r for c in closed}
    return closed


def enumerate_slice_concepts(context: SliceContext) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All dyadic formal concepts of one slice with both sides non-empty.

    Each returned (locations, dimensions) pair satisfies: the dimensions are
    exactly those common to all the locations, and the locations are exactly
    those possessing all the dimensions.  Canonically ordered.
    """
    universe = (1 << context.n_dimensions) - 1
    rows = list(context.row_masks)
    out = []
    for intent in _closed_intersections(rows, universe):
        if not intent:
            continue
        extent = [g for g, row in enumerate(rows) if intent & ~row == 0]
        if not extent:
            continue
        out.append((tuple(extent), _bits(intent)))
    out.sort()
    return out


def _sweep_axis_masks(cube: DataCube) -> tuple[int, int]:
    """(sweep axis size, kept axis size) for the cube's orientation."""
    if cube.orientation == "by_dimension":
        return cube.n_dimensions, cube.n_timestamps
    return cube.n_timestamps, cube.n_dimensions


def enumerate_agro_triples(cube: DataCube) -> TripleSet:
    """Enumerate every maximal full box of the cube.

    Sweeps all subsets of one middle axis (timestamps under "by_time",
    dimensions under "by_dimension"), enumerates the dyadic concepts of the
    conjunction context of each subset, and keeps a concept exactly when the
    swept subset is the full set of slices over which the concept's cells
    hold.  The two orientations visit the search space in different orders
    but produce identical output.
    """
    n_loc, n_dim, n_time = cube.axes
    by_dim = cube.orientation == "by_dimension"
    n_sweep = n_dim if by_dim else n_time
    n_keep = n_time if by_dim else n_dim

    # rows[g][s] = kept-axis mask for location g on sweep slice s
    if by_dim:
        rows = [
            [
                sum(
                    1 << t
                    for t in range(n_time)
                    if cube.dim_mask_at(g, t) >> s & 1
                )
                for s in range(n_sweep)
            ]
            for g in range(n_loc)
        ]
    else:
        rows = [[cube.dim_mask_at(g, s) for s in range(n_sweep)] for g in range(n_loc)]

    # cell[s][k] = location mask incident on sweep slice s at kept index k
    cell = [[0] * n_keep for _ in range(n_sweep)]
    for g in range(n_loc):
        for s in range(n_sweep):
            m = rows[g][s]
            while m:
                low = m & -m
                cell[s][low.bit_length() - 1] |= 1 << g
                m &= m - 1

    keep_universe = (1 << n_keep) - 1
    triples = []
    for sweep_mask in range(1, 1 << n_sweep):
        sweep_bits = _bits(sweep_mask)
        krows = []
        for g in range(n_loc):
            m = keep_universe
            for s in sweep_bits:
                m &= rows[g][s]
            krows.append(m)
        for intent in _closed_intersections(krows, keep_universe):
            if not intent:
                continue
            extent_mask = 0
            for g in range(n_loc):
                if intent & ~krows[g] == 0:
                    extent_mask |= 1 << g
            if not extent_mask:
                continue
            kept_bits = _bits(intent)
            # the full set of sweep slices on which extent x kept holds
            max_sweep = 0
            for s in range(n_sweep):
                for k in kept_bits:
                    if extent_mask & ~cell[s][k]:
                        break
                else:
                    max_sweep |= 1 << s
            if max_sweep != sweep_mask:
                continue
            if by_dim:
                triples.append(
                    AgroTriple(_bits(extent_mask), sweep_bits, kept_bits, cube.axes)
                )
            else:
                triples.append(
                    AgroTriple(_bits(extent_mask), kept_bits, sweep_bits, cube.axes)
                )
    return TripleSet(triples, cube)


def _pair_cover_masks(cube: DataCube) -> list[int]:
    """Per-location mask over (dimension, timestamp) pair bits."""
    n_loc, n_dim, n_time = cube.axes
    covers = [0] * n_loc
    for g in range(n_loc):
        for t in range(n_time):
            m = cube.dim_mask_at(g, t)
            while m:
                low = m & -m
                covers[g] |= 1 << ((low.bit_length() - 1) * n_time + t)
                m &= m - 1
    return covers


def oracle_enumerate(cube: DataCube, budget: int = DEFAULT_ORACLE_BUDGET) -> TripleSet:
    """Exhaustive reference enumeration of maximal full boxes.

    Walks every non-empty subset triple (locations, dimensions, timestamps),
    keeps the full boxes, and discards any box that a single added location,
    dimension or timestamp would still leave full.  Shares no search logic
    with :func:`enumerate_agro_triples`; it exists to validate it.

    Raises BudgetExceeded when 2^|L| * 2^|J| * 2^|T| exceeds ``budget``.
    """
    n_loc, n_dim, n_time = cube.axes
    space = (1 << n_loc) * (1 << n_dim) * (1 << n_time)
    if space > budget:
        raise BudgetExceeded(space, budget)

    loccover = _pair_cover_masks(cube)

    # needed[jm][tm] = pair bits of the box (jm, tm)
    needed = [[0] * (1 << n_time) for _ in range(1 << n_dim)]
    for jm in range(1, 1 << n_dim):
        d = (jm & -jm).bit_length() - 1
        rest = needed[jm & (jm - 1)]
        row = needed[jm]
        for tm in range(1, 1 << n_time):
            row[tm] = rest[tm] | (tm << (d * n_time))

    full_pairs = (1 << (n_dim * n_time)) - 1
    cover = [0] * (1 << n_loc)
    cover[0] = full_pairs
    found = []
    for lm in range(1, 1 << n_loc):
        g = (lm & -lm).bit_length() - 1
        cov = cover[lm & (lm - 1)] & loccover[g]
        cover[lm] = cov
        for jm in range(1, 1 << n_dim):
            needed_row = needed[jm]
            for tm in range(1, 1 << n_time):
                need = needed_row[tm]
                if need & ~cov:
                    continue
                if _extendable(lm, jm, tm, need, cov, loccover, needed, n_loc, n_dim, n_time):
                    continue
                found.append(
                    AgroTriple(_bits(lm), _bits(jm), _bits(tm), cube.axes)
                )
    return TripleSet(found, cube)


def _extendable(lm, jm, tm, need, cov, loccover, needed, n_loc, n_dim, n_time) -> bool:
    for x in range(n_loc):
        if lm >> x & 1:
            continue
        if need & ~loccover[x] == 0:
            return True
    for d in range(n_dim):
        if jm >> d & 1:
            continue
        if (tm << (d * n_time)) & ~cov == 0:
            return True
    for t in range(n_time):
        if tm >> t & 1:
            continue
        extra = needed[jm][tm | (1 << t)] & ~need
        if extra & ~cov == 0:
            return True
    return False


def is_maximal_box(cube: DataCube, triple: AgroTriple) -> bool:
    """True iff the triple's cells are all incident and no single axis can be
    enlarged while keeping them so."""
    require_same_axes(triple.axes, cube.axes)
    n_loc, n_dim, n_time = cube.axes
    ext_mask = 0
    for g in triple.extent:
        ext_mask |= 1 << g
    for d in triple.intent:
        for t in triple.times:
            if ext_mask & ~cube.loc_mask_at(d, t):
                return False
    # location extension
    for x in range(n_loc):
        if x in triple.extent:
            continue
        if all(cube.dim_mask_at(x, t) >> d & 1 for d in triple.intent for t in triple.times):
            return False
    # dimension extension
    for d in range(n_dim):
        if d in triple.intent:
            continue
        if all(ext_mask & ~cube.loc_mask_at(d, t) == 0 for t in triple.times):
            return False
    # timestamp extension
    for t in range(n_time):
        if t in triple.times:
            continue
        if all(ext_mask & ~cube.loc_mask_at(d, t) == 0 for d in triple.intent):
            return False
    return True
