"""Ordering of triples, Hasse diagrams, lattice bounds and isomorphism.

The order puts a triple below another when it has fewer locations but more
dimensions and timestamps; the node with the larger extent is the super
triple.  Bound queries return the unique least/greatest bound when the node
set contains one and the frontier of minimal upper (or maximal lower) bounds
otherwise, alongside the raw component-formula value.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .concepts import AgroTriple, TripleSet, _bits, _closed_intersections
from .cube import DataCube, dim_closure, loc_closure, require_same_axes
from .errors import NodeNotInLattice

__all__ = [
    "ArtificialBound",
    "BoundResult",
    "FlatConcept",
    "SpatioTemporalLattice",
    "build_lattice",
    "check_isomorphic",
    "flatten_lattice",
    "join",
    "meet",
    "precedes",
]


@dataclass(frozen=True, order=True)
class FlatConcept:
    """A dyadic concept of the flattened context: locations against
    (dimension, timestamp) pairs."""

    extent: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    axes: tuple[int, int, int]

    def component_names(self, labels):
        return (
            tuple(labels.locations[g] for g in self.extent),
            tuple((labels.dimensions[d], labels.timestamps[t]) for d, t in self.pairs),
        )


@dataclass(frozen=True, order=True)
class ArtificialBound:
    """Synthetic top or bottom element added on request."""

    kind: str  # "top" | "bottom"


@dataclass(frozen=True)
class BoundResult:
    """Outcome of a join or meet query.

    ``exact`` is the least upper (greatest lower) bound when the node set
    contains one; ``frontier`` holds the minimal upper (maximal lower)
    bounds otherwise, and equals ``(exact,)`` when exact exists.
    ``formula_value`` is the raw component formula evaluated on the two
    arguments; it may name a combination that is not a node and is None when
    an artificial bound takes part.
    """

    exact: object | None
    frontier: tuple
    formula_value: object | None


def precedes(a: AgroTriple, b: AgroTriple) -> bool:
    """True iff ``b`` is a super triple of ``a`` (or they are equal):
    a.extent within b.extent, b.intent within a.intent, b.times within
    a.times.  Raises AxisMismatch for triples over different axes."""
    require_same_axes(a.axes, b.axes)
    return (
        set(a.extent) <= set(b.extent)
        and set(b.intent) <= set(a.intent)
        and set(b.times) <= set(a.times)
    )


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class SpatioTemporalLattice:
    """An ordered node set with its Hasse diagram.

    Nodes are AgroTriple or FlatConcept values (plus ArtificialBound
    sentinels when requested).  ``hasse_edges`` holds (child_index,
    parent_index) pairs: the transitive reduction of the strict order, child
    below parent.  Instances are immutable and safe to share.
    """

    def __init__(self, nodes, above, cube, has_artificial_top=False, has_artificial_bottom=False):
        self.nodes: tuple = tuple(nodes)
        self.cube: DataCube | None = cube
        self.has_artificial_top = has_artificial_top
        self.has_artificial_bottom = has_artificial_bottom
        self._above = list(above)  # above[i]: bitmask of j with node_i <= node_j (incl. i)
        n = len(self.nodes)
        below = [0] * n
        for i in range(n):
            m = above[i]
            while m:
                j = (m & -m).bit_length() - 1
                below[j] |= 1 << i
                m &= m - 1
        self._below = below
        self._index = {node: i for i, node in enumerate(self.nodes)}
        self.hasse_edges: tuple[tuple[int, int], ...] = tuple(self._covers())

    def _covers(self):
        edges = []
        for i in range(len(self.nodes)):
            strict_above = self._above[i] & ~(1 << i)
            m = strict_above
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                # j covers i iff nothing sits strictly between them
                if strict_above & (self._below[j] & ~(1 << j)) == 0:
                    edges.append((i, j))
        edges.sort()
        return edges

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.hasse_edges)

    def index(self, node) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise NodeNotInLattice(f"{node!r} is not a node of this lattice") from None

    def leq(self, a, b) -> bool:
        """Reflexive order test between two nodes."""
        ia, ib = self.index(a), self.index(b)
        return bool(self._above[ia] >> ib & 1)

    def above(self, node) -> tuple:
        """All nodes greater than or equal to ``node``."""
        return tuple(self.nodes[j] for j in _bits(self._above[self.index(node)]))

    def below(self, node) -> tuple:
        return tuple(self.nodes[j] for j in _bits(self._below[self.index(node)]))

    def order_pairs(self):
        """Yield every (lower_index, upper_index) pair of the reflexive order."""
        for i in range(len(self.nodes)):
            for j in _bits(self._above[i]):
                yield (i, j)

    # -- bound queries ----------------------------------------------------

    def _bound(self, a, b, upward: bool) -> BoundResult:
        ia, ib = self.index(a), self.index(b)
        rel = self._above if upward else self._below
        dual = self._below if upward else self._above
        common = rel[ia] & rel[ib]
        extremal = []
        m = common
        while m:
            x = (m & -m).bit_length() - 1
            m &= m - 1
            if (dual[x] & ~(1 << x)) & common == 0:
                extremal.append(x)
        frontier = tuple(self.nodes[x] for x in extremal)
        exact = frontier[0] if len(frontier) == 1 else None
        return BoundResult(exact, frontier, self._formula(a, b, upward))

    def join(self, a, b) -> BoundResult:
        """Least upper bound of two nodes, or the minimal-upper-bound
        frontier when none is unique."""
        return self._bound(a, b, upward=True)

    def meet(self, a, b) -> BoundResult:
        """Greatest lower bound of two nodes, or the maximal-lower-bound
        frontier when none is unique."""
        return self._bound(a, b, upward=False)

    def _formula(self, a, b, upward: bool):
        if self.cube is None or isinstance(a, ArtificialBound) or isinstance(b, ArtificialBound):
            return None
        cube = self.cube
        if isinstance(a, AgroTriple) and isinstance(b, AgroTriple):
            if upward:
                # upward formula: pool locations, intersect closed dimension
                # sets, intersect timestamps
                return AgroTriple(
                    sorted(set(a.extent) | set(b.extent)),
                    sorted(set(dim_closure(cube, a.intent)) & set(dim_closure(cube, b.intent))),
                    sorted(set(a.times) & set(b.times)),
                    a.axes,
                )
            return AgroTriple(
                sorted(set(loc_closure(cube, a.extent)) & set(loc_closure(cube, b.extent))),
                sorted(set(a.intent) | set(b.intent)),
                sorted(set(a.times) | set(b.times)),
                a.axes,
            )
        if isinstance(a, FlatConcept) and isinstance(b, FlatConcept):
            if upward:
                pairs = tuple(sorted(set(a.pairs) & set(b.pairs)))
                extent = _locs_having_pairs(cube, pairs)
            else:
                extent = tuple(sorted(set(a.extent) & set(b.extent)))
                pairs = _pairs_shared_by(cube, extent)
            return FlatConcept(extent, pairs, a.axes)
        return None


def build_lattice(triples: TripleSet, add_bounds: bool = False) -> SpatioTemporalLattice:
    """Order a triple set and compute its Hasse diagram.

    Node order is the canonical order of the triple set.  With
    ``add_bounds`` an artificial bottom and/or top sentinel is appended when
    the order lacks a unique least and/or greatest node.
    """
    nodes = list(triples)
    ext = [_mask(t.extent) for t in nodes]
    itn = [_mask(t.intent) for t in nodes]
    tms = [_mask(t.times) for t in nodes]
    n = len(nodes)
    above = [0] * n
    for i in range(n):
        ei, ii, ti = ext[i], itn[i], tms[i]
        m = 0
        for j in range(n):
            if ei & ~ext[j] == 0 and itn[j] & ~ii == 0 and tms[j] & ~ti == 0:
                m |= 1 << j
        above[i] = m
    nodes, above, has_top, has_bottom = _maybe_add_bounds(nodes, above, add_bounds)
    return SpatioTemporalLattice(nodes, above, triples.cube, has_top, has_bottom)


def _locs_having_pairs(cube: DataCube, pairs) -> tuple[int, ...]:
    mask = (1 << cube.n_locations) - 1
    for d, t in pairs:
        mask &= cube.loc_mask_at(d, t)
    return _bits(mask)


def _pairs_shared_by(cube: DataCube, locs) -> tuple[tuple[int, int], ...]:
    out = []
    for d in range(cube.n_dimensions):
        for t in range(cube.n_timestamps):
            m = cube.loc_mask_at(d, t)
            if all(m >> g & 1 for g in locs):
                out.append((d, t))
    return tuple(out)


def flatten_lattice(cube: DataCube, add_bounds: bool = False) -> SpatioTemporalLattice:
    """The complete concept lattice of the flattened context.

    Objects are locations and attributes are (dimension, timestamp) pairs,
    so every pair of nodes has a unique join and meet.  Boundary concepts
    with an empty extent or an empty pair set are kept; they are what make
    the lattice complete.
    """
    n_loc, n_dim, n_time = cube.axes
    rows = []
    for g in range(n_loc):
        m = 0
        for t in range(n_time):
            dmask = cube.dim_mask_at(g, t)
            while dmask:
                low = dmask & -dmask
                m |= 1 << ((low.bit_length() - 1) * n_time + t)
                dmask &= dmask - 1
        rows.append(m)
    universe = (1 << (n_dim * n_time)) - 1
    nodes = []
    for pair_mask in _closed_intersections(rows, universe):
        extent = tuple(g for g in range(n_loc) if pair_mask & ~rows[g] == 0)
        pairs = tuple((b // n_time, b % n_time) for b in _bits(pair_mask))
        nodes.append(FlatConcept(extent, pairs, cube.axes))
    nodes.sort()
    n = len(nodes)
    ext = [_mask(c.extent) for c in nodes]
    above = [0] * n
    for i in range(n):
        ei = ext[i]
        m = 0
        for j in range(n):
            if ei & ~ext[j] == 0:
                m |= 1 << j
        above[i] = m
    nodes, above, has_top, has_bottom = _maybe_add_bounds(nodes, above, add_bounds)
    return SpatioTemporalLattice(nodes, above, cube, has_top, has_bottom)


def _maybe_add_bounds(nodes: list, above: list[int], add_bounds: bool):
    """Append artificial bottom/top sentinels when requested and missing."""
    if not add_bounds:
        return nodes, above, False, False
    n = len(nodes)
    full = (1 << n) - 1
    below = [0] * n
    for i in range(n):
        m = above[i]
        while m:
            j = (m & -m).bit_length() - 1
            below[j] |= 1 << i
            m &= m - 1
    minimals = [i for i in range(n) if below[i] == 1 << i]
    maximals = [i for i in range(n) if above[i] == 1 << i]
    need_bottom = len(minimals) != 1
    need_top = len(maximals) != 1
    if not (need_bottom or need_top):
        return nodes, above, False, False
    nodes = list(nodes)
    above = list(above)
    if need_bottom:
        nodes.append(ArtificialBound("bottom"))
        bottom = len(above)
        above.append(full | (1 << bottom))
    if need_top:
        nodes.append(ArtificialBound("top"))
        top = len(above)
        for i in range(len(above)):
            above[i] |= 1 << top
        above.append(1 << top)
    return nodes, above, need_top, need_bottom


def join(lattice: SpatioTemporalLattice, a, b) -> BoundResult:
    return lattice.join(a, b)


def meet(lattice: SpatioTemporalLattice, a, b) -> BoundResult:
    return lattice.meet(a, b)


def _node_signature(node):
    if isinstance(node, AgroTriple):
        return ("triple", len(node.extent), len(node.intent), len(node.times))
    if isinstance(node, FlatConcept):
        return ("flat", len(node.extent), len(node.pairs))
    return ("bound", node.kind)


def check_isomorphic(first: SpatioTemporalLattice, second: SpatioTemporalLattice) -> bool:
    """Order-isomorphism of two lattices, refusing to identify nodes whose
    component-size signatures differ.

    Compares cheap invariants first (node and edge counts, degree/signature
    multisets) and falls back to a full isomorphism search on the Hasse
    diagrams only when those agree.
    """
    if len(first.nodes) != len(second.nodes):
        return False
    if len(first.hasse_edges) != len(second.hasse_edges):
        return False

    def profile(lat):
        indeg = [0] * len(lat.nodes)
        outdeg = [0] * len(lat.nodes)
        for child, parent in lat.hasse_edges:
            outdeg[child] += 1
            indeg[parent] += 1
        return sorted(
            (_node_signature(node), indeg[i], outdeg[i]) for i, node in enumerate(lat.nodes)
        )

    if profile(first) != profile(second):
        return False

    import networkx as nx

    def digraph(lat):
        g = nx.DiGraph()
        for i, node in enumerate(lat.nodes):
            g.add_node(i, sig=_node_signature(node))
        g.add_edges_from(lat.hasse_edges)
        return g

    return nx.is_isomorphic(
        digraph(first),
        digraph(second),
        node_match=lambda a, b: a["sig"] == b["sig"],
    )
