"""File formats: cube ingestion and deterministic artifact serialization.

Three cube formats are supported.  ``long-csv`` lists one fact per row under
the header ``location,dimension,timestamp``; an optional sidecar JSON file
(``<input>.axes.json``) declares the axis label orders explicitly, otherwise
axes follow first appearance.  ``wide-csv`` has the header
``location,timestamp,<dim1>,...,<dimK>`` with cell values ``1`` or ``c`` for
present and empty or ``0`` for absent.  ``cube-json`` is an object with
``locations``, ``dimensions``, ``timestamps`` string arrays and an
``incidence`` array of ``[location, dimension, timestamp]`` name triples.
All files are UTF-8; LF and CRLF both parse.

Serializers render names, never indices, and emit canonically ordered,
byte-deterministic text.  Separator characters (``;`` ``|`` ``,``) must not
appear inside axis labels destined for the text formats.
"""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction
from pathlib import Path

from .concepts import AgroTriple, TripleSet
from .cube import AxisLabels, DataCube, build_cube
from .errors import DuplicateHeader, ParseError
from .lattice import ArtificialBound, FlatConcept, SpatioTemporalLattice
from .rules import RuleSet

__all__ = [
    "INPUT_FORMATS",
    "export_cube",
    "format_ratio",
    "ingest",
    "lattice_to_dot",
    "lattice_to_json",
    "parse_ratio",
    "rules_to_csv",
    "triples_to_text",
    "write_text",
]

INPUT_FORMATS = ("long-csv", "wide-csv", "cube-json")

LONG_HEADER = ["location", "dimension", "timestamp"]
PRESENT_MARKS = {"1", "c"}
ABSENT_MARKS = {"", "0"}


def ingest(path: str | Path, input_format: str) -> DataCube:
    """Read a cube from ``path`` in one of the three supported formats."""
    path = Path(path)
    if input_format == "long-csv":
        return _ingest_long_csv(path)
    if input_format == "wide-csv":
        return _ingest_wide_csv(path)
    if input_format == "cube-json":
        return _ingest_cube_json(path)
    raise ValueError(f"input format must be one of {INPUT_FORMATS}, got {input_format!r}")


def _read_rows(path: Path) -> list[list[str]]:
    with open(path, encoding="utf-8", newline="") as handle:
        return [row for row in csv.reader(handle)]


def _sidecar_axes(path: Path) -> AxisLabels | None:
    sidecar = path.with_name(path.name + ".axes.json")
    if not sidecar.exists():
        return None
    data = json.loads(sidecar.read_text(encoding="utf-8"))
    try:
        return AxisLabels(
            tuple(data["locations"]), tuple(data["dimensions"]), tuple(data["timestamps"])
        )
    except KeyError as exc:
        raise ParseError(1, f"sidecar {sidecar.name} is missing key {exc}") from None


def _ingest_long_csv(path: Path) -> DataCube:
    rows = _read_rows(path)
    if not rows:
        raise ParseError(1, "empty file, expected header 'location,dimension,timestamp'")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        raise DuplicateHeader(next(h for h in header if header.count(h) > 1))
    if header != LONG_HEADER:
        raise ParseError(1, f"expected header {','.join(LONG_HEADER)!r}, got {','.join(header)!r}")
    facts = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(lineno, f"expected 3 fields, got {len(row)}")
        facts.append((row[0], row[1], row[2]))
    labels = _sidecar_axes(path)
    if labels is None:
        labels = AxisLabels(
            _first_seen(f[0] for f in facts),
            _first_seen(f[1] for f in facts),
            _first_seen(f[2] for f in facts),
        )
    return build_cube(labels, facts)


def _first_seen(values) -> tuple[str, ...]:
    return tuple(dict.fromkeys(values))


def _ingest_wide_csv(path: Path) -> DataCube:
    rows = _read_rows(path)
    if not rows:
        raise ParseError(1, "empty file, expected header 'location,timestamp,<dims...>'")
    header = [h.strip() for h in rows[0]]
    if len(header) < 3 or header[0] != "location" or header[1] != "timestamp":
        raise ParseError(1, "expected header 'location,timestamp,<dim1>,...,<dimK>'")
    dims = tuple(header[2:])
    if len(set(dims)) != len(dims):
        raise DuplicateHeader(next(d for d in dims if dims.count(d) > 1))
    facts = []
    locations: dict[str, None] = {}
    timestamps: dict[str, None] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(lineno, f"expected {len(header)} fields, got {len(row)}")
        loc, time = row[0], row[1]
        locations.setdefault(loc)
        timestamps.setdefault(time)
        for dim, mark in zip(dims, row[2:]):
            mark = mark.strip()
            if mark in PRESENT_MARKS:
                facts.append((loc, dim, time))
            elif mark not in ABSENT_MARKS:
                raise ParseError(lineno, f"cell value {mark!r} is not one of '', '0', '1', 'c'")
    labels = AxisLabels(tuple(locations), dims, tuple(timestamps))
    return build_cube(labels, facts)


def _ingest_cube_json(path: Path) -> DataCube:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from None
    for key in ("locations", "dimensions", "timestamps", "incidence"):
        if key not in data:
            raise ParseError(1, f"missing key {key!r}")
    labels = AxisLabels(
        tuple(data["locations"]), tuple(data["dimensions"]), tuple(data["timestamps"])
    )
    facts = []
    for entry in data["incidence"]:
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise ParseError(1, f"incidence entry {entry!r} is not a [location, dimension, timestamp] triple")
        facts.append(tuple(entry))
    return build_cube(labels, facts)


def export_cube(cube: DataCube, path: str | Path, output_format: str) -> None:
    """Write a cube to ``path``.  ``long-csv`` also writes the axis sidecar
    so a re-ingest reproduces the exact label order."""
    path = Path(path)
    labels = cube.labels
    if output_format == "long-csv":
        lines = [",".join(LONG_HEADER)]
        for g, d, t in sorted(cube.incidence):
            lines.append(f"{labels.locations[g]},{labels.dimensions[d]},{labels.timestamps[t]}")
        write_text(path, "\n".join(lines) + "\n")
        sidecar = {
            "locations": list(labels.locations),
            "dimensions": list(labels.dimensions),
            "timestamps": list(labels.timestamps),
        }
        write_text(path.with_name(path.name + ".axes.json"), _dump_json(sidecar))
    elif output_format == "wide-csv":
        lines = ["location,timestamp," + ",".join(labels.dimensions)]
        for t in range(cube.n_timestamps):
            for g in range(cube.n_locations):
                row = cube.dim_mask_at(g, t)
                marks = ",".join("c" if row >> d & 1 else "" for d in range(cube.n_dimensions))
                lines.append(f"{labels.locations[g]},{labels.timestamps[t]},{marks}")
        write_text(path, "\n".join(lines) + "\n")
    elif output_format == "cube-json":
        doc = {
            "locations": list(labels.locations),
            "dimensions": list(labels.dimensions),
            "timestamps": list(labels.timestamps),
            "incidence": [
                [labels.locations[g], labels.dimensions[d], labels.timestamps[t]]
                for g, d, t in sorted(cube.incidence)
            ],
        }
        write_text(path, _dump_json(doc))
    else:
        raise ValueError(f"output format must be one of {INPUT_FORMATS}, got {output_format!r}")


def write_text(path: str | Path, text: str) -> None:
    """Atomic write: the target file appears complete or not at all."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def format_ratio(value: Fraction) -> str:
    """Exact fraction with a six-place decimal rendering, e.g. '3/4 (0.750000)'."""
    return f"{value.numerator}/{value.denominator} ({float(value):.6f})"


def parse_ratio(text: str) -> Fraction:
    """Parse '0.7' or '7/10' into an exact rational."""
    return Fraction(text)


def _triple_line(triple: AgroTriple, labels: AxisLabels) -> str:
    locs, dims, times = triple.component_names(labels)
    return ";".join("|".join(part) for part in (locs, dims, times))


def triples_to_text(triples: TripleSet) -> str:
    """One row per triple: 'extent;intent;times', members '|'-joined."""
    labels = triples.cube.labels
    return "".join(_triple_line(t, labels) + "\n" for t in triples)


def rules_to_csv(rules: RuleSet) -> str:
    """CSV with header antecedent,consequent,timestamps,support,confidence."""
    labels = rules.cube.labels
    lines = ["antecedent,consequent,timestamps,support,confidence"]
    for rule in rules:
        ante, cons, times = rule.component_names(labels)
        lines.append(
            ",".join(
                (
                    "|".join(ante),
                    "|".join(cons),
                    "|".join(times),
                    format_ratio(rule.support),
                    format_ratio(rule.confidence),
                )
            )
        )
    return "\n".join(lines) + "\n"


def _node_label(node, labels: AxisLabels) -> str:
    if isinstance(node, AgroTriple):
        return _triple_line(node, labels)
    if isinstance(node, FlatConcept):
        locs, pairs = node.component_names(labels)
        return "|".join(locs) + ";" + "|".join(f"{d}@{t}" for d, t in pairs)
    if isinstance(node, ArtificialBound):
        return node.kind.upper()
    return repr(node)


def lattice_to_dot(lattice: SpatioTemporalLattice) -> str:
    """Graphviz rendering of the Hasse diagram, one edge per covering pair
    pointing child to parent."""
    labels = lattice.cube.labels if lattice.cube is not None else None
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i, node in enumerate(lattice.nodes):
        text = _node_label(node, labels) if labels is not None else repr(node)
        lines.append(f'  n{i} [label="{text}"];')
    for child, parent in lattice.hasse_edges:
        lines.append(f"  n{child} -> n{parent};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _node_json(node, labels: AxisLabels):
    if isinstance(node, AgroTriple):
        locs, dims, times = node.component_names(labels)
        return {"extent": list(locs), "intent": list(dims), "times": list(times)}
    if isinstance(node, FlatConcept):
        locs, pairs = node.component_names(labels)
        return {"extent": list(locs), "pairs": [list(p) for p in pairs]}
    return {"bound": node.kind}


def lattice_to_json(lattice: SpatioTemporalLattice) -> str:
    """Canonical JSON document for a lattice: nodes, covering edges, counts."""
    labels = lattice.cube.labels if lattice.cube is not None else None
    doc = {
        "node_count": lattice.node_count,
        "edge_count": lattice.edge_count,
        "has_artificial_top": lattice.has_artificial_top,
        "has_artificial_bottom": lattice.has_artificial_bottom,
        "nodes": [
            _node_json(node, labels) if labels is not None else {"node": repr(node)}
            for node in lattice.nodes
        ],
        "hasse_edges": [list(edge) for edge in lattice.hasse_edges],
    }
    return _dump_json(doc)
