"""Bundled example data."""

from __future__ import annotations

from importlib.resources import as_file, files

from .cube import DataCube, reorient
from .io import ingest

__all__ = ["load_toy_cube"]


def load_toy_cube(orientation: str = "by_time") -> DataCube:
    """The packaged toy cube: 10 locations, 6 dimensions, 4 timestamps,
    149 facts.  This is the dataset the conformance report is written
    against."""
    resource = files("agrolattice").joinpath("data/toy.wide.csv")
    with as_file(resource) as path:
        cube = ingest(path, "wide-csv")
    return reorient(cube, orientation)
