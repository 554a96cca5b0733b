import random

import pytest
from hypothesis import strategies as st

from agrolattice.concepts import enumerate_agro_triples
from agrolattice.cube import AxisLabels, DataCube
from agrolattice.datasets import load_toy_cube


def make_labels(n_loc: int, n_dim: int, n_time: int) -> AxisLabels:
    return AxisLabels(
        tuple(f"L_{i + 1}" for i in range(n_loc)),
        tuple(f"J_{i + 1}" for i in range(n_dim)),
        tuple(f"T_{i + 1}" for i in range(n_time)),
    )


def make_random_cube(
    rng: random.Random,
    max_axis: int = 6,
    density: float = 0.4,
    min_axis: int = 1,
    orientation: str = "by_time",
) -> DataCube:
    n_loc = rng.randint(min_axis, max_axis)
    n_dim = rng.randint(min_axis, max_axis)
    n_time = rng.randint(min_axis, max_axis)
    facts = {
        (g, d, t)
        for g in range(n_loc)
        for d in range(n_dim)
        for t in range(n_time)
        if rng.random() < density
    }
    return DataCube(make_labels(n_loc, n_dim, n_time), facts, orientation)


@st.composite
def small_cubes(draw, max_axis: int = 4):
    n_loc = draw(st.integers(1, max_axis))
    n_dim = draw(st.integers(1, max_axis))
    n_time = draw(st.integers(1, max_axis))
    cells = [(g, d, t) for g in range(n_loc) for d in range(n_dim) for t in range(n_time)]
    facts = draw(st.sets(st.sampled_from(cells)))
    return DataCube(make_labels(n_loc, n_dim, n_time), facts)


@pytest.fixture(scope="session")
def toy_cube():
    return load_toy_cube()


@pytest.fixture(scope="session")
def toy_triples(toy_cube):
    return enumerate_agro_triples(toy_cube)
