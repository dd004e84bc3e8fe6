import random
from pathlib import Path

import pytest

from lattir import FormalContext

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

# 4 sources x 5 properties; its lattice has 9 concepts
SOURCE_ROWS = {
    "s1": frozenset({"p1", "p2", "p4"}),
    "s2": frozenset({"p3", "p5"}),
    "s3": frozenset({"p1", "p2", "p3", "p5"}),
    "s4": frozenset({"p1", "p2", "p3", "p4"}),
}
SOURCE_ATTRS = ("p1", "p2", "p3", "p4", "p5")

# 5 documents x 6 terms; its lattice has 11 concepts
IMAGING_ROWS = {
    "d1": frozenset({"image", "segmentation", "probability"}),
    "d2": frozenset({"image", "segmentation"}),
    "d3": frozenset({"image", "classification"}),
    "d4": frozenset({"detection", "segmentation", "probability"}),
    "d5": frozenset({"detection", "vision"}),
}
IMAGING_ATTRS = (
    "classification",
    "detection",
    "image",
    "probability",
    "segmentation",
    "vision",
)


@pytest.fixture
def source_ctx():
    return FormalContext(sorted(SOURCE_ROWS), SOURCE_ATTRS, SOURCE_ROWS)


@pytest.fixture
def imaging_ctx():
    return FormalContext(sorted(IMAGING_ROWS), IMAGING_ATTRS, IMAGING_ROWS)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def random_rows(rng, max_objects=12, max_attributes=12, density=0.5):
    n = rng.randint(1, max_objects)
    m = rng.randint(1, max_attributes)
    objects = [f"g{j}" for j in range(n)]
    attributes = [f"m{i:02d}" for i in range(m)]
    rows = {
        g: frozenset(a for a in attributes if rng.random() < density) for g in objects
    }
    return objects, attributes, rows


def random_context(rng, **kwargs):
    objects, attributes, rows = random_rows(rng, **kwargs)
    return FormalContext(objects, attributes, rows)


@pytest.fixture
def rng():
    return random.Random(0x5EED)
