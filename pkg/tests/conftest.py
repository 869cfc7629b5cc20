import random

import pytest

from ufgdepth import ItemUniverse, PosetSample, enumerate_posets, poset_from_edges


@pytest.fixture
def u3():
    return ItemUniverse.of("y1", "y2", "y3")


@pytest.fixture
def worked_sample(u3):
    """Three observed posets whose depth values are known exactly."""
    p1 = poset_from_edges(u3, [("y1", "y2")])
    p2 = poset_from_edges(u3, [("y1", "y2"), ("y1", "y3")])
    p3 = poset_from_edges(u3, [("y1", "y3"), ("y2", "y3")])
    return PosetSample.from_posets([p1, p2, p3]), (p1, p2, p3)


@pytest.fixture
def worked_sample_b(u3):
    """Same sum-statistics as worked_sample but a different depth function."""
    q1 = poset_from_edges(u3, [("y1", "y2")])
    q2 = poset_from_edges(u3, [("y1", "y3")])
    q3 = poset_from_edges(u3, [("y1", "y2"), ("y2", "y3")])
    return PosetSample.from_posets([q1, q2, q3]), (q1, q2, q3)


@pytest.fixture
def crown():
    """The standard 8-element poset of order dimension four: a_i < b_j iff i != j."""
    labels = tuple(f"a{i}" for i in range(1, 5)) + tuple(f"b{i}" for i in range(1, 5))
    u = ItemUniverse(labels)
    edges = [(f"a{i}", f"b{j}") for i in range(1, 5) for j in range(1, 5) if i != j]
    return poset_from_edges(u, edges)


def random_sample(universe: ItemUniverse, rng: random.Random,
                  n_obs: int, max_unique: int | None = None) -> PosetSample:
    pool = enumerate_posets(universe)
    if max_unique is not None:
        pool = rng.sample(pool, min(max_unique, len(pool)))
    return PosetSample.from_posets([rng.choice(pool) for _ in range(n_obs)])
