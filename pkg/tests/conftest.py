import pytest

from sociophys import Budgets, Instance, PhysicalNode, SocialGraph, SocialNode


def make_instance(nodes, edges=(), budgets=(1, 1), covers=None) -> Instance:
    """Build an instance from shorthand.

    ``nodes`` holds (id, weight) or (id, weight, threshold) tuples.  By
    default every social node gets its own station (id 's:x' -> 'p:x');
    pass ``covers`` as {physical_id: [social ids]} to override.
    """
    social = tuple(SocialNode(*spec) for spec in nodes)
    if covers is None:
        physical = tuple(
            PhysicalNode(f"p:{nd.id.removeprefix('s:')}", (nd.id,)) for nd in social
        )
    else:
        physical = tuple(PhysicalNode(pid, tuple(targets))
                         for pid, targets in covers.items())
    return Instance(
        graph=SocialGraph(social, tuple(edges)),
        physical_nodes=physical,
        budgets=Budgets(*budgets),
    )


@pytest.fixture
def path3() -> Instance:
    """a(5) -> b(3) -> c(2), one station each, budgets (1, 2)."""
    return make_instance(
        [("s:a", 5.0), ("s:b", 3.0), ("s:c", 2.0)],
        [("s:a", "s:b"), ("s:b", "s:c")],
        budgets=(1, 2),
    )


@pytest.fixture
def two_paths() -> Instance:
    """a(6) -> b(4) plus isolated c(7), budgets (2, 2)."""
    return make_instance(
        [("s:a", 6.0), ("s:b", 4.0), ("s:c", 7.0)],
        [("s:a", "s:b")],
        budgets=(2, 2),
    )


@pytest.fixture
def diamond() -> Instance:
    """a(2) and b(3) both feed c(4), which needs two active in-neighbors."""
    return make_instance(
        [("s:a", 2.0), ("s:b", 3.0), ("s:c", 4.0, 2)],
        [("s:a", "s:c"), ("s:b", "s:c")],
        budgets=(2, 3),
    )


@pytest.fixture
def star3() -> Instance:
    """a(1) -> {b(5), c(4), d(3)}, budgets (1, 3)."""
    return make_instance(
        [("s:a", 1.0), ("s:b", 5.0), ("s:c", 4.0), ("s:d", 3.0)],
        [("s:a", "s:b"), ("s:a", "s:c"), ("s:a", "s:d")],
        budgets=(1, 3),
    )
