"""Bundled graph fixtures.

* ``k4``                  -- complete graph on 4 vertices (= folded 3-cube)
* ``c5``                  -- 5-cycle (has no disjoint automorphism pair)
* ``clebsch``             -- folded 5-cube on bit words, edge list generated
                             from :func:`qsym.folded_cube` (5)
* ``clebsch_pentagonal``  -- the same graph under the 1-based labeling of the
                             classic pentagonal drawing (outer pentagon 1..5
                             ring, middle and inner rings, center 15),
                             converted to 0-based vertices; the pair
                             sigma = (1 2)(5 6)(9 10)(13 14),
                             tau = (0 3)(4 7)(8 11)(12 15)
                             is a disjoint pair of automorphisms in this
                             labeling (see ``PENTAGONAL_SIGMA`` / ``_TAU``)
"""

from importlib import resources

from ..graphs import Graph, Permutation

__all__ = [
    "fixture_names",
    "load_graph",
    "fixture_path",
    "PENTAGONAL_SIGMA",
    "PENTAGONAL_TAU",
]

_NAMES = ("k4", "c5", "clebsch", "clebsch_pentagonal")

#: disjoint automorphism pair of the pentagonal-labeled Clebsch graph
PENTAGONAL_SIGMA = Permutation.from_cycles(16, [(1, 2), (5, 6), (9, 10), (13, 14)])
PENTAGONAL_TAU = Permutation.from_cycles(16, [(0, 3), (4, 7), (8, 11), (12, 15)])


def fixture_names() -> tuple[str, ...]:
    return _NAMES


def fixture_path(name: str):
    """Filesystem path of a bundled fixture (for handing to the CLI)."""
    if name not in _NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(_NAMES)}")
    return resources.files(__package__).joinpath(f"{name}.json")


def load_graph(name: str) -> Graph:
    return Graph.load(fixture_path(name))
