"""Named graphs used by the CLI ``--fixture`` flag and the test-suite."""
from __future__ import annotations

from .graphs import Graph, RootedGraph, rooted_product

PAPER_G8_MATRIX = (
    (0, 1, 0, 0, 1, 1, 1, 0),
    (1, 0, 1, 0, 1, 1, 0, 1),
    (0, 1, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 1, 0, 0),
    (1, 1, 1, 1, 0, 0, 1, 1),
    (1, 1, 0, 1, 0, 0, 1, 1),
    (1, 0, 0, 0, 1, 1, 0, 0),
    (0, 1, 0, 0, 1, 1, 0, 0),
)


def paper_g8() -> Graph:
    """The 8-vertex controllable graph with det A = 1 and det W = -48."""
    return Graph.from_matrix(PAPER_G8_MATRIX)


def path_rooted_at_end(m: int) -> RootedGraph:
    return RootedGraph(Graph.path(m), 0)


def paper_g4() -> Graph:
    """paper_g8 with a pendant path P_4 (rooted at an end) glued on every vertex."""
    return rooted_product(paper_g8(), path_rooted_at_end(4))


FIXTURES = {"paper-g8": paper_g8, "paper-g4": paper_g4}
