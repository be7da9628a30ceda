import itertools
import math
import random
from pathlib import Path

import pytest

from dgscert.fixtures import paper_g4, paper_g8
from dgscert.graphs import Graph
from dgscert.intalg import IntPoly

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def random_graph(n, rng, prob=0.5):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < prob]
    return Graph.from_edges(n, edges)


def random_corpus(count, sizes, seed):
    rng = random.Random(seed)
    return [random_graph(rng.choice(sizes), rng) for _ in range(count)]


def leibniz_det(M, zero=0, one=1):
    """Permutation-expansion determinant; works for ints and IntPoly entries."""
    n = len(M)
    total = zero
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + (term if inv % 2 == 0 else -term)
    return total


def determinantal_divisor_snf(M):
    """Invariant factors via gcds of all k x k minors (d_k = D_k / D_{k-1})."""
    n = len(M)
    D = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, leibniz_det([[M[i][j] for j in cols] for i in rows]) if k <= 3
                             else _bareiss([[M[i][j] for j in cols] for i in rows]))
                if g == 1:
                    break
            if g == 1:
                break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, n + 1)]


def _bareiss(M):
    # independent from the package's det: plain fraction elimination
    from fractions import Fraction

    a = [[Fraction(x) for x in row] for row in M]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return int(det)


def symbolic_char_poly(A):
    """det(xI - A) by permutation expansion over IntPoly."""
    n = len(A)
    M = [[IntPoly((-A[i][j], int(i == j))) for j in range(n)] for i in range(n)]
    return leibniz_det(M, IntPoly(), IntPoly((1,)))


def gm_switch(G, C):
    """Godsil-McKay switching on the 4-set C, or None if C is not a switching set."""
    C = list(C)
    inside = [[G.has_edge(u, v) for v in C] for u in C]
    if len({sum(r) for r in inside}) != 1:
        return None
    rows = [list(G.adjacency[i]) for i in range(G.n)]
    changed = False
    for v in range(G.n):
        if v in C:
            continue
        k = sum(G.has_edge(v, c) for c in C)
        if k not in (0, 2, 4):
            return None
        if k == 2:
            changed = True
            for c in C:
                rows[v][c] ^= 1
                rows[c][v] ^= 1
    return Graph.from_matrix(rows) if changed else None


def gm_pairs(count, sizes, seed, controllable=True):
    """Generalized cospectral pairs from GM switching (the switched graph keeps
    both spectra because the switching set induces a regular graph)."""
    from dgscert.graphs import is_isomorphic
    from dgscert.spectral import is_controllable

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice(sizes)
        G = random_graph(n, rng)
        if controllable and not is_controllable(G):
            continue
        for C in itertools.combinations(range(n), 4):
            H = gm_switch(G, C)
            if H is not None and not is_isomorphic(G, H):
                out.append((G, H))
                break
    return out


@pytest.fixture(scope="session")
def g8():
    return paper_g8()


@pytest.fixture(scope="session")
def g4():
    return paper_g4()
