"""Simple undirected graphs: construction, I/O and the rooted product."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .intalg import Matrix

DEFAULT_ISO_LIMIT = 10


class GraphFormatError(ValueError):
    """Malformed graph6 or edge-list input."""


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 0..n-1, stored as row bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count does not match n")
        for i, r in enumerate(self.rows):
            if r >> self.n:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if r >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            for j in range(self.n):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_matrix(cls, A: Sequence[Sequence[int]]) -> "Graph":
        n = len(A)
        rows = []
        for i, row in enumerate(A):
            if len(row) != n:
                raise ValueError("adjacency matrix must be square")
            mask = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise ValueError(f"adjacency entry {x!r} is not 0/1")
                if x:
                    mask |= 1 << j
            rows.append(mask)
        return cls(n, tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"invalid edge ({u}, {v}) for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r >> j & 1 for j in range(self.n)) for r in self.rows)

    def matrix(self) -> Matrix:
        """A fresh mutable copy of the adjacency matrix."""
        return [list(r) for r in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.rows[i] >> j & 1]

    @property
    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def degrees(self) -> list[int]:
        return [bin(r).count("1") for r in self.rows]

    def permuted(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex i renamed perm[i]."""
        rows = [0] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i] >> j & 1:
                    rows[perm[i]] |= 1 << perm[j]
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, graph6={to_graph6(self)!r})"


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise ValueError(f"root {self.root} out of range for a graph on {self.graph.n} vertices")

    @property
    def m(self) -> int:
        return self.graph.n


# ---------------------------------------------------------------------------
# graph6 and edge lists
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(G: Graph) -> str:
    bits = [G.rows[i] >> j & 1 for j in range(G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(G.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise GraphFormatError(f"invalid character in graph6 string {text!r}")
    data = [ord(ch) - 63 for ch in s]
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            if len(data) < 8:
                raise GraphFormatError("truncated graph6 size field")
            n = 0
            for x in data[2:8]:
                n = n << 6 | x
            data = data[8:]
        else:
            if len(data) < 4:
                raise GraphFormatError("truncated graph6 size field")
            n = data[1] << 12 | data[2] << 6 | data[3]
            data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise GraphFormatError(
            f"graph6 body has {len(data)} bytes, expected {(nbits + 5) // 6} for n={n}"
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if data[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def to_edge_list(G: Graph) -> str:
    edges = G.edges()
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        header = [int(x) for x in lines[0]]
        pairs = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token in edge list: {exc}") from None
    if len(header) != 2:
        raise GraphFormatError("edge-list header must be 'n m'")
    n, m = header
    if len(pairs) != m or any(len(pr) != 2 for pr in pairs):
        raise GraphFormatError(f"edge list declares {m} edges but has {len(pairs)} pair lines")
    try:
        return Graph.from_edges(n, pairs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, tuple(full ^ r ^ (1 << i) for i, r in enumerate(G.rows)))


def walk_matrix(G: Graph) -> Matrix:
    """n x n matrix whose k-th column is A^k e."""
    n = G.n
    nbrs = [[j for j in range(n) if r >> j & 1] for r in G.rows]
    cols = []
    v = [1] * n
    for _ in range(n):
        cols.append(v)
        v = [sum(v[j] for j in nb) for nb in nbrs]
    return [[cols[k][i] for k in range(n)] for i in range(n)]


def delete_vertex(G: Graph, v: int) -> Graph:
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range")
    keep = [i for i in range(G.n) if i != v]
    return Graph.from_matrix([[G.adjacency[i][j] for j in keep] for i in keep])


def rooted_product(G: Graph, H: RootedGraph) -> Graph:
    """G o H^(v): a copy of H glued by its root onto every vertex of G.

    Vertex (h, g) is numbered h * n + g, so that the adjacency matrix equals
    A(H) (x) I_n + D_v (x) A(G).
    """
    n, m, v = G.n, H.m, H.root
    rows = [0] * (n * m)
    for h in range(m):
        for h2 in range(m):
            if H.graph.has_edge(h, h2):
                for g in range(n):
                    rows[h * n + g] |= 1 << (h2 * n + g)
    for g in range(n):
        rows[v * n + g] |= G.rows[g] << (v * n)
    return Graph(n * m, tuple(rows))


# ---------------------------------------------------------------------------
# Canonical form and isomorphism
# ---------------------------------------------------------------------------


def _refine(G: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; the cell order depends only on the isomorphism type."""
    while True:
        cell_of = {}
        for ci, cell in enumerate(cells):
            for x in cell:
                cell_of[x] = ci
        new: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {}
            for x in cell:
                counts = [0] * len(cells)
                r = G.rows[x]
                for y in range(G.n):
                    if r >> y & 1:
                        counts[cell_of[y]] += 1
                sig.setdefault(tuple(counts), []).append(x)
            if len(sig) > 1:
                changed = True
            for key in sorted(sig):
                new.append(sig[key])
        cells = new
        if not changed:
            return cells


def _matrix_key(G: Graph, order: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        r = G.rows[v]
        mask = 0
        for u in range(G.n):
            if r >> u & 1:
                mask |= 1 << (G.n - 1 - pos[u])
        out.append(mask)
    return tuple(out)


def canonical_order(G: Graph) -> list[int]:
    """Vertex order giving the canonical (lexicographically largest) adjacency key.

    Individualisation-refinement search over the refined partition; exact for
    any n, practical for the small graphs this is used on.
    """
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(G, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            key = _matrix_key(G, order)
            if best[0] is None or key > best[0]:
                best[0], best[1] = key, order
            return
        cell = cells[target]
        for x in cell:
            rest = [y for y in cell if y != x]
            search(cells[:target] + [[x], rest] + cells[target + 1:])

    search([list(range(G.n))] if G.n else [])
    return best[1] or []


def canonical_form(G: Graph) -> Graph:
    order = canonical_order(G)
    perm = [0] * G.n
    for i, v in enumerate(order):
        perm[v] = i
    return G.permuted(perm)


def canonical_graph6(G: Graph) -> str:
    return to_graph6(canonical_form(G))


def is_isomorphic(G: Graph, H: Graph, limit: int = DEFAULT_ISO_LIMIT) -> bool:
    """Exact isomorphism test by canonical-form comparison (n <= limit)."""
    if max(G.n, H.n) > limit:
        raise ValueError(f"exhaustive isomorphism is capped at {limit} vertices")
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G) == canonical_form(H)
