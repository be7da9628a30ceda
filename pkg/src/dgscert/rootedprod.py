"""Rooted graphs that preserve the DGS family under the rooted product."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from . import intalg
from .certify import DgsCertificate, Verdict, certify, family_G_membership
from .graphs import Graph, RootedGraph, delete_vertex, rooted_product, to_graph6
from .intalg import IntPoly
from .spectral import chi, det_walk

DEFAULT_MAX_VERTICES = 96


class PreconditionError(ValueError):
    """A rooted-product family cannot be built from the given inputs."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition


def check_C1(H: RootedGraph) -> bool:
    """(det A(H), det A(H-v)) is (+-1, 0) or (0, +-1)."""
    a = intalg.det(H.graph.adjacency)
    b = intalg.det(delete_vertex(H.graph, H.root).adjacency) if H.m > 1 else 1
    return (abs(a), b) == (1, 0) or (a, abs(b)) == (0, 1)


def root_resultant(H: RootedGraph) -> int:
    return intalg.resultant(chi(H.graph), _chi_minus_root(H))


def _chi_minus_root(H: RootedGraph) -> IntPoly:
    if H.m == 1:
        return IntPoly((1,))
    return chi(delete_vertex(H.graph, H.root))


def check_C2(H: RootedGraph) -> bool:
    """Res(chi(H), chi(H - v)) = +-1."""
    return abs(root_resultant(H)) == 1


def walk_determinant_poly(H: RootedGraph) -> IntPoly:
    """h(lam) = det[e, B e, ..., B^{m-1} e] with B = A(H) + lam * D_v."""
    m, v = H.m, H.root
    A = H.graph.adjacency
    B = [[IntPoly((A[i][j],)) for j in range(m)] for i in range(m)]
    B[v][v] = IntPoly((0, 1))
    col = [IntPoly((1,))] * m
    columns = []
    for _ in range(m):
        columns.append(col)
        col = [sum((B[i][j] * col[j] for j in range(m)), IntPoly()) for i in range(m)]
    return intalg.poly_matrix_det(columns)


def check_C3(H: RootedGraph) -> tuple[bool, int | None]:
    """Whether h(lam) = +-lam^k; returns the exponent k when it is."""
    h = walk_determinant_poly(H)
    nonzero = [(k, c) for k, c in enumerate(h.coeffs) if c]
    if len(nonzero) == 1 and abs(nonzero[0][1]) == 1:
        return True, nonzero[0][0]
    return False, None


@dataclass
class PreserverReport:
    graph_id: str
    root: int
    C1: bool
    C2: bool
    C3: bool
    k: int | None
    resultant: int
    h: IntPoly

    @property
    def preserver(self) -> bool:
        return self.C1 and self.C2 and self.C3

    def to_dict(self) -> dict:
        return {
            "C1": self.C1,
            "C2": self.C2,
            "C3": self.C3,
            "graph_id": self.graph_id,
            "h": [str(c) for c in self.h.coeffs],
            "k": self.k,
            "resultant": str(self.resultant),
            "root": self.root,
        }


def preserver_report(H: RootedGraph) -> PreserverReport:
    c3, k = check_C3(H)
    return PreserverReport(
        graph_id=to_graph6(H.graph),
        root=H.root,
        C1=check_C1(H),
        C2=check_C2(H),
        C3=c3,
        k=k,
        resultant=root_resultant(H),
        h=walk_determinant_poly(H),
    )


def det_A_formula_check(G: Graph, H: RootedGraph) -> bool:
    """det A(G o H) == det(det A(H) I + det A(H - v) A(G))."""
    direct = intalg.det(rooted_product(G, H).adjacency)
    a = intalg.det(H.graph.adjacency)
    b = intalg.det(delete_vertex(H.graph, H.root).adjacency) if H.m > 1 else 1
    n = G.n
    M = [[a * (i == j) + b * G.adjacency[i][j] for j in range(n)] for i in range(n)]
    return direct == intalg.det(M)


def det_W_formula_rhs(G: Graph, H: RootedGraph) -> int:
    n, m = G.n, H.m
    h = walk_determinant_poly(H)
    return root_resultant(H) ** (n * (n - 1) // 2) * intalg.det(h.eval_matrix(G.adjacency)) * det_walk(G) ** m


def det_W_formula_check(G: Graph, H: RootedGraph) -> bool:
    """|det W(G o H)| == |Res^{n(n-1)/2} det h(A(G)) det W(G)^m|."""
    return abs(det_walk(rooted_product(G, H))) == abs(det_W_formula_rhs(G, H))


def build_dgs_family(
    G: Graph,
    H: RootedGraph,
    depth: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    cutoff: int = intalg.DEFAULT_FACTOR_CUTOFF,
) -> list[tuple[Graph, DgsCertificate]]:
    """G, G o H, (G o H) o H, ... up to ``depth`` products, each certified."""
    if not family_G_membership(G, cutoff):
        raise PreconditionError("membership", "the base graph is not in the family G")
    if depth > 0:
        rep = preserver_report(H)
        for name in ("C1", "C2", "C3"):
            if not getattr(rep, name):
                raise PreconditionError(name, f"the rooted graph fails condition {name}")
    size = G.n * H.m**depth
    if size > max_vertices:
        raise PreconditionError("size", f"depth {depth} gives {size} vertices, above the cap {max_vertices}")
    out = []
    cur = G
    for step in range(depth + 1):
        if step:
            cur = rooted_product(cur, H)
        cert = certify(cur, cutoff)
        if cert.verdicts["main"] is not Verdict.PASS or not cert.family_G:
            raise AssertionError(f"step {step}: product left the family ({cert.verdicts['main'].value})")
        out.append((cur, cert))
    return out


def write_family(family: list[tuple[Graph, DgsCertificate]], out_dir: str | os.PathLike) -> list[Path]:
    """One graph6 file and one certificate JSON per member; each written atomically."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i, (g, cert) in enumerate(family):
        for suffix, text in ((".g6", to_graph6(g) + "\n"), (".json", cert.to_json() + "\n")):
            path = out / f"member_{i:02d}{suffix}"
            tmp = path.with_suffix(path.suffix + ".tmp")
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(path)
            written.append(path)
    return written


def family_summary(family: list[tuple[Graph, DgsCertificate]]) -> str:
    return json.dumps(
        [
            {"graph6": to_graph6(g), "main": c.verdicts["main"].value, "main0": c.verdicts["main0"].value, "n": g.n}
            for g, c in family
        ],
        sort_keys=True,
        indent=2,
    )
