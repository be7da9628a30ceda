import json
import random

import pytest

from conftest import leibniz_det, random_graph
from dgscert import intalg
from dgscert.certify import Verdict
from dgscert.fixtures import path_rooted_at_end
from dgscert.graphs import Graph, RootedGraph, from_graph6, rooted_product
from dgscert.intalg import IntPoly
from dgscert.modalg import nullity_p
from dgscert.rootedprod import (
    PreconditionError,
    build_dgs_family,
    check_C1,
    check_C2,
    check_C3,
    det_A_formula_check,
    det_W_formula_check,
    family_summary,
    preserver_report,
    root_resultant,
    walk_determinant_poly,
    write_family,
)
from dgscert.spectral import det_walk, null_space_of_walk, walk


def symbolic_h(H):
    """det[e, Be, ..., B^{m-1}e] with B = A(H) + lam D_v, expanded over IntPoly."""
    m, v = H.m, H.root
    B = [[IntPoly((H.graph.adjacency[i][j],) if i != v or j != v else (0, 1)) for j in range(m)] for i in range(m)]
    cols, cur = [], [IntPoly((1,))] * m
    for _ in range(m):
        cols.append(cur)
        cur = [sum((B[i][j] * cur[j] for j in range(m)), IntPoly()) for i in range(m)]
    rows = [[cols[j][i] for j in range(m)] for i in range(m)]
    return leibniz_det(rows, IntPoly(), IntPoly((1,)))


def test_conditions_on_short_paths():
    P2 = path_rooted_at_end(2)
    assert check_C1(P2) and check_C2(P2)
    assert root_resultant(P2) == -1
    assert walk_determinant_poly(P2) == IntPoly((0, -1))
    assert check_C3(P2) == (True, 1)
    for m in (3, 4, 5):
        rep = preserver_report(path_rooted_at_end(m))
        assert rep.preserver, rep
        assert rep.h.coeffs[-1] in (1, -1) and all(c == 0 for c in rep.h.coeffs[:-1])


def test_single_vertex_root():
    K1 = RootedGraph(Graph.complete(1), 0)
    assert check_C1(K1)
    assert check_C3(K1) == (True, 0)


def test_triangle_fails_C1():
    K3 = RootedGraph(Graph.complete(3), 0)
    assert intalg.det(K3.graph.adjacency) == 2
    assert not check_C1(K3)


def test_h_matches_symbolic_expansion():
    assert walk_determinant_poly(path_rooted_at_end(4)) == symbolic_h(path_rooted_at_end(4))
    rng = random.Random(21)
    for _ in range(25):
        Hg = random_graph(rng.randint(1, 5), rng)
        H = RootedGraph(Hg, rng.randrange(Hg.n))
        assert walk_determinant_poly(H) == symbolic_h(H)


def test_C3_means_single_monomial():
    rng = random.Random(22)
    for _ in range(40):
        Hg = random_graph(rng.randint(1, 5), rng)
        H = RootedGraph(Hg, rng.randrange(Hg.n))
        ok, k = check_C3(H)
        h = walk_determinant_poly(H)
        if ok:
            assert h == IntPoly((0,) * k + (h.lead,)) and h.lead in (1, -1)
        else:
            assert k is None


def test_determinant_formulas_on_random_pairs():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = rng.randint(1, 24 // n if n <= 4 else 4)
        G = random_graph(n, rng)
        Hg = random_graph(m, rng)
        H = RootedGraph(Hg, rng.randrange(m))
        assert det_A_formula_check(G, H)
        assert det_W_formula_check(G, H)


def test_g4_walk_determinant(g8, g4):
    assert abs(det_walk(g4)) == 48**4
    assert g4 == rooted_product(g8, path_rooted_at_end(4))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_null_vectors_lift_to_the_product(g8, m):
    H = path_rooted_at_end(m)
    P = rooted_product(g8, H)
    n, p = g8.n, 3
    WP = walk(P)
    for alpha in null_space_of_walk(g8, p).basis:
        for h in range(m):
            vec = [0] * (n * m)
            vec[h * n:(h + 1) * n] = alpha
            assert all(sum(vec[i] * WP[i][j] for i in range(n * m)) % p == 0 for j in range(n * m))
    assert nullity_p(WP, p) == m * nullity_p(walk(g8), p)


def test_build_family_depths(g8):
    assert len(build_dgs_family(g8, path_rooted_at_end(2), 0)) == 1
    fam = build_dgs_family(g8, path_rooted_at_end(3), 1)
    assert [g.n for g, _ in fam] == [8, 24]
    fam = build_dgs_family(g8, path_rooted_at_end(2), 2)
    assert [g.n for g, _ in fam] == [8, 16, 32]
    for _, cert in fam:
        assert cert.verdicts["main"] is Verdict.PASS and cert.family_G


def test_build_family_refusals(g8):
    with pytest.raises(PreconditionError) as e:
        build_dgs_family(g8, RootedGraph(Graph.complete(3), 0), 1)
    assert e.value.condition == "C1"
    with pytest.raises(PreconditionError) as e:
        build_dgs_family(Graph.path(3), path_rooted_at_end(2), 1)
    assert e.value.condition == "membership"
    with pytest.raises(PreconditionError) as e:
        build_dgs_family(g8, path_rooted_at_end(4), 3)
    assert e.value.condition == "size"


def test_write_family(tmp_path, g8):
    fam = build_dgs_family(g8, path_rooted_at_end(2), 1)
    paths = write_family(fam, tmp_path / "out")
    assert sorted(p.name for p in paths) == ["member_00.g6", "member_00.json", "member_01.g6", "member_01.json"]
    assert from_graph6((tmp_path / "out" / "member_01.g6").read_text()) == fam[1][0]
    cert = json.loads((tmp_path / "out" / "member_01.json").read_text())
    assert cert["verdicts"]["main"] == "pass" and cert["n"] == 16
    assert not list((tmp_path / "out").glob("*.tmp"))
    summary = json.loads(family_summary(fam))
    assert [s["n"] for s in summary] == [8, 16]
