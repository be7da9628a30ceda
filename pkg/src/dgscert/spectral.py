"""Arithmetic spectral invariants of a graph and its walk matrix."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import intalg
from .graphs import Graph, complement, to_graph6, walk_matrix
from .intalg import IntPoly, Matrix, RationalMatrix, SnfResult
from .modalg import (
    ModPoly,
    Subspace,
    krylov_min_poly,
    left_null_space,
    nullity_p,
    poly_gcd,
    radical,
    restricted_char_poly,
    sfp,
    sqrt_poly,
)


class ConsistencyError(AssertionError):
    """An identity that must hold by construction failed: an implementation bug."""


# Graphs are immutable and hashable, so the expensive integer computations are
# memoised per graph.


@lru_cache(maxsize=4096)
def chi(G: Graph) -> IntPoly:
    return intalg.char_poly(G.adjacency)


@lru_cache(maxsize=4096)
def chi_plus_j(G: Graph) -> IntPoly:
    return intalg.char_poly([[a + 1 for a in row] for row in G.adjacency])


@lru_cache(maxsize=4096)
def chi_complement(G: Graph) -> IntPoly:
    return chi(complement(G))


@lru_cache(maxsize=1024)
def _walk(G: Graph) -> tuple[tuple[int, ...], ...]:
    return tuple(map(tuple, walk_matrix(G)))


def walk(G: Graph) -> Matrix:
    return [list(r) for r in _walk(G)]


@lru_cache(maxsize=4096)
def det_walk(G: Graph) -> int:
    return intalg.det(_walk(G))


@lru_cache(maxsize=1024)
def walk_snf(G: Graph) -> SnfResult:
    return intalg.smith_normal_form(_walk(G))


def is_controllable(G: Graph) -> bool:
    return det_walk(G) != 0


# ---------------------------------------------------------------------------
# Per-prime polynomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8192)
def phi_p(G: Graph, p: int) -> ModPoly:
    """gcd(chi(A), chi(A+J)) over F_p, monic."""
    return poly_gcd(ModPoly.from_int_poly(chi(G), p), ModPoly.from_int_poly(chi_plus_j(G), p))


@lru_cache(maxsize=8192)
def p_main_poly(G: Graph, p: int) -> ModPoly:
    """Minimal monic annihilator of the all-ones vector under A over F_p."""
    return krylov_min_poly(G.adjacency, [1] * G.n, p)


def q_poly(G: Graph, p: int) -> ModPoly:
    """chi(A)/Phi_p, the reduced denominator of e^T (xI - A)^{-1} e."""
    try:
        return ModPoly.from_int_poly(chi(G), p).exact_div(phi_p(G, p))
    except ArithmeticError as exc:  # pragma: no cover - gcd always divides
        raise ConsistencyError(str(exc)) from exc


def annihilates_walks(G: Graph, f: ModPoly, kmax: int | None = None) -> bool:
    """Whether e^T A^k f(A) e = 0 over F_p for k = 0..kmax (default 2n)."""
    kmax = 2 * G.n if kmax is None else kmax
    p = f.p
    A = G.adjacency
    v = f.apply(A, [1] * G.n)
    for _ in range(kmax + 1):
        if sum(v) % p:
            return False
        v = [sum(v[j] for j in range(G.n) if row[j]) % p for row in A]
    return True


def f_p_reduction(G: Graph, p: int) -> ModPoly:
    """chi / sqrt(Phi_p) over F_p."""
    return ModPoly.from_int_poly(chi(G), p).exact_div(sqrt_poly(phi_p(G, p)))


def f_p_lift(G: Graph, p: int) -> IntPoly:
    """Monic integer lift of chi/sqrt(Phi_p) with coefficients in {0..p-1}."""
    return f_p_reduction(G, p).lift()


def p_reduced_walk_matrix(G: Graph, p: int) -> Matrix:
    """[e, ..., A^{r-1} e, f_p(A)e/p, ..., A^{n-1-r} f_p(A)e/p] with r = deg f_p."""
    n = G.n
    D = det_walk(G)
    if D == 0:
        raise ValueError("the p-reduced walk matrix needs a controllable graph")
    if D % p:
        raise ValueError(f"{p} does not divide det W = {D}")
    f = f_p_lift(G, p)
    r = f.degree
    W = _walk(G)
    nbrs = [[j for j in range(n) if G.rows[i] >> j & 1] for i in range(n)]
    # f(A) e from the walk-matrix columns A^k e, extending past n-1 as needed
    powers = [[W[i][k] for i in range(n)] for k in range(n)]
    while len(powers) <= r:
        v = powers[-1]
        powers.append([sum(v[j] for j in nb) for nb in nbrs])
    fe = [sum(c * powers[k][i] for k, c in enumerate(f.coeffs)) for i in range(n)]
    cols = [powers[k] for k in range(r)]
    v = fe
    for _ in range(n - r):
        if any(x % p for x in v):
            raise ConsistencyError(f"A^k f_p(A) e is not divisible by {p}")
        cols.append([x // p for x in v])
        v = [sum(v[j] for j in nb) for nb in nbrs]
    return [[cols[k][i] for k in range(n)] for i in range(n)]


def f2_closed_form(G: Graph) -> ModPoly:
    """The F_2 polynomial assembled from the even-index coefficients of chi.

    With chi = x^n + c_1 x^{n-1} + ... + c_n, this is
    x^{n/2} + c_2 x^{n/2-1} + ... + c_n for even n and
    x (x^{(n-1)/2} + c_2 x^{(n-3)/2} + ... + c_{n-1}) for odd n.
    """
    n = G.n
    a = chi(G).coeffs  # a[k] = c_{n-k}
    if n % 2 == 0:
        return ModPoly(2, tuple(a[2 * k] for k in range(n // 2 + 1)))
    return ModPoly(2, (0,) + tuple(a[2 * k + 1] for k in range((n - 1) // 2 + 1)))


# ---------------------------------------------------------------------------
# Generalised cospectrality
# ---------------------------------------------------------------------------


def generalized_cospectral(G: Graph, H: Graph) -> bool:
    if G.n != H.n:
        raise ValueError("graphs of different order")
    return chi(G) == chi(H) and chi_complement(G) == chi_complement(H)


def regular_orthogonal_transform(G: Graph, H: Graph) -> RationalMatrix:
    """The unique regular orthogonal Q with Q^T A(G) Q = A(H), from Q^T = W(H) W(G)^{-1}."""
    if G.n != H.n:
        raise ValueError("graphs of different order")
    if not is_controllable(G):
        raise ValueError("G is not controllable")
    Qt = intalg.rational_mat_mul(walk(H), intalg.rational_inverse(_walk(G)))
    Q = intalg.transpose(Qt)
    n = G.n
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if intalg.rational_mat_mul(Qt, Q) != eye:
        raise ValueError("Q^T Q != I: graphs are not generalized cospectral")
    if any(sum(row) != 1 for row in Q):
        raise ValueError("Q e != e: graphs are not generalized cospectral")
    if intalg.rational_mat_mul(intalg.rational_mat_mul(Qt, G.adjacency), Q) != [
        [Fraction(x) for x in row] for row in H.adjacency
    ]:
        raise ValueError("Q^T A(G) Q != A(H): graphs are not generalized cospectral")
    return Q


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------


@dataclass
class PrimeRecord:
    p: int
    phi: ModPoly
    sfp_phi: ModPoly
    sqrt_phi: ModPoly
    m_p: ModPoly
    q: ModPoly
    nullity: int
    f_p: IntPoly
    r: int

    def to_dict(self) -> dict:
        return {
            "f_p": list(self.f_p.coeffs),
            "m_p": list(self.m_p.coeffs),
            "nullity": self.nullity,
            "p": self.p,
            "phi": list(self.phi.coeffs),
            "q": list(self.q.coeffs),
            "r": self.r,
            "sfp_phi": list(self.sfp_phi.coeffs),
            "sqrt_phi": list(self.sqrt_phi.coeffs),
        }


def prime_record(G: Graph, p: int) -> PrimeRecord:
    phi = phi_p(G, p)
    f = f_p_lift(G, p)
    return PrimeRecord(
        p=p,
        phi=phi,
        sfp_phi=sfp(phi),
        sqrt_phi=sqrt_poly(phi),
        m_p=p_main_poly(G, p),
        q=q_poly(G, p),
        nullity=nullity_p(_walk(G), p),
        f_p=f,
        r=f.degree,
    )


def null_space_of_walk(G: Graph, p: int) -> Subspace:
    """N(W^T) over F_p."""
    return left_null_space(_walk(G), p)


def phi_factorization(G: Graph, p: int) -> tuple[ModPoly, ModPoly]:
    """chi(A | N(W^T)) and chi(A | rad N(W^T)) over F_p."""
    N = null_space_of_walk(G, p)
    return restricted_char_poly(G.adjacency, N), restricted_char_poly(G.adjacency, radical(N))


@dataclass
class SpectralProfile:
    graph_id: str
    n: int
    chi: IntPoly
    chi_complement: IntPoly
    det_w: int
    snf: SnfResult | None
    primes: list[PrimeRecord] = field(default_factory=list)

    @property
    def controllable(self) -> bool:
        return self.det_w != 0

    def to_dict(self) -> dict:
        return {
            "chi": [str(c) for c in self.chi.coeffs],
            "chi_complement": [str(c) for c in self.chi_complement.coeffs],
            "controllable": self.controllable,
            "det_w": str(self.det_w),
            "graph_id": self.graph_id,
            "n": self.n,
            "primes": [r.to_dict() for r in self.primes],
            "snf": None if self.snf is None else [str(d) for d in self.snf],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def default_primes(G: Graph, cutoff: int = intalg.DEFAULT_FACTOR_CUTOFF) -> list[int]:
    """2 together with the odd prime divisors of the last invariant factor of W.

    Every prime dividing det W divides d_n, so this is also the full set of
    primes dividing det W for a controllable graph.
    """
    if not is_controllable(G):
        return [2]
    return sorted({2} | set(intalg.prime_divisors(walk_snf(G).last, cutoff)))


def spectral_profile(G: Graph, primes: list[int] | None = None, graph_id: str | None = None) -> SpectralProfile:
    D = det_walk(G)
    primes = default_primes(G) if primes is None else primes
    return SpectralProfile(
        graph_id=graph_id or to_graph6(G),
        n=G.n,
        chi=chi(G),
        chi_complement=chi_complement(G),
        det_w=D,
        snf=walk_snf(G) if D else None,
        primes=[prime_record(G, p) for p in primes],
    )
