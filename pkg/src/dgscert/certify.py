"""Arithmetic criteria certifying that a graph is determined by its generalized spectrum."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from . import intalg
from .graphs import Graph, to_graph6
from .intalg import DEFAULT_FACTOR_CUTOFF, InconclusiveError
from .modalg import is_perfect_square, radical, sqrt_poly
from .spectral import (
    ConsistencyError,
    PrimeRecord,
    det_walk,
    null_space_of_walk,
    phi_p,
    prime_record,
    walk_snf,
)


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    NOT_APPLICABLE = "not-applicable"

    @classmethod
    def of(cls, ok: bool) -> "Verdict":
        return cls.PASS if ok else cls.FAIL


def _odd_primes_of_last_factor(G: Graph, cutoff: int) -> list[int]:
    # every prime divisor of det W divides d_n
    return [p for p in intalg.prime_divisors(walk_snf(G).last, cutoff) if p != 2]


def _squarefree_last_factor(G: Graph, cutoff: int) -> bool | None:
    return intalg.is_squarefree_int(walk_snf(G).last, cutoff)


def check_wt(G: Graph, cutoff: int = DEFAULT_FACTOR_CUTOFF) -> Verdict:
    """2^{-floor(n/2)} det W is an odd square-free integer."""
    D = det_walk(G)
    if D == 0:
        return Verdict.FAIL
    k = G.n // 2
    if D % 2**k:
        raise ConsistencyError(f"det W = {D} is not divisible by 2^{k}")
    b = D // 2**k
    if b % 2 == 0:
        return Verdict.FAIL
    try:
        factors = intalg.factorize(walk_snf(G).last, cutoff)
    except InconclusiveError:
        return Verdict.INCONCLUSIVE
    return Verdict.of(all(intalg.p_adic_valuation(b, p) <= 1 for p in factors))


def wt2_shape(n: int, factors: tuple[int, ...]) -> int | None:
    """b if the invariant factors are [1 x ceil(n/2), 2 x (floor(n/2)-1), 2b], else None."""
    ones, twos = (n + 1) // 2, n // 2
    if len(factors) != n:
        return None
    if twos == 0:
        return 1 if all(d == 1 for d in factors) else None
    if any(d != 1 for d in factors[:ones]) or any(d != 2 for d in factors[ones:-1]):
        return None
    if factors[-1] % 2:
        return None
    return factors[-1] // 2


def check_wt2(G: Graph, cutoff: int = DEFAULT_FACTOR_CUTOFF) -> Verdict:
    """SNF(W) = diag[1,...,1, 2,...,2, 2b] with b odd and square-free."""
    if det_walk(G) == 0:
        return Verdict.FAIL
    b = wt2_shape(G.n, walk_snf(G).invariant_factors)
    if b is None or b % 2 == 0:
        return Verdict.FAIL
    sq = intalg.is_squarefree_int(b, cutoff)
    return Verdict.INCONCLUSIVE if sq is None else Verdict.of(sq)


def _per_prime_check(G: Graph, cutoff: int, use_sqrt: bool) -> Verdict:
    if det_walk(G) == 0:
        return Verdict.FAIL
    sq = _squarefree_last_factor(G, cutoff)
    if sq is None:
        return Verdict.INCONCLUSIVE
    if not sq:
        return Verdict.FAIL
    try:
        primes = _odd_primes_of_last_factor(G, cutoff)
    except InconclusiveError:
        return Verdict.INCONCLUSIVE
    for p in primes:
        rec = prime_record(G, p)
        lhs = rec.sqrt_phi if use_sqrt else rec.sfp_phi
        if lhs.degree != rec.nullity:
            return Verdict.FAIL
    return Verdict.PASS


def check_main0(G: Graph, cutoff: int = DEFAULT_FACTOR_CUTOFF) -> Verdict:
    """d_n square-free and deg sfp(Phi_p) = nullity_p W for every odd p | d_n."""
    return _per_prime_check(G, cutoff, use_sqrt=False)


def check_main(G: Graph, cutoff: int = DEFAULT_FACTOR_CUTOFF) -> Verdict:
    """d_n square-free and deg sqrt(Phi_p) = nullity_p W for every odd p | d_n."""
    return _per_prime_check(G, cutoff, use_sqrt=True)


def family_F_membership(G: Graph) -> bool:
    if G.n % 2:
        return False
    D = det_walk(G)
    return abs(intalg.det(G.adjacency)) == 1 and D != 0 and abs(D) == 2 ** (G.n // 2)


def family_G_membership(G: Graph, cutoff: int = DEFAULT_FACTOR_CUTOFF) -> bool:
    """Even order, det A = +-1, d_n square-free, deg Phi_p = 2 nullity_p W for odd p | det W.

    Raises InconclusiveError if d_n cannot be factored under ``cutoff``.
    """
    if G.n % 2 or abs(intalg.det(G.adjacency)) != 1 or det_walk(G) == 0:
        return False
    sq = _squarefree_last_factor(G, cutoff)
    if sq is None:
        raise InconclusiveError("cannot decide whether d_n is square-free")
    if not sq:
        return False
    for p in _odd_primes_of_last_factor(G, cutoff):
        rec = prime_record(G, p)
        if rec.phi.degree != 2 * rec.nullity:
            return False
    return True


@dataclass
class Equiv3Report:
    p: int
    degree_twice_nullity: bool
    null_space_isotropic: bool
    perfect_square_sqrt_nullity: bool

    @property
    def unanimous(self) -> bool:
        return self.degree_twice_nullity == self.null_space_isotropic == self.perfect_square_sqrt_nullity


def equiv3_report(G: Graph, p: int) -> Equiv3Report:
    """Evaluate the three equivalent conditions on Phi_p and N(W^T) at an odd prime p | det W."""
    D = det_walk(G)
    if D == 0 or p == 2 or D % p:
        raise ValueError("needs a controllable graph and an odd prime dividing det W")
    phi = phi_p(G, p)
    N = null_space_of_walk(G, p)
    rep = Equiv3Report(
        p=p,
        degree_twice_nullity=phi.degree == 2 * N.dim,
        null_space_isotropic=radical(N).dim == N.dim,
        perfect_square_sqrt_nullity=is_perfect_square(phi) and sqrt_poly(phi).degree == N.dim,
    )
    if not rep.unanimous:
        raise ConsistencyError(f"equivalent conditions disagree at p={p}: {rep}")
    return rep


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass
class PrimeEvidence:
    p: int
    deg_sfp_phi: int
    deg_sqrt_phi: int
    nullity: int
    main0_ok: bool
    main_ok: bool
    record: PrimeRecord

    def to_dict(self) -> dict:
        return {
            "deg_sfp_phi": self.deg_sfp_phi,
            "deg_sqrt_phi": self.deg_sqrt_phi,
            "main0_ok": self.main0_ok,
            "main_ok": self.main_ok,
            "nullity": self.nullity,
            "p": self.p,
            "record": self.record.to_dict(),
        }


@dataclass
class DgsCertificate:
    graph_id: str
    n: int
    controllable: bool
    det_w: int
    d_n: int
    d_n_squarefree: bool | None
    evidence: list[PrimeEvidence] = field(default_factory=list)
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    family_F: bool = False
    family_G: bool | None = False
    oracle_confirmed: bool | None = None

    @property
    def overall(self) -> Verdict:
        """PASS if any criterion certifies the graph as DGS."""
        vs = set(self.verdicts.values())
        if Verdict.PASS in vs:
            return Verdict.PASS
        if Verdict.INCONCLUSIVE in vs:
            return Verdict.INCONCLUSIVE
        if vs == {Verdict.NOT_APPLICABLE}:
            return Verdict.NOT_APPLICABLE
        return Verdict.FAIL

    @property
    def dgs(self) -> bool:
        return self.overall is Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "controllable": self.controllable,
            "d_n": str(self.d_n),
            "d_n_squarefree": self.d_n_squarefree,
            "det_w": str(self.det_w),
            "dgs": self.dgs,
            "evidence": [e.to_dict() for e in self.evidence],
            "family_F": self.family_F,
            "family_G": self.family_G,
            "graph_id": self.graph_id,
            "n": self.n,
            "oracle_confirmed": self.oracle_confirmed,
            "overall": self.overall.value,
            "verdicts": {k: v.value for k, v in sorted(self.verdicts.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


CRITERIA = ("wt", "wt2", "main0", "main")


def certify(G: Graph, cutoff: int = DEFAULT_FACTOR_CUTOFF, graph_id: str | None = None) -> DgsCertificate:
    graph_id = graph_id or to_graph6(G)
    D = det_walk(G)
    if D == 0:
        return DgsCertificate(
            graph_id=graph_id,
            n=G.n,
            controllable=False,
            det_w=0,
            d_n=0,
            d_n_squarefree=False,
            verdicts={c: Verdict.NOT_APPLICABLE for c in CRITERIA},
        )
    d_n = walk_snf(G).last
    evidence = []
    try:
        for p in _odd_primes_of_last_factor(G, cutoff):
            rec = prime_record(G, p)
            evidence.append(
                PrimeEvidence(
                    p=p,
                    deg_sfp_phi=rec.sfp_phi.degree,
                    deg_sqrt_phi=rec.sqrt_phi.degree,
                    nullity=rec.nullity,
                    main0_ok=rec.sfp_phi.degree == rec.nullity,
                    main_ok=rec.sqrt_phi.degree == rec.nullity,
                    record=rec,
                )
            )
    except InconclusiveError:
        pass
    try:
        fam_g: bool | None = family_G_membership(G, cutoff)
    except InconclusiveError:
        fam_g = None
    verdicts = {
        "wt": check_wt(G, cutoff),
        "wt2": check_wt2(G, cutoff),
        "main0": check_main0(G, cutoff),
        "main": check_main(G, cutoff),
    }
    if verdicts["main0"] is Verdict.PASS and verdicts["main"] is not Verdict.PASS:
        raise ConsistencyError("main0 passes but main does not")
    if (verdicts["wt"] is Verdict.PASS) != (verdicts["wt2"] is Verdict.PASS):
        raise ConsistencyError("wt and wt2 disagree")
    return DgsCertificate(
        graph_id=graph_id,
        n=G.n,
        controllable=True,
        det_w=D,
        d_n=d_n,
        d_n_squarefree=_squarefree_last_factor(G, cutoff),
        evidence=evidence,
        verdicts=verdicts,
        family_F=family_F_membership(G),
        family_G=fam_g,
    )
