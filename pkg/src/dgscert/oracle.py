"""Exhaustive ground truth for small graphs.

All isomorphism classes of n-vertex graphs are generated by extending every
class on n-1 vertices with a new vertex joined to each subset of the old ones
(every graph arises this way by deleting its last vertex), canonicalising, and
deduplicating. The classes are then bucketed by the exact pair
(chi(G), chi(complement G)).
"""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import intalg
from .certify import Verdict, check_main, check_main0, check_wt
from .graphs import Graph, canonical_form, from_graph6, to_graph6
from .intalg import IntPoly
from .modalg import nullity_p
from .spectral import (
    chi,
    chi_complement,
    det_walk,
    is_controllable,
    p_reduced_walk_matrix,
    phi_p,
    regular_orthogonal_transform,
    walk,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 7


class OracleCapError(ValueError):
    """Requested order exceeds the exhaustive-enumeration cap."""


@dataclass
class CospectralClass:
    chi: IntPoly
    chi_complement: IntPoly
    members: list[Graph] = field(default_factory=list)

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.chi.coeffs, self.chi_complement.coeffs

    @property
    def nonisomorphic_count(self) -> int:
        return len(self.members)

    def to_record(self, n: int) -> dict:
        return {
            "chi": list(self.chi.coeffs),
            "chi_complement": list(self.chi_complement.coeffs),
            "members": [to_graph6(g) for g in self.members],
            "n": n,
        }


def _check_cap(n: int, cap: int) -> None:
    if n < 0 or n > cap:
        raise OracleCapError(f"exhaustive enumeration is capped at n <= {cap}, got {n}")


def _extensions(args: tuple[str, int]) -> list[str]:
    g6, n = args
    base = from_graph6(g6) if n > 1 else Graph.empty(0)
    m = n - 1
    out = set()
    for mask in range(1 << m):
        rows = list(base.rows) + [mask]
        for j in range(m):
            if mask >> j & 1:
                rows[j] |= 1 << m
        out.add(to_graph6(canonical_form(Graph(n, tuple(rows)))))
    return sorted(out)


def isomorphism_classes(n: int, cap: int = DEFAULT_MAX_ORDER, workers: int = 1) -> list[Graph]:
    """One canonical representative per isomorphism class, sorted by graph6."""
    _check_cap(n, cap)
    if n == 0:
        return [Graph.empty(0)]
    reps = ["?"]  # graph6 of the empty graph on 0 vertices
    for k in range(1, n + 1):
        jobs = [(g6, k) for g6 in reps]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_extensions, jobs, chunksize=8))
        else:
            parts = [_extensions(j) for j in jobs]
        merged: set[str] = set()
        for part in parts:
            merged.update(part)
        reps = sorted(merged)
    return [from_graph6(g) for g in reps]


def _store_path(store_dir: str | os.PathLike, n: int) -> Path:
    return Path(store_dir) / f"classes_n{n}.ndjson"


def _load(path: Path, n: int) -> list[CospectralClass] | None:
    if not path.exists():
        return None
    classes = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec["n"] != n:
                return None
            classes.append(
                CospectralClass(
                    IntPoly(tuple(rec["chi"])),
                    IntPoly(tuple(rec["chi_complement"])),
                    [from_graph6(g) for g in rec["members"]],
                )
            )
    return classes


def enumerate_classes(
    n: int,
    cap: int = DEFAULT_MAX_ORDER,
    store_dir: str | os.PathLike | None = None,
    workers: int = 1,
) -> list[CospectralClass]:
    """Partition all isomorphism classes on n vertices by generalized spectrum.

    With ``store_dir`` the result is read from / written to a newline-delimited
    JSON file for that n.
    """
    _check_cap(n, cap)
    path = _store_path(store_dir, n) if store_dir is not None else None
    if path is not None:
        cached = _load(path, n)
        if cached is not None:
            return cached
    buckets: dict[tuple, CospectralClass] = {}
    for g in isomorphism_classes(n, cap, workers):
        c1, c2 = chi(g), chi_complement(g)
        cls = buckets.setdefault((c1.coeffs, c2.coeffs), CospectralClass(c1, c2))
        cls.members.append(g)
    classes = [buckets[k] for k in sorted(buckets)]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            for c in classes:
                fh.write(json.dumps(c.to_record(n), sort_keys=True) + "\n")
        tmp.replace(path)
    return classes


def is_dgs_exhaustive(G: Graph, cap: int = DEFAULT_MAX_ORDER, store_dir=None) -> bool:
    """True iff every graph generalized cospectral with G is isomorphic to G."""
    _check_cap(G.n, cap)
    key = (chi(G).coeffs, chi_complement(G).coeffs)
    for cls in enumerate_classes(G.n, cap, store_dir):
        if cls.key == key:
            return cls.nonisomorphic_count == 1
    raise AssertionError("graph missing from the exhaustive enumeration")  # pragma: no cover


@dataclass
class Violation:
    kind: str
    detail: str

    def to_dict(self) -> dict:
        return {"detail": self.detail, "kind": self.kind}


@dataclass
class ValidationReport:
    n: int
    primes: list[int]
    classes: int = 0
    isomorphism_classes: int = 0
    non_dgs_graphs: int = 0
    cospectral_pairs: int = 0
    controllable_pairs: int = 0
    main_pass_graphs: int = 0
    main0_pass_graphs: int = 0
    wt_pass_graphs: int = 0
    max_level: int = 1
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "classes": self.classes,
            "controllable_pairs": self.controllable_pairs,
            "cospectral_pairs": self.cospectral_pairs,
            "isomorphism_classes": self.isomorphism_classes,
            "main0_pass_graphs": self.main0_pass_graphs,
            "main_pass_graphs": self.main_pass_graphs,
            "max_level": self.max_level,
            "n": self.n,
            "non_dgs_graphs": self.non_dgs_graphs,
            "ok": self.ok,
            "primes": self.primes,
            "violations": [v.to_dict() for v in self.violations],
            "wt_pass_graphs": self.wt_pass_graphs,
        }


def validate_pair(G: Graph, H: Graph, primes: list[int], report: ValidationReport) -> None:
    """Check every stated relation between two generalized cospectral graphs."""
    gid, hid = to_graph6(G), to_graph6(H)
    WG, WH = walk(G), walk(H)
    for p in primes:
        if phi_p(G, p) != phi_p(H, p):
            report.violations.append(Violation("phi-invariance", f"{gid} {hid} p={p}"))
        ng, nh = nullity_p(WG, p), nullity_p(WH, p)
        if not (ng <= 2 * nh and nh <= 2 * ng):
            report.violations.append(Violation("nullity-ratio", f"{gid} {hid} p={p}: {ng} vs {nh}"))
    if not is_controllable(G):
        return
    report.controllable_pairs += 1
    try:
        Q = regular_orthogonal_transform(G, H)
    except ValueError as exc:
        report.violations.append(Violation("orthogonal-transform", f"{gid} {hid}: {exc}"))
        return
    ell = intalg.level(Q)
    report.max_level = max(report.max_level, ell)
    for p in intalg.prime_divisors(det_walk(G)):
        Wp = p_reduced_walk_matrix(G, p)
        dn = intalg.smith_normal_form(Wp).last
        if intalg.p_adic_valuation(ell, p) > intalg.p_adic_valuation(dn, p):
            report.violations.append(
                Violation("level-valuation", f"{gid} {hid} p={p}: level {ell}, d_n(W_(p)) {dn}")
            )


def validate_inequalities(
    n: int,
    primes: list[int],
    cap: int = DEFAULT_MAX_ORDER,
    store_dir=None,
    workers: int = 1,
) -> ValidationReport:
    """Exhaustively check certificates and cospectral-pair relations on n vertices."""
    classes = enumerate_classes(n, cap, store_dir, workers)
    report = ValidationReport(n=n, primes=list(primes), classes=len(classes))
    for cls in classes:
        report.isomorphism_classes += len(cls.members)
        singleton = len(cls.members) == 1
        if not singleton:
            report.non_dgs_graphs += len(cls.members)
        for g in cls.members:
            main, main0, wt = check_main(g), check_main0(g), check_wt(g)
            report.main_pass_graphs += main is Verdict.PASS
            report.main0_pass_graphs += main0 is Verdict.PASS
            report.wt_pass_graphs += wt is Verdict.PASS
            if main0 is Verdict.PASS and main is not Verdict.PASS:
                report.violations.append(Violation("main0-implies-main", to_graph6(g)))
            if Verdict.PASS in (main, main0, wt) and not singleton:
                report.violations.append(Violation("certified-but-not-dgs", to_graph6(g)))
        for i, g in enumerate(cls.members):
            for h in cls.members[i + 1:]:
                report.cospectral_pairs += 1
                validate_pair(g, h, primes, report)
                validate_pair(h, g, primes, report)
    log.info("n=%d: %d classes, %d violations", n, report.classes, len(report.violations))
    return report
