"""Command-line front end: ``dgscert {analyze,certify,rooted,oracle}``."""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import intalg
from .certify import Verdict, certify
from .fixtures import FIXTURES
from .graphs import Graph, GraphFormatError, RootedGraph, from_edge_list, from_graph6
from .oracle import DEFAULT_MAX_ORDER, OracleCapError, is_dgs_exhaustive, validate_inequalities
from .rootedprod import (
    DEFAULT_MAX_VERTICES,
    PreconditionError,
    build_dgs_family,
    family_summary,
    preserver_report,
    write_family,
)
from .spectral import ConsistencyError, det_walk, spectral_profile

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_PARSE, EXIT_CAP, EXIT_INTERNAL = 64, 65, 70

log = logging.getLogger("dgscert")


@dataclass
class RunConfig:
    fmt: str = "graph6"
    primes: list[int] | None = None
    cutoff: int = intalg.DEFAULT_FACTOR_CUTOFF
    max_vertices: int = DEFAULT_MAX_VERTICES
    max_order: int = DEFAULT_MAX_ORDER
    out: Path | None = None
    verbosity: int = 0

    def __post_init__(self):
        if self.cutoff < 10**6:
            raise ValueError("--cutoff must be at least 10^6")
        if self.max_vertices < 1 or self.max_order < 1:
            raise ValueError("size caps must be positive")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt == "edgelist":
        return from_edge_list(text)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("no graph6 line in input")
    return from_graph6(lines[0])


_NAMED = re.compile(r"^([PKC])(\d+)$")


def load_graph(source: str | None, fixture: str | None, fmt: str) -> Graph:
    if fixture:
        if fixture not in FIXTURES:
            raise GraphFormatError(f"unknown fixture {fixture!r}; choose from {sorted(FIXTURES)}")
        return FIXTURES[fixture]()
    if source is None:
        raise GraphFormatError("no graph input given")
    m = _NAMED.match(source)
    if m and not Path(source).exists():
        kind, size = m.group(1), int(m.group(2))
        return {"P": Graph.path, "K": Graph.complete, "C": Graph.cycle}[kind](size)
    try:
        return parse_graph(_read_text(source), fmt)
    except OSError as exc:
        raise GraphFormatError(str(exc)) from None


def _parse_primes(text: str | None) -> list[int] | None:
    if not text:
        return None
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    for p in primes:
        if p < 2 or not intalg.is_probable_prime(p):
            raise argparse.ArgumentTypeError(f"{p} is not a prime")
    return primes


def cmd_analyze(args, cfg: RunConfig) -> int:
    G = load_graph(args.input, args.fixture, cfg.fmt)
    primes = cfg.primes
    if primes is None and args.all_primes and det_walk(G):
        primes = intalg.prime_divisors(det_walk(G), cfg.cutoff)
    prof = spectral_profile(G, primes)
    print(prof.to_json())
    return EXIT_PASS


def cmd_certify(args, cfg: RunConfig) -> int:
    G = load_graph(args.input, args.fixture, cfg.fmt)
    cert = certify(G, cfg.cutoff)
    if args.oracle:
        if G.n > cfg.max_order:
            raise OracleCapError(f"oracle confirmation is capped at n <= {cfg.max_order}")
        cert.oracle_confirmed = is_dgs_exhaustive(G, cfg.max_order)
    print(cert.to_json())
    return {
        Verdict.PASS: EXIT_PASS,
        Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }.get(cert.overall, EXIT_FAIL)


def cmd_rooted(args, cfg: RunConfig) -> int:
    G = load_graph(args.input, args.fixture, cfg.fmt)
    H = RootedGraph(load_graph(args.rooted, None, cfg.fmt), args.root)
    try:
        family = build_dgs_family(G, H, args.depth, cfg.max_vertices, cfg.cutoff)
    except PreconditionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        if exc.condition == "size":
            return EXIT_CAP
        print(json.dumps(preserver_report(H).to_dict(), sort_keys=True, indent=2), file=sys.stderr)
        return EXIT_FAIL
    out = cfg.out or Path("family")
    write_family(family, out)
    print(family_summary(family))
    return EXIT_PASS


def cmd_oracle(args, cfg: RunConfig) -> int:
    primes = cfg.primes or [2, 3, 5]
    report = validate_inequalities(args.n, primes, cfg.max_order, args.store, args.workers)
    print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    return EXIT_PASS if report.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("graph6", "edgelist"), default="graph6")
    common.add_argument("--primes", help="comma-separated primes to examine")
    common.add_argument("--cutoff", type=int, default=intalg.DEFAULT_FACTOR_CUTOFF,
                        help="trial-division bound for factoring (>= 10^6)")
    common.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="cap for exhaustive enumeration")
    common.add_argument("--out", type=Path)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="dgscert", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        p.add_argument("input", nargs="?", help="graph file, '-' for stdin, or P<m>/K<m>/C<m>")
        p.add_argument("--fixture", help=f"built-in graph: {', '.join(sorted(FIXTURES))}")

    p = sub.add_parser("analyze", parents=[common], help="spectral profile as JSON")
    graph_input(p)
    p.add_argument("--all-primes", action="store_true", help="examine every prime dividing det W")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", parents=[common], help="DGS certificate as JSON")
    graph_input(p)
    p.add_argument("--oracle", action="store_true", help="confirm exhaustively (small n only)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("rooted", parents=[common], help="build a rooted-product DGS family")
    graph_input(p)
    p.add_argument("--rooted", required=True, help="rooted graph H (file or P<m>/K<m>/C<m>)")
    p.add_argument("--root", type=int, default=0, help="root vertex of H (0-based)")
    p.add_argument("--depth", type=int, default=1)
    p.set_defaults(func=cmd_rooted)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive validation on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--store", type=Path, help="directory for the persisted class store")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = RunConfig(
            fmt=args.fmt,
            primes=_parse_primes(args.primes),
            cutoff=args.cutoff,
            max_vertices=args.max_vertices,
            max_order=args.max_order,
            out=args.out,
            verbosity=args.verbose,
        )
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, cfg)
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OracleCapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
