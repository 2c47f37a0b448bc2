"""Command-line front end.

Exit codes: 0 PASS, 1 FAIL (violation found), 2 usage or input error,
3 resource limit reached (INCONCLUSIVE-TRUNCATED).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Any

from . import cache as graph_cache
from .cc import ResourceLimitError, cc_variable, verify_alpha_beta_inverse
from .laurent import denominator_vector
from .quiver import ExchangeMatrix, QuiverError, classify_dynkin, load_quiver
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .reps import build_indecomposable, verify_tilting_image
from .roots import alpha_table, positive_roots, verify_alpha_injective, verify_denominator_theorem
from .seeds import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_SEEDS,
    DEFAULT_MAX_TERMS,
    LaurentPhenomenonViolation,
    NotAcyclicError,
    explore,
    initial_seed,
    mutate_seed,
    verify_cluster_determines_seed,
    verify_exchange_uniqueness,
    verify_positivity,
)

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}
CHECKS = ["cluster-determines-seed", "denominators", "injectivity", "exchange-uniqueness", "positivity", "tilting", "cc"]
DYNKIN_ONLY = {"tilting", "cc"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    quiver_path: str
    command: str
    max_depth: int = DEFAULT_MAX_DEPTH
    max_seeds: int = DEFAULT_MAX_SEEDS
    max_terms: int = DEFAULT_MAX_TERMS
    output_format: str = "json"
    cache_path: str | None = None
    workers: int = 1
    timing: bool = False
    at: int | None = None
    root: tuple[int, ...] | None = None
    check: str | None = None

    def validate(self) -> None:
        if min(self.max_depth, self.max_seeds, self.max_terms, self.workers) <= 0:
            raise UsageError("limits must be strictly positive")


def input_digest(b: ExchangeMatrix) -> str:
    payload = json.dumps({"n": b.n, "matrix": b.tolist()}, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(payload.encode()).hexdigest()[:16]


def _graph(cfg: RunConfig, b: ExchangeMatrix):
    if cfg.cache_path and os.path.exists(cfg.cache_path):
        try:
            g = graph_cache.read_cache(cfg.cache_path)
        except graph_cache.CacheError as exc:
            raise UsageError(str(exc)) from exc
        if g.records and g.matrix != b:
            raise UsageError(f"cache {cfg.cache_path} was written for a different quiver")
        if g.records:
            return g
    g = explore(b, max_depth=cfg.max_depth, max_seeds=cfg.max_seeds, max_terms=cfg.max_terms, workers=cfg.workers)
    if cfg.cache_path:
        graph_cache.write_cache(g, cfg.cache_path)
    return g


def _run_checks(names: list[str], g, b: ExchangeMatrix) -> list[CheckReport]:
    out = []
    for name in names:
        if name == "cluster-determines-seed":
            out.append(verify_cluster_determines_seed(g))
        elif name == "denominators":
            out.append(verify_denominator_theorem(g, b))
        elif name == "injectivity":
            out.append(verify_alpha_injective(g))
        elif name == "exchange-uniqueness":
            out.append(verify_exchange_uniqueness(g))
        elif name == "positivity":
            out.append(verify_positivity(g))
        elif name == "tilting":
            out.append(verify_tilting_image(g, b))
        elif name == "cc":
            out.append(verify_alpha_beta_inverse(g, b))
    return out


def _combine(checks: list[CheckReport], truncated: bool) -> tuple[str, list]:
    violations = [dict(v, check=c.name) for c in checks for v in c.violations]
    if violations:
        return FAIL, violations
    return (INCONCLUSIVE if truncated else PASS), []


def execute(cfg: RunConfig) -> dict[str, Any]:
    """Run one command and return the report dictionary (stable key order)."""
    cfg.validate()
    start = time.perf_counter()
    try:
        b = load_quiver(cfg.quiver_path)
    except OSError as exc:
        raise UsageError(f"cannot read quiver file: {exc}") from exc
    report: dict[str, Any] = {
        "command": cfg.command if not cfg.check else f"{cfg.command} {cfg.check}",
        "input_digest": input_digest(b),
        "verdict": PASS,
        "counts": {},
        "violations": [],
    }
    try:
        initial_seed(b)
    except NotAcyclicError as exc:
        raise UsageError(str(exc)) from exc
    dynkin = classify_dynkin(b)

    if cfg.command == "mutate":
        if cfg.at is None or not 0 <= cfg.at < b.n:
            raise UsageError(f"--at must be a vertex in 0..{b.n - 1}")
        s = mutate_seed(initial_seed(b), cfg.at)
        report["seed"] = {"cluster": [str(x) for x in s.cluster], "matrix": s.matrix.tolist()}
    elif cfg.command == "explore":
        g = _graph(cfg, b)
        report["counts"] = g.counts()
        report["verdict"] = INCONCLUSIVE if g.truncated else PASS
        report["notable"] = g.notable
        report["variables"] = alpha_table(g.variables())
    elif cfg.command == "verify":
        names = CHECKS if cfg.check == "all" else [cfg.check]
        skipped = []
        if dynkin is None:
            if cfg.check in DYNKIN_ONLY:
                raise UsageError(f"verify {cfg.check} needs a Dynkin quiver")
            skipped = [c for c in names if c in DYNKIN_ONLY]
            names = [c for c in names if c not in DYNKIN_ONLY]
        g = _graph(cfg, b)
        checks = _run_checks(names, g, b)
        report["counts"] = g.counts()
        report["verdict"], report["violations"] = _combine(checks, g.truncated)
        report["checks"] = [c.to_dict() for c in checks]
        report["skipped"] = skipped
        report["notable"] = g.notable
    elif cfg.command == "roots":
        if dynkin is None:
            raise UsageError("roots needs a Dynkin quiver")
        roots = positive_roots(b)
        report["dynkin_type"] = dynkin
        report["counts"] = {"positive_roots": len(roots)}
        report["roots"] = [list(r) for r in roots]
    elif cfg.command == "cc":
        if dynkin is None:
            raise UsageError("cc needs a Dynkin quiver")
        if cfg.root is None or len(cfg.root) != b.n:
            raise UsageError(f"--root needs {b.n} comma-separated entries")
        if cfg.root not in set(positive_roots(b)):
            raise UsageError(f"{list(cfg.root)} is not a positive root")
        x = cc_variable(build_indecomposable(b, cfg.root))
        g = _graph(cfg, b)
        matched = x in set(g.variables()) and denominator_vector(x) == cfg.root
        report["entry"] = {"root": list(cfg.root), "cc_variable": str(x), "matched": matched}
        if not matched:
            report["verdict"] = FAIL
            report["violations"] = [dict(report["entry"])]
    else:
        raise UsageError(f"unknown command {cfg.command!r}")
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)} if cfg.timing else None
    return report


def render_text(report: dict[str, Any]) -> str:
    lines = [
        f"command: {report['command']}",
        f"input: {report['input_digest']}",
        f"verdict: {report['verdict']}",
    ]
    for k, v in report["counts"].items():
        lines.append(f"  {k}: {v}")
    for c in report.get("checks", []):
        lines.append(f"check {c['name']}: {c['verdict']}")
    if "seed" in report:
        lines.append("cluster: " + " | ".join(report["seed"]["cluster"]))
        lines.append(f"matrix: {report['seed']['matrix']}")
    if "roots" in report:
        lines.append(f"type {report['dynkin_type']}")
        lines.extend("  " + ",".join(map(str, r)) for r in report["roots"])
    if "entry" in report:
        e = report["entry"]
        lines.append(f"root {e['root']}: {e['cc_variable']} (matched={e['matched']})")
    if "variables" in report:
        for row in report["variables"]:
            lines.append(f"  {json.dumps(row['label'])}  {row['variable']}")
    for note in report.get("notable", []):
        lines.append(f"notable: {note}")
    for v in report["violations"]:
        lines.append(f"violation: {json.dumps(v)}")
    if report.get("timing"):
        lines.append(f"time: {report['timing']['seconds']}s")
    return "\n".join(lines)


def _root_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad root {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", required=True, help="JSON file {\"n\": int, \"matrix\": [[...]]}")
    common.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    common.add_argument("--max-seeds", type=int, default=DEFAULT_MAX_SEEDS)
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cache", help="newline-delimited JSON graph cache (read if present, else written)")
    common.add_argument("--workers", type=int, default=1, help="threads for frontier expansion")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="clusterverify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("mutate", parents=[common], help="mutate the initial seed once")
    p.add_argument("--at", type=int, required=True)
    sub.add_parser("explore", parents=[common], help="breadth-first mutation graph")
    p = sub.add_parser("verify", parents=[common], help="run verification harnesses")
    p.add_argument("check", choices=CHECKS + ["all"])
    sub.add_parser("roots", parents=[common], help="positive roots of a Dynkin quiver")
    p = sub.add_parser("cc", parents=[common], help="Caldero-Chapoton variable of a positive root")
    p.add_argument("--root", type=_root_arg, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        quiver_path=args.quiver,
        command=args.command,
        max_depth=args.max_depth,
        max_seeds=args.max_seeds,
        max_terms=args.max_terms,
        output_format=args.format,
        cache_path=args.cache,
        workers=args.workers,
        timing=args.timing,
        at=getattr(args, "at", None),
        root=getattr(args, "root", None),
        check=getattr(args, "check", None),
    )
    try:
        report = execute(cfg)
    except (UsageError, QuiverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except LaurentPhenomenonViolation as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return 1
    if cfg.output_format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return EXIT[report["verdict"]]


if __name__ == "__main__":
    sys.exit(main())
