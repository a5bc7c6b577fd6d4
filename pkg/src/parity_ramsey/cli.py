"""Command line front end: one binary, one capability per subcommand.

Exit codes follow one contract everywhere: 0 clean, 1 findings (violations,
non-convergence, classification mismatch), 2 usage or precondition failure.
Machine-readable output goes to --out files (JSONL, JSON, CSV, bitmap);
stdout carries a one-object JSON summary. Output files never contain wall
times, so reruns with identical flags and seed are byte-identical at any
--jobs setting.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from dataclasses import dataclass
from math import comb
from typing import Optional

from . import bench as bench_mod
from . import codes as codes_mod
from . import construct as construct_mod
from . import patterns as patterns_mod
from . import verify as verify_mod
from ._kernel import available_backends
from .coloring import (
    BitVector,
    count_colors,
    derive_params,
    edge_color,
    encode_color,
    enumerate_vertices,
    format_color,
)
from .errors import ParameterError, ParityRamseyError


@dataclass
class RunConfig:
    """Everything a run depends on, for validation and provenance echoes."""

    subcommand: str
    beta: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    mode: Optional[str] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    jobs: Optional[int] = None
    out: Optional[str] = None
    c: object = None
    p: Optional[int] = None
    t: Optional[int] = None
    max_rounds: Optional[int] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(subcommand=args.command)
        for name in ("beta", "n", "m", "mode", "samples", "seed", "jobs", "out",
                     "c", "p", "t", "max_rounds"):
            if hasattr(args, name):
                setattr(cfg, name, getattr(args, name))
        if cfg.jobs is None:
            env = os.environ.get("PARITY_RAMSEY_JOBS")
            cfg.jobs = int(env) if env else None
        return cfg

    def require_seed_if_randomized(self, randomized: bool) -> None:
        if randomized and self.seed is None:
            raise ParameterError("randomized runs need an explicit --seed")


def _write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _summary(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_color(args: argparse.Namespace) -> int:
    params = derive_params(args.beta)
    u = BitVector.from_string(args.u)
    w = BitVector.from_string(args.w)
    color = edge_color(params, u, w)
    print(format_color(color))
    print(f"hex: {encode_color(color).hex()}")
    return 0


def _build_oracle(args: argparse.Namespace):
    params = derive_params(args.beta)
    order = getattr(args, "order", "lex")
    seed = args.seed if order == "random" else None
    vertices = enumerate_vertices(params, args.n, order=order, seed=seed)
    oracle = verify_mod.psi_oracle(params, vertices)
    if getattr(args, "corrupt", None):
        try:
            a, b, c, d = (int(x) for x in args.corrupt.split(","))
        except ValueError as exc:
            raise ParameterError(
                f"--corrupt wants 'u,w,u2,w2' vertex indices, got {args.corrupt!r}"
            ) from exc
        oracle = oracle.with_merged_color((a, b), (c, d))
    return oracle


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    cfg.require_seed_if_randomized(args.mode == "sample" or args.order == "random")
    oracle = _build_oracle(args)
    out_fh = open(args.out, "w") if args.out else None
    try:
        if args.odd_cycle:
            violations = verify_mod.check_mono_odd_cycle(oracle)
            for v in violations:
                if out_fh:
                    out_fh.write(v.to_jsonl() + "\n")
            _summary({
                "check": "mono-odd-cycle",
                "n": oracle.n,
                "order": args.order,
                "violations": len(violations),
            })
            return 1 if violations else 0
        checks = args.checks.split(",") if args.checks else None
        run = verify_mod.scan(
            oracle,
            args.m,
            checks,
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
            jobs=cfg.jobs,
            backend=args.backend,
        )
        found = 0
        for violation in run:
            found += 1
            if out_fh:
                out_fh.write(violation.to_jsonl() + "\n")
        _summary(run.summary.to_json())
        return 1 if found else 0
    finally:
        if out_fh:
            out_fh.close()


def _parse_type(text: str) -> tuple[int, ...]:
    parts = text.split(",") if "," in text else list(text)
    try:
        sizes = tuple(sorted((int(x) for x in parts), reverse=True))
    except ValueError as exc:
        raise ParameterError(f"bad --type {text!r}; want digits like 22222 or 4,2,2,2") from exc
    if sum(sizes) != 10:
        raise ParameterError(f"--type must sum to 10, got {sizes}")
    return sizes


def cmd_classify(args: argparse.Namespace) -> int:
    sizes = _parse_type(args.type)
    skip = tuple(args.skip_filter or ())
    if sizes == patterns_mod.ALL_PAIRS_TYPE:
        report = patterns_mod.filter_and_classify(skip=skip)
        expected = dict(patterns_mod.EXPECTED_BUCKET_COUNTS)
    else:
        report = patterns_mod.filter_and_classify(patterns_mod.enumerate_type(sizes), skip=skip)
        expected = {}
    if args.out:
        _write_text(args.out, json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    got = report.bucket_counts()
    diff = []
    for k in sorted(set(expected) | set(got)):
        if expected.get(k, 0) != got.get(k, 0):
            diff.append(f"bucket {k}: expected {expected.get(k, 0)} classes, got {got.get(k, 0)}")
    _summary({
        "color_type": list(sizes),
        "raw": report.raw_count,
        "classes": report.class_count,
        "filtered": report.filtered,
        "skipped_filters": list(skip),
        "survivors": report.survivor_count,
        "buckets": {str(k): v for k, v in got.items()},
        "matches_expected": not diff,
    })
    for line in diff:
        print(line, file=sys.stderr)
    return 0 if not diff else 1


def cmd_construct(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    t = args.t if args.t is not None else construct_mod.required_colors(args.n, args.p, args.c)
    res = construct_mod.moser_tardos(
        args.n, args.p, t, args.seed, max_rounds=args.max_rounds, backend=args.backend
    )
    D, satisfied = construct_mod.lll_condition(args.n, args.p, t)
    payload = res.to_json()
    payload["lll_D"] = D
    payload["lll_satisfied"] = satisfied
    if not res.converged:
        _summary(payload)
        return 1
    # declare success only after an independent pass, not the loop's own bookkeeping
    oracle = verify_mod.matrix_oracle(
        construct_mod.assignment_matrix(args.n, res.coloring.assignment)
    )
    if args.p in (4, 5):
        check = "parity-even-k4" if args.p == 4 else "parity-even-k5"
        run = verify_mod.scan(oracle, args.p, [check], jobs=cfg.jobs, backend=args.backend)
        residual = sum(1 for _ in run)
    else:
        residual = sum(
            1
            for sub in itertools.combinations(range(args.n), args.p)
            if verify_mod.is_bad_clique(oracle, sub)
        )
    payload["verified_bad_copies"] = residual
    if args.out:
        with open(args.out, "w") as fh:
            construct_mod.write_coloring_csv(fh, res, c=args.c if args.t is None else None)
    _summary(payload)
    return 0 if residual == 0 else 1


def cmd_code(args: argparse.Namespace) -> int:
    params = derive_params(args.beta)
    vertices = enumerate_vertices(params, args.n)
    oracle = verify_mod.psi_oracle(params, vertices)
    report, pclass = codes_mod.build_parity_classes(args.n, oracle)
    if args.plant:
        if args.n < args.clique_order:
            raise ParameterError("nothing to plant below the clique order")
        g0 = int(pclass.indices()[0])
        mask = codes_mod.clique_mask(args.n, tuple(range(args.clique_order)))
        pclass = pclass.with_member(g0 ^ mask)
    ver = codes_mod.verify_code(pclass, clique_order=args.clique_order)
    if args.out:
        payload = report.to_json()
        payload["verification"] = ver.to_json()
        payload["planted"] = bool(args.plant)
        _write_text(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if args.bitmap:
        with open(args.bitmap, "wb") as fh:
            codes_mod.write_class_bitmap(fh, pclass)
    _summary({
        "n": args.n,
        "colors": report.color_count,
        "classes": len(report.class_sizes),
        "chosen_class_size": report.chosen_class_size,
        "density": str(report.density),
        "code_ok": ver.ok,
        "violations": len(ver.violations),
    })
    return 0 if ver.ok else 1


def cmd_stats(args: argparse.Namespace) -> int:
    params = derive_params(args.beta)
    if args.n_list:
        ns = [int(x) for x in args.n_list.split(",")]
    else:
        ns, k = [], 2
        while k <= min(256, 2**params.alpha):
            ns.append(k)
            k *= 2
    lines = ["beta,n,edges,distinct_colors,distinct_delta_parts"]
    for n in ns:
        vertices = enumerate_vertices(params, n)
        census = count_colors(params, vertices)
        lines.append(f"{args.beta},{n},{comb(n, 2)},{census.colors},{census.sign_parts}")
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_text(args.out, text)
        _summary({"rows": len(ns), "out": args.out})
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    backends = [args.backend] if args.backend else None
    results = bench_mod.run_bench(
        n=args.n, m=args.m, beta=args.beta, repeats=args.repeats, backends=backends
    )
    print(bench_mod.format_table(results))
    if args.out:
        _write_text(args.out, json.dumps([r.to_json() for r in results], indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _add_backend(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", choices=available_backends(), default=None,
                   help="kernel backend (default: compiled when built)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parity-ramsey",
        description="Layered edge colorings without all-even cliques: "
        "evaluate, scan, classify, construct, encode.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="evaluate the coloring on one vertex pair")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("u", help="first vertex, a binary string of length beta^3")
    p.add_argument("w", help="second vertex")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="scan vertex subsets for forbidden structures")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--n", type=int, required=True, help="universe size")
    p.add_argument("--m", type=int, default=5, choices=(3, 4, 5), help="subset size")
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker threads (default: PARITY_RAMSEY_JOBS or cpu count)")
    p.add_argument("--out", default=None, help="JSONL violations file")
    p.add_argument("--checks", default=None,
                   help="comma list, e.g. parity-even-k5,striped-k4 (default per m)")
    p.add_argument("--order", choices=("lex", "random"), default="lex",
                   help="vertex selection from the universe")
    p.add_argument("--odd-cycle", action="store_true",
                   help="whole-graph color-class bipartiteness check instead of a subset scan")
    p.add_argument("--corrupt", default=None, metavar="U,W,U2,W2",
                   help="merge edge (u,w)'s color into (u2,w2)'s first (fault injection)")
    _add_backend(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="enumerate and filter colored-K5 shapes")
    p.add_argument("--type", default="22222", help="class-size type, e.g. 22222 or 2224")
    p.add_argument("--skip-filter", action="append", default=None,
                   metavar="NAME", help="disable one filter (repeatable), e.g. claim31")
    p.add_argument("--out", default=None, help="JSON report file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="random coloring with resampling until no bad clique")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=4, help="clique order to keep non-bad")
    p.add_argument("--c", default="2", help="constant in t = ceil(c * n^(4(p-2)/(p(p-1))))")
    p.add_argument("--t", type=int, default=None, help="color count override")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-rounds", type=int, default=10**6)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", default=None, help="coloring CSV file")
    _add_backend(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("code", help="parity classes of all graphs on n vertices, code check")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--n", type=int, required=True, help="vertex count, at most 7")
    p.add_argument("--clique-order", type=int, default=5, choices=(4, 5))
    p.add_argument("--plant", action="store_true",
                   help="plant one clique-difference member (control; forces exit 1)")
    p.add_argument("--out", default=None, help="JSON report file")
    p.add_argument("--bitmap", default=None, help="class membership bitmap file")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("stats", help="color-count growth data as CSV")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--n-list", default=None, help="comma list of universe sizes")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="compare scan kernels")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--n", type=int, default=48)
    p.add_argument("--m", type=int, default=5, choices=(3, 4, 5))
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out", default=None, help="JSON results file")
    _add_backend(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParityRamseyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
