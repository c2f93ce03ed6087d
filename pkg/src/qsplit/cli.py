"""qsplit command line: analyze, factorize, generate, bench.

Exit codes for analyze/factorize: 0 product, 1 genuinely entangled, 2 error,
3 disagreement with the minor-test oracle under --verify.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import states
from .blocks import DEFAULT_TOL
from .factorize import FactorizationReport, Verdict, full_factorize, random_product
from .oracle import oracle_verdict
from .permutations import bipartition_count, permutation_budget
from .states import PureState, state_from_json, state_to_json

EXIT_PRODUCT, EXIT_ENTANGLED, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2, 3
DEFAULT_MAX_N = 24

# number of generalized concurrences for n = 2..10, quoted for comparison only
CONCURRENCE_COUNTS = {2: 2, 3: 18, 4: 112, 5: 600, 6: 2976, 7: 14112,
                      8: 65024, 9: 293760, 10: 1308160}


class CliError(Exception):
    pass


@dataclass
class AnalysisConfig:
    tolerance: float = DEFAULT_TOL
    verify: bool = False
    parallel: bool = False
    output: Optional[Path] = None
    format: str = "text"
    max_n: int = DEFAULT_MAX_N

    def __post_init__(self):
        if not 0 < self.tolerance <= 1e-2:
            raise CliError(f"--tol must be in (0, 1e-2], got {self.tolerance}")
        if self.format not in ("text", "json"):
            raise CliError(f"--format must be text or json, got {self.format}")


def load_state(path: str) -> PureState:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    try:
        return state_from_json(obj)
    except ValueError as e:
        raise CliError(f"{path}: {e}") from e


def _emit(text: str, out: Optional[Path]):
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _fmt_set(qs) -> str:
    return "{" + ",".join(map(str, qs)) + "}"


def format_report(report: FactorizationReport) -> str:
    lines = []
    if report.verdict is Verdict.PRODUCT:
        lines.append("PRODUCT: " + " ⊗ ".join(_fmt_set(f.qubits) for f in report.factors))
        for f in report.factors:
            if f.entangled:
                lines.append(f"  factor {_fmt_set(f.qubits)} is genuinely entangled on its qubits")
    else:
        lines.append("GENUINELY ENTANGLED")
        lines.append(f"  {len(report.certificate)} witnesses (one per bipartition):")
        for w in report.certificate:
            nd = w.failure
            lines.append(f"    {w.bipartition.label()}  mover={w.bipartition.mover.to_list()}"
                         f"  blocks {nd.block_pair[0]},{nd.block_pair[1]} not proportional"
                         f"  (entries {nd.witness[0]},{nd.witness[1]}, cross={nd.residual:.3e})")
    if report.n >= 2:
        lines.append(f"splits examined: {report.splits_examined} of D = {bipartition_count(report.n)}"
                     f" (permutation budget {permutation_budget(report.n)})")
    lines.append(f"residual: {report.residual:.3e}")
    return "\n".join(lines)


def _check_size(s: PureState, cfg: AnalysisConfig):
    if s.n > cfg.max_n:
        raise CliError(f"state has {s.n} qubits, above --max-n {cfg.max_n}")
    if s.n > DEFAULT_MAX_N:
        print(f"warning: {s.n} qubits exceeds the default cap of {DEFAULT_MAX_N}; "
              f"memory use may be large", file=sys.stderr)


def _run(s: PureState, cfg: AnalysisConfig) -> tuple[FactorizationReport, int]:
    _check_size(s, cfg)
    report = full_factorize(s, cfg.tolerance, cfg.parallel)
    code = EXIT_PRODUCT if report.verdict is Verdict.PRODUCT else EXIT_ENTANGLED
    if cfg.verify and s.n >= 2:
        t0 = time.perf_counter()
        expected = oracle_verdict(s, cfg.tolerance)
        got = report.verdict is Verdict.GENUINELY_ENTANGLED
        if expected != got:
            print(f"VERIFY FAILED: block test says {report.verdict.value}, minor oracle says "
                  f"{'genuinely_entangled' if expected else 'product'}", file=sys.stderr)
            code = EXIT_DISAGREE
        else:
            print(f"verify: minor oracle agrees ({time.perf_counter() - t0:.3f} s)", file=sys.stderr)
    return report, code


def cmd_analyze(args, cfg: AnalysisConfig) -> int:
    s = load_state(args.state)
    report, code = _run(s, cfg)
    if cfg.format == "json":
        _emit(json.dumps(report.to_json(), indent=2), cfg.output)
    else:
        _emit(format_report(report), cfg.output)
    return code


def cmd_factorize(args, cfg: AnalysisConfig) -> int:
    s = load_state(args.state)
    report, code = _run(s, cfg)
    written = []
    if report.verdict is Verdict.PRODUCT:
        if len(report.factors) == 1:
            print("warning: nothing to split (single qubit)", file=sys.stderr)
        if args.factor_dir:
            outdir = Path(args.factor_dir)
        elif args.state != "-":
            outdir = Path(args.state).parent
        else:
            outdir = Path(".")
        stem = Path(args.state).stem if args.state != "-" else "state"
        outdir.mkdir(parents=True, exist_ok=True)
        for f in report.factors:
            path = outdir / f"{stem}.factor_{'-'.join(map(str, f.qubits))}.json"
            payload = {**state_to_json(f.state), "qubits": list(f.qubits)}
            path.write_text(json.dumps(payload) + "\n", encoding="utf-8")
            written.append(str(path))
    if cfg.format == "json":
        _emit(json.dumps({**report.to_json(), "factor_files": written}, indent=2), cfg.output)
    else:
        text = format_report(report)
        if written:
            text += "\nfactor files:\n" + "\n".join("  " + p for p in written)
        _emit(text, cfg.output)
    return code


def parse_partition(spec: str) -> list[list[int]]:
    try:
        parts = [[int(x) for x in part.split(",") if x.strip()] for part in spec.split("|")]
    except ValueError as e:
        raise CliError(f"bad partition {spec!r}: {e}") from e
    labels = sorted(q for p in parts for q in p)
    if any(not p for p in parts) or labels != list(range(1, len(labels) + 1)):
        raise CliError(f"partition {spec!r} must cover 1..n exactly once with non-empty parts")
    return parts


def cmd_generate(args) -> int:
    name = args.name
    try:
        if name == "product-random":
            if not args.partition:
                raise CliError("product-random needs --partition, e.g. '1,3|2,4'")
            partition = parse_partition(args.partition)
            s = random_product(partition, np.random.default_rng(args.seed))
        elif name == "zeta":
            s = states.zeta3()
        elif name == "dicke":
            if args.i is None or args.n is None:
                raise CliError("dicke needs --i and --n")
            s = states.dicke(args.i, args.n)
        elif name in states.NAMED_STATES:
            if args.n is None:
                raise CliError(f"{name} needs --n")
            s = states.NAMED_STATES[name](args.n)
        else:
            raise CliError(f"unknown state {name!r}")
    except ValueError as e:
        raise CliError(str(e)) from e

    out = Path(args.out) if args.out else None
    _emit(json.dumps(state_to_json(s)), out)
    if name == "product-random" and out is not None:
        truth = out.with_name(out.stem + ".truth.json")
        truth.write_text(json.dumps({"partition": partition, "seed": args.seed}) + "\n", encoding="utf-8")
    return 0


def bench_rows(n_min: int, n_max: int, timing: bool = True, tol: float = DEFAULT_TOL) -> list[dict]:
    if not 2 <= n_min <= n_max:
        raise CliError(f"bench range must satisfy 2 <= n-min <= n-max, got {n_min}..{n_max}")
    rows = []
    for n in range(n_min, n_max + 1):
        row = {"n": n, "D": bipartition_count(n), "budget": permutation_budget(n),
               "Q": CONCURRENCE_COUNTS.get(n), "seconds": None}
        if timing:
            s = states.ghz(n)
            t0 = time.perf_counter()
            report = full_factorize(s, tol)
            row["seconds"] = time.perf_counter() - t0
            assert report.verdict is Verdict.GENUINELY_ENTANGLED
        rows.append(row)
    return rows


def cmd_bench(args, cfg: AnalysisConfig) -> int:
    rows = bench_rows(args.n_min, args.n_max, not args.no_timing, cfg.tolerance)
    if cfg.format == "json":
        _emit(json.dumps(rows, indent=2), cfg.output)
        return 0
    lines = [f"{'n':>3} {'D':>8} {'budget':>8} {'Q':>9} {'ghz scan s':>11}"]
    for r in rows:
        q = "" if r["Q"] is None else str(r["Q"])
        t = "" if r["seconds"] is None else f"{r['seconds']:.4f}"
        lines.append(f"{r['n']:>3} {r['D']:>8} {r['budget']:>8} {q:>9} {t:>11}")
    _emit("\n".join(lines), cfg.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", help="write the report here instead of stdout")

    analysis = argparse.ArgumentParser(add_help=False)
    analysis.add_argument("state", help="state JSON file, or - for stdin")
    analysis.add_argument("--verify", action="store_true", help="cross-check with the minor oracle")
    analysis.add_argument("--parallel", action="store_true", help="threaded bipartition scan")
    analysis.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = argparse.ArgumentParser(prog="qsplit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    sub.add_parser("analyze", parents=[common, analysis], help="product or genuinely entangled?")
    f = sub.add_parser("factorize", parents=[common, analysis], help="finest factorization, with factor files")
    f.add_argument("--factor-dir", help="directory for factor files (default: next to the input)")

    g = sub.add_parser("generate", help="write a named or random product state")
    g.add_argument("name", choices=["ghz", "w", "dicke", "dw", "ghzw", "zeta", "product-random"])
    g.add_argument("--n", type=int)
    g.add_argument("--i", type=int)
    g.add_argument("--partition", help="e.g. '1,3|2,4' (product-random)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")

    b = sub.add_parser("bench", parents=[common], help="bipartition counts and scan timings")
    b.add_argument("--n-min", type=int, default=2)
    b.add_argument("--n-max", type=int, default=10)
    b.add_argument("--no-timing", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "generate":
            return cmd_generate(args)
        cfg = AnalysisConfig(
            tolerance=args.tol,
            verify=getattr(args, "verify", False),
            parallel=getattr(args, "parallel", False),
            output=Path(args.out) if args.out else None,
            format=args.format,
            max_n=getattr(args, "max_n", DEFAULT_MAX_N),
        )
        if args.cmd == "analyze":
            return cmd_analyze(args, cfg)
        if args.cmd == "factorize":
            return cmd_factorize(args, cfg)
        return cmd_bench(args, cfg)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
