"""``slopelab`` command line.

Exit codes: 0 success, 1 bad input, 2 a mathematical expectation failed
(LP minimum != bound, the two invariant routes disagree, an example misses
the bound).  Primary output is deterministic; wall-clock timings go to
stderr (``--timing``) or the ``runtime_ms`` column of sweep files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import cone, families, invariants as inv, resolution
from .errors import ExpectationFailure, LocallyTrivial, SlopelabError
from .invariants import GenusProfile, SingularityIndexVector, fmt

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_EXPECTATION = 0, 1, 2


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict
    ok: bool = True
    duration_ms: float = field(default=0.0, compare=False)

    def primary(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "ok": self.ok,
        }


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        out.append((prefix, ", ".join(str(v) for v in value)))
    elif isinstance(value, bool):
        out.append((prefix, "true" if value else "false"))
    else:
        out.append((prefix, str(value)))


def render(report: RunReport, as_json: bool) -> str:
    if as_json:
        return json.dumps(report.primary(), sort_keys=True, indent=2)
    lines = []
    _flatten("", report.outputs, lines)
    return "\n".join(f"{k} = {v}" for k, v in lines)


# ---------------------------------------------------------------------------
# commands


def _profile_inputs(p):
    return {"g": p.g, "q_f": p.q_f}


def cmd_bound(args) -> RunReport:
    p = GenusProfile(args.g, args.qf)
    out = {
        "lambda": fmt(inv.lambda_bound(p)),
        "conjecture_bound": fmt(inv.conjecture_bound(p)),
    }
    if p.generic:
        out["gap"] = fmt(inv.bound_gap(p))
        out["gap_method"] = "closed_form"
    else:
        out["gap"] = fmt(inv.bound_difference(p))
        out["gap_method"] = "difference"
    if p.q_f >= 1:
        cs = inv.proof_coefficients(p)
        out["coefficients"] = {name: fmt(v) for name, v in cs.entries()}
        out["coefficients_nonnegative"] = cs.all_nonnegative()
    return RunReport("bound", _profile_inputs(p), out)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SlopelabError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SlopelabError(f"{path}: invalid JSON ({exc})") from exc


def load_index_vector(path, strict=False) -> SingularityIndexVector:
    """Read ``{"schema": 1, "g": int, "s": {"2": v, "4": v, ...}}``."""
    data = _load_json(path)
    if not isinstance(data, dict) or "g" not in data:
        raise SlopelabError(f"{path}: expected an object with 'g' and 's'")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise SlopelabError(f"{path}: unsupported schema {data.get('schema')!r}")
    g = data["g"]
    if isinstance(g, bool) or not isinstance(g, int):
        raise SlopelabError(f"{path}: g must be an integer")
    entries = data.get("s", {})
    if not isinstance(entries, dict):
        raise SlopelabError(f"{path}: 's' must map index to value")
    try:
        parsed = {int(str(k).lstrip("s_")): v for k, v in entries.items()}
    except ValueError as exc:
        raise SlopelabError(f"{path}: bad index key ({exc})") from exc
    return SingularityIndexVector.from_mapping(g, parsed, strict=strict)


def cmd_invariants(args) -> RunReport:
    s = load_index_vector(args.input, strict=args.strict)
    ri = inv.relative_invariants(s)
    try:
        slope = ri.slope()
    except LocallyTrivial as exc:
        raise LocallyTrivial(f"locally trivial: {exc}") from exc
    out = {
        **ri.as_strings(),
        "slope": fmt(slope),
        "n": fmt(inv.n_from_indices(s)),
        "minus_one_curves": fmt(inv.minus_one_count(s)),
        "integral": ri.is_integral,
    }
    inputs = {"g": s.g, "s": {f"s{i}": fmt(v) for i, v in s.as_dict(nonzero=True).items()}}
    return RunReport("invariants", inputs, out)


def _vector_strings(point: dict) -> dict:
    return {f"s{i}": fmt(v) for i, v in sorted(point.items()) if v != 0}


def cmd_optimize(args) -> RunReport:
    p = GenusProfile(args.g, args.qf)
    rep = cone.verify_sharpness(p)
    res = rep.result
    out = {
        "lp_minimum": fmt(rep.lp_minimum),
        "lambda": fmt(rep.bound),
        "equal": rep.equal,
        "optimal_point": _vector_strings(res.optimal_point),
        "tight_constraints": sorted(res.tight_constraints),
        "witness": _vector_strings(rep.witness.as_dict()),
        "witness_slope": fmt(rep.witness_slope),
    }
    if args.certificate:
        out["certificate"] = res.certificate_strings()
        out["certificate_valid"] = cone.check_certificate(p, res.minimum, res.certificate)
    return RunReport("optimize", _profile_inputs(p), out, ok=rep.equal)


def cmd_resolve(args) -> RunReport:
    forest = resolution.load_forest(args.input)
    rep = resolution.compare_paths(forest, strict=args.strict)
    s = rep.indices
    out = {
        "indices": {f"s{i}": fmt(v) for i, v in s.as_dict().items()},
        "direct": rep.direct.as_strings(),
        "via_indices": rep.via_indices.as_strings(),
        "agree": rep.agree,
        "blowup_count": rep.trace.blowup_count,
        "minus_one_curves": rep.trace.minus_one_curve_count,
        "per_fiber": {
            f"fiber{fi}": {f"s{i}": v for i, v in counts.items() if v}
            for fi, counts in enumerate(rep.per_fiber)
        },
    }
    if rep.direct.chi > 0:
        out["slope"] = fmt(rep.direct.slope())
    return RunReport("resolve", forest.to_dict(), out, ok=rep.agree)


def cmd_example(args) -> RunReport:
    if args.family == "ruled":
        params = families.RuledCoverParams(args.m, args.e, args.b0, args.qf)
        rep = families.build_ruled_cover(params)
        inputs = {"m": args.m, "e": args.e, "b0": args.b0, "q_f": args.qf}
    else:
        params = families.ProductQuotientParams(args.g, args.branch)
        rep = families.build_product_quotient(params)
        inputs = {"g": args.g, "branch_count": args.branch}
    return RunReport(f"example {args.family}", inputs, rep.to_dict(), ok=rep.attains_bound)


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepSpec:
    g_min: int
    g_max: int
    mode: str = "bounds"
    q_f: tuple = None  # None = every admissible value
    output: str = None
    format: str = "csv"

    def __post_init__(self):
        if self.g_min < 2:
            raise SlopelabError(f"g_min must be >= 2, got {self.g_min}")
        if self.g_min > self.g_max:
            raise SlopelabError(f"empty range: g_min = {self.g_min} > g_max = {self.g_max}")
        if self.mode not in SWEEP_COLUMNS:
            raise SlopelabError(f"unknown sweep mode {self.mode!r}")

    def cells(self) -> list:
        out = []
        for g in range(self.g_min, self.g_max + 1):
            for q in inv.admissible_qf(g):
                if self.q_f is not None and q not in self.q_f:
                    continue
                if self.mode != "bounds" and q == 0:
                    continue
                out.append((g, q))
        return out


SWEEP_COLUMNS = {
    "bounds": ["g", "q_f", "lambda", "conjecture", "gap", "runtime_ms"],
    "lp_verify": ["g", "q_f", "lambda", "lp_min", "equal", "runtime_ms"],
    "examples": ["g", "q_f", "lambda", "family", "slope", "equal", "runtime_ms"],
}


def _sweep_cell(mode, g, q):
    """One row (without runtime) or None when no example family covers the cell."""
    p = GenusProfile(g, q)
    lam = inv.lambda_bound(p)
    row = {"g": g, "q_f": q, "lambda": fmt(lam)}
    if mode == "bounds":
        row["conjecture"] = fmt(inv.conjecture_bound(p))
        row["gap"] = fmt(inv.bound_difference(p))
        return row, True
    if mode == "lp_verify":
        rep = cone.verify_sharpness(p)
        ok = rep.equal and cone.check_certificate(p, rep.lp_minimum, rep.certificate)
        row["lp_min"] = fmt(rep.lp_minimum)
        row["equal"] = "true" if ok else "false"
        return row, ok
    if q == (g + 1) // 2:
        rep = families.build_product_quotient(families.ProductQuotientParams(g, 2))
    elif (g + 1) % (q + 1) == 0:
        m = (g + 1) // (q + 1)
        rep = families.build_ruled_cover(families.RuledCoverParams(m, 1, m + 1, q))
    else:
        return None, True
    row["family"] = rep.family
    row["slope"] = fmt(rep.slope)
    row["equal"] = "true" if rep.attains_bound else "false"
    return row, rep.attains_bound


def _timed_cell(args):
    mode, g, q = args
    t0 = time.perf_counter()
    try:
        row, ok = _sweep_cell(mode, g, q)
    except (SlopelabError, ExpectationFailure) as exc:
        row, ok = {"g": g, "q_f": q, "equal": "false", "error": str(exc)}, False
    if row is not None:
        row["runtime_ms"] = f"{(time.perf_counter() - t0) * 1000:.3f}"
    return row, ok


def worker_count(flag=None) -> int:
    if flag:
        return max(1, flag)
    env = os.environ.get("SLOPELAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SlopelabError(f"SLOPELAB_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def run_sweep(spec: SweepSpec, stream, workers=1):
    """Evaluate every cell, writing rows to ``stream`` in (g, q_f) order as
    they complete.  Returns ``(rows, failures)``."""
    columns = SWEEP_COLUMNS[spec.mode]
    rows, failures = [], 0
    if spec.format == "csv":
        writer = csv.DictWriter(stream, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
    jobs = [(spec.mode, g, q) for g, q in spec.cells()]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for row, ok in pool.map(_timed_cell, jobs):
            if row is None:
                continue
            failures += not ok
            rows.append(row)
            if spec.format == "csv":
                writer.writerow(row)
                stream.flush()
    if spec.format == "json":
        json.dump({"schema": SCHEMA, "mode": spec.mode, "rows": rows}, stream, indent=2, sort_keys=True)
        stream.write("\n")
    return rows, failures


def _parse_qf_list(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_sweep(args) -> RunReport:
    spec = SweepSpec(args.g_min, args.g_max, args.mode, args.qf, args.output, args.format)
    workers = worker_count(args.workers)
    if spec.output:
        with open(spec.output, "w", newline="") as fh:
            rows, failures = run_sweep(spec, fh, workers)
        out = {"rows": len(rows), "failures": failures, "output": spec.output}
    else:
        buf = io.StringIO()
        rows, failures = run_sweep(spec, buf, workers)
        out = {"rows": len(rows), "failures": failures, "table": buf.getvalue()}
    inputs = {"g_min": spec.g_min, "g_max": spec.g_max, "mode": spec.mode,
              "q_f": list(spec.q_f) if spec.q_f is not None else "all"}
    return RunReport("sweep", inputs, out, ok=failures == 0)


# ---------------------------------------------------------------------------
# argument parsing


def _global_flags(parser, suppress):
    d = argparse.SUPPRESS if suppress else False
    parser.add_argument("--json", action="store_true", default=d, help="machine-readable output")
    parser.add_argument("--strict", action="store_true", default=d,
                        help="for even g, require s_{g+2} = 0 / no multiplicity g+2")
    parser.add_argument("--certificate", action="store_true", default=d,
                        help="print the dual certificate (optimize)")
    parser.add_argument("--timing", action="store_true", default=d,
                        help="report wall-clock duration on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopelab",
        description="Exact slope bounds for hyperelliptic fibrations.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        _global_flags(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    sp = add("bound", cmd_bound, "slope bound, conjectured bound, gap, coefficients")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--qf", type=int, required=True)

    sp = add("invariants", cmd_invariants, "K^2, chi, e, slope from an index-vector file")
    sp.add_argument("input")

    sp = add("optimize", cmd_optimize, "exact LP minimum of the slope over the index cone")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--qf", type=int, required=True)

    sp = add("resolve", cmd_resolve, "invariants of a singularity-forest file by both routes")
    sp.add_argument("input")

    sp = add("example", None, "sharp example families")
    fam = sp.add_subparsers(dest="family", required=True)
    ruled = fam.add_parser("ruled", help="double cover of a Hirzebruch pencil")
    _global_flags(ruled, suppress=True)
    ruled.set_defaults(func=cmd_example)
    for name in ("--m", "--e", "--b0", "--qf"):
        ruled.add_argument(name, type=int, required=True)
    prod = fam.add_parser("product", help="quotient of a product by an involution")
    _global_flags(prod, suppress=True)
    prod.set_defaults(func=cmd_example)
    prod.add_argument("--g", type=int, required=True)
    prod.add_argument("--branch", type=int, required=True, help="number of branch points")

    sp = add("sweep", cmd_sweep, "evaluate a grid of (g, q_f) cells")
    sp.add_argument("--g-min", type=int, required=True)
    sp.add_argument("--g-max", type=int, required=True)
    sp.add_argument("--qf", type=_parse_qf_list, default=None, help="comma-separated q_f values")
    sp.add_argument("--mode", choices=sorted(SWEEP_COLUMNS), default="bounds")
    sp.add_argument("--output", "-o", default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--workers", type=int, default=None,
                    help="worker threads (default: $SLOPELAB_THREADS or CPU count)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        report = args.func(args)
    except SlopelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExpectationFailure as exc:
        print(f"expectation failed: {exc}", file=sys.stderr)
        return EXIT_EXPECTATION
    report.duration_ms = (time.perf_counter() - t0) * 1000
    if report.command == "sweep" and not args.json and "table" in report.outputs:
        sys.stdout.write(report.outputs["table"])
    else:
        print(render(report, args.json))
    if args.timing:
        print(f"duration_ms = {report.duration_ms:.3f}", file=sys.stderr)
    if not report.ok:
        print(f"expectation failed: {report.command}", file=sys.stderr)
        return EXIT_EXPECTATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
