"""Command-line entry point: ``tropelim solve|cheb|oracle``.

Exit codes: 0 minimum attained, 1 invalid input, 2 infimum not attained,
3 capacity exceeded, 4 oracle disagrees with the solver.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cheb import CertificateError, ChebDataset, fit, read_csv
from .eliminate import (
    CapacityError,
    InvariantError,
    SolverOptions,
    default_cap,
    solution_to_dict,
    solve,
)
from .oracle import OracleCapacityError, grid_oracle, vertex_oracle
from .polynomial import ValidationError, parse_problem
from .prune import PRUNE_LEVELS
from .semifield import SemifieldError, format_number, parse_number

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_ATTAINED = 2
EXIT_CAPACITY = 3
EXIT_MISMATCH = 4


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _err(msg: str) -> None:
    print(f"tropelim: {msg}", file=sys.stderr)


def _options(args, mode: str = "exact") -> SolverOptions:
    return SolverOptions(
        prune=args.prune,
        pick=args.pick,
        max_monomials=args.max_monomials,
        keep_trace=False,
        mode=mode,
        threads=args.threads,
    )


def _pretty(doc: dict) -> str:
    lines = [f"status : {doc['status']}", f"mu     : {doc['mu']}"]
    for j, (x, iv) in enumerate(zip(doc["point"], doc["intervals"]), start=1):
        lines.append(f"x_{j:<4} : {x:<24} in [{iv[0]}, {iv[1]}]")
    for s in doc.get("stats", []):
        lines.append(
            f"stage {s['level']}: raw {s['raw_count']:>8}  kept {s['pruned_count']:>8}"
            f"  {s['elapsed_ms']:>10.1f} ms"
        )
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    prob = parse_problem(Path(args.file).read_bytes())
    sol = solve(prob, _options(args, "float" if args.float else "exact"))
    doc = solution_to_dict(sol, prob.semifield, stats=args.stats, as_float=args.float)
    if args.pretty:
        sys.stdout.write(_pretty(doc))
    else:
        _emit(doc)
    return EXIT_OK if sol.attained else EXIT_NOT_ATTAINED


def _bound_list(text: str, name: str) -> list:
    try:
        return [parse_number(t) for t in text.split(",")]
    except SemifieldError as exc:
        raise ValidationError(name, str(exc)) from None


def cmd_cheb(args) -> int:
    X, Y = read_csv(Path(args.csv).read_text())
    lower = upper = None
    if args.bounds:
        side = json.loads(Path(args.bounds).read_text())
        lower = [parse_number(str(v)) for v in side.get("lower", [])]
        upper = [parse_number(str(v)) for v in side.get("upper", [])]
    if args.lower:
        lower = _bound_list(args.lower, "lower")
    if args.upper:
        upper = _bound_list(args.upper, "upper")
    if lower is None or upper is None:
        raise ValidationError("bounds", "give --lower and --upper (or --bounds FILE)")
    data = ChebDataset.make(X, Y, lower, upper)
    result, sol = fit(data, _options(args))

    def fmt(v):
        return format(float(v), ".17g") if args.float else format_number(v)

    doc = {
        "status": sol.status,
        "error": fmt(result.error),
        "theta": [fmt(t) for t in result.theta],
        "intervals": [[fmt(iv.lower), fmt(iv.upper)] for iv in result.intervals],
        "residuals": [fmt(r) for r in result.residuals],
        "certified": True,
    }
    if args.stats:
        doc["stats"] = [s.as_dict() for s in sol.trace.stats]
    if args.pretty:
        sys.stdout.write(
            f"error : {doc['error']}\n"
            + "".join(f"theta_{j} : {t}\n" for j, t in enumerate(doc["theta"], start=1))
        )
    else:
        _emit(doc)
    return EXIT_OK


def cmd_oracle(args) -> int:
    prob = parse_problem(Path(args.file).read_bytes())
    sf = prob.semifield
    if args.kind == "grid":
        value = grid_oracle(prob, args.resolution)
    else:
        value = vertex_oracle(prob)
    doc = {"kind": args.kind, "value": sf.format(value)}
    code = EXIT_OK
    if args.compare:
        mu = solve(prob, SolverOptions(max_monomials=args.max_monomials)).mu
        if mu == value:
            verdict = "EQUAL"
        elif sf.leq(mu, value):
            verdict = "UPPER-BOUND"
        else:
            verdict = "MISMATCH"
        # an exact oracle must match exactly
        if args.kind == "vertex" and verdict != "EQUAL":
            verdict = "MISMATCH"
        doc["solver_mu"] = sf.format(mu)
        doc["verdict"] = verdict
        if verdict == "MISMATCH":
            code = EXIT_MISMATCH
    _emit(doc)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropelim",
        description="Exact minimization of box-constrained tropical Puiseux polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--prune", choices=PRUNE_LEVELS, default="dominance")
        p.add_argument("--pick", choices=("lower", "midpoint", "upper"), default="lower")
        p.add_argument("--max-monomials", type=int, default=default_cap(),
                       help="per-stage monomial cap (env TROPELIM_MAX_MONOMIALS)")
        p.add_argument("--stats", action="store_true", help="include per-stage counts and timings")
        p.add_argument("--pretty", action="store_true", help="human-readable output")
        p.add_argument("--float", action="store_true", help="floating-point output")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; the engine is single-threaded")

    p = sub.add_parser("solve", help="solve a problem file")
    p.add_argument("file")
    solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cheb", help="Chebyshev (minimax) fit of a CSV dataset")
    p.add_argument("csv")
    p.add_argument("--lower", help="comma-separated lower bounds")
    p.add_argument("--upper", help="comma-separated upper bounds")
    p.add_argument("--bounds", help='JSON file {"lower": [...], "upper": [...]}')
    solver_flags(p)
    p.set_defaults(func=cmd_cheb)

    p = sub.add_parser("oracle", help="brute-force reference minimum")
    p.add_argument("file")
    p.add_argument("--kind", choices=("grid", "vertex"), required=True)
    p.add_argument("--resolution", type=int, default=11)
    p.add_argument("--compare", action="store_true", help="also run the solver")
    p.add_argument("--max-monomials", type=int, default=default_cap())
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        _err("--threads must be positive")
        return EXIT_INVALID
    try:
        return args.func(args)
    except (CapacityError, OracleCapacityError) as exc:
        _err(f"capacity exceeded: {exc}")
        return EXIT_CAPACITY
    except ValidationError as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INVALID
    except (SemifieldError, ValueError, OSError, json.JSONDecodeError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    except (InvariantError, CertificateError) as exc:
        _err(f"internal check failed: {exc}")
        return EXIT_MISMATCH
