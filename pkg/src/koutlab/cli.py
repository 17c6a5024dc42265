"""Command-line surface: generation, analysis, bounds, robustness, sweeps.

Exit codes: 0 success, 2 invalid arguments, 3 infeasible parameters
(e.g. a bound queried below its validity floor, or the exact robustness
checker's size cap exceeded). Data goes to stdout (or --out); every run
echoes its fully resolved spec as a `# spec:` comment atop CSV output or
a "spec" field in JSON output. Reruns with identical argv are
byte-identical, and --threads never changes output bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import bounds as bnd
from . import montecarlo as mc
from . import spectral as sp
from .errors import InfeasibleError
from .generators import KOutParams, generate_kout, make_rng
from .graph import components, degree_stats, from_edgelist_text, is_connected, to_edgelist_text
from .robustness import DEFAULT_CAP, max_robustness

SUBCOMMANDS = (
    "gen", "analyze", "bounds", "robust",
    "sweep-conn", "sweep-delete", "sweep-giant", "sweep-robust",
    "spectral", "design",
)


def design_guide(
    question: str,
    *,
    n: int | None = None,
    alpha: float | None = None,
    gamma: int | None = None,
    lam: int | None = None,
    r: int | None = None,
    delta: float | None = None,
) -> dict:
    """Parameter recommendations for the three standard design questions.

    q1: K for residual connectivity (and optionally a component budget)
        under random deletions; asymptotic guarantee.
    q2: K for r-robustness (K = 2r); asymptotic guarantee.
    q3: smallest K whose finite-n lower bound certifies a connectivity
        probability target; finite-n guarantee.
    """
    if question == "q2":
        if r is None or r < 1:
            raise ValueError("q2 needs --r >= 1")
        return {
            "question": "q2",
            "r": r,
            "recommended_k": 2 * r,
            "basis": "robustness one-law K >= 2r",
            "guarantee": "asymptotic (whp as n grows)",
        }
    if question == "q3":
        if n is None or delta is None:
            raise ValueError("q3 needs --n and --delta")
        return {
            "question": "q3",
            "n": n,
            "delta": delta,
            "recommended_k": bnd.recommend_k(n, delta),
            "basis": "finite-n connectivity lower bound",
            "guarantee": "finite-n certificate",
        }
    if question != "q1":
        raise ValueError(f"unknown design question {question!r}")
    if n is None or (alpha is None and gamma is None):
        raise ValueError("q1 needs --n and one of --alpha / --gamma")
    record: dict = {"question": "q1", "n": n, "guarantee": "asymptotic (whp as n grows)"}
    if alpha is not None:
        r1 = bnd.threshold_r1(alpha, n)
        record.update(
            alpha=alpha,
            threshold_r1=r1,
            recommended_k_connectivity=math.floor(r1) + 1,
            basis_connectivity="linear-deletion connectivity threshold",
        )
        if lam is not None:
            r4 = bnd.threshold_r4(alpha, lam, n)
            record.update(
                lam=lam,
                threshold_r4=r4,
                recommended_k_component_budget=math.floor(r4) + 1,
                basis_component="linear-deletion giant-component threshold",
            )
    else:
        record["gamma"] = gamma
        if gamma >= 1:
            r2 = bnd.threshold_r2(gamma)
            k_conn = max(2, math.floor(r2) + 1)
            record.update(threshold_r2=r2, recommended_k_connectivity=k_conn)
        else:
            record["recommended_k_connectivity"] = 2
        record["basis_connectivity"] = "sublinear-deletion connectivity threshold"
        if gamma < math.isqrt(n):
            record["note"] = "deletion size below sqrt(n): K >= 2 already suffices whp"
        if lam is not None:
            r3 = bnd.threshold_r3(gamma, lam)
            record.update(
                lam=lam,
                threshold_r3=r3,
                recommended_k_component_budget=max(2, math.floor(r3) + 1),
                basis_component="sublinear-deletion giant-component threshold",
            )
    return record


def _add_common(p: argparse.ArgumentParser, *names: str) -> None:
    if "n" in names:
        p.add_argument("--n", type=int, required=True)
    if "n-list" in names:
        p.add_argument("--n", type=int, action="append", required=True,
                       help="repeatable: one value per size to sweep")
    if "k" in names:
        p.add_argument("--k", type=int, required=True)
    if "k-range" in names:
        p.add_argument("--k", type=int)
        p.add_argument("--k-min", type=int)
        p.add_argument("--k-max", type=int)
    if "seed" in names:
        p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    if "trials" in names:
        p.add_argument("--trials", type=int)
    if "threads" in names:
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: KOUTLAB_THREADS or 1); never changes output")
    if "json" in names:
        p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    if "out" in names:
        p.add_argument("--out", type=str, default=None, help="write output to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="koutlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate one K-out graph as an edge list")
    _add_common(p, "n", "k", "seed", "out")

    p = sub.add_parser("analyze", help="component/degree report for an edge-list file")
    p.add_argument("--in", dest="infile", type=str, default="-", help="edge-list path or - for stdin")
    _add_common(p, "out")

    p = sub.add_parser("bounds", help="closed-form bounds and thresholds as JSON")
    _add_common(p, "n", "k", "out")
    p.add_argument("--alpha", type=float)
    p.add_argument("--gamma", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--r", type=int)

    p = sub.add_parser("robust", help="exact robustness profile of one generated graph")
    _add_common(p, "n", "k", "seed", "out")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("sweep-conn", help="empirical connectivity vs K")
    _add_common(p, "n", "k-range", "trials", "seed", "threads", "json", "out")

    p = sub.add_parser("sweep-delete", help="residual connectivity under alpha*n deletions")
    _add_common(p, "n", "k-range", "trials", "seed", "threads", "json", "out")
    p.add_argument("--alpha", type=float, action="append", required=True)

    p = sub.add_parser("sweep-giant", help="nodes outside the largest component under deletions")
    _add_common(p, "n", "k-range", "trials", "seed", "threads", "json", "out")
    p.add_argument("--alpha", type=float, action="append")
    p.add_argument("--gamma", type=int, action="append")

    p = sub.add_parser("sweep-robust", help="empirical r* range vs K")
    _add_common(p, "n", "k-range", "trials", "seed", "threads", "json", "out")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("spectral", help="algebraic connectivity comparison across models")
    _add_common(p, "n-list", "k", "trials", "seed", "json", "out")
    p.add_argument("--tol", type=float, default=sp.DEFAULT_TOL)

    p = sub.add_parser("design", help="design-question recommendations as JSON")
    p.add_argument("--question", "--q", dest="question", choices=("q1", "q2", "q3"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--gamma", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--delta", type=float)
    _add_common(p, "out")

    return parser


def _resolve_threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        return args.threads
    env = os.environ.get("KOUTLAB_THREADS")
    if env:
        t = int(env)
        if t < 1:
            raise ValueError("KOUTLAB_THREADS must be >= 1")
        return t
    return 1


def _resolve_k_values(args) -> list[int]:
    if args.k is not None:
        if args.k_min is not None or args.k_max is not None:
            raise ValueError("give either --k or --k-min/--k-max, not both")
        return [args.k]
    if args.k_min is None or args.k_max is None:
        raise ValueError("need --k or both --k-min and --k-max")
    if args.k_min > args.k_max:
        raise ValueError("--k-min must be <= --k-max")
    return list(range(args.k_min, args.k_max + 1))


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_rows(rows, spec: dict, args) -> None:
    if getattr(args, "json", False):
        _write(mc.rows_to_json(rows, spec) + "\n", args.out)
    else:
        _write(mc.rows_to_csv_text(rows, spec), args.out)


def _emit_json(payload: dict, out: str | None) -> None:
    _write(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _spec(command: str, **fields) -> dict:
    return {"command": command, **{k: v for k, v in fields.items() if v is not None}}


def _cmd_gen(args) -> int:
    g = generate_kout(KOutParams(args.n, args.k), make_rng(args.seed))
    spec = _spec("gen", n=args.n, k=args.k, seed=args.seed)
    # Edge-list output must stay byte-exact for round-tripping; the spec
    # echo goes to stderr instead of the data stream.
    print("# spec: " + json.dumps(spec, sort_keys=True), file=sys.stderr)
    _write(to_edgelist_text(g), args.out)
    return 0


def _cmd_analyze(args) -> int:
    text = sys.stdin.read() if args.infile == "-" else open(args.infile).read()
    g = from_edgelist_text(text)
    comps = components(g)
    degs = degree_stats(g)
    payload = {
        "spec": _spec("analyze", infile=args.infile),
        "n": g.n,
        "edge_count": g.edge_count,
        "connected": is_connected(g),
        "component_count": comps.component_count,
        "sizes": list(comps.sizes),
        "cmax_size": comps.cmax_size,
        "min_degree": degs.min_degree,
        "max_degree": degs.max_degree,
        "mean_degree": degs.mean_degree,
    }
    _emit_json(payload, args.out)
    return 0


def _cmd_bounds(args) -> int:
    report = bnd.bounds_report(args.n, args.k)
    payload = report.as_dict()
    payload["spec"] = _spec(
        "bounds", n=args.n, k=args.k, alpha=args.alpha, gamma=args.gamma,
        lam=args.lam, delta=args.delta, r=args.r,
    )
    thresholds: dict = {}
    if args.alpha is not None:
        thresholds["r1"] = bnd.threshold_r1(args.alpha, args.n)
        if args.lam is not None:
            thresholds["r4"] = bnd.threshold_r4(args.alpha, args.lam, args.n)
        thresholds["lambda_star_linear"] = bnd.lambda_star_linear(args.k, args.alpha, args.n)
    if args.gamma is not None:
        if args.gamma >= 1:
            thresholds["r2"] = bnd.threshold_r2(args.gamma)
        if args.lam is not None:
            thresholds["r3"] = bnd.threshold_r3(args.gamma, args.lam)
        star = bnd.lambda_star_sublinear(args.k, args.gamma, args.n)
        thresholds["lambda_star_sublinear"] = star.value
        thresholds["lambda_star_below_sqrt_n"] = star.below_sqrt_n
    if thresholds:
        payload["thresholds"] = thresholds
    if args.delta is not None:
        payload["recommended_k"] = bnd.recommend_k(args.n, args.delta)
    if args.r is not None:
        payload["robustness_k"] = 2 * args.r
    _emit_json(payload, args.out)
    return 0


def _cmd_robust(args) -> int:
    g = generate_kout(KOutParams(args.n, args.k), make_rng(args.seed))
    result = max_robustness(g, cap=args.cap)
    witness = None
    if result.witness is not None:
        witness = [sorted(result.witness[0]), sorted(result.witness[1])]
    payload = {
        "spec": _spec("robust", n=args.n, k=args.k, seed=args.seed, cap=args.cap),
        "n": g.n,
        "k": args.k,
        "r_star": result.r_star,
        "per_r": list(result.per_r),
        "witness": witness,
        "min_degree": degree_stats(g).min_degree,
        "connected": is_connected(g),
    }
    _emit_json(payload, args.out)
    return 0


def _cmd_sweep_conn(args) -> int:
    threads = _resolve_threads(args)
    trials = args.trials if args.trials is not None else 100_000
    k_values = _resolve_k_values(args)
    spec = _spec("sweep-conn", n=args.n, k_values=k_values, trials=trials,
                 seed=args.seed)
    rows = [mc.estimate_connectivity(args.n, k, trials, args.seed, threads) for k in k_values]
    _emit_rows(rows, spec, args)
    return 0


def _cmd_sweep_delete(args) -> int:
    threads = _resolve_threads(args)
    trials = args.trials if args.trials is not None else 1000
    k_values = _resolve_k_values(args)
    spec = _spec("sweep-delete", n=args.n, alpha=args.alpha, k_values=k_values,
                 trials=trials, seed=args.seed)
    rows = mc.sweep_deletion_connectivity(args.n, args.alpha, k_values, trials, args.seed, threads)
    _emit_rows(rows, spec, args)
    return 0


def _cmd_sweep_giant(args) -> int:
    threads = _resolve_threads(args)
    trials = args.trials if args.trials is not None else 1000
    k_values = _resolve_k_values(args)
    spec = _spec("sweep-giant", n=args.n, alpha=args.alpha, gamma=args.gamma,
                 k_values=k_values, trials=trials, seed=args.seed)
    rows = mc.sweep_giant(
        args.n, k_values, trials, args.seed,
        alpha_list=args.alpha or (), gamma_list=args.gamma or (), threads=threads,
    )
    _emit_rows(rows, spec, args)
    return 0


def _cmd_sweep_robust(args) -> int:
    threads = _resolve_threads(args)
    trials = args.trials if args.trials is not None else 500
    k_values = _resolve_k_values(args)
    spec = _spec("sweep-robust", n=args.n, k_values=k_values, trials=trials,
                 seed=args.seed, cap=args.cap)
    rows = mc.sweep_robustness(args.n, k_values, trials, args.seed, threads, cap=args.cap)
    _emit_rows(rows, spec, args)
    return 0


def _cmd_spectral(args) -> int:
    trials = args.trials if args.trials is not None else 500
    spec = _spec("spectral", n_list=args.n, k=args.k, trials=trials,
                 seed=args.seed, tol=args.tol)
    rows = sp.spectral_compare(args.n, args.k, trials, args.seed, tol=args.tol)
    _emit_rows(rows, spec, args)
    return 0


def _cmd_design(args) -> int:
    record = design_guide(
        args.question, n=args.n, alpha=args.alpha, gamma=args.gamma,
        lam=args.lam, r=args.r, delta=args.delta,
    )
    record["spec"] = _spec(
        "design", question=args.question, n=args.n, alpha=args.alpha,
        gamma=args.gamma, lam=args.lam, r=args.r, delta=args.delta,
    )
    _emit_json(record, args.out)
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "bounds": _cmd_bounds,
    "robust": _cmd_robust,
    "sweep-conn": _cmd_sweep_conn,
    "sweep-delete": _cmd_sweep_delete,
    "sweep-giant": _cmd_sweep_giant,
    "sweep-robust": _cmd_sweep_robust,
    "spectral": _cmd_spectral,
    "design": _cmd_design,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
