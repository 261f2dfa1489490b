"""Command-line front end.

Subcommands
-----------
solve      decide one instance file (or a directory of them) and report a
           certificate when the answer is yes
verify     replay a certificate file against an instance
oracle     force the exhaustive search, reporting explored-state counts
gen        emit instance files: SAT encodings or seeded random instances
twosat     decide a 2-CNF given in DIMACS form
bench      time solver runs over a size sweep; writes CSV and a PNG chart

Exit codes: 0 = yes / satisfiable / valid, 1 = no / unsatisfiable / invalid,
2 = undecided (search budget exhausted), 3 = bad input, 4 = instance outside
the chosen solver's fragment.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .core import (
    CapabilityError,
    FormatError,
    Instance,
    parse_certificate,
    parse_instance,
    serialize_certificate,
    serialize_instance,
    verify_certificate,
)
from .generators import (
    chain_instance,
    gen_caterpillar,
    gen_clique,
    gen_random,
    parse_dimacs,
    validate_restricted,
)
from .len3 import solve_len3
from .oracle import oracle_decide
from .pathsolver import solve_path_instance
from .twosat import TwoSatFormula, solve_2sat

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_BAD_INPUT = 3
EXIT_CAPABILITY = 4

_DECISION_CODE = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


# -- solver dispatch --------------------------------------------------------------


def valid_algos(inst: Instance) -> tuple[str, ...]:
    """Solvers able to decide this instance, in auto-dispatch preference order."""
    algos = []
    if inst.path_order() is not None:
        algos.append("path")
    if inst.max_list_len() <= 3:
        algos.append("len3")
    algos.append("oracle")
    return tuple(algos)


def run_solver(
    inst: Instance,
    algo: str,
    trace: bool = False,
    max_states: Optional[int] = None,
) -> dict:
    """Run one solver and normalise the outcome into a report dict."""
    if algo == "auto":
        algo = valid_algos(inst)[0]
    elif algo not in valid_algos(inst):
        why = {
            "path": "the swap graph is not a path",
            "len3": f"preference lists have up to {inst.max_list_len()} entries",
        }[algo]
        hint = ", ".join(f"--algo {a}" for a in valid_algos(inst))
        raise CapabilityError(
            f"{why}; this instance can be solved with {hint}",
            alternatives=valid_algos(inst),
        )

    start = time.perf_counter()
    trace_lines: Optional[tuple[str, ...]] = None
    if algo == "path":
        res = solve_path_instance(inst, trace=trace)
        decision = "yes" if res.decision else "no"
        certificate = res.certificate
        counters = dict(res.counters)
        trace_lines = res.trace
    elif algo == "len3":
        res = solve_len3(inst)
        decision = "yes" if res.decision else "no"
        certificate = res.certificate
        counters = dict(res.counters)
    else:
        res = oracle_decide(inst, max_states=max_states)
        decision = res.status
        certificate = res.certificate
        counters = {"states": res.states}
    elapsed = time.perf_counter() - start

    report = {
        "algorithm": algo,
        "decision": decision,
        "certificate": list(map(list, certificate)) if certificate is not None else None,
        "swaps": len(certificate) if certificate is not None else None,
        "counters": counters,
        "time_s": round(elapsed, 6),
    }
    if trace and trace_lines is not None:
        report["trace"] = list(trace_lines)
    return report


def _print_report(report: dict, cert_path: Optional[str]) -> None:
    print(f"algorithm: {report['algorithm']}")
    print(f"decision: {report['decision']}")
    cert = report["certificate"]
    if cert is not None:
        inline = " ".join(f"({i},{j})" for i, j in cert)
        where = f" -> {cert_path}" if cert_path else ""
        print(f"certificate: {len(cert)} swaps{where}")
        if inline:
            print(f"  {inline}")
    else:
        print("certificate: none")
    print(f"time: {report['time_s']:.3f}s")
    pairs = " ".join(f"{k}={v}" for k, v in sorted(report["counters"].items()))
    print(f"counters: {pairs}")
    for line in report.get("trace", ()):
        print(f"trace | {line}")


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.input_dir is not None:
        return _solve_batch(args)
    if args.file is None:
        return _fail("give an instance file or --input-dir", EXIT_BAD_INPUT)
    try:
        inst = parse_instance(_read_text(args.file))
        report = run_solver(inst, args.algo, trace=args.trace, max_states=args.max_states)
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    except CapabilityError as exc:
        return _fail(str(exc), EXIT_CAPABILITY)
    except (FormatError, ValueError) as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)

    report["file"] = args.file
    if args.cert and report["certificate"] is not None:
        Path(args.cert).write_text(
            serialize_certificate(tuple((i, j) for i, j in report["certificate"])),
            encoding="utf-8",
        )
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_report(report, args.cert if report["certificate"] is not None else None)
    return _DECISION_CODE[report["decision"]]


def _solve_batch(args: argparse.Namespace) -> int:
    root = Path(args.input_dir)
    if not root.is_dir():
        return _fail(f"not a directory: {root}", EXIT_BAD_INPUT)
    files = sorted(p for p in root.iterdir() if p.is_file())
    if not files:
        return _fail(f"no instance files in {root}", EXIT_BAD_INPUT)

    reports = []
    for path in files:
        try:
            inst = parse_instance(path.read_text(encoding="utf-8"))
            report = run_solver(inst, args.algo, max_states=args.max_states)
        except (CapabilityError, FormatError, ValueError) as exc:
            return _fail(f"{path.name}: {exc}", EXIT_BAD_INPUT)
        report["file"] = path.name
        reports.append(report)

    if args.json:
        print(json.dumps(reports, indent=2, sort_keys=True))
    else:
        for r in reports:
            swaps = "-" if r["swaps"] is None else str(r["swaps"])
            print(
                f"{r['file']}: {r['decision']}  algo={r['algorithm']}"
                f"  swaps={swaps}  time={r['time_s']:.3f}s"
            )
    return EXIT_YES


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        inst = parse_instance(_read_text(args.file))
        cert = parse_certificate(_read_text(args.certificate))
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    except (FormatError, ValueError) as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    res = verify_certificate(inst, cert)
    if args.json:
        print(
            json.dumps(
                {"valid": res.ok, "step": res.step, "reason": res.reason},
                indent=2,
                sort_keys=True,
            )
        )
    elif res.ok:
        print(f"valid: yes ({len(cert)} swaps)")
    else:
        at = "" if res.step is None else f" at swap {res.step}"
        print(f"valid: no{at}: {res.reason}")
    return EXIT_YES if res.ok else EXIT_NO


def _cmd_oracle(args: argparse.Namespace) -> int:
    args.algo = "oracle"
    args.input_dir = None
    return _cmd_solve(args)


def _cmd_twosat(args: argparse.Namespace) -> int:
    try:
        f = parse_dimacs(_read_text(args.file))
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    except ValueError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    clauses = []
    for clause in f.clauses:
        if len(clause) > 2:
            return _fail("clauses must have at most two literals", EXIT_BAD_INPUT)
        a = clause[0]
        b = clause[1] if len(clause) == 2 else clause[0]
        clauses.append((a, b))
    model = solve_2sat(TwoSatFormula(n_vars=f.n_vars, clauses=tuple(clauses)))
    if args.json:
        out = {"satisfiable": model is not None}
        if model is not None:
            out["model"] = {str(v): model[v] for v in sorted(model)}
        print(json.dumps(out, indent=2, sort_keys=True))
    elif model is None:
        print("satisfiable: no")
    else:
        bits = " ".join(f"{v}={'T' if model[v] else 'F'}" for v in sorted(model))
        print(f"satisfiable: yes\nmodel: {bits}")
    return EXIT_YES if model is not None else EXIT_NO


# -- gen --------------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        if args.what in ("sat-clique", "sat-caterpillar"):
            f = parse_dimacs(_read_text(args.cnf))
            shape = "clique" if args.what == "sat-clique" else "caterpillar"
            problem = validate_restricted(f, shape=shape)
            if problem is not None:
                return _fail(problem, EXIT_BAD_INPUT)
            built = gen_clique(f) if shape == "clique" else gen_caterpillar(f)
            _emit(built.annotated_text(), args.out)
        else:
            inst = gen_random(
                args.kind, args.n, args.seed, list_len_bound=args.list_len_bound
            )
            _emit(serialize_instance(inst), args.out)
    except FileNotFoundError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    except ValueError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    return EXIT_YES


# -- bench ------------------------------------------------------------------------


def _bench_instance(kind: str, n: int, seed: int) -> Instance:
    if kind == "chain":
        return chain_instance(n)
    return gen_random(kind, n, seed)


def _ops_total(counters: dict) -> int:
    if "total_ops" in counters:
        return int(counters["total_ops"])
    if "states" in counters:
        return int(counters["states"])
    return int(sum(counters.values()))


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        return _fail(f"bad --sizes value: {args.sizes!r}", EXIT_BAD_INPUT)
    if not sizes:
        return _fail("--sizes needs at least one integer", EXIT_BAD_INPUT)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in sizes:
        try:
            inst = _bench_instance(args.kind, n, args.seed)
            report = run_solver(inst, args.algo, max_states=args.max_states)
        except (CapabilityError, ValueError) as exc:
            return _fail(f"size {n}: {exc}", EXIT_BAD_INPUT)
        rows.append(
            {
                "kind": args.kind,
                "n": n,
                "edges": len(inst.edges),
                "algorithm": report["algorithm"],
                "decision": report["decision"],
                "time_s": report["time_s"],
                "ops": _ops_total(report["counters"]),
                **{f"c_{k}": v for k, v in sorted(report["counters"].items())},
            }
        )

    fields = list(rows[0].keys())
    for row in rows[1:]:
        for key in row:
            if key not in fields:
                fields.append(key)
    csv_path = out_dir / f"bench_{args.kind}.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, restval="")
        writer.writeheader()
        writer.writerows(rows)

    png_path = out_dir / f"bench_{args.kind}.png"
    _bench_plot(rows, args.kind, png_path)

    for row in rows:
        print(
            f"n={row['n']:>7}  ops={row['ops']:>12}  time={row['time_s']:.3f}s"
            f"  algo={row['algorithm']}  decision={row['decision']}"
        )
    print(f"wrote {csv_path} and {png_path}")
    return EXIT_YES


def _bench_plot(rows: list[dict], kind: str, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["n"] for r in rows]
    fig, (ax_ops, ax_time) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax_ops.plot(ns, [r["ops"] for r in rows], "o-")
    ax_ops.set_xlabel("agents")
    ax_ops.set_ylabel("operations")
    ax_time.plot(ns, [r["time_s"] for r in rows], "s-", color="tab:red")
    ax_time.set_xlabel("agents")
    ax_time.set_ylabel("seconds")
    if len(ns) > 1 and min(ns) > 0:
        ax_ops.set_xscale("log")
        ax_ops.set_yscale("log")
        ax_time.set_xscale("log")
    fig.suptitle(f"solver scaling, {kind} family")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


# -- argument parsing ---------------------------------------------------------------


def _add_solver_flags(p: argparse.ArgumentParser, with_algo: bool = True) -> None:
    if with_algo:
        p.add_argument(
            "--algo",
            choices=("auto", "path", "len3", "oracle"),
            default="auto",
            help="solver to use (auto picks path, then len3, then oracle)",
        )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument(
        "--max-states",
        type=int,
        default=None,
        metavar="N",
        help="oracle state budget (also via SWAPREACH_MAX_STATES)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapreach",
        description="Decide whether an object can reach an agent through "
        "rational pairwise swaps along a social network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide an instance")
    p_solve.add_argument("file", nargs="?", help="instance file")
    p_solve.add_argument("--input-dir", help="solve every file in a directory")
    p_solve.add_argument("--cert", metavar="OUT", help="write the certificate here")
    p_solve.add_argument("--trace", action="store_true", help="show solver steps")
    _add_solver_flags(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="check a certificate")
    p_verify.add_argument("file", help="instance file")
    p_verify.add_argument("certificate", help="certificate file")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_oracle = sub.add_parser("oracle", help="exhaustive search with state counts")
    p_oracle.add_argument("file", help="instance file")
    p_oracle.add_argument("--cert", metavar="OUT")
    p_oracle.add_argument("--trace", action="store_true", help=argparse.SUPPRESS)
    _add_solver_flags(p_oracle, with_algo=False)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate instance files")
    gsub = p_gen.add_subparsers(dest="what", required=True)
    for shape in ("sat-clique", "sat-caterpillar"):
        g = gsub.add_parser(shape, help=f"encode a CNF on a {shape.split('-')[1]}")
        g.add_argument("--cnf", required=True, help="DIMACS CNF file")
        g.add_argument("-o", "--out", help="output file (default stdout)")
        g.set_defaults(func=_cmd_gen)
    g_rand = gsub.add_parser("random", help="seeded random instance")
    g_rand.add_argument(
        "--kind", choices=("path", "cycle", "clique", "random"), default="random"
    )
    g_rand.add_argument("--n", type=int, required=True)
    g_rand.add_argument("--seed", type=int, default=0)
    g_rand.add_argument("--list-len-bound", type=int, default=None)
    g_rand.add_argument("-o", "--out", help="output file (default stdout)")
    g_rand.set_defaults(func=_cmd_gen)

    p_two = sub.add_parser("twosat", help="decide a 2-CNF (DIMACS)")
    p_two.add_argument("file", help="DIMACS file with clauses of at most 2 literals")
    p_two.add_argument("--json", action="store_true")
    p_two.set_defaults(func=_cmd_twosat)

    p_bench = sub.add_parser("bench", help="size sweep with CSV + PNG output")
    p_bench.add_argument(
        "--kind",
        choices=("path", "cycle", "clique", "random", "chain"),
        default="path",
    )
    p_bench.add_argument("--sizes", required=True, help="comma-separated agent counts")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out-dir", default=".", help="where CSV/PNG land")
    _add_solver_flags(p_bench)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
