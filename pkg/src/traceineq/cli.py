"""Command-line interface.

Exit codes: 0 success, 1 inequality failure or golden mismatch, 2 usage or
input error, 3 conjecture violation found (a finding, not a bug).
"""
import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import search, suite
from .checkers import (
    DEFAULT_RTOL,
    WeightVector,
    make_report,
    t_a_power_trace,
    trace_chain,
    uniform_chain_trace,
)
from .errors import TraceIneqError
from .sampling import parse_seed
from .spectral import as_hermitian, as_psd, load_matrix, matrix_from_json, psd_decomposition, save_matrix

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_FINDING = 0, 1, 2, 3
SEED_ENV = "TRACE_INEQ_SEED"

REPORT_FIELDS = ["name", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "slack", "imag_residual", "tol", "verdict"]


class ConfigError(Exception):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _dims(text):
    try:
        dims = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects e.g. 2,3 (got {text!r})") from None
    if not dims or any(not 2 <= d <= 64 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must lie in [2, 64]")
    return dims


def _seed(text):
    try:
        return parse_seed(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tol(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("--tol must be positive")
    return value


def parse_weights(text):
    try:
        values = [float(Fraction(x.strip())) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse weights {text!r}") from None
    try:
        return WeightVector(tuple(values))
    except TraceIneqError as exc:
        raise ConfigError(str(exc)) from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--tol", type=_tol, default=DEFAULT_RTOL,
                        help="relative verdict tolerance (default %(default)g)")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=_seed, default=None,
                        help=f"decimal or 0x-hex seed (default ${SEED_ENV} or 0)")
    seeded.add_argument("--samples", type=_positive_int, default=1000)

    parser = argparse.ArgumentParser(prog="traceineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common, seeded], help="run the randomized inequality suite")
    p.add_argument("--dims", type=_dims, default=[2, 3, 4])

    p = sub.add_parser("counterexample", parents=[common], help="reproduce the complex 3x3 chain trace")
    p.add_argument("--matrix-t")
    p.add_argument("--matrix-a")
    p.add_argument("--weights")

    p = sub.add_parser("search", parents=[common, seeded], help="random search for conjecture violations")
    p.add_argument("--conjecture", choices=search.CONJECTURES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--mode", choices=search.MODES, default="ginibre")
    p.add_argument("--relax-a", action="store_true",
                   help="exploratory: draw Hermitian (not PSD) A, outside the conjecture's hypotheses")

    p = sub.add_parser("chain", parents=[common], help="evaluate Tr[T^p1 A ... T^pm A] for given matrices")
    p.add_argument("--matrix-t", required=True)
    p.add_argument("--matrix-a", required=True)
    p.add_argument("--weights", required=True)
    return parser


def _emit(args, text):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv(rows, header):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cfmt(z):
    sign = "-" if z.imag < 0 or (z.imag == 0 and str(z.imag).startswith("-")) else "+"
    return f"{z.real!r} {sign} {abs(z.imag)!r}i"


def _report_row(rep):
    return [rep.name, repr(rep.lhs.real), repr(rep.lhs.imag), repr(rep.rhs.real), repr(rep.rhs.imag),
            repr(rep.slack), repr(rep.imag_residual), repr(rep.tol), rep.verdict]


def cmd_verify(args):
    if args.seed is None:
        args.seed = _env_seed()
    records = suite.run_suite(args.dims, args.samples, args.seed, args.tol)
    rows = suite.summarize(records)
    if args.format == "json":
        text = json.dumps([r.report.to_json() for r in records]) + "\n"
    elif args.format == "csv":
        text = _csv([[r.checker, r.dim, r.index] + _report_row(r.report) for r in records],
                    ["checker", "dim", "index"] + REPORT_FIELDS)
    else:
        lines = [f"verify dims={','.join(map(str, args.dims))} samples={args.samples} "
                 f"seed={args.seed} tol={args.tol!r}",
                 f"{'name':<22} {'samples':>8} {'min_slack':>24} {'max_imag_residual':>24} "
                 f"{'fail':>5} {'degen':>6}"]
        for row in rows:
            lines.append(f"{row.name:<22} {row.samples:>8} {row.min_slack!r:>24} "
                         f"{row.max_imag_residual!r:>24} {row.fails:>5} {row.degenerate:>6}")
        total = sum(row.fails for row in rows)
        lines.append("PASS" if total == 0 else f"FAIL ({total} failing reports)")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK if all(row.fails == 0 for row in rows) else EXIT_FAIL


def cmd_counterexample(args):
    T = load_matrix(args.matrix_t) if args.matrix_t else None
    A = load_matrix(args.matrix_a) if args.matrix_a else None
    w = parse_weights(args.weights) if args.weights else search.COMPLEX_WEIGHTS
    value = search.complex_chain(T, A, w)
    ok = search.golden_ok(value)
    g = search.GOLDEN
    if args.format == "json":
        text = json.dumps({"re": value.real, "im": value.imag, "golden_re": g.real,
                           "golden_im": g.imag, "pass": ok}) + "\n"
    elif args.format == "csv":
        text = _csv([[repr(value.real), repr(value.imag), repr(g.real), repr(g.imag), ok]],
                    ["re", "im", "golden_re", "golden_im", "pass"])
    else:
        text = (f"chain     = {_cfmt(value)}\n"
                f"reference = {_cfmt(g)} "
                f"(|d re| <= {search.GOLDEN_TOL_RE:g}, |d im| <= {search.GOLDEN_TOL_IM:g})\n"
                f"{'MATCH' if ok else 'MISMATCH'}\n")
    _emit(args, text)
    return EXIT_OK if ok else EXIT_FAIL


def _instance_paths(args, report):
    if args.output:
        base = Path(args.output)
        stem = base.with_suffix("")
    else:
        stem = Path(f"traceineq-violation-{report.conjecture}-n{report.n}-m{report.m}-seed{report.seed}")
    return (stem.parent / (stem.name + ".instance.json"),
            stem.parent / (stem.name + ".T.json"),
            stem.parent / (stem.name + ".A.json"))


def cmd_search(args):
    if args.seed is None:
        args.seed = _env_seed()
    if not 2 <= args.n <= 64:
        raise ConfigError(f"--n must lie in [2, 64], got {args.n}")
    report = search.run_search(args.conjecture, args.n, args.m, args.samples, args.seed,
                               mode=args.mode, relax_a=args.relax_a, rtol=args.tol)
    data = report.to_json()
    if args.format == "json":
        text = json.dumps(data) + "\n"
    elif args.format == "csv":
        keys = ["conjecture", "n", "m", "samples", "seed", "mode", "a_class", "violations", "errors",
                "min_slack", "elapsed"]
        text = _csv([[repr(data[k]) if isinstance(data[k], float) else data[k] for k in keys]], keys)
    else:
        worst = report.worst_instance or {}
        text = (f"conjecture ({report.conjecture}) n={report.n} m={report.m} samples={report.samples} "
                f"seed={report.seed} mode={report.mode} A={report.a_class}"
                + (" [exploratory, not the stated hypotheses]" if args.relax_a else "") + "\n"
                f"violations={report.violations} errors={report.errors} "
                f"min_slack={report.min_slack!r} worst_index={worst.get('sample_index')}\n"
                f"elapsed={report.elapsed:.3f}s\n")
    _emit(args, text)
    if report.violations:
        inst, tpath, apath = _instance_paths(args, report)
        rec = report.violation_instance
        search.write_instance(inst, rec)
        save_matrix(tpath, matrix_from_json(rec["T"]))
        save_matrix(apath, matrix_from_json(rec["A"]))
        weights = ",".join(repr(x) for x in rec["weights"])
        print(f"violation persisted to {inst}", file=sys.stderr)
        print(f"replay: traceineq chain --matrix-t {tpath} --matrix-a {apath} --weights {weights}",
              file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def cmd_chain(args):
    try:
        T = load_matrix(args.matrix_t)
        A = load_matrix(args.matrix_a)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read matrix: {exc}") from None
    w = parse_weights(args.weights)
    if T.shape != A.shape:
        raise ConfigError(f"T is {T.shape} but A is {A.shape}")
    try:
        D = psd_decomposition(as_psd(T))
    except TraceIneqError as exc:
        raise ConfigError(f"T must be positive semidefinite: {exc}") from None
    try:
        value = trace_chain(D, A, w)
    except TraceIneqError as exc:
        raise ConfigError(str(exc)) from None
    try:
        A_psd = as_psd(A)
    except TraceIneqError:
        A_psd = None
    A = as_hermitian(A)
    low = uniform_chain_trace(D, A, w.m)
    top = t_a_power_trace(D.reconstruct(), A, w.m)
    out = {
        "chain": {"re": value.real, "im": value.imag},
        "weights": list(w.weights),
        "a_psd": A_psd is not None,
        "lower": low.real,
        "upper": top.real,
        "conjecture_i_slack": value.real - low.real,
        "conjecture_ii_slack": top.real - abs(value),
    }
    if A_psd is not None:
        out["reports"] = [make_report("chain.lower", low, value, args.tol).to_json(),
                          make_report("chain.upper", value, top, args.tol).to_json()]
    if args.format == "json":
        text = json.dumps(out) + "\n"
    elif args.format == "csv":
        keys = ["chain_re", "chain_im", "lower", "upper", "conjecture_i_slack", "conjecture_ii_slack"]
        vals = [value.real, value.imag] + [out.get(k, "") for k in keys[2:]]
        text = _csv([[repr(v) if isinstance(v, float) else v for v in vals]], keys)
    else:
        lines = [f"chain = {_cfmt(value)}",
                 f"Tr[(T^(1/m)A)^m] = {out['lower']!r}",
                 f"Tr[T A^m]        = {out['upper']!r}",
                 f"slack (i)  = {out['conjecture_i_slack']!r}",
                 f"slack (ii) = {out['conjecture_ii_slack']!r}"]
        if A_psd is None:
            lines.append("note: A is not PSD, so the bracket is outside the stated hypotheses")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


def _env_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return parse_seed(raw)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV}: {exc}") from None


COMMANDS = {
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
    "search": cmd_search,
    "chain": cmd_chain,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"traceineq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as exc:
        print(f"traceineq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
