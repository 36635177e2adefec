"""Command-line front end.

Exit codes: 0 success, 2 usage or domain errors, 3 numeric failures,
4 failed reproduction checks.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import _arith, serialize
from .errors import DomainError, NumericError, ResourceError
from .moments import DEFAULT_M_MAX, M_MAX_CAP, partition_series, symmetric_sum, tilde_series, tilde_symmetric_sum
from .states import covariance_of, make_ghzw_state, make_proposition_state, make_xi_state

EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_ACCEPTANCE = 4


class UsageError(Exception):
    pass


def _add_state_args(p):
    g = p.add_argument_group("state selection")
    g.add_argument("--family", choices=["xi", "ghzw", "proposition", "vacuum"])
    g.add_argument("--xi", type=str, help="xi-family parameter, -1/2 < xi < 1 (decimal or p/q)")
    g.add_argument("--a", type=str, help="GHZ/W parameter, a > 1 (decimal or p/q)")
    g.add_argument("--state", metavar="FILE", help="JSON state file")


def _add_output_args(p, formats=("json",)):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--precision", type=int, default=serialize.DEFAULT_DIGITS, help="significant digits in output")
    p.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")


def _mmax(text):
    m = int(text)
    if not 0 <= m <= M_MAX_CAP:
        raise argparse.ArgumentTypeError(f"m_max must lie in 0..{M_MAX_CAP}")
    return m


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripsep", description="Tripartite moment witnesses for three-mode Gaussian states")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="emit a state file")
    _add_state_args(p)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("moments", help="closed-form moment series")
    _add_state_args(p)
    p.add_argument("--mmax", type=_mmax, default=DEFAULT_M_MAX)
    p.add_argument("--partition", choices=["1", "2", "3", "sym"], default="sym")
    p.add_argument("--tilde", action="store_true", help="use -a_k in place of a_k")
    _add_output_args(p, ("json", "csv"))

    p = sub.add_parser("witness", help="classify a state by the moment hierarchy")
    _add_state_args(p)
    p.add_argument("--mmax", type=_mmax, default=DEFAULT_M_MAX)
    p.add_argument("--tilde", action="store_true")
    _add_output_args(p, ("json", "csv"))

    p = sub.add_parser("ppt", help="physicality and partial-transpose tests")
    _add_state_args(p)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("simulate", help="Monte Carlo homodyne estimate of T'")
    _add_state_args(p)
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--z", type=float, default=3.0, help="confidence multiplier for verdicts")
    p.add_argument("--batch-out", metavar="FILE", help="also write raw samples")
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("oracle", help="compare closed forms with brute-force oracles")
    _add_state_args(p)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--partition", choices=["1", "2", "3"], default="1")
    p.add_argument("--lemma", action="store_true", help="verify the reordering identity for n + m <= 8")
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("reproduce", help="run every reproduction check")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--out", metavar="FILE")
    return parser


def _param(text, name):
    if text is None:
        raise UsageError(f"--{name} is required for this family")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --{name} {text!r}") from exc


def resolve_state(args):
    if args.state:
        try:
            with open(args.state) as fh:
                return serialize.state_from_json(fh.read())
        except OSError as exc:
            raise UsageError(str(exc)) from exc
    if args.family == "xi":
        return make_xi_state(_param(args.xi, "xi"))
    if args.family == "ghzw":
        return make_ghzw_state(_param(args.a, "a"))[0]
    if args.family == "proposition":
        return make_proposition_state()
    if args.family == "vacuum":
        return make_xi_state(0)
    raise UsageError("choose a state with --family or --state")


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_precision(digits):
    if digits < serialize.MIN_DIGITS or digits > _arith.WORKING_DPS:
        raise UsageError(f"--precision must lie in {serialize.MIN_DIGITS}..{_arith.WORKING_DPS}")


def cmd_state(args):
    _emit(serialize.state_to_json(resolve_state(args)), args.out)
    return 0


def cmd_moments(args):
    _check_precision(args.precision)
    state = resolve_state(args)
    if args.partition == "sym":
        series = (tilde_symmetric_sum if args.tilde else symmetric_sum)(state, args.mmax)
    else:
        series = (tilde_series if args.tilde else partition_series)(state, int(args.partition), args.mmax)
    if args.format == "csv":
        _emit(serialize.series_to_csv(series, args.precision), args.out)
    else:
        _emit(serialize.series_to_json(series, args.precision), args.out)
    return 0


def cmd_witness(args):
    from .witnesses import classify, t1_from_covariance

    _check_precision(args.precision)
    state = resolve_state(args)
    series = (tilde_symmetric_sum if args.tilde else symmetric_sum)(state, max(args.mmax, 1))
    report = classify(series)
    if args.format == "csv":
        _emit(serialize.witness_to_csv(report, args.precision), args.out)
    else:
        t1 = t1_from_covariance(covariance_of(state), tilde=args.tilde)
        _emit(serialize.dumps(serialize.witness_to_dict(report, t1, args.precision)), args.out)
    return 0


def cmd_ppt(args):
    from .ppt import is_physical, pt_class1_check

    gamma = covariance_of(resolve_state(args))
    _emit(serialize.dumps(serialize.ppt_to_dict(is_physical(gamma), pt_class1_check(gamma))), args.out)
    return 0


def cmd_simulate(args):
    from .homodyne import analytic_tprime, augment_with_vacuum, build_network, estimate, sample, write_batch

    if args.shots < 2:
        raise UsageError("--shots must be at least 2")
    g4 = augment_with_vacuum(covariance_of(resolve_state(args)))
    net = build_network()
    batch = sample(g4, net, args.shots, args.seed)
    if args.batch_out:
        write_batch(args.batch_out, batch)
    rep = estimate(batch, analytic_tprime(g4, net), z=args.z)
    _emit(serialize.dumps(serialize.estimate_to_dict(rep, batch.seed, batch.rng_algorithm)), args.out)
    return 0


def cmd_oracle(args):
    from .oracle import ReorderSpec, all_reorder_cases, fock_verify_reorder, partition_moment_oracle, quadrature_moment_oracle

    if args.lemma:
        rows = [{"n": n, "m": m, "dim": n + m + 8, "ok": fock_verify_reorder(ReorderSpec(n, m), n + m + 8)} for n, m in all_reorder_cases(8)]
        _emit(serialize.dumps({"schema": "tripsep.oracle-lemma/1", "cases": rows}), args.out)
        return 0 if all(r["ok"] for r in rows) else EXIT_NUMERIC
    state = resolve_state(args)
    k, m = int(args.partition), args.m
    closed = float(partition_series(state, k, m)[m])
    wick = partition_moment_oracle(state, k, m)
    quad = quadrature_moment_oracle(state, k, m)
    out = {
        "schema": "tripsep.oracle/1",
        "partition": k,
        "m": m,
        "closed_form": serialize.decimal(closed),
        "wick": serialize.decimal(wick),
        "quadrature": serialize.decimal(quad),
        "rel_dev_wick": serialize.decimal(abs(wick / closed - 1)),
        "rel_dev_quadrature": serialize.decimal(abs(quad / closed - 1)),
    }
    _emit(serialize.dumps(out), args.out)
    return 0


def cmd_reproduce(args):
    from .acceptance import run_all

    checks = run_all()
    if args.format == "json":
        text = serialize.dumps({"schema": "tripsep.reproduce/1", "checks": [c.__dict__ for c in checks]})
    else:
        text = "".join(c.line() + "\n" for c in checks)
        n_ok = sum(c.passed for c in checks)
        text += f"{n_ok}/{len(checks)} checks passed\n"
    _emit(text, args.out)
    return 0 if all(c.passed for c in checks) else EXIT_ACCEPTANCE


COMMANDS = {
    "state": cmd_state,
    "moments": cmd_moments,
    "witness": cmd_witness,
    "ppt": cmd_ppt,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"tripsep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, ResourceError, ArithmeticError) as exc:
        print(f"tripsep: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
