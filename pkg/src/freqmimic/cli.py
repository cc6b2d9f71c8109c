"""Command-line front end.

Verbs: gen-seq, gen-nonconv, gen-dist, realize, check-axioms, compare.
Output is a pure function of the flags (seeds included), so repeated runs
are byte-identical.  Exit codes: 0 on success, 2 on usage errors, 1 when
an exhaustive invariant check finds a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cell_dist, closure_ops, event_seq, freq_seq, language_core, stats_harness

_AXIOM_FIELDS = (
    ("extensive-idempotent", "extensive_idempotent"),
    ("monotone", "monotone"),
    ("finitary", "finitary"),
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqmimic",
        description="deterministic success sequences, their generating operators, "
        "and a statistical comparison harness",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    gen_seq = sub.add_parser("gen-seq", help="canonical success-count prefix for p")
    gen_seq.add_argument("--p", required=True, help="probability, 'num/den' or decimal")
    gen_seq.add_argument("--n", required=True, type=int, help="number of trials")
    gen_seq.add_argument(
        "--m", type=int, default=None, help="optional freeze index: hold a(m) through n"
    )
    _add_format(gen_seq)

    gen_nonconv = sub.add_parser(
        "gen-nonconv", help="oscillating sequence whose frequency never settles"
    )
    gen_nonconv.add_argument("--low", required=True, help="lower frequency bound")
    gen_nonconv.add_argument("--high", required=True, help="upper frequency bound")
    gen_nonconv.add_argument("--n", required=True, type=int)
    _add_format(gen_nonconv)

    gen_dist = sub.add_parser(
        "gen-dist", help="greedy assignment of trials to cells with given shares"
    )
    gen_dist.add_argument(
        "--probs", required=True, help="comma-separated cell probabilities"
    )
    gen_dist.add_argument("--n", required=True, type=int)
    _add_format(gen_dist)

    realize = sub.add_parser(
        "realize", help="labeled outcome trace plus its generating operator"
    )
    realize.add_argument("--p", required=True)
    realize.add_argument("--n", required=True, type=int)
    _add_format(realize)

    check = sub.add_parser("check-axioms", help="exhaustive closure-axiom suites")
    check.add_argument(
        "--family",
        action="store_true",
        help="check every source-conditional operator on small languages",
    )
    check.add_argument(
        "--self-maps",
        action="store_true",
        help="check that extensive+idempotent+finitary self-maps are monotone",
    )
    check.add_argument("--language-size", type=int, default=None)

    compare = sub.add_parser(
        "compare", help="frequency and runs tests on designed vs generated streams"
    )
    compare.add_argument("--p", required=True)
    compare.add_argument("--n", required=True, type=int)
    compare.add_argument("--seed", type=int, default=42)
    compare.add_argument("--alpha", type=float, default=0.01, choices=[0.05, 0.01])
    _add_format(compare)

    return parser


def _add_format(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["csv", "json"], default="csv")


def _emit_sequence(seq: freq_seq.CumulativeSequence, fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(freq_seq.sequence_csv(seq))
    else:
        for row in freq_seq.sequence_json_rows(seq):
            print(json.dumps(row))


def _cmd_gen_seq(args: argparse.Namespace) -> int:
    p = freq_seq.parse_probability(args.p)
    seq = freq_seq.canonical_prefix(p, args.n)
    if args.m is not None:
        seq = freq_seq.truncate_freeze(seq, args.m, args.n)
    _emit_sequence(seq, args.format)
    return 0


def _cmd_gen_nonconv(args: argparse.Namespace) -> int:
    low = freq_seq.parse_probability(args.low)
    high = freq_seq.parse_probability(args.high)
    seq = freq_seq.build_nonconvergent(low, high, args.n)
    _emit_sequence(seq, args.format)
    return 0


def _cmd_gen_dist(args: argparse.Namespace) -> int:
    probs = cell_dist.parse_probability_vector(args.probs)
    assignment, sequences = cell_dist.build_cell_sequences(probs, args.n)
    if args.format == "csv":
        sys.stdout.write(cell_dist.cell_csv(assignment, sequences))
    else:
        for row in cell_dist.cell_json_rows(assignment, sequences):
            print(json.dumps(row))
    return 0


def _cmd_realize(args: argparse.Namespace) -> int:
    p = freq_seq.parse_probability(args.p)
    trace = event_seq.realize_trace(p, args.n)
    op = event_seq.trace_operator(p, args.n)
    if args.format == "json":
        payload = {
            "trials": trace.rows(),
            "operator": closure_ops.canonical_form(op),
        }
        print(json.dumps(payload))
    else:
        print(trace.text())
        print(closure_ops.canonical_form(op))
    return 0


def _cmd_check_axioms(args: argparse.Namespace) -> int:
    if args.family and args.self_maps:
        raise ValueError("choose one of --family or --self-maps")
    if args.self_maps:
        size = 2 if args.language_size is None else args.language_size
        language = language_core.prefix_language(size)
        ok = closure_ops.monotonicity_implied(language)
        maps = (1 << size) ** (1 << size)
        print(f"monotonicity-implied: {'PASS' if ok else 'FAIL'}")
        print(f"maps checked: {maps}")
        return 0 if ok else 1

    size = 4 if args.language_size is None else args.language_size
    if size < 1:
        raise ValueError("language size must be positive")
    verdicts = {name: True for name, _ in _AXIOM_FIELDS}
    checked = 0
    for s in range(1, size + 1):
        language = language_core.prefix_language(s)
        for attachments in closure_ops.all_subsets(language.statements):
            op = closure_ops.SourceConditionalOperator(
                attachments, language_core.source_statement()
            )
            report = closure_ops.check_axioms(
                closure_ops.extensionalize(op, language)
            )
            checked += 1
            for name, field in _AXIOM_FIELDS:
                verdicts[name] = verdicts[name] and getattr(report, field)
    for name, _ in _AXIOM_FIELDS:
        print(f"{name}: {'PASS' if verdicts[name] else 'FAIL'}")
    print(f"operators checked: {checked}")
    return 0 if all(verdicts.values()) else 1


def _cmd_compare(args: argparse.Namespace) -> int:
    p = freq_seq.parse_probability(args.p)
    designed = event_seq.to_binary(freq_seq.canonical_prefix(p, args.n))
    reports = stats_harness.compare(designed, p, args.seed, args.alpha)
    if args.format == "csv":
        sys.stdout.write(stats_harness.reports_csv(reports))
    else:
        for report in reports:
            print(json.dumps(report.as_json_dict()))
    return 0


_HANDLERS = {
    "gen-seq": _cmd_gen_seq,
    "gen-nonconv": _cmd_gen_nonconv,
    "gen-dist": _cmd_gen_dist,
    "realize": _cmd_realize,
    "check-axioms": _cmd_check_axioms,
    "compare": _cmd_compare,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.verb](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
