"""Command-line front end.

Subcommands: `check` (action validity and regularity), `homology` (direct,
compressed, or both), `verify` (the invariant suite), and `corpus`
(bundled example inputs).  Exit codes are a stable contract: 0 ok, 2 input
error, 3 valid-but-non-regular, 4 verification failure.
"""

import argparse
import sys
from dataclasses import dataclass
from math import gcd

from .actions import check_regularity, lex_lift, lex_max_lift, quotient, regularize
from .checks import run_action_suite, run_triple_suite
from .corpus import entry as corpus_entry, names as corpus_names, to_input_dict
from .errors import (
    InputFormatError,
    InvalidActionError,
    TripleValidationError,
    ZkHomologyError,
)
from .exact import field_rank, parse_field
from .jsonio import dump_json, load_input
from .pipeline import compressed_result
from .simplicial import betti_direct, boundary_matrix
from .transfer import build_triple

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REGULARITY = 3
EXIT_VERIFY = 4


@dataclass
class JobSpec:
    """One parsed command invocation; owns the flag-level invariants."""

    input_path: str
    field_name: str
    mode: str = "compressed"
    output_format: str = "table"
    generator_exponent: int = 1
    lift_policy: str = "lex-min"
    auto_regularize: bool = False

    @classmethod
    def from_args(cls, args):
        return cls(
            input_path=args.input,
            field_name=args.field,
            mode=getattr(args, "mode", "compressed"),
            output_format=args.output_format,
            generator_exponent=args.generator,
            lift_policy=args.lift_policy,
            auto_regularize=args.regularize,
        )

    def field(self):
        """Parsed coefficient field; rejects non-prime moduli."""
        return parse_field(self.field_name)

    def check_generator(self, k):
        if gcd(self.generator_exponent, k) != 1:
            raise InputFormatError(
                f"--generator {self.generator_exponent} is not coprime to k={k}"
            )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="zkhomology",
        description=(
            "Homology of a simplicial complex with a cyclic symmetry, "
            "computed from its quotient."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_mode=False):
        p.add_argument("input", help="JSON input file (action or triple form)")
        p.add_argument("--field", default="Q", metavar="DESC",
                       help='coefficient field: "Q" or "Fp:<prime>" (default Q)')
        p.add_argument("--format", default="table", choices=["table", "json"],
                       dest="output_format")
        p.add_argument("--regularize", action="store_true",
                       help="double-subdivide a non-regular action first")
        p.add_argument("--generator", type=int, default=1, metavar="C",
                       help="generator exponent, coprime to k (default 1)")
        p.add_argument("--lift", default="lex-min", choices=["lex-min", "lex-max"],
                       dest="lift_policy")
        if with_mode:
            p.add_argument("--mode", default="compressed",
                           choices=["direct", "compressed", "both"])

    p_check = sub.add_parser("check", help="validate the action and test regularity")
    common(p_check)

    p_hom = sub.add_parser("homology", help="Betti numbers (direct, compressed, or both)")
    common(p_hom, with_mode=True)

    p_verify = sub.add_parser("verify", help="run the full invariant suite on the input")
    common(p_verify)

    p_corpus = sub.add_parser("corpus", help="bundled example inputs")
    p_corpus.add_argument("name", nargs="?", help="entry to emit (omit with --list)")
    p_corpus.add_argument("--list", action="store_true", dest="list_names")
    p_corpus.add_argument("-o", "--output", help="write the input JSON here (default stdout)")
    return parser


def _load(path):
    kind, payload = load_input(path)
    return kind, payload


def _lift_for(qd, policy):
    return lex_lift(qd) if policy == "lex-min" else lex_max_lift(qd)


def _gate_regular(action, auto_regularize, out):
    witness = check_regularity(action)
    if witness is None:
        return action, EXIT_OK
    if auto_regularize:
        print("input action is non-regular; regularizing by double subdivision",
              file=out)
        return regularize(action), EXIT_OK
    print("non-regular action; witness: " + witness.describe(), file=out)
    print("re-run with --regularize to double-subdivide first", file=out)
    return None, EXIT_REGULARITY


def cmd_check(args, out=None):
    out = out or sys.stdout
    kind, payload = _load(args.input)
    if kind == "triple":
        payload.validate()
        print(f"triple: valid (k={payload.k}, "
              f"quotient {payload.quotient.face_counts()})", file=out)
        return EXIT_OK
    action = payload
    print(f"action: valid (k={action.k}, complex {action.complex.face_counts()})",
          file=out)
    witness = check_regularity(action)
    if witness is None:
        print("regularity: regular", file=out)
        return EXIT_OK
    print("regularity: NON-REGULAR", file=out)
    print("witness: " + witness.describe(), file=out)
    return EXIT_REGULARITY


def _direct_report(X, field):
    ranks = [0] * (X.dim + 2)
    for d in range(1, X.dim + 1):
        ranks[d] = field_rank(boundary_matrix(X, d, field))
    betti = betti_direct(X, field)
    per_dim = [
        {"d": d, "dimC": X.n_simplices(d), "rank": ranks[d]}
        for d in range(X.dim + 1)
    ]
    return {"betti": list(betti), "per_dim": per_dim}


def _print_compressed_table(res, out):
    print(f"field: {res.field_name}   k: {res.k}   generator: "
          f"{res.generator_exponent}   lift: {res.lift_policy}", file=out)
    print("  d   dim C_d   rank d_d   beta_d   snf lifts", file=out)
    for r in res.per_dim:
        lifts = "[" + ", ".join(r.snf_lifts) + "]" if r.snf_lifts else "-"
        print(f"  {r.d}   {r.chain_dim:7d}   {r.rank:8d}   {r.betti:6d}   {lifts}",
              file=out)
    print(f"compressed betti: {list(res.betti)}", file=out)


def _print_direct_table(report, field_name, out):
    print(f"field: {field_name}", file=out)
    print("  d   dim C_d   rank d_d   beta_d", file=out)
    for r, b in zip(report["per_dim"], report["betti"]):
        print(f"  {r['d']}   {r['dimC']:7d}   {r['rank']:8d}   {b:6d}", file=out)
    print(f"direct betti: {report['betti']}", file=out)


def cmd_homology(args, out=None):
    out = out or sys.stdout
    spec = JobSpec.from_args(args)
    field = spec.field()
    kind, payload = _load(spec.input_path)

    if kind == "triple":
        if spec.mode != "compressed":
            print("triple inputs carry no acted-on complex; only "
                  "--mode compressed applies", file=sys.stderr)
            return EXIT_INPUT
        triple = payload
        triple.validate()
        spec.check_generator(triple.k)
        res = compressed_result(triple, field,
                                generator_exponent=spec.generator_exponent,
                                lift_policy="(given triple)")
        if spec.output_format == "json":
            print(dump_json(res.as_dict()), file=out)
        else:
            _print_compressed_table(res, out)
        return EXIT_OK

    action = payload
    spec.check_generator(action.k)

    direct = None
    if spec.mode in ("direct", "both"):
        # The oracle runs on the complex as given; subdivision never changes it.
        direct = _direct_report(action.complex, field)

    compressed = None
    if spec.mode in ("compressed", "both"):
        gated, code = _gate_regular(action, spec.auto_regularize, sys.stderr)
        if gated is None:
            return code
        qd = quotient(gated)
        lift = _lift_for(qd, spec.lift_policy)
        triple = build_triple(gated, lift=lift, qd=qd)
        compressed = compressed_result(
            triple, field,
            generator_exponent=spec.generator_exponent,
            lift_policy=spec.lift_policy,
        )

    if spec.mode == "direct":
        if spec.output_format == "json":
            print(dump_json({"field": field.name, "mode": "direct", **direct}),
                  file=out)
        else:
            _print_direct_table(direct, field.name, out)
        return EXIT_OK

    if spec.mode == "compressed":
        if spec.output_format == "json":
            body = compressed.as_dict()
            body["mode"] = "compressed"
            print(dump_json(body), file=out)
        else:
            _print_compressed_table(compressed, out)
        return EXIT_OK

    match = list(compressed.betti) == direct["betti"]
    if spec.output_format == "json":
        body = compressed.as_dict()
        body["mode"] = "both"
        body["direct_betti"] = direct["betti"]
        body["match"] = match
        print(dump_json(body), file=out)
    else:
        _print_direct_table(direct, field.name, out)
        _print_compressed_table(compressed, out)
        print("MATCH" if match else "MISMATCH", file=out)
    return EXIT_OK if match else EXIT_VERIFY


def cmd_verify(args, out=None):
    out = out or sys.stdout
    spec = JobSpec.from_args(args)
    field = spec.field()
    fields = [field]
    try:
        kind, payload = _load(spec.input_path)
    except TripleValidationError as exc:
        print(f"FAIL triple-structure: {exc}", file=out)
        return EXIT_VERIFY

    if kind == "triple":
        outcomes = run_triple_suite(payload, fields)
    else:
        action = payload
        witness = check_regularity(action)
        if witness is not None:
            if not spec.auto_regularize:
                print("non-regular action; witness: " + witness.describe(), file=out)
                print("re-run with --regularize to double-subdivide first", file=out)
                return EXIT_REGULARITY
            action = regularize(action)
        outcomes = run_action_suite(action, fields)

    ok = all(o.ok for o in outcomes)
    if spec.output_format == "json":
        print(dump_json({
            "field": field.name,
            "ok": ok,
            "checks": [
                {"name": o.name, "ok": o.ok, "detail": o.detail} for o in outcomes
            ],
        }), file=out)
    else:
        for o in outcomes:
            print(o.line(), file=out)
        print("all checks passed" if ok else "VERIFICATION FAILED", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_corpus(args, out=None):
    out = out or sys.stdout
    if args.list_names or not args.name:
        for name in corpus_names():
            e = corpus_entry(name)
            tag = "regular" if e.regular else "non-regular"
            print(f"{name:32s} k={e.k}  betti={list(e.expected_betti)}  [{tag}]",
                  file=out)
        return EXIT_OK
    try:
        e = corpus_entry(args.name)
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    text = dump_json(to_input_dict(e))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.output}", file=out)
    else:
        print(text, file=out)
    return EXIT_OK


_DISPATCH = {
    "check": cmd_check,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
}


def run(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (InputFormatError, InvalidActionError, TripleValidationError,
            ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZkHomologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
