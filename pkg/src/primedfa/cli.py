"""Command-line interface.

Subcommands: classify, minimize, prime, decompose, reduce, sat, gen, pump.
Structured output is JSON on stdout, diagnostics go to stderr.  Exit codes:
0 success / verdict delivered, 1 usage error, 2 malformed or unsuitable
input, 3 inconclusive or budget exceeded.  The environment variable
PRIMEDFA_STATE_BUDGET overrides the product-construction state budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import classify
from .decompose import decompose_mls
from .dfa import Dfa, encode_word, index, load_dfa, minimize, to_canonical_json, to_json_dict
from .errors import (
    BudgetExceeded,
    Inconclusive,
    PrimeDfaError,
    StateBudgetExceeded,
)
from .oracle import (
    GENERAL,
    SAFETY_RESTRICTED,
    GenConfig,
    OracleConfig,
    brute_force_composite,
    generate_mls,
)
from .primality import decide_primality_mls, pump
from .reduction import (
    TriviallySat,
    TriviallyUnsat,
    build_cnf_dfa,
    normalize,
    parse_dimacs,
    solve_sat_via_primality,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_INPUT = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    """Argument parser that exits with the usage-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _emit_dfa(dfa: Dfa, out_path: str | None) -> None:
    text = to_canonical_json(dfa)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_formula(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dimacs(fh.read())


def _cmd_classify(args) -> int:
    report = classify(load_dfa(args.dfa))
    _print_json(report.to_json_dict())
    return EXIT_OK


def _cmd_minimize(args) -> int:
    _emit_dfa(minimize(load_dfa(args.dfa)), args.output)
    return EXIT_OK


def _cmd_prime(args) -> int:
    dfa = load_dfa(args.dfa)
    if args.method == "mls":
        if not classify(minimize(dfa)).is_mls_adfa_plus:
            _print_json(
                {
                    "error": "input does not minimize to a minimal linear safety "
                    "ADFA+; use --method brute-general or brute-safety"
                }
            )
            return EXIT_BAD_INPUT
        try:
            verdict = decide_primality_mls(dfa, max_words=args.max_words, jobs=args.jobs)
        except Inconclusive as exc:
            _print_json({"verdict": "Inconclusive", "reason": str(exc)})
            return EXIT_INCONCLUSIVE
    else:
        mode = GENERAL if args.method == "brute-general" else SAFETY_RESTRICTED
        cfg = OracleConfig(mode=mode, size_bound=max(1, index(dfa) - 1))
        verdict = brute_force_composite(dfa, cfg, jobs=args.jobs)
    _print_json(verdict.to_json_dict())
    return EXIT_OK


def _cmd_decompose(args) -> int:
    dfa = load_dfa(args.dfa)
    decomposition = decompose_mls(dfa, max_words=args.max_words, verify=args.verify)
    entries = []
    for pos, (part, tag) in enumerate(
        zip(decomposition.parts, decomposition.provenance)
    ):
        entry = tag.to_json_dict()
        if args.output:
            entry["file"] = f"part_{pos:03d}.json"
        else:
            entry["dfa"] = to_json_dict(part)
        entries.append(entry)
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        for pos, part in enumerate(decomposition.parts):
            with open(
                os.path.join(args.output, f"part_{pos:03d}.json"), "w", encoding="utf-8"
            ) as fh:
                fh.write(to_canonical_json(part))
        manifest = {
            "num_parts": len(decomposition.parts),
            "verified": decomposition.verified,
            "parts": entries,
        }
        with open(
            os.path.join(args.output, "manifest.json"), "w", encoding="utf-8"
        ) as fh:
            fh.write(json.dumps(manifest, indent=2) + "\n")
        _print_json(
            {
                "num_parts": len(decomposition.parts),
                "verified": decomposition.verified,
                "outdir": args.output,
            }
        )
    else:
        _print_json(
            {
                "num_parts": len(decomposition.parts),
                "verified": decomposition.verified,
                "parts": entries,
            }
        )
    return EXIT_OK


def _cmd_reduce(args) -> int:
    formula = _read_formula(args.formula)
    normalized = normalize(formula)
    if isinstance(normalized, (TriviallySat, TriviallyUnsat)):
        _print_json(
            {"error": f"formula normalizes to {normalized!r}; no automaton to build"}
        )
        return EXIT_BAD_INPUT
    _emit_dfa(build_cnf_dfa(normalized), args.output)
    return EXIT_OK


def _cmd_sat(args) -> int:
    formula = _read_formula(args.formula)
    try:
        assignment = solve_sat_via_primality(
            formula, max_words=args.max_words, jobs=args.jobs
        )
    except Inconclusive as exc:
        _print_json({"verdict": "Inconclusive", "reason": str(exc)})
        return EXIT_INCONCLUSIVE
    if assignment is None:
        print("UNSAT")
    else:
        print("SAT")
        print("v " + " ".join(str(lit) for lit in assignment.to_literals() + [0]))
    return EXIT_OK


def _cmd_gen(args) -> int:
    cfg = GenConfig(lin=args.lin, alphabet_size=args.alphabet, seed=args.seed)
    _emit_dfa(generate_mls(cfg), args.output)
    return EXIT_OK


def _cmd_pump(args) -> int:
    dfa = load_dfa(args.dfa)
    encode_word(dfa, args.word)
    print(pump(args.word, args.i, args.j, args.l))
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="primedfa", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", help="print the class report of a DFA")
    p.add_argument("dfa")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("minimize", help="canonical minimal DFA")
    p.add_argument("dfa")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("prime", help="decide primality")
    p.add_argument("dfa")
    p.add_argument(
        "--method",
        choices=["mls", "brute-general", "brute-safety"],
        default="mls",
    )
    p.add_argument("--max-words", type=_positive_int, default=None)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.set_defaults(func=_cmd_prime)

    p = sub.add_parser("decompose", help="decompose a composite automaton")
    p.add_argument("dfa")
    p.add_argument("-o", "--output", help="directory for part files and manifest")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--max-words", type=_positive_int, default=None)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("reduce", help="compile a CNF formula to its automaton")
    p.add_argument("formula")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("sat", help="decide satisfiability via primality")
    p.add_argument("formula")
    p.add_argument("--max-words", type=_positive_int, default=None)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("gen", help="generate a random minimal linear safety ADFA+")
    p.add_argument("--lin", type=_positive_int, required=True)
    p.add_argument("--alphabet", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("pump", help="expand a pump descriptor")
    p.add_argument("dfa")
    p.add_argument("--word", required=True)
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.set_defaults(func=_cmd_pump)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (Inconclusive, BudgetExceeded, StateBudgetExceeded) as exc:
        _print_json({"error": str(exc), "kind": type(exc).__name__})
        return EXIT_INCONCLUSIVE
    except PrimeDfaError as exc:
        _print_json({"error": str(exc), "kind": type(exc).__name__})
        return EXIT_BAD_INPUT
    except OSError as exc:
        _print_json({"error": str(exc)})
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
