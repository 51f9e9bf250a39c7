"""Command-line front end: eval, check, axioms, search, translate.

All randomness is seeded (default 0) and JSON is emitted with sorted
keys, so identical invocations produce byte-identical output.

Exit codes: 0 success (formula holds / counterexample found), 1 formula
fails (or search exhausted), 2 bad input (parse error, bad descriptor,
illegal inverse symbol, bad flags), 3 unbound variable, 4 exhaustive
checking impossible (infinite carrier or assignment cap exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import axioms
from .checker import (
    DEFAULT_TRIALS,
    EnumerationLimitError,
    ModelFamily,
    NotFiniteError,
    UnboundVariableError,
    check_suite,
    eval_term,
    find_counterexample,
    holds_exhaustive,
    holds_sampled,
)
from .models import (
    DescriptorError,
    Element,
    ModelError,
    PreconditionError,
    build_model,
    format_element,
)
from .syntax import ParseError, parse, pretty, tokenize
from .terms import Equation, Signature, SignatureError, Term, as_formula
from .translate import to_md, to_nimd

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_UNBOUND = 3
EXIT_NOT_EXHAUSTIVE = 4


class UsageError(Exception):
    pass


def _infer_signature(text: str) -> Signature:
    """Pick the signature from the inverse tokens the input uses."""
    kinds = {token.kind for token in tokenize(text)}
    md = "inv_md" in kinds
    nimd = "inv_nimd" in kinds
    if md and nimd:
        return Signature.MIXED
    if nimd:
        return Signature.NIMD
    return Signature.MD


def _parse_formula_arg(text: str):
    sig = _infer_signature(text)
    parsed = parse(text, sig)
    if isinstance(parsed, Term):
        raise UsageError("expected a formula with '=' or '!=', got a bare term")
    return as_formula(parsed), sig


def _witness_text(witness: dict[str, Element]) -> str:
    if not witness:
        return "(no variables)"
    return ", ".join(f"{name} = {format_element(value)}"
                     for name, value in sorted(witness.items()))


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _print_report(report, as_json: bool, extra: dict) -> int:
    if as_json:
        _emit_json({**extra, **report.to_dict()})
    else:
        print(report.verdict.value)
        if report.witness is not None:
            print(f"witness: {_witness_text(report.witness)}")
        print(f"assignments tested: {report.assignments_tested}")
        if report.seed is not None:
            print(f"seed: {report.seed}")
    return EXIT_OK if report.holds else EXIT_FAILS


def cmd_eval(args: argparse.Namespace) -> int:
    sig = _infer_signature(args.term)
    term = parse(args.term, sig)
    if not isinstance(term, Term):
        raise UsageError("eval expects a term, not a formula")
    model = build_model(args.model, sig)
    valuation = {}
    for item in args.assign or ():
        name, sep, literal = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--assign expects VAR=VALUE, got {item!r}")
        valuation[name.strip()] = model.parse_element(literal.strip())
    value = eval_term(model, term, valuation)
    if args.json:
        _emit_json({"command": "eval", "model": model.descriptor,
                    "term": pretty(term), "value": format_element(value)})
    else:
        print(format_element(value))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    formula, sig = _parse_formula_arg(args.formula)
    model = build_model(args.model, sig)
    if args.exhaustive:
        report = holds_exhaustive(model, formula, args.max_evals)
    elif args.trials is not None:
        report = holds_sampled(model, formula, trials=args.trials, seed=args.seed)
    elif model.is_finite:
        report = holds_exhaustive(model, formula, args.max_evals)
    else:
        report = holds_sampled(model, formula, trials=DEFAULT_TRIALS, seed=args.seed)
    return _print_report(report, args.json, {
        "command": "check", "model": model.descriptor, "formula": pretty(formula)})


def cmd_axioms(args: argparse.Namespace) -> int:
    try:
        suite = axioms.suite_by_id(args.suite)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not args.check:
        if args.json:
            _emit_json({"command": "axioms", "suite": suite.suite_id,
                        "signature": suite.signature.value,
                        "formulas": [{"label": label, "formula": pretty(f)}
                                     for label, f in suite]})
        else:
            for label, f in suite:
                print(f"{label}: {pretty(f)}")
        return EXIT_OK
    if not args.model:
        raise UsageError("axioms --check needs --model")
    model = build_model(args.model, suite.signature)
    report = check_suite(model, suite, mode=args.mode, trials=args.trials,
                         seed=args.seed, max_evals=args.max_evals)
    if args.json:
        _emit_json({"command": "axioms", **report.to_dict()})
    else:
        for label, result in report.results:
            line = f"{label}: {result.verdict.value}"
            if result.witness is not None:
                line += f" (witness: {_witness_text(result.witness)})"
            print(line)
        if report.all_hold:
            print("all axioms hold")
        else:
            print("failing: " + ", ".join(report.failures()))
    return EXIT_OK if report.all_hold else EXIT_FAILS


def cmd_search(args: argparse.Namespace) -> int:
    formula, _ = _parse_formula_arg(args.formula)
    family = ModelFamily(p_max=args.pmax, k=args.k, products=args.products,
                         reto_n=args.reto)
    hit = find_counterexample(formula, family, args.max_evals)
    if args.json:
        _emit_json({"command": "search", "formula": pretty(formula),
                    "counterexample": None if hit is None else hit.to_dict()})
    elif hit is None:
        print("none")
    else:
        print(f"{hit.model.descriptor}: {_witness_text(hit.witness)}")
    return EXIT_OK if hit is not None else EXIT_FAILS


def cmd_translate(args: argparse.Namespace) -> int:
    if args.to == "md":
        source = parse(args.term, Signature.NIMD)
        if not isinstance(source, (Term, Equation)):
            raise UsageError("translate expects a term or an equation")
        result = to_md(source, args.n)
    else:
        source = parse(args.term, Signature.MD)
        if not isinstance(source, (Term, Equation)):
            raise UsageError("translate expects a term or an equation")
        result = to_nimd(source)
    if args.json:
        _emit_json({"command": "translate", "to": args.to, "n": args.n,
                    "input": pretty(source), "output": pretty(result)})
    else:
        print(pretty(result))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meadow",
        description="Check equations of totalized fields and meadows in "
                    "exact models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a term in a model")
    p_eval.add_argument("--model", required=True, help="model descriptor, e.g. rat:0, gf:5:1")
    p_eval.add_argument("--assign", action="append", metavar="VAR=VALUE",
                        help="bind a free variable (repeatable)")
    p_eval.add_argument("--json", action="store_true")
    p_eval.add_argument("term")
    p_eval.set_defaults(func=cmd_eval)

    p_check = sub.add_parser("check", help="check one formula against a model")
    p_check.add_argument("--model", required=True)
    mode = p_check.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true",
                      help="enumerate all assignments (finite models only)")
    mode.add_argument("--trials", type=int, default=None,
                      help="number of random valuations to sample")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--max-evals", type=int, default=None, dest="max_evals")
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("formula")
    p_check.set_defaults(func=cmd_check)

    p_axioms = sub.add_parser("axioms", help="list or check an axiom suite")
    p_axioms.add_argument("suite",
                          help="cr | md | nimd1 | nimd | nimd:N | derived-md | "
                               "derived-nimd1 | derived-nimd:N | guarded")
    p_axioms.add_argument("--list", action="store_true", dest="list_only",
                          help="list the formulas (default when --check is absent)")
    p_axioms.add_argument("--check", action="store_true")
    p_axioms.add_argument("--model")
    p_axioms.add_argument("--mode", choices=("auto", "exhaustive", "sampled"),
                          default="auto")
    p_axioms.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p_axioms.add_argument("--seed", type=int, default=0)
    p_axioms.add_argument("--max-evals", type=int, default=None, dest="max_evals")
    p_axioms.add_argument("--json", action="store_true")
    p_axioms.set_defaults(func=cmd_axioms)

    p_search = sub.add_parser("search",
                              help="look for a counterexample in a family of finite models")
    p_search.add_argument("--family", choices=("gf",), default="gf")
    p_search.add_argument("--pmax", type=int, default=7)
    p_search.add_argument("--k", type=int, default=None,
                          help="restrict the totalization value of gf models")
    p_search.add_argument("--products", action="store_true",
                          help="also try products of two prime-field models")
    p_search.add_argument("--reto", type=int, default=None, metavar="N",
                          help="also try n-totalized readings of the zero-totalized models")
    p_search.add_argument("--max-evals", type=int, default=None, dest="max_evals")
    p_search.add_argument("--json", action="store_true")
    p_search.add_argument("formula")
    p_search.set_defaults(func=cmd_search)

    p_tr = sub.add_parser("translate", help="rewrite a term between the inverse signatures")
    p_tr.add_argument("--to", choices=("md", "nimd"), required=True)
    p_tr.add_argument("--n", type=int, default=1,
                      help="totalization value for --to md (default 1)")
    p_tr.add_argument("--json", action="store_true")
    p_tr.add_argument("term")
    p_tr.set_defaults(func=cmd_translate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SignatureError, DescriptorError, ModelError,
            PreconditionError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnboundVariableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except (NotFiniteError, EnumerationLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_EXHAUSTIVE


if __name__ == "__main__":
    raise SystemExit(main())
