"""
Command-line front end.

    cofree eval FILE --tree "(* *)"
    cofree normal-check FILE [--max-leaves 4] [--max-depth 3]
    cofree couniversal-verify FILE [--max-leaves 4]
    cofree bl-family FILE [--degree 5]

FILE is either a precoalgebra file (the generating tree is sigma(d) for
``--element``, default b1) or a literal generating tree, optionally
preceded by a ``ring`` header line.

Exit codes: 0 pass, 1 property failure, 2 input error, 3 bound/truncation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from cofree.couniversal import cofreeness_passed, verify_all
from cofree.errors import (
    BoundTooLarge,
    CofreeError,
    ParseError,
    SpaceMismatch,
    TruncationExceeded,
)
from cofree.exactalg import ZZ, ModuleElement, RingSpec, parse_ring
from cofree.gentree import GeneratingTree, from_precoalgebra, literal_tree
from cofree.gradetree import parse_tree
from cofree.normality import (
    bl_family,
    check_coassociativity_up_to,
    check_counitality_up_to,
    is_normal_up_to,
    is_weakly_normal_up_to,
)
from cofree.precoalgebra import PrecoalgebraFile, parse_precoalgebra
from cofree.rephom import evaluate

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


@dataclass
class CommandConfig:
    subcommand: str
    path: str
    ring: RingSpec | None = None
    element: str = "b1"
    tree: str | None = None
    max_leaves: int = 4
    max_depth: int = 3
    degree: int = 5
    format: str = "text"


def _ring_arg(text: str) -> RingSpec:
    text = text.strip()
    if text.startswith("Zmod") and text[4:].strip().isdigit():
        text = "Zmod " + text[4:].strip()
    try:
        return parse_ring("ring " + text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cofree",
        description="Evaluate generating trees and run bounded normality and cofreeness checks.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("path", help="precoalgebra file or literal generating tree")
        p.add_argument("--ring", type=_ring_arg, help="override the file's ring: Z, Q or Zmod N")
        p.add_argument("--element", default="b1", help="element d of D: b<k> or c1,...,c_r")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate the generated homomorphism at a grading tree")
    common(p)
    p.add_argument("--tree", required=True, help='grading tree, e.g. "((* *) *)"')

    p = sub.add_parser("normal-check", help="bounded normality, coassociativity, counitality")
    common(p)
    p.add_argument("--max-leaves", type=_positive, default=4)
    p.add_argument("--max-depth", type=_nonnegative, default=3)

    p = sub.add_parser("couniversal-verify", help="bounded cofreeness checks for a precoalgebra")
    common(p)
    p.add_argument("--max-leaves", type=_positive, default=4)

    p = sub.add_parser("bl-family", help="print sigma[[0]] .. sigma[[N]]")
    common(p)
    p.add_argument("--degree", type=_nonnegative, default=5)
    return parser


def _config(args) -> CommandConfig:
    cfg = CommandConfig(args.subcommand, args.path, args.ring, args.element, format=args.format)
    for name in ("tree", "max_leaves", "max_depth", "degree"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


def load_input(path: str, ring: RingSpec | None = None):
    """Return a PrecoalgebraFile or a literal GeneratingTree."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    body = [ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()]
    is_literal = any(ln.lstrip().startswith("{") for ln in body[:2])
    if not is_literal:
        return parse_precoalgebra(text, ring)
    header_ring = None
    if body and body[0].lstrip().startswith("ring"):
        header_ring = parse_ring(body[0])
        body = body[1:]
    return literal_tree("\n".join(body), ring or header_ring or ZZ)


def _element(data: PrecoalgebraFile, spec: str) -> ModuleElement:
    P = data.precoalgebra
    spec = spec.strip()
    if spec.startswith("b") and spec[1:].isdigit():
        k = int(spec[1:])
        if not 1 <= k <= P.rank:
            raise ParseError(f"element {spec} outside b1..b{P.rank}")
        return P.basis(k - 1)
    coords = [P.ring.parse_scalar(c) for c in spec.split(",")]
    return ModuleElement(P.space, coords)


def _generator(data, cfg) -> GeneratingTree:
    if isinstance(data, PrecoalgebraFile):
        return from_precoalgebra(data.precoalgebra, data.phi, _element(data, cfg.element))
    return data


def _terms(value):
    return [[list(idx), str(c)] for idx, c in sorted(value.terms.items())]


def cmd_eval(cfg: CommandConfig, out) -> int:
    sigma = _generator(load_input(cfg.path, cfg.ring), cfg)
    t = parse_tree(cfg.tree)
    value = evaluate(sigma, t)
    if cfg.format == "json":
        out.write(json.dumps({"command": "eval", "tree": t.text, "value": value.format(),
                              "terms": _terms(value)}, ensure_ascii=False) + "\n")
    else:
        out.write(f"tree: {t.text}\nvalue: {value.format()}\n")
    return EXIT_PASS


def cmd_normal_check(cfg: CommandConfig, out) -> int:
    sigma = _generator(load_input(cfg.path, cfg.ring), cfg)
    checks = (
        lambda: is_normal_up_to(sigma, cfg.max_leaves, cfg.max_depth),
        lambda: check_coassociativity_up_to(sigma, cfg.max_leaves),
        lambda: check_counitality_up_to(sigma, cfg.max_leaves),
    )
    # stop at the first failure: later checks may need nodes a literal tree lacks
    reports = []
    for check in checks:
        reports.append(check())
        if not reports[-1].passed:
            break
    passed = all(r.passed for r in reports)
    verdict = "pass" if passed else "fail"
    if cfg.format == "json":
        out.write(json.dumps({"command": "normal-check", "reports": [r.to_dict() for r in reports],
                              "verdict": verdict}, ensure_ascii=False) + "\n")
    else:
        for r in reports:
            out.write(r.format_text() + "\n")
        out.write(f"verdict: {verdict}\n")
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_couniversal_verify(cfg: CommandConfig, out) -> int:
    data = load_input(cfg.path, cfg.ring)
    if not isinstance(data, PrecoalgebraFile):
        raise ParseError("couniversal-verify needs a precoalgebra file")
    report = verify_all(data.precoalgebra, data.phi, cfg.max_leaves)
    admissible = report["coassociativity"].passed and report["counitality"].passed
    passed = cofreeness_passed(report)
    if cfg.format == "json":
        out.write(json.dumps({"command": "couniversal-verify", **report.to_dict(),
                              "admissible": admissible,
                              "verdict": "pass" if passed else "fail"}, ensure_ascii=False) + "\n")
    else:
        out.write(report.format_text() + "\n")
        out.write(f"admissible: {'yes' if admissible else 'no'}\n")
        out.write(f"verdict: {'pass' if passed else 'fail'}\n")
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_bl_family(cfg: CommandConfig, out) -> int:
    sigma = _generator(load_input(cfg.path, cfg.ring), cfg)
    precheck = is_weakly_normal_up_to(sigma, max(cfg.degree, 1))
    if not precheck.passed:
        if cfg.format == "json":
            out.write(json.dumps({"command": "bl-family", "precheck": precheck.to_dict()},
                                 ensure_ascii=False) + "\n")
        else:
            out.write(precheck.format_text() + "\n")
        return EXIT_FAIL
    family = bl_family(sigma, cfg.degree)
    if cfg.format == "json":
        out.write(json.dumps({"command": "bl-family", "degree": cfg.degree,
                              "family": [v.format() for v in family]}, ensure_ascii=False) + "\n")
    else:
        for n, v in enumerate(family):
            out.write(f"{n}: {v.format()}\n")
    return EXIT_PASS


COMMANDS = {
    "eval": cmd_eval,
    "normal-check": cmd_normal_check,
    "couniversal-verify": cmd_couniversal_verify,
    "bl-family": cmd_bl_family,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    cfg = _config(args)
    try:
        return COMMANDS[cfg.subcommand](cfg, out)
    except (TruncationExceeded, BoundTooLarge) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BOUND
    except (ParseError, SpaceMismatch, CofreeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
