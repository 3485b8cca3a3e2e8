"""Command-line front end.

Every command prints one JSON object carrying ``"schema": 1``.  Exit codes:
0 on success (or a passing/equal verdict), 1 on a failing verdict, 2 on
input errors, 3 when a theorem's hypothesis does not hold.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .acceptance import run_all
from .diagram.fusion import CONVENTIONS, MEANDER, FusionSpec, fusion_knot
from .diagram.link import LinkDiagram
from .diagram.slices import StringLinkSlices
from .diagram.text import parse_any, render_pd, render_slices
from .errors import DiagramError, ParseError
from .homflypt import homflypt, logp0_deriv, p0, p0_deriv
from .milnor import delta, mu_bar
from .poly import render_poly
from .theorems import (EQUAL, FAIL, HYPOTHESIS_VIOLATED, INDISTINGUISHABLE, PASS, f_fusion,
                       link_homotopy_compare, milnor_equiv_compare, verify_theorem1, verify_theorem2,
                       verify_theorem3)

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3


class InputError(Exception):
    """Bad input: unreadable file, wrong kind of object, malformed flag."""


def load(source: str) -> LinkDiagram | StringLinkSlices:
    if source.startswith("builtin:"):
        return corpus.builtin(source[len("builtin:"):])
    if source == "-":
        return parse_any(sys.stdin.read())
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    return parse_any(text)


def as_diagram(obj) -> LinkDiagram:
    return obj.closure() if isinstance(obj, StringLinkSlices) else obj


def as_knot(obj) -> LinkDiagram:
    d = as_diagram(obj)
    if d.num_components != 1:
        raise InputError(f"expected a knot, got {d.num_components} components")
    return d


def as_string_link(obj) -> StringLinkSlices:
    if not isinstance(obj, StringLinkSlices):
        raise InputError("expected a string link in the slice language (or a string-link builtin)")
    return obj


def seq_arg(text: str):
    try:
        return corpus.parse_sequence(text)
    except ParseError as exc:
        raise InputError(str(exc)) from None


def _verdict_code(verdict: str) -> int:
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, HYPOTHESIS_VIOLATED: EXIT_HYPOTHESIS}[verdict]


# commands ----------------------------------------------------------------------

def cmd_homflypt(a):
    P = homflypt(as_diagram(load(a.input)))
    return {"value": render_poly(P), **P.to_json()}, EXIT_OK


def cmd_p0(a):
    value = p0(as_knot(load(a.input)))
    return {"value": render_poly(value)}, EXIT_OK


def cmd_p0_deriv(a):
    return {"l": a.l, "value": p0_deriv(as_knot(load(a.input)), a.l)}, EXIT_OK


def cmd_logp0_deriv(a):
    return {"m": a.m, "value": logp0_deriv(as_knot(load(a.input)), a.m)}, EXIT_OK


def cmd_milnor(a):
    I = seq_arg(a.I)
    return {"I": list(I), **mu_bar(as_string_link(load(a.input)), I).to_json()}, EXIT_OK


def cmd_delta(a):
    I = seq_arg(a.I)
    return {"I": list(I), "delta": delta(as_string_link(load(a.input)), I)}, EXIT_OK


def cmd_fusion_knot(a):
    T = as_string_link(load(a.input))
    spec = FusionSpec(seq_arg(a.I), a.convention)
    J = seq_arg(a.J) if a.J else spec.seq
    K = fusion_knot(T, spec, J).relabeled()
    return {"I": list(spec.seq), "J": list(J), "convention": a.convention,
            "crossings": K.num_crossings, "pd": render_pd(K), "p0": render_poly(p0(K))}, EXIT_OK


def cmd_verify1(a):
    r = verify_theorem1(as_string_link(load(a.input)), FusionSpec(seq_arg(a.I), a.convention), a.k, a.jobs)
    return r.to_json(), _verdict_code(r.verdict)


def cmd_verify2(a):
    spec = FusionSpec(seq_arg(a.I), a.convention)
    k = a.k if a.k is not None else len(spec.seq) - 1
    r = verify_theorem2(as_string_link(load(a.input)), spec, k, a.jobs)
    return r.to_json(), _verdict_code(r.verdict)


def cmd_verify3(a):
    r = verify_theorem3(as_string_link(load(a.input)), seq_arg(a.I), a.k, a.convention, a.jobs)
    return r.to_json(), _verdict_code(r.verdict)


def cmd_f(a):
    spec = FusionSpec(seq_arg(a.I), a.convention)
    value = f_fusion(as_string_link(load(a.input)), spec, a.jobs)
    return {"I": list(spec.seq), "convention": a.convention, "value": str(value),
            "exact": value.denominator == 1}, EXIT_OK


def cmd_compare_lh(a):
    r = link_homotopy_compare(as_string_link(load(a.first)), as_string_link(load(a.second)),
                              a.convention, a.jobs)
    return r.to_json(), EXIT_OK if r.status == EQUAL else EXIT_FAIL


def cmd_compare_milnor(a):
    r = milnor_equiv_compare(as_string_link(load(a.first)), as_string_link(load(a.second)),
                             a.max_length, a.convention, a.jobs)
    out = r.to_json()
    if r.status == INDISTINGUISHABLE:
        out["note"] = f"only sequences up to length {a.max_length} were examined"
    return out, EXIT_OK if r.status == INDISTINGUISHABLE else EXIT_FAIL


def cmd_corpus(a):
    if a.show:
        obj = corpus.builtin(a.show)
        text = render_slices(obj) if isinstance(obj, StringLinkSlices) else render_pd(obj)
        kind = "string-link" if isinstance(obj, StringLinkSlices) else "diagram"
        return {"name": a.show, "kind": kind, "text": text}, EXIT_OK
    out = {"builtins": list(corpus.CATALOG)}
    if a.check:
        outcomes = run_all(echo=lambda line: print(line, file=sys.stderr))
        out["acceptance"] = [{"criterion": o.criterion.number, "title": o.criterion.title,
                              "passed": o.passed, "seconds": round(o.seconds, 3),
                              "budget": o.criterion.budget, "detail": o.detail} for o in outcomes]
        return out, EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAIL
    return out, EXIT_OK


# parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for fusion-knot evaluations")
    common.add_argument("--convention", choices=CONVENTIONS, default=MEANDER, help="fusion disk convention")

    p = argparse.ArgumentParser(prog="milnorhomfly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, inputs=("input",)):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for arg in inputs:
            sp.add_argument(arg, help="file in the slice language or PD text, '-' for stdin, or builtin:NAME")
        sp.set_defaults(func=func)
        return sp

    add("homflypt", cmd_homflypt, "HOMFLYPT polynomial")
    add("p0", cmd_p0, "lowest coefficient polynomial of a knot")
    add("p0-deriv", cmd_p0_deriv, "derivative of P0 at t=1").add_argument("--l", type=int, required=True)
    add("logp0-deriv", cmd_logp0_deriv, "derivative of log P0 at t=1").add_argument("--m", type=int, required=True)
    add("milnor", cmd_milnor, "mu, delta and mu-bar of a string link").add_argument("--I", required=True)
    add("delta", cmd_delta, "indeterminacy of mu-bar").add_argument("--I", required=True)
    sp = add("fusion-knot", cmd_fusion_knot, "band-sum knot for a subsequence")
    sp.add_argument("--I", required=True)
    sp.add_argument("--J", help="subsequence of I (default: I)")
    for name, func in (("verify-thm1", cmd_verify1), ("verify-thm3", cmd_verify3)):
        sp = add(name, func, "check a theorem on a string link")
        sp.add_argument("--I", required=True)
        sp.add_argument("--k", type=int, required=True)
    sp = add("verify-thm2", cmd_verify2, "check the exact integer formula")
    sp.add_argument("--I", required=True)
    sp.add_argument("--k", type=int)
    add("f", cmd_f, "fusion-formula value").add_argument("--I", required=True)
    add("compare-lh", cmd_compare_lh, "link-homotopy comparison", inputs=("first", "second"))
    add("compare-milnor", cmd_compare_milnor, "comparison by Milnor invariants up to a length",
        inputs=("first", "second")).add_argument("--max-length", type=int, required=True)
    sp = sub.add_parser("corpus", help="list builtins, show one, or run the acceptance checks")
    sp.add_argument("--check", action="store_true")
    sp.add_argument("--show", metavar="NAME")
    sp.set_defaults(func=cmd_corpus, jobs=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print(json.dumps({"schema": SCHEMA, "error": "--jobs must be at least 1"}))
        return EXIT_INPUT
    try:
        payload, code = args.func(args)
    except (ParseError, DiagramError, InputError, ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"schema": SCHEMA, "command": args.command, "error": str(message)}))
        return EXIT_INPUT
    print(json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
