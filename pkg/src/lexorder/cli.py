"""Command-line interface.

Exit codes: 0 success (or isomorphic), 1 not isomorphic / failed checks,
2 usage or input error.  Term arguments name a file containing one term, or
are taken as a literal term when no such file exists.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import Digraph, chain_digraph, embed, is_total, star_product, MultiIndexUnit
from .autos import act as act_fn, measured_constant, recoding_plan, NotDivisibleError
from .classify import RegimeError, classify
from .condense import DenseBlock, condense, format_signature
from .oracle import run_suite, suite_case_names
from .orderdsl import DslError, OrderTerm, format_term, normalize, parse_term, to_tree
from .posets import FinPoset
from .space import SpaceError, d_value, format_point, parse_point
from .supernat import aut_rank, format_pair, pair_equiv, parse_pair


class CliError(ValueError):
    pass


def _load_term(arg: str) -> OrderTerm:
    text = arg
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_term(text)


def _print_verdict(verdict, out):
    if verdict.isomorphic:
        print("isomorphic", file=out)
        for m in verdict.matches:
            if m.witness is not None:
                print(f"block {m.index}: witness a={m.witness.a} b={m.witness.b}", file=out)
            else:
                pairs = ", ".join(f"{_color_text(ca)}~{_color_text(cb)}" for ca, cb in m.colors)
                print(f"block {m.index}: dense colors {pairs}", file=out)
    else:
        print("not isomorphic", file=out)
        print(f"block {verdict.mismatch.index}: {verdict.mismatch.reason}", file=out)
        if verdict.caveat:
            print(f"note: {verdict.caveat}", file=out)


def _color_text(c) -> str:
    from .orderdsl import format_color
    return format_color(c)


def _verdict_json(verdict) -> dict:
    out = {
        "isomorphic": verdict.isomorphic,
        "signature_a": format_signature(verdict.signature_a),
        "signature_b": format_signature(verdict.signature_b),
    }
    if verdict.isomorphic:
        out["blocks"] = [
            {"index": m.index,
             **({"witness": [m.witness.a, m.witness.b]} if m.witness else
                {"colors": [[_color_text(a), _color_text(b)] for a, b in m.colors]})}
            for m in verdict.matches
        ]
    else:
        out["mismatch"] = {"index": verdict.mismatch.index, "reason": verdict.mismatch.reason}
        if verdict.caveat:
            out["caveat"] = verdict.caveat
    return out


def _parse_digraph(text: str) -> Digraph:
    t = text.strip()
    if t.startswith("chain:"):
        return chain_digraph(int(t.split(":", 1)[1]))
    if t.startswith("poset(") and t.endswith(")"):
        body = t[len("poset("):-1]
        n_text, _, pairs_text = body.partition(";")
        n = int(n_text)
        pairs = []
        if pairs_text.strip():
            for piece in pairs_text.split(","):
                i, _, j = piece.partition("<")
                pairs.append((int(i), int(j)))
        strict = FinPoset(n, pairs).strict
        return Digraph(n, frozenset(strict) | frozenset((v, v) for v in range(1, n + 1)))
    raise CliError(f"cannot read digraph {text!r}; use chain:N or poset(n;i<j,...)")


def _parse_unit(text: str) -> MultiIndexUnit:
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")) or ")(" not in t:
        raise CliError("unit must look like (i1,i2)(j1,j2)")
    left, right = t[1:-1].split(")(")
    i = tuple(int(v) for v in left.split(","))
    j = tuple(int(v) for v in right.split(","))
    return MultiIndexUnit(i, j)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lexorder",
                                 description="classification engine for weighted countable linear orders")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate a term and print its canonical text")
    p.add_argument("term")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("condense", help="print the classification signature")
    p.add_argument("term")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="decide isomorphism of two terms")
    p.add_argument("term_a")
    p.add_argument("term_b")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("pair-equiv", help="decide equivalence of two supernatural pairs")
    p.add_argument("pair_a")
    p.add_argument("pair_b")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("aut-rank", help="rank of the automorphism group of a one-class term")
    p.add_argument("term")

    p = sub.add_parser("d-value", help="exact rank of a point")
    p.add_argument("term")
    p.add_argument("--point", required=True)

    p = sub.add_parser("act", help="apply the recoding generator for a prime")
    p.add_argument("term")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--point", required=True)

    p = sub.add_parser("algebra", help="matrix-unit embeddings and digraph products")
    alg = p.add_subparsers(dest="algebra_command", required=True)
    e = alg.add_parser("embed")
    e.add_argument("--from", dest="from_chain", required=True)
    e.add_argument("--to", dest="to_chain", required=True)
    e.add_argument("--unit", required=True)
    s = alg.add_parser("star")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    p = sub.add_parser("oracle", help="run the seeded verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--case", action="append", choices=suite_case_names())
    p.add_argument("--json", action="store_true")
    return ap


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "parse":
        term = _load_term(args.term)
        if args.normalize:
            term = normalize(term)
        if args.json:
            print(json.dumps(to_tree(term), sort_keys=True), file=out)
        else:
            print(format_term(term), file=out)
        return 0
    if cmd == "condense":
        sig = condense(_load_term(args.term))
        if args.json:
            print(json.dumps({"signature": format_signature(sig),
                              "blocks": len(sig.blocks)}, sort_keys=True), file=out)
        else:
            print(format_signature(sig), file=out)
        return 0
    if cmd == "classify":
        verdict = classify(_load_term(args.term_a), _load_term(args.term_b))
        if args.json:
            print(json.dumps(_verdict_json(verdict), sort_keys=True), file=out)
        else:
            _print_verdict(verdict, out)
        return 0 if verdict.isomorphic else 1
    if cmd == "pair-equiv":
        a, b = parse_pair(args.pair_a), parse_pair(args.pair_b)
        v = pair_equiv(a, b)
        if args.json:
            payload = {"equivalent": v.equivalent}
            if v.witness:
                payload["witness"] = [v.witness.a, v.witness.b]
            if v.reason:
                payload["reason"] = v.reason
            print(json.dumps(payload, sort_keys=True), file=out)
        elif v.equivalent:
            print(f"equivalent witness a={v.witness.a} b={v.witness.b}", file=out)
        else:
            print(f"not equivalent: {v.reason}", file=out)
        return 0 if v.equivalent else 1
    if cmd == "aut-rank":
        term = _load_term(args.term)
        sig = condense(term)
        if len(sig.blocks) != 1 or isinstance(sig.blocks[0], DenseBlock):
            raise CliError("aut-rank needs a term with a single non-dense class")
        print(aut_rank(sig.blocks[0].cls.pair), file=out)
        return 0
    if cmd == "d-value":
        term = _load_term(args.term)
        x = parse_point(args.point, term)
        print(d_value(x), file=out)
        return 0
    if cmd == "act":
        term = _load_term(args.term)
        plan = recoding_plan(term, args.prime)
        x = parse_point(args.point, term)
        y = act_fn(plan, x)
        print(format_point(y), file=out)
        dx, dy = d_value(x), d_value(y)
        if dx != 0:
            print(f"d ratio: {dy / dx}", file=out)
        else:
            print(f"d: {dx} -> {dy}", file=out)
        return 0
    if cmd == "algebra":
        if args.algebra_command == "embed":
            f = tuple(int(v) for v in args.from_chain.split(","))
            g = tuple(int(v) for v in args.to_chain.split(","))
            for u in embed(f, g, _parse_unit(args.unit)):
                print(u, file=out)
            return 0
        a, b = _parse_digraph(args.a), _parse_digraph(args.b)
        d = star_product(a, b)
        print(f"vertices: {d.n}", file=out)
        print("edges: " + " ".join(f"({i},{j})" for i, j in sorted(d.edges)), file=out)
        if is_total(d):
            print(f"total order on {d.n} points", file=out)
        return 0
    if cmd == "oracle":
        report = run_suite(seed=args.seed, cases=args.case)
        if args.json:
            print(json.dumps(report.summary(), sort_keys=True), file=out)
        else:
            print(report.render(), file=out)
        return 0 if report.passed else 1
    raise CliError(f"unknown command {cmd!r}")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep the contract
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (DslError, SpaceError, RegimeError, NotDivisibleError, CliError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
