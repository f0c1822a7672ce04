"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 a requested check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import oracles
from .diagram import component_count, link_of
from .gamma import gamma_graph
from .invariants import (
    bracket_of_pair,
    chromatic,
    col_count_of_pair,
    is_trivial_certificate,
    tutte,
)
from .positivity import DEFAULT_TOL, PSD, InvariantSpec, gram_report, roots_for_Q
from .thompson import (
    TreePair,
    WordParseError,
    iter_reduced_pairs,
    parse_word,
    random_element,
    reduce_pair,
    word_to_pair,
    word_to_text,
)

FINDEX_CAP = 6


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, payload: Any):
        super().__init__("check failed")
        self.payload = payload


# --- word input ------------------------------------------------------------------------

_GROUP = re.compile(r"\(([^()]*)\)\s*(?:\^\s*(-?\d+))?")


def expand_powers(text: str) -> str:
    """Rewrite ``( ... )^k`` groups, innermost first, into plain words."""
    while "(" in text or ")" in text:
        m = _GROUP.search(text)
        if m is None:
            raise WordParseError("unbalanced parentheses", text.find("(") if "(" in text else text.find(")"))
        inner = parse_word(m.group(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise WordParseError("exponent must be nonzero", m.start(2))
        if k < 0:
            inner = [(i, -e) for i, e in reversed(inner)]
        body = word_to_text(inner * abs(k))
        text = text[: m.start()] + " " + body + " " + text[m.end():]
    return text


def read_word_file(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        lines = [line.split("#", 1)[0].strip() for line in fh]
    return [line for line in lines if line]


def collect_words(args) -> list[str]:
    words = list(args.words_positional or [])
    words += args.word or []
    if args.words:
        words += read_word_file(args.words)
    return words


def to_pair(text: str, reduced: bool = True) -> TreePair:
    word = parse_word(expand_powers(text))
    p = word_to_pair(word)
    return reduce_pair(p) if reduced else p


# --- output ----------------------------------------------------------------------------


def _flatten(value: Any) -> list[Any]:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Fraction):
        return [str(value)]
    return [value]


def render(doc: Any, rows: list[list[Any]] | None, header: list[str] | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    for row in rows or []:
        flat = []
        for v in row:
            flat += _flatten(v)
        writer.writerow(flat)
    return buf.getvalue()


def _jsonable(v: Any) -> Any:
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, Fraction):
        return str(v)
    return v


# --- subcommands -----------------------------------------------------------------------


def cmd_parse(args) -> tuple[Any, list, list]:
    out, rows = [], []
    for text in collect_words(args):
        word = parse_word(expand_powers(text))
        p = to_pair(text, not args.unreduced)
        out.append({"word": [list(t) for t in word], "pair": p.to_json()})
        rows.append([text, p.to_json()["plus"], p.to_json()["minus"], p.leaves])
    return _single(out), rows, ["word", "plus", "minus", "leaves"]


def cmd_graph(args):
    out, rows = [], []
    for text in collect_words(args):
        g = gamma_graph(to_pair(text, not args.unreduced))
        out.append(g.to_json())
        rows += [[text, u, v, s] for u, v, s in g.edges]
    return _single(out), rows, ["word", "u", "v", "side"]


def cmd_link(args):
    out, rows = [], []
    for text in collect_words(args):
        d = link_of(to_pair(text, not args.unreduced), reduce=False)
        doc = d.to_json()
        doc["components"] = component_count(d)
        out.append(doc)
        rows += [[text, i, c.kind, *c.arcs] for i, c in enumerate(d.crossings)]
    return _single(out), rows, ["word", "crossing", "type", "sw", "se", "ne", "nw"]


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for --kind {args.kind}")


def _number(text: str | None):
    if text is None:
        return None
    try:
        return Fraction(text)
    except ValueError:
        return complex(text.replace("i", "j"))


def cmd_invariant(args):
    out, rows = [], []
    for text in collect_words(args):
        p = to_pair(text, not args.unreduced)
        g = gamma_graph(p)
        if args.normalized:
            value = _spec(args).evaluate(p, reduce=False)
            out.append(_jsonable(value))
            rows.append([text, value])
            continue
        if args.kind == "chromatic":
            _need(args, "q")
            doc: Any = chromatic(g, args.q)
            rows.append([text, doc])
        elif args.kind in ("tutte", "tutte_potts"):
            poly = tutte(g)
            x, y = _number(args.x), _number(args.y)
            if args.kind == "tutte_potts":
                _need(args, "q", "k")
                spec = InvariantSpec("tutte_potts", q=args.q, k=args.k)
                x, y = spec.point()
            if x is not None and y is not None:
                doc = _jsonable(poly(x, y))
                rows.append([text, poly(x, y)])
            else:
                doc = poly.to_json()
                rows += [[text, i, j, c] for i, j, c in doc["terms"]]
        elif args.kind == "bracket":
            poly = bracket_of_pair(p)
            if args.q is not None:
                a = roots_for_Q(args.q)[args.root - 1]
                doc = _jsonable(complex(poly(a)))
                rows.append([text, complex(poly(a))])
            else:
                doc = poly.to_json()
                rows += [[text, k, c] for k, c in poly.items()]
        elif args.kind == "colourings":
            _need(args, "q")
            if args.q < 1 or args.q % 2 == 0:
                raise UsageError("colourings need an odd positive --q")
            doc = col_count_of_pair(p, args.q)
            rows.append([text, doc])
        else:
            raise UsageError(f"unknown kind {args.kind!r}")
        out.append(doc)
    header = {"tutte": ["word", "i", "j", "coeff"], "bracket": ["word", "exponent", "coeff"]}
    if args.normalized or args.kind not in header or (args.kind == "tutte" and args.x) or (
        args.kind == "bracket" and args.q is not None
    ):
        head = ["word", "value"]
    else:
        head = header[args.kind]
    return _single(out), rows, head


def _spec(args) -> InvariantSpec:
    kind = {"tutte": "tutte_potts"}.get(args.kind, args.kind)
    try:
        if kind == "tutte_potts" and args.x is not None:
            return InvariantSpec(kind, x=_number(args.x), y=_number(args.y))
        return InvariantSpec(
            kind, q=args.q if args.q is not None else 2, k=args.k, root=args.root
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_gram(args):
    texts = collect_words(args)
    if texts:
        elements = [to_pair(t) for t in texts]
    elif args.random:
        rng = random.Random(args.seed)
        elements = [random_element(args.max_leaves or 4, rng) for _ in range(args.random)]
    else:
        raise UsageError("gram needs --word, --words or --random")
    report = gram_report(elements, _spec(args), args.tol, args.seed)
    doc = report.to_json()
    if not (args.check_psd or args.expect_psd):
        for key in ("verdict", "min_eigenvalue", "witness"):
            doc.pop(key)
    rows = [[i, *(complex(v) for v in row)] for i, row in enumerate(report.matrix)]
    header = ["row"] + [f"{j}_{part}" for j in range(len(rows)) for part in ("re", "im")]
    if args.expect_psd and report.verdict != PSD:
        raise CheckFailed((doc, rows, header))
    return doc, rows, header


def cmd_oracle(args):
    out, rows = [], []
    ok = True
    for text in collect_words(args):
        p = to_pair(text, not args.unreduced)
        g = gamma_graph(p)
        kind = args.kind
        if kind == "chromatic":
            _need(args, "q")
            v = oracles.chromatic_vector(p.plus, args.q)
            w = oracles.chromatic_vector(p.minus, args.q)
            got, want = int(v @ w), chromatic(g, args.q)
            agree = got == want
        elif kind in ("potts", "tutte_potts"):
            _need(args, "q", "k")
            got = oracles.potts_partition(g, args.q, args.k)
            want = oracles.potts_from_tutte(g, args.q, args.k)
            agree = abs(got - want) <= args.tol * max(1.0, abs(got))
        elif kind == "bracket":
            _need(args, "q")
            a = roots_for_Q(args.q)[args.root - 1]
            got = oracles.kauffman_partition(g, args.q, a)
            want = complex(bracket_of_pair(p)(a))
            agree = abs(got - want) <= args.tol * max(1.0, abs(want))
        elif kind == "colourings":
            _need(args, "q")
            got = oracles.colouring_partition(link_of(p, reduce=False), args.q)
            want = col_count_of_pair(p, args.q)
            agree = got == want
        elif kind == "semilink":
            _need(args, "q")
            got = oracles.fox_pairing(p.plus, p.minus, args.q)
            want = col_count_of_pair(p, args.q)
            agree = got == want
        elif kind == "limit":
            _need(args, "q")
            table = oracles.chromatic_limit_check(g, args.q, [-5.0, -10.0, -20.0, -30.0])
            residuals = [r["residual"] for r in table]
            got, want = residuals[-1], 0.0
            agree = all(a >= b for a, b in zip(residuals, residuals[1:])) and got <= 1e-6 * max(
                1, table[0]["chromatic"]
            )
        else:
            raise UsageError(f"unknown oracle kind {kind!r}")
        ok &= agree
        out.append({"word": text, "oracle": _jsonable(got), "invariant": _jsonable(want), "agree": agree})
        rows.append([text, got, want, agree])
    doc = _single(out)
    if not ok:
        raise CheckFailed((doc, rows, ["word", "oracle", "invariant", "agree"]))
    return doc, rows, ["word", "oracle", "invariant", "agree"]


def findex_scan(max_leaves: int) -> dict:
    """Bracket certificate ``+-A^(3m) d^(k-1)`` for every reduced pair up to a leaf count."""
    if max_leaves > FINDEX_CAP:
        raise ValueError(f"max_leaves {max_leaves} exceeds cap {FINDEX_CAP}")
    checked = 0
    failures = []
    for p in iter_reduced_pairs(max_leaves, cap=FINDEX_CAP):
        d = link_of(p, reduce=False)
        poly = bracket_of_pair(p)
        k = component_count(d)
        ok, _ = is_trivial_certificate(poly, k)
        checked += 1
        if not ok:
            failures.append(
                {"pair": p.to_json(), "bracket": poly.to_json(), "components": k, "crossings": len(d.crossings)}
            )
    return {"max_leaves": max_leaves, "checked": checked, "nontrivial": len(failures), "failures": failures}


def cmd_findex(args):
    try:
        report = findex_scan(args.max_leaves or 4)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [[f["pair"]["plus"], f["pair"]["minus"], f["components"], json.dumps(f["bracket"]["terms"])] for f in report["failures"]]
    return report, rows, ["plus", "minus", "components", "bracket"]


def _single(items: list) -> Any:
    return items[0] if len(items) == 1 else items


# --- argument parsing ------------------------------------------------------------------

COMMANDS = {
    "parse": cmd_parse,
    "graph": cmd_graph,
    "link": cmd_link,
    "invariant": cmd_invariant,
    "gram": cmd_gram,
    "oracle": cmd_oracle,
    "findex": cmd_findex,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thompsonlinks", description="Thompson group elements, links and invariants.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("words_positional", nargs="*", metavar="WORD")
        p.add_argument("--word", action="append", help="a word such as 'x1 x0^-1'; repeatable")
        p.add_argument("--words", metavar="FILE", help="one word per line, '#' comments")
        p.add_argument("--kind")
        p.add_argument("--q", type=int)
        p.add_argument("--k", type=float, help="Potts coupling")
        p.add_argument("--root", type=int, default=1, choices=(1, 2, 3, 4))
        p.add_argument("--x")
        p.add_argument("--y")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--check-psd", action="store_true")
        p.add_argument("--expect-psd", action="store_true")
        p.add_argument("--max-leaves", type=int)
        p.add_argument("--unreduced", action="store_true")
        p.add_argument("--normalized", action="store_true", help="print the normalized function on F")
        p.add_argument("--random", type=int, metavar="R", help="gram: R random elements")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("invariant", "gram", "oracle") and not args.kind:
            raise UsageError(f"{args.command} needs --kind")
        if args.command not in ("gram", "findex") and not collect_words(args):
            raise UsageError(f"{args.command} needs at least one word")
        doc, rows, header = COMMANDS[args.command](args)
        stdout.write(render(doc, rows, header, args.format))
        return 0
    except CheckFailed as exc:
        doc, rows, header = exc.payload
        stdout.write(render(doc, rows, header, args.format))
        stderr.write("check failed\n")
        return 2
    except WordParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return 1
    except (UsageError, ValueError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
