"""Command-line front end: build, verify, classify and search induced multinets."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .analysis import classify_multinet, double_point_census
from .cyclo import FieldSpec, ParseError, make_field, parse_elem
from .documents import (
    DocumentError,
    ParsedDocument,
    classification_dict,
    dumps,
    histogram_pairs,
    induced_document,
    multinet_document,
    parse_document,
    vector_strings,
)
from .multinet import NotANetError, catalog, to_latin, verify
from .projgeo import DegenerateError, PlaneP3
from .qn import QnArrangement, build_qn
from .search import STRATEGIES, GoldenMismatch, SearchConfig, SearchResult, reproduce_example_46, run_search
from .section import PlaneInQnError, SectionConsistencyError, restrict

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PLANE_IN_QN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for planes of Q_n here
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _field_and_qn(args) -> tuple[FieldSpec, QnArrangement]:
    n = args.n
    N = args.N if args.N is not None else n
    if n < 1 or N < 1:
        raise UsageError("--n and --N must be positive")
    if N % n:
        raise UsageError(f"--n {n} does not divide --N {N}")
    f = make_field(N)
    return f, build_qn(n, f)


def parse_plane(text: str, f: FieldSpec) -> PlaneP3:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"--plane needs 4 comma-separated coefficients, got {len(parts)}")
    coeffs = []
    for i, p in enumerate(parts):
        try:
            coeffs.append(parse_elem(p, f))
        except ParseError as e:
            raise UsageError(f"coefficient {i} ({p.strip()!r}): {e}") from None
    try:
        return PlaneP3(coeffs)
    except DegenerateError:
        raise UsageError("all plane coefficients are zero") from None


def _read_document(path: str) -> ParsedDocument:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON ({e.msg}, line {e.lineno})", "/") from None
    return parse_document(data)


def _result_dict(r: SearchResult) -> dict:
    rep = r.report
    return {
        "plane": vector_strings(r.plane),
        "double_point_count": r.double_point_count,
        "verdict": rep.verdict,
        "d": rep.d,
        "fixed_components": rep.fixed_components,
        "line_histogram": histogram_pairs(rep.line_mult_histogram),
        "point_histogram": histogram_pairs(rep.point_mult_histogram),
    }


def cmd_build(args) -> dict:
    f, qn = _field_and_qn(args)
    h = parse_plane(args.plane, f)
    if args.pivot is not None and not 0 <= args.pivot <= 3:
        raise UsageError("--pivot must be 0, 1, 2 or 3")
    try:
        im = restrict(qn, h, args.pivot)
    except ValueError as e:
        if isinstance(e, PlaneInQnError):
            raise
        raise UsageError(str(e)) from None
    return induced_document(im)


def cmd_verify(args) -> dict:
    doc = _read_document(args.file)
    rep = verify(doc.multinet)
    out = {
        "command": "verify",
        "ok": rep.ok,
        "summary": rep.summary(),
        "classification": rep.classification,
        "k": rep.k,
        "d": rep.d,
        "condition_i": rep.condition_i_ok,
        "condition_ii": rep.condition_ii_ok,
        "identities": dict(rep.identity_checks),
        "instance_checks": dict(rep.instance_checks),
        "failures": list(rep.failures),
    }
    if doc.plane is not None and doc.n is not None:
        # recompute the section the document claims to come from
        qn = build_qn(doc.n, doc.field)
        try:
            im = restrict(qn, doc.plane, doc.pivot)
            out["provenance_ok"] = im.blocks == doc.multinet.blocks and im.d == doc.multinet.d
        except (PlaneInQnError, SectionConsistencyError, ValueError):
            out["provenance_ok"] = False
    return out


def cmd_classify(args) -> dict:
    doc = _read_document(args.file)
    rep = classify_multinet(doc.multinet, n=doc.n, fixed_components=len(doc.fixed_components))
    return {"command": "classify", **classification_dict(rep)}


def cmd_latin(args) -> dict:
    doc = _read_document(args.file)
    try:
        squares = to_latin(doc.multinet)
    except NotANetError as e:
        raise UsageError(str(e)) from None
    orth = all(a.orthogonal_to(b) for i, a in enumerate(squares) for b in squares[i + 1 :])
    return {
        "command": "latin",
        "order": doc.multinet.d,
        "squares": [sq.entries for sq in squares],
        "mutually_orthogonal": orth,
    }


def cmd_catalog(args) -> dict:
    f = make_field(args.N) if args.N is not None else None
    try:
        m = catalog(args.name, args.param, f)
    except ValueError as e:
        raise UsageError(str(e)) from None
    n = args.param if args.name == "monomial" else None
    name = args.name if args.param is None else f"{args.name} {args.param}"
    return multinet_document(m, kind="catalog", n=n, name=name)


def cmd_census(args) -> dict:
    f, qn = _field_and_qn(args)
    h = parse_plane(args.plane, f)
    if h in qn:
        raise PlaneInQnError(f"{h} is a plane of Q_{qn.n}")
    rep = double_point_census(h, qn)
    return {
        "command": "census",
        "n": qn.n,
        "N": f.N,
        "plane": vector_strings(h),
        "count": len(rep.points),
        "double_points": [vector_strings(p) for p in rep.points],
        "precondition_ok": rep.precondition_ok,
        "agrees_with_base_locus": rep.agrees,
        "notes": list(rep.notes),
    }


def cmd_search(args) -> dict | list[dict]:
    f, qn = _field_and_qn(args)
    planes: list[PlaneP3] = []
    if args.strategy == "file-list":
        if not args.planes_file:
            raise UsageError("--strategy file-list needs --planes-file")
        try:
            with open(args.planes_file, encoding="utf-8") as fh:
                rows = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        except OSError as e:
            raise UsageError(f"cannot read {args.planes_file}: {e.strerror}") from None
        planes = [parse_plane(r, f) for r in rows]
    try:
        cfg = SearchConfig(
            n=qn.n,
            strategy=args.strategy,
            require_light=args.require_light,
            forbid_fixed=args.forbid_fixed,
            forbid_mult_n_points=args.forbid_mult_n,
            budget=args.budget,
            top=args.top,
            seed=args.seed,
            planes=planes,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    run = run_search(cfg, qn)
    summary = {
        "command": "search",
        "n": qn.n,
        "N": f.N,
        "strategy": cfg.strategy,
        "examined": run.examined,
        "exhausted": run.exhausted,
        "max_count": run.max_count,
        "notes": run.notes,
    }
    results = [_result_dict(r) for r in run.results]
    if args.json_lines:
        return results + [summary]
    return {**summary, "results": results}


def cmd_reproduce_46(args) -> dict:
    qn = build_qn(8, make_field(8))
    r = reproduce_example_46(qn)
    return {"command": "reproduce-46", "golden": "pass", **_result_dict(r)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multinets", description="Exact multinets from plane sections of the Q_n net.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def qn_flags(sp):
        sp.add_argument("--n", type=int, required=True, help="order of the roots of unity in Q_n")
        sp.add_argument("--N", type=int, default=None, help="conductor of the coefficient field (default: n)")

    b = sub.add_parser("build", help="section Q_n by a plane and emit the induced multinet document")
    qn_flags(b)
    b.add_argument("--plane", required=True, help='coefficients "c0,c1,c2,c3" in the expression grammar')
    b.add_argument("--pivot", type=int, default=None, help="coordinate to eliminate (default: first nonzero)")
    b.set_defaults(func=cmd_build)

    for name, func, text in (
        ("verify", cmd_verify, "check axioms and counting identities of a document"),
        ("classify", cmd_classify, "classify a document as net, light or heavy"),
        ("latin", cmd_latin, "Latin squares of a 3- or 4-net document"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("file", nargs="?", default="-", help="document path, or - for standard input")
        sp.set_defaults(func=func)

    c = sub.add_parser("catalog", help="emit a catalog multinet (local, monomial, hasse)")
    c.add_argument("name", choices=("local", "monomial", "hasse"))
    c.add_argument("param", type=int, nargs="?", default=None)
    c.add_argument("--N", type=int, default=None)
    c.set_defaults(func=cmd_catalog)

    ce = sub.add_parser("census", help="double points of the section by a plane")
    qn_flags(ce)
    ce.add_argument("--plane", required=True)
    ce.set_defaults(func=cmd_census)

    s = sub.add_parser("search", help="search planes with many double points")
    qn_flags(s)
    s.add_argument("--strategy", choices=STRATEGIES, default="unit-triples")
    s.add_argument("--budget", type=int, default=1_000_000)
    s.add_argument("--top", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--planes-file", default=None, help="one plane per line for --strategy file-list")
    s.add_argument("--require-light", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--forbid-fixed", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--forbid-mult-n", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--json-lines", action="store_true", help="one compact JSON object per line")
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("reproduce-46", help="rebuild and check the n = 8 example with eight double points")
    r.set_defaults(func=cmd_reproduce_46)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except PlaneInQnError as e:
        print(f"rejected plane: {e}", file=sys.stderr)
        return EXIT_PLANE_IN_QN
    except DocumentError as e:
        print(f"schema error at {e.path}: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GoldenMismatch as e:
        print(f"golden check failed: {e}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(out, list):
        sys.stdout.write("".join(dumps(o, lines=True) + "\n" for o in out))
    elif getattr(args, "json_lines", False):
        sys.stdout.write(dumps(out, lines=True) + "\n")
    else:
        sys.stdout.write(dumps(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
