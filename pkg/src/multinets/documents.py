"""Canonical JSON documents for multinets and reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Sequence

import jsonschema

from .analysis import ClassificationReport, classify_multinet
from .cyclo import FieldSpec, ParseError, format_elem, make_field, parse_elem
from .multinet import Multinet, VerificationReport, verify
from .projgeo import DegenerateError, LineP2, PlaneP3, ProjVector
from .section import InducedMultinet

SCHEMA_VERSION = "1"

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "ParsedDocument",
    "load_schema",
    "dumps",
    "vector_strings",
    "histogram_pairs",
    "verification_dict",
    "classification_dict",
    "multinet_document",
    "induced_document",
    "parse_document",
    "reserialize",
]


class DocumentError(ValueError):
    """A document failed schema or content validation; ``path`` locates the first problem."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@lru_cache(maxsize=None)
def load_schema() -> dict:
    text = resources.files("multinets").joinpath("schema/multinet_document.schema.json").read_text()
    return json.loads(text)


def dumps(obj: Any, lines: bool = False) -> str:
    if lines:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def vector_strings(v: ProjVector | Sequence) -> list[str]:
    return [format_elem(c) for c in v]


def histogram_pairs(h: dict[int, int]) -> list[list[int]]:
    return [[int(k), int(v)] for k, v in sorted(h.items())]


def verification_dict(rep: VerificationReport) -> dict:
    return {
        "ok": rep.ok,
        "summary": rep.summary(),
        "k": rep.k,
        "d": rep.d,
        "classification": rep.classification,
        "condition_i": rep.condition_i_ok,
        "condition_ii": rep.condition_ii_ok,
        "identities": dict(rep.identity_checks),
        "instance_checks": dict(rep.instance_checks),
        "num_points": rep.num_points,
        "point_histogram": histogram_pairs(rep.point_histogram),
        "line_histogram": histogram_pairs(rep.line_histogram),
        "failures": list(rep.failures),
    }


def classification_dict(rep: ClassificationReport) -> dict:
    return {
        "verdict": rep.verdict,
        "n": rep.n,
        "k": rep.k,
        "d": rep.d,
        "fixed_components": rep.fixed_components,
        "line_histogram": histogram_pairs(rep.line_mult_histogram),
        "point_histogram": histogram_pairs(rep.point_mult_histogram),
        "double_points": rep.count_points(2),
        "profile_ok": rep.profile_ok,
        "validator_enabled": rep.validator_enabled,
        "violations": list(rep.violations),
        "notes": list(rep.notes),
    }


def _blocks_json(blocks) -> list[list[dict]]:
    out = []
    for blk in blocks:
        entries = sorted(blk, key=lambda lm: lm[0].sort_key())
        out.append([{"line": vector_strings(l), "mult": int(m)} for l, m in entries])
    return out


def _base_points(m: Multinet) -> list[dict]:
    # largest block sum stands in when condition (i) fails, so broken inputs still serialize
    c = m.census
    pts = [(c.point_of(r), int(c.block_mult[r].max())) for r in c.x_rows]
    pts.sort(key=lambda pm: pm[0].sort_key())
    return [{"point": vector_strings(p), "mult": k} for p, k in pts]


def multinet_document(
    m: Multinet,
    *,
    kind: str = "multinet",
    n: int | None = None,
    name: str | None = None,
    pivot: int | None = None,
    plane: PlaneP3 | None = None,
    raw_blocks=None,
    fixed_components: Sequence[LineP2] = (),
) -> dict:
    rep = verify(m)
    cls = classify_multinet(m, n=n, fixed_components=len(fixed_components), report=rep)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "name": name,
        "N": m.field.N,
        "n": n,
        "k": m.k,
        "d": m.d,
        "pivot": pivot,
        "plane": vector_strings(plane) if plane is not None else None,
        "blocks": _blocks_json(m.blocks),
        "raw_blocks": _blocks_json(raw_blocks) if raw_blocks is not None else None,
        "fixed_components": [vector_strings(l) for l in sorted(fixed_components, key=lambda l: l.sort_key())],
        "base_points": _base_points(m),
        "reports": {"verification": verification_dict(rep), "classification": classification_dict(cls)},
    }


def induced_document(im: InducedMultinet) -> dict:
    return multinet_document(
        im.multinet,
        kind="induced",
        n=im.n,
        pivot=im.provenance.pivot,
        plane=im.provenance.coeffs,
        raw_blocks=im.raw_blocks,
        fixed_components=im.fixed_components,
    )


@dataclass
class ParsedDocument:
    multinet: Multinet
    kind: str
    n: int | None
    name: str | None = None
    pivot: int | None = None
    plane: PlaneP3 | None = None
    raw_blocks: tuple | None = None
    fixed_components: list[LineP2] = field(default_factory=list)

    @property
    def field(self) -> FieldSpec:
        return self.multinet.field


def _path(parts: Sequence) -> str:
    return "/" + "/".join(str(p) for p in parts)


def _check_schema(doc: Any) -> None:
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = list(validator.iter_errors(doc))
    if errors:
        first = min(errors, key=lambda e: (tuple(str(p) for p in e.absolute_path), e.message))
        raise DocumentError(first.message, _path(first.absolute_path))


def _expr(text: str, f: FieldSpec, where: list):
    try:
        return parse_elem(text, f)
    except ParseError as e:
        raise DocumentError(f"cannot parse {text!r} at position {e.position}: {e}", _path(where)) from None


def _vector(cls, items: list[str], f: FieldSpec, where: list):
    vals = [_expr(t, f, where + [i]) for i, t in enumerate(items)]
    try:
        return cls(vals)
    except DegenerateError:
        raise DocumentError("all coordinates are zero", _path(where)) from None


def _blocks(raw: list, f: FieldSpec, where: list) -> tuple:
    out = []
    for b, blk in enumerate(raw):
        entries = []
        for e, ent in enumerate(blk):
            line = _vector(LineP2, ent["line"], f, where + [b, e, "line"])
            entries.append((line, int(ent["mult"])))
        out.append(tuple(sorted(entries, key=lambda lm: lm[0].sort_key())))
    return tuple(out)


def parse_document(doc: Any) -> ParsedDocument:
    _check_schema(doc)
    N = doc["N"]
    n = doc["n"]
    if n is not None and N % n:
        raise DocumentError(f"n = {n} does not divide N = {N}", "/n")
    f = make_field(N)
    blocks = _blocks(doc["blocks"], f, ["blocks"])
    if len(blocks) != doc["k"]:
        raise DocumentError(f"k = {doc['k']} but {len(blocks)} blocks are listed", "/k")
    raw = _blocks(doc["raw_blocks"], f, ["raw_blocks"]) if doc.get("raw_blocks") is not None else None
    fixed = [_vector(LineP2, l, f, ["fixed_components", i]) for i, l in enumerate(doc["fixed_components"])]
    plane = _vector(PlaneP3, doc["plane"], f, ["plane"]) if doc.get("plane") is not None else None
    owner: dict[LineP2, int] = {}
    for b, blk in enumerate(blocks):
        for e, (line, _) in enumerate(blk):
            if owner.setdefault(line, b) != b or sum(1 for l, _ in blk if l == line) > 1:
                raise DocumentError(f"line {line} is listed more than once", _path(["blocks", b]))
    m = Multinet(f, doc["d"], blocks, name=doc.get("name"))
    return ParsedDocument(
        multinet=m,
        kind=doc["kind"],
        n=n,
        name=doc.get("name"),
        pivot=doc.get("pivot"),
        plane=plane,
        raw_blocks=raw,
        fixed_components=fixed,
    )


def reserialize(p: ParsedDocument) -> dict:
    return multinet_document(
        p.multinet,
        kind=p.kind,
        n=p.n,
        name=p.name,
        pivot=p.pivot,
        plane=p.plane,
        raw_blocks=p.raw_blocks,
        fixed_components=p.fixed_components,
    )
