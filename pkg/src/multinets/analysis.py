"""Classification of induced multinets and the property checks built on it."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .cyclo import FieldSpec, make_field
from .multinet import HEAVY, LIGHT, NET, Multinet, VerificationReport, verify
from .projgeo import PlaneP3, ProjPoint, _normalize, incident, meet
from .qn import QnArrangement, position_report, predict_class, unit_points_on
from .section import InducedMultinet, restrict

__all__ = [
    "ClassificationReport",
    "classify_multinet",
    "classify_induced",
    "compare_prediction",
    "predicted_vs_actual",
    "CensusReport",
    "double_point_census",
    "PencilReport",
    "half_block_pencil_check",
    "uniqueness_check",
    "NondegeneracyReport",
    "nondegeneracy_check",
    "RawPointProfile",
    "raw_point_profile",
    "fixed_component_violations",
]


@dataclass
class ClassificationReport:
    n: int | None
    d: int
    k: int
    line_mult_histogram: dict[int, int]
    point_mult_histogram: dict[int, int]
    fixed_components: int
    verdict: str | None
    profile_ok: bool
    violations: list[str] = field(default_factory=list)
    validator_enabled: bool = True
    notes: list[str] = field(default_factory=list)
    verification: VerificationReport | None = field(default=None, repr=False)

    def count_lines(self, m: int) -> int:
        return self.line_mult_histogram.get(m, 0)

    def count_points(self, m: int) -> int:
        return self.point_mult_histogram.get(m, 0)


def _profile_violations(n: int, lines: Counter, points: Counter, fixed: int, verdict: str | None) -> list[str]:
    v: list[str] = []
    if set(lines) - {1, 2, n}:
        v.append(f"line multiplicities {sorted(lines)} not within {{1, 2, n}}")
    if lines[n] not in (0, 1, 3):
        v.append(f"{lines[n]} lines of multiplicity n; expected 0, 1 or 3")
    cap = 3 if n % 2 == 0 else 2
    if lines[2] > cap:
        v.append(f"{lines[2]} lines of multiplicity 2 exceed {cap} for n = {n}")
    if lines[n] and lines[2]:
        v.append("lines of multiplicity n and 2 together")
    allowed = {1, 2, n - 2, n - 1, n}
    if set(points) - allowed:
        v.append(f"point multiplicities {sorted(points)} not within {{1, 2, n-2, n-1, n}}")
    if fixed > 2:
        v.append(f"{fixed} fixed components")
    if verdict == HEAVY and fixed:
        v.append("heavy multinet with fixed components")
    if verdict == LIGHT:
        big = {m: c for m, c in points.items() if m > 1}
        if fixed == 0:
            if set(big) - {2, n}:
                v.append(f"light without fixed components has multiplicities {sorted(big)}")
            if points[n] > 2:
                v.append(f"{points[n]} points of multiplicity n; at most 2")
            if points[n] and points[2]:
                v.append("points of multiplicity n and 2 together without a fixed component")
        else:
            special = n - fixed
            if set(big) - {special}:
                v.append(
                    f"light with {fixed} fixed component(s) has multiplicities {sorted(big)}; "
                    f"only {special} allowed"
                )
            if points[special] > 1:
                v.append(f"{points[special]} points of multiplicity {special}; at most 1")
    return v


def classify_multinet(
    m: Multinet, n: int | None = None, fixed_components: int = 0, report: VerificationReport | None = None
) -> ClassificationReport:
    rep = report or verify(m)
    lines = Counter(m.line_multiplicities())
    points = Counter({k: v for k, v in rep.point_histogram.items()})
    notes: list[str] = []
    enabled = n is not None and n > 3
    violations: list[str] = []
    if n is None:
        notes.append("profile validator needs n; skipped")
    elif not enabled:
        notes.append(f"profile validator disabled for n = {n} <= 3 (multiplicity classes collide)")
    else:
        violations = _profile_violations(n, lines, points, fixed_components, rep.classification)
    if rep.classification is None:
        violations.append("multinet axioms fail: " + "; ".join(rep.failures[:3]))
    return ClassificationReport(
        n=n,
        d=m.d,
        k=m.k,
        line_mult_histogram=dict(sorted(lines.items())),
        point_mult_histogram=dict(sorted(points.items())),
        fixed_components=fixed_components,
        verdict=rep.classification,
        profile_ok=not violations,
        violations=violations,
        validator_enabled=enabled,
        notes=notes,
        verification=rep,
    )


def classify_induced(im: InducedMultinet) -> ClassificationReport:
    return classify_multinet(im.multinet, n=im.n, fixed_components=len(im.fixed_components))


def compare_prediction(h: PlaneP3, qn: QnArrangement) -> dict[str, tuple]:
    """Mismatches between the lattice prediction and the computed section (empty if none)."""
    pred = predict_class(position_report(h, qn))
    im = restrict(qn, h)
    rep = classify_induced(im)
    diff: dict[str, tuple] = {}

    def check(name, a, b):
        if a != b:
            diff[name] = (a, b)

    check("d", pred.d, im.d)
    check("fixed_components", pred.fixed_components, len(im.fixed_components))
    check("line_histogram", pred.line_histogram, rep.line_mult_histogram)
    check("verdict", pred.verdict, rep.verdict)
    if pred.point_histogram is not None:
        actual = {m: c for m, c in rep.point_mult_histogram.items() if m > 1}
        check("point_histogram", pred.point_histogram, actual)
    return diff


def predicted_vs_actual(h: PlaneP3, qn: QnArrangement) -> bool:
    return not compare_prediction(h, qn)


# ---- double points ---------------------------------------------------------------

@dataclass
class CensusReport:
    points: list[ProjPoint]
    precondition_ok: bool
    locus_points: list[ProjPoint] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def agrees(self) -> bool | None:
        if self.locus_points is None:
            return None
        return set(self.points) == set(self.locus_points)

    def __len__(self) -> int:
        return len(self.points)


def double_point_census(h: PlaneP3, qn: QnArrangement, check_locus: bool = True) -> CensusReport:
    """Unit points on h, cross-checked against the multiplicity-2 base points."""
    n = qn.n
    exps = unit_points_on(h, qn)
    pts = sorted((qn.unit_points[a * n * n + b * n + c] for a, b, c in exps), key=lambda p: p.sort_key())
    notes: list[str] = []
    ok = True
    if h in qn:
        return CensusReport(pts, False, None, ["plane belongs to Q_n"])
    if n <= 3:
        notes.append(f"n = {n} <= 3: double points are not separated from other multiplicity classes")
    coords_on = [k for k in range(4) if not h[k]]
    if coords_on:
        ok = False
        notes.append(f"plane contains coordinate point(s) {coords_on}")
    im = restrict(qn, h)
    if im.fixed_components:
        ok = False
        notes.append(f"{len(im.fixed_components)} fixed component(s)")
    rep = verify(im.multinet)
    if rep.classification != LIGHT:
        ok = False
        notes.append(f"induced multinet is {rep.classification}, not light")
    locus = None
    if check_locus and ok:
        c = im.multinet.census
        locus = []
        for r in c.x_rows:
            if int(c.block_mult[r].max()) == 2:
                locus.append(im.provenance.lift(c.point_of(r)))
        locus.sort(key=lambda p: p.sort_key())
    return CensusReport(pts, ok, locus, notes)


# ---- pencils inside half-blocks ------------------------------------------------------

@dataclass
class PencilReport:
    ok: bool
    precondition_ok: bool
    base_points: dict[tuple[int, int], ProjPoint | None] = field(default_factory=dict)
    distinct: bool = False
    notes: list[str] = field(default_factory=list)


def half_block_pencil_check(im: InducedMultinet) -> PencilReport:
    """Each half-block's lines are concurrent at the image of its base line."""
    rep = PencilReport(ok=False, precondition_ok=True)
    if im.fixed_components:
        rep.precondition_ok = False
        rep.notes.append("fixed components present")
    if any(m > 1 for _, m in (lm for b in im.raw_blocks for lm in b)):
        rep.precondition_ok = False
        rep.notes.append("induced multinet is heavy")
    if not rep.precondition_ok:
        return rep
    sec = im.provenance
    c = sec.coeffs
    f = im.field
    ok = True
    for block in range(3):
        for half in range(2):
            lines = im.half_block_images(block, half)
            p = im.qn.half_block(block, half)[0]
            i, j = p.pair
            k, l = (q for q in range(4) if q not in (i, j))
            coords = [f.zero()] * 4
            coords[k] = -c[l]
            coords[l] = c[k]
            expected = sec.project(ProjPoint._from_normalized(_normalize(coords)))
            if len(set(lines)) < 2:
                ok = False
                rep.notes.append(f"half-block {p.pair} collapses to one line")
                rep.base_points[p.pair] = None
                continue
            center = meet(lines[0], lines[1])
            if not all(incident(line, center) for line in lines):
                ok = False
                rep.notes.append(f"half-block {p.pair} is not concurrent")
            if center != expected:
                ok = False
                rep.notes.append(f"half-block {p.pair} center {center} differs from base image {expected}")
            rep.base_points[p.pair] = center
    rep.ok = ok
    centers = [p for p in rep.base_points.values() if p is not None]
    rep.distinct = len(set(centers)) == len(centers) == 6
    return rep


# ---- roots of unity ------------------------------------------------------------------

def uniqueness_check(n: int, field: FieldSpec | None = None) -> bool:
    """(a, b) -> (1 - z^a)/(1 - z^b) is injective on a != b in 1..n-1."""
    if n < 1:
        raise ValueError("n must be positive")
    f = field or make_field(n)
    one = f.one()
    num = {a: one - f.root(n, a) for a in range(1, n)}
    inv_den = {b: 1 / (one - f.root(n, b)) for b in range(1, n)}
    seen = set()
    for a in range(1, n):
        for b in range(1, n):
            if a == b:
                continue
            v = num[a] * inv_den[b]
            if v in seen:
                return False
            seen.add(v)
    return True


@dataclass
class NondegeneracyReport:
    ok: bool
    precondition_ok: bool
    checked_points: int = 0
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def nondegeneracy_check(h: PlaneP3, qn: QnArrangement) -> NondegeneracyReport:
    """Each double point gives A z^a + B z^b + C z^c = 1 with no vanishing proper sub-sum."""
    zeros = [k for k in range(4) if not h[k]]
    if zeros:
        return NondegeneracyReport(
            False, False, notes=[f"coefficient(s) {zeros} vanish: the plane has a point of multiplicity n"]
        )
    n = qn.n
    s = -1 / h[3]
    A, B, C = (h[i] * s for i in range(3))
    rep = NondegeneracyReport(ok=True, precondition_ok=True)
    for a, b, c in unit_points_on(h, qn):
        terms = [A * qn.zeta(a), B * qn.zeta(b), C * qn.zeta(c)]
        if terms[0] + terms[1] + terms[2] != 1:
            rep.ok = False
            rep.notes.append(f"relation fails at exponents {(a, b, c)}")
        for r in (1, 2):
            for sub in combinations(range(3), r):
                if sum((terms[i] for i in sub[1:]), terms[sub[0]]).is_zero():
                    rep.ok = False
                    rep.notes.append(f"sub-sum {sub} vanishes at exponents {(a, b, c)}")
        rep.checked_points += 1
    return rep


# ---- raw sections and fixed components ---------------------------------------------------

@dataclass
class RawPointProfile:
    """Multiple points of the section before cancellation.

    ``points`` maps census rows to per-block line counts; ``on_fixed`` lists,
    per fixed component, the rows lying on it.
    """

    im: InducedMultinet
    counts: dict[int, tuple[int, ...]]
    on_fixed: list[list[int]]

    def multiplicity(self, row: int) -> int:
        return min(self.counts[row])

    def rows_with(self, m: int) -> list[int]:
        return [r for r, c in self.counts.items() if min(c) == m]


def raw_point_profile(im: InducedMultinet) -> RawPointProfile:
    raw = im.raw_multinet
    c = raw.census
    counts = {int(r): tuple(int(x) for x in c.block_mult[r]) for r in c.x_rows}
    fixed_entries = [
        [e for e, (_, line, _) in enumerate(c.entries) if line == fl] for fl in im.fixed_components
    ]
    on_fixed = [[int(r) for r in c.x_rows if any(c.points[r, e] for e in ents)] for ents in fixed_entries]
    return RawPointProfile(im, counts, on_fixed)


def fixed_component_violations(im: InducedMultinet) -> list[str]:
    """Check the fixed-component dichotomy and the point structure on fixed components."""
    n = im.n
    out: list[str] = []
    prof = raw_point_profile(im)
    c = im.raw_multinet.census
    fixed_rows = {r for rows in prof.on_fixed for r in rows}
    for r, cnt in prof.counts.items():
        if r not in fixed_rows and len(set(cnt)) != 1:
            out.append(f"raw point {c.point_of(r)} off fixed components has block counts {cnt}")
    nfixed = len(im.fixed_components)
    if nfixed > 2:
        out.append(f"{nfixed} fixed components")
    if n <= 3:
        return out
    raw_lines_simple = all(m == 1 for b in im.raw_blocks for _, m in b)
    has_n = bool(prof.rows_with(n))
    has_2 = bool(prof.rows_with(2))
    if raw_lines_simple and (has_n and has_2) != (nfixed >= 1):
        out.append(f"dichotomy: mult-n point {has_n}, mult-2 point {has_2}, fixed components {nfixed}")
    if raw_lines_simple and has_2 and len(prof.rows_with(n)) > 1:
        out.append("double points together with several points of multiplicity n")
    sec = im.provenance
    qn = im.qn
    units = set(qn.unit_points)
    coords = set(qn.coordinate_points)
    for fl, rows in zip(im.fixed_components, prof.on_fixed):
        mult_n = [r for r in rows if prof.multiplicity(r) == n]
        mult_2 = [r for r in rows if prof.multiplicity(r) == 2]
        if len(mult_n) != 1:
            out.append(f"fixed component {fl} carries {len(mult_n)} points of multiplicity n")
        elif sec.lift(c.point_of(mult_n[0])) not in coords:
            out.append(f"fixed component {fl}: multiplicity-n point is not a coordinate point")
        if len(mult_2) != n:
            out.append(f"fixed component {fl} carries {len(mult_2)} points of multiplicity 2, expected {n}")
        elif not all(sec.lift(c.point_of(r)) in units for r in mult_2):
            out.append(f"fixed component {fl}: a double point is not a unit point")
    if nfixed:
        post = im.multinet
        hist = Counter(
            int(post.census.block_mult[r].max()) for r in post.census.x_rows
        )
        if hist.get(2, 0) and n - nfixed != 2:
            out.append(f"cancelled multinet keeps {hist[2]} double points")
        special = n - nfixed
        if hist.get(special, 0) != 1:
            out.append(f"cancelled multinet has {hist.get(special, 0)} points of multiplicity {special}")
    return out
