"""The Q_n net of planes in projective 3-space and the position of a plane relative to its lattice."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import kernels
from .cyclo import FieldSpec, make_field
from .projgeo import LineP3, PlaneP3, ProjPoint, incident, line_in_plane, planes_meet, to_int_rows

__all__ = [
    "BLOCK_PAIRS",
    "QnPlane",
    "LatticeLine",
    "QnArrangement",
    "PositionReport",
    "PredictedClass",
    "build_qn",
    "position_report",
    "predict_class",
    "unit_points_on",
]

# half-block coordinate pairs per block
BLOCK_PAIRS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)

PAIR_POSITION = {pair: (b, h) for b, halves in enumerate(BLOCK_PAIRS) for h, pair in enumerate(halves)}


@dataclass(frozen=True)
class QnPlane:
    """The plane x_i - zeta_n^a x_j = 0, tagged with its block and half-block."""

    index: int
    block: int
    half: int
    pair: tuple[int, int]
    exponent: int
    plane: PlaneP3

    def label(self) -> str:
        i, j = self.pair
        if self.exponent == 0:
            return f"x{i} - x{j}"
        return f"x{i} - z^{self.exponent}*x{j}" if self.exponent != 1 else f"x{i} - z*x{j}"


@dataclass(frozen=True)
class LatticeLine:
    """A line of the intersection lattice and the Q_n planes containing it."""

    kind: str  # "base", "same-block" or "cross-block"
    line: LineP3
    planes: tuple[int, ...]


class QnArrangement:
    """The 6n planes of Q_n over a field whose conductor is divisible by n."""

    def __init__(self, n: int, field: FieldSpec):
        if n < 1:
            raise ValueError("n must be positive")
        if field.N % n:
            raise ValueError(f"n = {n} does not divide the conductor N = {field.N}")
        self.n = n
        self.field = field
        planes = []
        for b, halves in enumerate(BLOCK_PAIRS):
            for h, (i, j) in enumerate(halves):
                for a in range(n):
                    coords = [field.zero()] * 4
                    coords[i] = field.one()
                    coords[j] = -field.root(n, a)
                    planes.append(QnPlane(len(planes), b, h, (i, j), a, PlaneP3(coords)))
        self.planes: tuple[QnPlane, ...] = tuple(planes)
        self._index = {p.plane: p.index for p in planes}

    def __repr__(self) -> str:
        return f"QnArrangement(n={self.n}, N={self.field.N})"

    def plane_index(self, h: PlaneP3) -> int | None:
        return self._index.get(h)

    def __contains__(self, h: PlaneP3) -> bool:
        return h in self._index

    def half_block(self, block: int, half: int) -> list[QnPlane]:
        return [p for p in self.planes if p.block == block and p.half == half]

    def zeta(self, e: int):
        return self.field.root(self.n, e)

    @cached_property
    def coordinate_points(self) -> tuple[ProjPoint, ...]:
        f = self.field
        return tuple(ProjPoint([f.one() if i == k else f.zero() for i in range(4)]) for k in range(4))

    @cached_property
    def base_lines(self) -> tuple[LatticeLine, ...]:
        """Base line x_i = x_j = 0 of each half-block, ordered by block then half."""
        out = []
        for halves in BLOCK_PAIRS:
            for i, j in halves:
                k, l = (c for c in range(4) if c not in (i, j))
                line = LineP3([self.coordinate_points[k], self.coordinate_points[l]])
                out.append(
                    LatticeLine("base", line, tuple(p.index for p in self.planes if p.pair == (i, j)))
                )
        return tuple(out)

    @cached_property
    def sameblock_lines(self) -> tuple[LatticeLine, ...]:
        out = []
        for b in range(3):
            for p in self.half_block(b, 0):
                for q in self.half_block(b, 1):
                    out.append(LatticeLine("same-block", planes_meet(p.plane, q.plane), (p.index, q.index)))
        return tuple(out)

    @cached_property
    def crossblock_lines(self) -> tuple[LatticeLine, ...]:
        """Lines cut by planes from different blocks; each lies on one plane of every block."""
        found: dict[LineP3, set[int]] = {}
        for p, q in combinations(self.planes, 2):
            if p.block == q.block:
                continue
            line = planes_meet(p.plane, q.plane)
            found.setdefault(line, set()).update((p.index, q.index))
        return tuple(
            LatticeLine("cross-block", line, tuple(sorted(idx)))
            for line, idx in sorted(found.items(), key=lambda kv: kv[0].sort_key())
        )

    @cached_property
    def unit_points(self) -> tuple[ProjPoint, ...]:
        """All [z^a : z^b : z^c : 1], indexed by a*n^2 + b*n + c."""
        n = self.n
        one = self.field.one()
        return tuple(
            ProjPoint([self.zeta(a), self.zeta(b), self.zeta(c), one])
            for a in range(n)
            for b in range(n)
            for c in range(n)
        )

    def block_polynomial_factors(self, block: int) -> list[QnPlane]:
        return [p for p in self.planes if p.block == block]


def build_qn(n: int, field: FieldSpec | None = None) -> QnArrangement:
    return QnArrangement(n, field if field is not None else make_field(n))


def unit_points_on(h: PlaneP3, qn: QnArrangement) -> list[tuple[int, int, int]]:
    """Exponents (a, b, c) of the unit points [z^a : z^b : z^c : 1] lying on h."""
    n = qn.n
    flat = [h[i] * qn.zeta(e) for i in range(4) for e in range(n)]
    (ints,) = to_int_rows([flat])
    table = np.array(ints, dtype=object).reshape(4, n, qn.field.phi)
    return sorted(kernels.unit_hits(table))


@dataclass
class PositionReport:
    h: PlaneP3
    n: int
    in_qn: bool
    contained_base_lines: list[LatticeLine] = field(default_factory=list)
    contained_sameblock_lines: list[LatticeLine] = field(default_factory=list)
    contained_crossblock_lines: list[LatticeLine] = field(default_factory=list)
    contained_coordinate_points: list[int] = field(default_factory=list)
    contained_unit_points: list[ProjPoint] = field(default_factory=list)
    unit_exponents: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def contains_lattice_line(self) -> bool:
        return bool(
            self.contained_base_lines or self.contained_sameblock_lines or self.contained_crossblock_lines
        )


def position_report(h: PlaneP3, qn: QnArrangement) -> PositionReport:
    """Exhaustive exact check of h against the lattice objects of Q_n."""
    rep = PositionReport(h=h, n=qn.n, in_qn=h in qn)
    rep.contained_base_lines = [L for L in qn.base_lines if line_in_plane(L.line, h)]
    rep.contained_sameblock_lines = [L for L in qn.sameblock_lines if line_in_plane(L.line, h)]
    rep.contained_crossblock_lines = [L for L in qn.crossblock_lines if line_in_plane(L.line, h)]
    rep.contained_coordinate_points = [k for k, e in enumerate(qn.coordinate_points) if incident(h, e)]
    rep.unit_exponents = unit_points_on(h, qn)
    n = qn.n
    rep.contained_unit_points = [qn.unit_points[a * n * n + b * n + c] for a, b, c in rep.unit_exponents]
    return rep


@dataclass
class PredictedClass:
    """Class of the induced multinet read off from the lattice position of the plane."""

    n: int
    d: int
    mult_n_lines: int
    mult_2_lines: int
    fixed_components: int
    mult_n_points: int | None
    mult_2_points: int
    line_histogram: dict[int, int]
    point_histogram: dict[int, int] | None
    verdict: str
    ambiguous: bool
    notes: list[str] = field(default_factory=list)


def predict_class(report: PositionReport) -> PredictedClass:
    if report.in_qn:
        raise ValueError("the plane belongs to Q_n; no induced multinet")
    n = report.n
    nb = len(report.contained_base_lines)
    ns = len(report.contained_sameblock_lines)
    nf = len(report.contained_crossblock_lines)
    d = 2 * n - nf
    notes: list[str] = []

    lines: Counter[int] = Counter()
    if nb:
        lines[n] += nb
    if ns:
        lines[2] += ns
    singles = 6 * n - n * nb - 2 * ns - 3 * nf
    if singles:
        lines[1] += singles

    mult_n_points: int | None = None
    points: Counter[int] | None = None
    if nb == 0:
        points = Counter()
        fixed_through_coord = Counter()
        for L in report.contained_crossblock_lines:
            # a cross-block line over coordinates {i, j, k} passes through e_l
            involved = {c for idx in L.planes for c in _pair_of(idx, n)}
            (l,) = set(range(4)) - involved
            fixed_through_coord[l] += 1
        for k in report.contained_coordinate_points:
            m = n - fixed_through_coord[k]
            if m > 1:
                points[m] += 1
        mult_n_points = sum(1 for k in report.contained_coordinate_points if fixed_through_coord[k] == 0)
        on_fixed = 0
        for P in report.contained_unit_points:
            if any(L.line.contains(P) for L in report.contained_crossblock_lines):
                on_fixed += 1
        doubles = len(report.contained_unit_points) - on_fixed
        if doubles:
            points[2] += doubles
    else:
        notes.append("point multiplicities are not predicted when a half-block base line lies in the plane")
        doubles = len(report.contained_unit_points)

    if nb or ns:
        verdict = "heavy"
    elif points:
        verdict = "light"
    else:
        verdict = "net"
    ambiguous = n <= 3
    if ambiguous:
        notes.append(f"n = {n} <= 3: multiplicity classes 2, n-2, n-1 and n may coincide")
    return PredictedClass(
        n=n,
        d=d,
        mult_n_lines=nb,
        mult_2_lines=ns,
        fixed_components=nf,
        mult_n_points=mult_n_points,
        mult_2_points=doubles,
        line_histogram=dict(sorted(lines.items())),
        point_histogram=dict(sorted(points.items())) if points is not None else None,
        verdict=verdict,
        ambiguous=ambiguous,
        notes=notes,
    )


def _pair_of(index: int, n: int) -> tuple[int, int]:
    b, rest = divmod(index, 2 * n)
    h = rest // n
    return BLOCK_PAIRS[b][h]
