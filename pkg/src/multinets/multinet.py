"""Multinets in the projective plane: base locus, axioms, pencils, Latin squares, catalog."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from . import kernels
from .cyclo import FieldElem, FieldSpec, make_field
from .projgeo import LineP2, ProjPoint, int_array, meet, rref

__all__ = [
    "ConditionViolation",
    "NotANetError",
    "Multinet",
    "BaseLocus",
    "VerificationReport",
    "LatinSquare",
    "incidence_census",
    "base_locus",
    "verify",
    "verify_pencil",
    "block_polynomial",
    "to_latin",
    "catalog",
]

NET, LIGHT, HEAVY = "net", "light", "heavy"


class ConditionViolation(ValueError):
    """Per-block multiplicity sums disagree at a point of the base locus."""

    def __init__(self, message: str, point: ProjPoint | None = None):
        super().__init__(message)
        self.point = point


class NotANetError(ValueError):
    pass


Block = tuple[tuple[LineP2, int], ...]


@dataclass
class Multinet:
    """k blocks of (line, multiplicity) pairs of common degree d."""

    field: FieldSpec
    d: int
    blocks: tuple[Block, ...]
    name: str | None = None

    def __post_init__(self):
        self.blocks = tuple(tuple((l, int(m)) for l, m in b) for b in self.blocks)
        for i, b in enumerate(self.blocks):
            lines = [l for l, _ in b]
            if len(set(lines)) != len(lines):
                raise ValueError(f"block {i} repeats a line")
            if any(m < 1 for _, m in b):
                raise ValueError(f"block {i} has a non-positive multiplicity")

    @property
    def k(self) -> int:
        return len(self.blocks)

    def entries(self) -> list[tuple[int, LineP2, int]]:
        return [(b, l, m) for b, blk in enumerate(self.blocks) for l, m in blk]

    def line_multiplicities(self) -> list[int]:
        return [m for blk in self.blocks for _, m in blk]

    def block_sums(self) -> list[int]:
        return [sum(m for _, m in b) for b in self.blocks]

    @cached_property
    def census(self) -> IncidenceCensus:
        return incidence_census(self)


@dataclass
class IncidenceCensus:
    """Meets of all line pairs, identified by their exact incidence sets.

    ``points`` rows are incidence vectors over ``entries``; ``block_mult[p, b]``
    is the multiplicity-weighted number of block-b lines through point p.
    """

    entries: list[tuple[int, LineP2, int]]
    pairs: np.ndarray
    valid: np.ndarray
    inc: np.ndarray
    points: np.ndarray
    witness: np.ndarray
    block_mult: np.ndarray
    in_x: np.ndarray

    @property
    def x_rows(self) -> np.ndarray:
        return np.flatnonzero(self.in_x)

    def point_of(self, row: int) -> ProjPoint:
        i, j = self.pairs[self.witness[row]]
        return meet(self.entries[i][1], self.entries[j][1])


def incidence_census(m: Multinet) -> IncidenceCensus:
    entries = m.entries()
    L = len(entries)
    block_ids = np.array([b for b, _, _ in entries], dtype=np.int64)
    mults = np.array([mu for _, _, mu in entries], dtype=np.int64)
    if L < 2:
        empty = np.zeros((0, L), dtype=np.uint8)
        return IncidenceCensus(
            entries, np.zeros((0, 2), np.int64), np.zeros(0, np.uint8), empty, empty,
            np.zeros(0, np.int64), np.zeros((0, m.k), np.int64), np.zeros(0, bool),
        )
    lines = int_array([l for _, l, _ in entries])
    pairs, valid, inc = kernels.meet_incidence(lines, m.field.poly)
    keep = valid.astype(bool)
    rows = inc[keep]
    idx = np.flatnonzero(keep)
    points, first = np.unique(rows, axis=0, return_index=True)
    witness = idx[first]
    onehot = np.zeros((L, m.k), dtype=np.int64)
    onehot[np.arange(L), block_ids] = mults
    block_mult = points.astype(np.int64) @ onehot
    in_x = (points.astype(np.int64) @ (onehot > 0).astype(np.int64) > 0).sum(axis=1) >= 2
    # canonical order: by witness pair
    order = np.argsort(witness, kind="stable")
    return IncidenceCensus(
        entries, pairs, valid, inc, points[order], witness[order], block_mult[order], in_x[order]
    )


@dataclass
class BaseLocus:
    points: list[tuple[ProjPoint, int]]

    def multiplicities(self) -> list[int]:
        return [m for _, m in self.points]

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.multiplicities()).items()))


def base_locus(m: Multinet) -> BaseLocus:
    """Points where lines of different blocks meet, with multiplicities."""
    c = m.census
    pts = []
    for r in c.x_rows:
        sums = c.block_mult[r]
        if len(set(sums.tolist())) != 1:
            P = c.point_of(r)
            raise ConditionViolation(f"per-block multiplicities {sums.tolist()} differ at {P}", P)
        pts.append((c.point_of(r), int(sums[0])))
    pts.sort(key=lambda pm: pm[0].sort_key())
    return BaseLocus(pts)


def point_multiplicities(m: Multinet) -> list[int]:
    """Multiplicities of base points without computing their coordinates.

    Points violating the per-block condition contribute their largest block sum.
    """
    c = m.census
    return [int(c.block_mult[r].max()) for r in c.x_rows]


@dataclass
class VerificationReport:
    k: int
    d: int
    condition_i_ok: bool
    condition_ii_ok: bool
    identity_checks: dict[str, bool]
    instance_checks: dict[str, bool]
    classification: str | None
    num_points: int
    point_histogram: dict[int, int]
    line_histogram: dict[int, int]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.condition_i_ok
            and self.condition_ii_ok
            and all(self.identity_checks.values())
            and all(self.instance_checks.values())
        )

    def summary(self) -> str:
        status = "all identities pass" if all(self.identity_checks.values()) else "identity failures"
        return f"{self.classification or 'invalid'}, k={self.k}, d={self.d}, {status}"


def verify(m: Multinet) -> VerificationReport:
    """Check conditions (i), (ii) and the four counting identities; classify."""
    failures: list[str] = []
    c = m.census
    d, k = m.d, m.k
    sums = m.block_sums()

    id1 = all(s == d for s in sums)
    if not id1:
        failures.append(f"identity (1): block sums {sums} differ from d={d}")
    total = sum(sums)
    id2 = total == d * k
    if not id2:
        failures.append(f"identity (2): total multiplicity {total} != d*k = {d * k}")

    cond_i = True
    mult = {}
    for r in c.x_rows:
        s = c.block_mult[r].tolist()
        if len(set(s)) != 1:
            cond_i = False
            if len(failures) < 50:
                failures.append(f"condition (i): block sums {s} at {c.point_of(r)}")
        mult[int(r)] = max(s)
    mp = list(mult.values())

    sq = sum(x * x for x in mp)
    id3 = sq == d * d
    if not id3:
        failures.append(f"identity (3): sum of squared point multiplicities {sq} != d^2 = {d * d}")

    id4 = True
    for e, (b, line, _) in enumerate(c.entries):
        s = sum(mult[int(r)] for r in c.x_rows if c.points[r, e])
        if s != d:
            id4 = False
            if len(failures) < 50:
                failures.append(f"identity (4): points on {line} (block {b}) sum to {s}, expected {d}")

    cond_ii = True
    entry_block = [b for b, _, _ in c.entries]
    for b in range(k):
        members = [e for e, bb in enumerate(entry_block) if bb == b]
        if len(members) <= 1:
            continue
        adj: dict[int, list[int]] = {e: [] for e in members}
        for p, (i, j) in enumerate(c.pairs):
            if entry_block[i] == b and entry_block[j] == b and c.valid[p]:
                row = c.inc[p]
                in_x = any(row[e] and entry_block[e] != b for e in range(len(row)))
                if not in_x:
                    adj[int(i)].append(int(j))
                    adj[int(j)].append(int(i))
        seen = {members[0]}
        stack = [members[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(members):
            cond_ii = False
            failures.append(f"condition (ii): block {b} splits into several chains")

    line_hist = dict(sorted(Counter(m.line_multiplicities()).items()))
    point_hist = dict(sorted(Counter(mp).items()))
    identities = {"1": id1, "2": id2, "3": id3, "4": id4}
    classification = None
    if cond_i and cond_ii and all(identities.values()):
        if all(x == 1 for x in mp):
            classification = NET
        elif all(x == 1 for x in m.line_multiplicities()):
            classification = LIGHT
        else:
            classification = HEAVY
    instance = {
        # (k,1)-nets exist for every k; the bound concerns d > 1
        "k_at_most_4": k <= 4 or d == 1,
        "k4_is_net": k != 4 or classification == NET,
        "net_iff_d_squared_points": (classification == NET) == (len(mp) == d * d)
        if classification
        else True,
    }
    for name, ok in instance.items():
        if not ok:
            failures.append(f"instance check {name} failed")
    return VerificationReport(
        k=k,
        d=d,
        condition_i_ok=cond_i,
        condition_ii_ok=cond_ii,
        identity_checks=identities,
        instance_checks=instance,
        classification=classification,
        num_points=len(mp),
        point_histogram=point_hist,
        line_histogram=line_hist,
        failures=failures,
    )


# ---- pencils -------------------------------------------------------------------

Poly = dict[tuple[int, int, int], FieldElem]


def _mul_linear(p: Poly, line: LineP2) -> Poly:
    out: Poly = {}
    for mono, c in p.items():
        for v in range(3):
            a = line[v]
            if not a:
                continue
            e = list(mono)
            e[v] += 1
            key = (e[0], e[1], e[2])
            t = c * a
            out[key] = out[key] + t if key in out else t
    return {mo: c for mo, c in out.items() if c}


def block_polynomial(block: Sequence[tuple[LineP2, int]], field: FieldSpec) -> Poly:
    """Expanded product of the block's linear forms raised to their multiplicities."""
    p: Poly = {(0, 0, 0): field.one()}
    for line, mu in block:
        for _ in range(mu):
            p = _mul_linear(p, line)
    return p


def _monomials(d: int) -> list[tuple[int, int, int]]:
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def pencil_rank(polys: Sequence[Poly], d: int, field: FieldSpec) -> int:
    monos = _monomials(d)
    rows = [[p.get(mo, field.zero()) for mo in monos] for p in polys]
    red, _ = rref(rows)
    return len(red)


def verify_pencil(m: Multinet) -> bool:
    """True iff the k block polynomials span a space of dimension exactly 2."""
    if m.k < 3:
        raise ValueError("a pencil needs at least three blocks")
    if any(s != m.d for s in m.block_sums()):
        return False
    polys = [block_polynomial(b, m.field) for b in m.blocks]
    return pencil_rank(polys, m.d, m.field) == 2


# ---- Latin squares ---------------------------------------------------------------

@dataclass
class LatinSquare:
    order: int
    entries: list[list[int]]

    def is_latin(self) -> bool:
        full = set(range(self.order))
        rows_ok = all(set(r) == full for r in self.entries)
        cols_ok = all({r[j] for r in self.entries} == full for j in range(self.order))
        return len(self.entries) == self.order and rows_ok and cols_ok

    def orthogonal_to(self, other: LatinSquare) -> bool:
        pairs = {
            (self.entries[i][j], other.entries[i][j]) for i in range(self.order) for j in range(self.order)
        }
        return len(pairs) == self.order * self.order


def to_latin(m: Multinet) -> list[LatinSquare]:
    """Latin squares of a 3- or 4-net, lines indexed by canonical order per block."""
    if m.k not in (3, 4):
        raise NotANetError(f"Latin squares need k in {{3, 4}}, got k={m.k}")
    rep = verify(m)
    if rep.classification != NET:
        raise NotANetError(f"multinet is {rep.classification or 'invalid'}, not a net")
    d = m.d
    index = []
    for blk in m.blocks:
        ordered = sorted((l for l, _ in blk), key=lambda l: l.sort_key())
        index.append({l: i for i, l in enumerate(ordered)})
    squares = [[[-1] * d for _ in range(d)] for _ in range(m.k - 2)]
    c = m.census
    for r in c.x_rows:
        lines = {}
        for e in np.flatnonzero(c.points[r]):
            b, l, _ = c.entries[e]
            lines[b] = index[b][l]
        i, j = lines[0], lines[1]
        for s in range(m.k - 2):
            squares[s][i][j] = lines[s + 2]
    out = [LatinSquare(d, sq) for sq in squares]
    for sq in out:
        if not sq.is_latin():
            raise NotANetError("extracted table is not a Latin square")
    return out


# ---- catalog -------------------------------------------------------------------

def _line(field: FieldSpec, a, b, c) -> LineP2:
    return LineP2([a, b, c], field=field)


def catalog_local(k: int, field: FieldSpec | None = None) -> Multinet:
    """k concurrent lines through [0:0:1], one per block."""
    if k < 3:
        raise ValueError("a multinet needs at least three blocks")
    f = field or make_field(1)
    lines = [_line(f, 1, 0, 0), _line(f, 0, 1, 0)] + [_line(f, 1, -(t + 1), 0) for t in range(k - 2)]
    return Multinet(f, 1, tuple(((l, 1),) for l in lines), name=f"local {k}")


def catalog_monomial(n: int, field: FieldSpec | None = None) -> Multinet:
    """Blocks x^n(y^n - z^n), y^n(x^n - z^n), z^n(x^n - y^n)."""
    f = field or make_field(n)
    if n < 1 or f.N % n:
        raise ValueError(f"monomial({n}) needs n | N (N = {f.N})")
    blocks = []
    for v, (i, j) in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
        coord = [0, 0, 0]
        coord[v] = 1
        blk = [(_line(f, *coord), n)]
        for a in range(n):
            c = [f.zero()] * 3
            c[i] = f.one()
            c[j] = -f.root(n, a)
            blk.append((LineP2(c), 1))
        blocks.append(tuple(blk))
    return Multinet(f, 2 * n, tuple(blocks), name=f"monomial {n}")


def catalog_hasse(field: FieldSpec | None = None) -> Multinet:
    """The (4,3)-net of the pencil spanned by xyz and x^3 + y^3 + z^3."""
    f = field or make_field(3)
    if f.N % 3:
        raise ValueError(f"the Hasse configuration needs 3 | N (N = {f.N})")
    w = [f.root(3, e) for e in range(3)]
    xyz = block_polynomial([(_line(f, 1, 0, 0), 1), (_line(f, 0, 1, 0), 1), (_line(f, 0, 0, 1), 1)], f)
    cubic: Poly = {(3, 0, 0): f.one(), (0, 3, 0): f.one(), (0, 0, 3): f.one()}
    candidates = [LineP2([f.one(), w[a], w[b]]) for a in range(3) for b in range(3)]
    fibers = []
    for triple in combinations(candidates, 3):
        prod = block_polynomial([(l, 1) for l in triple], f)
        if pencil_rank([xyz, cubic, prod], 3, f) == 2:
            fibers.append(triple)
    used = [l for t in fibers for l in t]
    if len(fibers) != 3 or len(set(used)) != 9:
        raise RuntimeError(f"expected three disjoint reducible cubics, found {len(fibers)}")
    blocks = [((_line(f, 1, 0, 0), 1), (_line(f, 0, 1, 0), 1), (_line(f, 0, 0, 1), 1))]
    blocks += [tuple((l, 1) for l in t) for t in fibers]
    return Multinet(f, 3, tuple(blocks), name="hasse")


def catalog(name: str, param: int | None = None, field: FieldSpec | None = None) -> Multinet:
    if name == "local":
        return catalog_local(param if param is not None else 3, field)
    if name == "monomial":
        if param is None:
            raise ValueError("monomial needs n")
        return catalog_monomial(param, field)
    if name == "hasse":
        return catalog_hasse(field)
    raise ValueError(f"unknown catalog entry {name!r}")
