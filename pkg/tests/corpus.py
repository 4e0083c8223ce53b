"""Deterministic plane corpus mixing generic, special-position and cyclotomic planes."""

from __future__ import annotations

import random
from dataclasses import dataclass

from multinets import kernels
from multinets.projgeo import DegenerateError, PlaneP3
from multinets.qn import QnArrangement, build_qn
from multinets.search import _plane_from_group_ring

# planes per n; weighted toward n >= 4 where the multiplicity classes separate
QUOTA = {2: 1000, 3: 1000, 4: 3000, 5: 2500, 6: 2500}


@dataclass(frozen=True)
class CorpusPlane:
    n: int
    family: str
    plane: PlaneP3


def _nz(rng: random.Random, r: int = 20) -> int:
    return rng.randint(1, r) * rng.choice((1, -1))


def _generic(rng, qn):
    return [_nz(rng) for _ in range(4)]


def _one_zero(rng, qn):
    c = [_nz(rng) for _ in range(4)]
    c[rng.randrange(4)] = 0
    return c


def _two_zero(rng, qn):
    c = [_nz(rng) for _ in range(4)]
    for i in rng.sample(range(4), 2):
        c[i] = 0
    return c


def _unit_sum(rng, qn):
    # passes through [1:1:1:1]; with a zero entry it contains a cross-block line
    c = [_nz(rng, 9) for _ in range(3)]
    c.append(-sum(c))
    if rng.random() < 0.5:
        k = rng.randrange(4)
        c[k] = 0
        rest = [i for i in range(4) if i != k]
        c[rest[-1]] = -(c[rest[0]] + c[rest[1]])
    rng.shuffle(c)
    return c


def _cross_block(rng, qn):
    # alpha (x_i - z^a x_j) + beta (x_i - z^b x_k): contains a cross-block line
    f, n = qn.field, qn.n
    i, j, k = rng.sample(range(4), 3)
    a, b = rng.randrange(n), rng.randrange(n)
    al, be = _nz(rng, 9), _nz(rng, 9)
    c = [f.zero()] * 4
    c[i] = f.elem(al + be)
    c[j] = -al * qn.zeta(a)
    c[k] = -be * qn.zeta(b)
    return c


def _double_cross(rng, qn):
    # x_0 = (z^a + 1) x_1 - z^a x_2 style: two fixed components for generic a
    n = qn.n
    a = rng.randrange(1, n) if n > 1 else 0
    i, j, k = rng.sample(range(4), 3)
    f = qn.field
    c = [f.zero()] * 4
    c[i] = f.one()
    c[j] = -(qn.zeta(a) + 1) * qn.zeta(rng.randrange(n))
    c[k] = qn.zeta(a) * qn.zeta(rng.randrange(n))
    return c


FAMILIES = (
    ("generic", _generic, 4),
    ("one-zero", _one_zero, 2),
    ("two-zero", _two_zero, 1),
    ("unit-sum", _unit_sum, 2),
    ("cross-block", _cross_block, 2),
    ("double-cross", _double_cross, 1),
)


def _unit_planes(qn: QnArrangement, limit: int) -> list[PlaneP3]:
    f, n = qn.field, qn.n
    pairs, counts = kernels.triple_scan(n, f.N, f.poly, f.power_table, 10**9)
    seen: dict[PlaneP3, None] = {}
    for p in range(len(counts)):
        if counts[p] < 1:
            continue
        a, b = pairs[p]
        h = _plane_from_group_ring(kernels.triple_plane(n, f.N, int(a), int(b)), qn)
        if h is not None and h not in qn:
            seen.setdefault(h, None)
        if len(seen) >= limit:
            break
    return sorted(seen, key=lambda h: h.sort_key())


def plane_corpus(seed: int = 20261019) -> list[CorpusPlane]:
    out: list[CorpusPlane] = []
    for n, quota in QUOTA.items():
        qn = build_qn(n)
        rng = random.Random(seed * 31 + n)
        unit = _unit_planes(qn, quota // 5)
        planes: dict[PlaneP3, str] = {h: "unit-triple" for h in unit}
        weights = [w for _, _, w in FAMILIES]
        while len(planes) < quota:
            name, gen, _ = rng.choices(FAMILIES, weights)[0]
            try:
                h = PlaneP3(gen(rng, qn), field=qn.field)
            except DegenerateError:
                continue
            if h in qn or h in planes:
                continue
            planes[h] = name
        out.extend(CorpusPlane(n, fam, h) for h, fam in planes.items())
    return out
