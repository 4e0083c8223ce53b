"""Search for cutting planes whose induced multinets carry many double points."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .analysis import ClassificationReport, classify_induced, compare_prediction, double_point_census
from .cyclo import FieldElem, parse_elem, root_of_unity_exponent
from .multinet import LIGHT
from .projgeo import PlaneP3, ProjPoint, _normalize, incident
from .qn import BLOCK_PAIRS, QnArrangement, unit_points_on
from .section import InducedMultinet, SectionConsistencyError, restrict

__all__ = [
    "STRATEGIES",
    "SearchConfig",
    "SearchResult",
    "SearchRun",
    "GoldenMismatch",
    "run_search",
    "transform_plane",
    "example_46_plane",
    "EXAMPLE_46_POINTS",
    "reproduce_example_46",
]

STRATEGIES = ("unit-triples", "random-rational", "file-list")


@dataclass
class SearchConfig:
    n: int
    strategy: str = "unit-triples"
    require_light: bool = True
    forbid_fixed: bool = True
    forbid_mult_n_points: bool = True
    budget: int = 1_000_000
    top: int = 10
    seed: int = 0
    coefficient_range: int = 20
    planes: Sequence[PlaneP3] = ()

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {STRATEGIES}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.top < 1:
            raise ValueError("top must be at least 1")


@dataclass
class SearchResult:
    plane: PlaneP3
    double_point_count: int
    report: ClassificationReport


@dataclass
class SearchRun:
    config: SearchConfig
    results: list[SearchResult]
    examined: int
    exhausted: bool
    rejected: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def max_count(self) -> int:
        return max((r.double_point_count for r in self.results), default=0)


def _plane_from_group_ring(g: Sequence[Sequence[int]], qn: QnArrangement) -> PlaneP3 | None:
    f = qn.field
    coords = []
    for gi in g:
        v = [0] * f.phi
        for t, c in enumerate(gi):
            if c:
                row = f.power_table[t]
                for q in range(f.phi):
                    v[q] += c * row[q]
        coords.append(f.from_ints(v))
    if not any(coords):
        return None
    return PlaneP3._from_normalized(_normalize(coords))


def _is_root(x: FieldElem, n: int) -> bool:
    return root_of_unity_exponent(x, n) is not None


def _quick_reject(h: PlaneP3, qn: QnArrangement, cfg: SearchConfig) -> bool:
    """Cheap exact pruning; the full pipeline stays authoritative."""
    if h in qn:
        return True
    zeros = [i for i in range(4) if not h[i]]
    if zeros and (cfg.forbid_mult_n_points or cfg.forbid_fixed or cfg.require_light):
        # coordinate points carry multiplicity n, and fixed components need one
        if cfg.forbid_mult_n_points or len(zeros) >= 2:
            return True
    if cfg.require_light and not zeros:
        n = qn.n
        for (i, j), (k, l) in BLOCK_PAIRS:
            if _is_root(-h[j] / h[i], n) and _is_root(-h[l] / h[k], n):
                return True
    return False


def _accept(im: InducedMultinet, rep: ClassificationReport, cfg: SearchConfig, n: int) -> bool:
    if cfg.require_light and rep.verdict != LIGHT:
        return False
    if cfg.forbid_fixed and im.fixed_components:
        return False
    if cfg.forbid_mult_n_points and rep.count_points(n):
        return False
    return True


def _evaluate(h: PlaneP3, count: int, qn: QnArrangement, cfg: SearchConfig) -> SearchResult | None:
    im = restrict(qn, h)
    rep = classify_induced(im)
    if not _accept(im, rep, cfg, qn.n):
        return None
    if rep.verification is None or not rep.verification.ok:
        raise SectionConsistencyError(f"induced multinet of {h} fails verification")
    mismatch = compare_prediction(h, qn)
    if mismatch:
        raise SectionConsistencyError(f"prediction disagrees with computation for {h}: {mismatch}")
    return SearchResult(h, count, rep)


def _unit_triple_candidates(qn: QnArrangement, cfg: SearchConfig) -> tuple[Iterator[tuple[int, list[PlaneP3]]], int, bool]:
    n, f = qn.n, qn.field
    pairs, counts = kernels.triple_scan(n, f.N, f.poly, f.power_table, cfg.budget)
    total = (n**3 - 1) * (n**3 - 2) // 2
    examined = len(counts)

    def tiers():
        order = np.argsort(-counts, kind="stable")
        i = 0
        while i < len(order):
            c = int(counts[order[i]])
            if c < 1:
                break
            j = i
            while j < len(order) and counts[order[j]] == c:
                j += 1
            seen: dict[PlaneP3, None] = {}
            for p in order[i:j]:
                a, b = pairs[p]
                h = _plane_from_group_ring(kernels.triple_plane(n, f.N, int(a), int(b)), qn)
                if h is not None:
                    seen.setdefault(h, None)
            yield c, sorted(seen, key=lambda x: x.sort_key())
            i = j

    return tiers(), examined, examined >= total


def _listed_candidates(planes: Sequence[PlaneP3], qn: QnArrangement):
    scored: dict[PlaneP3, int] = {}
    for h in planes:
        if h not in scored:
            scored[h] = len(unit_points_on(h, qn))
    by_count: dict[int, list[PlaneP3]] = {}
    for h, c in scored.items():
        by_count.setdefault(c, []).append(h)
    for c in sorted(by_count, reverse=True):
        yield c, sorted(by_count[c], key=lambda x: x.sort_key())


def _random_planes(qn: QnArrangement, cfg: SearchConfig) -> list[PlaneP3]:
    rng = random.Random(cfg.seed)
    f = qn.field
    R = cfg.coefficient_range
    out = []
    while len(out) < cfg.budget:
        coeffs = [rng.randint(-R, R) for _ in range(4)]
        if any(coeffs):
            out.append(PlaneP3([f.elem(c) for c in coeffs]))
    return out


def run_search(config: SearchConfig, qn: QnArrangement) -> SearchRun:
    if config.n != qn.n:
        raise ValueError(f"config is for n = {config.n} but the arrangement has n = {qn.n}")
    notes: list[str] = []
    if qn.n <= 3:
        notes.append(f"n = {qn.n} <= 3: profile validator disabled; double points may coincide with other classes")
    if config.strategy == "unit-triples":
        tiers, examined, exhausted = _unit_triple_candidates(qn, config)
    elif config.strategy == "random-rational":
        planes = _random_planes(qn, config)
        tiers, examined, exhausted = _listed_candidates(planes, qn), len(planes), False
    else:
        planes = list(config.planes)[: config.budget]
        tiers = _listed_candidates(planes, qn)
        examined, exhausted = len(planes), len(planes) == len(config.planes)
    results: list[SearchResult] = []
    rejected = 0
    for count, planes in tiers:
        if count < 1 and config.strategy == "unit-triples":
            break
        for h in planes:
            if _quick_reject(h, qn, config):
                rejected += 1
                continue
            res = _evaluate(h, count, qn, config)
            if res is None:
                rejected += 1
                continue
            results.append(res)
            if len(results) >= config.top:
                break
        if len(results) >= config.top:
            break
    if not exhausted:
        notes.append(f"budget of {config.budget} planes reached before exhausting the candidate space")
    return SearchRun(config, results, examined, exhausted, rejected, notes)


def transform_plane(h: PlaneP3, perm: Sequence[int], exponents: Sequence[int], qn: QnArrangement) -> PlaneP3:
    """Image of h under x_i -> zeta_n^(e_i) x_perm[i]; Q_n is invariant under these maps."""
    coords = [qn.field.zero()] * 4
    for i in range(4):
        coords[perm[i]] = h[i] * qn.zeta(exponents[i])
    return PlaneP3._from_normalized(_normalize(coords))


def symmetry_images(h: PlaneP3, qn: QnArrangement) -> Iterator[PlaneP3]:
    n = qn.n
    for perm in permutations(range(4)):
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    yield transform_plane(h, perm, (a, b, c, 0), qn)


# ---- the n = 8 example with eight double points ------------------------------------

EXAMPLE_46_COEFFS = ("1", "-(z+1)", "-z^3", "z^3+z")
# exponents (a, b, c) of [xi^a : xi^b : xi^c : 1]
EXAMPLE_46_POINTS = ((0, 0, 0), (2, 1, 0), (2, 2, 6), (4, 3, 6), (5, 2, 3), (5, 3, 5), (7, 0, 1), (7, 1, 3))
EXAMPLE_46_SIX_PLANES = (
    ((0, 1), 1),
    ((0, 2), 2),
    ((0, 3), 2),
    ((2, 3), 0),
    ((1, 3), 1),
    ((1, 2), 1),
)


class GoldenMismatch(AssertionError):
    pass


def example_46_plane(qn: QnArrangement) -> PlaneP3:
    return PlaneP3([parse_elem(c, qn.field) for c in EXAMPLE_46_COEFFS])


def _golden(cond: bool, msg: str) -> None:
    if not cond:
        raise GoldenMismatch(msg)


def reproduce_example_46(qn: QnArrangement) -> SearchResult:
    """Rebuild the n = 8 light multinet with eight double points and check every printed fact."""
    _golden(qn.n == 8 and qn.field.N == 8, "the example needs n = N = 8")
    f = qn.field
    h = example_46_plane(qn)
    im = restrict(qn, h)
    rep = classify_induced(im)
    _golden(rep.verdict == LIGHT, f"verdict {rep.verdict}, expected light")
    _golden(not im.fixed_components, "unexpected fixed components")
    _golden(rep.point_mult_histogram.keys() <= {1, 2}, f"point multiplicities {rep.point_mult_histogram}")
    _golden(rep.count_points(2) == 8, f"{rep.count_points(2)} double points, expected 8")
    census = double_point_census(h, qn)
    _golden(census.agrees is True, "census and base locus disagree")
    printed = {ProjPoint([f.zeta(a), f.zeta(b), f.zeta(c), f.one()]) for a, b, c in EXAMPLE_46_POINTS}
    _golden(set(census.points) == printed, "double points differ from the printed table")
    P = ProjPoint([f.zeta(2), f.zeta(1), f.one(), f.one()])
    on = {(p.pair, p.exponent) for p in qn.planes if incident(p.plane, P)}
    _golden(on == set(EXAMPLE_46_SIX_PLANES), f"[z^2:z:1:1] lies on {sorted(on)}")
    _golden(len({(p.block, p.half) for p in qn.planes if incident(p.plane, P)}) == 6, "not one plane per half-block")
    return SearchResult(h, len(census.points), rep)
