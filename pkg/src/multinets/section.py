"""Restriction of Q_n to a plane: induced lines, multiplicities and fixed components."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .cyclo import FieldElem, inv
from .multinet import Multinet
from .projgeo import LineP2, PlaneP3, ProjPoint, _normalize
from .qn import QnArrangement

__all__ = [
    "PlaneInQnError",
    "SectionConsistencyError",
    "SectionPlane",
    "InducedMultinet",
    "restrict",
    "fixed_component_count",
]


class PlaneInQnError(ValueError):
    """The cutting plane is itself a plane of Q_n."""


class SectionConsistencyError(RuntimeError):
    """An induced configuration violated a provable structural fact."""


@dataclass(frozen=True)
class SectionPlane:
    """A cutting plane with the coordinate eliminated by substitution.

    ``pivot`` is the eliminated coordinate; the plane's lines live in the
    projective plane with coordinates ``ambient_coords`` (ascending).
    """

    coeffs: PlaneP3
    pivot: int
    ambient_coords: tuple[int, int, int]

    @classmethod
    def from_plane(cls, h: PlaneP3, pivot: int | None = None) -> SectionPlane:
        if pivot is None:
            pivot = next(i for i, c in enumerate(h) if c)
        elif not h[pivot]:
            raise ValueError(f"coefficient of x{pivot} is zero; cannot eliminate it")
        ambient = tuple(i for i in range(4) if i != pivot)
        return cls(h, pivot, ambient)  # type: ignore[arg-type]

    def image(self, plane: PlaneP3) -> LineP2 | None:
        """Line cut on this plane by another plane, in ambient coordinates.

        None when the two planes coincide.
        """
        c = self.coeffs
        p = self.pivot
        cp, vp = c[p], plane[p]
        if vp:
            coords = [cp * plane[q] - vp * c[q] for q in self.ambient_coords]
        else:
            coords = [plane[q] for q in self.ambient_coords]
        if not any(coords):
            return None
        return LineP2._from_normalized(_normalize(coords))

    def lift(self, point: ProjPoint) -> ProjPoint:
        """The point of projective 3-space on this plane with the given ambient coordinates."""
        c = self.coeffs
        s = -inv(c[self.pivot])
        xp = None
        for q, x in zip(self.ambient_coords, point):
            if c[q] and x:
                term = c[q] * x
                xp = term if xp is None else xp + term
        coords: list[FieldElem] = [point[0].field.zero()] * 4
        coords[self.pivot] = xp * s if xp is not None else point[0].field.zero()
        for q, x in zip(self.ambient_coords, point):
            coords[q] = x
        return ProjPoint._from_normalized(_normalize(coords))

    def project(self, point: ProjPoint) -> ProjPoint:
        """Ambient coordinates of a point of projective 3-space lying on this plane."""
        return ProjPoint._from_normalized(_normalize([point[q] for q in self.ambient_coords]))


Block = tuple[tuple[LineP2, int], ...]


def _sorted_block(counter: Counter) -> Block:
    return tuple(sorted(counter.items(), key=lambda lm: lm[0].sort_key()))


@dataclass
class InducedMultinet:
    """The multinet cut on a plane by Q_n, after cancelling fixed components."""

    n: int
    d: int
    blocks: tuple[Block, Block, Block]
    fixed_components: tuple[LineP2, ...]
    raw_blocks: tuple[Block, Block, Block]
    provenance: SectionPlane
    plane_images: tuple[LineP2, ...] = field(repr=False)
    qn: QnArrangement = field(repr=False)

    @property
    def field(self):
        return self.qn.field

    @cached_property
    def multinet(self) -> Multinet:
        return Multinet(field=self.qn.field, d=self.d, blocks=self.blocks)

    @cached_property
    def raw_multinet(self) -> Multinet:
        return Multinet(field=self.qn.field, d=2 * self.n, blocks=self.raw_blocks)

    def half_block_images(self, block: int, half: int) -> list[LineP2]:
        return [self.plane_images[p.index] for p in self.qn.half_block(block, half)]


def restrict(qn: QnArrangement, h: PlaneP3, pivot: int | None = None) -> InducedMultinet:
    """Cut Q_n by h, aggregate multiplicities and cancel fixed components."""
    if h.field != qn.field:
        raise ValueError("plane and arrangement live over different fields")
    if h in qn:
        raise PlaneInQnError(f"{h} is a plane of Q_{qn.n}")
    sec = SectionPlane.from_plane(h, pivot)
    images: list[LineP2] = []
    raw: list[Counter] = [Counter(), Counter(), Counter()]
    for p in qn.planes:
        line = sec.image(p.plane)
        if line is None:
            raise PlaneInQnError(f"{h} coincides with {p.label()}")
        images.append(line)
        raw[p.block][line] += 1

    seen = Counter(line for b in raw for line in b)
    fixed = sorted((line for line, k in seen.items() if k == 3), key=lambda l: l.sort_key())
    partial = [line for line, k in seen.items() if k == 2]
    if partial:
        raise SectionConsistencyError(f"line {partial[0]} occurs in exactly two blocks")

    cancelled = [Counter(b) for b in raw]
    for line in fixed:
        for b in cancelled:
            b[line] -= 1
            if b[line] == 0:
                del b[line]
    d = 2 * qn.n - len(fixed)
    for i, b in enumerate(cancelled):
        total = sum(b.values())
        if total != d:
            raise SectionConsistencyError(f"block {i} has degree {total}, expected {d}")
    return InducedMultinet(
        n=qn.n,
        d=d,
        blocks=tuple(_sorted_block(b) for b in cancelled),  # type: ignore[arg-type]
        fixed_components=tuple(fixed),
        raw_blocks=tuple(_sorted_block(b) for b in raw),  # type: ignore[arg-type]
        provenance=sec,
        plane_images=tuple(images),
        qn=qn,
    )


def fixed_component_count(m: InducedMultinet) -> int:
    k = len(m.fixed_components)
    if k > 2:
        raise SectionConsistencyError(f"{k} fixed components found; at most 2 are possible")
    return k
