"""Exact projective linear algebra over a cyclotomic field."""

from __future__ import annotations

from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .cyclo import FieldElem, FieldSpec, Scalar, inv

__all__ = [
    "DegenerateError",
    "ProjVector",
    "ProjPoint",
    "LineP2",
    "PlaneP3",
    "LineP3",
    "rref",
    "nullspace",
    "incident",
    "plane_through",
    "meet",
    "join",
    "line_in_plane",
    "planes_meet",
    "to_int_rows",
]


class DegenerateError(ValueError):
    """Raised when a construction needs independent input and did not get it."""


def _normalize(coords: Sequence[FieldElem]) -> tuple[FieldElem, ...]:
    for i, c in enumerate(coords):
        if c:
            if c == 1:
                return tuple(coords)
            s = inv(c)
            return tuple(coords[:i]) + (c.field.one(),) + tuple(x * s for x in coords[i + 1 :])
    raise DegenerateError("the zero vector is not a projective object")


class ProjVector:
    """Nonzero vector up to scaling, normalized so its first nonzero entry is 1."""

    __slots__ = ("coords", "_hash", "__dict__")
    dims: tuple[int, ...] = ()

    def __init__(self, coords: Iterable[Scalar | str], field: FieldSpec | None = None):
        raw = list(coords)
        if field is None:
            field = next((c.field for c in raw if isinstance(c, FieldElem)), None)
            if field is None:
                raise ValueError("cannot infer the field; pass field=")
        vals = [field.elem(c) for c in raw]
        if self.dims and len(vals) not in self.dims:
            raise ValueError(f"{type(self).__name__} needs {self.dims} coordinates, got {len(vals)}")
        self.coords = _normalize(vals)
        self._hash = None

    @classmethod
    def _from_normalized(cls, coords: tuple[FieldElem, ...]):
        obj = cls.__new__(cls)
        obj.coords = coords
        obj._hash = None
        return obj

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> FieldElem:
        return self.coords[i]

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and other.coords == self.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.coords))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for c in self.coords)

    def __lt__(self, other: ProjVector) -> bool:
        return self.sort_key() < other.sort_key()

    def strings(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "[" + " : ".join(self.strings()) + "]"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.strings()})"

    @cached_property
    def int_row(self) -> list[tuple[int, ...]]:
        """Coordinates scaled to integer vectors in Z[zeta] (same projective object)."""
        return to_int_rows([self.coords])[0]


class ProjPoint(ProjVector):
    dims = (3, 4)


class LineP2(ProjVector):
    """Line a*x + b*y + c*z = 0 of the projective plane."""

    dims = (3,)


class PlaneP3(ProjVector):
    """Plane c0*x0 + c1*x1 + c2*x2 + c3*x3 = 0 of projective 3-space."""

    dims = (4,)


def to_int_rows(rows: Sequence[Sequence[FieldElem]]) -> list[list[tuple[int, ...]]]:
    """Clear denominators row by row; each row becomes a list of integer vectors."""
    out = []
    for row in rows:
        l = 1
        for c in row:
            l = l * c.den // gcd(l, c.den)
        out.append([tuple(x * (l // c.den) for x in c.num) for c in row])
    return out


def _dot(u: Sequence[FieldElem], v: Sequence[FieldElem]) -> FieldElem:
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        if a and b:
            acc = acc + a * b
    return acc


def rref(rows: Sequence[Sequence[FieldElem]]) -> tuple[list[list[FieldElem]], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [x * s for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[FieldElem]]) -> list[list[FieldElem]]:
    """Basis of the right kernel, one vector per free column."""
    field = rows[0][0].field
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


class LineP3:
    """Line of projective 3-space stored as the reduced row echelon 2 x 4 basis."""

    __slots__ = ("basis", "_hash")

    def __init__(self, points: Sequence[Sequence[FieldElem] | ProjPoint]):
        rows = [list(p.coords) if isinstance(p, ProjVector) else list(p) for p in points]
        red, _ = rref(rows)
        if len(red) != 2:
            raise DegenerateError(f"spanning set has rank {len(red)}, expected 2")
        self.basis = (ProjPoint._from_normalized(tuple(red[0])), ProjPoint._from_normalized(tuple(red[1])))
        self._hash = None

    @property
    def field(self) -> FieldSpec:
        return self.basis[0].field

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LineP3) and other.basis == self.basis

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("LineP3", self.basis))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.basis[0].sort_key(), self.basis[1].sort_key())

    def __lt__(self, other: LineP3) -> bool:
        return self.sort_key() < other.sort_key()

    def contains(self, p: ProjPoint) -> bool:
        red, _ = rref([list(self.basis[0]), list(self.basis[1]), list(p)])
        return len(red) == 2

    def __repr__(self) -> str:
        return f"LineP3({self.basis[0]}, {self.basis[1]})"


def incident(h: LineP2 | PlaneP3, p: ProjPoint) -> bool:
    if len(h) != len(p):
        raise ValueError(f"dimension mismatch: {len(h)} coefficients vs {len(p)} coordinates")
    return _dot(h.coords, p.coords).is_zero()


def plane_through(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> PlaneP3:
    for p in (p1, p2, p3):
        if len(p) != 4:
            raise ValueError("plane_through needs points of projective 3-space")
    ker = nullspace([list(p1), list(p2), list(p3)])
    if len(ker) != 1:
        raise DegenerateError("points are not projectively independent")
    return PlaneP3._from_normalized(_normalize(ker[0]))


def _cross(u: Sequence[FieldElem], v: Sequence[FieldElem]) -> list[FieldElem]:
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def meet(l1: LineP2, l2: LineP2) -> ProjPoint:
    """Intersection point of two distinct lines of the projective plane."""
    if len(l1) != 3 or len(l2) != 3:
        raise ValueError("meet needs two lines of the projective plane")
    c = _cross(l1.coords, l2.coords)
    if not any(c):
        raise DegenerateError("identical lines have no unique meet")
    return ProjPoint._from_normalized(_normalize(c))


def join(p1: ProjPoint, p2: ProjPoint) -> LineP2:
    """Line through two distinct points of the projective plane."""
    c = _cross(p1.coords, p2.coords)
    if not any(c):
        raise DegenerateError("identical points span no unique line")
    return LineP2._from_normalized(_normalize(c))


def planes_meet(h1: PlaneP3, h2: PlaneP3) -> LineP3:
    ker = nullspace([list(h1), list(h2)])
    if len(ker) != 2:
        raise DegenerateError("planes coincide")
    return LineP3(ker)


def line_in_plane(l: LineP3, h: PlaneP3) -> bool:
    return incident(h, l.basis[0]) and incident(h, l.basis[1])


def int_array(objs: Sequence[ProjVector]) -> np.ndarray:
    """Stack integer rows of projective objects into an (L, dim, phi) object array."""
    return np.array([o.int_row for o in objs], dtype=object)
