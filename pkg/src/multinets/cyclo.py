"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi-1) reduced modulo the
N-th cyclotomic polynomial, as an integer numerator vector over one positive
common denominator.  That representation is unique, so equality and hashing
are plain tuple comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

__all__ = [
    "FieldSpec",
    "FieldElem",
    "FieldMismatch",
    "ParseError",
    "make_field",
    "cyclotomic_polynomial",
    "parse_elem",
    "add",
    "mul",
    "neg",
    "inv",
    "root_of_unity_exponent",
]

Scalar = Union[int, Fraction, "FieldElem"]


class FieldMismatch(ValueError):
    """Raised when elements of different cyclotomic fields are combined."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (ascending coefficients), den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N in ascending order, via z^N - 1 = prod_{d|N} Phi_d."""
    if N < 1:
        raise ValueError("conductor must be a positive integer")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The working field Q(zeta_N)."""

    N: int
    phi: int
    poly: tuple[int, ...] = dc_field(repr=False)
    # zeta^k reduced modulo Phi_N for 0 <= k < max(N, 2*phi - 1)
    power_table: tuple[tuple[int, ...], ...] = dc_field(repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other.N == self.N

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.N))

    def __reduce__(self):
        return (make_field, (self.N,))

    # convenience constructors
    def zero(self) -> FieldElem:
        return FieldElem._raw(self, (0,) * self.phi, 1)

    def one(self) -> FieldElem:
        return self.elem(1)

    def elem(self, value: Scalar | str) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"element of Q(zeta_{value.field.N}) used in Q(zeta_{self.N})")
            return value
        if isinstance(value, str):
            return parse_elem(value, self)
        q = Fraction(value)
        nums = [0] * self.phi
        nums[0] = q.numerator
        return FieldElem._make(self, nums, q.denominator)

    def from_ints(self, nums: Iterable[int], den: int = 1) -> FieldElem:
        nums = list(nums)
        if len(nums) != self.phi:
            raise ValueError(f"expected {self.phi} coefficients, got {len(nums)}")
        return FieldElem._make(self, nums, den)

    def zeta(self, k: int = 1) -> FieldElem:
        """zeta_N^k for any integer k."""
        return FieldElem._raw(self, self.power_table[k % self.N], 1)

    def root(self, m: int, e: int = 1) -> FieldElem:
        """zeta_m^e where zeta_m = zeta_N^(N/m); m must divide N."""
        if m < 1 or self.N % m:
            raise ValueError(f"{m} does not divide the conductor {self.N}")
        return self.zeta((self.N // m) * e)


@lru_cache(maxsize=None)
def make_field(N: int) -> FieldSpec:
    if not isinstance(N, int) or N < 1:
        raise ValueError("conductor N must be a positive integer")
    poly = cyclotomic_polynomial(N)
    phi = len(poly) - 1
    size = max(N, 2 * phi - 1)
    table = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(size):
        table.append(tuple(cur))
        # multiply by z and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, poly[:-1])]
    return FieldSpec(N=N, phi=phi, poly=poly, power_table=tuple(table))


class FieldElem:
    """An element of Q(zeta_N) in canonical form.

    ``num`` holds integer numerators and ``den`` the positive common
    denominator, with gcd(num..., den) == 1.
    """

    __slots__ = ("field", "num", "den", "_hash")

    field: FieldSpec
    num: tuple[int, ...]
    den: int

    def __init__(self, field: FieldSpec, coeffs: Iterable[Scalar]):
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != field.phi:
            raise ValueError(f"expected {field.phi} coefficients, got {len(fr)}")
        den = 1
        for q in fr:
            den = den * q.denominator // gcd(den, q.denominator)
        nums = [q.numerator * (den // q.denominator) for q in fr]
        self._set(field, nums, den)

    def _set(self, field: FieldSpec, nums: list[int], den: int) -> None:
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = den
        for c in nums:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(nums):
            den = 1
        elif g != 1:
            nums = [c // g for c in nums]
            den //= g
        self.field = field
        self.num = tuple(nums)
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, field: FieldSpec, nums: list[int], den: int) -> FieldElem:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        obj = cls.__new__(cls)
        obj._set(field, nums, den)
        return obj

    @classmethod
    def _raw(cls, field: FieldSpec, nums: tuple[int, ...], den: int) -> FieldElem:
        obj = cls.__new__(cls)
        obj.field = field
        obj.num = nums
        obj.den = den
        obj._hash = None
        return obj

    # ---- views -------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def sort_key(self) -> tuple:
        return self.coeffs

    def __bool__(self) -> bool:
        return any(self.num)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.N, self.num, self.den))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            return other.field.N == self.field.N and other.num == self.num and other.den == self.den
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return (
                self.num[0] == q.numerator
                and self.den == q.denominator
                and not any(self.num[1:])
            )
        return NotImplemented

    def __repr__(self) -> str:
        return f"FieldElem(N={self.field.N}, {str(self)!r})"

    def __str__(self) -> str:
        return format_elem(self)

    # ---- arithmetic ----------------------------------------------------------
    def _coerce(self, other: Scalar) -> FieldElem | None:
        if isinstance(other, FieldElem):
            if other.field.N != self.field.N:
                raise FieldMismatch(
                    f"cannot combine elements of Q(zeta_{self.field.N}) and Q(zeta_{other.field.N})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elem(other)
        return None

    def __add__(self, other: Scalar) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElem._make(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return FieldElem._make(
            self.field,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem._raw(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other: Scalar) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalar) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem._make(self.field, _polymulmod(self.num, o.num, self.field.poly), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * inv(o)

    def __rtruediv__(self, other: Scalar) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * inv(self)

    def __pow__(self, e: int) -> FieldElem:
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else inv(self)
        e = abs(e)
        result = self.field.one()
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def _polymulmod(a: tuple[int, ...], b: tuple[int, ...], poly: tuple[int, ...]) -> list[int]:
    phi = len(a)
    prod = [0] * (2 * phi - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(2 * phi - 2, phi - 1, -1):
        c = prod[k]
        if c:
            base = k - phi
            for i in range(phi):
                prod[base + i] -= c * poly[i]
    return prod[:phi]


# ---- free-function surface ---------------------------------------------------

def _same_field(a: FieldElem, b: FieldElem) -> None:
    if a.field.N != b.field.N:
        raise FieldMismatch(f"Q(zeta_{a.field.N}) vs Q(zeta_{b.field.N})")


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    _same_field(a, b)
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _same_field(a, b)
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def _fpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _fpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        _fpoly_trim(a)
    return _fpoly_trim(q), a


def _fpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _fpoly_trim([Fraction(c) for c in out])


def _fpoly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _fpoly_trim(out)


@lru_cache(maxsize=65536)
def inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse via the extended Euclidean algorithm over Q."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero field element")
    f = a.field
    if a.is_rational():
        return f.elem(Fraction(a.den, a.num[0]))
    # invariant: s_i * a == r_i (mod Phi_N)
    r0 = [Fraction(c) for c in f.poly]
    r1 = _fpoly_trim([Fraction(c, a.den) for c in a.num])
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while len(r1) > 1:
        q, r = _fpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
    c = r1[0]
    coeffs = [x / c for x in s1]
    coeffs += [Fraction(0)] * (f.phi - len(coeffs))
    # s1 has degree < phi because deg a < phi
    return FieldElem(f, coeffs[: f.phi])


def root_of_unity_exponent(a: FieldElem, m: int) -> int | None:
    """Return e in [0, m) with a == zeta_m^e, or None if a is not such a root."""
    if m < 1:
        raise ValueError("order m must be positive")
    f = a.field
    if f.N % m:
        raise ValueError(f"{m} does not divide the conductor {f.N}")
    if a.den != 1:
        return None
    step = f.N // m
    for e in range(m):
        if f.power_table[e * step] == a.num:
            return e
    return None


# ---- printing ---------------------------------------------------------------

def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_elem(a: FieldElem) -> str:
    """Canonical text: monomials q*z^k by ascending k, '0' for zero."""
    parts: list[str] = []
    for k, q in enumerate(a.coeffs):
        if q == 0:
            continue
        sign = "-" if q < 0 else "+"
        mag = abs(q)
        if k == 0:
            body = _fmt_q(mag)
        else:
            mono = "z" if k == 1 else f"z^{k}"
            body = mono if mag == 1 else f"{_fmt_q(mag)}*{mono}"
        if not parts:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


# ---- parsing ----------------------------------------------------------------

class _Parser:
    """Recursive descent over the expression grammar.

    expr   := term {("+"|"-") term}
    term   := unary {("*"|"/") unary}
    unary  := "-" unary | power
    power  := atom ["^" uint]
    atom   := uint | "z" | "(" expr ")"
    """

    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _error(self, msg: str) -> ParseError:
        return ParseError(msg, self.text, self.pos)

    def _uint(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self._error("expected unsigned integer")
        return int(self.text[start : self.pos])

    def parse(self) -> FieldElem:
        if not self.text.strip():
            raise self._error("empty expression")
        value = self.expr()
        if self._peek():
            raise self._error(f"unexpected character {self._peek()!r}")
        return value

    def expr(self) -> FieldElem:
        value = self.term()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FieldElem:
        value = self.unary()
        while self._peek() in ("*", "/"):
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, at)
                value = value / rhs
        return value

    def unary(self) -> FieldElem:
        if self._peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.power()

    def power(self) -> FieldElem:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            return base ** self._uint()
        return base

    def atom(self) -> FieldElem:
        ch = self._peek()
        if ch == "z":
            self.pos += 1
            return self.field.zeta(1)
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self._peek() != ")":
                raise self._error("expected ')'")
            self.pos += 1
            return value
        if ch.isdigit():
            return self.field.elem(self._uint())
        if not ch:
            raise self._error("unexpected end of expression")
        raise self._error(f"unexpected character {ch!r}")


def parse_elem(text: str, field: FieldSpec) -> FieldElem:
    """Parse an expression in z (= zeta_N) with rational coefficients."""
    return _Parser(text, field).parse()
