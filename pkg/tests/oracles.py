"""Independent oracles: sympy for exact polynomial arithmetic, mpmath for complex embeddings."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy

mpmath.mp.dps = 60
_z = sympy.Symbol("z")


def cyclotomic_coeffs(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, constant term first."""
    p = sympy.Poly(sympy.cyclotomic_poly(N, _z), _z)
    return tuple(int(c) for c in reversed(p.all_coeffs()))


def _poly(coeffs) -> sympy.Poly:
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * _z**i for i, c in enumerate(coeffs)), _z, domain="QQ")


def reduce_coeffs(coeffs, N: int) -> list[Fraction]:
    phi = sympy.totient(N)
    r = _poly(coeffs).rem(sympy.Poly(sympy.cyclotomic_poly(N, _z), _z, domain="QQ"))
    out = [Fraction(0)] * int(phi)
    for (e,), c in r.terms():
        out[e] = Fraction(int(c.p), int(c.q))
    return out


def mul_coeffs(a, b, N: int) -> list[Fraction]:
    prod = _poly(a) * _poly(b)
    coeffs = [Fraction(0)] * max(prod.degree() + 1, 1) if not prod.is_zero else [Fraction(0)]
    for (e,), c in prod.terms():
        coeffs[e] = Fraction(int(c.p), int(c.q))
    return reduce_coeffs(coeffs, N)


def embed(x, N: int) -> mpmath.mpc:
    """Value of a field element under zeta_N -> exp(2 pi i / N)."""
    w = mpmath.exp(2j * mpmath.pi / N)
    return sum(mpmath.mpf(c.numerator) / c.denominator * w**i for i, c in enumerate(x.coeffs))


def root(n: int, e: int) -> mpmath.mpc:
    return mpmath.exp(2j * mpmath.pi * e / n)


def is_zero(v) -> bool:
    return abs(v) < mpmath.mpf(10) ** -40


def unit_points_on(h_values, n: int) -> list[tuple[int, int, int]]:
    """Brute force over all n^3 unit points [z^a : z^b : z^c : 1]."""
    hits = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                s = h_values[0] * root(n, a) + h_values[1] * root(n, b) + h_values[2] * root(n, c) + h_values[3]
                if is_zero(s):
                    hits.append((a, b, c))
    return hits
