"""Pure-Python kernels over Z[zeta_N].

Ring elements are integer vectors of length phi in the reduced power basis;
``poly`` is the monic cyclotomic polynomial in ascending order.  Every
function here has a twin in the compiled ``_core`` module with the same
signature and results.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _zmul(a, b, poly, phi):
    prod = [0] * (2 * phi - 1)
    for i in range(phi):
        x = a[i]
        if x:
            for j in range(phi):
                y = b[j]
                if y:
                    prod[i + j] += x * y
    for k in range(2 * phi - 2, phi - 1, -1):
        c = prod[k]
        if c:
            base = k - phi
            for i in range(phi):
                prod[base + i] -= c * poly[i]
    return prod[:phi]


def _zsub(a, b):
    return [x - y for x, y in zip(a, b)]


def _zadd3(a, b, c):
    return [x + y + z for x, y, z in zip(a, b, c)]


def _cross(u, v, poly, phi):
    return (
        _zsub(_zmul(u[1], v[2], poly, phi), _zmul(u[2], v[1], poly, phi)),
        _zsub(_zmul(u[2], v[0], poly, phi), _zmul(u[0], v[2], poly, phi)),
        _zsub(_zmul(u[0], v[1], poly, phi), _zmul(u[1], v[0], poly, phi)),
    )


def _is_zero_dot(l, p, poly, phi):
    s = _zadd3(_zmul(l[0], p[0], poly, phi), _zmul(l[1], p[1], poly, phi), _zmul(l[2], p[2], poly, phi))
    return not any(s)


def unit_hits(table):
    """Exponent triples (a, b, c) with T0[a] + T1[b] + T2[c] + T3[0] == 0.

    ``table`` has shape (4, n, phi): row i, column e holds h_i * zeta_n^e.
    """
    t = np.asarray(table).tolist()
    n = len(t[0])
    t0, t1, t2, t3 = t
    hits = []
    last = t3[0]
    for a in range(n):
        ra = [x + y for x, y in zip(t0[a], last)]
        for b in range(n):
            rab = [x + y for x, y in zip(ra, t1[b])]
            for c in range(n):
                if all(x + y == 0 for x, y in zip(rab, t2[c])):
                    hits.append((a, b, c))
    return hits


def meet_incidence(lines, poly):
    """Incidence of every pairwise meet with every line.

    ``lines`` has shape (L, 3, phi).  Returns ``(pairs, valid, inc)`` where
    ``pairs`` lists (i, j) for i < j in lexicographic order, ``valid[p]`` is 0
    when the two lines coincide projectively, and ``inc[p, l]`` is 1 when
    line ``l`` passes through the meet of pair ``p``.
    """
    ls = np.asarray(lines).tolist()
    poly = [int(c) for c in poly]
    phi = len(poly) - 1
    L = len(ls)
    P = L * (L - 1) // 2
    pairs = np.zeros((P, 2), dtype=np.int64)
    valid = np.zeros(P, dtype=np.uint8)
    inc = np.zeros((P, L), dtype=np.uint8)
    p = 0
    for i in range(L):
        for j in range(i + 1, L):
            pairs[p, 0] = i
            pairs[p, 1] = j
            pt = _cross(ls[i], ls[j], poly, phi)
            if any(any(c) for c in pt):
                valid[p] = 1
                row = inc[p]
                for l in range(L):
                    if l == i or l == j or _is_zero_dot(ls[l], pt, poly, phi):
                        row[l] = 1
            p += 1
    return pairs, valid, inc


def _det3_exps(rows, cols, N, g, sign):
    # accumulate sign * det of the 3x3 exponent matrix into group ring g
    r0, r1, r2 = rows
    c0, c1, c2 = cols
    for (x, y, z), s in (
        ((c0, c1, c2), 1),
        ((c1, c2, c0), 1),
        ((c2, c0, c1), 1),
        ((c0, c2, c1), -1),
        ((c1, c0, c2), -1),
        ((c2, c1, c0), -1),
    ):
        g[(r0[x] + r1[y] + r2[z]) % N] += sign * s


def triple_plane(n, N, j, k):
    """Group-ring coefficients (4 x N) of the plane through [1:1:1:1] and unit points j, k."""
    s = N // n
    rows = []
    for idx in (0, j, k):
        a, rem = divmod(idx, n * n)
        b, c = divmod(rem, n)
        rows.append((a * s % N, b * s % N, c * s % N, 0))
    out = []
    for i in range(4):
        cols = [c for c in range(4) if c != i]
        g = [0] * N
        _det3_exps(rows, cols, N, g, -1 if i % 2 else 1)
        out.append(g)
    return out


def triple_scan(n, N, poly, power_table, budget):
    """Count unit points on the plane through [1:1:1:1] and each pair j < k.

    Pairs are enumerated lexicographically over unit-point indices
    idx = a*n^2 + b*n + c, skipping index 0; at most ``budget`` pairs are
    examined.  Count -1 marks a dependent triple.
    """
    pt = np.asarray(power_table).tolist()
    poly = [int(c) for c in poly]
    phi = len(poly) - 1
    s = N // n
    m = n ** 3
    total = (m - 1) * (m - 2) // 2
    P = min(total, budget)
    pairs = np.zeros((P, 2), dtype=np.int64)
    counts = np.zeros(P, dtype=np.int64)
    p = 0
    for j in range(1, m):
        if p >= P:
            break
        for k in range(j + 1, m):
            if p >= P:
                break
            g = triple_plane(n, N, j, k)
            pairs[p, 0] = j
            pairs[p, 1] = k
            reduced = []
            for gi in g:
                v = [0] * phi
                for t, c in enumerate(gi):
                    if c:
                        row = pt[t]
                        for q in range(phi):
                            v[q] += c * row[q]
                reduced.append(v)
            if not any(any(v) for v in reduced):
                counts[p] = -1
                p += 1
                continue
            table = []
            for gi in g:
                col = []
                for e in range(n):
                    v = [0] * phi
                    shift = s * e
                    for t, c in enumerate(gi):
                        if c:
                            row = pt[(t + shift) % N]
                            for q in range(phi):
                                v[q] += c * row[q]
                    col.append(v)
                table.append(col)
            counts[p] = len(unit_hits(table))
            p += 1
    return pairs, counts
