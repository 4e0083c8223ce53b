"""Compare the compiled kernels with their pure-Python twins on realistic inputs."""

from __future__ import annotations

import argparse
import time

import numpy as np

from multinets import kernels
from multinets.cyclo import make_field, parse_elem
from multinets.projgeo import PlaneP3, int_array, to_int_rows
from multinets.qn import build_qn
from multinets.section import restrict


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(n: int):
    q = build_qn(n, make_field(n))
    f = q.field
    h = PlaneP3([parse_elem(c, f) for c in ("1", "-(z+1)", "-z^3", "z^3+z")]) if n == 8 else PlaneP3([1, 2, 3, 5], field=f)
    flat = [h[i] * q.zeta(e) for i in range(4) for e in range(n)]
    (ints,) = to_int_rows([flat])
    table = np.array(ints, dtype=object).reshape(4, n, f.phi)
    lines = int_array([l for b in restrict(q, h).blocks for l, _ in b])
    poly = np.asarray(f.poly, dtype=np.int64)
    pt = np.asarray(f.power_table, dtype=np.int64)
    return {
        "unit_hits": (
            lambda: kernels.python.unit_hits(table),
            lambda: kernels.compiled.unit_hits(np.asarray(table, dtype=np.int64)),
        ),
        "meet_incidence": (
            lambda: kernels.python.meet_incidence(lines, f.poly),
            lambda: kernels.compiled.meet_incidence(np.asarray(lines, dtype=np.int64), poly),
        ),
        "triple_scan": (
            lambda: kernels.python.triple_scan(n, f.N, f.poly, f.power_table, 20_000),
            lambda: kernels.compiled.triple_scan(n, f.N, poly, pt, 20_000),
        ),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 8])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled core not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':<16}{'n':>3}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for n in args.n:
        for name, (py, c) in _cases(n).items():
            a, b = py(), c()
            same = all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b)) if isinstance(a, tuple) else a == b
            if not same:
                print(f"{name} n={n}: backends disagree")
                return 1
            tp, tc = _best(py, args.repeat), _best(c, args.repeat)
            print(f"{name:<16}{n:>3}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
