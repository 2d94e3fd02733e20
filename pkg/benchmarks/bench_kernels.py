"""Time each kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each row reports the best of N runs after one warm-up call (which absorbs
JIT compilation) and checks that both backends return the same integers.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kloomo import kernels
from kloomo.codes import build_code
from kloomo.field import make_field
from kloomo.ortho import Group, GroupId


def cases(quick: bool):
    r_k = 8 if quick else 11
    f_k = make_field(r_k)
    a_all = np.arange(1, f_k.q)
    yield f"kloosterman table, q=2^{r_k}", lambda b: kernels.kloosterman_values(f_k, a_all, backend=b)

    f_m = make_field(4 if quick else 5)
    a_m = np.arange(1, f_m.q)
    yield f"K_3 table, q={f_m.q}", lambda b: kernels.kloosterman_m_values(f_m, 3, a_m, backend=b)

    coords = build_code(GroupId(Group.SO2MINUS, make_field(4))).coordinates()
    if not quick:
        coords = np.concatenate([coords, coords[:5]])
    yield f"codeword scan, N={coords.size}", lambda b: kernels.weight_scan(coords, backend=b)

    f_s = make_field(4 if quick else 5)
    yield f"zero-sum 4-tuples, q={f_s.q}", lambda b: kernels.salie_count(f_s, 4, backend=b)

    f_i = make_field(1)
    yield "4x4 isometry scan, q=2", lambda b: kernels.isometry_scan(f_i, 2, 1, backend=b)


def best_of(fn, repeat: int) -> float:
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    names = sorted(kernels.backends())
    print(f"{'kernel':<32}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, run in cases(args.quick):
        outs = [np.asarray(run(n)) for n in names]
        if not all(np.array_equal(outs[0], o) for o in outs[1:]):
            raise SystemExit(f"backends disagree on {label}")
        secs = {n: best_of(lambda n=n: run(n), args.repeat) for n in names}
        speed = secs["numpy"] / secs["numba"] if "numba" in secs and secs["numba"] > 0 else float("nan")
        print(f"{label:<32}" + "".join(f"{secs[n]:>11.4f}s" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
