"""Backend selection for the exhaustive-summation kernels.

Numba-compiled kernels are used when numba imports and ``KLOOMO_DISABLE_JIT``
is unset (or ``0``). Otherwise the pure-numpy kernels run. Both backends
return identical integers; the wrappers here add chunking across ``jobs``
worker threads and always merge in a fixed order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from types import ModuleType

import numpy as np

from . import _kernels_numpy

_FLAG = "KLOOMO_DISABLE_JIT"


def _load_numba() -> ModuleType | None:
    if os.environ.get(_FLAG, "0").strip().lower() not in ("", "0", "false", "no"):
        return None
    try:
        from . import _kernels_numba
    except ImportError:
        return None
    return _kernels_numba


_numba = _load_numba()
BACKEND = "numba" if _numba is not None else "numpy"


def backends() -> dict[str, ModuleType]:
    """Every importable backend, keyed by name (for tests and benchmarks)."""
    out = {"numpy": _kernels_numpy}
    if _numba is not None:
        out["numba"] = _numba
    else:
        try:
            from . import _kernels_numba
            out["numba"] = _kernels_numba
        except ImportError:
            pass
    return out


def get(backend: str | None = None) -> ModuleType:
    if backend is None:
        return _numba if _numba is not None else _kernels_numpy
    return backends()[backend]


def _split(n: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, n))
    bounds = np.linspace(0, n, jobs + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def _map_chunks(fn, chunks, jobs):
    if jobs <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, chunks))


def kloosterman_values(ctx, a_vals, *, jobs: int = 1, backend: str | None = None) -> np.ndarray:
    impl = get(backend)
    a_vals = np.ascontiguousarray(a_vals, dtype=np.int64)
    exp, log, trace = ctx.exp_table, ctx.log_table, ctx.trace_table
    parts = _map_chunks(
        lambda c: impl.kloosterman_batch(a_vals[c[0]:c[1]], exp, log, trace),
        _split(a_vals.shape[0], jobs), jobs)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def kloosterman_m_values(ctx, m: int, a_vals, *, jobs: int = 1,
                         backend: str | None = None) -> np.ndarray:
    impl = get(backend)
    a_vals = np.ascontiguousarray(a_vals, dtype=np.int64)
    exp, log, trace = ctx.exp_table, ctx.log_table, ctx.trace_table
    parts = _map_chunks(
        lambda c: impl.kloosterman_m_batch(m, a_vals[c[0]:c[1]], exp, log, trace),
        _split(a_vals.shape[0], jobs), jobs)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def weight_scan(coords, *, jobs: int = 1, backend: str | None = None) -> np.ndarray:
    """Weight tally of all 0/1 vectors u with XOR of the selected coords equal to 0.

    The top ``log2(jobs)`` coordinates are fixed per chunk so workers scan
    disjoint halves, quarters, ... of the space.
    """
    impl = get(backend)
    coords = np.ascontiguousarray(coords, dtype=np.int64)
    n = coords.shape[0]
    split_bits = 0
    while (1 << (split_bits + 1)) <= jobs and split_bits < n:
        split_bits += 1
    low, high = coords[:n - split_bits], coords[n - split_bits:]

    def run(prefix: int) -> np.ndarray:
        s, w = 0, 0
        for i in range(split_bits):
            if prefix >> i & 1:
                s ^= int(high[i])
                w += 1
        return impl.weight_scan(low, s, w, n + 1)

    parts = _map_chunks(run, list(range(1 << split_bits)), jobs)
    return np.sum(parts, axis=0).astype(np.int64)


def salie_count(ctx, h: int, *, backend: str | None = None) -> int:
    return int(get(backend).salie_count(h, ctx.exp_table, ctx.log_table))


def isometry_scan(ctx, n: int, a: int, *, backend: str | None = None) -> np.ndarray:
    return get(backend).isometry_scan(n, ctx.mul_table, a)
