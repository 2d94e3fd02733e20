"""Kloosterman-type character sums over GF(2^r).

All values are exact integers. Single sums go through the compiled kernels;
moments are assembled from the value profile with Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import budget, kernels
from .errors import InvariantViolation, NotIrreducible, RangeError, ZeroParameter
from .field import Felt, FieldCtx, mul_vec

KGL_MAX_T = 16


def _nonzero(a: Felt, what: str = "a") -> None:
    if a == 0:
        raise ZeroParameter(f"{what} must be a nonzero field element")


def kloosterman(ctx: FieldCtx, a: Felt) -> int:
    """K(a) = sum over nonzero alpha of lambda(alpha + a/alpha)."""
    _nonzero(a)
    return int(kernels.kloosterman_values(ctx, [a])[0])


def kloosterman_m(ctx: FieldCtx, m: int, a: Felt) -> int:
    """m-dimensional Kloosterman sum by direct enumeration of (F_q^*)^m."""
    _nonzero(a)
    if m < 1:
        raise RangeError("m must be positive")
    budget.require((ctx.q - 1) ** m, f"K_{m} over GF({ctx.q})")
    return int(kernels.kloosterman_m_values(ctx, m, [a])[0])


def carlitz_k2(ctx: FieldCtx, a: Felt) -> int:
    """K_2(a) via Carlitz: K(a)^2 - q."""
    return kloosterman(ctx, a) ** 2 - ctx.q


# --- Kloosterman sums for GL(t, q) -------------------------------------------

def kgl_from_k(k: int, q: int, t: int) -> int:
    if not 0 <= t <= KGL_MAX_T:
        raise RangeError(f"t must lie in 0..{KGL_MAX_T}")
    prev, cur = 1, k
    if t == 0:
        return prev
    for s in range(2, t + 1):
        prev, cur = cur, q ** (s - 1) * cur * k + q ** (2 * s - 2) * (q ** (s - 1) - 1) * prev
    return cur


def _chain_sum(q: int, l: int, t: int) -> int:
    # sum over 2l-1 <= j_{l-1} <= ... <= j_1 <= t+1 of prod (q^(j_v - 2v) - 1)
    @lru_cache(maxsize=None)
    def rest(v: int, upper: int) -> int:
        if v == l:
            return 1
        return sum((q ** (j - 2 * v) - 1) * rest(v + 1, j)
                   for j in range(2 * l - 1, upper + 1))
    return rest(1, t + 1)


def kgl_closed_from_k(k: int, q: int, t: int) -> int:
    if not 1 <= t <= KGL_MAX_T:
        raise RangeError(f"t must lie in 1..{KGL_MAX_T}")
    total = 0
    base = (t - 2) * (t + 1) // 2
    for l in range(1, (t + 2) // 2 + 1):
        total += q ** (base + l) * k ** (t + 2 - 2 * l) * _chain_sum(q, l, t)
    return total


def kgl(ctx: FieldCtx, t: int, a: Felt) -> int:
    """K_GL(t,q)(lambda; a) by the three-term recursion in t."""
    _nonzero(a)
    return kgl_from_k(kloosterman(ctx, a), ctx.q, t)


def kgl_closed(ctx: FieldCtx, t: int, a: Felt) -> int:
    """K_GL(t,q)(lambda; a) from the closed double-sum expression."""
    _nonzero(a)
    return kgl_closed_from_k(kloosterman(ctx, a), ctx.q, t)


# --- full tables and value profiles --------------------------------------------

@dataclass(frozen=True)
class KloostermanTable:
    ctx: FieldCtx
    values: np.ndarray  # values[a - 1] = K(a)

    def __getitem__(self, a: Felt) -> int:
        _nonzero(a)
        return int(self.values[a - 1])

    def items(self):
        return ((a, int(v)) for a, v in enumerate(self.values, start=1))


def kloosterman_table(ctx: FieldCtx, *, jobs: int = 1) -> KloostermanTable:
    """K(a) for every nonzero a, memoized on the field context."""
    def build():
        budget.require((ctx.q - 1) ** 2, f"Kloosterman table over GF({ctx.q})")
        vals = kernels.kloosterman_values(ctx, np.arange(1, ctx.q), jobs=jobs)
        vals.setflags(write=False)
        return KloostermanTable(ctx, vals)
    return ctx._cached("kloosterman_table", build)


def admissible_values(q: int) -> list[int]:
    """Integers t with t^2 < 4q and t = -1 mod 4, ascending."""
    out = []
    t = -1
    while t * t < 4 * q:
        t -= 4
    t += 4
    while t * t < 4 * q:
        out.append(t)
        t += 4
    return out


@dataclass(frozen=True)
class ValueProfile:
    q: int
    multiplicities: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.multiplicities.values())

    def check_range(self) -> None:
        """Raise unless the keys are exactly the admissible values (needs q >= 4)."""
        keys = set(self.multiplicities)
        expected = set(admissible_values(self.q))
        if keys != expected:
            raise InvariantViolation(
                f"Kloosterman values {sorted(keys)} differ from the admissible set {sorted(expected)}")


def value_profile(ctx: FieldCtx, *, jobs: int = 1, check: bool = True) -> ValueProfile:
    vals = kloosterman_table(ctx, jobs=jobs).values
    keys, counts = np.unique(vals, return_counts=True)
    prof = ValueProfile(ctx.q, {int(k): int(c) for k, c in zip(keys, counts)})
    if check and ctx.r >= 2:
        prof.check_range()
    return prof


def moment_direct(ctx: FieldCtx, m: int, h: int, *, jobs: int = 1) -> int:
    """Sum over nonzero a of K_m(a)^h, with K_2 taken from Carlitz's identity."""
    if m not in (1, 2):
        raise RangeError("moment_direct supports m in {1, 2}")
    if h < 0:
        raise RangeError("h must be nonnegative")
    prof = value_profile(ctx, jobs=jobs, check=False)
    shift = 0 if m == 1 else ctx.q
    power = 1 if m == 1 else 2
    return sum(c * (t ** power - shift) ** h for t, c in prof.multiplicities.items())


# --- identities -----------------------------------------------------------------

def convolution_identity_sides(ctx: FieldCtx, m: int, beta: Felt) -> tuple[int, int]:
    """Both sides of sum_a lambda(a*beta) K_m(a) = q K_{m-1}(1/beta) + (-1)^(m+1)."""
    if m < 1:
        raise RangeError("m must be positive")
    q = ctx.q
    budget.require((q - 1) ** (m + 1), f"convolution identity at m={m}")
    a_vals = np.arange(1, q, dtype=np.int64)
    k_m = kernels.kloosterman_m_values(ctx, m, a_vals)
    chars = np.array([ctx.character(ctx.mul(int(a), beta)) for a in a_vals], dtype=np.int64)
    lhs = int((chars * k_m).sum())
    sign = 1 if m % 2 == 1 else -1
    if beta == 0:
        return lhs, sign
    binv = ctx.inv(beta)
    lower = ctx.character(binv) if m == 1 else kloosterman_m(ctx, m - 1, binv)
    return lhs, q * lower + sign


def convolution_identity_check(ctx: FieldCtx, m: int, beta: Felt) -> bool:
    lhs, rhs = convolution_identity_sides(ctx, m, beta)
    return lhs == rhs


def artin_schreier_sums(ctx: FieldCtx, beta: Felt, b: Felt) -> dict[str, tuple[int, int]]:
    """(computed, expected) for the two Artin-Schreier character-sum identities."""
    _nonzero(beta, "beta")
    if ctx.trace(b) != 1:
        raise NotIrreducible(f"z^2 + z + {b:#x} is reducible (trace of b is 0)")
    q = ctx.q
    inv = ctx.inv_table
    xs = np.arange(q, dtype=np.int64)
    sq = np.array([ctx.mul(int(x), int(x)) for x in xs], dtype=np.int64)
    k = kloosterman(ctx, beta)
    den_a = (sq ^ xs)[2:]
    sum_a = int((1 - 2 * ctx.trace_table[mul_vec(ctx, inv[den_a], beta)].astype(np.int64)).sum())
    den_b = sq ^ xs ^ b
    sum_b = int((1 - 2 * ctx.trace_table[mul_vec(ctx, inv[den_b], beta)].astype(np.int64)).sum())
    return {"a": (sum_a, k - 1), "b": (sum_b, -k - 1)}


def artin_schreier_sums_check(ctx: FieldCtx, beta: Felt, b: Felt) -> bool:
    return all(got == want for got, want in artin_schreier_sums(ctx, beta, b).values())
