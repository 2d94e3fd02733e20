"""Power moments of Kloosterman sums from code weight distributions.

Every quantity is an exact integer. Divisions that the derivation requires
to be exact are checked and raise :class:`NonIntegralResult` otherwise.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb, factorial

from . import budget, kernels
from .codes import CodeSpec, WeightDistribution, build_code, weight_distribution
from .errors import NonIntegralResult, RangeError
from .field import FieldCtx
from .ortho import Group, GroupId

STIRLING_MAX = 256
MK_MAX_H = 64
MK2_MAX_H = 16
SALIE_MAX_H = 5

_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def stirling2(h: int, t: int) -> int:
    """Stirling number of the second kind, from S(h,t) = t S(h-1,t) + S(h-1,t-1)."""
    if not (0 <= h <= STIRLING_MAX) or t < 0:
        raise RangeError(f"stirling2 needs 0 <= h <= {STIRLING_MAX} and t >= 0")
    if t > h:
        return 0
    if h >= len(_stirling_rows):
        with _stirling_lock:
            while len(_stirling_rows) <= h:
                prev = _stirling_rows[-1]
                k = len(_stirling_rows)
                row = [0] * (k + 1)
                for s in range(1, k + 1):
                    row[s] = s * (prev[s] if s < k else 0) + prev[s - 1]
                _stirling_rows.append(row)
    return _stirling_rows[h][t]


def _exact_div(num: int, den: int, what: str) -> int:
    out, rem = divmod(num, den)
    if rem:
        raise NonIntegralResult(f"{what}: {num} is not divisible by {den}")
    return out


def pless_core(wd: WeightDistribution, length: int, h: int) -> int:
    """sum_j (-1)^j C_j sum_{t=j}^{h} t! S(h,t) 2^(h-t) binom(N-j, N-t)."""
    top = min(length, h)
    if len(wd) <= top:
        raise RangeError(f"weight distribution must cover j = 0..{top}")
    total = 0
    for j in range(top + 1):
        c = wd[j]
        if not c:
            continue
        inner = sum(factorial(t) * stirling2(h, t) * 2 ** (h - t) * comb(length - j, length - t)
                    for t in range(j, h + 1) if t <= length)
        total += (-1) ** j * c * inner
    return total


def pless_rhs(wd: WeightDistribution, length: int, h: int, r: int) -> int:
    """Right side of the binary power-moment identity for the r-dimensional dual.

    Equals sum over the q = 2^r dual codewords of weight^h. The terms
    2^(r-t) with t > r are carried over the common denominator 2^h.
    """
    return _exact_div(pless_core(wd, length, h) << r, 1 << h, f"Pless identity at h={h}")


def dual_power_sum(code: CodeSpec, h: int) -> int:
    """Oracle: sum over a in F_q of w(c(a))^h from the explicit weights."""
    from .codes import dual_weight_distribution
    return sum(c * w ** h for w, c in dual_weight_distribution(code).items())


@dataclass(frozen=True)
class MomentSeries:
    """values[h] for h = 0..H. ``kind`` is MK, MK2 or MK_EVEN (values[h] = MK^(2h))."""

    kind: str
    ctx: FieldCtx
    values: tuple[int, ...]
    method: str = ""

    @property
    def H(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, h: int) -> int:
        return self.values[h]


def _recurse(H: int, const: int, top: callable) -> list[int]:
    # values[h] = top(h) - sum_{l<h} binom(h,l) const^(h-l) values[l]
    values = [None] * (H + 1)
    for h in range(H + 1):
        if h == 0:
            values[0] = top(0)
            continue
        lower = sum(comb(h, l) * const ** (h - l) * values[l] for l in range(h))
        values[h] = top(h) - lower
    return values


def mk_recursive(ctx: FieldCtx, H: int, source: str = "G1", *, method: str = "dp") -> MomentSeries:
    """MK^h for h = 0..H from the weight distribution of C(SO-(2,q)) or C(O-(2,q))."""
    if not 0 <= H <= MK_MAX_H:
        raise RangeError(f"H must lie in 0..{MK_MAX_H}")
    kind = {"G1": Group.SO2MINUS, "G2": Group.O2MINUS}[source.upper()]
    code = build_code(GroupId(kind, ctx))
    q, n = ctx.q, code.length
    wd = weight_distribution(code, method, max_j=min(H, n))
    values = _recurse(H, q + 1, lambda h: q - 1 if h == 0 else q * pless_core(wd, n, h))
    return MomentSeries("MK", ctx, tuple(values), f"recursive-{source.lower()}-{method}")


def _so4_recursion(ctx: FieldCtx, H: int, const: int, kind: str, method: str) -> MomentSeries:
    if ctx.r < 2:
        raise RangeError("the SO-(4,q) recursion needs r >= 2")
    if not 0 <= H <= MK2_MAX_H:
        raise RangeError(f"H must lie in 0..{MK2_MAX_H}")
    q = ctx.q
    code = build_code(GroupId(Group.SO4MINUS, ctx))
    n = code.length
    wd = weight_distribution(code, method, max_j=min(H, n))

    def top(h: int) -> int:
        if h == 0:
            return q - 1
        return _exact_div(pless_core(wd, n, h), q ** (2 * h - 1), f"q^(1-2h) factor at h={h}")
    return MomentSeries(kind, ctx, tuple(_recurse(H, const, top)), f"recursive-g3-{method}")


def mk2_recursive(ctx: FieldCtx, H: int, *, method: str = "dp") -> MomentSeries:
    """Moments of the 2-dimensional Kloosterman sum from C(SO-(4,q))."""
    q = ctx.q
    return _so4_recursion(ctx, H, q ** 4 + q ** 3 - 1, "MK2", method)


def mk_even_recursive(ctx: FieldCtx, H: int, *, method: str = "dp") -> MomentSeries:
    """values[h] = MK^(2h) from C(SO-(4,q))."""
    q = ctx.q
    return _so4_recursion(ctx, H, q ** 4 + q ** 3 - q - 1, "MK_EVEN", method)


def zero_sum_tuples(ctx: FieldCtx, h: int) -> int:
    """A_h: h-tuples of nonzero elements whose sum and sum of inverses both vanish."""
    if h < 1:
        raise RangeError("h must be positive")
    budget.require((ctx.q - 1) ** max(h - 1, 0), f"A_{h} enumeration over GF({ctx.q})")
    return kernels.salie_count(ctx, h)


def salie_mk(ctx: FieldCtx, H: int) -> MomentSeries:
    """MK^h = q^2 A_h / (q-1) - (q-1)^(h-1) + 2(-1)^(h-1), with A_h enumerated."""
    if not 0 <= H <= SALIE_MAX_H:
        raise RangeError(f"H must lie in 0..{SALIE_MAX_H}")
    q = ctx.q
    values = [q - 1]
    for h in range(1, H + 1):
        a_h = zero_sum_tuples(ctx, h)
        main = _exact_div(q * q * a_h, q - 1, f"Salie formula at h={h}")
        values.append(main - (q - 1) ** (h - 1) + 2 * (-1) ** (h - 1))
    return MomentSeries("MK", ctx, tuple(values), "salie")


def mk_direct(ctx: FieldCtx, H: int, m: int = 1, *, jobs: int = 1) -> MomentSeries:
    from .charsums import moment_direct
    values = tuple(moment_direct(ctx, m, h, jobs=jobs) for h in range(H + 1))
    return MomentSeries("MK" if m == 1 else "MK2", ctx, values, "direct")
