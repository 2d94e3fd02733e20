"""Binary codes C(G) built from the trace vector of a group G.

A word u in F_2^N lies in C(G) when sum u_j Tr(g_j) = 0 in F_q. Only the
multiset of traces matters, so a code is stored as its trace profile and
never as a list of group elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

from . import budget, kernels
from .charsums import kloosterman_table
from .errors import BudgetExceeded, InvariantViolation, NonIntegralResult, RangeError
from .field import Felt, FieldCtx
from .ortho import Group, GroupId, TraceProfile, trace_profile

FULL_DP_MAX_N = 8192
PREFIX_MAX_J = 64
MACWILLIAMS_MAX_N = 1 << 20
BRUTE_MAX_N = 24


@dataclass(frozen=True)
class CodeSpec:
    gid: GroupId
    profile: TraceProfile

    @property
    def ctx(self) -> FieldCtx:
        return self.gid.ctx

    @property
    def length(self) -> int:
        return self.profile.total

    @property
    def dimension(self) -> int:
        return self.length - self.ctx.r

    def coordinates(self, rng: np.random.Generator | None = None) -> np.ndarray:
        """The trace vector, ascending by trace value unless ``rng`` shuffles it."""
        coords = np.repeat(np.arange(self.ctx.q, dtype=np.int64),
                           np.array(self.profile.counts, dtype=np.int64))
        if rng is not None:
            rng.shuffle(coords)
        return coords


def build_code(gid: GroupId) -> CodeSpec:
    code = CodeSpec(gid, trace_profile(gid))
    if code.length != gid.order:
        raise InvariantViolation(f"profile mass {code.length} != |G| = {gid.order}")
    return code


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    counts: tuple[int, ...]
    max_j: int | None = None  # None means FULL

    @property
    def full(self) -> bool:
        return self.max_j is None

    @property
    def mode(self) -> str:
        return "FULL" if self.full else f"PREFIX({self.max_j})"

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, j: int) -> int:
        return self.counts[j]

    def __len__(self) -> int:
        return len(self.counts)

    def prefix(self, j: int) -> WeightDistribution:
        return WeightDistribution(self.length, self.counts[:j + 1], j)


def _resolve_max_j(code: CodeSpec, max_j: int | None) -> int:
    if max_j is None:
        return code.length
    if max_j < 0:
        raise RangeError("max_j must be nonnegative")
    return min(max_j, code.length)


def _wrap(code: CodeSpec, counts: Iterable[int], max_j: int | None) -> WeightDistribution:
    counts = tuple(int(c) for c in counts)
    if max_j is None or max_j >= code.length:
        return WeightDistribution(code.length, counts)
    return WeightDistribution(code.length, counts, max_j)


# --- dual code ------------------------------------------------------------------

def dual_codeword_weight(code: CodeSpec, a: Felt) -> int:
    """Hamming weight of c(a) = (tr(a Tr g_j))_j from the Kloosterman sum K(a)."""
    if a == 0:
        return 0
    f, q = code.ctx, code.ctx.q
    k = kloosterman_table(f)[a]
    if code.gid.kind is Group.SO4MINUS:
        twice = q * q * (q ** 4 + q ** 3 - 1 + k * k - q)
    else:
        twice = q + 1 + k
    if twice % 2:
        raise NonIntegralResult(f"odd doubled weight {twice} at a={a:#x}")
    return twice // 2


def dual_codeword_weight_from_profile(code: CodeSpec, a: Felt) -> int:
    """Oracle: count coordinates with tr(a * beta) = 1, weighted by the profile."""
    f = code.ctx
    return sum(c for beta, c in code.profile.items() if c and f.trace(f.mul(a, beta)))


def dual_weight_distribution(code: CodeSpec) -> dict[int, int]:
    out: dict[int, int] = {0: 1}
    for a in range(1, code.ctx.q):
        w = dual_codeword_weight(code, a)
        if w == 0:
            raise InvariantViolation(f"c({a:#x}) is the zero word; a -> c(a) is not injective")
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


# --- weight distribution: dynamic programming ------------------------------------

@lru_cache(maxsize=4096)
def _binom_row(n: int, upto: int) -> tuple[int, ...]:
    return tuple(comb(n, v) for v in range(min(n, upto) + 1))


def weight_distribution_dp(code: CodeSpec, max_j: int | None = None) -> WeightDistribution:
    """C_j = sum over (nu_beta) of prod binom(n(beta), nu_beta).

    The constraints are sum nu_beta = j and sum nu_beta * beta = 0 in F_q;
    the state is (weight so far, partial field sum). In characteristic two
    nu copies of beta add up to beta or 0 depending on the parity of nu.
    """
    if max_j is None and code.length > FULL_DP_MAX_N:
        raise BudgetExceeded(f"FULL mode needs N <= {FULL_DP_MAX_N}, got {code.length}")
    if max_j is not None and max_j > PREFIX_MAX_J:
        raise BudgetExceeded(f"PREFIX mode needs max_j <= {PREFIX_MAX_J}")
    jmax = _resolve_max_j(code, max_j)
    q = code.ctx.q
    live = [(beta, n) for beta, n in code.profile.items() if n]
    budget.require((jmax + 1) * q * sum(min(n, jmax) + 1 for _, n in live), "weight-distribution DP")

    dp = np.zeros((jmax + 1, q), dtype=object)
    dp[0, 0] = 1
    idx = np.arange(q)
    for beta, n in live:
        perm = idx ^ beta
        shifted = dp[:, perm]
        new = np.zeros_like(dp)
        for nu, c in enumerate(_binom_row(n, jmax)):
            src = dp if nu % 2 == 0 else shifted
            new[nu:] += c * src[:jmax + 1 - nu]
        dp = new
    return _wrap(code, dp[:, 0], max_j)


# --- weight distribution: MacWilliams transform ---------------------------------

def krawtchouk(length: int, i: int, upto: int) -> list[int]:
    """K_0(i), ..., K_upto(i) for the binary Krawtchouk polynomials of the given length."""
    out = [1]
    if upto >= 1:
        out.append(length - 2 * i)
    for j in range(1, upto):
        num = (length - 2 * i) * out[j] - (length - j + 1) * out[j - 1]
        nxt, rem = divmod(num, j + 1)
        if rem:
            raise NonIntegralResult("Krawtchouk recurrence left a remainder")
        out.append(nxt)
    return out[:upto + 1]


def krawtchouk_direct(length: int, i: int, j: int) -> int:
    return sum((-1) ** s * comb(i, s) * comb(length - i, j - s) for s in range(j + 1))


def weight_distribution_macwilliams(code: CodeSpec, max_j: int | None = None) -> WeightDistribution:
    """C_j = (1/q) sum_i B_i K_j(i), with B the dual weight distribution."""
    if max_j is None and code.length > MACWILLIAMS_MAX_N:
        raise BudgetExceeded(f"FULL MacWilliams needs N <= {MACWILLIAMS_MAX_N}")
    jmax = _resolve_max_j(code, max_j)
    q = code.ctx.q
    acc = [0] * (jmax + 1)
    for i, b in dual_weight_distribution(code).items():
        for j, k in enumerate(krawtchouk(code.length, i, jmax)):
            acc[j] += b * k
    counts = []
    for j, v in enumerate(acc):
        c, rem = divmod(v, q)
        if rem:
            raise NonIntegralResult(f"MacWilliams sum at weight {j} is not divisible by q")
        counts.append(c)
    return _wrap(code, counts, max_j)


# --- weight distribution: exhaustive scan ----------------------------------------

def weight_distribution_bruteforce(code: CodeSpec, coords: np.ndarray | None = None, *,
                                   jobs: int = 1) -> WeightDistribution:
    """Enumerate every u in F_2^N; ``coords`` may be any ordering of the trace vector."""
    if code.length > BRUTE_MAX_N:
        raise BudgetExceeded(f"brute force limited to N <= {BRUTE_MAX_N}, got {code.length}")
    if coords is None:
        coords = code.coordinates()
    if sorted(coords.tolist()) != code.coordinates().tolist():
        raise ValueError("coords is not a rearrangement of the code's trace vector")
    budget.require(1 << code.length, "codeword enumeration")
    counts = kernels.weight_scan(coords, jobs=jobs)
    return _wrap(code, counts, None)


def symmetry_check(wd: WeightDistribution) -> bool:
    if not wd.full:
        raise RangeError("symmetry needs a FULL distribution")
    n = wd.length
    return all(wd[j] == wd[n - j] for j in range(n + 1))


def weight_distribution(code: CodeSpec, method: str = "dp", max_j: int | None = None, *,
                        jobs: int = 1) -> WeightDistribution:
    if method == "dp":
        return weight_distribution_dp(code, max_j)
    if method == "macwilliams":
        return weight_distribution_macwilliams(code, max_j)
    if method == "brute":
        wd = weight_distribution_bruteforce(code, jobs=jobs)
        return wd if max_j is None else wd.prefix(_resolve_max_j(code, max_j))
    raise ValueError(f"unknown method {method!r}")
