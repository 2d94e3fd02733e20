"""Cross-check suite run by ``kloomo verify``.

Each check is independent; checks whose cost exceeds the enumeration budget
or whose preconditions fail are reported as SKIPPED rather than failing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import charsums as cs
from . import codes, moments, ortho
from .errors import BudgetExceeded, KloomoError
from .field import FieldCtx

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


class Skip(Exception):
    pass


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status:<7} {self.name}" + (f"  [{self.detail}]" if self.detail else "")


@dataclass
class VerifyReport:
    q: int
    H: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def _expect(cond: bool, detail: str = "") -> None:
    if not cond:
        raise AssertionError(detail)


def _checks(ctx: FieldCtx, H: int, jobs: int) -> list[tuple[str, Callable[[], str | None]]]:
    q, r = ctx.q, ctx.r
    out: list[tuple[str, Callable[[], str | None]]] = []

    def check(name):
        def deco(fn):
            out.append((name, fn))
            return fn
        return deco

    @check("field: trace is additive and Frobenius invariant; AS image = trace zero")
    def _():
        if r > 12:
            raise Skip("r > 12")
        tr = ctx.trace_table
        xs = np.arange(q, dtype=np.int64)
        for x in range(q):
            _expect(np.array_equal(tr[x ^ xs], tr[x] ^ tr), f"additivity fails at {x:#x}")
            _expect(ctx.trace(ctx.mul(x, x)) == ctx.trace(x), f"Frobenius fails at {x:#x}")
        image = {ctx.mul(a, a) ^ a for a in range(q)}
        _expect(all((b in image) == ctx.in_artin_schreier_image(b) for b in range(q)))
        _expect(int(tr.sum()) == q // 2)

    @check("char_sums: Weil bound K(a)^2 <= 4q and Frobenius K(a^2) = K(a)")
    def _():
        table = cs.kloosterman_table(ctx, jobs=jobs)
        _expect(all(k * k <= 4 * q for _, k in table.items()))
        _expect(all(table[ctx.mul(a, a)] == k for a, k in table.items()))

    @check("char_sums: value range and attainment of the Kloosterman values")
    def _():
        if r < 2:
            raise Skip("r = 1")
        prof = cs.value_profile(ctx, jobs=jobs)
        return ", ".join(f"{t}:{c}" for t, c in prof.multiplicities.items())

    @check("char_sums: K_2 by enumeration equals K^2 - q")
    def _():
        ks = cs.kloosterman_table(ctx).values
        k2 = cs.kernels.kloosterman_m_values(ctx, 2, np.arange(1, q), jobs=jobs) \
            if (q - 1) ** 3 <= cs.budget.current_budget() else None
        if k2 is None:
            raise Skip("over budget")
        _expect(np.array_equal(k2, ks * ks - q))

    @check("char_sums: GL(t) recursion equals closed form, t <= 4")
    def _():
        for a in range(1, min(q, 64)):
            for t in range(1, 5):
                _expect(cs.kgl(ctx, t, a) == cs.kgl_closed(ctx, t, a), f"t={t}, a={a:#x}")

    @check("char_sums: convolution identity for m = 1, 2")
    def _():
        for m in (1, 2):
            for beta in range(q):
                lhs, rhs = cs.convolution_identity_sides(ctx, m, beta)
                _expect(lhs == rhs, f"m={m}, beta={beta:#x}: {lhs} != {rhs}")

    @check("char_sums: Artin-Schreier character sums")
    def _():
        if q > 4096:
            raise Skip("q > 4096")
        b = ctx.smallest_trace_one()
        for beta in range(1, q):
            _expect(cs.artin_schreier_sums_check(ctx, beta, b), f"beta={beta:#x}")

    groups = [ortho.GroupId(g, ctx) for g in ortho.Group]

    @check("ortho: trace profiles match enumeration; mass |G| and field sum 0")
    def _():
        done = []
        for gid in groups:
            prof = ortho.trace_profile(gid)
            _expect(prof.total == gid.order and prof.field_sum() == 0, gid.kind.value)
            try:
                _expect(ortho.trace_profile_bruteforce(gid) == prof, f"{gid.kind.value} brute")
                done.append(gid.kind.value)
            except BudgetExceeded:
                pass
        return "enumerated: " + (", ".join(done) or "none")

    @check("ortho: Gauss sums match enumeration and the general-n formula")
    def _():
        for gid in groups:
            for a in range(1, q):
                g = ortho.gauss_sum(gid, a)
                try:
                    _expect(g == ortho.gauss_sum_enumerated(gid, a), f"{gid.kind.value} a={a:#x}")
                except BudgetExceeded:
                    break
        for a in range(1, min(q, 64)):
            _expect(ortho.gauss_sum_general("Ominus", 1, ctx, a)
                    == ortho.gauss_sum(groups[1], a))
            _expect(ortho.gauss_sum_general("SOminus", 1, ctx, a)
                    == ortho.gauss_sum(groups[0], a))
            _expect(ortho.gauss_sum_general("SOminus", 2, ctx, a)
                    == ortho.gauss_sum(groups[2], a))

    @check("ortho: trace counts recovered from Gauss sums")
    def _():
        if q > 64:
            raise Skip("q > 64")
        for gid in groups:
            prof = ortho.trace_profile(gid)
            for beta in range(q):
                _expect(ortho.trace_count_from_gauss(gid, beta) == prof.counts[beta],
                        f"{gid.kind.value} beta={beta:#x}")

    @check("ortho: |O-(2n,q)| equals the sum of cell masses (n <= 4); q-binomial theorem")
    def _():
        for n in range(1, 5):
            masses = sum(ortho.parabolic_machinery(n, c, q).cell_mass for c in range(n))
            _expect(masses == ortho.group_order("Ominus", n, q), f"n={n}")
        for n in range(1, 7):
            lhs, rhs = ortho.q_binomial_theorem_sides(n, q, -q * q)
            _expect(lhs == rhs, f"n={n}")

    code_objs = {g: codes.build_code(g) for g in groups}

    @check("codes: dual weights from K(a) equal direct counts; a -> c(a) injective")
    def _():
        if q > 1024:
            raise Skip("q > 1024")
        for code in code_objs.values():
            for a in range(1, q):
                _expect(codes.dual_codeword_weight(code, a)
                        == codes.dual_codeword_weight_from_profile(code, a))
            _expect(sum(codes.dual_weight_distribution(code).values()) == q)

    for gid in groups[:2]:
        def wd_check(gid=gid):
            code = code_objs[gid]
            if code.length > codes.FULL_DP_MAX_N:
                raise Skip("N too large for FULL mode")
            dp = codes.weight_distribution_dp(code)
            _expect(dp == codes.weight_distribution_macwilliams(code), "DP != MacWilliams")
            _expect(codes.symmetry_check(dp), "not symmetric")
            _expect(dp.total == 2 ** code.dimension, "total != 2^(N-r)")
            if code.length <= 20:
                _expect(dp == codes.weight_distribution_bruteforce(code, jobs=jobs), "brute force")
                return "DP = MacWilliams = brute force"
            return "DP = MacWilliams"
        out.append((f"codes: FULL weight distribution of C({gid.kind.value})", wd_check))

    @check("codes: PREFIX weight distribution of C(so4m), DP = MacWilliams")
    def _():
        code = code_objs[groups[2]]
        j = min(H, moments.MK2_MAX_H)
        _expect(codes.weight_distribution_dp(code, j) == codes.weight_distribution_macwilliams(code, j))
        return f"j <= {j}"

    @check("moments: power-moment identity, both sides, h <= 6")
    def _():
        for code in code_objs.values():
            wd = codes.weight_distribution_dp(code, min(6, code.length))
            for h in range(min(H, 6) + 1):
                _expect(moments.pless_rhs(wd, code.length, h, r) == moments.dual_power_sum(code, h),
                        f"{code.gid.kind.value} h={h}")

    @check("moments: recursions from C(so2m) and C(o2m) equal direct moments")
    def _():
        h = min(H, moments.MK_MAX_H)
        direct = moments.mk_direct(ctx, h, jobs=jobs).values
        _expect(moments.mk_recursive(ctx, h, "G1").values == direct, "G1")
        _expect(moments.mk_recursive(ctx, h, "G2").values == direct, "G2")

    @check("moments: Salie formula equals direct moments")
    def _():
        h = min(H, moments.SALIE_MAX_H)
        while h > 0 and (q - 1) ** (h - 1) > cs.budget.current_budget():
            h -= 1
        _expect(moments.salie_mk(ctx, h).values == moments.mk_direct(ctx, h).values)
        return f"h <= {h}"

    @check("moments: SO-(4,q) recursions for MK2 and even MK")
    def _():
        if r < 2:
            raise Skip("needs r >= 2")
        h = min(H, moments.MK2_MAX_H)
        _expect(moments.mk2_recursive(ctx, h).values == moments.mk_direct(ctx, h, m=2).values, "MK2")
        even = moments.mk_direct(ctx, 2 * h).values[::2]
        _expect(moments.mk_even_recursive(ctx, h).values == even, "MK even")
        return f"h <= {h}"

    return out


def verify_suite(ctx: FieldCtx, H: int, *, jobs: int = 1) -> VerifyReport:
    report = VerifyReport(ctx.q, H)
    for name, fn in _checks(ctx, H, jobs):
        try:
            detail = fn()
            report.results.append(CheckResult(name, PASS, detail or ""))
        except Skip as exc:
            report.results.append(CheckResult(name, SKIPPED, str(exc)))
        except BudgetExceeded as exc:
            report.results.append(CheckResult(name, SKIPPED, str(exc)))
        except (AssertionError, KloomoError) as exc:
            report.results.append(CheckResult(name, FAIL, str(exc) or type(exc).__name__))
    return report
