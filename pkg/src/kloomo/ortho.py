"""Minus-type orthogonal groups over GF(2^r).

Covers the elliptic quadratic form and its isometries, explicit
SO-(2,q) / O-(2,q), the spinor map, order formulas from the parabolic
decomposition, trace-count profiles and the Gauss sums of the three groups
that index the codes.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb, prod
from typing import Sequence

import numpy as np

from . import budget, kernels
from .charsums import kgl_from_k, kloosterman, kloosterman_table
from .errors import (BudgetExceeded, DimensionMismatch, NonIntegralResult, NotIsometry,
                     RangeError, ZeroParameter)
from .field import Felt, FieldCtx

Matrix = tuple[tuple[int, ...], ...]


# --- the quadratic form -------------------------------------------------------

@dataclass(frozen=True)
class QuadFormMinus:
    ctx: FieldCtx
    n: int
    a_param: Felt

    def __post_init__(self):
        if self.n < 1:
            raise RangeError("n must be positive")
        if self.ctx.trace(self.a_param) != 1:
            raise ValueError(f"z^2 + z + {self.a_param:#x} is reducible; need trace 1")

    @property
    def dim(self) -> int:
        return 2 * self.n


def make_form(ctx: FieldCtx, n: int = 1, a_param: Felt | None = None) -> QuadFormMinus:
    if a_param is None:
        a_param = ctx.smallest_trace_one()
    return QuadFormMinus(ctx, n, a_param)


def theta_minus(form: QuadFormMinus, x: Sequence[Felt]) -> Felt:
    if len(x) != form.dim:
        raise DimensionMismatch(f"expected a vector of length {form.dim}")
    f, m, d = form.ctx, form.n - 1, form.dim
    acc = f.mul(x[d - 2], x[d - 2]) ^ f.mul(x[d - 2], x[d - 1])
    acc ^= f.mul(form.a_param, f.mul(x[d - 1], x[d - 1]))
    for i in range(m):
        acc ^= f.mul(x[i], x[m + i])
    return acc


def polar(form: QuadFormMinus, x: Sequence[Felt], y: Sequence[Felt]) -> Felt:
    """B(x, y) = theta(x + y) + theta(x) + theta(y)."""
    xy = [u ^ v for u, v in zip(x, y)]
    return theta_minus(form, xy) ^ theta_minus(form, x) ^ theta_minus(form, y)


# --- small matrix algebra over GF(q) -----------------------------------------

def as_matrix(M) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in M)


def mat_mul(ctx: FieldCtx, X: Matrix, Y: Matrix) -> Matrix:
    cols = list(zip(*Y))
    out = []
    for row in X:
        out_row = []
        for col in cols:
            acc = 0
            for u, v in zip(row, col):
                acc ^= ctx.mul(u, v)
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def transpose(X: Matrix) -> Matrix:
    return tuple(zip(*X)) if X and X[0] else tuple(() for _ in range(len(X[0]) if X else 0))


def mat_trace(X: Matrix) -> Felt:
    acc = 0
    for i in range(len(X)):
        acc ^= X[i][i]
    return acc


def rank(ctx: FieldCtx, X: Matrix) -> int:
    rows = [list(r) for r in X]
    rk, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = ctx.inv(rows[rk][c])
        rows[rk] = [ctx.mul(inv, v) for v in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c]
                rows[i] = [u ^ ctx.mul(f, v) for u, v in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def identity(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


# --- isometries ---------------------------------------------------------------

def _check_shape(form: QuadFormMinus, M: Matrix) -> None:
    d = form.dim
    if len(M) != d or any(len(row) != d for row in M):
        raise DimensionMismatch(f"expected a {d}x{d} matrix")


def is_isometry(form: QuadFormMinus, M) -> bool:
    """Invertible and preserves theta on basis vectors and the polar form on basis pairs."""
    M = as_matrix(M)
    _check_shape(form, M)
    d = form.dim
    if rank(form.ctx, M) != d:
        return False
    cols = transpose(M)
    basis = identity(d)
    for j in range(d):
        if theta_minus(form, cols[j]) != theta_minus(form, basis[j]):
            return False
    for i in range(d):
        for j in range(i + 1, d):
            if polar(form, cols[i], cols[j]) != polar(form, basis[i], basis[j]):
                return False
    return True


def is_isometry_exhaustive(form: QuadFormMinus, M) -> bool:
    """Check theta(Mx) = theta(x) for every vector x (debug oracle, 2n*r <= 16)."""
    M = as_matrix(M)
    _check_shape(form, M)
    if form.dim * form.ctx.r > 16:
        raise BudgetExceeded("exhaustive isometry check limited to 2n*r <= 16")
    if rank(form.ctx, M) != form.dim:
        return False
    for x in itertools.product(range(form.ctx.q), repeat=form.dim):
        mx = mat_mul(form.ctx, M, tuple((v,) for v in x))
        if theta_minus(form, [row[0] for row in mx]) != theta_minus(form, x):
            return False
    return True


_COSET_REP = ((1, 1), (0, 1))


def so2_elements(form: QuadFormMinus) -> list[Matrix]:
    """SO-(2,q) as the q+1 matrices [[d1, a d2], [d2, d1 + d2]] of norm one."""
    if form.n != 1:
        raise DimensionMismatch("so2_elements needs n = 1")
    f, a = form.ctx, form.a_param
    out = []
    for d1 in range(f.q):
        for d2 in range(f.q):
            if f.mul(d1, d1) ^ f.mul(d1, d2) ^ f.mul(a, f.mul(d2, d2)) == 1:
                out.append(((d1, f.mul(a, d2)), (d2, d1 ^ d2)))
    return sorted(out)


def o2_elements(form: QuadFormMinus) -> list[Matrix]:
    so = so2_elements(form)
    coset = sorted(mat_mul(form.ctx, _COSET_REP, g) for g in so)
    return so + coset


def _blocks(M: Matrix, n: int):
    m = n - 1

    def sub(r0, r1, c0, c1):
        return tuple(tuple(M[i][c0:c1]) for i in range(r0, r1))
    d = 2 * n
    return {
        "A": sub(0, m, 0, m), "B": sub(0, m, m, 2 * m), "e": sub(0, m, 2 * m, d),
        "C": sub(m, 2 * m, 0, m), "D": sub(m, 2 * m, m, 2 * m), "f": sub(m, 2 * m, 2 * m, d),
        "g": sub(2 * m, d, 0, m), "h": sub(2 * m, d, m, 2 * m), "i": sub(2 * m, d, 2 * m, d),
    }


def spinor_map(form: QuadFormMinus, M) -> int:
    """The epimorphism O-(2n,q) -> F_2 whose kernel is SO-(2n,q)."""
    M = as_matrix(M)
    if not is_isometry(form, M):
        raise NotIsometry("spinor_map is defined on isometries only")
    f, n = form.ctx, form.n
    blk = _blocks(M, n)
    delta = ((1, 1), (0, form.a_param))
    lower = ((0, 0), (1, 0))
    val = 0
    if n > 1:
        val ^= mat_trace(mat_mul(f, mat_mul(f, transpose(blk["h"]), delta), blk["g"]))
        val ^= mat_trace(mat_mul(f, mat_mul(f, blk["e"], lower), transpose(blk["f"])))
        val ^= mat_trace(mat_mul(f, blk["B"], transpose(blk["C"])))
    i = blk["i"]
    i1 = ((i[0][0],), (i[1][0],))
    i2t = ((i[0][1], i[1][1]),)
    val ^= mat_mul(f, mat_mul(f, i2t, delta), i1)[0][0]
    if val not in (0, 1):
        raise NotIsometry(f"spinor value {val:#x} is outside F_2")
    return val


# --- orders and the parabolic decomposition -----------------------------------

class Variant(str, enum.Enum):
    OMINUS = "Ominus"
    SOMINUS = "SOminus"


def group_order(variant: Variant | str, n: int, q: int) -> int:
    if n < 1:
        raise RangeError("n must be positive")
    full = 2 * q ** (n * n - n) * (q ** n + 1) * prod(q ** (2 * j) - 1 for j in range(1, n))
    return full if Variant(variant) is Variant.OMINUS else full // 2


def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** j for j in range(n))


def q_binomial(n: int, r: int, q: int) -> int:
    if not 0 <= r <= n:
        raise RangeError("need 0 <= r <= n")
    num = prod(q ** (n - j) - 1 for j in range(r))
    den = prod(q ** (r - j) - 1 for j in range(r))
    out, rem = divmod(num, den)
    if rem:
        raise NonIntegralResult("q-binomial division left a remainder")
    return out


def b_r(r: int, q: int) -> int:
    """Sum over nonsingular symmetric r x r B and h in F_q^(r x 2) of psi(Tr delta_a h^t B h)."""
    if r < 0:
        raise RangeError("r must be nonnegative")
    if r % 2 == 0:
        return q ** (r * (r + 6) // 4) * prod(q ** (2 * j - 1) - 1 for j in range(1, r // 2 + 1))
    return -q ** ((r * r + 4 * r - 1) // 4) * prod(q ** (2 * j - 1) - 1 for j in range(1, (r + 1) // 2 + 1))


def b_r_direct(ctx: FieldCtx, r: int, a_param: Felt | None = None, c: Felt = 1) -> int:
    """Direct summation of b_r with the character x -> lambda(c x) (small q, r only)."""
    if a_param is None:
        a_param = ctx.smallest_trace_one()
    q = ctx.q
    n_sym = r * (r + 1) // 2
    budget.require(q ** (n_sym + 2 * r), f"direct b_{r} over GF({q})")
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    total = 0
    for entries in itertools.product(range(q), repeat=n_sym):
        B = [[0] * r for _ in range(r)]
        for (i, j), v in zip(pairs, entries):
            B[i][j] = B[j][i] = v
        if rank(ctx, as_matrix(B)) != r:
            continue
        for hv in itertools.product(range(q), repeat=2 * r):
            h = [hv[2 * i:2 * i + 2] for i in range(r)]
            # M = h^t B h is 2x2; Tr(delta_a M) = M00 + M10 + a M11
            M = [[0, 0], [0, 0]]
            for i in range(r):
                for j in range(r):
                    if B[i][j]:
                        for k in range(2):
                            for l in range(2):
                                M[k][l] ^= ctx.mul(ctx.mul(h[i][k], B[i][j]), h[j][l])
            tr = M[0][0] ^ M[1][0] ^ ctx.mul(a_param, M[1][1])
            total += ctx.character(ctx.mul(c, tr))
    return total


@dataclass(frozen=True)
class ParabolicCell:
    n: int
    r_cell: int
    q: int
    gl_r: int
    gl_complement: int
    q_binomial: int
    b_r: int
    a_r_order: int
    p_order: int
    coset_count: int
    cell_mass: int


def parabolic_machinery(n: int, r_cell: int, q: int) -> ParabolicCell:
    if n < 1 or not 0 <= r_cell <= n - 1:
        raise RangeError("need n >= 1 and 0 <= r_cell <= n - 1")
    r = r_cell
    gr, gc = gl_order(r, q), gl_order(n - 1 - r, q)
    a_exp = (n - 1) * (n + 2) + r * (2 * n - 3 * r - 5)
    assert a_exp >= 0 and a_exp % 2 == 0
    a_r = 2 * (q + 1) * gr * gc * q ** (a_exp // 2)
    p = 2 * (q + 1) * gl_order(n - 1, q) * q ** ((n - 1) * (n + 2) // 2)
    qb = q_binomial(n - 1, r, q)
    coset = qb * q ** (r * (r + 3) // 2)
    if coset * a_r != p:
        raise NonIntegralResult("coset count disagrees with |P|/|A_r|")
    mass, rem = divmod(p * p, a_r)
    closed = (2 * (q + 1) * q ** (n * n - n) * prod(q ** j - 1 for j in range(1, n))
              * qb * q ** comb(r, 2) * q ** (2 * r))
    if rem or mass != closed:
        raise NonIntegralResult("cell mass disagrees with its closed form")
    return ParabolicCell(n, r, q, gr, gc, qb, b_r(r, q), a_r, p, coset, mass)


def gl_ratio_identity(n: int, r: int, q: int) -> bool:
    """g_n / (g_{n-r} g_r) = q^(r(n-r)) [n r]_q."""
    lhs, rem = divmod(gl_order(n, q), gl_order(n - r, q) * gl_order(r, q))
    return rem == 0 and lhs == q ** (r * (n - r)) * q_binomial(n, r, q)


def q_binomial_theorem_sides(n: int, q: int, x: int) -> tuple[int, int]:
    lhs = sum(q_binomial(n, r, q) * (-1) ** r * q ** comb(r, 2) * x ** r for r in range(n + 1))
    rhs = prod(1 - q ** i * x for i in range(n))
    return lhs, rhs


# --- the three groups and their trace profiles --------------------------------

class Group(str, enum.Enum):
    SO2MINUS = "so2m"
    O2MINUS = "o2m"
    SO4MINUS = "so4m"


@dataclass(frozen=True)
class GroupId:
    kind: Group
    ctx: FieldCtx

    @property
    def order(self) -> int:
        q = self.ctx.q
        return {Group.SO2MINUS: q + 1, Group.O2MINUS: 2 * (q + 1),
                Group.SO4MINUS: q * q * (q ** 4 - 1)}[self.kind]


@dataclass(frozen=True)
class TraceProfile:
    """counts[beta] = number of group elements with matrix trace beta."""

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def field_sum(self) -> Felt:
        """sum of counts(beta) * beta in F_q (only odd counts contribute)."""
        acc = 0
        for beta, c in enumerate(self.counts):
            if c & 1:
                acc ^= beta
        return acc

    def items(self):
        return enumerate(self.counts)


def trace_profile(gid: GroupId) -> TraceProfile:
    f, q = gid.ctx, gid.ctx.q
    inv = f.inv_table
    counts = [0] * q
    if gid.kind is Group.SO4MINUS:
        table = kloosterman_table(f)
        counts[0] = q ** 4
        for beta in range(1, q):
            counts[beta] = q * q * (q ** 3 + q * q - table[int(inv[beta])])
        return TraceProfile(tuple(counts))
    counts[0] = 1 if gid.kind is Group.SO2MINUS else q + 2
    for beta in range(1, q):
        counts[beta] = 2 if f.trace(int(inv[beta])) == 1 else 0
    return TraceProfile(tuple(counts))


def trace_profile_bruteforce(gid: GroupId, a_param: Felt | None = None) -> TraceProfile:
    f, q = gid.ctx, gid.ctx.q
    if gid.kind is Group.SO4MINUS:
        if q != 2:
            raise BudgetExceeded("SO-(4,q) is only enumerated for q = 2")
        form = make_form(f, 2, a_param)
        scan = kernels.isometry_scan(f, 2, form.a_param)
        return TraceProfile(tuple(int(v) for v in scan[0]))
    if q > 64:
        raise BudgetExceeded("explicit SO-(2,q)/O-(2,q) enumeration limited to q <= 64")
    form = make_form(f, 1, a_param)
    elems = so2_elements(form) if gid.kind is Group.SO2MINUS else o2_elements(form)
    counts = [0] * q
    for g in elems:
        counts[mat_trace(g)] += 1
    return TraceProfile(tuple(counts))


# --- Gauss sums ---------------------------------------------------------------

def gauss_sum(gid: GroupId, a: Felt) -> int:
    """sum over w in G of lambda(a Tr w)."""
    if a == 0:
        raise ZeroParameter("a must be nonzero")
    q = gid.ctx.q
    k = kloosterman(gid.ctx, a)
    if gid.kind is Group.SO2MINUS:
        return -k
    if gid.kind is Group.O2MINUS:
        return -k + q + 1
    return -q * q * (k * k + q ** 3 - q)


def gauss_sum_from_profile(ctx: FieldCtx, profile: TraceProfile, a: Felt) -> int:
    return sum(c * ctx.character(ctx.mul(a, beta)) for beta, c in profile.items() if c)


def gauss_sum_enumerated(gid: GroupId, a: Felt, a_param: Felt | None = None) -> int:
    """Oracle: sum lambda(a Tr w) over explicitly enumerated elements."""
    if gid.kind is Group.SO4MINUS:
        return gauss_sum_from_profile(gid.ctx, trace_profile_bruteforce(gid, a_param), a)
    form = make_form(gid.ctx, 1, a_param)
    elems = so2_elements(form) if gid.kind is Group.SO2MINUS else o2_elements(form)
    return sum(gid.ctx.character(gid.ctx.mul(a, mat_trace(g))) for g in elems)


def gauss_sum_general(variant: Variant | str, n: int, ctx: FieldCtx, a: Felt) -> int:
    """Gauss sum of O-(2n,q) or SO-(2n,q) from the Bruhat-cell expansion."""
    if a == 0:
        raise ZeroParameter("a must be nonzero")
    if not 1 <= n <= 6:
        raise RangeError("gauss_sum_general supports 1 <= n <= 6")
    q = ctx.q
    k = kloosterman(ctx, a)
    pre = q ** ((n - 1) * (n + 2) // 2)
    terms = []
    for r in range(n):
        expo = r * (2 * n - r - 3)
        assert expo % 2 == 0
        terms.append(q_binomial(n - 1, r, q) * q ** (expo // 2) * b_r(r, q) * kgl_from_k(k, q, n - 1 - r))
    if Variant(variant) is Variant.OMINUS:
        return pre * (-k + q + 1) * sum(terms)
    even = sum(t for r, t in enumerate(terms) if r % 2 == 0)
    odd = sum(t for r, t in enumerate(terms) if r % 2 == 1)
    return pre * (-k * even + (q + 1) * odd)


def trace_count_from_gauss(gid: GroupId, beta: Felt) -> int:
    """N(beta) recovered from |G| and the Gauss sums by character orthogonality."""
    f, q = gid.ctx, gid.ctx.q
    total = gid.order + sum(f.character(f.mul(a, beta)) * gauss_sum(gid, a) for a in range(1, q))
    out, rem = divmod(total, q)
    if rem:
        raise NonIntegralResult(f"q does not divide the orthogonality sum at beta={beta:#x}")
    return out


def isometry_profiles(ctx: FieldCtx, n: int, a_param: Felt | None = None) -> np.ndarray:
    """[spinor, trace] tally over all isometries of the 2n-dim form, by full matrix scan."""
    form = make_form(ctx, n, a_param)
    budget.require(ctx.q ** (4 * n * n), f"matrix scan of GF({ctx.q})^({2 * n}x{2 * n})")
    return kernels.isometry_scan(ctx, n, form.a_param)
