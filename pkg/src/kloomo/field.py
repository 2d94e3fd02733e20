"""Arithmetic in GF(2^r) with a polynomial basis.

An element is the integer whose binary digits are its coefficients in the
basis 1, z, ..., z^(r-1), so addition is XOR and the field is enumerated in
ascending integer order everywhere in the package.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import RangeError, ReducibleError

Felt = int

MAX_R = 24

# Smallest irreducible mask of each degree, bit i = coefficient of z^i.
DEFAULT_POLYS = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
}


# --- GF(2)[z] helpers on int bit masks ---------------------------------------

def _deg(a: int) -> int:
    return a.bit_length() - 1


def poly_mod(a: int, m: int) -> int:
    dm = _deg(m)
    while a and _deg(a) >= dm:
        a ^= m << (_deg(a) - dm)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    a = poly_mod(a, m)
    top = 1 << _deg(m)
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= m
    return out


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test: z^(2^r) = z mod f and gcd(z^(2^(r/p)) - z, f) = 1."""
    r = _deg(f)
    if r < 1:
        return False
    z = poly_mod(0b10, f)

    def frob(k: int) -> int:
        x = z
        for _ in range(k):
            x = poly_mulmod(x, x, f)
        return x

    if frob(r) != z:
        return False
    return all(poly_gcd(f, frob(r // p) ^ z) == 1 for p in _prime_factors(r))


def smallest_irreducible(r: int) -> int:
    f = 1 << r
    while not is_irreducible(f):
        f += 1
    return f


# --- the field context -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(2^r) modulo ``poly``. Immutable; lookup tables are built lazily."""

    r: int
    poly: int
    trace_mask: int
    trace_table: np.ndarray = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @property
    def q(self) -> int:
        return 1 << self.r

    @property
    def poly_hex(self) -> str:
        return hex(self.poly)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return self.r == other.r and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.r, self.poly))

    # elementary operations

    def add(self, x: Felt, y: Felt) -> Felt:
        return x ^ y

    def mul(self, x: Felt, y: Felt) -> Felt:
        return poly_mulmod(x, y, self.poly)

    def pow(self, x: Felt, e: int) -> Felt:
        if e < 0:
            return self.pow(self.inv(x), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            e >>= 1
        return out

    def inv(self, x: Felt) -> Felt:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^r)")
        return self.pow(x, self.q - 2)

    def div(self, x: Felt, y: Felt) -> Felt:
        return self.mul(x, self.inv(y))

    def trace(self, x: Felt) -> int:
        return int(self.trace_table[x])

    def trace_by_frobenius(self, x: Felt) -> Felt:
        """x + x^2 + ... + x^(2^(r-1)) computed in the field (slow oracle)."""
        acc, y = 0, x
        for _ in range(self.r):
            acc ^= y
            y = self.mul(y, y)
        return acc

    def character(self, x: Felt) -> int:
        """The canonical additive character (-1)^tr(x)."""
        return 1 - 2 * int(self.trace_table[x])

    def in_artin_schreier_image(self, b: Felt) -> bool:
        """True iff b = alpha^2 + alpha for some alpha, i.e. tr(b) = 0."""
        return self.trace_table[b] == 0

    def elements(self) -> Iterator[Felt]:
        return iter(range(self.q))

    def nonzero(self) -> Iterator[Felt]:
        return iter(range(1, self.q))

    def smallest_trace_one(self) -> Felt:
        return int(np.argmax(self.trace_table == 1))

    # lazily built tables

    def _cached(self, key: str, build):
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    @property
    def generator(self) -> Felt:
        """Smallest primitive element."""
        return self._cached("generator", self._find_generator)

    @property
    def exp_table(self) -> np.ndarray:
        """exp_table[k] = g^k for k in 0..q-2, with g = :attr:`generator`."""
        return self._cached("exp", self._build_exp)

    @property
    def log_table(self) -> np.ndarray:
        """Discrete log base g; entry 0 is unused and set to -1."""
        return self._cached("log", self._build_log)

    @property
    def inv_table(self) -> np.ndarray:
        def build():
            inv = np.zeros(self.q, dtype=np.int64)
            n = self.q - 1
            inv[1:] = self.exp_table[(n - self.log_table[1:]) % n]
            return inv
        return self._cached("inv", build)

    @property
    def mul_table(self) -> np.ndarray:
        """Full q x q product table; only for q <= 256."""
        if self.q > 256:
            raise RangeError("mul_table is limited to q <= 256")

        def build():
            xs = np.arange(self.q, dtype=np.int64)
            return np.stack([mul_vec(self, xs, c) for c in range(self.q)])
        return self._cached("mul", build)

    def _find_generator(self) -> Felt:
        n = self.q - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for g in range(2, self.q):
            if all(self.pow(g, n // p) != 1 for p in factors):
                return g
        raise ReducibleError("no primitive element found")  # unreachable for a field

    def _build_exp(self) -> np.ndarray:
        n = self.q - 1
        exp = np.empty(n, dtype=np.int64)
        exp[0] = 1
        filled, g_pow = 1, self.generator
        while filled < n:
            step = min(filled, n - filled)
            exp[filled:filled + step] = mul_vec(self, exp[:step], g_pow)
            filled += step
            g_pow = self.pow(self.generator, filled)
        return exp

    def _build_log(self) -> np.ndarray:
        log = np.full(self.q, -1, dtype=np.int64)
        log[self.exp_table] = np.arange(self.q - 1, dtype=np.int64)
        return log


def mul_vec(ctx: FieldCtx, xs: np.ndarray, c: Felt) -> np.ndarray:
    """Multiply every entry of ``xs`` by the constant ``c``."""
    xs = np.asarray(xs, dtype=np.int64).copy()
    out = np.zeros_like(xs)
    top = ctx.q
    while c:
        if c & 1:
            out ^= xs
        c >>= 1
        xs <<= 1
        xs ^= np.where(xs & top, ctx.poly, 0)
    return out


def make_field(r: int, poly: int | None = None) -> FieldCtx:
    """Build GF(2^r); ``poly`` defaults to the smallest irreducible mask."""
    if not isinstance(r, int) or not 1 <= r <= MAX_R:
        raise RangeError(f"r must lie in 1..{MAX_R}, got {r!r}")
    if poly is None:
        poly = DEFAULT_POLYS[r]
    if _deg(poly) != r:
        raise ReducibleError(f"{poly:#x} does not have degree {r}")
    if not is_irreducible(poly):
        raise ReducibleError(f"{poly:#x} is reducible over GF(2)")
    mask = 0
    for i in range(r):
        if _trace_of_basis(poly, r, i):
            mask |= 1 << i
    q = 1 << r
    xs = np.arange(q, dtype=np.int64)
    table = (np.bitwise_count(xs & mask) & 1).astype(np.uint8)
    table.setflags(write=False)
    return FieldCtx(r=r, poly=poly, trace_mask=mask, trace_table=table)


def _trace_of_basis(poly: int, r: int, i: int) -> int:
    y = poly_mod(1 << i, poly)
    acc = 0
    for _ in range(r):
        acc ^= y
        y = poly_mulmod(y, y, poly)
    if acc not in (0, 1):
        raise ReducibleError("trace left GF(2); reduction polynomial is not irreducible")
    return acc
