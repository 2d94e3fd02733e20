"""Pure-numpy kernels. Same signatures and results as ``_kernels_numba``.

Field elements arrive as int64 arrays. ``exp``/``log`` are the tables of
:class:`kloomo.field.FieldCtx`; ``trace`` is its uint8 trace table.
"""

from __future__ import annotations

import itertools

import numpy as np


def kloosterman_batch(a_vals, exp, log, trace):
    n = exp.shape[0]
    ks = np.arange(n, dtype=np.int64)
    out = np.empty(a_vals.shape[0], dtype=np.int64)
    for idx, a in enumerate(a_vals):
        args = exp ^ exp[(log[a] - ks) % n]
        out[idx] = n - 2 * int(trace[args].sum(dtype=np.int64))
    return out


def kloosterman_m_batch(m, a_vals, exp, log, trace):
    n = exp.shape[0]
    ks = np.arange(n, dtype=np.int64)
    out = np.empty(a_vals.shape[0], dtype=np.int64)
    for idx, a in enumerate(a_vals):
        la = log[a]
        total = 0
        for prefix in itertools.product(range(n), repeat=m - 1):
            s = 0
            for k in prefix:
                s ^= exp[k]
            ksum = sum(prefix)
            args = s ^ exp ^ exp[(la - ksum - ks) % n]
            total += n - 2 * int(trace[args].sum(dtype=np.int64))
        out[idx] = total
    return out


def weight_scan(coords, base_sum, base_weight, n_weights):
    """Tally subsets of ``coords`` whose XOR with ``base_sum`` vanishes, by weight."""
    sums = np.array([base_sum], dtype=np.int64)
    weights = np.array([base_weight], dtype=np.int64)
    for c in coords:
        sums = np.concatenate((sums, sums ^ c))
        weights = np.concatenate((weights, weights + 1))
    return np.bincount(weights[sums == 0], minlength=n_weights)[:n_weights].astype(np.int64)


def salie_count(h, exp, log):
    """Number of h-tuples of nonzero elements with zero sum and zero inverse-sum."""
    n = exp.shape[0]
    if h < 2:
        return 0
    inv_exp = exp[(n - np.arange(n)) % n]
    total = 0
    for prefix in itertools.product(range(n), repeat=h - 2):
        s = 0
        t = 0
        for k in prefix:
            s ^= exp[k]
            t ^= inv_exp[k]
        last_s = s ^ exp
        last_t = t ^ inv_exp
        ok = last_s != 0
        inv_last = np.where(ok, exp[(n - log[np.where(ok, last_s, 1)]) % n], -1)
        total += int(np.count_nonzero(ok & (inv_last == last_t)))
    return total


def isometry_scan(n, mul, a, chunk=1 << 16):
    """Scan every 2n x 2n matrix over GF(q); tally [spinor value, trace] of isometries."""
    q = mul.shape[0]
    d = 2 * n
    m = n - 1
    total = q ** (d * d)
    counts = np.zeros((q, q), dtype=np.int64)
    gram = np.zeros((d, d), dtype=np.int64)
    for i in range(m):
        gram[i, m + i] = gram[m + i, i] = 1
    gram[d - 2, d - 1] = gram[d - 1, d - 2] = 1
    theta_basis = np.zeros(d, dtype=np.int64)
    theta_basis[d - 2] = 1
    theta_basis[d - 1] = a
    powers = q ** np.arange(d * d - 1, -1, -1, dtype=np.int64)

    def theta(x):
        acc = mul[x[d - 2], x[d - 2]] ^ mul[x[d - 2], x[d - 1]] ^ mul[a, mul[x[d - 1], x[d - 1]]]
        for i in range(m):
            acc = acc ^ mul[x[i], x[m + i]]
        return acc

    def polar(x, y):
        acc = mul[x[d - 2], y[d - 1]] ^ mul[x[d - 1], y[d - 2]]
        for i in range(m):
            acc = acc ^ mul[x[i], y[m + i]] ^ mul[x[m + i], y[i]]
        return acc

    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        w = ((idx[:, None] // powers) % q).reshape(-1, d, d)
        cols = [w[:, :, j].T for j in range(d)]
        ok = np.ones(idx.shape[0], dtype=bool)
        for j in range(d):
            ok &= theta(cols[j]) == theta_basis[j]
        for i in range(d):
            for j in range(i + 1, d):
                ok &= polar(cols[i], cols[j]) == gram[i, j]
        w = w[ok]
        if w.shape[0] == 0:
            continue
        tr = np.zeros(w.shape[0], dtype=np.int64)
        for i in range(d):
            tr ^= w[:, i, i]
        sp = np.zeros(w.shape[0], dtype=np.int64)
        b0, b1, b2 = 0, m, 2 * m
        for k in range(m):
            g0, g1 = w[:, b2, b0 + k], w[:, b2 + 1, b0 + k]
            h0, h1 = w[:, b2, b1 + k], w[:, b2 + 1, b1 + k]
            sp ^= mul[h0, g0 ^ g1] ^ mul[h1, mul[a, g1]]
            sp ^= mul[w[:, b0 + k, b2 + 1], w[:, b1 + k, b2]]
            for l in range(m):
                sp ^= mul[w[:, b0 + k, b1 + l], w[:, b1 + k, b0 + l]]
        i00, i01 = w[:, b2, b2], w[:, b2, b2 + 1]
        i10, i11 = w[:, b2 + 1, b2], w[:, b2 + 1, b2 + 1]
        sp ^= mul[i01, i00 ^ i10] ^ mul[i11, mul[a, i10]]
        np.add.at(counts, (sp, tr), 1)
    return counts
