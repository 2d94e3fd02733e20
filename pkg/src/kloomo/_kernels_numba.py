"""Numba kernels; mirror ``_kernels_numpy`` one for one."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def kloosterman_batch(a_vals, exp, log, trace):
    n = exp.shape[0]
    out = np.empty(a_vals.shape[0], dtype=np.int64)
    for idx in range(a_vals.shape[0]):
        la = log[a_vals[idx]]
        ones = 0
        for k in range(n):
            j = la - k
            if j < 0:
                j += n
            ones += trace[exp[k] ^ exp[j]]
        out[idx] = n - 2 * ones
    return out


@njit(cache=True, nogil=True)
def kloosterman_m_batch(m, a_vals, exp, log, trace):
    n = exp.shape[0]
    out = np.empty(a_vals.shape[0], dtype=np.int64)
    ks = np.zeros(m, dtype=np.int64)
    for idx in range(a_vals.shape[0]):
        la = log[a_vals[idx]]
        ks[:] = 0
        ones = 0
        count = 0
        while True:
            s = 0
            ksum = 0
            for i in range(m):
                s ^= exp[ks[i]]
                ksum += ks[i]
            ones += trace[s ^ exp[(la - ksum) % n]]
            count += 1
            pos = m - 1
            while pos >= 0:
                ks[pos] += 1
                if ks[pos] < n:
                    break
                ks[pos] = 0
                pos -= 1
            if pos < 0:
                break
        out[idx] = count - 2 * ones
    return out


@njit(cache=True, nogil=True)
def weight_scan(coords, base_sum, base_weight, n_weights):
    counts = np.zeros(n_weights, dtype=np.int64)
    nc = coords.shape[0]
    state = np.zeros(nc, dtype=np.uint8)
    s = base_sum
    w = base_weight
    if s == 0:
        counts[w] += 1
    for i in range(1, 1 << nc):
        bit = 0
        while not (i >> bit) & 1:
            bit += 1
        s ^= coords[bit]
        if state[bit]:
            state[bit] = 0
            w -= 1
        else:
            state[bit] = 1
            w += 1
        if s == 0:
            counts[w] += 1
    return counts


@njit(cache=True, nogil=True)
def salie_count(h, exp, log):
    n = exp.shape[0]
    if h < 2:
        return 0
    free = h - 1
    ks = np.zeros(free, dtype=np.int64)
    total = 0
    while True:
        s = 0
        t = 0
        for i in range(free):
            s ^= exp[ks[i]]
            t ^= exp[(n - ks[i]) % n]
        if s != 0 and exp[(n - log[s]) % n] == t:
            total += 1
        pos = free - 1
        while pos >= 0:
            ks[pos] += 1
            if ks[pos] < n:
                break
            ks[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return total


@njit(cache=True, nogil=True)
def _theta_col(w, j, mul, a, d, m):
    acc = mul[w[d - 2, j], w[d - 2, j]] ^ mul[w[d - 2, j], w[d - 1, j]]
    acc ^= mul[a, mul[w[d - 1, j], w[d - 1, j]]]
    for i in range(m):
        acc ^= mul[w[i, j], w[m + i, j]]
    return acc


@njit(cache=True, nogil=True)
def _polar_cols(w, i, j, mul, d, m):
    acc = mul[w[d - 2, i], w[d - 1, j]] ^ mul[w[d - 1, i], w[d - 2, j]]
    for k in range(m):
        acc ^= mul[w[k, i], w[m + k, j]] ^ mul[w[m + k, i], w[k, j]]
    return acc


@njit(cache=True, nogil=True)
def isometry_scan(n, mul, a):
    q = mul.shape[0]
    d = 2 * n
    m = n - 1
    counts = np.zeros((q, q), dtype=np.int64)
    gram = np.zeros((d, d), dtype=np.int64)
    for i in range(m):
        gram[i, m + i] = 1
        gram[m + i, i] = 1
    gram[d - 2, d - 1] = 1
    gram[d - 1, d - 2] = 1
    theta_basis = np.zeros(d, dtype=np.int64)
    theta_basis[d - 2] = 1
    theta_basis[d - 1] = a
    w = np.zeros((d, d), dtype=np.int64)
    b1 = m
    b2 = 2 * m
    while True:
        ok = True
        for j in range(d):
            if _theta_col(w, j, mul, a, d, m) != theta_basis[j]:
                ok = False
                break
        if ok:
            for i in range(d):
                for j in range(i + 1, d):
                    if _polar_cols(w, i, j, mul, d, m) != gram[i, j]:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            tr = 0
            for i in range(d):
                tr ^= w[i, i]
            sp = 0
            for k in range(m):
                g0 = w[b2, k]
                g1 = w[b2 + 1, k]
                h0 = w[b2, b1 + k]
                h1 = w[b2 + 1, b1 + k]
                sp ^= mul[h0, g0 ^ g1] ^ mul[h1, mul[a, g1]]
                sp ^= mul[w[k, b2 + 1], w[b1 + k, b2]]
                for l in range(m):
                    sp ^= mul[w[k, b1 + l], w[b1 + k, l]]
            i00 = w[b2, b2]
            i01 = w[b2, b2 + 1]
            i10 = w[b2 + 1, b2]
            i11 = w[b2 + 1, b2 + 1]
            sp ^= mul[i01, i00 ^ i10] ^ mul[i11, mul[a, i10]]
            counts[sp, tr] += 1
        # odometer over entries, last entry fastest
        pos = d * d - 1
        while pos >= 0:
            r = pos // d
            c = pos % d
            w[r, c] += 1
            if w[r, c] < q:
                break
            w[r, c] = 0
            pos -= 1
        if pos < 0:
            break
    return counts
