"""Independent batch oracles used by the classifier and transform tests.

Everything here recomputes results from first principles with vectorized
integer arithmetic, deliberately avoiding the package's own search code so
the two implementations can check each other.
"""

from __future__ import annotations

import itertools

import numpy as np


def walsh_rows(a: np.ndarray) -> np.ndarray:
    """Row-wise Walsh transform, exact over integers.

    out[i, g] = sum_chi (-1)^popcount(chi & g) a[i, chi], with the convention
    that column index bits line up with character bits.
    """
    a = a.copy()
    m, n = a.shape
    h = 1
    while h < n:
        a = a.reshape(m, n // (2 * h), 2, h)
        x = a[:, :, 0, :].copy()
        a[:, :, 0, :] = x + a[:, :, 1, :]
        a[:, :, 1, :] = x - a[:, :, 1, :]
        a = a.reshape(m, n)
        h *= 2
    return a


def survivors_from_l(k: int, l_rows: np.ndarray) -> np.ndarray:
    """Boolean mask of rows that are degrees of an actual smooth cover.

    A candidate l (with l[0] == 0) survives when the linear inversion
    d(g) = -W_l(g) / 2^(k-2) gives nonnegative integers and feeding that d
    back through l(chi) = (sum d - W_d(chi)) / 4 returns l exactly.
    """
    n = 1 << k
    assert l_rows.shape[1] == n
    w = walsh_rows(l_rows.astype(np.int64))
    d = np.zeros((l_rows.shape[0], n), dtype=np.int64)
    if k >= 2:
        denom = 1 << (k - 2)
        num = -w[:, 1:]
        ok = (num % denom == 0).all(axis=1) & (num >= 0).all(axis=1)
        d[:, 1:] = num // denom
    else:
        d[:, 1] = 2 * (l_rows[:, 1] - l_rows[:, 0])
        ok = d[:, 1] >= 0
    wd = walsh_rows(d)
    total = d.sum(axis=1, keepdims=True)
    back_num = total - wd
    ok &= (back_num % 4 == 0).all(axis=1)
    back = back_num // 4
    ok &= (back == l_rows).all(axis=1)
    return ok, d


def dvectors_with_entries_at_most(k: int, bound: int):
    """Iterate every d-vector with d[0] = 0 and entries in 0..bound (k <= 2)."""
    n = 1 << k
    for tail in itertools.product(range(bound + 1), repeat=n - 1):
        yield (0,) + tail


def parity_matrix(k: int) -> np.ndarray:
    """P[chi, g] = parity of popcount(chi & g), built by plain bit shifting."""
    n = 1 << k
    m = np.arange(n)[:, None] & np.arange(n)[None, :]
    p = np.zeros_like(m)
    while m.any():
        p ^= m & 1
        m >>= 1
    return p.astype(np.int64)


def dvectors_block(k: int, bound: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop of the full (bound+1)-ary grid of d-vectors, d[0] = 0."""
    n = 1 << k
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((idx.size, n), dtype=np.int64)
    base = bound + 1
    x = idx.copy()
    for col in range(n - 1, 0, -1):
        out[:, col] = x % base
        x //= base
    return out


def transform_sweep(k: int, bound: int, chunk_rows: int = 250_000):
    """Exact check of both degree transforms over EVERY d-vector with entries <= bound.

    Works purely with the +-1 character table (no butterfly): S = D @ P is twice
    the induced l, and the inversion identity says S @ (1 - 2P) must equal
    2^(k-1) * (total, -d(1), ..., -d(n-1)) row by row.  A row is a valid datum
    exactly when S is even everywhere, which must coincide with the XOR of its
    odd-entry positions vanishing.  Returns (rows, valid_rows, all_ok).
    """
    n = 1 << k
    total_rows = (bound + 1) ** (n - 1)
    P = parity_matrix(k)
    signs = 1 - 2 * P
    col = np.arange(n)
    half = 1 << (k - 1)
    valid = 0
    all_ok = True
    for start in range(0, total_rows, chunk_rows):
        D = dvectors_block(k, bound, start, min(start + chunk_rows, total_rows))
        T = D.sum(axis=1)
        S = D @ P
        SH = S @ signs
        ok = bool((SH[:, 0] == half * T).all())
        ok &= bool((SH[:, 1:] == -half * D[:, 1:]).all())
        integral = (S % 2 == 0).all(axis=1)
        xor_odd = np.bitwise_xor.reduce(np.where(D & 1 == 1, col[None, :], 0), axis=1)
        ok &= bool(((xor_odd == 0) == integral).all())
        all_ok &= ok
        valid += int(integral.sum())
    return total_rows, valid, all_ok


def valid_dvector_count(k: int, bound: int) -> int:
    """Independent count of valid d-grids: sum over zero-XOR parity patterns.

    A d-vector is valid iff the XOR of the positions with odd entries is zero.
    The zero-XOR subsets of the nonzero bitmasks form the kernel of the linear
    map sending an indicator vector to its XOR, so each such subset of size w
    contributes (#even choices)^(n-1-w) * (#odd choices)^w grid points.
    """
    n = 1 << k
    evens = bound // 2 + 1
    odds = (bound + 1) // 2
    total = 0
    for bits in range(1 << (n - 1)):
        positions = [g + 1 for g in range(n - 1) if (bits >> g) & 1]
        x = 0
        for g in positions:
            x ^= g
        if x == 0:
            w = len(positions)
            total += evens ** (n - 1 - w) * odds**w
    return total


def l_blocks_one_four(k: int):
    """Yield blocks of candidate l-vectors: one character of degree 4, rest 1 or 2."""
    n = 1 << k
    m = n - 2
    tail = np.arange(1 << m)
    for pos4 in range(1, n):
        others = [g for g in range(1, n) if g != pos4]
        block = np.zeros((1 << m, n), dtype=np.int64)
        block[:, pos4] = 4
        for j, g in enumerate(others):
            block[:, g] = 1 + ((tail >> j) & 1)
        yield block


def l_blocks_three_threes(k: int):
    """Yield blocks of candidate l-vectors: three characters of degree 3, rest 1 or 2."""
    n = 1 << k
    m = n - 4
    tail = np.arange(1 << m)
    for triple in itertools.combinations(range(1, n), 3):
        others = [g for g in range(1, n) if g not in triple]
        block = np.zeros((1 << m, n), dtype=np.int64)
        for g in triple:
            block[:, g] = 3
        for j, g in enumerate(others):
            block[:, g] = 1 + ((tail >> j) & 1)
        yield block


def l_candidates_heavy_k5() -> np.ndarray:
    """The depth-5 slice: degree 3 on a fixed independent triple, degree 1 on its
    pairwise sums, degree 2 on the triple sum, and six more degree-1 spots among
    the remaining 24 characters."""
    n = 32
    specials = (16, 8, 4)
    pairwise = (24, 20, 12)
    triple_sum = 28
    rest = [g for g in range(1, n) if g not in specials + pairwise + (triple_sum,)]
    combos = list(itertools.combinations(range(len(rest)), 6))
    block = np.full((len(combos), n), 2, dtype=np.int64)
    block[:, 0] = 0
    for g in specials:
        block[:, g] = 3
    for g in pairwise:
        block[:, g] = 1
    rest_arr = np.array(rest)
    for i, combo in enumerate(combos):
        block[i, rest_arr[list(combo)]] = 1
    return block


def all_dvectors_array(k: int, bound: int) -> np.ndarray:
    """All d-vectors with d[0] = 0, entries 0..bound, as one integer matrix."""
    n = 1 << k
    ranges = [np.arange(bound + 1)] * (n - 1)
    grid = np.meshgrid(*ranges, indexing="ij")
    flat = np.stack([g.ravel() for g in grid], axis=1)
    out = np.zeros((flat.shape[0], n), dtype=np.int64)
    out[:, 1:] = flat
    return out
