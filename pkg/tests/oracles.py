"""
Independent brute-force references.  Everything here enumerates vectors
or maps over a small prime field and uses plain integer arithmetic, so it
shares no code with the elimination routines under test.
"""

import itertools

import numpy as np


def vectors(p, n):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=n)]


def kernel_set(a, p, n):
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return {tuple(v) for v in vectors(p, n)}
    return {tuple(v) for v in vectors(p, n) if not ((a @ v) % p).any()}


def span_set(cols, p, n):
    """All combinations of the columns of ``cols`` (n x k)."""
    cols = np.asarray(cols, dtype=np.int64)
    if cols.size == 0:
        return {(0,) * n}
    cols = cols.reshape(n, -1)
    k = cols.shape[1]
    return {tuple((cols @ np.array(c, dtype=np.int64)) % p) for c in itertools.product(range(p), repeat=k)}


def image_set(a, p, rows, cols):
    a = np.asarray(a, dtype=np.int64)
    return span_set(a.reshape(rows, cols) if a.size else a, p, rows)


def log_size(s, p):
    """Dimension of a subspace given as a set of vectors."""
    d, n = 0, len(s)
    while n > 1:
        n //= p
        d += 1
    return d


def rank_by_enumeration(a, p, rows, cols):
    return log_size(image_set(a, p, rows, cols), p)


def all_matrices(p, rows, cols):
    for e in itertools.product(range(p), repeat=rows * cols):
        yield np.array(e, dtype=np.int64).reshape(rows, cols)


def psi_three_cases(values, j):
    """The three-case reindexing read off a finite list of values."""
    pre = [i for i, v in enumerate(values) if v == j]
    if pre:
        return max(pre)
    below = [v for v in values if v <= j]
    if below:
        j0 = max(below)
        return max(i for i, v in enumerate(values) if v == j0)
    return 0
