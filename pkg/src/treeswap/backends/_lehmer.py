"""Lehmer-code ranking of permutations, scalar and vectorized forms.

Ranks index the dense table of all n! configurations; distances are stored
as bytes, so n is capped well below 13 (12! already needs int64 ranks but
479M bytes of table).
"""

from __future__ import annotations

import math

import numpy as np


def factorials(n: int) -> np.ndarray:
    return np.array([math.factorial(i) for i in range(n + 1)], dtype=np.int64)


def rank_perm(perm) -> int:
    """Lexicographic rank of a permutation of 0..n-1."""
    n = len(perm)
    rank = 0
    fact = 1
    # build factorial weights on the fly, right to left
    weights = [1] * n
    for i in range(n - 2, -1, -1):
        fact *= n - 1 - i
        weights[i] = fact
    for i in range(n):
        smaller = 0
        pi = perm[i]
        for j in range(i + 1, n):
            if perm[j] < pi:
                smaller += 1
        rank += smaller * weights[i]
    return rank


def unrank_perm(rank: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`rank_perm`."""
    digits = []
    fact = math.factorial(n)
    rem = rank
    for i in range(n):
        fact //= n - i
        digits.append(rem // fact)
        rem %= fact
    avail = list(range(n))
    return tuple(avail.pop(d) for d in digits)


def batch_unrank(ranks: np.ndarray, n: int, fact: np.ndarray) -> np.ndarray:
    """Decode an array of ranks into an (N, n) uint8 permutation matrix."""
    count = ranks.shape[0]
    digits = np.empty((count, n), dtype=np.int64)
    rem = ranks.astype(np.int64, copy=True)
    for i in range(n):
        f = fact[n - 1 - i]
        digits[:, i] = rem // f
        rem %= f
    out = np.empty((count, n), dtype=np.uint8)
    avail = np.broadcast_to(np.arange(n, dtype=np.uint8), (count, n)).copy()
    rows = np.arange(count)
    for i in range(n):
        d = digits[:, i]
        out[:, i] = avail[rows, d]
        # drop the chosen element: shift the tail of each row left by one
        width = n - i - 1
        for j in range(width):
            take = avail[:, j + 1]
            avail[:, j] = np.where(j >= d, take, avail[:, j])
    return out


def batch_rank(perms: np.ndarray, fact: np.ndarray) -> np.ndarray:
    """Rank each row of an (N, n) permutation matrix."""
    n = perms.shape[1]
    ranks = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = np.zeros(perms.shape[0], dtype=np.int64)
        col = perms[:, i]
        for j in range(i + 1, n):
            smaller += perms[:, j] < col
        ranks += smaller * fact[n - 1 - i]
    return ranks
