"""Small shared fixtures: classic Boolean functions and sets."""

from __future__ import annotations

import itertools

import numpy as np

from convhyper.designs.boolean import truth_table


def inner_product_tt(n: int) -> np.ndarray:
    """x1 x2 + x3 x4 + ... (bent for even n)."""
    return truth_table(lambda *x: sum(x[2 * i] & x[2 * i + 1] for i in range(n // 2)) % 2, n)


def support(tt) -> list[int]:
    return [int(i) for i in np.flatnonzero(tt)]


def brute_force_convolution(f, g, p: int = 2, n: int | None = None):
    """(f * g)(x) = sum_y f(y) g(x - y) by nested loops over digit vectors."""
    size = len(f)
    if n is None:
        n = round(np.log(size) / np.log(p))

    def digits(x):
        return [(x // p**i) % p for i in range(n)]

    def enc(ds):
        return sum((d % p) * p**i for i, d in enumerate(ds))

    out = []
    for x in range(size):
        dx = digits(x)
        total = 0
        for y in range(size):
            dy = digits(y)
            total += f[y] * g[enc([a - b for a, b in zip(dx, dy)])]
        out.append(total)
    return out


def brute_force_perfect(edges, colors, k):
    """Perfectness by comparing full color-range multisets of every vertex."""
    ranges = {}
    for v in range(len(colors)):
        cnt = {}
        for e in edges:
            if v in e:
                key = tuple(sorted(colors[u] for u in e))
                cnt[key] = cnt.get(key, 0) + 1
        ranges[v] = cnt
    for i in range(k):
        members = [v for v in range(len(colors)) if colors[v] == i]
        if any(ranges[v] != ranges[members[0]] for v in members):
            return False
    return True


def all_subspaces(n: int) -> list[frozenset]:
    seen = set()
    for r in range(n + 1):
        for basis in itertools.combinations(range(1, 2**n), r):
            span = {0}
            for b in basis:
                span |= {x ^ b for x in span}
            seen.add(frozenset(span))
    return sorted(seen, key=lambda s: (len(s), sorted(s)))
