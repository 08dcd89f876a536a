"""Bitset helpers for F_2^n and the fields GF(2^m) used to build spreads."""

from __future__ import annotations

from functools import cached_property

# x^m + ... ; bit i is the coefficient of x^i, top bit included
IRREDUCIBLE = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


def popcount(x: int) -> int:
    return bin(x).count("1")


def dot(x: int, z: int) -> int:
    return popcount(x & z) & 1


def is_linear_subspace(elements) -> bool:
    s = set(int(x) for x in elements)
    if 0 not in s:
        return False
    return all((x ^ y) in s for x in s for y in s if x < y)


def closure_witness(elements) -> tuple[int, int] | None:
    """Two elements whose sum leaves ``elements`` (zero is treated as present)."""
    s = set(int(x) for x in elements) | {0}
    for x in sorted(s):
        for y in sorted(s):
            if x < y and (x ^ y) not in s:
                return x, y
    return None


def span(vectors) -> set[int]:
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return out


def orthogonal_complement(elements, n: int) -> list[int]:
    s = [int(x) for x in elements]
    return [z for z in range(1 << n) if all(dot(x, z) == 0 for x in s)]


class GF2m:
    """Arithmetic in GF(2^m) = F_2[x] / (p(x)) with a fixed irreducible ``p``."""

    def __init__(self, m: int, poly: int | None = None):
        if poly is None:
            if m not in IRREDUCIBLE:
                raise ValueError(f"no stored irreducible polynomial for m = {m}")
            poly = IRREDUCIBLE[m]
        self.m = m
        self.poly = poly
        self.size = 1 << m

    def mul(self, a: int, b: int) -> int:
        result = 0
        while b:
            if b & 1:
                result ^= a
            b >>= 1
            a <<= 1
            if a >> self.m:
                a ^= self.poly
        return result

    @cached_property
    def table(self) -> list[list[int]]:
        return [[self.mul(a, b) for b in range(self.size)] for a in range(self.size)]
