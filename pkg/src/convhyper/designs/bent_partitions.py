"""Normal and strong bent partitions, their duals, and the colorings of ``H_n`` they give.

A partition is ``{U, P_1, ..., P_K}`` of all of F_2^n.  ``U`` may be affine;
the checker translates everything by one element of ``U`` so that ``U`` is
linear, and all reported sets are in the translated coordinates (the offset
is stored on the result).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from ..gf2 import closure_witness, orthogonal_complement
from ..group import Group, convolve, delta, indicator, ones, walsh_hadamard
from ..hypergraph import Coloring, Counterexample, PreconditionError, check_perfect, subspace_H
from .report import DesignReport

MAX_DEPTH = 16
_SPLIT_CHUNK = 512


@dataclass(frozen=True)
class BentPartition:
    n: int
    k: int
    U: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    offset: int = 0
    normal_verified: bool = False
    strong_verified: bool = False
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def depth(self) -> int:
        return len(self.classes)

    def same_sets(self, other: BentPartition) -> bool:
        """Equal as set systems, ignoring class order."""
        return (
            self.n == other.n
            and set(self.U) == set(other.U)
            and sorted(map(sorted, self.classes)) == sorted(map(sorted, other.classes))
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "offset": self.offset,
            "U": list(self.U),
            "classes": [list(c) for c in self.classes],
            "normal": self.normal_verified,
            "strong": self.strong_verified,
        }


def _shape_witness(n: int, U, classes) -> dict | None:
    N = 2**n
    if n % 2:
        return {"reason": "n must be even", "n": n}
    K = len(classes)
    if K < 2 or K & (K - 1):
        return {"reason": "number of classes is not a power of two >= 2", "K": K}
    if K > MAX_DEPTH:
        return {"reason": f"depth {K} exceeds the supported maximum {MAX_DEPTH}", "K": K}
    seen: dict[int, int] = {}
    for i, part in enumerate([U, *classes]):
        for x in part:
            if not 0 <= x < N:
                return {"reason": "element out of range", "element": x}
            if x in seen:
                return {"reason": "element in two parts", "element": x, "parts": [seen[x], i]}
            seen[x] = i
    if len(seen) != N:
        return {"reason": "parts do not cover F_2^n", "element": next(x for x in range(N) if x not in seen)}
    if len(U) != 2 ** (n // 2):
        return {"reason": "|U| differs from 2^(n/2)", "size": len(U)}
    expected = (2**n - 2 ** (n // 2)) // K
    for i, part in enumerate(classes):
        if len(part) != expected:
            return {"reason": "class size differs from (2^n - 2^(n/2)) / K", "class": i + 1, "size": len(part), "expected": expected}
    return None


def _translate(U, classes):
    offset = min(U)
    return offset, sorted(x ^ offset for x in U), [sorted(x ^ offset for x in cl) for cl in classes]


def _split_witness(n: int, WU: np.ndarray, WP: np.ndarray) -> dict | None:
    """First balanced split (with a constant on ``U``) whose sign function is not bent."""
    K = WP.shape[0]
    target = 2 ** (n // 2)
    splits = itertools.combinations(range(K), K // 2)
    while True:
        chunk = list(itertools.islice(splits, _SPLIT_CHUNK))
        if not chunk:
            return None
        signs = np.ones((len(chunk), K), dtype=np.int64)
        for r, T in enumerate(chunk):
            signs[r, list(T)] = -1
        body = signs @ WP
        for u_sign in (1, -1):
            W = body + u_sign * WU
            bad = np.flatnonzero(np.any(np.abs(W) != target, axis=1))
            if len(bad):
                r = int(bad[0])
                z = int(np.flatnonzero(np.abs(W[r]) != target)[0])
                return {
                    "split": [i + 1 for i in chunk[r]],
                    "constant_on_U": 0 if u_sign == 1 else 1,
                    "z": z,
                    "walsh": int(W[r, z]),
                }


def _fourier_pattern(n: int, k: int, U: list[int], WP: np.ndarray) -> tuple[dict | None, dict | None]:
    """Check the value pattern of ``hat chi_{P_i}``; returns (normal-shape witness, strong witness)."""
    K, N = WP.shape
    h = 2 ** (n // 2)
    # scaled by 2^k * 2^(n/2) / 2^(n/2): compare 2^k * W / 2^(n/2) as integers
    if np.any((WP * K) % h):
        z = int(np.flatnonzero(np.any((WP * K) % h, axis=0))[0])
        return {"reason": "Fourier value off the lattice 1/2^k", "z": z}, None
    V = WP * K // h
    perp = set(orthogonal_complement(U, n))
    if np.any(V[:, 0] != h - 1):
        return {"reason": "wrong value at zero", "values": V[:, 0].tolist()}, None
    strong_bad = None
    for z in range(1, N):
        col = V[:, z]
        if z in perp:
            if np.any(col != -1):
                return {"reason": "value on the dual of U is not -1/2^k", "z": z}, None
            continue
        big = np.flatnonzero(col != -1)
        if len(big) == 1 and col[big[0]] == K - 1:
            continue
        small = np.flatnonzero(col != 1)
        if len(small) == 1 and col[small[0]] == 1 - K:
            if strong_bad is None:
                strong_bad = {"z": z, "class": int(small[0]) + 1}
            continue
        return {"reason": "Fourier values match neither pattern", "z": z, "values": col.tolist()}, None
    return None, strong_bad


def bent_partition_check(U, classes, n: int) -> DesignReport:
    """Verify normality by enumerating splits and strength by the Fourier pattern."""
    U = sorted(int(x) for x in U)
    classes = [sorted(int(x) for x in cl) for cl in classes]
    bad = _shape_witness(n, U, classes)
    if bad is not None:
        return DesignReport("BAD_SHAPE", False, {"n": n}, bad)
    offset, U, classes = _translate(U, classes)
    K = len(classes)
    k = K.bit_length() - 1
    params = {"n": n, "k": k, "depth": K, "offset": offset, "splits": comb(K, K // 2) * 2}
    wit = closure_witness(U)
    if wit is not None:
        return DesignReport("NOT_BENT_PARTITION", False, params, {"reason": "U is not an affine subspace", "pair": list(wit)})
    G = Group(2, n)
    WU = walsh_hadamard(indicator(G, U).values)
    WP = np.stack([walsh_hadamard(indicator(G, cl).values) for cl in classes])
    split_bad = _split_witness(n, WU, WP)
    if split_bad is not None:
        bp = BentPartition(n, k, tuple(U), tuple(map(tuple, classes)), offset, False, False, {"split": split_bad})
        return DesignReport("NOT_BENT_PARTITION", False, params, {"split": split_bad}, value=bp)
    shape_bad, strong_bad = _fourier_pattern(n, k, U, WP)
    if shape_bad is not None:
        raise AssertionError(f"normal bent partition with an impossible Fourier value: {shape_bad}")
    strong = strong_bad is None
    witnesses = {} if strong else {"pattern2": strong_bad}
    bp = BentPartition(n, k, tuple(U), tuple(map(tuple, classes)), offset, True, strong, witnesses)
    return DesignReport("STRONG" if strong else "NORMAL", True, params, witnesses, value=bp)


def _require_strong(bp) -> BentPartition:
    if isinstance(bp, DesignReport):
        bp = bp.value
    if not isinstance(bp, BentPartition) or not bp.strong_verified:
        raise PreconditionError("a verified strong bent partition is required")
    return bp


def _extract_dual(n: int, k: int, U, classes) -> tuple[list[int], list[list[int]]]:
    """``U^perp`` and ``R_j = {z : hat chi_{P_j}(z) = 1 - 1/2^k}``."""
    G = Group(2, n)
    K, h = 2**k, 2 ** (n // 2)
    perp = orthogonal_complement(U, n)
    skip = set(perp)
    owner: dict[int, int] = {}
    R: list[list[int]] = [[] for _ in range(K)]
    for j, cl in enumerate(classes):
        V = walsh_hadamard(indicator(G, cl).values) * K
        for z in np.flatnonzero(V == (K - 1) * h):
            z = int(z)
            if z in skip:
                continue
            if z in owner:
                raise AssertionError(f"z = {z} lies in R_{owner[z] + 1} and R_{j + 1}")
            owner[z] = j
            R[j].append(z)
    stray = set(range(2**n)) - set(owner) - skip
    if stray:
        raise AssertionError(f"z = {min(stray)} belongs to no R_j")
    return perp, R


def dual_bent_partition(bp) -> BentPartition:
    """The dual strong partition ``{U^perp, R_1, ..., R_K}``; checks size, strength and involution."""
    bp = _require_strong(bp)
    perp, R = _extract_dual(bp.n, bp.k, bp.U, bp.classes)
    size = (2**bp.n - 2 ** (bp.n // 2)) // 2**bp.k
    assert all(len(r) == size for r in R), "dual classes have the wrong size"
    report = bent_partition_check(perp, R, bp.n)
    if not report.ok or not report.value.strong_verified:
        raise AssertionError(f"dual partition is not strong: {report.witnesses}")
    back_U, back = _extract_dual(bp.n, bp.k, perp, R)
    again = BentPartition(bp.n, bp.k, tuple(back_U), tuple(map(tuple, back)))
    assert again.same_sets(bp), "dual of the dual differs from the original partition"
    return report.value


def convolution_identities(bp) -> dict:
    """Check the three convolution identities behind the coloring theorem at every ``x != 0``.

    Returns a map from identity name to the first failing ``x`` (empty when all hold).
    """
    bp = _require_strong(bp)
    n, K = bp.n, 2**bp.k
    G = Group(2, n)
    h = Fraction(2 ** (n // 2))
    N = Fraction(2**n)
    one, d0 = ones(G).values, delta(G).values
    U0 = indicator(G, [x for x in bp.U if x]).values
    P = [indicator(G, cl).values for cl in bp.classes]
    failures: dict = {}

    def compare(name, lhs, rhs):
        bad = [x for x in range(1, 2**n) if Fraction(int(lhs[x])) != rhs[x]]
        if bad:
            failures[name] = bad[0]

    def conv(a, b):
        return convolve(indicator_fn(a), indicator_fn(b)).values

    def indicator_fn(v):
        return indicator(G, np.flatnonzero(v))

    for i in range(K):
        for j in range(i, K):
            lhs = conv(P[i], P[j])
            if i != j:
                rhs = [-(h / K) * (P[i][x] + P[j][x]) + N / K**2 * (one[x] - d0[x]) for x in range(2**n)]
            else:
                rhs = [
                    h * (1 - Fraction(2, K)) * P[i][x] + (N / K**2 - h / K) * one[x] + (N / K - N / K**2) * d0[x]
                    for x in range(2**n)
                ]
            compare(f"P{i + 1}*P{j + 1}", lhs, rhs)
        lhs = conv(U0, P[i])
        rhs = [-(h / K) * U0[x] - P[i][x] + h / K * one[x] - h / K * d0[x] for x in range(2**n)]
        compare(f"U*P{i + 1}", lhs, rhs)
    lhs = conv(U0, U0)
    rhs = [(h - 2) * U0[x] + (h - 1) * d0[x] for x in range(2**n)]
    compare("U*U", lhs, rhs)
    return failures


def bent_partition_to_coloring(bp) -> DesignReport:
    """Perfect coloring of ``H_n`` with colors ``U minus 0`` (color 0) and ``P_1..P_K`` (colors 1..K)."""
    bp = _require_strong(bp)
    H = subspace_H(bp.n)
    parts = [[x for x in bp.U if x], *bp.classes]
    c = Coloring.from_classes(H, parts, allow_empty=True)
    S = check_perfect(H, c)
    failures = convolution_identities(bp)
    params = {"n": bp.n, "colors": len(parts), "offset": bp.offset}
    witnesses = {}
    if isinstance(S, Counterexample):
        witnesses["coloring"] = {"reason": S.reason, "vertices": list(S.vertices)}
    else:
        params["S"] = S.to_json()
    if failures:
        witnesses["identities"] = failures
    ok = not witnesses
    return DesignReport("PERFECT" if ok else "IMPERFECT", ok, params, witnesses, value=S)


def spread_partition(spread, u_index: int = 0) -> tuple[list[int], list[list[int]]]:
    """``U`` = one spread class plus zero; the remaining classes become ``P_1..P_K``."""
    classes = [list(c) for c in spread.classes]
    U = [0, *classes.pop(u_index)]
    return sorted(U), classes


def merge_classes(classes, groups) -> list[list[int]]:
    """Unite classes along ``groups`` (lists of 0-based class indices)."""
    return [sorted(x for i in g for x in classes[i]) for g in groups]
