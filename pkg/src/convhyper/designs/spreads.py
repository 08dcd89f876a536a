"""``n/2``-spreads of F_2^n and the perfect colorings of ``H_n`` they induce.

Constructed spreads are Desarguesian: F_2^n is read as ``GF(2^m)^2`` with
``m = n/2``, the vector ``(a, b)`` encoded as ``a | b << m``, and the classes
are the ``2^m + 1`` lines through the origin.  Field arithmetic uses the
polynomials in ``convhyper.gf2.IRREDUCIBLE``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..gf2 import GF2m, closure_witness, is_linear_subspace
from ..group import Group, indicator, sign_fourier, walsh_hadamard
from ..hypergraph import (
    Coloring,
    Counterexample,
    ParameterTensor,
    PreconditionError,
    check_perfect_via_convolution,
    subspace_H,
)
from .report import DesignReport

MAX_SPREAD_N = 16


@dataclass(frozen=True)
class Spread:
    n: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {"n": self.n, "classes": [list(c) for c in self.classes]}


def spread_construct(n: int) -> Spread:
    if n % 2 or n < 2:
        raise ValueError(f"spreads need an even n >= 2, got {n}")
    if n > MAX_SPREAD_N:
        raise ValueError(f"n = {n} exceeds the supported maximum {MAX_SPREAD_N}")
    m = n // 2
    F = GF2m(m)
    nonzero = range(1, F.size)
    classes = [tuple(sorted(a | F.mul(lam, a) << m for a in nonzero)) for lam in range(F.size)]
    classes.append(tuple(sorted(b << m for b in nonzero)))
    return Spread(n, tuple(sorted(classes)))


def theorem_parameters(n: int, m: int) -> ParameterTensor:
    """Parameter tensor of the coloring of ``H_n`` by an ``n/2``-spread with ``m`` classes."""
    S = np.empty((m, m, m), dtype=object)
    S.fill(Fraction(0))
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if i == j == k:
                    S[i, j, k] = Fraction(2 ** (n // 2 - 1) - 1)
                elif len({i, j, k}) == 3:
                    S[i, j, k] = Fraction(1, 2)
    return ParameterTensor(S)


def partition_witness(classes, n: int) -> dict | None:
    seen: dict[int, int] = {}
    for i, cl in enumerate(classes):
        for x in cl:
            if not 0 < x < 2**n:
                return {"reason": "element is zero or out of range", "element": x, "class": i}
            if x in seen:
                return {"reason": "element in two classes", "element": x, "classes": [seen[x], i]}
            seen[x] = i
    if len(seen) != 2**n - 1:
        missing = next(x for x in range(1, 2**n) if x not in seen)
        return {"reason": "element not covered", "element": missing}
    return None


def spread_check(classes, n: int) -> DesignReport:
    """Verify a spread both by closure and by the parameter tensor of its coloring.

    The two verdicts must agree (the coloring characterises spreads).
    """
    classes = [sorted(int(x) for x in cl) for cl in classes]
    bad = partition_witness(classes, n)
    if bad is not None:
        return DesignReport("NOT_PARTITION", False, {"n": n}, bad)
    m = 2 ** (n // 2) + 1
    witnesses: dict = {}
    if n % 2:
        witnesses["odd_n"] = n
    if len(classes) != m:
        witnesses["class_count"] = {"expected": m, "found": len(classes)}
    closure = {}
    for i, cl in enumerate(classes):
        w = closure_witness(cl)
        if w is not None:
            closure[str(i)] = list(w)
    if closure:
        witnesses["closure"] = closure
    H = subspace_H(n)
    c = Coloring.from_classes(H, classes)
    S = check_perfect_via_convolution(n, c)
    if isinstance(S, Counterexample):
        witnesses["coloring"] = {"reason": S.reason, "vertices": list(S.vertices), **S.detail}
        matches = False
    else:
        expected = theorem_parameters(n, len(classes))
        matches = S == expected
        if not matches:
            ix = next(ix for ix, v in S.items() if v != expected[ix])
            witnesses["S_entry"] = {"index": list(ix), "expected": str(expected[ix]), "found": str(S[ix])}
    if not closure and not n % 2 and len(classes) == m:
        assert matches, "a spread produced a coloring other than the expected one"
    if matches:
        assert not closure, "the expected parameter tensor arose from non-subspace classes"
    ok = not witnesses
    params = {"n": n, "m": len(classes)}
    if ok:
        params["S"] = {"s_iii": str(2 ** (n // 2 - 1) - 1), "s_ijk": "1/2", "s_iij": "0"}
    return DesignReport(
        "SPREAD" if ok else "NOT_SPREAD",
        ok,
        params,
        witnesses,
        value=Spread(n, tuple(tuple(cl) for cl in sorted(classes))) if ok else S,
    )


# -- subspace counting ---------------------------------------------------------------


def subspace_count_bound(P) -> tuple[int, Fraction, bool]:
    """Number of 2-dimensional subspaces inside ``P`` against ``(|P|-1)(|P|/2-1)/3``."""
    P = sorted(set(int(x) for x in P))
    if not P or P[0] != 0:
        raise PreconditionError("P must contain the zero vector")
    members = set(P)
    nonzero = P[1:]
    count = 0
    for i, a in enumerate(nonzero):
        for b in nonzero[i + 1 :]:
            c = a ^ b
            if c > b and c in members:
                count += 1
    size = len(P)
    bound = Fraction((size - 1) * (size - 2), 6)
    tight = count == bound
    assert tight == is_linear_subspace(P), f"bound tightness disagrees with linearity for {P}"
    return count, bound, tight


def hyperspace_majority_witness(P, n: int) -> int:
    """Smallest ``z != 0`` whose hyperplane ``{x : (x, z) = 0}`` holds most of ``P``."""
    P = sorted(set(int(x) for x in P))
    if not P or P[0] != 0:
        raise PreconditionError("P must contain the zero vector")
    if len(P) >= 2**n:
        raise PreconditionError("P must be a proper subset")
    G = Group(2, n)
    W = walsh_hadamard(indicator(G, P).values)
    positive = np.flatnonzero(W[1:] > 0) + 1
    if not len(positive):
        raise AssertionError("no positive Fourier coefficient off zero")
    z = int(positive[0])
    assert sign_fourier(indicator(G, P))[z].real > 0
    inside = sum(1 for x in P if G.dot(x, z) == 0)
    assert inside > len(P) - inside, "hyperplane does not hold a majority of P"
    return z
