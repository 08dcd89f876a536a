"""Closed-form eigenvalue families of the convolution tensors of F_2^n and F_3^n.

``A_{F_p^n}`` is the ``n``-fold Kronecker power of ``A_{F_p}``, so products of
base eigenvalues are eigenvalues, with Kronecker products of base
eigenvectors as eigenvectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy as sp

from .group import Group, UnsupportedGroupError, dense_convolution_tensor
from .tensor import (
    DEFAULT_TOL,
    DenseTensor,
    EigenPair,
    characteristic_polynomial_order2,
    from_function,
    kronecker_vector,
    solve_eigensystem_order2,
    solve_eigensystem_order3,
    verify_eigenpair,
)

THETA = sp.Symbol("theta")
DENSE_LIMIT = 9

_I7 = sp.I * sp.sqrt(7)
_I3 = sp.I * sp.sqrt(3)
# base roots in the order (1, r0, r1, r2): the family uses r0^k0 r1^k1 r2^k2 1^rest
_BASE_ROOTS = {
    2: (sp.Integer(1), sp.Integer(2), (-1 + _I7) / 2, (-1 - _I7) / 2),
    3: (sp.Integer(1), sp.Integer(3), _I3, -_I3),
}


def _check_prime(p: int) -> None:
    if p not in _BASE_ROOTS:
        raise UnsupportedGroupError(f"eigenvalue families are known for p = 2, 3 only, got {p}")


@dataclass(frozen=True)
class BaseSpectrum:
    p: int
    polynomial: sp.Poly
    roots: tuple

    def coefficients(self) -> list[int]:
        return [int(c) for c in self.polynomial.all_coeffs()]

    def max_root_residual(self) -> float:
        return max(abs(complex(self.polynomial.eval(r))) for r in self.roots)


def characteristic_polynomial(p: int) -> sp.Poly:
    """``theta^4 - 2 theta^3 + theta^2 - 4 theta + 4`` for p = 2 (computed as a resultant);
    ``(theta - 1)^3 (theta - 3)^3 (theta^2 + 3)^3`` for p = 3 (stated, not recomputed)."""
    _check_prime(p)
    if p == 2:
        return characteristic_polynomial_order2(dense_convolution_tensor(Group(2, 1)))
    return sp.Poly(sp.expand((THETA - 1) ** 3 * (THETA - 3) ** 3 * (THETA**2 + 3) ** 3), THETA)


@lru_cache(maxsize=None)
def base_spectrum(p: int) -> BaseSpectrum:
    P = characteristic_polynomial(p)
    roots = tuple(sorted(sp.roots(P, THETA), key=lambda r: (float(sp.im(r)), float(sp.re(r)))))
    return BaseSpectrum(p, P, roots)


def family_exponents(n: int):
    """All ``(k0, k1, k2)`` with nonnegative entries and sum at most ``n``."""
    for k0, k1, k2 in itertools.product(range(n + 1), repeat=3):
        if k0 + k1 + k2 <= n:
            yield k0, k1, k2


def _check_exponents(n: int, k0: int, k1: int, k2: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if min(k0, k1, k2) < 0:
        raise ValueError("exponents must be nonnegative")
    if k0 + k1 + k2 > n:
        raise ValueError(f"k0 + k1 + k2 = {k0 + k1 + k2} exceeds n = {n}")


def family_value_exact(p: int, n: int, k0: int, k1: int, k2: int):
    _check_prime(p)
    _check_exponents(n, k0, k1, k2)
    if p == 2:
        return sp.nsimplify(2 ** (k0 - k1 - k2)) * (-1 + _I7) ** k1 * (-1 - _I7) ** k2
    return 3**k0 * _I3**k1 * (-_I3) ** k2


def family_value(p: int, n: int, k0: int, k1: int, k2: int) -> complex:
    return complex(sp.N(sp.expand(family_value_exact(p, n, k0, k1, k2)), 30))


@dataclass(frozen=True)
class EigenvalueFamily:
    p: int
    n: int
    k0: int
    k1: int
    k2: int

    @property
    def exact(self):
        return sp.expand(family_value_exact(self.p, self.n, self.k0, self.k1, self.k2))

    @property
    def value(self) -> complex:
        return family_value(self.p, self.n, self.k0, self.k1, self.k2)


@lru_cache(maxsize=None)
def base_tensor(p: int) -> DenseTensor:
    _check_prime(p)
    return dense_convolution_tensor(Group(p, 1))


@lru_cache(maxsize=None)
def _base_vector(p: int, index: int) -> np.ndarray:
    root = _BASE_ROOTS[p][index]
    A = base_tensor(p)
    if p == 2:
        sols = solve_eigensystem_order2(A, complex(root))
    else:
        sols = solve_eigensystem_order3(A, root)
    if not sols:
        raise AssertionError(f"no eigenvector of A_F{p} for theta = {root}")
    return sols[0]


def base_eigenvector(p: int, root) -> np.ndarray:
    """An eigenvector of ``A_{F_p}`` for one of its base eigenvalues."""
    _check_prime(p)
    for i, r in enumerate(_BASE_ROOTS[p]):
        if sp.simplify(sp.sympify(root) - r) == 0:
            return _base_vector(p, i).copy()
    raise ValueError(f"{root} is not a base eigenvalue for p = {p}")


def verify_family_member(p: int, n: int, k0: int, k1: int, k2: int, tol: float = DEFAULT_TOL) -> EigenPair:
    """Build the Kronecker eigenvector of a family member and check it on the dense tensor."""
    _check_prime(p)
    _check_exponents(n, k0, k1, k2)
    if p**n > DENSE_LIMIT:
        raise ValueError(f"p^n = {p**n} exceeds the dense limit {DENSE_LIMIT}")
    factors = [1] * k0 + [2] * k1 + [3] * k2 + [0] * (n - k0 - k1 - k2)
    f = np.ones(1, dtype=complex)
    for i in factors:
        f = kronecker_vector(f, _base_vector(p, i))
    theta = family_value(p, n, k0, k1, k2)
    pair = verify_eigenpair(dense_convolution_tensor(Group(p, n)), f, theta, tol)
    pair.extra.update({"p": p, "n": n, "k": (k0, k1, k2), "exact": str(sp.expand(family_value_exact(p, n, k0, k1, k2)))})
    return pair


def catalog(max_size: int = DENSE_LIMIT, tol: float = DEFAULT_TOL) -> list[dict]:
    """Every family member with ``p^n <= max_size``, each verified by residual."""
    out = []
    for p in (2, 3):
        n = 1
        while p**n <= max_size:
            for k0, k1, k2 in family_exponents(n):
                pair = verify_family_member(p, n, k0, k1, k2, tol)
                out.append(
                    {
                        "p": p,
                        "n": n,
                        "k0": k0,
                        "k1": k1,
                        "k2": k2,
                        "re": pair.value.real,
                        "im": pair.value.imag,
                        "verified": pair.ok,
                    }
                )
            n += 1
    return out


# -- the sum-zero F_3 tensor --------------------------------------------------------


def sum_zero_f3_tensor() -> DenseTensor:
    """The 3x3x3 tensor with ones where ``x + y + z = 0``.

    It is often written down in place of the convolution tensor of F_3 (ones
    where ``x = y + z``); the two differ by negating the first index.  Both
    have eigenvalues 1, 3 and ``+-i sqrt 3``, and this one equals ``2E + I``
    for the single-edge adjacency tensor ``E``.
    """
    return from_function(3, 3, lambda ix: int(sum(ix) % 3 == 0))


def single_edge_tensor() -> DenseTensor:
    """Adjacency tensor of the 3-vertex hypergraph with one edge: 1/2 on permutations of (0, 1, 2)."""
    from fractions import Fraction

    return from_function(3, 3, lambda ix: Fraction(1, 2) if sorted(ix) == [0, 1, 2] else Fraction(0))
