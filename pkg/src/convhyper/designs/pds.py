"""Partial difference sets in F_2^n: detection, eigenfunctions of the
convolution tensor, and the associated perfect 2-coloring of ``H_n``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy as sp

from ..group import Group, GroupFunction, convolve, delta, indicator, ones, t_fold_convolve
from ..hypergraph import Coloring, Counterexample, check_perfect, subspace_H
from .report import DesignReport


@dataclass(frozen=True)
class PdsParams:
    v: int
    k: int
    lam: int
    mu: int
    # no nonzero element lies outside D, so mu is not determined; set to lam
    mu_vacuous: bool = False

    @property
    def is_difference_set(self) -> bool:
        return self.lam == self.mu

    def consistent(self) -> bool:
        return self.lam * self.k + self.mu * (self.v - 1 - self.k) == self.k * (self.k - 1)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def _validate_set(D, n: int) -> list[int]:
    D = sorted(set(int(x) for x in D))
    if not D:
        raise ValueError("D must be nonempty")
    if D[0] == 0:
        raise ValueError("D must not contain the zero vector")
    if D[-1] >= 2**n:
        raise ValueError(f"element {D[-1]} is outside F_2^{n}")
    return D


def pds_check(D, n: int) -> DesignReport:
    """Read ``lam``/``mu`` off ``chi_D * chi_D`` and confirm the PDS identity."""
    D = _validate_set(D, n)
    G = Group(2, n)
    chi = indicator(G, D)
    conv = convolve(chi, chi).values
    inside = np.zeros(G.size, dtype=bool)
    inside[D] = True
    outside = ~inside
    outside[0] = False
    lam = int(conv[D[0]])
    bad = [x for x in D if conv[x] != lam]
    if bad:
        return DesignReport("NOT_PDS", False, {"n": n, "k": len(D)}, {"x": [D[0], bad[0]], "region": "D"})
    out_elems = np.flatnonzero(outside)
    vacuous = len(out_elems) == 0
    mu = lam if vacuous else int(conv[out_elems[0]])
    bad = [int(x) for x in out_elems if conv[x] != mu]
    if bad:
        return DesignReport(
            "NOT_PDS", False, {"n": n, "k": len(D)}, {"x": [int(out_elems[0]), bad[0]], "region": "outside"}
        )
    k = len(D)
    identity = (lam - mu) * chi + mu * ones(G) + (k - mu) * delta(G)
    assert np.array_equal(identity.values, conv), "PDS identity failed despite constant regions"
    params = PdsParams(G.size, k, lam, mu, vacuous)
    assert params.consistent()
    return DesignReport(
        "PDS",
        True,
        {"v": params.v, "k": k, "lambda": lam, "mu": mu, "difference_set": params.is_difference_set, "mu_vacuous": vacuous},
        value=params,
    )


# -- eigenfunctions f = chi_D + beta*1 + alpha*chi_0 ----------------------------


@dataclass(frozen=True)
class PdsEigenfunction:
    branch: str
    alpha: complex
    beta: complex
    theta: complex
    residual: float
    exact: bool = False


def eigenfunction_vector(D, n: int, alpha, beta) -> GroupFunction:
    G = Group(2, n)
    chi = indicator(G, D)
    exact = all(isinstance(x, (int, Fraction)) for x in (alpha, beta))
    if exact:
        v = np.array([Fraction(int(c)) for c in chi.values], dtype=object)
        return GroupFunction(G, v + Fraction(beta) + Fraction(alpha) * delta(G).values)
    return GroupFunction(G, chi.values + complex(beta) + complex(alpha) * delta(G).values.astype(complex))


def eigen_residual(D, n: int, alpha, beta, theta) -> float:
    """``max |f * f - theta f^2|`` for ``f = chi_D + beta 1 + alpha chi_0``."""
    f = eigenfunction_vector(D, n, alpha, beta)
    diff = t_fold_convolve(f, 1, method="direct").values - theta * f.values**2
    return float(max(abs(complex(x)) for x in diff))


def branch_a_polynomial(params: PdsParams) -> sp.Poly:
    """Numerator polynomial in ``beta`` after eliminating ``alpha`` and ``theta``.

    Factors ``beta`` and ``beta + 1`` are divided out.
    """
    v, k, lam, mu = (sp.Integer(x) for x in params.as_tuple())
    b = sp.Symbol("beta")
    Q = b * (b + 1)
    N = v * b**2 + (2 * k - lam + mu) * b + mu
    theta = -N / Q
    alpha = (mu - lam + theta * (1 + 2 * b)) / 2
    num, _ = sp.fraction(sp.together(alpha**2 + k - mu - theta * (alpha**2 + 2 * alpha * b)))
    P = sp.Poly(sp.expand(num), b)
    for root in (0, -1):
        while not P.is_zero and P.eval(root) == 0:
            P = sp.Poly(sp.quo(P.as_expr(), b - root), b)
    return P


def _branch_a(D, n, params: PdsParams, tol: float) -> list[PdsEigenfunction]:
    P = branch_a_polynomial(params)
    if P.degree() < 1:
        return []
    v, k, lam, mu = params.as_tuple()
    out = []
    seen: list[complex] = []
    for r in P.nroots(n=30, maxsteps=200):
        beta = complex(r)
        if abs(beta) < 1e-12 or abs(beta + 1) < 1e-12:
            continue
        if any(abs(beta - s) < 1e-10 for s in seen):
            continue
        seen.append(beta)
        theta = -(v * beta**2 + (2 * k - lam + mu) * beta + mu) / (beta * (beta + 1))
        alpha = (mu - lam + theta * (1 + 2 * beta)) / 2
        res = eigen_residual(D, n, alpha, beta, theta)
        if res <= tol:
            out.append(PdsEigenfunction("a", alpha, beta, theta, res))
    return out


def _exact_or_float(r):
    r = sp.nsimplify(r) if r.is_Rational else r
    if r.is_Rational:
        return Fraction(int(r.p), int(r.q)), True
    return complex(sp.N(r, 30)), False


def _cubic_branch(D, n, branch: str, beta, cubic: sp.Poly, theta_of, tol: float) -> list[PdsEigenfunction]:
    out = []
    for r in set(cubic.all_roots()):
        alpha, exact = _exact_or_float(r)
        theta = theta_of(alpha)
        f = eigenfunction_vector(D, n, alpha, beta)
        if not np.any(np.asarray(f.values) != 0):
            continue
        res = eigen_residual(D, n, alpha, beta, theta)
        if res <= tol:
            out.append(PdsEigenfunction(branch, alpha, beta, theta, res, exact))
    return out


def _branch_b(D, n, params: PdsParams, tol: float) -> list[PdsEigenfunction]:
    # beta = 0 forces mu = 0; theta = 2 alpha + lam and alpha^2 + k = theta alpha^2
    v, k, lam, mu = params.as_tuple()
    if mu != 0:
        return []
    a = sp.Symbol("alpha")
    cubic = sp.Poly(2 * a**3 + (lam - 1) * a**2 - k, a)
    return _cubic_branch(D, n, "b", 0, cubic, lambda al: 2 * al + lam, tol)


def _branch_c(D, n, params: PdsParams, tol: float) -> list[PdsEigenfunction]:
    # beta = -1: the first two equations force v - 2k + lam = 0 and theta = mu - lam - 2 alpha
    v, k, lam, mu = params.as_tuple()
    if v - 2 * k + lam != 0:
        return []
    a = sp.Symbol("alpha")
    cubic = sp.Poly(2 * a**3 + (lam - mu - 3) * a**2 + 2 * (mu - lam) * a + k - mu, a)
    return _cubic_branch(D, n, "c", -1, cubic, lambda al: mu - lam - 2 * al, tol)


def pds_eigenfunctions(D, params: PdsParams, n: int, tol: float = 1e-8) -> list[PdsEigenfunction]:
    """Eigenfunctions ``chi_D + beta 1 + alpha chi_0`` of the convolution tensor.

    Every returned solution has been checked against ``f * f = theta f^2``.
    """
    D = _validate_set(D, n)
    return _branch_a(D, n, params, tol) + _branch_b(D, n, params, tol) + _branch_c(D, n, params, tol)


# -- perfect coloring of H_n ----------------------------------------------------------


def closed_form_parameters(n: int, params: PdsParams) -> dict[tuple[int, int, int], Fraction]:
    """The parameter tensor of ``chi_D`` on ``H_n`` predicted from ``(v, k, lam, mu)``."""
    _, k, lam, mu = params.as_tuple()
    half = Fraction(1, 2)
    s = {
        (0, 0, 0): 2 ** (n - 1) - k + half * mu - 1,
        (1, 0, 0): 2 ** (n - 1) - k + half * lam,
        (0, 1, 0): half * (k - mu),
        (0, 0, 1): half * (k - mu),
        (1, 0, 1): half * (k - lam - 1),
        (1, 1, 0): half * (k - lam - 1),
        (0, 1, 1): half * mu,
        (1, 1, 1): half * lam,
    }
    return {ix: Fraction(val) for ix, val in s.items()}


def pds_to_coloring(D, n: int, params: PdsParams | None = None) -> DesignReport:
    """Color ``H_n`` by membership in ``D`` (color 1 = in D) and compare with the closed form."""
    D = _validate_set(D, n)
    check = pds_check(D, n)
    H = subspace_H(n)
    colors = np.zeros(H.vertex_count, dtype=np.int64)
    colors[np.asarray(D) - 1] = 1
    c = Coloring(H, colors, 2, allow_empty=True)
    S = check_perfect(H, c)
    if not check.ok:
        if not isinstance(S, Counterexample):
            raise AssertionError("a non-PDS set produced a perfect coloring")
        return DesignReport(
            "NOT_PDS", False, {"n": n}, {"pds": check.witnesses, "coloring": list(S.vertices)}, value=S
        )
    params = params or check.value
    if isinstance(S, Counterexample):
        raise AssertionError(f"PDS {params} produced an imperfect coloring: {S}")
    expected = closed_form_parameters(n, params)
    diff = {}
    for ix, val in expected.items():
        if ix[0] in S.empty_colors:
            continue
        if S[ix] != val:
            diff[",".join(map(str, ix))] = {"expected": str(val), "found": str(S[ix])}
    ok = not diff
    return DesignReport(
        "PERFECT" if ok else "MISMATCH",
        ok,
        {
            "n": n,
            "pds": list(params.as_tuple()),
            "S": S.to_json(),
            "theorem_scope": params.lam != params.mu,
            "vacuous_colors": sorted(S.empty_colors),
        },
        {"S_diff": diff} if diff else {},
        value=S,
    )
