from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import all_subspaces, inner_product_tt, support
from convhyper.designs.pds import (
    PdsParams,
    branch_a_polynomial,
    closed_form_parameters,
    eigen_residual,
    pds_check,
    pds_eigenfunctions,
    pds_to_coloring,
)
from convhyper.hypergraph import Coloring, Counterexample, check_perfect, subspace_H

MCFARLAND4 = support(inner_product_tt(4))


def params(D, n):
    r = pds_check(D, n)
    assert r.ok, r.witnesses
    return r.value


def test_check_examples():
    assert params([1, 2, 3], 2).as_tuple() == (4, 3, 2, 2)
    assert params(MCFARLAND4, 4).as_tuple() == (16, 6, 2, 2)
    assert params([1], 3).as_tuple() == (8, 1, 0, 0)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_mcfarland_family(n):
    D = support(inner_product_tt(n))
    v, k, lam, mu = params(D, n).as_tuple()
    h = 2 ** (n // 2 - 1)
    assert (v, k, lam, mu) == (2**n, 2 ** (n - 1) - h, 2 ** (n - 2) - h, 2 ** (n - 2) - h)


def test_subspace_minus_zero():
    p = params([1, 2, 3], 4)
    assert p.as_tuple() == (16, 3, 2, 0)
    assert p.consistent() and not p.is_difference_set


def test_check_errors_and_witness():
    with pytest.raises(ValueError):
        pds_check([0, 1], 2)
    with pytest.raises(ValueError):
        pds_check([], 2)
    with pytest.raises(ValueError):
        pds_check([8], 3)
    r = pds_check([1, 2], 3)
    assert not r.ok and r.verdict == "NOT_PDS"
    assert r.witnesses["region"] in ("D", "outside")


def test_vacuous_mu_flag():
    assert pds_check([1, 2, 3], 2).parameters["mu_vacuous"]


# -- eigenfunctions ------------------------------------------------------------------


def test_branch_a_mcfarland_theta_four():
    sols = pds_eigenfunctions(MCFARLAND4, params(MCFARLAND4, 4), 4)
    fours = [s for s in sols if s.branch == "a" and abs(s.theta - 4) < 1e-9]
    betas = sorted(s.beta.real for s in fours)
    expected = sorted([(-4 - 6**0.5) / 10, (-4 + 6**0.5) / 10])
    assert np.allclose(betas, expected, atol=1e-9, rtol=0)
    for s in fours:
        assert abs(s.alpha - 4 * (s.beta + 0.5)) < 1e-9
        assert s.residual <= 1e-8


def test_branch_a_polynomial_mcfarland_factors():
    b = sp.Symbol("beta")
    P = branch_a_polynomial(PdsParams(16, 6, 2, 2))
    # degree 8 after removing the beta and beta + 1 factors
    assert P.degree() == 8
    assert sp.rem(P.as_expr(), 10 * b**2 + 8 * b + 1, b) == 0


def test_every_returned_solution_is_verified():
    for D, n in [(MCFARLAND4, 4), ([1], 3), ([1, 2, 3], 2), ([1, 2, 3], 4), (support(inner_product_tt(6)), 6)]:
        for s in pds_eigenfunctions(D, params(D, n), n):
            assert s.residual <= 1e-8
            assert eigen_residual(D, n, s.alpha, s.beta, s.theta) <= 1e-8
            if s.exact:
                assert s.residual == 0


def test_branch_b_singleton():
    sols = [s for s in pds_eigenfunctions([1], params([1], 3), 3) if s.branch == "b"]
    exact = [s for s in sols if s.exact]
    assert [(s.alpha, s.theta) for s in exact] == [(Fraction(1), Fraction(2))]
    complex_alphas = sorted((complex(s.alpha) for s in sols if not s.exact), key=lambda z: z.imag)
    expected = [(-1 - 1j * 7**0.5) / 4, (-1 + 1j * 7**0.5) / 4]
    assert np.allclose(complex_alphas, expected)


def test_factored_branch_b_candidates_are_not_eigenfunctions():
    # alpha^2 + k = 0 or 2 alpha - 1 = 0 with theta = 2 alpha + k, for D = {001}
    for alpha in (0.5, 1j, -1j):
        assert eigen_residual([1], 3, alpha, 0, 2 * alpha + 1) > 0.1


def test_branch_c_full_plane():
    sols = [s for s in pds_eigenfunctions([1, 2, 3], params([1, 2, 3], 2), 2) if s.branch == "c"]
    assert [(s.alpha, s.theta, s.residual) for s in sols] == [(Fraction(-1, 2), Fraction(1), 0.0)]


def test_branch_c_requires_condition():
    # v - 2k + lam != 0 for McFarland n=4, so branch c is empty
    assert not [s for s in pds_eigenfunctions(MCFARLAND4, params(MCFARLAND4, 4), 4) if s.branch == "c"]


# -- coloring --------------------------------------------------------------------------


def test_coloring_mcfarland_n4_tensor():
    r = pds_to_coloring(MCFARLAND4, 4)
    assert r.ok and r.verdict == "PERFECT"
    S = r.value
    assert (S[0, 0, 0], S[1, 0, 0], S[0, 1, 0], S[1, 0, 1], S[0, 1, 1], S[1, 1, 1]) == (
        2, 3, 2, Fraction(3, 2), 1, 1,
    )
    assert not r.parameters["theorem_scope"]


def test_coloring_full_plane_vacuous_row():
    r = pds_to_coloring([1, 2, 3], 2)
    assert r.ok
    assert r.parameters["vacuous_colors"] == [0]
    expected = closed_form_parameters(2, params([1, 2, 3], 2))
    assert (expected[(1, 1, 1)], expected[(1, 1, 0)], expected[(1, 0, 0)]) == (1, 0, 0)
    assert r.value[1, 1, 1] == 1


def test_coloring_non_pds():
    r = pds_to_coloring([1, 2], 3)
    assert r.verdict == "NOT_PDS" and isinstance(r.value, Counterexample)


def test_coloring_subspace_pds_in_scope():
    r = pds_to_coloring([1, 2, 3], 4)
    assert r.ok and r.parameters["theorem_scope"]


def _corpus_sets():
    sets = [(support(inner_product_tt(n)), n) for n in (2, 4, 6)]
    for n in (3, 4):
        sets += [(sorted(s - {0}), n) for s in all_subspaces(n) if len(s) > 1]
    return sets


def test_pds_iff_perfect_on_corpus():
    for D, n in _corpus_sets():
        assert pds_check(D, n).ok
        assert pds_to_coloring(D, n).ok


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4]), st.integers(0, 2**20))
def test_pds_iff_perfect_random(n, seed):
    rng = np.random.default_rng(seed)
    D = [x for x in range(1, 2**n) if rng.random() < 0.5]
    if not D:
        return
    H = subspace_H(n)
    colors = np.zeros(2**n - 1, dtype=int)
    colors[np.array(D) - 1] = 1
    perfect = not isinstance(check_perfect(H, Coloring(H, colors, 2, allow_empty=True)), Counterexample)
    assert pds_check(D, n).ok == perfect
