from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import brute_force_perfect, inner_product_tt
from convhyper.designs.boolean import truth_table
from convhyper.designs.spreads import spread_construct
from convhyper.group import Group, GroupFunction, convolve, dense_convolution_tensor, sign_function
from convhyper.hypergraph import (
    Coloring,
    Counterexample,
    Hypergraph,
    ParameterTensor,
    PreconditionError,
    adjacency_apply,
    adjacency_tensor,
    check_perfect,
    check_perfect_via_convolution,
    color_census,
    eigenfunction_to_coloring,
    hypergraph_residual,
    lift_parameter_eigenvector,
    subspace_D,
    subspace_H,
    total_regularity_profile,
)
from convhyper.tensor import apply_power, characteristic_polynomial_order2, combined_product, solve_eigensystem_order2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_edge_counts(n):
    N = 2**n
    assert subspace_H(n).edge_count() == (N - 1) * (N - 2) // 6
    assert subspace_D(n).edge_count() == N * (N - 1) * (N - 2) // 24


def test_edges_are_subspaces():
    for x, y, z in subspace_H(4).edges() + 1:
        assert x ^ y == z and len({x, y, z}) == 3
    E = subspace_D(3).edges()
    assert len({tuple(sorted(e)) for e in E.tolist()}) == len(E)
    for e in E:
        assert e[0] ^ e[1] ^ e[2] ^ e[3] == 0


def test_single_edge_apply():
    out = adjacency_apply(subspace_H(2), [np.ones(3)] * 2)
    assert np.allclose(out, [1, 1, 1])


@pytest.mark.parametrize("H", [subspace_H(3), subspace_D(2), subspace_D(3)], ids=repr)
def test_streamed_apply_matches_dense(H):
    rng = np.random.default_rng(H.vertex_count)
    M = adjacency_tensor(H, exact=False)
    fs = [rng.normal(size=H.vertex_count) for _ in range(H.uniformity - 1)]
    assert np.allclose(adjacency_apply(H, fs), combined_product(M, fs))
    f = fs[0]
    assert np.allclose(adjacency_apply(H, [f] * (H.uniformity - 1)), apply_power(M, f))


def test_dense_adjacency_is_symmetric_and_exact():
    M = adjacency_tensor(subspace_D(2))
    assert M.is_symmetric()
    assert M[0, 1, 2, 3] == Fraction(1, 6)


@pytest.mark.parametrize("n", [2, 3])
def test_d_relation_with_triple_convolution(n):
    # 6 (M_D o f)(x) + 3 (sum_{y != x} f(y)^2) f(x) + f(x)^3 = (A^(2) o f)(x)
    G = Group(2, n)
    f = sign_function(truth_table(lambda *x: x[0] & x[1], n)).values
    rng = np.random.default_rng(n)
    for g in (f, rng.integers(-3, 4, 2**n)):
        lhs = 6 * adjacency_apply(subspace_D(n), [g] * 3)
        sq = np.sum(g**2)
        lhs = lhs + 3 * (sq - g**2) * g + g**3
        rhs = apply_power(dense_convolution_tensor(G, 2), g)
        assert np.allclose(lhs, rhs)


def test_h_relation_with_convolution():
    G = Group(2, 3)
    rng = np.random.default_rng(11)
    f, g = rng.integers(-3, 4, 8), rng.integers(-3, 4, 8)
    full = convolve(GroupFunction(G, f), GroupFunction(G, g)).values
    M = adjacency_apply(subspace_H(3), [f[1:].astype(float), g[1:].astype(float)])
    assert np.allclose(full[1:], 2 * M + f[0] * g[1:] + g[0] * f[1:])
    f[0] = g[0] = 0
    full = convolve(GroupFunction(G, f), GroupFunction(G, g)).values
    M = adjacency_apply(subspace_H(3), [f[1:].astype(float), g[1:].astype(float)])
    assert np.allclose(full[1:], 2 * M)


def test_census_single_edge():
    H = subspace_H(2)
    c = Coloring(H, [0, 0, 0])
    census = color_census(H, c)
    assert all(census.ranges(v) == {(0, 0, 0): 1} for v in range(3))


def test_census_spread_h4():
    H = subspace_H(4)
    spread = spread_construct(4)
    c = Coloring.from_classes(H, spread.classes)
    census = color_census(H, c)
    for v in range(H.vertex_count):
        i = int(c.colors[v])
        r = census.ranges(v)
        assert r[(i, i, i)] == 1
        others = {key: val for key, val in r.items() if key != (i, i, i)}
        # each of the C(4, 2) pairs of other classes closes exactly one edge
        assert len(others) == 6 and set(others.values()) == {1}
        assert all(len(set(key)) == 3 for key in others)


def test_census_d2():
    H = subspace_D(2)
    c = Coloring(H, truth_table(lambda a, b: a & b, 2))
    assert isinstance(check_perfect(H, c), ParameterTensor)


def test_mcfarland_n4_tensor():
    H = subspace_H(4)
    colors = inner_product_tt(4)[1:]
    S = check_perfect(H, Coloring(H, colors))
    expected = {
        (0, 0, 0): 2,
        (1, 0, 0): 3,
        (0, 0, 1): 2,
        (0, 1, 0): 2,
        (1, 1, 0): Fraction(3, 2),
        (1, 0, 1): Fraction(3, 2),
        (0, 1, 1): 1,
        (1, 1, 1): 1,
    }
    for ix, val in expected.items():
        assert S[ix] == val


def test_one_color_h3():
    H = subspace_H(3)
    S = check_perfect(H, Coloring(H, np.zeros(7, dtype=int)))
    assert S[0, 0, 0] == 3


def test_unbalanced_random_coloring_fails():
    H = subspace_H(4)
    rng = np.random.default_rng(4)
    colors = (rng.random(15) < 0.3).astype(int)
    out = check_perfect(H, Coloring(H, colors))
    assert isinstance(out, Counterexample)
    a, b = out.vertices
    assert colors[a - 1] == colors[b - 1]
    assert not brute_force_perfect((H.edges()).tolist(), colors.tolist(), 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("H", 3), ("D", 3), ("H", 4)]), st.integers(1, 3), st.integers(0, 10**6))
def test_census_against_brute_force(kind_n, k, seed):
    kind, n = kind_n
    H = subspace_H(n) if kind == "H" else subspace_D(n)
    rng = np.random.default_rng(seed)
    colors = rng.integers(0, k, H.vertex_count)
    c = Coloring(H, colors, k, allow_empty=True)
    perfect = not isinstance(check_perfect(H, c), Counterexample)
    assert perfect == brute_force_perfect(H.edges().tolist(), colors.tolist(), k)
    if kind == "H":
        assert perfect == (not isinstance(check_perfect_via_convolution(n, c), Counterexample))


def test_convolution_oracle_matches_census():
    for n in (2, 3, 4):
        H = subspace_H(n)
        if n % 2 == 0:
            c = Coloring.from_classes(H, spread_construct(n).classes)
        else:
            c = Coloring(H, np.zeros(H.vertex_count, dtype=int))
        assert check_perfect(H, c) == check_perfect_via_convolution(n, c)
    H = subspace_H(4)
    c = Coloring(H, inner_product_tt(4)[1:])
    assert check_perfect(H, c) == check_perfect_via_convolution(4, c)


def test_n2_spread_singletons():
    H = subspace_H(2)
    S = check_perfect_via_convolution(2, Coloring(H, [0, 1, 2]))
    for i, j, l in itertools.permutations(range(3)):
        assert S[i, j, l] == Fraction(1, 2)


def test_lift_single_edge():
    H = subspace_H(2)
    c = Coloring(H, [0, 0, 0])
    S = check_perfect(H, c)
    pair = lift_parameter_eigenvector(c, S, [Fraction(1)], 1)
    assert pair.residual == 0
    with pytest.raises(PreconditionError):
        lift_parameter_eigenvector(c, S, [0], 1)


def test_lift_merged_spread():
    H = subspace_H(4)
    classes = spread_construct(4).classes
    c = Coloring.from_classes(H, [classes[0], [x for cl in classes[1:] for x in cl]])
    S = check_perfect(H, c)
    assert isinstance(S, ParameterTensor)
    Sd = S.dense(complex)
    lifted = 0
    for theta in _s_eigenvalues(S):
        for g in solve_eigensystem_order2(Sd, theta, tol=1e-8):
            pair = lift_parameter_eigenvector(c, S, g, theta, tol=1e-8)
            assert pair.residual < 1e-8
            lifted += 1
    assert lifted >= 2


def _s_eigenvalues(S):
    return [complex(r) for r in characteristic_polynomial_order2(S.dense(object)).nroots()]


def test_total_regularity():
    assert total_regularity_profile(subspace_H(3)).degrees == (3, 1)
    assert total_regularity_profile(subspace_D(2)).degrees == (1, 1, 1)
    assert total_regularity_profile(subspace_D(3)).degrees == subspace_D(3).known_profile()
    assert total_regularity_profile(subspace_H(4)).degrees == (7, 1)
    path = Hypergraph(4, 2, [(0, 1), (1, 2), (2, 3)])
    assert isinstance(total_regularity_profile(path), Counterexample)


def test_eigenfunction_to_coloring_d3():
    H = subspace_D(3)
    f = sign_function(truth_table(lambda a, b, c: a & b, 3)).values
    assert hypergraph_residual(H, f, -1) < 1e-12
    c, S = eigenfunction_to_coloring(H, f, -1)
    assert isinstance(S, ParameterTensor) and c.k == 2
    with pytest.raises(PreconditionError):
        eigenfunction_to_coloring(H, np.ones(8), -1)
    with pytest.raises(PreconditionError):
        eigenfunction_to_coloring(H, f, 2)


def test_d4_bent_eigenvalue():
    f = sign_function(inner_product_tt(4)).values
    assert hypergraph_residual(subspace_D(4), f, -5) < 1e-9


def test_coloring_validation():
    H = subspace_H(2)
    with pytest.raises(ValueError):
        Coloring(H, [0, 0, 2])
    with pytest.raises(ValueError):
        Coloring(H, [0, 0])
    with pytest.raises(ValueError):
        Coloring.from_classes(H, [[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        Coloring.from_classes(H, [[1, 2]])
    assert Coloring(H, [0, 0, 0], 2, allow_empty=True).empty_colors() == {1}
