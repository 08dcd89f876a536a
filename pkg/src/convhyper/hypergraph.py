"""Uniform hypergraphs, perfect colorings and parameter tensors.

The subspace hypergraphs are generated implicitly:

* ``H_n``: vertices are the nonzero vectors of F_2^n (vertex ``i`` is the
  vector encoded by ``i + 1``), edges are the triples ``{x, y, z}`` with
  ``x + y + z = 0``.
* ``D_n``: vertices are all of F_2^n (vertex ``i`` is vector ``i``), edges are
  the 4-sets ``{x, y, z, v}`` of distinct vectors with ``x + y + z + v = 0``.

Colors are ``0 .. k-1``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .group import walsh_hadamard
from .tensor import DEFAULT_TOL, DenseTensor, EigenPair, ShapeError, apply_power, multinomial

EXHAUSTIVE_LIMIT = 64


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Counterexample:
    """Witness that a verification failed."""

    reason: str
    vertices: tuple = ()
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return False


class Hypergraph:
    """A ``d``-uniform hypergraph on vertices ``0 .. vertex_count - 1``."""

    def __init__(self, vertex_count: int, uniformity: int, edges=None, kind: str = "explicit", n: int | None = None):
        self.vertex_count = vertex_count
        self.uniformity = uniformity
        self.kind = kind
        self.n = n
        self._edges = None
        if kind == "explicit":
            arr = np.asarray(edges if edges is not None else [], dtype=np.int64).reshape(-1, uniformity)
            if arr.size and (arr.min() < 0 or arr.max() >= vertex_count):
                raise ValueError("edge refers to a vertex out of range")
            for e in arr:
                if len(set(e.tolist())) != uniformity:
                    raise ValueError(f"edge {tuple(e)} does not have {uniformity} distinct vertices")
            self._edges = arr

    def __repr__(self):
        if self.kind == "explicit":
            return f"Hypergraph(V={self.vertex_count}, d={self.uniformity}, |E|={len(self._edges)})"
        return f"Hypergraph({self.kind}_{self.n})"

    def label(self, v: int) -> int:
        """Group element represented by vertex ``v`` (or ``v`` itself)."""
        return v + 1 if self.kind == "H" else v

    def vertex_of(self, element: int) -> int:
        return element - 1 if self.kind == "H" else element

    def edge_blocks(self, chunk: int = 1 << 18):
        """Yield integer arrays of shape ``(m, d)`` covering every edge once."""
        if self.kind == "explicit":
            for start in range(0, len(self._edges), chunk):
                yield self._edges[start : start + chunk]
            return
        N = 1 << self.n
        buf, size = [], 0
        if self.kind == "H":
            for x in range(1, N - 1):
                y = np.arange(x + 1, N, dtype=np.int64)
                z = x ^ y
                keep = z > y
                block = np.stack([np.full(int(keep.sum()), x), y[keep], z[keep]], axis=1) - 1
                buf.append(block)
                size += len(block)
                if size >= chunk:
                    yield np.concatenate(buf)
                    buf, size = [], 0
        else:
            for x in range(N):
                rest = np.arange(x + 1, N, dtype=np.int64)
                if len(rest) < 3:
                    break
                iy, iz = np.triu_indices(len(rest), 1)
                y, z = rest[iy], rest[iz]
                w = x ^ y ^ z
                keep = w > z
                block = np.stack([np.full(int(keep.sum()), x), y[keep], z[keep], w[keep]], axis=1)
                buf.append(block)
                size += len(block)
                if size >= chunk:
                    yield np.concatenate(buf)
                    buf, size = [], 0
        if buf:
            yield np.concatenate(buf)

    def edges(self) -> np.ndarray:
        blocks = list(self.edge_blocks())
        if not blocks:
            return np.zeros((0, self.uniformity), dtype=np.int64)
        return np.concatenate(blocks)

    def edge_count(self) -> int:
        return sum(len(b) for b in self.edge_blocks())

    def known_profile(self) -> tuple[int, ...] | None:
        """Closed-form total-regularity profile of the subspace hypergraphs."""
        if self.kind == "H":
            return (2 ** (self.n - 1) - 1, 1)
        if self.kind == "D":
            N = 2**self.n
            return ((N - 1) * (N - 2) // 6, (N - 2) // 2, 1)
        return None


def subspace_H(n: int) -> Hypergraph:
    if n < 2:
        raise ValueError("H_n needs n >= 2")
    return Hypergraph(2**n - 1, 3, kind="H", n=n)


def subspace_D(n: int) -> Hypergraph:
    if n < 2:
        raise ValueError("D_n needs n >= 2")
    return Hypergraph(2**n, 4, kind="D", n=n)


# -- colorings ----------------------------------------------------------------


class Coloring:
    """A vertex coloring with colors ``0 .. k-1``.

    Classes are normally nonempty; ``allow_empty=True`` admits declared but
    unused colors, whose parameter rows are then vacuous.
    """

    def __init__(self, hypergraph: Hypergraph, colors, k: int | None = None, allow_empty: bool = False):
        colors = np.asarray(colors, dtype=np.int64)
        if colors.shape != (hypergraph.vertex_count,):
            raise ShapeError(f"{colors.shape[0] if colors.ndim else 0} colors for {hypergraph.vertex_count} vertices")
        if colors.size and colors.min() < 0:
            raise ValueError("colors must be nonnegative")
        if k is None:
            k = int(colors.max()) + 1 if colors.size else 0
        if colors.size and colors.max() >= k:
            raise ValueError(f"color {colors.max()} out of range for k = {k}")
        used = set(colors.tolist())
        if not allow_empty and len(used) != k:
            missing = sorted(set(range(k)) - used)
            raise ValueError(f"coloring is not surjective; unused colors {missing}")
        self.hypergraph = hypergraph
        self.colors = colors
        self.k = k

    @classmethod
    def from_classes(cls, hypergraph: Hypergraph, classes, allow_empty: bool = False) -> Coloring:
        """Build from lists of group elements, one list per color."""
        colors = np.full(hypergraph.vertex_count, -1, dtype=np.int64)
        for i, cl in enumerate(classes):
            for x in cl:
                v = hypergraph.vertex_of(int(x))
                if not 0 <= v < hypergraph.vertex_count:
                    raise ValueError(f"element {x} is not a vertex")
                if colors[v] != -1:
                    raise ValueError(f"element {x} appears in two classes")
                colors[v] = i
        if np.any(colors < 0):
            v = int(np.flatnonzero(colors < 0)[0])
            raise ValueError(f"element {hypergraph.label(v)} is not covered by any class")
        return cls(hypergraph, colors, len(classes), allow_empty)

    @property
    def color_matrix(self) -> np.ndarray:
        F = np.zeros((len(self.colors), self.k), dtype=np.int64)
        F[np.arange(len(self.colors)), self.colors] = 1
        return F

    def classes(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.colors == i) for i in range(self.k)]

    def empty_colors(self) -> frozenset:
        return frozenset(set(range(self.k)) - set(self.colors.tolist()))

    def lift(self, g) -> np.ndarray:
        """``F g``: the vertex function taking value ``g[i]`` on color ``i``."""
        return np.asarray(g)[self.colors]


@dataclass(frozen=True, eq=False)
class ParameterTensor:
    """Exact rational ``d``-dimensional parameter tensor of a perfect coloring."""

    entries: np.ndarray
    empty_colors: frozenset = frozenset()

    @property
    def dim(self) -> int:
        return self.entries.ndim

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other):
        if not isinstance(other, ParameterTensor):
            return NotImplemented
        return (
            self.entries.shape == other.entries.shape
            and self.empty_colors == other.empty_colors
            and bool(np.all(self.entries == other.entries))
        )

    def dense(self, dtype=complex) -> DenseTensor:
        return DenseTensor(self.entries.astype(dtype))

    def items(self):
        for ix in itertools.product(range(self.order), repeat=self.dim):
            yield ix, self.entries[ix]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "order": self.order,
            "entries": {",".join(map(str, ix)): str(v) for ix, v in self.items() if v != 0},
            "empty_colors": sorted(self.empty_colors),
        }


def _zero_parameters(k: int, d: int) -> np.ndarray:
    arr = np.empty((k,) * d, dtype=object)
    arr.fill(Fraction(0))
    return arr


# -- census and perfectness ---------------------------------------------------


@dataclass
class ColorCensus:
    """Per-vertex counts of incident edges by color range.

    ``counts[v, code]`` counts edges through ``v`` whose other ``d - 1``
    vertices have the sorted color tuple encoded by ``code`` (base ``k``).
    """

    counts: np.ndarray
    colors: np.ndarray
    k: int
    uniformity: int

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.uniformity - 1):
            out.append(code % self.k)
            code //= self.k
        return tuple(reversed(out))

    def ranges(self, v: int) -> dict[tuple[int, ...], int]:
        """Color-range multiset (as a sorted tuple) -> number of edges at ``v``."""
        own = int(self.colors[v])
        row = self.counts[v]
        return {tuple(sorted((own,) + self.decode(int(c)))): int(row[c]) for c in np.flatnonzero(row)}

    def degree(self, v: int) -> int:
        return int(self.counts[v].sum())


def color_census(H: Hypergraph, c: Coloring) -> ColorCensus:
    if c.hypergraph is not H and c.colors.shape != (H.vertex_count,):
        raise ShapeError("coloring does not match the hypergraph")
    d, k, V = H.uniformity, c.k, H.vertex_count
    codes = k ** (d - 1)
    counts = np.zeros(V * codes, dtype=np.int64)
    weights = k ** np.arange(d - 2, -1, -1)
    for E in H.edge_blocks():
        C = c.colors[E]
        for j in range(d):
            others = np.sort(np.delete(C, j, axis=1), axis=1)
            key = E[:, j] * codes + others @ weights
            counts += np.bincount(key, minlength=V * codes)
    return ColorCensus(counts.reshape(V, codes), c.colors, k, d)


def _params_from_census(census: ColorCensus, c: Coloring, rep: dict[int, int]) -> ParameterTensor:
    d, k = census.uniformity, census.k
    S = _zero_parameters(k, d)
    for i, v in rep.items():
        row = census.counts[v]
        for code in np.flatnonzero(row):
            others = census.decode(int(code))
            value = Fraction(int(row[code]), multinomial(list(Counter(others).values())))
            for perm in set(itertools.permutations(others)):
                S[(i,) + perm] = value
    return ParameterTensor(S, c.empty_colors())


def check_perfect(H: Hypergraph, c: Coloring) -> ParameterTensor | Counterexample:
    """Parameter tensor of ``c`` if it is perfect, else two same-colored vertices that differ."""
    census = color_census(H, c)
    rep = {}
    for i, members in enumerate(c.classes()):
        if not len(members):
            continue
        rows = census.counts[members]
        bad = np.flatnonzero(np.any(rows != rows[0], axis=1))
        if len(bad):
            v, w = int(members[0]), int(members[bad[0]])
            return Counterexample(
                "census differs within a color class",
                (H.label(v), H.label(w)),
                {"color": i, "ranges": [_str_keys(census.ranges(v)), _str_keys(census.ranges(w))]},
            )
        rep[i] = int(members[0])
    return _params_from_census(census, c, rep)


def _str_keys(d: dict) -> dict:
    return {",".join(map(str, key)): val for key, val in sorted(d.items())}


def check_perfect_via_convolution(n: int, c: Coloring) -> ParameterTensor | Counterexample:
    """Perfectness on ``H_n`` through ``F_j * F_l = sum_i 2 s[i, j, l] F_i`` off zero."""
    N = 2**n
    if c.colors.shape != (N - 1,):
        raise ShapeError(f"a coloring of H_{n} has {N - 1} entries")
    k = c.k
    F = np.zeros((k, N), dtype=np.int64)
    F[c.colors, np.arange(1, N)] = 1
    W = [walsh_hadamard(F[j]) for j in range(k)]
    classes = [np.flatnonzero(c.colors == i) + 1 for i in range(k)]
    S = _zero_parameters(k, 3)
    for j in range(k):
        for l in range(j, k):
            conv = walsh_hadamard(W[j] * W[l]) // N
            for i, elems in enumerate(classes):
                if not len(elems):
                    continue
                vals = conv[elems]
                bad = np.flatnonzero(vals != vals[0])
                if len(bad):
                    return Counterexample(
                        "convolution not constant on a color class",
                        (int(elems[0]), int(elems[bad[0]])),
                        {"color": i, "pair": [j, l], "values": [int(vals[0]), int(vals[bad[0]])]},
                    )
                S[i, j, l] = S[i, l, j] = Fraction(int(vals[0]), 2)
    return ParameterTensor(S, c.empty_colors())


# -- adjacency ------------------------------------------------------------------


def adjacency_apply(H: Hypergraph, fs) -> np.ndarray:
    """Combined product ``M . (f_1, ..., f_{d-1})`` with the adjacency tensor, streamed over edges."""
    d, V = H.uniformity, H.vertex_count
    fs = [np.asarray(f) for f in fs]
    if len(fs) != d - 1:
        raise ShapeError(f"expected {d - 1} vectors, got {len(fs)}")
    for i, f in enumerate(fs):
        if f.shape != (V,):
            raise ShapeError(f"vector {i + 1} has shape {f.shape}, expected ({V},)")
    exact = any(f.dtype == object for f in fs)
    dtype = object if exact else np.result_type(*fs, np.float64)
    out = np.zeros(V, dtype=dtype)
    if exact:
        out[:] = Fraction(0)
    same = all(f is fs[0] for f in fs)
    perms = list(itertools.permutations(range(d - 1)))
    for E in H.edge_blocks():
        for j in range(d):
            others = np.delete(E, j, axis=1)
            if same:
                vals = np.prod(fs[0][others], axis=1)
            else:
                vals = sum(np.prod([fs[i][others[:, p[i]]] for i in range(d - 1)], axis=0) for p in perms)
                vals = vals * Fraction(1, len(perms)) if exact else vals / len(perms)
            np.add.at(out, E[:, j], vals)
    return out


def adjacency_tensor(H: Hypergraph, exact: bool = True) -> DenseTensor:
    """Dense adjacency tensor with ``1/(d-1)!`` on every ordering of every edge."""
    d, V = H.uniformity, H.vertex_count
    if exact:
        arr = _zero_parameters(V, d)
        w = Fraction(1, factorial(d - 1))
    else:
        arr = np.zeros((V,) * d)
        w = 1.0 / factorial(d - 1)
    for E in H.edge_blocks():
        for perm in itertools.permutations(range(d)):
            arr[tuple(E[:, p] for p in perm)] = w
    return DenseTensor(arr)


def hypergraph_residual(H: Hypergraph, f, theta) -> float:
    f = np.asarray(f)
    diff = adjacency_apply(H, [f] * (H.uniformity - 1)) - theta * f ** (H.uniformity - 1)
    if diff.dtype == object:
        return float(max(abs(complex(v)) for v in diff))
    return float(np.max(np.abs(diff)))


def lift_parameter_eigenvector(c: Coloring, S: ParameterTensor, g, theta, tol: float = DEFAULT_TOL) -> EigenPair:
    """Lift an eigenpair ``(theta, g)`` of ``S`` to ``(theta, F g)`` on the hypergraph.

    Rows of ``S`` belonging to unused colors are vacuous and are not checked.
    """
    g = np.asarray(g)
    if not np.any(g != 0):
        raise PreconditionError("g must be nonzero")
    exact = g.dtype == object or all(isinstance(x, (int, Fraction)) for x in g.tolist())
    A = DenseTensor(S.entries if exact else S.entries.astype(complex))
    gv = g.astype(object) if exact else g.astype(complex)
    diff = apply_power(A, gv) - theta * gv ** (S.dim - 1)
    used = [i for i in range(S.order) if i not in S.empty_colors]
    base = max((abs(complex(diff[i])) for i in used), default=0.0)
    if base > tol:
        raise PreconditionError(f"(theta, g) is not an eigenpair of S: residual {base:.3g}")
    f = c.lift(gv)
    res = hypergraph_residual(c.hypergraph, f, theta)
    return EigenPair(theta, f, res, tol, {"parameter_residual": base})


# -- total regularity ---------------------------------------------------------------


@dataclass(frozen=True)
class RegularityProfile:
    degrees: tuple[int, ...]
    exhaustive: bool

    @property
    def ok(self) -> bool:
        return True


def total_regularity_profile(H: Hypergraph, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> RegularityProfile | Counterexample:
    """Degrees ``(r_1, ..., r_{d-1})`` of ``i``-subsets, or a subset that breaks regularity."""
    d, V = H.uniformity, H.vertex_count
    if V > exhaustive_limit:
        known = H.known_profile()
        if known is None:
            raise PreconditionError(f"{V} vertices exceeds the exhaustive limit {exhaustive_limit}")
        return RegularityProfile(known, False)
    edges = [tuple(sorted(e)) for e in H.edges().tolist()]
    degrees = []
    for i in range(1, d):
        cnt = Counter(s for e in edges for s in itertools.combinations(e, i))
        values = set(cnt.values())
        if len(cnt) < comb(V, i):
            present = next(iter(cnt)) if cnt else None
            missing = next(s for s in itertools.combinations(range(V), i) if s not in cnt)
            if present is None:
                return Counterexample("no edges contain any subset", _labels(H, missing), {"size": i})
            return Counterexample(
                "subsets of equal size have different degrees",
                _labels(H, missing) + _labels(H, present),
                {"size": i, "degrees": [0, cnt[present]]},
            )
        if len(values) > 1:
            items = sorted(cnt.items(), key=lambda kv: kv[1])
            (a, da), (b, db) = items[0], items[-1]
            return Counterexample(
                "subsets of equal size have different degrees",
                _labels(H, a) + _labels(H, b),
                {"size": i, "degrees": [da, db]},
            )
        degrees.append(values.pop())
    return RegularityProfile(tuple(degrees), True)


def _labels(H: Hypergraph, vs) -> tuple:
    return tuple(H.label(v) for v in vs)


def eigenfunction_to_coloring(H: Hypergraph, f, theta, tol: float = DEFAULT_TOL):
    """Turn a two-valued eigenvector of a totally regular hypergraph into a perfect 2-coloring.

    Returns ``(coloring, S)``; the color of vertex 0 is 0.
    """
    f = np.asarray(f)
    values = []
    colors = np.empty(len(f), dtype=np.int64)
    for v, x in enumerate(f):
        for i, y in enumerate(values):
            if abs(complex(x) - complex(y)) <= tol:
                colors[v] = i
                break
        else:
            values.append(x)
            colors[v] = len(values) - 1
    if len(values) != 2:
        raise PreconditionError(f"f takes {len(values)} distinct values, expected 2")
    res = hypergraph_residual(H, f, theta)
    if res > tol:
        raise PreconditionError(f"f is not an eigenvector for theta = {theta}: residual {res:.3g}")
    profile = total_regularity_profile(H)
    if isinstance(profile, Counterexample):
        raise PreconditionError(f"hypergraph is not totally regular: {profile.vertices}")
    c = Coloring(H, colors, 2)
    S = check_perfect(H, c)
    if isinstance(S, Counterexample):
        raise AssertionError(f"two-valued eigenvector gave an imperfect coloring: {S}")
    return c, S
