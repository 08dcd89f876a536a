"""Dense multidimensional matrices and tensor eigenpairs.

A ``d``-dimensional matrix of order ``n`` is stored as a numpy array of shape
``(n,) * d``.  Entries may be ints, floats, complex numbers or
:class:`fractions.Fraction` objects (``dtype=object``); every operation here
works on all of them, so rational tensors stay exact.

The eigenproblem is the homogeneous one: ``theta`` is an eigenvalue of ``A``
with eigenvector ``f != 0`` when ``A o f = theta * f**(d-1)`` componentwise.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

MAX_ENTRIES = 2**26
DEFAULT_TOL = 1e-9


class ShapeError(ValueError):
    """Operands have incompatible dimension or order."""


class ZeroVectorError(ValueError):
    """The zero vector was offered as an eigenvector."""


@dataclass(frozen=True)
class DenseTensor:
    """A ``dim``-dimensional matrix of order ``order``."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim < 1:
            raise ShapeError("a tensor needs at least one dimension")
        if len(set(arr.shape)) != 1:
            raise ShapeError(f"all axes must have equal length, got {arr.shape}")
        if arr.size > MAX_ENTRIES:
            raise ShapeError(f"{arr.size} entries exceeds the dense limit of {MAX_ENTRIES}")
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.ndim

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.all(self.entries == other.entries))

    def __hash__(self):
        return hash((self.entries.shape, self.entries.tobytes()))

    def __add__(self, other: DenseTensor) -> DenseTensor:
        return DenseTensor(self.entries + other.entries)

    def __rmul__(self, scalar) -> DenseTensor:
        return DenseTensor(scalar * self.entries)

    def astype(self, dtype) -> DenseTensor:
        return DenseTensor(self.entries.astype(dtype))

    def is_symmetric_in_tail(self) -> bool:
        """True when entries are invariant under permuting indices 2..d."""
        for perm in itertools.permutations(range(1, self.dim)):
            if not np.all(self.entries == self.entries.transpose((0, *perm))):
                return False
        return True

    def is_symmetric(self) -> bool:
        for perm in itertools.permutations(range(self.dim)):
            if not np.all(self.entries == self.entries.transpose(perm)):
                return False
        return True


def _check_size(order: int, dim: int) -> None:
    if order**dim > MAX_ENTRIES:
        raise ShapeError(f"order {order} and dimension {dim} exceed the dense limit")


def identity(order: int, dim: int = 3) -> DenseTensor:
    """The ``dim``-dimensional identity: 1 on the main diagonal only."""
    _check_size(order, dim)
    arr = np.zeros((order,) * dim, dtype=np.int64)
    idx = np.arange(order)
    arr[(idx,) * dim] = 1
    return DenseTensor(arr)


def from_function(order: int, dim: int, entry) -> DenseTensor:
    """Build a tensor by evaluating ``entry(index_tuple)`` at every index."""
    _check_size(order, dim)
    values = [entry(ix) for ix in itertools.product(range(order), repeat=dim)]
    exact = any(isinstance(v, Fraction) for v in values)
    arr = np.array(values, dtype=object if exact else None)
    return DenseTensor(arr.reshape((order,) * dim))


def _as_vector(f, order: int, name: str) -> np.ndarray:
    v = np.asarray(f)
    if v.ndim != 1 or v.shape[0] != order:
        raise ShapeError(f"{name} has shape {v.shape}, expected ({order},)")
    return v


def combined_product(A: DenseTensor, fs) -> np.ndarray:
    """Contract ``A`` against ``d-1`` vectors: ``sum a[x, x1..] f1[x1] ... ``."""
    fs = list(fs)
    if len(fs) != A.dim - 1:
        raise ShapeError(f"expected {A.dim - 1} vectors for a {A.dim}-dimensional tensor, got {len(fs)}")
    out = A.entries
    # contract the last axis first so axis positions of the rest stay put
    for i in range(len(fs) - 1, -1, -1):
        out = np.tensordot(out, _as_vector(fs[i], A.order, f"vector {i + 1}"), axes=([out.ndim - 1], [0]))
    return out


def apply_power(A: DenseTensor, f) -> np.ndarray:
    """``A o f``: the combined product with ``d-1`` copies of ``f``."""
    return combined_product(A, [f] * (A.dim - 1))


def tensor_product(A: DenseTensor, B: DenseTensor) -> DenseTensor:
    """The product ``A o B`` of dimension ``(d-1)(t-1)+1``."""
    if A.order != B.order:
        raise ShapeError(f"orders differ: {A.order} vs {B.order}")
    n, t = A.order, B.dim
    if t == 1:
        return DenseTensor(np.asarray(apply_power(A, B.entries)))
    new_dim = (A.dim - 1) * (t - 1) + 1
    _check_size(n, new_dim)
    bmat = B.entries.reshape(n, n ** (t - 1))
    out = A.entries
    # each pass contracts the current axis 1 and appends a y-block at the end
    for _ in range(A.dim - 1):
        out = np.tensordot(out, bmat, axes=([1], [0]))
    return DenseTensor(out.reshape((n,) * new_dim))


def kronecker(A: DenseTensor, B: DenseTensor) -> DenseTensor:
    """Kronecker product: ``c[z] = a[x] b[y]`` with ``z_i = x_i * n2 + y_i``."""
    if A.dim != B.dim:
        raise ShapeError(f"dimensions differ: {A.dim} vs {B.dim}")
    d, n1, n2 = A.dim, A.order, B.order
    _check_size(n1 * n2, d)
    outer = np.multiply.outer(A.entries, B.entries)
    # axes of outer are (x_1..x_d, y_1..y_d); interleave to (x_1, y_1, x_2, y_2, ...)
    perm = [ax for i in range(d) for ax in (i, d + i)]
    return DenseTensor(outer.transpose(perm).reshape((n1 * n2,) * d))


def kronecker_vector(f, g) -> np.ndarray:
    """Vector analogue of :func:`kronecker`; eigenvectors multiply this way."""
    return np.multiply.outer(np.asarray(f), np.asarray(g)).reshape(-1)


@dataclass
class EigenPair:
    value: complex
    vector: np.ndarray
    residual: float
    tol: float = DEFAULT_TOL
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.residual <= self.tol


def eigen_residual(A: DenseTensor, f, theta) -> float:
    f = _as_vector(f, A.order, "eigenvector")
    lhs = apply_power(A, f)
    rhs = theta * f ** (A.dim - 1)
    diff = np.asarray(lhs - rhs)
    if diff.dtype == object:
        return float(max(abs(complex(v)) for v in diff)) if diff.size else 0.0
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def verify_eigenpair(A: DenseTensor, f, theta, tol: float = DEFAULT_TOL) -> EigenPair:
    """Return the eigenpair with its residual; ``.ok`` tells whether it passed."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    f = _as_vector(f, A.order, "eigenvector")
    if not np.any(f != 0):
        raise ZeroVectorError("an eigenvector must be nonzero")
    return EigenPair(theta, f, eigen_residual(A, f, theta), tol)


def multinomial(counts) -> int:
    total = factorial(sum(counts))
    for c in counts:
        total //= factorial(c)
    return total


# -- order-2 brute-force eigensolver ---------------------------------------


def _quadratic_roots(a: complex, b: complex, c: complex, eps: float) -> list[complex] | None:
    """Roots of ``a t^2 + b t + c``; ``None`` means the polynomial vanishes."""
    if abs(a) <= eps:
        if abs(b) <= eps:
            return None if abs(c) <= eps else []
        return [-c / b]
    disc = cmath.sqrt(b * b - 4 * a * c)
    # numerically stable pairing
    q = -0.5 * (b + disc) if abs(b + disc) >= abs(b - disc) else -0.5 * (b - disc)
    if abs(q) <= eps:
        return [0j, 0j]
    return [q / a, c / q]


def _chart_polys(A: DenseTensor, theta: complex):
    """Coefficients (const, t, t^2) of equation x on the chart f = (1, t)."""
    a = A.entries.astype(complex)
    polys = []
    for x in range(2):
        const = a[x, 0, 0] - (theta if x == 0 else 0)
        lin = a[x, 0, 1] + a[x, 1, 0]
        quad = a[x, 1, 1] - (theta if x == 1 else 0)
        polys.append((const, lin, quad))
    return polys


def solve_eigensystem_order2(A: DenseTensor, theta: complex, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """All projective solutions of ``A o f = theta f^2`` for a 2x2x2 tensor.

    Solutions are normalised so that the first nonzero coordinate is 1.  When
    the chart ``f = (1, t)`` is solved by every ``t`` the samples ``t = 0`` and
    ``t = 1`` are reported.
    """
    if A.dim != 3 or A.order != 2:
        raise ShapeError("solve_eigensystem_order2 needs a 3-dimensional tensor of order 2")
    theta = complex(theta)
    scale = max(1.0, float(np.max(np.abs(A.entries.astype(complex)))), abs(theta))
    eps = 1e-12 * scale
    p0, p1 = _chart_polys(A, theta)

    def value(p, t):
        return p[0] + p[1] * t + p[2] * t * t

    sols: list[np.ndarray] = []
    r0 = _quadratic_roots(p0[2], p0[1], p0[0], eps)
    r1 = _quadratic_roots(p1[2], p1[1], p1[0], eps)
    if r0 is None and r1 is None:
        candidates = [0j, 1 + 0j]
    elif r0 is None:
        candidates = r1
    elif r1 is None:
        candidates = r0
    else:
        candidates = [t for t in r0 if abs(value(p1, t)) <= tol * max(1.0, abs(t)) ** 2 * scale]
    for t in candidates:
        if not any(abs(t - s[1]) <= 1e-9 * max(1.0, abs(t)) for s in sols):
            sols.append(np.array([1 + 0j, t]))
    # the point at infinity of the chart: f = (0, 1)
    at_inf = [A.entries[x, 1, 1] - (theta if x == 1 else 0) for x in range(2)]
    if all(abs(complex(v)) <= tol * scale for v in at_inf):
        sols.append(np.array([0j, 1 + 0j]))
    return sols


def characteristic_polynomial_order2(A: DenseTensor):
    """Resultant of the two binary quadratic forms of ``A - theta I``.

    Returns a sympy ``Poly`` in ``theta``; its roots are the eigenvalues.
    """
    import sympy as sp

    if A.dim != 3 or A.order != 2:
        raise ShapeError("characteristic_polynomial_order2 needs a 3-dimensional tensor of order 2")
    theta = sp.Symbol("theta")
    rows = []
    for x in range(2):
        a = [[sp.nsimplify(A.entries[x, y, z]) for z in range(2)] for y in range(2)]
        rows.append((a[0][0] - (theta if x == 0 else 0), a[0][1] + a[1][0], a[1][1] - (theta if x == 1 else 0)))
    (a0, a1, a2), (b0, b1, b2) = rows
    sylvester = sp.Matrix([[a0, a1, a2, 0], [0, a0, a1, a2], [b0, b1, b2, 0], [0, b0, b1, b2]])
    return sp.Poly(sp.expand(sylvester.det()), theta)


def solve_eigensystem_order3(A: DenseTensor, theta) -> list[np.ndarray]:
    """Projective solutions of ``A o f = theta f^2`` for a 3x3x3 tensor.

    Works chart by chart (``(1, s, t)``, ``(0, 1, t)``, ``(0, 0, 1)``) with
    sympy; ``theta`` may be a sympy number to keep the elimination exact.
    Positive-dimensional solution families are skipped.
    """
    import sympy as sp

    if A.dim != 3 or A.order != 3:
        raise ShapeError("solve_eigensystem_order3 needs a 3-dimensional tensor of order 3")
    theta = sp.sympify(theta)
    s, t = sp.symbols("s t")
    a = A.entries
    out: list[np.ndarray] = []
    for chart in ((sp.Integer(1), s, t), (sp.Integer(0), sp.Integer(1), t), (sp.Integer(0), sp.Integer(0), sp.Integer(1))):
        eqs = [
            sp.expand(
                sum(sp.nsimplify(a[x, y, z]) * chart[y] * chart[z] for y in range(3) for z in range(3))
                - theta * chart[x] ** 2
            )
            for x in range(3)
        ]
        free = sorted(sp.Tuple(*chart).free_symbols, key=str)
        if not free:
            if all(sp.simplify(e) == 0 for e in eqs):
                out.append(np.array([complex(c) for c in chart]))
            continue
        for sol in sp.solve(eqs, free, dict=True):
            if len(sol) < len(free):
                continue
            out.append(np.array([complex(sp.N(sp.sympify(c).subs(sol), 30)) for c in chart]))
    return out
