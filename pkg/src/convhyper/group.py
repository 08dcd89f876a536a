"""Elementary abelian groups Z_p^n, convolution and the Walsh-Hadamard transform.

Elements are the integers ``0 .. p**n - 1`` read as base-``p`` digit vectors
with the least significant digit as the first coordinate; ``0`` is the zero
vector.  For ``p = 2`` addition is bitwise XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .tensor import DenseTensor, ShapeError, _check_size

FAST_THRESHOLD = 256


class UnsupportedGroupError(ValueError):
    pass


class GroupMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Group:
    prime: int
    rank: int

    def __post_init__(self):
        if self.prime not in (2, 3):
            raise UnsupportedGroupError(f"only p = 2 and p = 3 are supported, got {self.prime}")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    @property
    def size(self) -> int:
        return self.prime**self.rank

    def digits(self, x) -> np.ndarray:
        """Digit vectors of ``x`` (int or array), last axis = coordinate."""
        x = np.asarray(x)
        powers = self.prime ** np.arange(self.rank)
        return (x[..., None] // powers) % self.prime

    def encode(self, digits) -> np.ndarray:
        digits = np.asarray(digits) % self.prime
        return digits @ (self.prime ** np.arange(self.rank))

    def add(self, x, y):
        if self.prime == 2:
            return np.bitwise_xor(x, y)
        return self.encode(self.digits(x) + self.digits(y))

    def neg(self, x):
        if self.prime == 2:
            return x
        return self.encode(-self.digits(x))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    @cached_property
    def difference_table(self) -> np.ndarray:
        """``table[x, y] = x - y``."""
        e = np.arange(self.size)
        if self.prime == 2:
            return np.bitwise_xor.outer(e, e)
        return self.sub(e[:, None], e[None, :])

    def dot(self, x, z) -> int:
        """Standard inner product ``(x, z)`` mod ``p``."""
        return int(np.sum(self.digits(x) * self.digits(z)) % self.prime)

    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """A complex-valued (or exact) function on a group."""

    group: Group
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.group.size,):
            raise ShapeError(f"values have shape {v.shape}, group has {self.group.size} elements")
        object.__setattr__(self, "values", v)

    def _other(self, other):
        if isinstance(other, GroupFunction):
            if other.group != self.group:
                raise GroupMismatchError(f"{self.group} vs {other.group}")
            return other.values
        return other

    def __add__(self, other):
        return GroupFunction(self.group, self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GroupFunction(self.group, self.values - self._other(other))

    def __mul__(self, other):
        return GroupFunction(self.group, self.values * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return GroupFunction(self.group, -self.values)

    def __pow__(self, k: int):
        return GroupFunction(self.group, self.values**k)

    def __getitem__(self, x):
        return self.values[x]

    def __len__(self):
        return len(self.values)

    def allclose(self, other, tol: float = 1e-9) -> bool:
        a = np.asarray(self.values, dtype=complex)
        b = np.asarray(self._other(other), dtype=complex)
        return bool(np.allclose(a, b, atol=tol, rtol=0))

    def equals(self, other) -> bool:
        return bool(np.all(self.values == self._other(other)))


def ones(group: Group) -> GroupFunction:
    return GroupFunction(group, np.ones(group.size, dtype=np.int64))


def delta(group: Group, x: int = 0) -> GroupFunction:
    """Indicator of a single element (``chi_0`` by default)."""
    v = np.zeros(group.size, dtype=np.int64)
    v[x] = 1
    return GroupFunction(group, v)


def indicator(group: Group, elements) -> GroupFunction:
    v = np.zeros(group.size, dtype=np.int64)
    idx = np.fromiter((int(x) for x in elements), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= group.size):
        raise ValueError("element out of range for the group")
    v[idx] = 1
    return GroupFunction(group, v)


def sign_function(truth_table) -> GroupFunction:
    """``(-1)^f`` for a Boolean truth table of length ``2^n``."""
    tt = np.asarray(truth_table, dtype=np.int64)
    n = _log2(tt.size)
    if np.any((tt != 0) & (tt != 1)):
        raise ValueError("a truth table holds only 0 and 1")
    return GroupFunction(Group(2, n), 1 - 2 * tt)


def _log2(size: int) -> int:
    n = int(size).bit_length() - 1
    if n < 1 or 1 << n != size:
        raise ShapeError(f"length {size} is not a power of two >= 2")
    return n


def _same_group(f: GroupFunction, g: GroupFunction) -> Group:
    if f.group != g.group:
        raise GroupMismatchError(f"{f.group} vs {g.group}")
    return f.group


# -- Walsh-Hadamard ------------------------------------------------------------


def walsh_hadamard(values) -> np.ndarray:
    """Unnormalised transform ``W(x) = sum_z v(z) (-1)^(x, z)``.

    Integer input stays integer, so the result is exact.
    """
    a = np.array(values, copy=True)
    n = _log2(a.size)
    for i in range(n):
        a = a.reshape(-1, 2, 1 << i)
        a = np.concatenate((a[:, :1] + a[:, 1:], a[:, :1] - a[:, 1:]), axis=1)
    return a.reshape(-1)


def sign_fourier(f: GroupFunction) -> GroupFunction:
    """The linear transform ``g -> 2^(-n/2) sum_z g(z) (-1)^(x, z)``."""
    if f.group.prime != 2:
        raise UnsupportedGroupError("the Fourier transform is only provided for p = 2")
    w = walsh_hadamard(np.asarray(f.values, dtype=complex))
    return GroupFunction(f.group, w / 2 ** (f.group.rank / 2))


def boolean_fourier(truth_table) -> GroupFunction:
    """``f^(x) = 2^(-n/2) sum_z (-1)^(f(z) + (x, z))`` for a Boolean ``f``."""
    return sign_fourier(sign_function(truth_table))


# -- convolution ------------------------------------------------------------


def convolve_direct(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """``(f * g)(x) = sum_y f(y) g(x - y)`` by direct summation."""
    G = _same_group(f, g)
    gv = np.asarray(g.values)
    # mat[x, y] = g(x - y)
    mat = gv[G.difference_table]
    return GroupFunction(G, mat @ np.asarray(f.values))


def convolve_fast(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """XOR convolution through the Walsh-Hadamard transform (p = 2 only)."""
    G = _same_group(f, g)
    if G.prime != 2:
        raise UnsupportedGroupError("fast convolution needs p = 2")
    fv, gv = np.asarray(f.values), np.asarray(g.values)
    exact = fv.dtype.kind in "iu" and gv.dtype.kind in "iu"
    if exact:
        prod = walsh_hadamard(fv.astype(np.int64)) * walsh_hadamard(gv.astype(np.int64))
        out = walsh_hadamard(prod)
        return GroupFunction(G, out // G.size)
    if fv.dtype == object or gv.dtype == object:
        prod = walsh_hadamard(fv) * walsh_hadamard(gv)
        return GroupFunction(G, walsh_hadamard(prod) / G.size)
    prod = walsh_hadamard(fv.astype(complex)) * walsh_hadamard(gv.astype(complex))
    return GroupFunction(G, walsh_hadamard(prod) / G.size)


def convolve(f: GroupFunction, g: GroupFunction, method: str = "auto") -> GroupFunction:
    """Convolution; ``auto`` switches to the fast path above 256 elements for p = 2."""
    G = _same_group(f, g)
    if method == "auto":
        method = "fast" if G.prime == 2 and G.size > FAST_THRESHOLD else "direct"
    if method == "fast":
        return convolve_fast(f, g)
    if method == "direct":
        return convolve_direct(f, g)
    raise ValueError(f"unknown method {method!r}")


def convolve_many(fs, method: str = "auto") -> GroupFunction:
    fs = list(fs)
    out = fs[0]
    for f in fs[1:]:
        out = convolve(out, f, method)
    return out


def t_fold_convolve(f: GroupFunction, t: int, method: str = "auto") -> GroupFunction:
    """Convolution of ``t + 1`` copies of ``f``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    return convolve_many([f] * (t + 1), method)


def dense_convolution_tensor(group: Group, t: int = 1) -> DenseTensor:
    """The ``(t+2)``-dimensional 0/1 tensor with ``a[x] = 1`` iff ``x_1 = x_2 + ... + x_{t+2}``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    d = t + 2
    _check_size(group.size, d)
    N = group.size
    grids = np.indices((N,) * d, dtype=np.int64)
    total = grids[1]
    for i in range(2, d):
        total = group.add(total, grids[i])
    return DenseTensor((grids[0] == total).astype(np.int64))
