"""Bent and plateaued Boolean functions, and their perfect colorings of ``D_n``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..group import _log2, sign_function, t_fold_convolve, walsh_hadamard
from ..hypergraph import Coloring, Counterexample, PreconditionError, check_perfect, lift_parameter_eigenvector, subspace_D
from ..tensor import EigenPair
from .report import DesignReport


class NotPlateauedError(PreconditionError):
    pass


@dataclass(frozen=True)
class SpectrumReport:
    n: int
    # unnormalised Walsh coefficient -> multiplicity; normalised value is w / 2^(n/2)
    spectrum: dict
    classification: str
    s: int | None
    weight: int

    @property
    def bent(self) -> bool:
        return self.classification == "BENT"

    def normalised(self) -> dict:
        return {w / 2 ** (self.n / 2): m for w, m in self.spectrum.items()}

    def to_json(self) -> dict:
        return {
            "verdict": self.classification,
            "n": self.n,
            "s": self.s,
            "weight": self.weight,
            "spectrum": {str(w): m for w, m in sorted(self.spectrum.items())},
        }


def truth_table(fn, n: int) -> np.ndarray:
    """Truth table of ``fn(x1, ..., xn)``; index bit ``i - 1`` holds ``x_i``."""
    out = np.empty(2**n, dtype=np.int64)
    for idx in range(2**n):
        out[idx] = int(fn(*((idx >> i) & 1 for i in range(n)))) & 1
    return out


def _table(tt, n: int | None = None) -> tuple[np.ndarray, int]:
    tt = np.asarray(tt, dtype=np.int64)
    m = _log2(tt.size)
    if n is not None and m != n:
        raise ValueError(f"truth table has length {tt.size}, expected 2^{n}")
    return tt, m


def _plateau_exponent(squares: set[int], n: int) -> int | None:
    """``s`` with every nonzero ``W^2`` equal to ``2^(n+s)``, or None."""
    nonzero = squares - {0}
    if len(nonzero) != 1:
        return None
    w2 = nonzero.pop()
    e = w2.bit_length() - 1
    if 1 << e != w2 or e < n:
        return None
    return e - n


def classify_function(tt, n: int | None = None) -> SpectrumReport:
    """Classify by the Walsh spectrum of ``(-1)^f`` and confirm with the triple convolution."""
    tt, n = _table(tt, n)
    sign = sign_function(tt)
    W = walsh_hadamard(sign.values)
    values, counts = np.unique(W, return_counts=True)
    spectrum = {int(w): int(m) for w, m in zip(values, counts)}
    s = _plateau_exponent({int(w) ** 2 for w in values}, n)
    weight = int(tt.sum())
    triple = t_fold_convolve(sign, 2, method="fast").values
    if s is None:
        label = "NEITHER"
        # second oracle: no power of two can make the triple convolution proportional
        ratio = {Fraction(int(a), int(b)) for a, b in zip(triple, sign.values)}
        assert len(ratio) != 1 or not _is_pow2(next(iter(ratio))), "triple convolution disagrees with the spectrum"
    else:
        label = "BENT" if s == 0 else f"PLATEAUED({s})"
        assert np.array_equal(triple, 2 ** (n + s) * sign.values), "triple convolution disagrees with the spectrum"
    if s == 0:
        h = 2 ** (n // 2 - 1)
        assert weight in (2 ** (n - 1) - h, 2 ** (n - 1) + h), f"bent function of weight {weight}"
    return SpectrumReport(n, spectrum, label, s, weight)


def _is_pow2(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator > 0 and q.numerator & (q.numerator - 1) == 0


def plateaued_eigen_check(tt, s: int | None = None, n: int | None = None) -> EigenPair:
    """``(-1)^f`` as an eigenvector of ``A^(2)`` with eigenvalue ``2^(n+s)``, exactly."""
    tt, n = _table(tt, n)
    report = classify_function(tt, n)
    if report.s is None:
        raise NotPlateauedError(f"f is not plateaued (spectrum {sorted(report.spectrum)})")
    if s is not None and s != report.s:
        raise NotPlateauedError(f"f is {report.s}-plateaued, not {s}-plateaued")
    sign = sign_function(tt)
    theta = 2 ** (n + report.s)
    diff = t_fold_convolve(sign, 2, method="direct").values - theta * sign.values**3
    return EigenPair(theta, sign.values, float(np.max(np.abs(diff))), 0.0, {"s": report.s})


def d_eigenvalue(n: int, s: int) -> Fraction:
    """Eigenvalue of ``M_D`` carried by ``(-1)^f`` for an ``s``-plateaued ``f``."""
    return Fraction(2 ** (n + s) - 3 * 2**n + 2, 6)


def plateaued_to_coloring(tt, n: int | None = None) -> DesignReport:
    """Color ``D_n`` by ``f`` and lift the eigenvector ``g = (1, -1)`` of the parameter tensor."""
    tt, n = _table(tt, n)
    report = classify_function(tt, n)
    if report.s is None:
        raise NotPlateauedError("f is not plateaued")
    H = subspace_D(n)
    c = Coloring(H, tt, 2, allow_empty=True)
    S = check_perfect(H, c)
    if isinstance(S, Counterexample):
        return DesignReport("IMPERFECT", False, {"n": n, "s": report.s}, {"vertices": list(S.vertices)}, value=S)
    theta = d_eigenvalue(n, report.s)
    g = np.array([Fraction(1), Fraction(-1)], dtype=object)
    pair = lift_parameter_eigenvector(c, S, g, theta)
    ok = pair.residual == 0
    return DesignReport(
        "PERFECT" if ok else "EIGEN_MISMATCH",
        ok,
        {"n": n, "s": report.s, "eigenvalue": str(theta), "S": S.to_json()},
        residuals={"lift": pair.residual, "parameter": pair.extra["parameter_residual"]},
        value=(S, pair),
    )
