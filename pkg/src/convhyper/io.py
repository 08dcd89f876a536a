"""File formats and deterministic JSON output.

* truth table: one line of ``2^n`` characters over ``{0, 1}``; index ``i`` is
  the vector whose bit ``j`` (least significant first) is ``x_{j+1}``.
* complex function: ``2^n`` lines ``re im``.
* set file: one vector per line as a binary numeral of its encoding, so the
  rightmost character is ``x_1`` (``001`` is ``x_1 = 1``).
* coloring: ``{"n", "hypergraph": "H" | "D", "colors"}``, colors in encoding
  order; ``H_n`` skips the zero vector.
* partition: ``{"n", "U", "classes"}``; spread: ``{"n", "classes"}``.  Vectors
  are binary numerals or plain integers.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

FLOAT_DIGITS = 12


class FormatError(ValueError):
    def __init__(self, path, message: str, line: int | None = None, col: int | None = None):
        where = str(path)
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}")
        self.path, self.line, self.col = path, line, col


def _lines(path) -> list[str]:
    return Path(path).read_text().splitlines()


def _power_of_two(path, size: int, n: int | None) -> int:
    m = size.bit_length() - 1
    if size < 2 or 1 << m != size:
        raise FormatError(path, f"length {size} is not a power of two >= 2")
    if n is not None and m != n:
        raise FormatError(path, f"length {size} does not match n = {n}")
    return m


def read_truth_table(path, n: int | None = None) -> np.ndarray:
    rows = [(i, s.strip()) for i, s in enumerate(_lines(path), 1) if s.strip()]
    if len(rows) != 1:
        raise FormatError(path, f"expected a single nonblank line, found {len(rows)}")
    lineno, text = rows[0]
    for col, ch in enumerate(text, 1):
        if ch not in "01":
            raise FormatError(path, f"unexpected character {ch!r}", lineno, col)
    _power_of_two(path, len(text), n)
    return np.array([int(ch) for ch in text], dtype=np.int64)


def read_complex_function(path, n: int | None = None) -> np.ndarray:
    values = []
    for lineno, raw in enumerate(_lines(path), 1):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise FormatError(path, f"expected 're im', got {len(parts)} fields", lineno)
        try:
            values.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise FormatError(path, f"not a number: {raw.strip()!r}", lineno) from None
    _power_of_two(path, len(values), n)
    return np.array(values)


def parse_vector(token, n: int | None, path="<input>", line: int | None = None) -> int:
    if isinstance(token, bool):
        raise FormatError(path, f"bad vector {token!r}", line)
    if isinstance(token, int):
        x = token
    elif isinstance(token, str):
        token = token.strip()
        for col, ch in enumerate(token, 1):
            if ch not in "01":
                raise FormatError(path, f"unexpected character {ch!r} in vector", line, col)
        if n is not None and len(token) != n:
            raise FormatError(path, f"vector {token!r} has length {len(token)}, expected {n}", line)
        x = int(token, 2) if token else -1
    else:
        raise FormatError(path, f"bad vector {token!r}", line)
    if x < 0 or (n is not None and x >= 2**n):
        raise FormatError(path, f"vector {token!r} out of range", line)
    return x


def read_set(path, n: int | None = None) -> tuple[list[int], int]:
    """Elements of a set file and the dimension (from ``n`` or the string length)."""
    out = []
    for lineno, raw in enumerate(_lines(path), 1):
        s = raw.strip()
        if not s:
            continue
        if n is None:
            n = len(s)
        out.append(parse_vector(s, n, path, lineno))
    if n is None:
        raise FormatError(path, "empty set file and no --n given")
    return out, n


def _load_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(path, e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise FormatError(path, "top-level JSON value must be an object")
    return data


def _require(path, data: dict, key: str, kind):
    if key not in data:
        raise FormatError(path, f"missing field {key!r}")
    if not isinstance(data[key], kind) or isinstance(data[key], bool):
        raise FormatError(path, f"field {key!r} has the wrong type")
    return data[key]


def read_coloring(path) -> tuple[int, str, list[int]]:
    data = _load_json(path)
    n = _require(path, data, "n", int)
    kind = _require(path, data, "hypergraph", str)
    if kind not in ("H", "D"):
        raise FormatError(path, f"hypergraph must be 'H' or 'D', got {kind!r}")
    colors = _require(path, data, "colors", list)
    expected = 2**n - 1 if kind == "H" else 2**n
    if len(colors) != expected:
        raise FormatError(path, f"{len(colors)} colors, {kind}_{n} has {expected} vertices")
    for i, c in enumerate(colors):
        if not isinstance(c, int) or isinstance(c, bool) or c < 0:
            raise FormatError(path, f"color #{i} is not a nonnegative integer: {c!r}")
    return n, kind, colors


def _vectors(path, items, n: int, what: str) -> list[int]:
    if not isinstance(items, list):
        raise FormatError(path, f"{what} must be a list")
    return [parse_vector(v, n, path) for v in items]


def read_partition(path) -> tuple[int, list[int], list[list[int]]]:
    data = _load_json(path)
    n = _require(path, data, "n", int)
    U = _vectors(path, _require(path, data, "U", list), n, "U")
    classes = [_vectors(path, cl, n, f"class {i}") for i, cl in enumerate(_require(path, data, "classes", list))]
    return n, U, classes


def read_spread(path) -> tuple[int, list[list[int]]]:
    data = _load_json(path)
    n = _require(path, data, "n", int)
    classes = [_vectors(path, cl, n, f"class {i}") for i, cl in enumerate(_require(path, data, "classes", list))]
    return n, classes


def format_vector(x: int, n: int) -> str:
    return format(x, f"0{n}b")


# -- JSON -------------------------------------------------------------------------------


def _round(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    r = float(f"{x:.{FLOAT_DIGITS}g}")
    return 0.0 if r == 0 else r


def jsonable(obj):
    """Plain JSON data; floats rounded to 12 significant digits, complex as ``[re, im]``."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


def write_json(obj, path=None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text
