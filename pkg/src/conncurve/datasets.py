"""Synthetic point sequences, random matrices, and file round-tripping.

File formats
------------
Matrix CSV: n rows of n comma-separated tokens, ``inf`` (any case) for
infinite affinity, no header. Matrix JSON: ``{"n": int, "entries":
[[...]]}`` with infinity encoded as the string ``"inf"``. Curve CSV:
header ``lambda_low,lambda_high,kappa``; the first row starts at 0 and
the last row ends at the token ``inf``. Curve JSON: ``{"n": int,
"breakpoints": [...], "values": [...]}``. All parsing is
locale-independent (period decimal separator), and finite numbers are
written so that reading them back reproduces the exact double.
"""

from __future__ import annotations

import json
import math
import random
from enum import Enum
from pathlib import Path

import numpy as np

from .affinity import (
    DEFAULT_ZERO_EPSILON,
    AffinityMatrix,
    PointSet,
    validate,
)
from .curve import ConnectivityCurve
from .errors import ParseError, SymmetrizationRejectedError

__all__ = [
    "SequenceKind",
    "generate_sequence",
    "random_affinity_matrix",
    "load_matrix",
    "save_matrix",
    "load_curve",
    "save_curve",
    "save_points",
]


class SequenceKind(Enum):
    """The four built-in 1-D generating sequences (indexed i = 1..m)."""

    LOG2 = "log2"  # log2(i): unbounded, slowing growth
    SQRT_SHIFT = "sqrt"  # sqrt(i - 1): unbounded, slowing growth
    HARMONIC_CAP = "harmonic"  # 20 (1 - 1/i): converges to 20
    GEOMETRIC_CAP = "geometric"  # 20 (1 - (5/6)^(i-1)): converges to 20

    @classmethod
    def from_name(cls, name: str) -> "SequenceKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown sequence kind {name!r}")


def _sequence_value(kind: SequenceKind, i: int) -> float:
    if kind is SequenceKind.LOG2:
        return math.log2(i)
    if kind is SequenceKind.SQRT_SHIFT:
        return math.sqrt(i - 1.0)
    if kind is SequenceKind.HARMONIC_CAP:
        # Evaluated as 20 (i-1)/i: keeps the largest reciprocal gap of the
        # default m=20 sequence at or below 19, so thresholding exactly at
        # 19 already separates every point.
        return 20.0 * (i - 1.0) / i
    if kind is SequenceKind.GEOMETRIC_CAP:
        return 20.0 * (1.0 - (5.0 / 6.0) ** (i - 1))
    raise ValueError(f"unknown sequence kind {kind!r}")


def generate_sequence(kind: SequenceKind, m: int = 20) -> PointSet:
    """The first ``m`` values of a generating sequence, as 1-D points.

    All four kinds are strictly increasing in i, so the points come out
    sorted.
    """
    if m < 2:
        raise ValueError(f"need at least 2 points, got m={m}")
    return PointSet.from_1d(_sequence_value(kind, i) for i in range(1, m + 1))


_RANDOM_POOL = (0.5, 1.0, 2.0, 3.0, math.inf)


def random_affinity_matrix(rng: random.Random, n: int, values=_RANDOM_POOL) -> AffinityMatrix:
    """A random validated matrix with entries drawn from a small pool.

    The default pool mixes four finite values and infinity, so ties and
    infinite links are frequent; that is the regime the equivalence
    oracles need to stress.
    """
    E = np.full((n, n), math.inf)
    for i in range(n):
        for j in range(i + 1, n):
            E[i, j] = E[j, i] = rng.choice(values)
    return validate(E)


def _format_value(v: float) -> str:
    if math.isinf(v):
        return "inf"
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _parse_value(token: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"bad numeric token {token!r}", line) from None


def _read_raw_csv(path) -> np.ndarray:
    rows = []
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file")
    width = None
    for lineno, ln in enumerate(lines, start=1):
        tokens = [t.strip() for t in ln.split(",")]
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(f"expected {width} columns, found {len(tokens)}", lineno)
        rows.append([_parse_value(t, lineno) for t in tokens])
    return np.array(rows, dtype=np.float64)


def _read_raw_json(path) -> np.ndarray:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise ParseError('matrix JSON must be an object with "n" and "entries"')
    n, entries = doc["n"], doc["entries"]
    if not isinstance(n, int) or not isinstance(entries, list) or len(entries) != n:
        raise ParseError(f'"entries" must be a list of {n} rows')
    raw = np.empty((n, n), dtype=np.float64)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must have {n} entries")
        for j, cell in enumerate(row):
            if isinstance(cell, str):
                if cell.lower() != "inf":
                    raise ParseError(f"bad string entry {cell!r} at ({i}, {j})")
                raw[i, j] = math.inf
            elif isinstance(cell, (int, float)) and not isinstance(cell, bool):
                raw[i, j] = float(cell)
            else:
                raise ParseError(f"bad entry {cell!r} at ({i}, {j})")
    return raw


def load_matrix(
    path,
    format: str = "csv",
    *,
    symmetrize: str = "require",
    zero_policy: str = "reject",
    epsilon: float = DEFAULT_ZERO_EPSILON,
) -> AffinityMatrix:
    """Read, symmetrize, floor, and validate an affinity matrix file.

    Parameters
    ----------
    format : "csv" or "json"
        Declared explicitly; the file extension is ignored.
    symmetrize : "require" or "sum"
        ``require`` rejects asymmetric data; ``sum`` replaces each entry
        by ``raw[i][j] + raw[j][i]`` (directed flows aggregated both
        ways).
    zero_policy : "reject" or "epsilon"
        ``reject`` leaves zeros in place for validation to refuse;
        ``epsilon`` floors off-diagonal zeros at ``epsilon`` first.
    """
    if format == "csv":
        raw = _read_raw_csv(path)
    elif format == "json":
        raw = _read_raw_json(path)
    else:
        raise ValueError(f"unknown matrix format {format!r}")

    if symmetrize == "sum":
        raw = raw + raw.T
    elif symmetrize == "require":
        if raw.ndim == 2 and raw.shape[0] == raw.shape[1]:
            asym = raw != raw.T
            if asym.any():
                i, j = np.argwhere(asym)[0]
                raise SymmetrizationRejectedError(
                    int(i), int(j), float(raw[i, j]), float(raw[j, i])
                )
    else:
        raise ValueError(f"unknown symmetrize mode {symmetrize!r}")

    if zero_policy == "epsilon":
        off = ~np.eye(raw.shape[0], dtype=bool) if raw.ndim == 2 else slice(None)
        raw = np.where((raw == 0.0) & off, epsilon, raw)
    elif zero_policy != "reject":
        raise ValueError(f"unknown zero policy {zero_policy!r}")

    return validate(raw)


def save_matrix(A: AffinityMatrix, path, format: str = "csv") -> None:
    """Write a matrix so that :func:`load_matrix` reproduces it exactly."""
    if format == "csv":
        lines = [",".join(_format_value(v) for v in row) for row in A.entries]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif format == "json":
        entries = [
            ["inf" if math.isinf(v) else float(v) for v in row] for row in A.entries
        ]
        doc = {"n": A.n, "entries": entries}
        Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")
    else:
        raise ValueError(f"unknown matrix format {format!r}")


def save_curve(curve: ConnectivityCurve, path, format: str = "csv") -> None:
    """Serialize a connectivity curve.

    The CSV form lists one interval per row and is handy for plotting;
    it does not record ``n``. The JSON form is lossless.
    """
    if format == "csv":
        lows = (0.0,) + curve.breakpoints
        highs = tuple(curve.breakpoints) + (math.inf,)
        lines = ["lambda_low,lambda_high,kappa"]
        for lo, hi, v in zip(lows, highs, curve.values):
            lines.append(f"{_format_value(lo)},{_format_value(hi)},{v}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif format == "json":
        doc = {
            "n": curve.n,
            "breakpoints": list(curve.breakpoints),
            "values": list(curve.values),
        }
        Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")
    else:
        raise ValueError(f"unknown curve format {format!r}")


def _load_curve_csv(path) -> ConnectivityCurve:
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "lambda_low,lambda_high,kappa":
        raise ParseError('curve CSV must start with header "lambda_low,lambda_high,kappa"', 1)
    lows, highs, values = [], [], []
    for lineno, ln in enumerate(lines[1:], start=2):
        tokens = [t.strip() for t in ln.split(",")]
        if len(tokens) != 3:
            raise ParseError(f"expected 3 columns, found {len(tokens)}", lineno)
        lows.append(_parse_value(tokens[0], lineno))
        highs.append(_parse_value(tokens[1], lineno))
        try:
            values.append(int(tokens[2]))
        except ValueError:
            raise ParseError(f"bad kappa token {tokens[2]!r}", lineno) from None
    if not values:
        raise ParseError("curve CSV has no interval rows")
    if lows[0] != 0.0:
        raise ParseError("first interval must start at 0", 2)
    if not math.isinf(highs[-1]):
        raise ParseError("last interval must end at inf", len(lines))
    for k in range(len(lows) - 1):
        if highs[k] != lows[k + 1]:
            raise ParseError(
                f"interval rows must chain: {highs[k]!r} != {lows[k + 1]!r}", k + 3
            )
    breakpoints = tuple(highs[:-1])
    try:
        # The CSV schema does not carry n; the stabilized count is the
        # only self-consistent stand-in (exact whenever kappa reaches n).
        return ConnectivityCurve(n=values[-1], breakpoints=breakpoints, values=tuple(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _load_curve_json(path) -> ConnectivityCurve:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not {"n", "breakpoints", "values"} <= set(doc):
        raise ParseError('curve JSON must be an object with "n", "breakpoints", "values"')
    try:
        return ConnectivityCurve(
            n=int(doc["n"]),
            breakpoints=tuple(float(b) for b in doc["breakpoints"]),
            values=tuple(int(v) for v in doc["values"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def load_curve(path, format: str | None = None) -> ConnectivityCurve:
    """Read a curve back; ``format=None`` sniffs JSON by a leading '{'."""
    if format is None:
        head = Path(path).read_text(encoding="utf-8").lstrip()[:1]
        format = "json" if head == "{" else "csv"
    if format == "csv":
        return _load_curve_csv(path)
    if format == "json":
        return _load_curve_json(path)
    raise ValueError(f"unknown curve format {format!r}")


def save_points(points: PointSet, path) -> None:
    """Write a point set as headerless CSV, one row per point."""
    lines = [",".join(_format_value(c) for c in p) for p in points.points]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
