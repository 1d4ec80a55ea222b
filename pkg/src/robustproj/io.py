"""Plain-text matrix files and JSON serialization of results.

Matrix format: the first non-comment line is ``"m n"``; then m lines of n
whitespace-separated numbers. Lines starting with ``#`` and blank lines are
ignored. Vectors are stored as an m x 1 (or 1 x m) matrix.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DimensionError, NonFiniteEntry, ParseError
from .numerics import as_vector

JSON_FORMAT_VERSION = 1


def _tokens_with_columns(line):
    col, out = 0, []
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def parse_matrix(text: str, path=None) -> np.ndarray:
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = _tokens_with_columns(raw)
        if header is None:
            if len(toks) != 2:
                raise ParseError("header must be 'm n'", path, lineno, 1)
            try:
                m, n = (int(t) for t, _ in toks)
            except ValueError:
                raise ParseError("header entries must be integers", path, lineno, 1) from None
            if m < 1 or n < 1:
                raise DimensionError(f"invalid dimensions {m} x {n}", path, lineno, 1)
            header = (m, n)
            continue
        if len(toks) != header[1]:
            raise DimensionError(
                f"expected {header[1]} entries, found {len(toks)}", path, lineno, 1
            )
        values = []
        for tok, col in toks:
            try:
                val = float(tok)
            except ValueError:
                raise ParseError(f"not a number: {tok!r}", path, lineno, col) from None
            if not math.isfinite(val):
                raise NonFiniteEntry(f"non-finite entry {tok!r}", path, lineno, col)
            values.append(val)
        rows.append(values)
    if header is None:
        raise ParseError("empty matrix file", path)
    if len(rows) != header[0]:
        raise DimensionError(f"header declares {header[0]} rows, found {len(rows)}", path)
    return np.array(rows, dtype=float).reshape(header)


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    return parse_matrix(path.read_text(encoding="utf-8"), path)


def read_vector(path) -> np.ndarray:
    M = read_matrix(path)
    if 1 not in M.shape:
        raise DimensionError(f"expected a single row or column, got {M.shape[0]} x {M.shape[1]}", path)
    return M.reshape(-1)


def format_matrix(M) -> str:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join(repr(float(v)) for v in row) for row in M]
    return "\n".join(lines) + "\n"


def write_matrix(path, M) -> None:
    Path(path).write_text(format_matrix(M), encoding="utf-8")


def write_vector(path, v) -> None:
    write_matrix(path, as_vector(v).reshape(-1, 1))


def _rows(a):
    return np.asarray(a, dtype=float).tolist()


def projector_to_dict(proj, rset=None) -> dict:
    """JSON-ready dict for a projector, optionally with a recovery set."""
    return {
        "format": JSON_FORMAT_VERSION,
        "m": proj.m,
        "n": proj.n,
        "q": proj.q,
        "rank": proj.rank,
        "U": _rows(proj.U),
        "image_basis": _rows(proj.image_basis.vectors),
        "kernel_basis": _rows(proj.kernel_basis.vectors),
        "anchor": None if rset is None else _rows(rset.anchor),
        "projected_anchor": None if rset is None else _rows(rset.projected_anchor),
    }


def decode_to_dict(result) -> dict:
    return {
        "format": JSON_FORMAT_VERSION,
        "x_hat": _rows(result.x_hat),
        "e_hat": _rows(result.e_hat),
        "support": list(result.support),
        "support_size": result.support_size,
        "dropped_rows": list(result.dropped_rows),
    }


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
