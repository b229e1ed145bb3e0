"""Matrix file formats shared by the library and the CLI.

Text format: first non-comment line holds the order ``n``, followed by ``n``
lines of ``n`` whitespace-separated decimal floats.  ``#`` starts a comment
anywhere on a line.  A JSON alternative ``{"n": int, "rows": [[...], ...]}``
is accepted interchangeably; the loader sniffs for a leading ``{``.

Floats are written with Python's shortest round-trip repr, so write/read is
bit-exact for doubles and output bytes are deterministic.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import FormatError

__all__ = [
    "parse_matrix_text",
    "parse_matrix_json",
    "parse_matrix",
    "load_matrix",
    "format_matrix_text",
    "matrix_to_json_dict",
]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse the text matrix format; raises FormatError with line numbers."""
    n = None
    rows: list[list[float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise FormatError(f"expected matrix order, got {line!r}", lineno) from None
            if n < 1:
                raise FormatError(f"matrix order must be positive, got {n}", lineno)
            continue
        parts = line.split()
        if len(parts) != n:
            raise FormatError(f"expected {n} entries, got {len(parts)}", lineno)
        try:
            row = [float(p) for p in parts]
        except ValueError as exc:
            raise FormatError(f"bad float: {exc}", lineno) from None
        rows.append(row)
        if len(rows) > n:
            raise FormatError(f"more than {n} rows", lineno)
    if n is None:
        raise FormatError("empty input: no matrix order found")
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, found {len(rows)}")
    return np.array(rows, dtype=float)


def parse_matrix_json(text: str) -> np.ndarray:
    """Parse the {"n": ..., "rows": ...} JSON matrix form."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise FormatError('JSON matrix must be an object with keys "n" and "rows"')
    n = obj["n"]
    rows = obj["rows"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f'"n" must be a positive integer, got {n!r}')
    try:
        M = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise FormatError('"rows" must be a rectangular array of numbers') from None
    if M.shape != (n, n):
        raise FormatError(f'"rows" has shape {M.shape}, expected ({n}, {n})')
    return M


def parse_matrix(text: str) -> np.ndarray:
    """Dispatch on content: JSON if the first non-space char is '{', text otherwise."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_matrix_json(text)
    return parse_matrix_text(text)


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_matrix_text(M: np.ndarray, comment: str | None = None) -> str:
    """Render a matrix in the text format (round-trip exact floats)."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(str(n))
    for i in range(n):
        lines.append(" ".join(repr(float(x)) for x in M[i]))
    return "\n".join(lines) + "\n"


def matrix_to_json_dict(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=float)
    return {"n": int(M.shape[0]), "rows": [[float(x) for x in row] for row in M]}
