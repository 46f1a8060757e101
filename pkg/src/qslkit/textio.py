"""Plain-text formats used by the command line: CSV tables, matrix files, SVG.

Matrix files hold one or more blocks, each starting with ``# dim N`` and
followed by ``N`` rows of whitespace-separated entries written ``a+bi``.
Other ``#`` lines and blank lines are ignored. Floats are written with 17
significant digits so values round-trip exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import ValidationError
from .matrixcore import HERMITIAN_TOL

_DIM_LINE = re.compile(r"^#\s*dim\s+(\S+)\s*$")
_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^[+-]?{_NUMBER}$")
_IMAG = re.compile(rf"^(?P<im>[+-]?(?:{_NUMBER})?)[ij]$")
_FULL = re.compile(rf"^(?P<re>[+-]?{_NUMBER})(?P<im>[+-](?:{_NUMBER})?)[ij]$")


def format_float(x: float) -> str:
    """17 significant digits, as matrix files use."""
    return "%.17g" % float(x)


def format_value(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


def format_complex(z: complex, fmt=format_float) -> str:
    z = complex(z)
    im = fmt(z.imag)
    if not im.startswith("-"):
        im = "+" + im
    return f"{fmt(z.real)}{im}i"


def _imag_part(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_complex(token: str) -> complex:
    """Parse ``a``, ``bi`` or ``a+bi`` (``j`` is accepted for ``i``).

    Raises:
        ValueError: the token is not a complex literal.
    """
    if _REAL.match(token):
        return complex(float(token), 0.0)
    m = _IMAG.match(token)
    if m:
        return complex(0.0, _imag_part(m.group("im")))
    m = _FULL.match(token)
    if m:
        return complex(float(m.group("re")), _imag_part(m.group("im")))
    raise ValueError(f"cannot parse {token!r} as a complex number")


@dataclass(frozen=True)
class MatrixBlock:
    data: np.ndarray
    line: int  # line number of the "# dim" header


def read_matrices(lines: Iterable[str], source: str = "<input>") -> list[MatrixBlock]:
    """Parse every matrix block; errors name the file, line and entry."""
    blocks: list[MatrixBlock] = []
    rows: list[list[complex]] = []
    dim = None
    header = 0

    def close():
        if dim is not None:
            if len(rows) != dim:
                raise ValidationError(f"{source}:{header}: block declares dim {dim} but has {len(rows)} rows")
            blocks.append(MatrixBlock(np.array(rows, dtype=complex), header))

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        m = _DIM_LINE.match(line)
        if m:
            close()
            try:
                dim = int(m.group(1))
            except ValueError:
                raise ValidationError(f"{source}:{lineno}: bad dimension {m.group(1)!r}") from None
            if dim < 1:
                raise ValidationError(f"{source}:{lineno}: dimension must be positive, got {dim}")
            rows, header = [], lineno
            continue
        if line.startswith("#"):
            continue
        if dim is None:
            raise ValidationError(f"{source}:{lineno}: data before a '# dim N' header")
        if len(rows) == dim:
            raise ValidationError(f"{source}:{lineno}: more than {dim} rows in block starting at line {header}")
        tokens = line.split()
        if len(tokens) != dim:
            raise ValidationError(f"{source}:{lineno}: expected {dim} entries, found {len(tokens)}")
        row = []
        for col, tok in enumerate(tokens):
            try:
                row.append(parse_complex(tok))
            except ValueError:
                raise ValidationError(f"{source}:{lineno}: entry ({len(rows)}, {col}) {tok!r} is not a complex number") from None
        rows.append(row)
    close()
    return blocks


def check_hermitian_block(block: MatrixBlock, source: str = "<input>") -> np.ndarray:
    """Return the block's matrix or name the first non-Hermitian entry."""
    a = block.data
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    for i in range(n):
        for j in range(i, n):
            if abs(a[i, j] - np.conj(a[j, i])) > HERMITIAN_TOL * scale:
                raise ValidationError(
                    f"{source}:{block.line + 1 + i}: entry ({i}, {j}) = {format_complex(a[i, j], format_value)} "
                    f"is not the conjugate of entry ({j}, {i}) = {format_complex(a[j, i], format_value)}"
                )
    return a


def write_matrix(out: TextIO, a) -> None:
    a = np.asarray(a, dtype=complex)
    out.write(f"# dim {a.shape[0]}\n")
    for row in a:
        out.write(" ".join(format_complex(z) for z in row) + "\n")


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_value(v)
    return str(v)


def render_csv(header: Sequence[tuple[str, object]], columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Comment header (``# key = value``), a column row, then data rows."""
    lines = [f"# {k} = {_cell(v)}" for k, v in header]
    lines.append(",".join(columns))
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_W, _H = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 150, 30, 50


def _fmt(x: float) -> str:
    return "%.6g" % x


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def render_svg(title: str, x_label: str, x: Sequence[float], series: Sequence[tuple[str, Sequence[float]]]) -> str:
    """Standalone line plot with one polyline per series."""
    xs = np.asarray(x, dtype=float)
    ys = [np.asarray(v, dtype=float) for _, v in series]
    finite = np.concatenate([v[np.isfinite(v)] for v in ys]) if ys else np.array([])
    x_lo, x_hi = (float(xs.min()), float(xs.max())) if xs.size else (0.0, 1.0)
    y_lo, y_hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def px(v):
        return _LEFT + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return _TOP + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="18" text-anchor="middle" font-family="sans-serif" font-size="14">{_escape(title)}</text>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        out.append(f'<text x="{px(t):.2f}" y="{_TOP + ph + 16}" text-anchor="middle" font-family="sans-serif" font-size="11">{_fmt(t)}</text>')
    for t in _ticks(y_lo, y_hi):
        out.append(f'<text x="{_LEFT - 6}" y="{py(t) + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">{_fmt(t)}</text>')
    out.append(f'<text x="{_LEFT + pw / 2:.1f}" y="{_H - 10}" text-anchor="middle" font-family="sans-serif" font-size="12">{_escape(x_label)}</text>')
    for k, ((name, _), y) in enumerate(zip(series, ys)):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xs, y) if np.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = _TOP + 16 * (k + 1)
        out.append(f'<line x1="{_W - _RIGHT + 10}" y1="{ly - 4}" x2="{_W - _RIGHT + 30}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{_W - _RIGHT + 34}" y="{ly}" font-family="sans-serif" font-size="11">{_escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
