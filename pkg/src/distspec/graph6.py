"""graph6 encoding and decoding.

A graph6 string is a size header ``N(n)`` followed by the upper triangle
of the adjacency matrix, read column by column
(``x(0,1), x(0,2), x(1,2), x(0,3), ...``), packed six bits per byte
with each byte offset by 63. The header is one byte for ``n <= 62``,
``'~'`` plus three bytes for ``n <= 258047`` and ``'~~'`` plus six bytes
beyond that.
"""

from __future__ import annotations

import numpy as np

from .errors import Graph6ParseError
from .graphs import Graph

HEADER = ">>graph6<<"
_SHORT_MAX = 62
_MEDIUM_MAX = 258047
_LONG_MAX = 68719476735
_SHIFTS = np.arange(5, -1, -1, dtype=np.uint8)


def _encode_size(n: int) -> str:
    if n < 0 or n > _LONG_MAX:
        raise ValueError(f"graph6 cannot encode {n} vertices")
    if n <= _SHORT_MAX:
        return chr(n + 63)
    if n <= _MEDIUM_MAX:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _lower_pairs(n: int):
    # np.tril_indices walks rows top to bottom, which is column-major over
    # the upper triangle: (j, i) with i < j, j ascending then i ascending.
    return np.tril_indices(n, -1)


def emit_graph6(g: Graph, header: bool = False) -> str:
    """Canonical graph6 string for ``g`` in its stored vertex order."""
    n = g.n
    j, i = _lower_pairs(n)
    bits = g.adjacency[i, j].astype(np.uint8)
    pad = (-bits.size) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    chunks = bits.reshape(-1, 6)
    values = (chunks << _SHIFTS).sum(axis=1) + 63
    body = values.astype(np.uint8).tobytes().decode("ascii")
    return (HEADER if header else "") + _encode_size(n) + body


def _values(s: str, start: int, count: int) -> np.ndarray:
    raw = s[start:start + count]
    if len(raw) < count:
        raise Graph6ParseError(f"truncated input: expected {count} more bytes, found {len(raw)}", len(s))
    try:
        data = np.frombuffer(raw.encode("ascii"), dtype=np.uint8)
    except UnicodeEncodeError as exc:
        raise Graph6ParseError("non-ASCII character", start + exc.start) from None
    bad = np.flatnonzero((data < 63) | (data > 126))
    if bad.size:
        pos = start + int(bad[0])
        raise Graph6ParseError(f"invalid character {raw[int(bad[0])]!r}", pos)
    return data.astype(np.int64) - 63


def _decode_size(s: str, start: int) -> tuple[int, int]:
    if start >= len(s):
        raise Graph6ParseError("empty graph6 string", start)
    first = _values(s, start, 1)[0]
    if first != 63:
        return int(first), start + 1
    if start + 1 < len(s) and s[start + 1] == "~":
        digits, width = _values(s, start + 2, 6), 8
    else:
        digits, width = _values(s, start + 1, 3), 4
    n = 0
    for d in digits.tolist():
        n = (n << 6) | d
    return n, start + width


def parse_graph6(s: str) -> Graph:
    """Decode one graph6 string (an optional ``>>graph6<<`` prefix is allowed).

    Raises :class:`Graph6ParseError` with the byte offset of the first
    problem: bad characters, a short body, nonzero padding bits, or
    anything after the last data byte.
    """
    if isinstance(s, (bytes, bytearray)):
        try:
            s = s.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6ParseError("non-ASCII byte", exc.start) from None
    s = s.rstrip("\r\n")
    start = len(HEADER) if s.startswith(HEADER) else 0
    n, pos = _decode_size(s, start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    data = _values(s, pos, nbytes)
    if len(s) > pos + nbytes:
        raise Graph6ParseError(f"trailing data after {nbytes} body bytes", pos + nbytes)
    bits = ((data[:, None] >> _SHIFTS) & 1).ravel()
    if bits[nbits:].any():
        raise Graph6ParseError("nonzero padding bits", pos + nbytes - 1)
    adj = np.zeros((n, n), dtype=bool)
    j, i = _lower_pairs(n)
    on = bits[:nbits].astype(bool)
    adj[i[on], j[on]] = True
    adj[j[on], i[on]] = True
    return Graph(adj)


def read_graph6_lines(lines):
    """Yield ``(line_number, text)`` for each non-blank graph6 line."""
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if text:
            yield lineno, text
