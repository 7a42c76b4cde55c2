"""Graph file formats: graph6 strings and the plain edge-list format.

Both round-trip bit-exactly. The edge-list reader/writer lives next to
Graph in `graphs`; this module adds graph6 and file-level helpers that
sniff the format.
"""

from __future__ import annotations

import os

from .errors import FormatError
from .graphs import Graph, from_edge_list_text, to_edge_list_text

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise FormatError("graph6 cannot encode negative sizes")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes([126, 126] + [(n >> (6 * k) & 63) + 63 for k in range(5, -1, -1)])
    raise FormatError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, bytes consumed)."""
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise FormatError("truncated graph6 size")
        n = 0
        for b in data[1:4]:
            n = n << 6 | (b - 63)
        return n, 4
    if len(data) < 8:
        raise FormatError("truncated graph6 size")
    n = 0
    for b in data[2:8]:
        n = n << 6 | (b - 63)
    return n, 8


def to_graph6(g: Graph) -> str:
    """Canonical graph6 encoding (no header, no trailing newline)."""
    n = g.n
    out = bytearray(_encode_n(n))
    bitbuf = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            bitbuf = bitbuf << 1 | (1 if g.has_edge(i, j) else 0)
            nbits += 1
            if nbits == 6:
                out.append(bitbuf + 63)
                bitbuf = nbits = 0
    if nbits:
        out.append((bitbuf << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(_HEADER):
        line = line[len(_HEADER):]
    data = line.encode("ascii")
    n, used = _decode_n(data)
    body = data[used:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise FormatError(f"graph6 body length {len(body)}, expected {need} for n={n}")
    for b in body:
        if not 63 <= b <= 126:
            raise FormatError(f"invalid graph6 byte {b}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def load_graph(path: str) -> Graph:
    """Read a graph file, picking the format from the extension
    (.g6 -> graph6, anything else -> edge list)."""
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if os.path.splitext(path)[1] in (".g6", ".graph6"):
        return from_graph6(text)
    return from_edge_list_text(text)


def save_graph(g: Graph, path: str) -> None:
    if os.path.splitext(path)[1] in (".g6", ".graph6"):
        payload = to_graph6(g) + "\n"
    else:
        payload = to_edge_list_text(g)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(payload)
