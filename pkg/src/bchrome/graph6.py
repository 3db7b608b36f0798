"""graph6 encoding and decoding (McKay's format, undirected simple graphs)."""

from __future__ import annotations

from typing import Iterator

from bchrome.graph import Graph

HEADER = ">>graph6<<"
_MAX_N = 68719476735  # 2**36 - 1


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n <= _MAX_N:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise Graph6Error(f"n={n} too large for graph6")


def _decode_n(data: list[int]) -> tuple[int, int]:
    """Return ``(n, bytes consumed)`` from 6-bit values."""
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 63:
        return data[0], 1
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size header")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte size header")
    return (data[1] << 12) | (data[2] << 6) | data[3], 4


def emit_graph6(g: Graph) -> str:
    if g.n < 1:
        raise Graph6Error("graph6 requires at least one vertex")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [
        (bits[k] << 5) | (bits[k + 1] << 4) | (bits[k + 2] << 3)
        | (bits[k + 3] << 2) | (bits[k + 4] << 1) | bits[k + 5]
        for k in range(0, len(bits), 6)
    ]
    return "".join(chr(x + 63) for x in _encode_n(g.n) + body)


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(HEADER):
        line = line[len(HEADER):]
    data = []
    for pos, ch in enumerate(line):
        code = ord(ch)
        if not 63 <= code <= 126:
            raise Graph6Error(f"character {ch!r} at position {pos} outside graph6 range")
        data.append(code - 63)
    n, used = _decode_n(data)
    nbits = n * (n - 1) // 2
    payload = data[used:]
    need = (nbits + 5) // 6
    if len(payload) < need:
        raise Graph6Error(f"truncated payload: expected {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise Graph6Error(f"trailing data: expected {need} bytes, got {len(payload)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (payload[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def iter_graph6(text: str) -> Iterator[Graph]:
    """Parse every non-blank line of ``text``."""
    for line in text.splitlines():
        if line.strip():
            yield parse_graph6(line)
