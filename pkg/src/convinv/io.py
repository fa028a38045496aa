"""digraph6 and edge-list text formats."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Iterable, TextIO

from .digraph import Digraph, make_digraph
from .errors import BadHeader, BadLength, FormatError, NonPrintableByte


def _encode_size(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("order too large for digraph6")


def _decode_size(body: str) -> tuple[int, int]:
    """Return ``(n, number of characters consumed)``."""
    if not body:
        raise BadHeader("missing size field")
    vals = [ord(c) - 63 for c in body[:8]]
    if vals[0] != 63:
        return vals[0], 1
    if len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise BadHeader("truncated 8-byte size field")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        return n, 8
    if len(vals) < 4:
        raise BadHeader("truncated 4-byte size field")
    return vals[1] << 12 | vals[2] << 6 | vals[3], 4


def emit_digraph6(D: Digraph) -> str:
    n = D.n
    bits = []
    for u in range(n):
        row = D.out[u]
        bits.extend(row >> v & 1 for v in range(n))
    bits.extend([0] * (-len(bits) % 6))
    data = "".join(
        chr(63 + int("".join(map(str, bits[i:i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return "&" + _encode_size(n) + data


def parse_digraph6(text: str) -> Digraph:
    """Decode one digraph6 line. Symmetric pairs are rejected (orgraphs only)."""
    line = text.strip()
    if not line.startswith("&"):
        raise BadHeader("digraph6 lines start with '&'")
    for c in line:
        if not 63 <= ord(c) <= 126 and c != "&":
            raise NonPrintableByte(f"byte {ord(c)} outside 63..126")
    body = line[1:]
    n, used = _decode_size(body)
    data = body[used:]
    expected = -(-n * n // 6)
    if len(data) != expected:
        raise BadLength(f"expected {expected} data bytes for n={n}, got {len(data)}")
    bits = []
    for c in data:
        v = ord(c) - 63
        bits.extend(v >> s & 1 for s in range(5, -1, -1))
    if any(bits[n * n:]):
        raise BadLength("non-zero padding bits")
    arcs = [(u, v) for u in range(n) for v in range(n) if bits[u * n + v]]
    return make_digraph(n, arcs)


def emit_edgelist(D: Digraph) -> str:
    lines = [f"n {D.n}"] + [f"{u} {v}" for u, v in D.arcs()]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Digraph:
    """``n <N>`` header then one ``u v`` arc per line; ``#`` starts a comment."""
    n = None
    arcs = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise BadHeader("edge lists begin with 'n <order>'")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise FormatError(f"bad arc line: {raw!r}")
        arcs.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise BadHeader("empty edge list")
    return make_digraph(n, arcs)


def parse_digraph(text: str, fmt: str | None = None) -> Digraph:
    """Parse either format; without ``fmt`` a leading ``&`` selects digraph6."""
    stripped = text.strip()
    if fmt is None:
        fmt = "digraph6" if stripped.startswith("&") else "edgelist"
    if fmt == "digraph6":
        first = stripped.splitlines()[0] if stripped else ""
        return parse_digraph6(first)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown input format {fmt!r}")


def read_text(path: str | Path, stdin: TextIO | None = None) -> str:
    if str(path) == "-":
        return (stdin or sys.stdin).read()
    return Path(path).read_text()


def read_digraph(path: str | Path, fmt: str | None = None) -> Digraph:
    return parse_digraph(read_text(path), fmt)


def read_digraph6_lines(lines: Iterable[str]) -> list[Digraph]:
    return [parse_digraph6(line) for line in lines if line.strip()]
