"""graph6, DIMACS edge format and whitespace edge lists."""

from __future__ import annotations

from .graph import Graph

FORMATS = ("graph6", "dimacs", "edgelist")


class FormatError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        where = "" if position is None else f" at byte {position}"
        super().__init__(message + where)
        self.position = position


# ---------------------------------------------------------------- graph6

def _g6_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g: Graph) -> bytes:
    """Upper triangle column by column, six bits per byte, offset 63."""
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytes(63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6))
    return _g6_size(g.n) + body


def decode_graph6(data: bytes) -> Graph:
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise FormatError("empty graph6 string", 0)
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise FormatError(f"byte {c!r} outside the graph6 range", i)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated size field", len(data))
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
    else:
        if len(data) < 4:
            raise FormatError("truncated size field", len(data))
        n, pos = 0, 4
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise FormatError(f"expected {need} body bytes for n={n}, got {len(body)}", pos + min(len(body), need))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            c = body[k // 6] - 63
            if (c >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


# ---------------------------------------------------------------- DIMACS

def encode_dimacs(g: Graph) -> bytes:
    lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode()


def decode_dimacs(data: bytes) -> Graph:
    n = None
    edges = []
    offset = 0
    for raw in data.decode().splitlines(keepends=True):
        line = raw.strip()
        here = offset
        offset += len(raw.encode())
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("second problem line", here)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise FormatError("problem line must read 'p edge N M'", here)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("non-integer in problem line", here) from None
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", here)
            if len(parts) != 3:
                raise FormatError("edge line must read 'e U V'", here)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("non-integer vertex", here) from None
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise FormatError(f"bad edge {u} {v}", here)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown line type {parts[0]!r}", here)
    if n is None:
        raise FormatError("missing problem line", 0)
    g = Graph(n, edges)
    if g.m != m:
        raise FormatError(f"problem line promises {m} edges, found {g.m}", 0)
    return g


# ---------------------------------------------------------------- edge lists

def encode_edgelist(g: Graph) -> bytes:
    """First line is the vertex count, then one ``u v`` pair per line."""
    return ("\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n").encode()


def decode_edgelist(data: bytes) -> Graph:
    lines = [l for l in data.decode().splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty edge list", 0)
    try:
        n = int(lines[0].split()[0])
        edges = [tuple(int(x) for x in l.split()[:2]) for l in lines[1:]]
    except ValueError as e:
        raise FormatError(f"non-integer token: {e}") from None
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"bad edge {u} {v}")
    return Graph(n, edges)


def parse_graph(data: bytes, fmt: str) -> Graph:
    if fmt == "graph6":
        return decode_graph6(data)
    if fmt == "dimacs":
        return decode_dimacs(data)
    if fmt == "edgelist":
        return decode_edgelist(data)
    raise ValueError(f"unknown format {fmt!r}")


def emit_graph(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return encode_graph6(g)
    if fmt == "dimacs":
        return encode_dimacs(g)
    if fmt == "edgelist":
        return encode_edgelist(g)
    raise ValueError(f"unknown format {fmt!r}")


def sniff(data: bytes) -> str:
    """Guess the format of ``data``."""
    text = data.lstrip()
    if text.startswith(b">>graph6<<"):
        return "graph6"
    first = text.split(b"\n", 1)[0].strip()
    if first.startswith((b"p ", b"c ", b"c\n")) or first == b"c":
        return "dimacs"
    if first and all(63 <= c <= 126 for c in first) and not first[:1].isdigit():
        return "graph6"
    return "edgelist"
