"""On-disk MDAG format (MdagFileV1) and DOT export.

Layout, all integers little-endian:

    magic   6 bytes  b"MDAGv1"
    header  <IIIIIB  n_x, n_y, sigma, node_count, edge_count, flags
    x, y    length-prefixed (<I) raw bytes
    nodes   node_count * <iiiii  id, l, m, t, b   (INFINITY encoded as -2)
    edges   edge_count * (<IIH + label bytes)     from, to, label length
    digest  32 bytes sha256 over everything above

Node records are topologically ordered (source id 0 first, sink id 1
last); every edge points from an earlier record to a later one, except
edges into the sink. Flags: bit 0 = compacted, bit 1 = verified.
"""

from __future__ import annotations

import hashlib
import struct

from .builder import SINK, SOURCE, Mdag
from .occurrence import INFINITY
from .swings import SOURCE_QUADRUPLE, Quadruple

MAGIC = b"MDAGv1"
INF_ENCODED = -2

_HEADER = struct.Struct("<IIIIIB")
_NODE = struct.Struct("<iiiii")
_EDGE_HEAD = struct.Struct("<IIH")
_LEN = struct.Struct("<I")

FLAG_COMPACTED = 1
FLAG_VERIFIED = 2


class MdagFileError(Exception):
    """Base class for load failures."""


class CorruptFileError(MdagFileError):
    """File is truncated or structurally unparseable."""


class ChecksumMismatchError(MdagFileError):
    """Content digest does not match the stored one."""


class InvariantViolationError(MdagFileError):
    """Parsed graph violates a structural MDAG invariant."""


def _encode_pos(v) -> int:
    return INF_ENCODED if v == INFINITY else int(v)


def _decode_pos(v: int):
    return INFINITY if v == INF_ENCODED else v


def serialize(g: Mdag, verified: bool = False) -> bytes:
    """Canonical byte serialization of a pruned MDAG."""
    if not (g.built and g.pruned):
        raise ValueError("save requires a built and pruned MDAG")
    order = g.topological_order()
    sigma = len(set(g.x) & set(g.y))
    flags = (FLAG_COMPACTED if g.compacted else 0) | (FLAG_VERIFIED if verified else 0)
    # Renumber: source 0, internal nodes 2.. in topological order, sink 1.
    new_id: dict[int, int] = {}
    nid = 2
    for u in order:
        if u == SOURCE:
            new_id[u] = 0
        elif u == SINK:
            new_id[u] = 1
        else:
            new_id[u] = nid
            nid += 1
    out = bytearray()
    out += MAGIC
    out += _HEADER.pack(len(g.x), len(g.y), sigma, g.node_count, g.edge_count, flags)
    out += _LEN.pack(len(g.x)) + g.x
    out += _LEN.pack(len(g.y)) + g.y
    for u in order:
        q = g.quads[u]
        if q is None:
            q = Quadruple(INF_ENCODED, INF_ENCODED, INF_ENCODED, INF_ENCODED)
        out += _NODE.pack(
            new_id[u],
            _encode_pos(q.l),
            _encode_pos(q.m),
            _encode_pos(q.t),
            _encode_pos(q.b),
        )
    for u in order:
        for label, v in sorted(g.adj[u]):
            out += _EDGE_HEAD.pack(new_id[u], new_id[v], len(label))
            out += label
    out += hashlib.sha256(out).digest()
    return bytes(out)


def save(g: Mdag, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(g, verified=getattr(g, "verified", False)))


def deserialize(data: bytes) -> Mdag:
    """Parse, checksum-verify, and invariant-check a serialized MDAG."""
    if len(data) < len(MAGIC) + _HEADER.size + 32:
        raise CorruptFileError("file too short")
    if data[: len(MAGIC)] != MAGIC:
        raise CorruptFileError("bad magic")
    body, digest = data[:-32], data[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise ChecksumMismatchError("content digest mismatch")
    off = len(MAGIC)
    try:
        n_x, n_y, sigma, node_count, edge_count, flags = _HEADER.unpack_from(body, off)
        off += _HEADER.size
        (lx,) = _LEN.unpack_from(body, off)
        off += _LEN.size
        x = body[off : off + lx]
        off += lx
        (ly,) = _LEN.unpack_from(body, off)
        off += _LEN.size
        y = body[off : off + ly]
        off += ly
        if len(x) != lx or len(y) != ly or lx != n_x or ly != n_y:
            raise CorruptFileError("string payload truncated")
        record_pos: dict[int, int] = {}
        quads: dict[int, Quadruple | None] = {}
        for rec in range(node_count):
            nid, l, m, t, b = _NODE.unpack_from(body, off)
            off += _NODE.size
            if nid in record_pos:
                raise CorruptFileError(f"duplicate node id {nid}")
            record_pos[nid] = rec
            quads[nid] = (
                None
                if nid == SINK
                else Quadruple(
                    _decode_pos(l), _decode_pos(m), _decode_pos(t), _decode_pos(b)
                )
            )
        adj: dict[int, list[tuple[bytes, int]]] = {nid: [] for nid in quads}
        for _ in range(edge_count):
            frm, to, lab_len = _EDGE_HEAD.unpack_from(body, off)
            off += _EDGE_HEAD.size
            label = body[off : off + lab_len]
            off += lab_len
            if len(label) != lab_len:
                raise CorruptFileError("edge label truncated")
            if frm not in adj or to not in adj:
                raise CorruptFileError(f"edge references unknown node {frm}->{to}")
            adj[frm].append((label, to))
    except struct.error as exc:
        raise CorruptFileError(f"truncated record: {exc}") from None
    if off != len(body):
        raise CorruptFileError("trailing bytes after edge records")
    if SOURCE not in quads or SINK not in quads:
        raise CorruptFileError("missing source or sink record")
    g = Mdag(x, y)
    g.quads = quads
    g.adj = adj
    g.built = True
    g.pruned = True
    g.compacted = bool(flags & FLAG_COMPACTED)
    g.verified = bool(flags & FLAG_VERIFIED)
    _check_invariants(g, record_pos, sigma)
    return g


def _check_invariants(g: Mdag, record_pos: dict[int, int], sigma: int) -> None:
    if record_pos.get(SOURCE) != 0:
        raise InvariantViolationError("source is not the first record")
    if record_pos.get(SINK) != len(record_pos) - 1:
        raise InvariantViolationError("sink is not the last record")
    if g.quads[SOURCE] != SOURCE_QUADRUPLE:
        raise InvariantViolationError("source quadruple is not <-1,-1,inf,inf>")
    indeg = {u: 0 for u in g.adj}
    for u, edges in g.adj.items():
        firsts = set()
        for label, v in edges:
            if not label:
                raise InvariantViolationError("empty edge label")
            if label[0] in firsts:
                raise InvariantViolationError(
                    f"node {u} has two out-edges with the same first character"
                )
            firsts.add(label[0])
            if 0x24 in label[:-1]:
                raise InvariantViolationError("'$' inside an edge label")
            if (label[-1] == 0x24) != (v == SINK):
                raise InvariantViolationError(
                    "'$' must terminate exactly the labels entering the sink"
                )
            # Topological record order, sink excepted.
            if v != SINK and record_pos[v] <= record_pos[u]:
                raise InvariantViolationError("edge violates topological record order")
            indeg[v] += 1
        if len(edges) > sigma + 1:
            raise InvariantViolationError(f"node {u} out-degree exceeds sigma + 1")
    if indeg[SOURCE] != 0:
        raise InvariantViolationError("source has incoming edges")
    if g.adj[SINK]:
        raise InvariantViolationError("sink has outgoing edges")
    for u in g.adj:
        if u != SINK and not g.adj[u]:
            raise InvariantViolationError(f"node {u} has no outgoing edges")
        if u not in (SOURCE, SINK) and indeg[u] == 0:
            raise InvariantViolationError(f"node {u} has no incoming edges")
        if g.compacted and u not in (SOURCE, SINK) and len(g.adj[u]) < 2:
            raise InvariantViolationError(f"compacted node {u} has out-degree < 2")
    for u, q in g.quads.items():
        if u in (SOURCE, SINK) or q is None:
            continue
        if not (q.l < q.t and q.m < q.b):
            raise InvariantViolationError(f"node {u} quadruple violates l<t or m<b")
    seen = set()
    for u, q in g.quads.items():
        if u in (SOURCE, SINK):
            continue
        if q in seen:
            raise InvariantViolationError("two nodes share one quadruple")
        seen.add(q)


def load(path) -> Mdag:
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def export_dot(g: Mdag) -> str:
    """Deterministic DOT text with quadruple node labels."""

    def fmt(v) -> str:
        return "inf" if v == INFINITY else str(v)

    lines = ["digraph mdag {", "  rankdir=LR;"]
    order = g.topological_order()
    names = {SOURCE: "s", SINK: "t"}
    for u in order:
        if u == SOURCE:
            lines.append('  s [label="s"];')
        elif u == SINK:
            lines.append('  t [label="t"];')
        else:
            q = g.quads[u]
            names[u] = f"n{u}"
            lines.append(
                f'  n{u} [label="⟨{fmt(q.l)},{fmt(q.m)},{fmt(q.t)},{fmt(q.b)}⟩"];'
            )
    for u in order:
        for label, v in sorted(g.adj[u]):
            text = label.decode("latin-1")
            lines.append(f'  {names[u]} -> {names[v]} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
