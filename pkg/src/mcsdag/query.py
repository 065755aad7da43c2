"""Read-side operations over a compact MDAG.

Counting, lexicographic enumeration (constant amortized time per emitted
string), prefix search, and rank/select. All operations are read-only over
an immutable graph plus a path-count annotation; path counts use Python
ints because the MCS set can be exponential in n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .builder import SINK, SOURCE, Mdag
from .occurrence import as_bytes

DOLLAR = 0x24  # ord("$")

# '$' is an internal sentinel ordered after every alphabet byte. It never
# actually competes with a sibling edge (a pure '$' edge is always alone,
# asserted in annotate_counts), so this ordering is inert.
_DOLLAR_KEY = 256


def _edge_key(label: bytes) -> int:
    first = label[0]
    return _DOLLAR_KEY if first == DOLLAR else first


def _core(label: bytes) -> bytes:
    """Label with the trailing '$' terminator stripped."""
    return label[:-1] if label[-1] == DOLLAR else label


@dataclass
class PathCountAnnotation:
    """Per-node path counts plus per-edge prefix sums for rank/select."""

    p: dict[int, int]
    # node -> [(label, target, count of st-paths through lexicographically
    #           smaller sibling edges)], sorted by first label byte.
    edges: dict[int, list[tuple[bytes, int, int]]]

    @property
    def total(self) -> int:
        return self.p[SOURCE]


def annotate_counts(g: Mdag) -> PathCountAnnotation:
    """Compute p(u) = number of ut-paths for every node, sink-first DP."""
    p: dict[int, int] = {SINK: 1}
    edges: dict[int, list[tuple[bytes, int, int]]] = {SINK: []}
    for u in reversed(g.topological_order()):
        if u == SINK:
            continue
        out = sorted(g.adj[u], key=lambda e: _edge_key(e[0]))
        if len(out) > 1:
            assert all(lab[0] != DOLLAR for lab, _ in out), (
                "'$' edge with siblings violates the terminal rule"
            )
        total = 0
        annotated = []
        for lab, v in out:
            annotated.append((lab, v, total))
            total += p[v]
        p[u] = total
        edges[u] = annotated
    return PathCountAnnotation(p=p, edges=edges)


def count(g: Mdag, ann: PathCountAnnotation | None = None) -> int:
    """|MCS(x, y)| = number of st-paths."""
    if ann is None:
        ann = annotate_counts(g)
    return ann.total


def expected_frames(g: Mdag) -> int:
    """Total DFS frames a full enumeration pushes: sum over u of #su-paths.

    Every frame push during enumeration corresponds to one distinct path
    from the source to some node, so this closed form equals the
    instrumented frame counter without walking the paths.
    """
    q: dict[int, int] = {u: 0 for u in g.adj}
    q[SOURCE] = 1
    total = 0
    for u in g.topological_order():
        total += q[u]
        for _, v in g.adj[u]:
            q[v] += q[u]
    return total


class EnumCursor:
    """Resumable lexicographic traversal over st-paths.

    Yields MCS strings ('$' stripped) in strictly increasing byte order.
    ``frames`` counts stack pushes; with no unary internal nodes the total
    stays within 2 x solutions + 1.
    """

    def __init__(self, g: Mdag, start: int = SOURCE, prefix: bytes = b""):
        self._g = g
        self._edges: dict[int, list[tuple[bytes, int]]] = {
            u: sorted(edges, key=lambda e: _edge_key(e[0]))
            for u, edges in g.adj.items()
        }
        self._buf = bytearray(prefix)
        # frame: [node, next out-edge ordinal, chars contributed by the
        # incoming edge]
        self._stack: list[list[int]] = [[start, 0, 0]]
        self.emitted = 0
        self.frames = 1

    def next(self) -> bytes | None:
        """Next string in lexicographic order, or None when exhausted."""
        stack = self._stack
        buf = self._buf
        while stack:
            node, ei, inlen = stack[-1]
            if node == SINK:
                out = bytes(buf)
                stack.pop()
                if inlen:
                    del buf[-inlen:]
                self.emitted += 1
                return out
            edges = self._edges[node]
            if ei >= len(edges):
                stack.pop()
                if inlen:
                    del buf[-inlen:]
                continue
            stack[-1][1] = ei + 1
            label, target = edges[ei]
            chars = _core(label)
            buf.extend(chars)
            stack.append([target, 0, len(chars)])
            self.frames += 1
        return None

    def __iter__(self) -> Iterator[bytes]:
        while True:
            s = self.next()
            if s is None:
                return
            yield s


def enumerate_mcs(
    g: Mdag,
    on_emit: Callable | None = None,
    mode: str = "full",
    limit: int | None = None,
) -> tuple[int, int]:
    """Emit all MCS strings in lexicographic order.

    In "full" mode the callback receives each string; in "compressed" mode
    it receives (keep, suffix): retain ``keep`` characters of the previous
    emission and append ``suffix``. Returns (emitted, frames).
    """
    if mode not in ("full", "compressed"):
        raise ValueError(f"unknown mode {mode!r}")
    cursor = EnumCursor(g)
    prev = b""
    for s in cursor:
        if on_emit is not None:
            if mode == "compressed":
                keep = 0
                for a, b in zip(prev, s):
                    if a != b:
                        break
                    keep += 1
                on_emit((keep, s[keep:]))
                prev = s
            else:
                on_emit(s)
        if limit is not None and cursor.emitted >= limit:
            break
    return cursor.emitted, cursor.frames


def search_prefix(
    g: Mdag, prefix: str | bytes, on_emit: Callable | None = None
) -> int:
    """Emit every MCS string starting with ``prefix``; returns the count.

    A mismatch (including falling off a label mid-edge) is a normal
    zero-result.
    """
    p = as_bytes(prefix)
    node = SOURCE
    pos = 0
    while pos < len(p):
        match = None
        for label, target in g.adj[node]:
            if label[0] == p[pos]:
                match = (label, target)
                break
        if match is None:
            return 0
        label, target = match
        core = _core(label)
        take = min(len(core), len(p) - pos)
        if core[:take] != p[pos : pos + take]:
            return 0
        if len(core) >= len(p) - pos:
            # The prefix ends inside (or exactly at the end of) this edge.
            leftover = core[take:]
            if label[-1] == DOLLAR:
                target_node = SINK
            else:
                target_node = target
            cursor = EnumCursor(g, start=target_node, prefix=p + leftover)
            emitted = 0
            for s in cursor:
                emitted += 1
                if on_emit is not None:
                    on_emit(s)
            return emitted
        pos += len(core)
        node = target
        if node == SINK:
            return 0  # prefix longer than the completed string
    # Prefix consumed exactly at a node boundary.
    cursor = EnumCursor(g, start=node, prefix=p)
    emitted = 0
    for s in cursor:
        emitted += 1
        if on_emit is not None:
            on_emit(s)
    return emitted


def select(g: Mdag, i: int, ann: PathCountAnnotation | None = None) -> bytes:
    """The i-th smallest MCS string, 1-based."""
    if ann is None:
        ann = annotate_counts(g)
    if not isinstance(i, int) or not 1 <= i <= ann.total:
        raise IndexError(f"select index {i!r} out of range [1, {ann.total}]")
    node = SOURCE
    out = bytearray()
    remaining = i
    while node != SINK:
        edges = ann.edges[node]
        # Rightmost edge whose prefix sum is still below `remaining`.
        lo, hi = 0, len(edges) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if edges[mid][2] < remaining:
                lo = mid
            else:
                hi = mid - 1
        label, target, before = edges[lo]
        remaining -= before
        out.extend(_core(label))
        node = target
    return bytes(out)


class McsNotFoundError(KeyError):
    """Raised by rank() when the string is not a member of the MCS set.

    ``reason`` is "mismatch" when the walk fell off a label mid-edge (or
    found no matching out-edge), and "prefix-only" when the string ended at
    a non-terminal point of the graph.
    """

    def __init__(self, s: bytes, reason: str):
        super().__init__(f"{s!r} is not in the MCS set ({reason})")
        self.string = s
        self.reason = reason


def rank(g: Mdag, s: str | bytes, ann: PathCountAnnotation | None = None) -> int:
    """1-based lexicographic position of a member string (inverse of select)."""
    if ann is None:
        ann = annotate_counts(g)
    target_s = as_bytes(s)
    node = SOURCE
    pos = 0
    acc = 0
    while True:
        if node == SINK:
            if pos == len(target_s):
                return acc + 1
            raise McsNotFoundError(target_s, "mismatch")
        edges = ann.edges[node]
        want = target_s[pos] if pos < len(target_s) else None
        match = None
        for label, tgt, before in edges:
            first = label[0]
            if want is None:
                if first == DOLLAR:
                    match = (label, tgt, before)
                    break
                # Alphabet edges sort before '$'; all of them are skipped,
                # but with no terminator the string is a proper prefix.
                continue
            if first == want:
                match = (label, tgt, before)
                break
        if match is None:
            reason = "prefix-only" if want is None else "mismatch"
            raise McsNotFoundError(target_s, reason)
        label, tgt, before = match
        core = _core(label)
        if core != target_s[pos : pos + len(core)]:
            raise McsNotFoundError(target_s, "mismatch")
        if label[-1] == DOLLAR and pos + len(core) != len(target_s):
            raise McsNotFoundError(target_s, "mismatch")
        acc += before
        pos += len(core)
        node = tgt
