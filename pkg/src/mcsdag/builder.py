"""MDAG construction: memoized expansion, pruning, unary-path compaction.

The builder expands quadruple node keys depth-first from the source. A
candidate character is kept only if it passes the rectangle and junction
filters; both are necessary conditions only (each rejection carries an
explicit insertion witness, so no true MCS prefix is ever dropped), and
spurious survivors are dead ends that cannot reach the sink, removed by
the prune pass. Terminal nodes (both swings INFINITY and zero accepted
extensions) get a '$' edge to the sink: with both swings infinite no
internal insertion ever becomes possible, and with zero candidate pairs
no end insertion exists either. The `check` CLI command and the test
suite enforce, against the brute-force oracle, that the resulting st-path
language is exactly the MCS set.
"""

from __future__ import annotations

from collections import deque

from .occurrence import INFINITY, OccurrenceIndex, as_bytes
from .swings import (
    SOURCE_QUADRUPLE,
    Quadruple,
    extend_quadruple,
    junction_test,
)

SOURCE = 0
SINK = 1

DOLLAR_LABEL = b"$"

Edge = tuple[bytes, int]  # (label, target node id)


class Mdag:
    """Node- and edge-labeled DAG whose st-paths spell MCS(x, y) + '$'.

    Node ids are ints; SOURCE and SINK are fixed. Every other node carries
    its Quadruple in ``quads``. ``adj`` maps node id to its out-edges,
    sorted by first label byte.
    """

    def __init__(self, x: bytes, y: bytes):
        self.x = x
        self.y = y
        self.quads: dict[int, Quadruple | None] = {
            SOURCE: SOURCE_QUADRUPLE,
            SINK: None,
        }
        self.adj: dict[int, list[Edge]] = {SOURCE: [], SINK: []}
        self.built = False
        self.pruned = False
        self.compacted = False

    @property
    def node_count(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(len(edges) for edges in self.adj.values())

    def out_edges(self, u: int) -> list[Edge]:
        return self.adj[u]

    def topological_order(self) -> list[int]:
        """Node ids in topological order; SOURCE first, SINK last."""
        indeg: dict[int, int] = {u: 0 for u in self.adj}
        for edges in self.adj.values():
            for _, v in edges:
                indeg[v] += 1
        ready = sorted(u for u, d in indeg.items() if d == 0)
        if ready != [SOURCE]:
            raise ValueError(f"expected unique zero-indegree source, got {ready}")
        queue = deque(ready)
        order = []
        while queue:
            u = queue.popleft()
            order.append(u)
            for _, v in self.adj[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
        if len(order) != len(self.adj):
            raise ValueError("graph contains a cycle")
        if order[-1] != SINK:
            # SINK has out-degree 0 and must close every path.
            order.remove(SINK)
            order.append(SINK)
        return order


def memo_lookup_or_insert(
    memo: dict[Quadruple, int], q: Quadruple, next_id: int
) -> tuple[int, bool]:
    """Associative lookup keyed by the full quadruple.

    Returns (node id, was_present). A hash map gives O(1) amortized per
    operation, within the required O(log n) bound.
    """
    node = memo.get(q)
    if node is not None:
        return node, True
    memo[q] = next_id
    return next_id, False


def build_mdag(x: str | bytes, y: str | bytes) -> Mdag:
    """Build and prune the MDAG for two byte strings (either may be empty)."""
    x = as_bytes(x)
    y = as_bytes(y)
    idx_x = OccurrenceIndex(x)
    idx_y = OccurrenceIndex(y)
    common = sorted(idx_x.alphabet & idx_y.alphabet)
    g = Mdag(x, y)
    memo: dict[Quadruple, int] = {SOURCE_QUADRUPLE: SOURCE}
    next_id = 2
    # Explicit stack: DAG depth can reach n, beyond Python's recursion limit.
    stack = [SOURCE]
    while stack:
        u = stack.pop()
        q = g.quads[u]
        accepted: list[tuple[int, Quadruple]] = []
        for c in common:
            i = idx_x.next(c, q.l)
            j = idx_y.next(c, q.m)
            if i == INFINITY or j == INFINITY:
                continue
            if not (i <= q.t and j <= q.b):  # rectangle_test, inlined
                continue
            if not junction_test(q, i, j, idx_x, idx_y, common):
                continue
            accepted.append((c, extend_quadruple(q, c, idx_x, idx_y)))
        edges = g.adj[u]
        if not accepted:
            if q.t == INFINITY and q.b == INFINITY:
                edges.append((DOLLAR_LABEL, SINK))
            # else: dead end with a finite swing, removed by prune_mdag.
            continue
        for c, child in accepted:
            v, was_present = memo_lookup_or_insert(memo, child, next_id)
            if not was_present:
                next_id += 1
                g.quads[v] = child
                g.adj[v] = []
                stack.append(v)
            edges.append((bytes([c]), v))
    g.built = True
    prune_mdag(g)
    return g


def prune_mdag(g: Mdag) -> Mdag:
    """Remove every node from which the sink is unreachable."""
    radj: dict[int, list[int]] = {u: [] for u in g.adj}
    for u, edges in g.adj.items():
        for _, v in edges:
            radj[v].append(u)
    keep = {SINK}
    stack = [SINK]
    while stack:
        v = stack.pop()
        for u in radj[v]:
            if u not in keep:
                keep.add(u)
                stack.append(u)
    if SOURCE not in keep:
        # The empty string is always a common subsequence, so MCS is never
        # empty and the source must reach the sink.
        raise AssertionError("source node became unreachable from the sink")
    for u in list(g.adj):
        if u not in keep:
            del g.adj[u]
            del g.quads[u]
        else:
            g.adj[u] = [(lab, v) for lab, v in g.adj[u] if v in keep]
    g.pruned = True
    return g


def compact_mdag(g: Mdag) -> Mdag:
    """Collapse maximal unary chains into single multi-character edges.

    Processes nodes in topological order; redirecting in-edges of a unary
    node to its successor keeps the st-path language unchanged. Idempotent.
    """
    if not g.pruned:
        raise ValueError("compact_mdag requires a pruned graph")
    radj: dict[int, set[int]] = {u: set() for u in g.adj}
    for u, edges in g.adj.items():
        for _, v in edges:
            radj[v].add(u)
    for v in g.topological_order():
        if v in (SOURCE, SINK) or len(g.adj[v]) != 1:
            continue
        ((lab_vw, w),) = g.adj[v]
        for u in radj[v]:
            g.adj[u] = [
                (lab + lab_vw, w) if tgt == v else (lab, tgt)
                for lab, tgt in g.adj[u]
            ]
            radj[w].add(u)
        radj[w].discard(v)
        del g.adj[v]
        del g.quads[v]
        del radj[v]
    g.compacted = True
    return g


def stats(g: Mdag) -> dict:
    """Structural measurements: sizes, per-(l,m) multiplicity, violations."""
    buckets: dict[tuple, list[Quadruple]] = {}
    for u, q in g.quads.items():
        if u in (SOURCE, SINK) or q is None:
            continue
        buckets.setdefault((q.l, q.m), []).append(q)
    violations = 0
    for quads in buckets.values():
        for a_idx in range(len(quads)):
            for b_idx in range(a_idx + 1, len(quads)):
                qa, qb = quads[a_idx], quads[b_idx]
                # Swing pairs for one (l, m) must form an antichain.
                if (qa.t > qb.t and qa.b > qb.b) or (qb.t > qa.t and qb.b > qa.b):
                    violations += 1
    depth: dict[int, int] = {}
    for u in reversed(g.topological_order()):
        edges = g.adj[u]
        depth[u] = 0 if not edges else 1 + max(depth[v] for _, v in edges)
    return {
        "nodes": g.node_count,
        "edges": g.edge_count,
        "max_out_degree": max(len(e) for e in g.adj.values()),
        "depth": depth[SOURCE],
        "per_lm_multiplicity": {k: len(v) for k, v in buckets.items()},
        "max_lm_multiplicity": max((len(v) for v in buckets.values()), default=0),
        "antichain_violations": violations,
    }
