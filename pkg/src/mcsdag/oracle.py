"""Ground-truth engines at desk scale.

Everything here is exponential or quadratic and deliberately simple: an
exhaustive MCS computation, subsequence/maximality checks, the reference
prefix trie, and a literal evaluator of the swing definitions. The main
builder is certified against these on small instances; nothing in this
module is used on the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .occurrence import INFINITY, Position, as_bytes

#: Hard cap on |X| for brute-force subsequence enumeration (2^|X| subsets).
BRUTE_FORCE_CAP = 15

DOLLAR = 0x24  # ord("$"), terminator key in the reference trie


def is_subsequence(s: str | bytes, text: str | bytes) -> bool:
    """True iff s embeds left-to-right in text (greedy leftmost scan)."""
    s = as_bytes(s)
    text = as_bytes(text)
    pos = 0
    for c in s:
        idx = text.find(c, pos)
        if idx < 0:
            return False
        pos = idx + 1
    return True


class _Tables:
    """Next/previous occurrence tables for one string, oracle-internal."""

    __slots__ = ("text", "n", "nxt", "prv", "alphabet")

    def __init__(self, text: bytes):
        self.text = text
        n = len(text)
        self.n = n
        self.alphabet = set(text)
        # nxt[c][k]: first position >= k holding c, else n (one past the end).
        # prv[c][k]: last position < k holding c, else -1.
        nxt: dict[int, list[int]] = {}
        prv: dict[int, list[int]] = {}
        for c in self.alphabet:
            fwd = [n] * (n + 1)
            last = n
            for p in range(n - 1, -1, -1):
                if text[p] == c:
                    last = p
                fwd[p] = last
            nxt[c] = fwd
            bwd = [-1] * (n + 2)
            seen = -1
            for p in range(n):
                if text[p] == c:
                    seen = p
                bwd[p + 1] = seen
            bwd[n + 1] = seen
            prv[c] = bwd
        self.nxt = nxt
        self.prv = prv

    def leftmost(self, s: bytes) -> list[int] | None:
        """Embedding ends: pre[k] = leftmost end of s[:k], pre[0] = -1."""
        pre = [-1]
        pos = -1
        for c in s:
            row = self.nxt.get(c)
            if row is None:
                return None
            pos = row[pos + 1]
            if pos >= self.n:
                return None
            pre.append(pos)
        return pre

    def rightmost(self, s: bytes, horizon: int) -> list[int] | None:
        """suf[k] = start of the rightmost embedding of s[k:] in text[:horizon+1]."""
        k = len(s)
        suf = [horizon + 1] * (k + 1)
        pos = horizon + 1
        for idx in range(k - 1, -1, -1):
            row = self.prv.get(s[idx])
            if row is None:
                return None
            pos = row[pos]
            if pos < 0:
                return None
            suf[idx] = pos
        return suf


@lru_cache(maxsize=64)
def _tables(text: bytes) -> _Tables:
    return _Tables(text)


def _maximal_in_horizon(
    s: bytes, tx: _Tables, ty: _Tables, hx: int, hy: int
) -> bool:
    """One-insertion maximality of s within text_x[:hx+1], text_y[:hy+1].

    s must be a common subsequence of the two horizons. Maximal iff no
    single character can be inserted at any gap so that the result still
    embeds in both horizons; any strict common supersequence contains a
    one-insertion supersequence, so this closure is sufficient.
    """
    pre_x = tx.leftmost(s)
    pre_y = ty.leftmost(s)
    if pre_x is None or pre_y is None or pre_x[-1] > hx or pre_y[-1] > hy:
        raise ValueError("not a common subsequence of the given horizons")
    suf_x = tx.rightmost(s, hx)
    suf_y = ty.rightmost(s, hy)
    common = tx.alphabet & ty.alphabet
    nxt_x = tx.nxt
    nxt_y = ty.nxt
    for k in range(len(s) + 1):
        ax = pre_x[k] + 1
        ay = pre_y[k] + 1
        bx = suf_x[k]
        by = suf_y[k]
        for c in common:
            if nxt_x[c][ax] < bx and nxt_y[c][ay] < by:
                return False
    return True


def is_maximal(s: str | bytes, x: str | bytes, y: str | bytes) -> bool:
    """True iff s is an inclusion-maximal common subsequence of x and y.

    Returns False (rather than raising) when s is not a common subsequence.
    """
    s = as_bytes(s)
    x = as_bytes(x)
    y = as_bytes(y)
    if not (is_subsequence(s, x) and is_subsequence(s, y)):
        return False
    return _maximal_in_horizon(s, _tables(x), _tables(y), len(x) - 1, len(y) - 1)


def _distinct_subsequences(x: bytes) -> set[bytes]:
    subs: set[bytes] = {b""}
    for c in x:
        step = bytes([c])
        subs |= {s + step for s in subs}
    return subs


def _build_trie(strings: list[bytes]) -> dict:
    """Prefix trie with terminator edges to a shared sink (key DOLLAR)."""
    root: dict = {}
    for s in strings:
        node = root
        for c in s:
            node = node.setdefault(c, {})
        node[DOLLAR] = None  # edge into the shared sink
    return root


@dataclass
class OracleSet:
    """All MCS strings of a pair, plus their reference prefix trie."""

    strings: list[bytes]
    trie: dict = field(repr=False)

    def st_path_count(self) -> int:
        """Number of root-to-sink paths in the trie (terminator edges)."""

        def walk(node: dict) -> int:
            total = 0
            for key, child in node.items():
                total += 1 if key == DOLLAR else walk(child)
            return total

        return walk(self.trie)

    def is_antichain(self) -> bool:
        """No element is a subsequence of another."""
        for a in self.strings:
            for b in self.strings:
                if a is not b and is_subsequence(a, b):
                    return False
        return True

    def valid_prefixes(self) -> set[bytes]:
        """All prefixes of members (the node set of the reference DAG)."""
        out = set()
        for s in self.strings:
            for k in range(len(s) + 1):
                out.add(s[:k])
        return out


def brute_force_mcs(x: str | bytes, y: str | bytes) -> OracleSet:
    """Exhaustively compute MCS(x, y); |x| is capped at BRUTE_FORCE_CAP."""
    x = as_bytes(x)
    y = as_bytes(y)
    if len(x) > BRUTE_FORCE_CAP:
        raise ValueError(f"oracle refuses |x| = {len(x)} > {BRUTE_FORCE_CAP}")
    common = sorted(
        s
        for s in _distinct_subsequences(x)
        if is_subsequence(s, y)
    )
    tx = _tables(x)
    ty = _tables(y)
    hx = len(x) - 1
    hy = len(y) - 1
    mcs = [s for s in common if _maximal_in_horizon(s, tx, ty, hx, hy)]
    return OracleSet(strings=mcs, trie=_build_trie(mcs))


def definitional_swings(
    p: str | bytes, x: str | bytes, y: str | bytes
) -> tuple[int, int, Position, Position]:
    """Evaluate (l, m, t, b) for prefix p literally from the definitions.

    l, m come from the greedy leftmost embedding; t is the smallest i > l
    such that p is no longer maximal within (x[:i+1], y[:m+1]), INFINITY if
    it stays maximal for every horizon; b is symmetric.
    """
    p = as_bytes(p)
    x = as_bytes(x)
    y = as_bytes(y)
    if len(x) > BRUTE_FORCE_CAP + 5 or len(y) > BRUTE_FORCE_CAP + 5:
        raise ValueError("definitional swing evaluation is desk-scale only")
    tx = _tables(x)
    ty = _tables(y)
    pre_x = tx.leftmost(p)
    pre_y = ty.leftmost(p)
    if pre_x is None or pre_y is None:
        raise ValueError("p is not a common subsequence of x and y")
    l = pre_x[-1]
    m = pre_y[-1]
    t: Position = INFINITY
    for i in range(l + 1, len(x)):
        if not _maximal_in_horizon(p, tx, ty, i, m):
            t = i
            break
    b: Position = INFINITY
    for j in range(m + 1, len(y)):
        if not _maximal_in_horizon(p, tx, ty, l, j):
            b = j
            break
    return l, m, t, b
