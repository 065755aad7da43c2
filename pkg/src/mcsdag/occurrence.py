"""Per-character occurrence indexes with O(1) next-occurrence queries.

Every other component builds on a single primitive: given a byte string,
answer "first occurrence of byte c strictly after position i" in constant
time. Absence is represented by a dedicated INFINITY sentinel that is
larger than every position and absorbing under ``next`` (never by the last
position, which would create false matches in the swing arithmetic).
"""

from __future__ import annotations

INFINITY = float("inf")

Position = int | float  # a 0-based position, -1 (virtual pre-string), or INFINITY


def as_bytes(s: str | bytes | bytearray) -> bytes:
    """Normalize input to raw bytes; str is encoded as UTF-8."""
    if isinstance(s, bytes):
        return s
    if isinstance(s, bytearray):
        return bytes(s)
    return s.encode("utf-8")


def byte_value(c: str | bytes | int) -> int:
    """Normalize a single character to its byte value."""
    if isinstance(c, int):
        if not 0 <= c <= 255:
            raise ValueError(f"byte value out of range: {c}")
        return c
    b = as_bytes(c)
    if len(b) != 1:
        raise ValueError(f"expected a single byte, got {c!r}")
    return b[0]


class OccurrenceIndex:
    """Dense successor table over one immutable byte string.

    For each distinct byte c the table stores, at slot k in [0, n], the
    smallest position p >= k with text[p] == c (INFINITY if none), so
    next(c, i) is a single list lookup at slot i + 1.
    """

    __slots__ = ("text", "length", "per_char_positions", "_table")

    def __init__(self, text: str | bytes):
        self.text = as_bytes(text)
        n = len(self.text)
        self.length = n
        positions: dict[int, list[int]] = {}
        for p, c in enumerate(self.text):
            positions.setdefault(c, []).append(p)
        self.per_char_positions = positions
        table: dict[int, list[Position]] = {}
        for c, occs in positions.items():
            row: list[Position] = [INFINITY] * (n + 1)
            nxt: Position = INFINITY
            for p in range(n - 1, -1, -1):
                if self.text[p] == c:
                    nxt = p
                row[p] = nxt
            table[c] = row
        self._table = table

    @property
    def alphabet(self) -> set[int]:
        """Distinct byte values occurring in the indexed string."""
        return set(self.per_char_positions)

    def next(self, c: str | bytes | int, frm: Position) -> Position:
        """Smallest position p > frm with text[p] == c, or INFINITY.

        ``frm`` must be -1 (virtual pre-string position), a valid position,
        or INFINITY (absorbing: next(c, INFINITY) = INFINITY).
        """
        if frm == INFINITY:
            return INFINITY
        if not isinstance(frm, int) or not -1 <= frm <= self.length - 1:
            raise ValueError(f"position {frm!r} out of range for length {self.length}")
        row = self._table.get(byte_value(c))
        if row is None:
            return INFINITY
        return row[frm + 1]
