"""Quadruple node keys and the swing algebra.

A prefix of a maximal common subsequence is summarized by four numbers:
the ends (l, m) of the shortest prefixes of X and Y that contain it, and
the swings (t, b) -- the minimal horizon extensions of X (resp. Y) past
which the prefix stops being maximal within the truncated strings.
Prefixes sharing the quadruple share all future behavior, which is what
makes the DAG polynomial.

All arithmetic is over the INFINITY sentinel algebra from
:mod:`mcsdag.occurrence`: min(x, INFINITY) = x and next(c, INFINITY) =
INFINITY.
"""

from __future__ import annotations

from typing import NamedTuple

from .occurrence import INFINITY, OccurrenceIndex, Position, byte_value


class Quadruple(NamedTuple):
    """Identity of an MDAG node: embedding ends plus top/bottom swings."""

    l: Position  # end of shortest prefix of X containing the prefix string, or -1
    m: Position  # same for Y
    t: Position  # top swing: position in X, or INFINITY
    b: Position  # bottom swing: position in Y, or INFINITY


#: Quadruple of the empty prefix.
SOURCE_QUADRUPLE = Quadruple(-1, -1, INFINITY, INFINITY)


class CandidateExtension(NamedTuple):
    """A character appended to a prefix, with its landing positions."""

    c: int
    i: int  # next occurrence of c in X after the parent's l
    j: int  # next occurrence of c in Y after the parent's m
    child: Quadruple


def _swing_one_side(
    idx: OccurrenceIndex, c: int, end: int, other_text: bytes, lo: int, hi: int
) -> Position:
    """First occurrence of c after the earliest insertion point.

    Considers every character d occurring in other_text(lo, hi) (exclusive
    bounds), takes the minimum of their first occurrences after ``end`` in
    the indexed string, and returns the first occurrence of c after that
    minimum. Empty range gives INFINITY.
    """
    best: Position = INFINITY
    for d in set(other_text[lo + 1 : hi]):
        p = idx.next(d, end)
        if p < best:
            best = p
    return idx.next(c, best)


def personal_swing(
    prev_l: int,
    prev_m: int,
    l: int,
    m: int,
    idx_x: OccurrenceIndex,
    idx_y: OccurrenceIndex,
) -> tuple[Position, Position]:
    """Swing contribution of the newest character of a prefix.

    The character at (l, m) is viewed as a single-character prefix over the
    string suffixes past the previous embedding ends (prev_l, prev_m).
    """
    if not (prev_l < l and prev_m < m):
        raise ValueError(f"non-advancing step ({prev_l},{prev_m}) -> ({l},{m})")
    c_x = idx_x.text[l]
    c_y = idx_y.text[m]
    if c_x != c_y:
        raise ValueError(f"positions ({l},{m}) carry different characters")
    t_pers = _swing_one_side(idx_x, c_x, l, idx_y.text, prev_m, m)
    b_pers = _swing_one_side(idx_y, c_y, m, idx_x.text, prev_l, l)
    return t_pers, b_pers


def base_swing(
    c: str | bytes | int,
    l: int,
    m: int,
    idx_x: OccurrenceIndex,
    idx_y: OccurrenceIndex,
) -> tuple[Position, Position]:
    """Swing of a single-character prefix c with first occurrences at (l, m)."""
    cv = byte_value(c)
    if idx_x.next(cv, -1) != l or idx_y.next(cv, -1) != m:
        raise ValueError(
            f"({l},{m}) are not the first occurrences of {chr(cv)!r} in both strings"
        )
    return personal_swing(-1, -1, l, m, idx_x, idx_y)


def extend_quadruple(
    parent: Quadruple,
    c: str | bytes | int,
    idx_x: OccurrenceIndex,
    idx_y: OccurrenceIndex,
) -> Quadruple:
    """Quadruple of the prefix obtained by appending c to the parent prefix.

    The child swing on each side is the minimum of the personal swing of the
    new character and the first occurrence of c after the parent swing (the
    horizon at which an insertion becomes possible in the older part of the
    prefix). For the source parent both swings are INFINITY, so the child
    swings reduce to the base-case values.
    """
    cv = byte_value(c)
    i = idx_x.next(cv, parent.l)
    j = idx_y.next(cv, parent.m)
    if i == INFINITY or j == INFINITY:
        raise ValueError(f"{chr(cv)!r} does not occur after ({parent.l},{parent.m})")
    t_pers, b_pers = personal_swing(parent.l, parent.m, i, j, idx_x, idx_y)
    t = min(t_pers, idx_x.next(cv, parent.t))
    b = min(b_pers, idx_y.next(cv, parent.b))
    return Quadruple(i, j, t, b)


def rectangle_test(parent: Quadruple, i: int, j: int) -> bool:
    """True iff the candidate positions sit inside the parent's swing box.

    Equivalent to: the parent prefix is still maximal within X_{<i}, Y_{<j}.
    INFINITY swings accept everything.
    """
    return i <= parent.t and j <= parent.b


def junction_test(
    parent: Quadruple,
    i: int,
    j: int,
    idx_x: OccurrenceIndex,
    idx_y: OccurrenceIndex,
    alphabet: list[int] | set[int] | None = None,
) -> bool:
    """Reject candidates that leave a simultaneous insertion gap.

    True iff no character d can be inserted strictly between the prefix end
    (parent.l, parent.m) and the appended character at (i, j) in both
    strings at once. Each rejection carries an explicit witness d, so this
    filter never drops a true MCS prefix.
    """
    if alphabet is None:
        alphabet = idx_x.alphabet & idx_y.alphabet
    for d in alphabet:
        if idx_x.next(d, parent.l) < i and idx_y.next(d, parent.m) < j:
            return False
    return True
