import random

import pytest

from mcsdag.occurrence import INFINITY, OccurrenceIndex


def test_next_basic():
    idx = OccurrenceIndex(b"TCACAG")
    assert idx.next(b"C", 1) == 3
    assert idx.next(b"T", 0) == INFINITY


def test_first_occurrence_from_virtual_position():
    idx = OccurrenceIndex(b"GTACTA")
    assert idx.next(b"A", -1) == 2
    assert idx.next(b"A", 2) == 5


def test_empty_text():
    idx = OccurrenceIndex(b"")
    assert idx.length == 0
    assert idx.next(b"A", -1) == INFINITY


def test_infinity_is_absorbing():
    idx = OccurrenceIndex(b"GTACTA")
    assert idx.next(b"A", INFINITY) == INFINITY
    assert idx.next(b"Z", INFINITY) == INFINITY


def test_absent_character():
    idx = OccurrenceIndex(b"AAA")
    assert idx.next(b"B", 0) == INFINITY


def test_out_of_range_position_rejected():
    idx = OccurrenceIndex(b"ABC")
    with pytest.raises(ValueError):
        idx.next(b"A", 3)
    with pytest.raises(ValueError):
        idx.next(b"A", -2)


def test_alphabet_matches_distinct_characters():
    idx = OccurrenceIndex(b"MISSISSIPPI")
    assert idx.alphabet == set(b"MISP")
    assert sorted(idx.per_char_positions[ord("S")]) == [2, 3, 5, 6]


def test_agrees_with_linear_scan_on_random_strings():
    rng = random.Random(1234)
    for _ in range(50):
        n = rng.randint(0, 64)
        sigma = rng.randint(1, 8)
        text = bytes(rng.randrange(sigma) + 65 for _ in range(n))
        idx = OccurrenceIndex(text)
        for c in range(65, 65 + sigma):
            for i in range(-1, n):
                expected = INFINITY
                for p in range(i + 1, n):
                    if text[p] == c:
                        expected = p
                        break
                assert idx.next(c, i) == expected


def test_next_is_strictly_increasing_when_finite():
    rng = random.Random(99)
    for _ in range(20):
        text = bytes(rng.choice(b"ACGT") for _ in range(40))
        idx = OccurrenceIndex(text)
        for c in b"ACGT":
            i = -1
            while True:
                p = idx.next(c, i)
                if p == INFINITY:
                    break
                assert p > i
                i = p
