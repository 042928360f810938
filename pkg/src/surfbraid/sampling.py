"""Pseudo-random valid tuples for experiments and property suites."""

from __future__ import annotations

import random

from .braids import BraidWord
from .surface import BandEntry, MonodromyTuple, hurwitz


def random_reduced_word(rng: random.Random, m: int, max_length: int) -> BraidWord:
    if m < 2:
        return BraidWord(m, ())
    letters: list[int] = []
    for _ in range(rng.randint(0, max_length)):
        a = rng.choice([1, -1]) * rng.randint(1, m - 1)
        if letters and letters[-1] == -a:
            continue
        letters.append(a)
    return BraidWord(m, tuple(letters))


def random_band(rng: random.Random, m: int, max_conjugator_length: int) -> BandEntry:
    return BandEntry(
        random_reduced_word(rng, m, max_conjugator_length),
        rng.randint(1, m - 1),
        rng.choice([1, -1]),
    ).simplified()


def _dyck(rng: random.Random, pairs: int) -> list[bool]:
    # uniform enough for test inputs: random walk rejected until balanced
    while True:
        steps = [True] * pairs + [False] * pairs
        rng.shuffle(steps)
        height = 0
        for s in steps:
            height += 1 if s else -1
            if height < 0:
                break
        else:
            return steps


def random_tuple(
    rng: random.Random,
    max_degree: int = 4,
    max_branch_points: int = 8,
    max_conjugator_length: int = 3,
    scramble: int = 4,
) -> MonodromyTuple:
    """A valid tuple built from nested cancelling band pairs, then scrambled by Hurwitz moves.

    Scrambling moves that push a conjugator past ``max_conjugator_length``
    are skipped.
    """
    m = rng.randint(1, max_degree)
    if m == 1:
        return MonodromyTuple.empty(1)
    pairs = rng.randint(0, max_branch_points // 2)
    entries: list[BandEntry] = []
    stack: list[BandEntry] = []
    for opening in _dyck(rng, pairs):
        if opening:
            b = random_band(rng, m, max_conjugator_length)
            stack.append(b)
            entries.append(b)
        else:
            b = stack.pop()
            entries.append(BandEntry(b.conjugator, b.index, -b.exponent))
    T = MonodromyTuple(m, tuple(entries))
    for _ in range(scramble if len(entries) > 1 else 0):
        moved = hurwitz(T, rng.randint(1, len(entries) - 1), rng.choice(["forward", "backward"]))
        if moved.max_conjugator_length() <= max_conjugator_length:
            T = moved
    return T
