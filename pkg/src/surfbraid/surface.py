"""
2-dimensional braids encoded by braid monodromy.

A simple 2-dimensional braid of degree m with k branch points is stored as
an ordered tuple of band generators a_1, ..., a_k in B_m, with
a_1 a_2 ... a_k = 1 (the boundary is a trivial closed braid).  Each band
keeps its structure (conjugator w, index i, exponent e) so that Hurwitz
moves and conjugation never need to solve a conjugacy problem.
"""

from __future__ import annotations

import dataclasses
from collections import Counter
from typing import Iterable, Sequence

from . import braids
from .braids import BraidWord, FreeWord, NormalForm, Permutation
from .errors import (
    BraidError,
    BoundaryNotTrivial,
    DegreeMismatch,
    IndexOutOfRange,
    InternalParityViolation,
    NonSimpleEntry,
    PositionOutOfRange,
)
from .groups import GroupPresentation


@dataclasses.dataclass(frozen=True, order=True)
class BandEntry:
    """The band conjugator * sigma_index^exponent * conjugator^-1."""

    conjugator: BraidWord
    index: int
    exponent: int = 1

    @property
    def degree(self) -> int:
        return self.conjugator.degree

    def expanded(self) -> BraidWord:
        return braids.band_generator(self.conjugator, self.index, self.exponent)

    def element(self) -> NormalForm:
        return braids.normal_form(self.expanded())

    def permutation(self) -> Permutation:
        return braids.permutation_of(self.expanded())

    def transposed_pair(self) -> tuple[int, int]:
        (cycle,) = self.permutation().cycles()
        return tuple(sorted(cycle))

    def simplified(self) -> BandEntry:
        """Same band with a freely reduced conjugator and no trailing sigma_index^(+-1) letters."""
        letters = list(braids.free_reduce(self.conjugator).letters)
        while letters and abs(letters[-1]) == self.index:
            letters.pop()
        return BandEntry(BraidWord(self.degree, tuple(letters)), self.index, self.exponent)

    def shifted(self, a: int, degree: int) -> BandEntry:
        letters = tuple(x + a if x > 0 else x - a for x in self.conjugator.letters)
        return BandEntry(BraidWord(degree, letters), self.index + a, self.exponent)

    def __str__(self) -> str:
        return f"band ({self.conjugator}) {self.index} {self.exponent:+d}"


def band(degree: int, conjugator: Sequence[int], index: int, exponent: int = 1) -> BandEntry:
    return BandEntry(BraidWord(degree, tuple(conjugator)), index, exponent)


@dataclasses.dataclass(frozen=True)
class MonodromyTuple:
    degree: int
    entries: tuple[BandEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def branch_count(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def product(self) -> BraidWord:
        letters: list[int] = []
        for entry in self.entries:
            letters.extend(entry.expanded().letters)
        return braids.free_reduce(BraidWord(self.degree, tuple(letters)))

    def max_conjugator_length(self) -> int:
        return max((len(e.conjugator) for e in self.entries), default=0)

    @classmethod
    def empty(cls, degree: int) -> MonodromyTuple:
        return cls(degree, ())

    def __str__(self) -> str:
        return "\n".join([f"degree {self.degree}"] + [str(e) for e in self.entries])


def validate(T: MonodromyTuple) -> None:
    """Raise the first structural error found in ``T``; return None when T is a valid simple tuple."""
    if not isinstance(T.degree, int) or T.degree < 1:
        raise IndexOutOfRange(f"degree must be a positive integer, got {T.degree!r}")
    for pos, entry in enumerate(T.entries, 1):
        if entry.conjugator.degree != T.degree:
            raise DegreeMismatch(
                f"entry {pos}: conjugator has degree {entry.conjugator.degree}, tuple has degree {T.degree}",
                entry=pos,
            )
        if entry.exponent not in (1, -1):
            raise NonSimpleEntry(f"entry {pos}: exponent {entry.exponent} is not +1 or -1", entry=pos)
        if not 1 <= entry.index <= T.degree - 1:
            raise IndexOutOfRange(
                f"entry {pos}: band index {entry.index} outside 1..{T.degree - 1}", entry=pos
            )
    if not braids.is_identity(T.product()):
        raise BoundaryNotTrivial(
            f"product of the {len(T.entries)} entries is {braids.normal_form(T.product())}, not the identity"
        )


def is_valid(T: MonodromyTuple) -> bool:
    try:
        validate(T)
    except BraidError:
        return False
    return True


# --- operations ------------------------------------------------------------

def b_star() -> MonodromyTuple:
    return MonodromyTuple(2, (band(2, (), 1, 1), band(2, (), 1, -1)))


def braid_sum(T: MonodromyTuple, U: MonodromyTuple) -> MonodromyTuple:
    if T.degree != U.degree:
        raise DegreeMismatch(f"braid sum of degree {T.degree} and degree {U.degree}")
    return MonodromyTuple(T.degree, T.entries + U.entries)


def conjugate(T: MonodromyTuple, b: BraidWord) -> MonodromyTuple:
    """Replace every conjugator w by b*w, i.e. conjugate each monodromy by b."""
    if b.degree != T.degree:
        raise DegreeMismatch(f"conjugating a degree {T.degree} tuple by a braid of degree {b.degree}")
    return MonodromyTuple(
        T.degree,
        tuple(
            BandEntry(braids.multiply(b, e.conjugator), e.index, e.exponent).simplified()
            for e in T.entries
        ),
    )


def iota(T: MonodromyTuple, a: int, b: int) -> MonodromyTuple:
    """Add ``a`` trivial sheets below and ``b`` above, shifting every index by ``a``."""
    if a < 0 or b < 0:
        raise IndexOutOfRange(f"iota needs nonnegative shifts, got ({a}, {b})")
    degree = T.degree + a + b
    return MonodromyTuple(degree, tuple(e.shifted(a, degree) for e in T.entries))


def stabilize(T: MonodromyTuple) -> MonodromyTuple:
    m = T.degree
    return braid_sum(iota(T, 0, 1), iota(b_star(), m - 1, 0))


def destabilize(T: MonodromyTuple) -> MonodromyTuple | None:
    """Undo ``stabilize`` when the tuple syntactically has its shape; otherwise None."""
    top = T.degree - 1
    if top < 1 or len(T.entries) < 2:
        return None
    last = [e.expanded().letters for e in T.entries[-2:]]
    if sorted(last) != [(-top,), (top,)]:
        return None
    kept = []
    for e in T.entries[:-2]:
        s = e.simplified()
        if top in (abs(x) for x in e.expanded().letters):
            return None
        kept.append(BandEntry(BraidWord(top, s.conjugator.letters), s.index, s.exponent))
    return MonodromyTuple(top, tuple(kept))


def hurwitz(T: MonodromyTuple, i: int, direction: str = "forward") -> MonodromyTuple:
    """Hurwitz move on positions i, i+1 (1-based).

    forward:  (a, b) -> (a b a^-1, a)
    backward: (a, b) -> (b, b^-1 a b)
    """
    if not 1 <= i < len(T.entries):
        raise PositionOutOfRange(f"Hurwitz position {i} outside 1..{len(T.entries) - 1}")
    a, b = T.entries[i - 1], T.entries[i]
    if direction == "forward":
        moved = BandEntry(braids.multiply(a.expanded(), b.conjugator), b.index, b.exponent)
        pair = (moved.simplified(), a)
    elif direction == "backward":
        moved = BandEntry(
            braids.multiply(braids.inverse(b.expanded()), a.conjugator), a.index, a.exponent
        )
        pair = (b, moved.simplified())
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return MonodromyTuple(T.degree, T.entries[: i - 1] + pair + T.entries[i + 1:])


# --- invariants of the closure ---------------------------------------------

def euler_characteristic_closure(T: MonodromyTuple) -> int:
    # Riemann-Hurwitz for a degree m cover of the 2-sphere with k simple branch points
    return 2 * T.degree - len(T.entries)


def orbits(T: MonodromyTuple) -> list[tuple[int, ...]]:
    """Orbits of the entry permutations on {1..m}, sorted by least element."""
    parent = list(range(T.degree + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in T.entries:
        p, q = e.transposed_pair()
        parent[find(p)] = find(q)
    groups: dict[int, list[int]] = {}
    for j in range(1, T.degree + 1):
        groups.setdefault(find(j), []).append(j)
    return sorted(tuple(g) for g in groups.values())


def components(T: MonodromyTuple) -> int:
    return len(orbits(T))


def genus_list(T: MonodromyTuple) -> list[int]:
    """Genus of each closure component, ordered like ``orbits``."""
    where = {}
    for c, orbit in enumerate(orbits(T)):
        for j in orbit:
            where[j] = c
    branch = Counter(where[e.transposed_pair()[0]] for e in T.entries)
    out = []
    for c, orbit in enumerate(orbits(T)):
        k_c = branch[c]
        if k_c % 2:
            raise InternalParityViolation(f"component {orbit} has {k_c} branch points")
        chi = 2 * len(orbit) - k_c
        genus = (2 - chi) // 2
        if genus < 0:
            raise InternalParityViolation(f"component {orbit} has negative genus {genus}")
        out.append(genus)
    return out


def complement_group(T: MonodromyTuple) -> GroupPresentation:
    """Meridian presentation of the closure group.

    A band w sigma_i^e w^-1 contributes the relator t(x_i) t(x_{i+1})^-1,
    where t is the Artin action of w^-1 (the action is a right action, so w^-1
    carries the meridians x_i, x_{i+1} to the pair swapped by the band).
    """
    m = T.degree
    relators = []
    for e in T.entries:
        back = braids.inverse(e.conjugator)
        left = braids.artin_act(back, FreeWord.generator(m, e.index))
        right = braids.artin_act(back, FreeWord.generator(m, e.index + 1))
        relators.append(left * right.inverse())
    return GroupPresentation(m, tuple(relators))


def entry_elements(T: MonodromyTuple) -> tuple[NormalForm, ...]:
    return tuple(e.element() for e in T.entries)


def same_entries(T: MonodromyTuple, U: MonodromyTuple) -> bool:
    return T.degree == U.degree and entry_elements(T) == entry_elements(U)


def tuple_from_words(degree: int, entries: Iterable[tuple[Sequence[int], int, int]]) -> MonodromyTuple:
    return MonodromyTuple(degree, tuple(band(degree, w, i, e) for w, i, e in entries))
