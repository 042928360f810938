"""
Exact arithmetic in the classical braid group B_m.

Conventions used throughout the package:

* A braid word is a tuple of nonzero integers; the letter ``i`` stands for
  sigma_|i| raised to sign(i).  Words are read left to right and the first
  letter acts first, both on permutations and on the free group.
* Permutations compose in the same order: ``a.compose(b)`` is "a, then b".
* The Artin action is a right action: sigma_i sends x_i to x_i x_{i+1} x_i^-1
  and x_{i+1} to x_i, and a word acts letter by letter.

Word equality is decided by the Garside left normal form
Delta^p A_1 ... A_r, where each A_j is a permutation braid given by its
permutation.  The Artin action is faithful, so comparing the images of
x_1, ..., x_m gives an independent decision procedure (see ``artin_equal``).
"""

from __future__ import annotations

import dataclasses
import functools
from typing import Iterable, Sequence, Union

from .errors import DegreeMismatch, IndexOutOfRange, RankMismatch

Letters = tuple[int, ...]


def _reduce_letters(letters: Iterable[int]) -> Letters:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def _invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-a for a in reversed(letters))


@dataclasses.dataclass(frozen=True, order=True)
class BraidWord:
    """A word in the generators of B_m.  Letters must satisfy 1 <= |letter| <= m-1."""

    degree: int
    letters: Letters = ()

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise IndexOutOfRange(f"degree must be a positive integer, got {self.degree!r}")
        letters = tuple(self.letters)
        for a in letters:
            if not isinstance(a, int) or a == 0 or abs(a) >= self.degree:
                raise IndexOutOfRange(f"letter {a!r} is not a generator of B_{self.degree}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.letters)

    @classmethod
    def identity(cls, degree: int) -> BraidWord:
        return cls(degree, ())


@dataclasses.dataclass(frozen=True, order=True)
class FreeWord:
    """A freely reduced word in x_1, ..., x_rank (letter j means x_|j|^sign(j))."""

    rank: int
    letters: Letters = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        for a in letters:
            if not isinstance(a, int) or a == 0 or abs(a) > self.rank:
                raise IndexOutOfRange(f"letter {a!r} is not a generator of F_{self.rank}")
        object.__setattr__(self, "letters", _reduce_letters(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} != rank {other.rank}")
        return FreeWord(self.rank, self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, _invert_letters(self.letters))

    @classmethod
    def generator(cls, rank: int, j: int) -> FreeWord:
        return cls(rank, (j,))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in self.letters)


Word = Union[BraidWord, FreeWord]


def free_reduce(w: Word) -> Word:
    if isinstance(w, FreeWord):
        return w  # reduced on construction
    return BraidWord(w.degree, _reduce_letters(w.letters))


def multiply(u: BraidWord, v: BraidWord) -> BraidWord:
    if u.degree != v.degree:
        raise DegreeMismatch(f"cannot multiply braids of degree {u.degree} and {v.degree}")
    return BraidWord(u.degree, _reduce_letters(u.letters + v.letters))


def inverse(u: BraidWord) -> BraidWord:
    return BraidWord(u.degree, _invert_letters(u.letters))


def band_generator(w: BraidWord, i: int, e: int) -> BraidWord:
    """Expand the band w sigma_i^e w^-1 into a freely reduced word."""
    if not 1 <= i <= w.degree - 1:
        raise IndexOutOfRange(f"band index {i} outside 1..{w.degree - 1}")
    return BraidWord(w.degree, _reduce_letters(w.letters + (i * e,) + _invert_letters(w.letters)))


# --- permutations ---------------------------------------------------------

@dataclasses.dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..m}; ``images[j-1]`` is the image of j."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> Permutation:
        images = list(range(1, m + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def compose(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.images[a - 1] for a in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for j, a in enumerate(self.images, 1):
            inv[a - 1] = j
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(a == j for j, a in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def permutation_of(u: BraidWord) -> Permutation:
    images = list(range(1, u.degree + 1))
    # images[j] tracks where strand j+1 currently sits
    for a in u.letters:
        i = abs(a)
        for j, pos in enumerate(images):
            if pos == i:
                images[j] = i + 1
            elif pos == i + 1:
                images[j] = i
    return Permutation(tuple(images))


# --- Artin action ---------------------------------------------------------

def _generator_action(a: int, j: int) -> Letters:
    """Image of x_j under the automorphism of the single letter ``a``."""
    i = abs(a)
    if a > 0:
        if j == i:
            return (i, i + 1, -i)
        if j == i + 1:
            return (i,)
    else:
        if j == i:
            return (i + 1,)
        if j == i + 1:
            return (-(i + 1), i, i + 1)
    return (j,)


def _substitute(images: Sequence[Letters], word: Iterable[int]) -> Letters:
    stack: list[int] = []
    for b in word:
        piece = images[b - 1] if b > 0 else _invert_letters(images[-b - 1])
        for c in piece:
            if stack and stack[-1] == -c:
                stack.pop()
            else:
                stack.append(c)
    return tuple(stack)


def artin_images(u: BraidWord) -> tuple[Letters, ...]:
    """Letters of the images of x_1..x_m under the action of ``u``."""
    m = u.degree
    images: list[Letters] = [(j,) for j in range(1, m + 1)]
    # The composite acts as phi_last o ... o phi_first.  Walking the word from
    # the end, each step substitutes the current table into a short word.
    for a in reversed(u.letters):
        i = abs(a)
        new_i = _substitute(images, _generator_action(a, i))
        new_next = _substitute(images, _generator_action(a, i + 1))
        images[i - 1] = new_i
        images[i] = new_next
    return tuple(images)


def artin_act(u: BraidWord, x: FreeWord) -> FreeWord:
    if x.rank != u.degree:
        raise RankMismatch(f"free word of rank {x.rank} under a braid of degree {u.degree}")
    return FreeWord(x.rank, _substitute(artin_images(u), x.letters))


def artin_equal(u: BraidWord, v: BraidWord) -> bool:
    """Word problem through the faithful Artin representation."""
    if u.degree != v.degree:
        raise DegreeMismatch(f"degree {u.degree} != degree {v.degree}")
    return artin_images(u) == artin_images(v)


# --- Garside normal form --------------------------------------------------
# Internally a permutation braid is a 0-based tuple p where p[j] is the final
# position of the strand starting at j.

Perm0 = tuple[int, ...]


def _compose0(a: Perm0, b: Perm0) -> Perm0:
    return tuple(b[x] for x in a)


@functools.lru_cache(maxsize=None)
def _swap0(m: int, i: int) -> Perm0:
    p = list(range(m))
    p[i - 1], p[i] = i, i - 1
    return tuple(p)


@functools.lru_cache(maxsize=None)
def _delta0(m: int) -> Perm0:
    return tuple(range(m - 1, -1, -1))


@functools.lru_cache(maxsize=None)
def _tau0(p: Perm0) -> Perm0:
    m = len(p)
    return tuple(m - 1 - p[m - 1 - j] for j in range(m))


@functools.lru_cache(maxsize=None)
def _starting_set(p: Perm0) -> frozenset[int]:
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


@functools.lru_cache(maxsize=None)
def _finishing_set(p: Perm0) -> frozenset[int]:
    inv = [0] * len(p)
    for j, x in enumerate(p):
        inv[x] = j
    return frozenset(i for i in range(1, len(p)) if inv[i - 1] > inv[i])


@functools.lru_cache(maxsize=None)
def _left_weight(a: Perm0, b: Perm0) -> tuple[Perm0, Perm0]:
    m = len(a)
    while True:
        movable = _starting_set(b) - _finishing_set(a)
        if not movable:
            return a, b
        i = min(movable)
        s = _swap0(m, i)
        a = _compose0(a, s)
        b = _compose0(s, b)


def _normalise(factors: list[Perm0]) -> None:
    # insert-and-sweep, then confirm every adjacent pair is left-weighted
    for t in range(1, len(factors)):
        for j in range(t, 0, -1):
            pair = _left_weight(factors[j - 1], factors[j])
            if pair == (factors[j - 1], factors[j]):
                break
            factors[j - 1], factors[j] = pair
    changed = True
    while changed:
        changed = False
        for j in range(1, len(factors)):
            pair = _left_weight(factors[j - 1], factors[j])
            if pair != (factors[j - 1], factors[j]):
                factors[j - 1], factors[j] = pair
                changed = True


@functools.lru_cache(maxsize=None)
def _perm_braid_letters(p: Perm0) -> Letters:
    m = len(p)
    out = []
    while True:
        starts = _starting_set(p)
        if not starts:
            return tuple(out)
        i = min(starts)
        out.append(i)
        p = _compose0(_swap0(m, i), p)


@dataclasses.dataclass(frozen=True, order=True)
class NormalForm:
    """Left normal form Delta^infimum * factors[0] * ... of a braid in B_degree."""

    degree: int
    infimum: int
    factors: tuple[Permutation, ...] = ()

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def to_word(self) -> BraidWord:
        m = self.degree
        delta = _perm_braid_letters(_delta0(m))
        if self.infimum >= 0:
            letters = list(delta * self.infimum)
        else:
            letters = list(_invert_letters(delta) * -self.infimum)
        for f in self.factors:
            letters.extend(_perm_braid_letters(tuple(a - 1 for a in f.images)))
        return BraidWord(m, tuple(letters))

    def __str__(self) -> str:
        body = " ".join(str(f) for f in self.factors)
        return f"D^{self.infimum}" + (f" {body}" if body else "")


@functools.lru_cache(maxsize=65536)
def _normal_form_letters(m: int, letters: Letters) -> tuple[int, tuple[Perm0, ...]]:
    if m == 1:
        return 0, ()
    delta = _delta0(m)
    identity = tuple(range(m))
    factors: list[Perm0] = []
    flips = 0  # number of negative letters to the right of the current one
    for a in reversed(letters):
        i = abs(a)
        f = _swap0(m, i) if a > 0 else _compose0(delta, _swap0(m, i))
        if flips % 2:
            f = _tau0(f)
        factors.append(f)
        if a < 0:
            flips += 1
    factors.reverse()
    _normalise(factors)
    infimum = -flips
    start = 0
    while start < len(factors) and factors[start] == delta:
        start += 1
    end = len(factors)
    while end > start and factors[end - 1] == identity:
        end -= 1
    return infimum + start, tuple(factors[start:end])


def normal_form(u: BraidWord) -> NormalForm:
    infimum, factors = _normal_form_letters(u.degree, _reduce_letters(u.letters))
    return NormalForm(
        u.degree, infimum, tuple(Permutation(tuple(a + 1 for a in f)) for f in factors)
    )


def is_left_weighted(nf: NormalForm) -> bool:
    m = nf.degree
    delta = _delta0(m)
    raw = [tuple(a - 1 for a in f.images) for f in nf.factors]
    if any(f == delta or f == tuple(range(m)) for f in raw):
        return False
    return all(_starting_set(b) <= _finishing_set(a) for a, b in zip(raw, raw[1:]))


def equal(u: BraidWord, v: BraidWord) -> bool:
    if u.degree != v.degree:
        raise DegreeMismatch(f"degree {u.degree} != degree {v.degree}")
    return normal_form(u) == normal_form(v)


def is_identity(u: BraidWord) -> bool:
    return normal_form(u) == NormalForm(u.degree, 0, ())
