"""Finitely presented groups: abelianization rank and homomorphism counts into S_n."""

from __future__ import annotations

import dataclasses
import functools
import itertools
from fractions import Fraction
from typing import Sequence

from .braids import FreeWord
from .errors import BudgetExceeded, IndexOutOfRange

# Default cap on partial assignments visited by count_homs.  Every relator is
# checked as soon as its generators are assigned, so the cap is reached only
# for presentations with several weakly constrained generators and n >= 4.
DEFAULT_HOM_BUDGET = 2_000_000


@dataclasses.dataclass(frozen=True)
class GroupPresentation:
    rank: int
    relators: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        relators = tuple(self.relators)
        for r in relators:
            if r.rank != self.rank:
                raise IndexOutOfRange(f"relator {r} lives in F_{r.rank}, expected F_{self.rank}")
        object.__setattr__(self, "relators", relators)

    def __str__(self) -> str:
        gens = ", ".join(f"x{j}" for j in range(1, self.rank + 1))
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def exponent_sum_matrix(P: GroupPresentation) -> list[list[int]]:
    rows = []
    for r in P.relators:
        row = [0] * P.rank
        for a in r.letters:
            row[abs(a) - 1] += 1 if a > 0 else -1
        rows.append(row)
    return rows


def _matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / mat[rank][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def abelianization_rank(P: GroupPresentation) -> int:
    """Free rank of the abelianization: generators minus the rank of the exponent-sum matrix."""
    return P.rank - _matrix_rank(exponent_sum_matrix(P))


# --- symmetric groups -----------------------------------------------------

@dataclasses.dataclass(frozen=True)
class _SymmetricGroup:
    n: int
    elements: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]     # mul[a][b]: a, then b
    inv: tuple[int, ...]
    identity: int
    classes: tuple[tuple[int, int], ...]  # (representative, class size)


@functools.lru_cache(maxsize=None)
def symmetric_group(n: int) -> _SymmetricGroup:
    elements = tuple(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(elements)}
    mul = tuple(tuple(index[tuple(b[x] for x in a)] for b in elements) for a in elements)
    inv = []
    for p in elements:
        q = [0] * n
        for j, x in enumerate(p):
            q[x] = j
        inv.append(index[tuple(q)])
    by_type: dict[tuple[int, ...], list[int]] = {}
    for k, p in enumerate(elements):
        by_type.setdefault(_cycle_type(p), []).append(k)
    classes = tuple((members[0], len(members)) for _, members in sorted(by_type.items()))
    return _SymmetricGroup(n, elements, mul, tuple(inv), index[tuple(range(n))], classes)


def _cycle_type(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def _cyclic_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
    return letters


def _evaluate(G: _SymmetricGroup, word: Sequence[int], images: Sequence[int | None]) -> int:
    acc = G.identity
    mul, inv = G.mul, G.inv
    for a in word:
        g = images[a - 1] if a > 0 else inv[images[-a - 1]]
        acc = mul[acc][g]
    return acc


class _HomCounter:
    def __init__(self, P: GroupPresentation, n: int, budget: int):
        self.G = symmetric_group(n)
        self.rank = P.rank
        self.relators = [r for r in (_cyclic_reduce(r.letters) for r in P.relators) if r]
        self.generators = [frozenset(abs(a) - 1 for a in r) for r in self.relators]
        self.budget = budget
        self.visited = 0

    def _solve(self, r: tuple[int, ...], images: list[int | None]) -> int:
        # r = prefix * x^s * suffix = 1  =>  x^s = prefix^-1 * suffix^-1
        G = self.G
        pos = next(p for p, a in enumerate(r) if images[abs(a) - 1] is None)
        prefix = _evaluate(G, r[:pos], images)
        suffix = _evaluate(G, r[pos + 1:], images)
        value = G.mul[G.inv[prefix]][G.inv[suffix]]
        return value if r[pos] > 0 else G.inv[value]

    def _propagate(self, images: list[int | None]) -> bool:
        G = self.G
        progress = True
        while progress:
            progress = False
            for r, gens in zip(self.relators, self.generators):
                open_ = [j for j in gens if images[j] is None]
                if not open_:
                    if _evaluate(G, r, images) != G.identity:
                        return False
                elif len(open_) == 1:
                    j = open_[0]
                    if sum(1 for a in r if abs(a) - 1 == j) == 1:
                        images[j] = self._solve(r, images)
                        progress = True
        return True

    def _branch_variable(self, images: list[int | None]) -> int:
        best = None
        for gens in self.generators:
            open_ = sorted(j for j in gens if images[j] is None)
            if open_ and (best is None or len(open_) < best[0]):
                best = (len(open_), open_[0])
        assert best is not None
        return best[1]

    def count_from(self, images: list[int | None]) -> int:
        self.visited += 1
        if self.visited > self.budget:
            raise BudgetExceeded(f"homomorphism count exceeded {self.budget} partial assignments")
        images = list(images)
        if not self._propagate(images):
            return 0
        if all(images[j] is not None for gens in self.generators for j in gens):
            return 1
        j = self._branch_variable(images)
        total = 0
        for g in range(len(self.G.elements)):
            images[j] = g
            total += self.count_from(images)
        return total

    def count(self) -> int:
        used = set().union(*self.generators) if self.generators else set()
        order = len(self.G.elements)
        free_factor = order ** (self.rank - len(used))
        if not used:
            return free_factor
        # Conjugating a homomorphism gives a homomorphism, so fix the first
        # constrained generator to a class representative and weight by class size.
        first = min(used)
        total = 0
        for rep, size in self.G.classes:
            images: list[int | None] = [None] * self.rank
            images[first] = rep
            total += size * self.count_from(images)
        return total * free_factor


def count_homs(P: GroupPresentation, n: int, budget: int = DEFAULT_HOM_BUDGET) -> int:
    """Number of homomorphisms from the presented group to the symmetric group S_n.

    Exact; a backtracking search over generator images that checks each
    relator as soon as its generators are fixed.  ``budget`` caps the number
    of partial assignments visited and raises BudgetExceeded beyond it.
    """
    if not 1 <= n <= 6:
        raise IndexOutOfRange(f"count_homs supports S_1..S_6, got n={n}")
    return _HomCounter(P, n, budget).count()


def count_homs_brute_force(P: GroupPresentation, n: int) -> int:
    """Reference count by exhaustive enumeration of all |S_n|^rank assignments."""
    G = symmetric_group(n)
    total = 0
    for images in itertools.product(range(len(G.elements)), repeat=P.rank):
        if all(_evaluate(G, r.letters, images) == G.identity for r in P.relators):
            total += 1
    return total
