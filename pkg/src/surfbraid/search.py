"""
Bounded equivalence search for 2-dimensional braids.

States are monodromy tuples identified by their canonical key (the degree and
the normal form of every entry).  Edges are the moves Hurwitz forward and
backward, conjugation by one generator sigma_j^(+-1), stabilization and
destabilization; all of them stay inside simple tuples.  ``search_equivalence``
first compares closure invariants and otherwise runs a bidirectional
breadth-first search.  Every trace it returns has been replayed.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
import re
from typing import Callable, Iterable, Iterator, Sequence, Union

from . import braids, surface
from .braids import BraidWord, NormalForm
from .errors import BraidError, BudgetExceeded, DocumentError, InapplicableMove
from .groups import abelianization_rank, count_homs
from .surface import BandEntry, MonodromyTuple


@dataclasses.dataclass(frozen=True, order=True)
class CanonicalKey:
    degree: int
    entries: tuple[NormalForm, ...]


def canonical_key(T: MonodromyTuple) -> CanonicalKey:
    return CanonicalKey(T.degree, surface.entry_elements(T))


class MoveKind(enum.IntEnum):
    HURWITZ_FORWARD = 0
    HURWITZ_BACKWARD = 1
    CONJUGATE = 2
    STABILIZE = 3
    DESTABILIZE = 4


ALL_MOVES = frozenset(MoveKind)
HURWITZ_ONLY = frozenset({MoveKind.HURWITZ_FORWARD, MoveKind.HURWITZ_BACKWARD})


@dataclasses.dataclass(frozen=True, order=True)
class Move:
    kind: MoveKind
    param: int = 0  # Hurwitz position, or signed generator for a conjugation

    def inverse(self) -> Move:
        if self.kind is MoveKind.HURWITZ_FORWARD:
            return Move(MoveKind.HURWITZ_BACKWARD, self.param)
        if self.kind is MoveKind.HURWITZ_BACKWARD:
            return Move(MoveKind.HURWITZ_FORWARD, self.param)
        if self.kind is MoveKind.CONJUGATE:
            return Move(MoveKind.CONJUGATE, -self.param)
        if self.kind is MoveKind.STABILIZE:
            return Move(MoveKind.DESTABILIZE)
        return Move(MoveKind.STABILIZE)

    def __str__(self) -> str:
        if self.kind is MoveKind.HURWITZ_FORWARD:
            return f"H{self.param}"
        if self.kind is MoveKind.HURWITZ_BACKWARD:
            return f"H{self.param}'"
        if self.kind is MoveKind.CONJUGATE:
            return f"C{self.param:+d}"
        return "S" if self.kind is MoveKind.STABILIZE else "D"


_TOKEN = re.compile(r"^(?:H(\d+)('?)|C([+-]?\d+)|S|D)$")


def parse_move(token: str) -> Move:
    match = _TOKEN.match(token)
    if not match:
        raise DocumentError(f"bad move token {token!r}")
    if token == "S":
        return Move(MoveKind.STABILIZE)
    if token == "D":
        return Move(MoveKind.DESTABILIZE)
    if match.group(1) is not None:
        position = int(match.group(1))
        if position < 1:
            raise DocumentError(f"Hurwitz position must be positive in {token!r}")
        kind = MoveKind.HURWITZ_BACKWARD if match.group(2) else MoveKind.HURWITZ_FORWARD
        return Move(kind, position)
    generator = int(match.group(3))
    if generator == 0:
        raise DocumentError(f"conjugating generator must be nonzero in {token!r}")
    return Move(MoveKind.CONJUGATE, generator)


def parse_moves(script: str) -> list[Move]:
    return [parse_move(tok) for tok in script.replace(",", " ").split()]


def format_moves(trace: Iterable[Move]) -> str:
    return " ".join(str(m) for m in trace)


def apply_move(T: MonodromyTuple, move: Move) -> MonodromyTuple:
    """Apply one move; raise a BraidError when it does not apply to ``T``."""
    if move.kind is MoveKind.HURWITZ_FORWARD:
        return surface.hurwitz(T, move.param, "forward")
    if move.kind is MoveKind.HURWITZ_BACKWARD:
        return surface.hurwitz(T, move.param, "backward")
    if move.kind is MoveKind.CONJUGATE:
        return surface.conjugate(T, BraidWord(T.degree, (move.param,)))
    if move.kind is MoveKind.STABILIZE:
        return surface.stabilize(T)
    result = surface.destabilize(T)
    if result is None:
        raise BraidError("tuple does not have the shape of a stabilization")
    return result


def verify_trace(T: MonodromyTuple, trace: Sequence[Move]) -> MonodromyTuple:
    for position, move in enumerate(trace, 1):
        try:
            T = apply_move(T, move)
        except BraidError as exc:
            raise InapplicableMove(position, f"{move} does not apply: {exc}") from None
    return T


@dataclasses.dataclass(frozen=True)
class SearchBounds:
    """Limits of the search.  ``max_degree=None`` means two above the larger input degree."""

    max_depth: int = 8
    max_degree: int | None = None
    max_conjugator_length: int = 6
    node_budget: int = 1_000_000
    moves: frozenset[MoveKind] = ALL_MOVES

    def __post_init__(self):
        for name in ("max_depth", "max_conjugator_length", "node_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_degree is not None and self.max_degree < 1:
            raise ValueError("max_degree must be positive")
        object.__setattr__(self, "moves", frozenset(self.moves))


def neighbors(T: MonodromyTuple, bounds: SearchBounds) -> list[tuple[Move, MonodromyTuple]]:
    """Tuples one move away from ``T``, ordered by move kind then parameter.

    Results whose longest conjugator exceeds ``bounds.max_conjugator_length``
    are dropped.
    """
    candidates: list[Move] = []
    k, m = len(T.entries), T.degree
    if MoveKind.HURWITZ_FORWARD in bounds.moves:
        candidates += [Move(MoveKind.HURWITZ_FORWARD, i) for i in range(1, k)]
    if MoveKind.HURWITZ_BACKWARD in bounds.moves:
        candidates += [Move(MoveKind.HURWITZ_BACKWARD, i) for i in range(1, k)]
    if MoveKind.CONJUGATE in bounds.moves:
        candidates += [
            Move(MoveKind.CONJUGATE, s * j) for j in range(1, m) for s in (-1, 1)
        ]
    if MoveKind.STABILIZE in bounds.moves and (bounds.max_degree is None or m < bounds.max_degree):
        candidates.append(Move(MoveKind.STABILIZE))
    out = []
    for move in sorted(candidates):
        result = apply_move(T, move)
        if result.max_conjugator_length() <= bounds.max_conjugator_length:
            out.append((move, result))
    if MoveKind.DESTABILIZE in bounds.moves:
        result = surface.destabilize(T)
        if result is not None:
            out.append((Move(MoveKind.DESTABILIZE), result))
    return out


# --- verdicts ---------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Equivalent:
    trace: tuple[Move, ...]
    explored: int = 0
    verdict = "Equivalent"

    @property
    def depth(self) -> int:
        return len(self.trace)


@dataclasses.dataclass(frozen=True)
class Distinct:
    invariant: str
    values: tuple[object, object]
    verdict = "Distinct"


@dataclasses.dataclass(frozen=True)
class Unknown:
    explored: int
    verdict = "Unknown"


Verdict = Union[Equivalent, Distinct, Unknown]


def _genus_multiset(T: MonodromyTuple) -> tuple[int, ...]:
    return tuple(sorted(surface.genus_list(T)))


def _homs_s3(T: MonodromyTuple) -> int:
    return count_homs(surface.complement_group(T), 3)


# Invariants of the closure, each unchanged by every move kind; checked in order.
SCREEN: tuple[tuple[str, Callable[[MonodromyTuple], object]], ...] = (
    ("euler_characteristic", surface.euler_characteristic_closure),
    ("components", surface.components),
    ("genus_multiset", _genus_multiset),
    ("abelianization_rank", lambda T: abelianization_rank(surface.complement_group(T))),
    ("homs_to_S3", _homs_s3),
)


def screen(T: MonodromyTuple, U: MonodromyTuple) -> Distinct | None:
    for name, invariant in SCREEN:
        try:
            a, b = invariant(T), invariant(U)
        except BudgetExceeded:
            continue
        if a != b:
            return Distinct(name, (a, b))
    return None


class _Side:
    def __init__(self, start: MonodromyTuple):
        key = canonical_key(start)
        self.parent: dict[CanonicalKey, tuple[CanonicalKey, Move] | None] = {key: None}
        self.rep: dict[CanonicalKey, MonodromyTuple] = {key: start}
        self.frontier: list[CanonicalKey] = [key]
        self.depth = 0

    def path(self, key: CanonicalKey) -> list[Move]:
        moves = []
        while self.parent[key] is not None:
            key, move = self.parent[key]
            moves.append(move)
        moves.reverse()
        return moves


def search_equivalence(T: MonodromyTuple, U: MonodromyTuple, bounds: SearchBounds | None = None) -> Verdict:
    bounds = bounds or SearchBounds()
    if bounds.max_degree is None:
        bounds = dataclasses.replace(bounds, max_degree=max(T.degree, U.degree) + 2)
    distinct = screen(T, U)
    if distinct is not None:
        return distinct
    target = canonical_key(U)
    if canonical_key(T) == target:
        return Equivalent((), 2)

    fwd, bwd = _Side(T), _Side(U)
    explored = 2
    while fwd.frontier and bwd.frontier and fwd.depth + bwd.depth < bounds.max_depth:
        forward_turn = len(fwd.frontier) <= len(bwd.frontier)
        side, other = (fwd, bwd) if forward_turn else (bwd, fwd)
        new_frontier = []
        meetings = []
        for key in side.frontier:
            for move, result in neighbors(side.rep[key], bounds):
                k = canonical_key(result)
                if k in side.parent:
                    continue
                side.parent[k] = (key, move)
                side.rep[k] = result
                new_frontier.append(k)
                explored += 1
                if k in other.parent:
                    meetings.append(k)
                if explored > bounds.node_budget:
                    return Unknown(explored)
        side.frontier = sorted(new_frontier)
        side.depth += 1
        candidates = []
        for k in meetings:
            trace = fwd.path(k) + [m.inverse() for m in reversed(bwd.path(k))]
            candidates.append((len(trace), [str(m) for m in trace], trace))
        for _, _, trace in sorted(candidates, key=lambda c: (c[0], c[1])):
            try:
                if canonical_key(verify_trace(T, trace)) == target:
                    return Equivalent(tuple(trace), explored)
            except InapplicableMove:
                # a reversed stabilization whose destabilization is only
                # semantic, not syntactic; keep searching
                continue
    return Unknown(explored)


# --- enumeration ------------------------------------------------------------

def _reduced_words(m: int, max_length: int) -> Iterator[tuple[int, ...]]:
    letters = [s * j for j in range(1, m) for s in (1, -1)]
    yield ()
    layer: list[tuple[int, ...]] = [()]
    for _ in range(max_length):
        layer = [w + (a,) for w in layer for a in letters if not w or w[-1] != -a]
        yield from layer


def distinct_bands(m: int, max_conjugator_length: int) -> list[BandEntry]:
    """One band per braid element among conjugators of length <= L, shortest conjugator first."""
    seen: set[NormalForm] = set()
    out = []
    for w in _reduced_words(m, max_conjugator_length):
        for i in range(1, m):
            for e in (1, -1):
                entry = BandEntry(BraidWord(m, w), i, e)
                nf = entry.element()
                if nf not in seen:
                    seen.add(nf)
                    out.append(entry)
    return out


def enumerate_tuples(m: int, k: int, max_conjugator_length: int) -> Iterator[MonodromyTuple]:
    """Every valid simple tuple of degree m with k entries, once per sequence of entry elements."""
    if k == 0:
        yield MonodromyTuple.empty(m)
        return
    bands = distinct_bands(m, max_conjugator_length)
    by_element = {b.element(): b for b in bands}
    for prefix in itertools.product(bands, repeat=k - 1):
        letters: list[int] = []
        for b in prefix:
            letters.extend(b.expanded().letters)
        closing = by_element.get(braids.normal_form(braids.inverse(BraidWord(m, tuple(letters)))))
        if closing is not None:
            yield MonodromyTuple(m, prefix + (closing,))


# --- census -----------------------------------------------------------------

@dataclasses.dataclass
class CensusClass:
    representative: int
    members: list[int]
    traces: dict[int, tuple[Move, ...]]


def census(tuples: Sequence[MonodromyTuple], bounds: SearchBounds | None = None) -> tuple[list[CensusClass], list[tuple[int, int]]]:
    """Group tuples into classes proven equivalent by the search.

    A tuple joins the first class containing a member it is proven
    equivalent to.  ``traces`` holds the trace from the representative when
    that comparison succeeded directly.  Returns the classes and the
    (tuple, class representative) pairs left Unknown; tuples that match no
    class start a new one, so the class count is an upper bound.
    """
    classes: list[CensusClass] = []
    unresolved = []
    for idx, T in enumerate(tuples):
        placed = False
        for cls in classes:
            verdict = search_equivalence(tuples[cls.representative], T, bounds)
            if isinstance(verdict, Distinct):
                continue
            if isinstance(verdict, Unknown):
                # any member will do; traces are kept relative to the representative only
                for other in cls.members[1:]:
                    if isinstance(search_equivalence(tuples[other], T, bounds), Equivalent):
                        verdict = None
                        break
            if isinstance(verdict, Unknown):
                unresolved.append((idx, cls.representative))
                continue
            cls.members.append(idx)
            if verdict is not None:
                cls.traces[idx] = verdict.trace
            placed = True
            break
        if not placed:
            classes.append(CensusClass(idx, [idx], {idx: ()}))
    return classes, unresolved
