from __future__ import annotations

import itertools
import math
import random

import pytest

from surfbraid import braids
from surfbraid.braids import BraidWord
from surfbraid.errors import DocumentError, InapplicableMove
from surfbraid.sampling import random_tuple
from surfbraid.search import (
    HURWITZ_ONLY,
    Distinct,
    Equivalent,
    Move,
    MoveKind,
    SearchBounds,
    Unknown,
    canonical_key,
    census,
    enumerate_tuples,
    format_moves,
    neighbors,
    parse_moves,
    search_equivalence,
    verify_trace,
)
from surfbraid.surface import (
    MonodromyTuple,
    b_star,
    band,
    braid_sum,
    conjugate,
    hurwitz,
    stabilize,
    tuple_from_words,
    validate,
)


def signs(*exps):
    return tuple_from_words(2, [((), 1, e) for e in exps])


def assert_sound(T, U, verdict):
    assert isinstance(verdict, Equivalent)
    assert canonical_key(verify_trace(T, verdict.trace)) == canonical_key(U)


# --- keys and moves -----------------------------------------------------------

def test_canonical_key_ignores_conjugator_words():
    plain = b_star()
    noisy = MonodromyTuple(2, (band(2, (1,), 1, 1), band(2, (), 1, -1)))
    assert canonical_key(plain) == canonical_key(noisy)
    padded = MonodromyTuple(2, (band(2, (1, -1, 1, -1), 1, 1), band(2, (), 1, -1)))
    assert canonical_key(padded) == canonical_key(plain)


def test_canonical_key_changes_under_degree_two_hurwitz_move():
    moved = hurwitz(b_star(), 1, "forward")
    assert [e.exponent for e in moved.entries] == [-1, 1]
    assert canonical_key(moved) != canonical_key(b_star())


def test_canonical_key_is_ordered():
    keys = sorted(canonical_key(T) for T in enumerate_tuples(2, 4, 0))
    assert len(set(keys)) == 6


@pytest.mark.parametrize("script", ["H1 H2' C-1 C+2 S D", "H10", "C3 C-3"])
def test_move_script_round_trip(script):
    moves = parse_moves(script)
    assert parse_moves(format_moves(moves)) == moves


def test_move_tokens():
    assert parse_moves("H2'") == [Move(MoveKind.HURWITZ_BACKWARD, 2)]
    assert parse_moves("C1") == [Move(MoveKind.CONJUGATE, 1)]
    for bad in ["H0", "C0", "X", "H-1", "s"]:
        with pytest.raises(DocumentError):
            parse_moves(bad)


def test_move_inverses():
    for token in ["H3", "H3'", "C-2", "S", "D"]:
        (move,) = parse_moves(token)
        assert move.inverse().inverse() == move
        assert move.inverse() != move


def test_neighbors_of_b_star():
    result = neighbors(b_star(), SearchBounds(max_degree=2))
    assert [str(m) for m, _ in result] == ["H1", "H1'", "C-1", "C+1", "D"]
    for _, T in result:
        validate(T)
    stabilized = neighbors(b_star(), SearchBounds(max_degree=3))
    assert "S" in [str(m) for m, _ in stabilized]


def test_neighbors_of_trivial_degree_one():
    result = neighbors(MonodromyTuple.empty(1), SearchBounds(max_degree=2))
    assert [(str(m), T) for m, T in result] == [("S", b_star())]


def test_neighbors_respect_move_filter_and_conjugator_bound():
    T = random_tuple(random.Random(5), max_degree=4, max_branch_points=6)
    for move, _ in neighbors(T, SearchBounds(moves=HURWITZ_ONLY)):
        assert move.kind in HURWITZ_ONLY
    for _, U in neighbors(T, SearchBounds(max_conjugator_length=2)):
        assert U.max_conjugator_length() <= 2


@pytest.mark.parametrize("seed", range(10))
def test_neighbors_are_valid(seed):
    T = random_tuple(random.Random(seed))
    for _, U in neighbors(T, SearchBounds(max_degree=T.degree + 1)):
        validate(U)


# --- verify_trace ------------------------------------------------------------

def test_verify_trace_examples():
    T = stabilize(b_star())
    assert verify_trace(T, []) == T
    assert verify_trace(MonodromyTuple.empty(1), parse_moves("S")) == b_star()
    assert verify_trace(b_star(), parse_moves("H1 H1'")) == b_star()


def test_verify_trace_reports_position():
    with pytest.raises(InapplicableMove) as info:
        verify_trace(b_star(), parse_moves("H1 H2"))
    assert info.value.position == 2
    with pytest.raises(InapplicableMove) as info:
        verify_trace(braid_sum(b_star(), b_star()), parse_moves("D D"))
    assert info.value.position == 1


# --- search ------------------------------------------------------------------

def test_degree_two_patterns_are_equivalent():
    T, U = signs(1, -1, 1, -1), signs(1, 1, -1, -1)
    verdict = search_equivalence(T, U)
    assert_sound(T, U, verdict)
    assert all(m.kind in HURWITZ_ONLY for m in verdict.trace)


def test_stabilization_found_at_depth_one():
    T = b_star()
    verdict = search_equivalence(T, stabilize(T))
    assert_sound(T, stabilize(T), verdict)
    assert verdict.trace == (Move(MoveKind.STABILIZE),)


def test_distinct_by_euler_characteristic():
    verdict = search_equivalence(b_star(), braid_sum(b_star(), b_star()))
    assert verdict == Distinct("euler_characteristic", (2, 0))


def test_distinct_by_components():
    from surfbraid.surface import iota

    T = braid_sum(iota(b_star(), 0, 1), iota(b_star(), 1, 0))  # connected sphere, degree 3
    U = iota(braid_sum(b_star(), b_star()), 0, 1)  # torus plus a sphere
    verdict = search_equivalence(T, U)
    assert isinstance(verdict, Distinct)


def test_conjugation_is_found():
    T = stabilize(b_star())
    U = conjugate(T, BraidWord(3, (1, 2)))
    verdict = search_equivalence(T, U, SearchBounds(max_degree=3))
    assert_sound(T, U, verdict)


def test_scrambled_stabilization_is_found():
    T = tuple_from_words(3, [((2,), 1, 1), ((2,), 1, -1)])
    U = hurwitz(hurwitz(stabilize(T), 2, "forward"), 1, "backward")
    verdict = search_equivalence(T, U, SearchBounds(max_degree=4))
    assert_sound(T, U, verdict)


def test_unknown_when_budget_is_tiny():
    T, U = signs(1, 1, 1, -1, -1, -1), signs(-1, -1, -1, 1, 1, 1)
    verdict = search_equivalence(T, U, SearchBounds(max_depth=2, moves=HURWITZ_ONLY))
    assert isinstance(verdict, Unknown)
    verdict = search_equivalence(T, U, SearchBounds(node_budget=3))
    assert isinstance(verdict, Unknown)


def test_search_is_deterministic_and_symmetric():
    rng = random.Random(21)
    for _ in range(6):
        T = random_tuple(rng, max_degree=3, max_branch_points=4, max_conjugator_length=1)
        U = hurwitz(T, 1, "forward") if len(T) > 1 else stabilize(T)
        bounds = SearchBounds(max_depth=4)
        first = search_equivalence(T, U, bounds)
        assert search_equivalence(T, U, bounds) == first
        back = search_equivalence(U, T, bounds)
        assert type(back) is type(first)
        if isinstance(first, Equivalent):
            assert_sound(T, U, first)
            assert_sound(U, T, back)


def test_trace_is_minimal_for_degree_two():
    # reaching ---+++ from +++--- needs one adjacent swap per inversion
    T, U = signs(1, 1, 1, -1, -1, -1), signs(-1, -1, -1, 1, 1, 1)
    verdict = search_equivalence(T, U, SearchBounds(max_depth=12, moves=HURWITZ_ONLY))
    assert_sound(T, U, verdict)
    assert verdict.depth == 9


# --- enumeration ---------------------------------------------------------------

@pytest.mark.parametrize("k", [0, 2, 4, 6])
def test_degree_two_enumeration_matches_sign_count(k):
    tuples = list(enumerate_tuples(2, k, 0))
    # oracle: sign sequences with zero sum
    assert len(tuples) == math.comb(k, k // 2)
    expected = {s for s in itertools.product((1, -1), repeat=k) if sum(s) == 0}
    assert {tuple(e.exponent for e in T.entries) for T in tuples} == expected


def test_enumeration_examples():
    assert list(enumerate_tuples(1, 0, 3)) == [MonodromyTuple.empty(1)]
    assert [tuple(e.exponent for e in T.entries) for T in enumerate_tuples(2, 2, 0)] == [(1, -1), (-1, 1)]


def test_degree_three_enumeration_against_artin_oracle():
    # oracle: bands deduplicated by Artin images, products checked by the Artin action
    m, k, L = 3, 2, 1
    words = [()] + [(a,) for a in (1, -1, 2, -2)]
    bands = {}
    for w in words:
        for i in (1, 2):
            for e in (1, -1):
                expanded = braids.band_generator(BraidWord(m, w), i, e)
                bands.setdefault(braids.artin_images(expanded), expanded)
    count = 0
    identity = braids.artin_images(BraidWord(m))
    for seq in itertools.product(bands.values(), repeat=k):
        product = BraidWord(m, tuple(a for b in seq for a in b.letters))
        count += braids.artin_images(product) == identity
    tuples = list(enumerate_tuples(m, k, L))
    assert len(tuples) == count
    assert len({canonical_key(T) for T in tuples}) == count
    for T in tuples:
        validate(T)


def test_enumeration_is_deterministic():
    assert list(enumerate_tuples(3, 2, 1)) == list(enumerate_tuples(3, 2, 1))


# --- census ------------------------------------------------------------------

@pytest.mark.parametrize("k", [2, 4, 6])
def test_degree_two_census_single_class(k):
    tuples = list(enumerate_tuples(2, k, 0))
    classes, unresolved = census(tuples, SearchBounds(max_depth=10, moves=HURWITZ_ONLY))
    assert len(classes) == 1 and not unresolved
    (cls,) = classes
    for idx, trace in cls.traces.items():
        assert canonical_key(verify_trace(tuples[cls.representative], trace)) == canonical_key(tuples[idx])


def test_census_separates_by_invariants():
    tuples = [b_star(), braid_sum(b_star(), b_star()), signs(-1, 1)]
    classes, _ = census(tuples, SearchBounds(max_depth=4))
    assert [c.members for c in classes] == [[0, 2], [1]]
