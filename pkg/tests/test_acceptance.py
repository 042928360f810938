"""Acceptance criteria, each at its stated size and tolerance."""

from __future__ import annotations

import random
import time

import pytest

from surfbraid import braids
from surfbraid.braids import BraidWord
from surfbraid.groups import abelianization_rank, count_homs
from surfbraid.sampling import random_tuple
from surfbraid.search import (
    HURWITZ_ONLY,
    Equivalent,
    Move,
    MoveKind,
    SearchBounds,
    canonical_key,
    enumerate_tuples,
    search_equivalence,
    verify_trace,
)
from surfbraid.surface import (
    b_star,
    braid_sum,
    complement_group,
    components,
    conjugate,
    destabilize,
    euler_characteristic_closure,
    genus_list,
    hurwitz,
    stabilize,
    validate,
)

SUITE_SIZE = 200
SUITE_SEED = 20240601


def _invariants(T):
    P = complement_group(T)
    return {
        "chi": euler_characteristic_closure(T),
        "components": components(T),
        "genus": tuple(sorted(genus_list(T))),
        "abelianization_rank": abelianization_rank(P),
        "homs_S3": count_homs(P, 3),
        "homs_S4": count_homs(P, 4),
    }


def _moved(T):
    out = []
    for i in range(1, len(T)):
        out.append((Move(MoveKind.HURWITZ_FORWARD, i), hurwitz(T, i, "forward")))
        out.append((Move(MoveKind.HURWITZ_BACKWARD, i), hurwitz(T, i, "backward")))
    for j in range(1, T.degree):
        for a in (-j, j):
            out.append((Move(MoveKind.CONJUGATE, a), conjugate(T, BraidWord(T.degree, (a,)))))
    out.append((Move(MoveKind.STABILIZE), stabilize(T)))
    return out


@pytest.fixture(scope="module")
def suite():
    rng = random.Random(SUITE_SEED)
    tuples = [random_tuple(rng, max_degree=4, max_branch_points=8, max_conjugator_length=3) for _ in range(SUITE_SIZE)]
    for T in tuples:
        validate(T)
        assert T.degree <= 4 and len(T) <= 8 and T.max_conjugator_length() <= 3
    return tuples


@pytest.fixture(scope="module")
def degree_two_run():
    """Criterion 2 workload: every enumerated tuple searched against the first, Hurwitz moves only."""
    start = time.perf_counter()
    runs = {}
    for k in (2, 4, 6):
        tuples = list(enumerate_tuples(2, k, 0))
        bounds = SearchBounds(max_depth=k * k // 4 + 1, moves=HURWITZ_ONLY)
        runs[k] = [(tuples[0], U, search_equivalence(tuples[0], U, bounds)) for U in tuples]
    return runs, time.perf_counter() - start


@pytest.fixture(scope="module")
def move_run(suite):
    """Criterion 3/4 workload: invariants, round trips and a depth-1 search for every move of every suite tuple."""
    violations = []
    roundtrip_failures = []
    verdicts = []
    checked = 0
    for n, T in enumerate(suite):
        base = _invariants(T)
        for move, U in _moved(T):
            validate(U)
            checked += 1
            after = _invariants(U)
            if after != base:
                violations.append((n, str(move), base, after))
            bounds = SearchBounds(max_depth=1, max_degree=T.degree + 1, max_conjugator_length=64)
            verdicts.append((T, U, search_equivalence(T, U, bounds)))
        key = canonical_key(T)
        back = destabilize(stabilize(T))
        if back is None or canonical_key(back) != key:
            roundtrip_failures.append((n, "destabilize(stabilize)"))
        for i in range(1, len(T)):
            if canonical_key(hurwitz(hurwitz(T, i, "forward"), i, "backward")) != key:
                roundtrip_failures.append((n, f"H{i} then H{i}'"))
            if canonical_key(hurwitz(hurwitz(T, i, "backward"), i, "forward")) != key:
                roundtrip_failures.append((n, f"H{i}' then H{i}"))
    return violations, roundtrip_failures, verdicts, checked


def _random_pair(rng: random.Random):
    m = rng.randint(2, 5)

    def letter():
        return rng.choice([1, -1]) * rng.randint(1, m - 1)

    u = [letter() for _ in range(rng.randint(0, 16))]
    if rng.random() < 0.5:
        v = [letter() for _ in range(rng.randint(0, 16))]
        return BraidWord(m, tuple(u)), BraidWord(m, tuple(v))
    # an equal pair: an identity word spliced into a copy of a shorter u
    u = u[:10]
    i = rng.randint(1, m - 1)
    splices = [[i, -i], [-i, i]]
    if m >= 3:
        j = min(i, m - 2)
        splices.append([j, j + 1, j, -(j + 1), -j, -(j + 1)])  # braid relation
    if m >= 4:
        splices.append([1, m - 1, -1, -(m - 1)])  # far commutation
    v = list(u)
    pos = rng.randint(0, len(v))
    v[pos:pos] = rng.choice(splices)
    return BraidWord(m, tuple(u)), BraidWord(m, tuple(v))


@pytest.mark.slow
def test_criterion_1_word_problem_oracle_agreement(acceptance):
    rng = random.Random(1)
    pairs = 100_000
    disagreements = 0
    equal_pairs = 0
    start = time.perf_counter()
    for _ in range(pairs):
        u, v = _random_pair(rng)
        assert len(u) <= 16 and len(v) <= 16
        by_normal_form = braids.equal(u, v)
        by_artin = braids.artin_equal(u, v)
        disagreements += by_normal_form != by_artin
        equal_pairs += by_artin
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 60
    acceptance(1, ok, f"{pairs} pairs ({equal_pairs} equal), {disagreements} disagreements, {elapsed:.1f}s (limit 60s)")
    assert disagreements == 0
    assert elapsed < 60


def test_criterion_2_degree_two_classification(acceptance, degree_two_run):
    runs, elapsed = degree_two_run
    summary = []
    ok = elapsed < 10
    for k, results in runs.items():
        equivalent = sum(isinstance(v, Equivalent) for _, _, v in results)
        hurwitz_only = all(
            m.kind in HURWITZ_ONLY for _, _, v in results if isinstance(v, Equivalent) for m in v.trace
        )
        ok &= equivalent == len(results) and hurwitz_only
        summary.append(f"k={k}: {len(results)} tuples, {equivalent} in class 1")
    acceptance(2, ok, "; ".join(summary) + f"; {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_3_move_invariance(acceptance, suite, move_run):
    violations, _, _, checked = move_run
    ok = not violations
    acceptance(3, ok, f"{len(suite)} tuples, {checked} moves checked, {len(violations)} violations")
    assert violations == []


def test_criterion_4_roundtrips(acceptance, suite, move_run):
    _, failures, _, _ = move_run
    acceptance(4, not failures, f"{len(suite)} tuples, {len(failures)} round-trip violations")
    assert failures == []


def test_criterion_5_b_star_golden_values(acceptance):
    B = b_star()
    P = complement_group(B)
    BB = braid_sum(B, B)
    observed = {
        "chi": euler_characteristic_closure(B),
        "components": components(B),
        "genus": genus_list(B),
        "abelianization_rank": abelianization_rank(P),
        "homs_S3": count_homs(P, 3),
        "sum_chi": euler_characteristic_closure(BB),
        "sum_genus": genus_list(BB),
    }
    expected = {
        "chi": 2,
        "components": 1,
        "genus": [0],
        "abelianization_rank": 1,
        "homs_S3": 6,
        "sum_chi": 0,
        "sum_genus": [1],
    }
    acceptance(5, observed == expected, f"{observed}")
    assert observed == expected


def test_criterion_6_search_soundness(acceptance, suite, degree_two_run, move_run):
    runs, _ = degree_two_run
    _, _, move_verdicts, _ = move_run
    produced = [r for results in runs.values() for r in results] + move_verdicts
    equivalent = [(T, U, v) for T, U, v in produced if isinstance(v, Equivalent)]
    replay_failures = sum(
        canonical_key(verify_trace(T, v.trace)) != canonical_key(U) for T, U, v in equivalent
    )
    depth_one = 0
    for T in suite[:50]:
        S = stabilize(T)
        verdict = search_equivalence(T, S, SearchBounds(max_degree=T.degree + 1))
        if isinstance(verdict, Equivalent) and verdict.depth == 1:
            if canonical_key(verify_trace(T, verdict.trace)) == canonical_key(S):
                depth_one += 1
    ok = replay_failures == 0 and depth_one == 50 and len(equivalent) == len(produced)
    acceptance(
        6,
        ok,
        f"{len(equivalent)}/{len(produced)} Equivalent verdicts, {replay_failures} replay failures; "
        f"stabilization found at depth 1 for {depth_one}/50",
    )
    assert replay_failures == 0
    assert len(equivalent) == len(produced)
    assert depth_one == 50


def test_criterion_7_abelianization_equals_components(acceptance, suite):
    tuples = list(suite) + [U for T in suite for _, U in _moved(T)]
    failures = sum(abelianization_rank(complement_group(T)) != components(T) for T in tuples)
    acceptance(7, failures == 0, f"{len(tuples)} tuples (suite and their moves), {failures} violations")
    assert failures == 0
