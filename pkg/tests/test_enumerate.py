from __future__ import annotations

import pytest

from fusionscan.enumerate import count_signatures, enumerate_signatures, iter_signatures
from oracles import naive_signatures


@pytest.mark.parametrize("N", range(1, 41))
def test_matches_brute_force(N):
    got = [s.entries for s in enumerate_signatures(N)]
    assert len(got) == len(set(got))
    assert set(got) == naive_signatures(N)


@pytest.mark.parametrize("N, count", [(4, 0), (5, 1), (6, 1), (84, 544), (90, 712), (120, 2290)])
def test_counts(N, count):
    assert len(enumerate_signatures(N)) == count
    assert count_signatures(N) == count


def test_small_cases_by_hand():
    assert [str(s) for s in enumerate_signatures(5)] == ["(1,1;2,1)"]
    assert [str(s) for s in enumerate_signatures(6)] == ["(1,2;2,1)"]
    assert [str(s) for s in enumerate_signatures(9)] == ["(1,1;2,2)", "(1,5;2,1)"]


def test_sorted_and_repeatable():
    first = enumerate_signatures(90)
    assert first == sorted(first)
    assert first == enumerate_signatures(90)


def test_every_candidate_has_the_right_dimension():
    for N in (84, 90):
        assert all(s.global_dim == N for s in iter_signatures(N))


def test_max_rank():
    sigs = enumerate_signatures(84, max_rank=6)
    assert sigs and all(s.rank <= 6 for s in sigs)
    assert set(sigs) == {s for s in enumerate_signatures(84) if s.rank <= 6}


@pytest.mark.parametrize("N", [41, 64, 100, 150])
def test_count_agrees_with_listing(N):
    assert count_signatures(N) == len(enumerate_signatures(N))
