from __future__ import annotations

import pytest

from fusionscan.groups import cyclic, enumerate_groups
from fusionscan.signature import parse_signature as P
from fusionscan.solver.space import enumerate_class_actions, enumerate_dualities, iter_cases


def _is_involution(d):
    return all(d[d[i]] == i for i in range(len(d)))


@pytest.mark.parametrize("text, n0_group, expected", [
    ("(1,1;3,1;5,1;7,1)", 0, 1),
    ("(1,2;2,1)", 0, 1),
    ("(1,2;2,2;4,5)", 0, 6),
])
def test_duality_counts(text, n0_group, expected):
    sig = P(text)
    duals = enumerate_dualities(sig, enumerate_groups(sig.n0)[n0_group])
    assert len(duals) == expected


def test_duality_counts_without_breaking():
    sig = P("(1,2;2,2;4,5)")
    # involutions on 2 points: 2; on 5 points: 26
    assert len(enumerate_dualities(sig, cyclic(2), symmetry_breaking=False)) == 2 * 26


def test_dualities_are_dimension_preserving_involutions():
    sig = P("(1,4;2,3;3,2)")
    for group in enumerate_groups(4):
        for d in enumerate_dualities(sig, group, symmetry_breaking=False):
            dual = d.dual
            assert dual[0] == 0 and _is_involution(dual)
            assert all(sig.dims[dual[i]] == sig.dims[i] for i in range(sig.rank))
            assert all(dual[g] == group.inverse(g) for g in range(4))


def test_group_order_mismatch():
    with pytest.raises(ValueError):
        enumerate_dualities(P("(1,2;2,1)"), cyclic(3))


def test_class_actions_respect_stabilizer_bound():
    # a single dim-2 simple under C4: stabilizer is all of C4, 4 | 2^2
    assert len(enumerate_class_actions(cyclic(4), 1, 2)) == 1
    # a single dim-3 simple under C2 would need |G[x]| = 2 to divide 9
    assert enumerate_class_actions(cyclic(2), 1, 3) == []
    for ca in enumerate_class_actions(cyclic(6), 3, 2):
        for i in range(ca.size):
            assert 4 % len(ca.stabilizer(i)) == 0


def test_cases_left_action_is_an_action():
    sig = P("(1,4;2,2;4,3)")
    for group in enumerate_groups(4):
        for case in iter_cases(sig, group):
            left = case.left
            for g in range(4):
                for h in range(4):
                    gh = group.mult[g][h]
                    assert all(left[g][left[h][x]] == left[gh][x] for x in range(sig.rank))
            assert _is_involution(case.dual)
