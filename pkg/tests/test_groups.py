from __future__ import annotations

from itertools import combinations

import pytest

from fusionscan.groups import (
    MAX_CATALOG_ORDER,
    UnsupportedGroupOrder,
    cyclic,
    direct_product,
    enumerate_groups,
    is_isomorphic,
    subgroups,
)

# number of isomorphism classes of groups of order n
KNOWN = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


@pytest.mark.parametrize("n", sorted(KNOWN))
def test_catalog_counts(n):
    assert len(enumerate_groups(n)) == KNOWN[n]


@pytest.mark.parametrize("n", sorted(KNOWN))
def test_axioms(n):
    for g in enumerate_groups(n):
        assert g.order == n
        assert g.axiom_violations() == [], g.name


@pytest.mark.parametrize("n", [4, 8, 9, 12, 16])
def test_pairwise_non_isomorphic(n):
    for g, h in combinations(enumerate_groups(n), 2):
        assert not is_isomorphic(g, h), (g.name, h.name)


def test_isomorphism_positive():
    assert is_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6))
    assert not is_isomorphic(direct_product(cyclic(2), cyclic(2)), cyclic(4))


def test_abelian_counts():
    assert [g.is_abelian() for g in enumerate_groups(6)].count(True) == 1
    assert sum(g.is_abelian() for g in enumerate_groups(16)) == 5


def test_subgroup_orders_divide():
    for g in enumerate_groups(12):
        for sub in subgroups(g):
            assert 12 % len(sub) == 0 and 0 in sub


def test_out_of_range():
    with pytest.raises(UnsupportedGroupOrder):
        enumerate_groups(MAX_CATALOG_ORDER + 1)
    with pytest.raises(UnsupportedGroupOrder):
        enumerate_groups(8, max_order=6)
    with pytest.raises(ValueError):
        enumerate_groups(0)
