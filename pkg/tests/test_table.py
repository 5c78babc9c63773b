from __future__ import annotations

import json

import pytest

from fusionscan.groups import cyclic, enumerate_groups
from fusionscan.table import (
    DualityAssignment,
    FusionTable,
    group_ring_table,
    stabilizers,
    verify_fusion_table,
)


def _table(dims, group, dual, products):
    """Build a table from {(a, b): {c: mult}}; unit rows are filled in."""
    r = len(dims)
    T = [[[0] * r for _ in range(r)] for _ in range(r)]
    for x in range(r):
        T[0][x][x] = T[x][0][x] = 1
    for (a, b), out in products.items():
        T[a][b] = [out.get(c, 0) for c in range(r)]
    return FusionTable(r, tuple(dims), group, DualityAssignment(tuple(dual)), tuple(tuple(map(tuple, p)) for p in T))


def s3_ring(override=None):
    # simples: 1, sign, the 2-dimensional irrep x; x*x = 1 + sign + x
    prods = {(1, 1): {0: 1}, (1, 2): {2: 1}, (2, 1): {2: 1}, (2, 2): {0: 1, 1: 1, 2: 1}}
    prods.update(override or {})
    return _table((1, 1, 2), cyclic(2), (0, 1, 2), prods)


def laws(table):
    return {v.law for v in verify_fusion_table(table)}


def test_s3_character_ring_is_valid():
    assert verify_fusion_table(s3_ring()) == []


def test_s3_stabilizers():
    assert stabilizers(s3_ring()) == [{0}, {0}, {0, 1}]


def test_dimension_violation():
    assert "dimension" in laws(s3_ring({(2, 2): {0: 1, 1: 1}}))


def test_unit_violation():
    t = s3_ring()
    T = [[list(r) for r in p] for p in t.tensor]
    T[0][2] = [0, 1, 0]
    bad = FusionTable(3, t.dims, t.group, t.dual, tuple(tuple(map(tuple, p)) for p in T))
    assert "unit" in laws(bad)


def test_bad_duality():
    t = s3_ring()
    bad = FusionTable(3, t.dims, t.group, DualityAssignment((0, 2, 1)), t.tensor)
    assert laws(bad) & {"dual", "duality"}


def test_associativity_violation():
    t = _table((1, 1, 2, 2), cyclic(2), (0, 1, 2, 3), {
        (1, 1): {0: 1}, (1, 2): {2: 1}, (2, 1): {2: 1}, (1, 3): {3: 1}, (3, 1): {3: 1},
        (2, 2): {0: 1, 1: 1, 3: 1}, (3, 3): {0: 1, 1: 1, 3: 1},
        (2, 3): {2: 1, 3: 1}, (3, 2): {2: 1, 3: 1},
    })
    assert "associativity" in laws(t)


def test_max_violations_caps_output():
    bad = s3_ring({(2, 2): {0: 2, 1: 2, 2: 2}})
    assert len(verify_fusion_table(bad, max_violations=1)) == 1
    assert len(verify_fusion_table(bad)) > 1


@pytest.mark.parametrize("n", range(1, 9))
def test_group_rings_are_valid(n):
    for g in enumerate_groups(n):
        assert verify_fusion_table(group_ring_table(g)) == [], g.name


def test_json_round_trip():
    t = s3_ring()
    again = FusionTable.from_json(json.loads(t.dumps()))
    assert again == t


def test_shape_checked():
    with pytest.raises(ValueError):
        FusionTable(2, (1, 1, 2), cyclic(2), DualityAssignment((0, 1, 2)), s3_ring().tensor)
