from __future__ import annotations

import pytest

from fusionscan.reference import CatalogMissing, load_catalog, parse_catalog
from fusionscan.signature import is_frobenius_type, parse_signature as P


def test_list_sizes():
    cat = load_catalog()
    assert len(cat.final[84]) == len(cat.final_set(84)) == 30
    assert len(cat.final[90]) == len(cat.final_set(90)) == 20
    assert len(cat.intermediate_set(84)) == 35
    assert len(cat.intermediate_set(90)) == 37


def test_entries_are_consistent():
    cat = load_catalog()
    for N in (84, 90):
        for sig in cat.final[N]:
            assert sig.global_dim == N and is_frobenius_type(sig, N)
        for e in cat.intermediate[N]:
            assert e.signature.global_dim == N and e.killers
            assert e.signature not in cat.final_set(N)


def test_pic_orders():
    cat = load_catalog()
    assert {s.n0 for s in cat.final[84]} == {2, 3, 4, 6, 12, 21, 28}
    assert {s.n0 for s in cat.final[90]} == {2, 6, 9, 10, 15, 18, 30, 45}


def test_expected_killers():
    cat = load_catalog()
    assert cat.expected_killers(90, P("(1,5;2,10;3,5)")) == ("R10",)
    assert cat.expected_killers(90, P("(1,6;3,4;4,3)")) == ("R14",)
    assert cat.expected_killers(84, P("(1,4;4,1;8,1)")) == ("solver",)
    assert cat.expected_killers(84, P("(1,4;2,20)")) == ()


def test_missing_n():
    with pytest.raises(CatalogMissing):
        load_catalog().final_set(60)


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_catalog("(1,2;2,1)\n")
    with pytest.raises(ValueError):
        parse_catalog("# N=7 final\n(1,2;2,1)\n")
    cat = parse_catalog("# N=6 final\n(1,2; 2,1)\n\n# N=6 intermediate\n")
    assert cat.final_set(6) == {P("(1,2;2,1)")}
