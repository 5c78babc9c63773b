from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from fusionscan.signature import (
    SignatureError,
    TypeSignature,
    global_dim,
    is_frobenius_type,
    parse_signature,
    render_signature,
)


def test_parse_spaced_form():
    sig = parse_signature("(1,2; 2,3; 3,2; 4,1; 6,1)")
    assert sig.entries == ((1, 2), (2, 3), (3, 2), (4, 1), (6, 1))
    assert sig.n0 == 2 and sig.s == 4 and sig.rank == 9
    assert sig.global_dim == 84


def test_render_is_compact():
    assert render_signature(parse_signature("( 1 , 3 ;3, 1 )")) == "(1,3;3,1)"


def test_dims_and_counts():
    sig = parse_signature("(1,2;2,1;3,2)")
    assert sig.dims == (1, 1, 2, 3, 3)
    assert sig.nontrivial_dims == (2, 3)
    assert sig.count(3) == 2 and sig.count(5) == 0


@pytest.mark.parametrize(
    "text",
    ["1,2;2,1", "(1,2;2)", "()", "(2,1;3,1)", "(1,2;3,1;2,1)", "(1,2;2,0)", "(1,4)", "(1,2;2,2,2)", "(1,a;2,1)"],
)
def test_malformed(text):
    with pytest.raises(SignatureError):
        parse_signature(text)


def test_frobenius():
    assert is_frobenius_type(parse_signature("(1,2;2,22)"), 90)
    assert not is_frobenius_type(parse_signature("(1,2;2,2;4,5)"), 90)
    with pytest.raises(SignatureError):
        is_frobenius_type(parse_signature("(1,2;2,1)"), 7)


def test_ordering_is_lexicographic_on_entries():
    a, b = parse_signature("(1,2;2,1)"), parse_signature("(1,2;2,1;3,1)")
    assert sorted([b, a]) == [a, b]


_sigs = st.lists(st.tuples(st.integers(2, 12), st.integers(1, 9)), min_size=1, max_size=5).map(
    lambda pairs: TypeSignature(((1, 1),) + tuple(sorted(dict(pairs).items())))
).flatmap(lambda s: st.integers(1, 30).map(lambda n0: TypeSignature(((1, n0),) + s.entries[1:])))


@given(_sigs)
def test_round_trip(sig):
    assert parse_signature(render_signature(sig)) == sig
    assert global_dim(sig) == sum(n * d * d for d, n in sig.entries)
