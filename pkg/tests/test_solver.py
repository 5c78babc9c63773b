from __future__ import annotations

import pytest

from fusionscan.enumerate import enumerate_signatures
from fusionscan.signature import parse_signature as P
from fusionscan.solver import SolverConfig, SolverOutcome, Status, solve
from fusionscan.table import verify_fusion_table
from oracles import naive_realizable, subrings_divide

HAND_84 = ["(1,1;3,2;4,1;7,1)", "(1,1;3,1;5,1;7,1)", "(1,2;3,2;8,1)", "(1,4;4,1;8,1)", "(1,2;4,2;5,2)"]
HAND_90 = ["(1,1;3,1;4,1;8,1)", "(1,2;2,2;4,1;8,1)", "(1,2;4,1;6,2)", "(1,2;3,8;4,1)",
           "(1,2;3,4;4,1;6,1)", "(1,2;2,2;4,5)"]

# character rings and small group-theoretical examples
REALIZABLE = ["(1,2;2,1)", "(1,3;3,1)", "(1,4;2,1)", "(1,2;2,2)", "(1,2;2,1;3,2)", "(1,3;2,3;3,1)",
              "(1,1;3,2;4,1;5,1)", "(1,4;2,4;4,1)", "(1,4;2,2;3,4)", "(1,8;2,2)", "(1,6;2,3;3,2;6,1)"]


@pytest.mark.parametrize("text", HAND_84 + HAND_90)
def test_hand_exclusions(text):
    out = solve(P(text))
    assert out.status is Status.EXCLUDED
    assert out.exhaustive and out.model is None


@pytest.mark.parametrize("text", HAND_84 + HAND_90)
def test_hand_exclusions_need_no_subring_check(text):
    assert solve(P(text), SolverConfig(subring_check=False)).status is Status.EXCLUDED


@pytest.mark.parametrize("text", REALIZABLE)
def test_models_are_sound(text):
    sig = P(text)
    out = solve(sig)
    assert out.status is Status.REALIZABLE
    m = out.model
    assert m.dims == sig.dims and m.n0 == sig.n0
    assert verify_fusion_table(m) == []
    assert subrings_divide(m, sig.global_dim)


def test_s3_character_ring_found():
    m = solve(P("(1,2;2,1)")).model
    assert m.tensor[2][2] == (1, 1, 1)


def _micro_corpus():
    out = []
    for N in range(2, 16):
        for sig in enumerate_signatures(N):
            if sig.rank <= 4 and max(sig.dims) <= 3:
                out.append(sig)
    return out


MICRO = _micro_corpus()


def test_micro_corpus_size():
    assert len(MICRO) == 11


@pytest.mark.parametrize("sig", MICRO, ids=str)
def test_agrees_with_naive_search(sig):
    expected = naive_realizable(sig)
    out = solve(sig)
    assert out.status is (Status.REALIZABLE if expected else Status.EXCLUDED)


@pytest.mark.parametrize("text", ["(1,2;2,1)", "(1,2;2,2)", "(1,1;2,2)", "(1,4;4,1;8,1)",
                                  "(1,2;4,2;5,2)", "(1,3;2,3;3,1)", "(1,2;2,1;3,2)"])
def test_symmetry_breaking_does_not_change_status(text):
    sig = P(text)
    on = solve(sig)
    off = solve(sig, SolverConfig(symmetry_breaking=False))
    assert on.status is off.status
    assert off.nodes_visited >= on.nodes_visited


@pytest.mark.parametrize("text", ["(1,2;2,2;4,5)", "(1,4;2,4;4,1)"])
def test_budget_monotone(text):
    sig = P(text)
    full = solve(sig)
    B = full.nodes_visited
    assert solve(sig, SolverConfig(node_budget=B)).status is full.status
    assert solve(sig, SolverConfig(node_budget=3 * B)).status is full.status
    short = solve(sig, SolverConfig(node_budget=B - 1))
    assert short.status is Status.UNKNOWN and not short.exhaustive


def test_deterministic():
    a = solve(P("(1,4;2,4;4,1)"))
    b = solve(P("(1,4;2,4;4,1)"))
    assert (a.nodes_visited, a.cases, a.model) == (b.nodes_visited, b.cases, b.model)


def test_unsupported_group_order_is_unknown():
    out = solve(P("(1,17;2,1)"))
    assert out.status is Status.UNKNOWN and "order 17" in out.reason
    assert solve(P("(1,8;2,1)"), SolverConfig(max_group_order=4)).status is Status.UNKNOWN


def test_rank_cap_is_unknown():
    out = solve(P("(1,3;2,18;3,1)"))
    assert out.status is Status.UNKNOWN and "max_rank" in out.reason


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        SolverConfig(node_budget=0)


def test_trace_lines():
    out = solve(P("(1,2;3,2;8,1)"), SolverConfig(record_trace=True))
    assert out.trace
    for line in out.trace:
        step, law, eq, change = line.split("\t")
        assert int(step) > 0 and law and eq and change
    # the x3*x8 row cannot be filled: 24 minus invertibles is no sum of 3s and 8s
    assert any("x3·x8" in line and line.endswith("contradiction") for line in out.trace)


def test_trace_off_by_default():
    assert solve(P("(1,2;2,1)")).trace is None


def test_outcome_json_round_trip():
    out = solve(P("(1,3;3,1)"))
    again = SolverOutcome.from_json(out.to_json())
    assert again.status is out.status and again.model == out.model and again.nodes_visited == out.nodes_visited
