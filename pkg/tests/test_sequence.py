import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from renormlab.errors import NotInsertable, NotNeglectable
from renormlab.sequence import SADDLE_NODE, ReturnTypeSequence, goes_through_twice, sigma3_sequence, two_cascades
from oracles import displayed_chain, sigma3_kneading_word

GOLDEN = Path(__file__).parent / "golden"

def word(seq):
    return "".join("LCR"[s + 1] for s in seq.kneading())


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_fixture_matches_hand_written_chain_and_golden(n):
    seq = sigma3_sequence(n)
    assert seq == displayed_chain(n)
    golden = json.loads((GOLDEN / f"sigma3_{n}.json").read_text())
    assert seq.to_json() == golden
    assert ReturnTypeSequence.from_json(golden) == seq


@pytest.mark.parametrize("n", [1, 2, 4, 9])
def test_symbolic_kneading_and_period(n):
    seq = sigma3_sequence(n)
    assert word(seq) == sigma3_kneading_word(n)
    assert seq.period == 3 * n + 2
    assert seq.is_valid()


def test_cascade_and_essential_period():
    seq = sigma3_sequence(6)
    (casc,) = seq.cascades()
    assert casc.kind == SADDLE_NODE
    assert seq.neglectable_levels() == tuple(range(1, 6))
    assert seq.essential_period() == 5


def test_truncation_and_insertion():
    seq = sigma3_sequence(5)
    for l in seq.neglectable_levels():
        assert seq.truncate(l).perm == (3, 1, 2)
    assert seq.insert_neglectable(2) == sigma3_sequence(6)
    assert seq.canonical() == sigma3_sequence(1)
    with pytest.raises(NotNeglectable):
        seq.truncate(seq.top)
    with pytest.raises(NotInsertable):
        seq.insert_neglectable(seq.top)


def test_two_cascade_fixtures_are_admissible():
    for seq in (goes_through_twice(2, 3), two_cascades(2, 3)):
        assert seq.is_valid()
        seq.check()
        assert ReturnTypeSequence.from_text(seq.to_text()) == seq
    assert len(two_cascades(2, 3).cascades()) == 2


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 12))
def test_text_and_json_round_trip(n):
    seq = sigma3_sequence(n)
    assert ReturnTypeSequence.from_text(seq.to_text()) == seq
    assert ReturnTypeSequence.from_json(json.loads(json.dumps(seq.to_json()))) == seq
