"""Correspondence-problem encoding and witness construction."""

import json

import pytest

from hypersat.errors import InvalidInstance, NotASolution
from hypersat.fragments import ForallExists, classify
from hypersat.models import TraceSet, evaluate_hyperltl, make_trace
from hypersat.pcp import (
    PairAlphabet,
    PcpInstance,
    encode_pcp,
    encode_solution_traceset,
    parse_instance,
    parse_solution,
)
from hypersat.solver import UnsupportedFragment, hyper_sat
from hypersat.syntax import EXISTS, FORALL, render

EXAMPLE = PcpInstance(("a", "b"), (("a", "baa"), ("ab", "aa"), ("bba", "bb")))


def pair_trace(*pairs):
    stem = [{f"p_{x}_{y}"} for x, y in pairs]
    return make_trace(stem, [{"p_hash_hash"}])


def test_pair_alphabet_size():
    pa = PairAlphabet(("a", "b"))
    assert len(pa.symbols()) == 2 * 2 + 1
    assert len(pa.all_props()) == (2 * 2 + 1) ** 2
    assert set(pa.variants("a")) == {"a", "da"}
    assert pa.prop("da", "b") == "p_da_b"


def test_instance_validation():
    with pytest.raises(InvalidInstance):
        PcpInstance(("a", "b"), (("a", ""),))
    with pytest.raises(InvalidInstance):
        PcpInstance(("a", "a"), (("a", "a"),))
    with pytest.raises(InvalidInstance):
        PcpInstance((), (("a", "a"),))
    with pytest.raises(InvalidInstance):
        PcpInstance(("a",), ())
    with pytest.raises(InvalidInstance):
        PcpInstance(("a",), (("a", "ab"),))
    with pytest.raises(InvalidInstance):
        PcpInstance(("a", "#"), (("a", "a"),))


def test_encoded_prefix_shape():
    phi = encode_pcp(EXAMPLE)
    assert phi.prefix == ((FORALL, "pi"), (EXISTS, "pis"), (EXISTS, "pip"))
    assert classify(phi) == ForallExists(0)


def test_encoded_formula_mentions_required_clauses():
    text = render(encode_pcp(EXAMPLE))
    # solution trace starts with a dotted pair of equal symbols
    assert "p_da_da_pis" in text
    assert "p_db_db_pis" in text
    # synchronous termination of the solution trace
    assert "U (G p_hash_hash_pis)" in text
    # every trace eventually ends with hash pairs
    assert "F (G p_hash_hash_pi)" in text


def test_encoded_formula_refused_by_solver():
    result = hyper_sat(encode_pcp(EXAMPLE))
    assert isinstance(result, UnsupportedFragment)
    assert isinstance(result.fragment, ForallExists)


def test_solution_traceset_reproduces_known_chain():
    got = encode_solution_traceset(EXAMPLE, [3, 2, 3, 1])
    expected = TraceSet(
        frozenset(
            {
                pair_trace(
                    ("db", "db"), ("b", "b"), ("a", "da"), ("da", "a"),
                    ("b", "db"), ("db", "b"), ("b", "db"), ("a", "a"),
                    ("da", "a"),
                ),
                pair_trace(
                    ("da", "da"), ("b", "a"), ("db", "db"), ("b", "b"),
                    ("a", "db"), ("da", "a"), ("hash", "a"),
                ),
                pair_trace(
                    ("db", "db"), ("b", "b"), ("a", "db"), ("da", "a"),
                    ("hash", "a"),
                ),
                pair_trace(("da", "db"), ("hash", "a"), ("hash", "a")),
                pair_trace(),
            }
        )
    )
    assert got == expected


def test_solution_traceset_satisfies_encoded_formula():
    model = encode_solution_traceset(EXAMPLE, [3, 2, 3, 1])
    assert evaluate_hyperltl(model, encode_pcp(EXAMPLE))


def test_single_stone_instance():
    inst = PcpInstance(("a",), (("a", "a"),))
    model = encode_solution_traceset(inst, [1])
    assert model == TraceSet(
        frozenset({pair_trace(("da", "da")), pair_trace()})
    )
    assert evaluate_hyperltl(model, encode_pcp(inst))


def test_length_mismatch_is_not_a_solution():
    inst = PcpInstance(("a", "b"), (("a", "b"),))
    with pytest.raises(NotASolution):
        encode_solution_traceset(inst, [1])
    with pytest.raises(NotASolution):
        encode_solution_traceset(EXAMPLE, [1])


def test_solution_indices_validated():
    with pytest.raises(InvalidInstance):
        encode_solution_traceset(EXAMPLE, [])
    with pytest.raises(InvalidInstance):
        encode_solution_traceset(EXAMPLE, [0])
    with pytest.raises(InvalidInstance):
        encode_solution_traceset(EXAMPLE, [4])


def test_singleton_discipline_in_constructed_traces():
    model = encode_solution_traceset(EXAMPLE, [3, 2, 3, 1])
    for trace in model:
        for valuation in (*trace.stem, *trace.loop):
            assert len(valuation) == 1


def test_another_known_solution_round_trips():
    # stones (ab, a), (b, bb): indices (1, 2) give abb on both sides
    inst = PcpInstance(("a", "b"), (("ab", "a"), ("b", "bb")))
    model = encode_solution_traceset(inst, [1, 2])
    assert evaluate_hyperltl(model, encode_pcp(inst))


def test_parse_instance_json():
    inst = parse_instance(
        json.dumps(
            {"alphabet": ["a", "b"],
             "stones": [["a", "baa"], ["ab", "aa"], ["bba", "bb"]]}
        )
    )
    assert inst == EXAMPLE


def test_parse_instance_errors():
    with pytest.raises(InvalidInstance):
        parse_instance("not json")
    with pytest.raises(InvalidInstance):
        parse_instance(json.dumps({"alphabet": ["a"]}))
    with pytest.raises(InvalidInstance):
        parse_instance(json.dumps({"alphabet": "ab", "stones": []}))


def test_parse_solution_json():
    assert parse_solution(json.dumps({"indices": [3, 2, 3, 1]})) == [3, 2, 3, 1]
    with pytest.raises(InvalidInstance):
        parse_solution(json.dumps({"indices": "321"}))
    with pytest.raises(InvalidInstance):
        parse_solution("[]")
