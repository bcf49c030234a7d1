"""File format: parsing, canonical serialization, and round trips."""

import json

import pytest

from pairspec import catalog, dsl
from pairspec.core import validate_negation_map
from pairspec.errors import (
    DimensionMismatch,
    DslSyntaxError,
    DuplicateLabel,
    TNotCentral,
    UnknownLabel,
)


def _sb_text(sb):
    return dsl.serialize(dsl.pair_to_file(sb))


def test_round_trip_is_identity_on_catalog(pairs):
    for name, p in pairs.items():
        text = dsl.serialize(dsl.pair_to_file(p))
        again = dsl.serialize(dsl.parse_pair_file(text))
        assert again == text, name
        rebuilt, _ = dsl.build_pair(dsl.parse_pair_file(again))
        assert rebuilt.names == p.names, name
        assert (rebuilt.add == p.add).all() and (rebuilt.mul == p.mul).all(), name
        assert rebuilt.tangible == p.tangible and rebuilt.a_zero == p.a_zero, name


def test_hyper_round_trip():
    for name, builder in catalog.NAMED_HYPERSTRUCTURES.items():
        h = builder()
        text = dsl.serialize(dsl.hyper_to_file(h))
        again = dsl.serialize(dsl.parse_hyper_file(text))
        assert again == text, name
        rebuilt = dsl.build_hyper(dsl.parse_hyper_file(text))
        assert rebuilt.names == h.names, name
        assert all(
            rebuilt.hyperadd_set(i, j) == h.hyperadd_set(i, j)
            for i in range(h.n) for j in range(h.n)
        ), name


def test_serialize_deterministic(sb):
    assert _sb_text(sb) == _sb_text(sb)


def test_syntax_error_carries_position():
    with pytest.raises(DslSyntaxError) as exc:
        dsl.parse_pair_file("{\n  \"name\": oops\n}")
    assert exc.value.line == 2


def test_top_level_must_be_object():
    with pytest.raises(DslSyntaxError):
        dsl.parse_pair_file("[1, 2]")


def test_duplicate_label(sb):
    obj = dsl.pair_to_file(sb).to_json_dict()
    obj["elements"] = ["0", "1", "1"]
    with pytest.raises(DuplicateLabel):
        dsl.parse_pair_file(json.dumps(obj))


def test_unknown_label_in_a0(sb):
    obj = dsl.pair_to_file(sb).to_json_dict()
    obj["a0"] = ["0", "ghost"]
    with pytest.raises(UnknownLabel) as exc:
        dsl.parse_pair_file(json.dumps(obj))
    assert exc.value.witness == ("ghost",)


def test_wrong_row_length(sb):
    obj = dsl.pair_to_file(sb).to_json_dict()
    obj["add"] = [row[:-1] for row in obj["add"]]
    with pytest.raises(DimensionMismatch):
        dsl.parse_pair_file(json.dumps(obj))


def test_negation_round_trip(sb):
    nm = validate_negation_map(sb, [0, 1, 2])
    pf = dsl.pair_to_file(sb, nm)
    text = dsl.serialize(pf)
    parsed = dsl.parse_pair_file(text)
    pair, negation = dsl.build_pair(parsed)
    assert negation is not None and negation.perm == (0, 1, 2)


def test_semantic_errors_surface_at_build(sb):
    obj = dsl.pair_to_file(sb).to_json_dict()
    obj["mul"][2][1] = "1"  # e * 1 stops respecting the unit law
    pf = dsl.parse_pair_file(json.dumps(obj))
    with pytest.raises(TNotCentral):
        dsl.build_pair(pf)


def test_is_hyper_text(sb):
    assert not dsl.is_hyper_text(_sb_text(sb))
    h = catalog.krasner_hyperfield()
    assert dsl.is_hyper_text(dsl.serialize(dsl.hyper_to_file(h)))
