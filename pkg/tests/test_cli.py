"""Command-line surface and exit codes."""

import json

import pytest
from click.testing import CliRunner

from pairspec import dsl
from pairspec.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def sb_file(tmp_path, sb):
    path = tmp_path / "sb.json"
    path.write_text(dsl.serialize(dsl.pair_to_file(sb)))
    return str(path)


def test_validate(runner, sb_file):
    res = runner.invoke(main, ["validate", sb_file])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["valid"] and out["n"] == 3
    assert out["property_n"]["e"] == "e"
    assert out["classification"]["e_final"] is True


def test_validate_rejects_broken_table(runner, tmp_path, sb):
    obj = dsl.pair_to_file(sb).to_json_dict()
    obj["add"][1][1] = "1"
    obj["add"][2][2] = "1"  # breaks associativity/absorption
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    res = runner.invoke(main, ["validate", str(path)])
    assert res.exit_code == 1
    assert "error" in json.loads(res.output)


def test_classify(runner, sb_file):
    res = runner.invoke(main, ["classify", sb_file])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["characteristic"] == [1, 2]
    assert out["kind"] == "first"


def test_congruences(runner, sb_file):
    res = runner.invoke(main, ["congruences", sb_file])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["count"] == 3


def test_congruences_cap_exit(runner, sb_file):
    res = runner.invoke(main, ["congruences", sb_file, "--max", "1"])
    assert res.exit_code == 2


def test_spectrum(runner, sb_file):
    res = runner.invoke(main, ["spectrum", sb_file])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["hspec"] == [1, 2]
    assert out["verdict_spec_iso_ae"]["holds"] is True


def test_spectrum_cap_exit(runner, sb_file):
    res = runner.invoke(main, ["spectrum", sb_file, "--max", "1"])
    assert res.exit_code == 2


def test_verify_all_green(runner, sb_file):
    res = runner.invoke(main, ["verify", sb_file, "--all"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["summary"]["failed"] == 0


def test_verify_single_check(runner, sb_file):
    res = runner.invoke(main, ["verify", sb_file, "--check", "EST"])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert [r["check_id"] for r in out["reports"]] == ["EST"]


def test_verify_exit_three_on_finding(runner, tmp_path, pairs):
    path = tmp_path / "signs_power.json"
    path.write_text(dsl.serialize(dsl.pair_to_file(pairs["power_signs"])))
    res = runner.invoke(main, ["verify", str(path), "--all"])
    assert res.exit_code == 3
    out = json.loads(res.output)
    failed = [r["check_id"] for r in out["reports"] if r["passed"] is False]
    assert failed == ["PRO3C"]


def test_construct_builders(runner, tmp_path, sb_file):
    out_path = tmp_path / "out.json"
    cases = [
        (["construct", "super_boolean"], False),
        (["construct", "supertropical", "--param", "t=c2"], False),
        (["construct", "truncated", "--param", "elements=1,2,3", "--param", "m=3"], False),
        (["construct", "minimal_bipotent", "--param", "t=c2", "--param", "kind=second"], False),
        (["construct", "double", "--base", sb_file], False),
        (["construct", "power_set", "--param", "hyper=krasner"], False),
        (["construct", "hyperpair", "--param", "hyper=signs"], False),
        (["construct", "residue", "--param", "field=5", "--param", "subgroup=1,4"], True),
        (["construct", "function_pair", "--base", sb_file, "--param", "monoid=sat2"], False),
    ]
    for args, is_hyper in cases:
        res = runner.invoke(main, args + ["-o", str(out_path)])
        assert res.exit_code == 0, (args, res.output)
        text = out_path.read_text()
        if is_hyper:
            dsl.build_hyper(dsl.parse_hyper_file(text))
        else:
            pair, _ = dsl.build_pair(dsl.parse_pair_file(text))
            assert pair.n >= 1


def test_construct_to_stdout(runner):
    res = runner.invoke(main, ["construct", "super_boolean"])
    assert res.exit_code == 0
    pf = dsl.parse_pair_file(res.output)
    assert pf.elements == ("0", "1", "e")


def test_quotient_command(runner, tmp_path, sb_file):
    out_path = tmp_path / "q.json"
    res = runner.invoke(main, ["quotient", sb_file, "--gen", "1~e", "-o", str(out_path)])
    assert res.exit_code == 0
    pair, _ = dsl.build_pair(dsl.parse_pair_file(out_path.read_text()))
    assert pair.n == 2


def test_quotient_rejects_unknown_label(runner, sb_file):
    res = runner.invoke(main, ["quotient", sb_file, "--gen", "1~zz"])
    assert res.exit_code == 1


def test_validate_hyper_file(runner, tmp_path):
    res = runner.invoke(main, ["construct", "residue", "--param", "field=5",
                               "--param", "subgroup=1,4", "-o", str(tmp_path / "h.json")])
    assert res.exit_code == 0
    res = runner.invoke(main, ["validate", str(tmp_path / "h.json")])
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["kind"] == "hyperstructure" and out["hypernegation_unique"]


def test_construct_chain_feeds_spectrum(runner, tmp_path):
    res = runner.invoke(main, ["construct", "residue", "--param", "field=3",
                               "--param", "subgroup=1,2", "-o", str(tmp_path / "h.json")])
    assert res.exit_code == 0
    res = runner.invoke(main, ["construct", "power_set", "--base", str(tmp_path / "h.json"),
                               "-o", str(tmp_path / "p.json")])
    assert res.exit_code == 0
    res = runner.invoke(main, ["spectrum", str(tmp_path / "p.json")])
    assert res.exit_code == 0
