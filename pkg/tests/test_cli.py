import io
import json

import pytest

from clpart.cli import parse_int_list, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_lambda_example():
    code, out, _ = call("lambda", "--family", "gl", "--n", "2", "--q", "2", "--partition", "1,1")
    assert code == 0
    assert out.strip() == '{"partition":[1,1],"value":"1/6"}'


def test_parity_mismatch_is_usage_error():
    code, out, err = call("lambda", "--family", "o-odd", "--n", "1", "--q", "2", "--partition", "-")
    assert code == 2 and out == ""
    assert "--q" in err


def test_unknown_flag_rejected(capsys):
    code, _, _ = call("tv", "--family", "gl", "--n", "1", "--q", "2", "--bogus")
    assert code == 2


def test_bad_partition_names_flag():
    code, _, err = call("aut", "--family", "sp", "--q", "2", "--partition", "1")
    assert code == 2 and "--partition" in err


def test_verify_bounds_grid():
    code, out, _ = call("verify-bounds", "--family", "gl", "--n", "1..4", "--q", "2,3")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 8
    assert {r["verdict"] for r in rows} == {"contained"}
    assert set(rows[0]["tv"]) == {"lo", "hi", "decimal_hint"}


def test_distribution_csv():
    code, out, _ = call("distribution", "--family", "gl", "--n", "2", "--q", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,q,partition,value"
    assert 'gl,2,2,"1,1",1/6' in lines


def test_tv_both_methods():
    code, out, _ = call("tv", "--family", "gl", "--n", "1", "--q", "2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["method"] for r in rows] == ["proposition", "direct"]
    assert rows[0]["tv"]["decimal_hint"].startswith("0.7112119049")


def test_identities_command():
    code, out, _ = call("identities", "--q", "2,3", "--which", "eul-1,sto-sp", "--degree", "8")
    assert code == 0 and len(out.splitlines()) == 4
    code, _, err = call("identities", "--q", "2", "--which", "eul-9")
    assert code == 2 and "--which" in err


def test_oracle_command_and_budget(monkeypatch):
    code, out, _ = call("oracle", "--family", "gl", "--n", "2", "--q", "2")
    assert code == 0 and json.loads(out)["status"] == "equal"
    monkeypatch.setenv("CLP_MAX_CANDIDATES", "10")
    code, out, _ = call("oracle", "--family", "gl", "--n", "2", "--q", "2")
    assert code == 1 and json.loads(out)["status"] == "excluded"


def test_sample_is_byte_identical():
    args = ("sample", "--family", "sp", "--q", "3", "--count", "40", "--seed", "11")
    first = call(*args)
    assert first == call(*args)
    draws = json.loads(first[1])["draws"]
    assert len(draws) == 40


def test_limit_measure_and_aut():
    code, out, _ = call("aut", "--family", "o-even", "--q", "2", "--partition", "1,1")
    assert json.loads(out)["value"] == "3/2"
    code, out, _ = call("limit-measure", "--family", "gl", "--q", "2", "--partition", "-", "--u", "1/2")
    assert code == 0 and json.loads(out)["u"] == "1/2"


def test_ranges():
    assert parse_int_list("1..3,7") == [1, 2, 3, 7]
    with pytest.raises(ValueError):
        parse_int_list("4..2")
    code, _, err = call("tv", "--family", "gl", "--n", "x", "--q", "2")
    assert code == 2 and "--n" in err
