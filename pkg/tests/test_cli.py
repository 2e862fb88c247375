import io
import json
import subprocess
import sys

import pytest

from antichain_search.cli import main, run


def call(*argv):
    out = io.StringIO()
    status = run(list(argv), out=out)
    return status, json.loads(out.getvalue())


def test_build():
    status, doc = call("nonadaptive", "build", "--n", "5", "--k", "2")
    assert status == 0
    assert doc["schema_version"] == 1
    assert doc["command"] == "nonadaptive build"
    assert doc["size"] == doc["h"] == 14


def test_verify_and_confusion():
    status, doc = call("nonadaptive", "verify", "--n", "4", "--k", "2")
    assert status == 0 and doc["identifying"] is True
    family = json.dumps({"n": 3, "sets": [[1], [2], [3], [1, 2]]})
    status, doc = call("nonadaptive", "verify", "--n", "3", "--k", "2", "--family", family)
    assert doc["identifying"] is False and len(doc["confusion_pair"]) == 2
    status, doc = call("adversary", "confusion", "--n", "3", "--k", "2", "--family", family)
    assert doc["pair"] is not None


def test_decode_from_hidden_and_answers():
    hidden = json.dumps({"n": 3, "sets": [[2]]})
    status, doc = call("nonadaptive", "decode", "--n", "3", "--k", "1", "--hidden", hidden)
    assert status == 0 and doc["answers"] == [True, False, True]
    assert doc["decoded"] == {"n": 3, "sets": [[2]]}
    status, doc = call("nonadaptive", "decode", "--n", "3", "--k", "1", "--answers", "[true, false, true]")
    assert doc["decoded"]["sets"] == [[2]]


def test_decode_inconsistent_is_contract_error():
    status, doc = call("nonadaptive", "decode", "--n", "4", "--k", "2", "--answers", json.dumps([False] * 9))
    assert status == 1 and doc["error_kind"] == "DecodeError"


def test_solve():
    status, doc = call("adaptive", "solve", "--n", "6", "--k", "2", "--random", "--seed", "3")
    assert status == 0 and doc["ok"] is True
    assert doc["bound_kind"] == "bruteforce-g"
    assert doc["found"] == doc["hidden"]
    status, doc = call("adaptive", "solve", "--n", "10", "--k", "3", "--random", "--seed", "1")
    assert doc["ok"] is True and doc["bound_kind"] == "realized-mc"


def test_solve_k2_and_exact_f():
    status, doc = call("adaptive", "solve-k2", "--n", "12", "--random")
    assert status == 0 and doc["queries_used"] <= 24 and doc["ok"]
    status, doc = call("adaptive", "exact-f", "--n", "3", "--k", "2")
    assert doc["f"] == 5 and doc["antichains"] == 9 and doc["information_bound"] == 4


def test_exact_f_budget_is_resource_error():
    status, doc = call("adaptive", "exact-f", "--n", "4", "--k", "3", "--budget", "10")
    assert status == 2
    assert doc["error_kind"] == "ResourceError"
    assert set(doc["bounds"]) == {"lower", "upper", "nodes"}


def test_adversary_play():
    status, doc = call("adversary", "play", "--n", "7", "--k", "3")
    assert status == 0 and doc["ok"] and doc["queries_used"] >= doc["lower_bound"] == 11
    status, doc = call("adversary", "play", "--n", "5", "--strategy", "k2-counting")
    assert doc["ok"] and doc["lower_bound"] == 9


def test_certificate():
    status, doc = call("adversary", "certificate-k2", "--n", "12", "--size", "11")
    assert doc["holds"] and doc["threshold"] == 2**22
    status, doc = call("adversary", "certificate-k2", "--n", "5", "--size", "4")
    assert status == 1


def test_comb_commands():
    status, doc = call("comb", "g", "--n", "5", "--m", "2")
    assert (doc["g_bruteforce"], doc["g_formula"], doc["equal"]) == (6, 6, True)
    status, doc = call("comb", "mc", "--family", json.dumps({"n": 4, "sets": [[1, 2], [3, 4]]}))
    assert doc["size"] == 4
    status, doc = call("comb", "count-antichains", "--n", "4")
    assert doc["A"] == doc["enumerated"] == 55
    status, doc = call("comb", "exact-h", "--n", "3", "--k", "2")
    assert doc["h"] == doc["h_formula"] == 5


def test_regime_and_resource_exit_codes():
    assert call("nonadaptive", "build", "--n", "6", "--k", "8")[0] == 1
    assert call("comb", "exact-h", "--n", "5", "--k", "2")[0] == 2


def test_usage_errors(capsys):
    assert main(["nonadaptive", "build", "--n", "3"]) == 64
    assert main(["bogus"]) == 64
    assert main(["comb", "mc", "--family", "{not json"]) == 64


def test_determinism():
    argv = ["adaptive", "solve", "--n", "9", "--k", "4", "--random", "--seed", "7"]
    first, second = io.StringIO(), io.StringIO()
    run(argv, out=first)
    run(argv, out=second)
    assert first.getvalue() == second.getvalue()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "antichain_search", "comb", "count-antichains", "--n", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["A"] == 9


@pytest.mark.parametrize("argv", [
    ["nonadaptive", "build", "--n", "4", "--k", "3"],
    ["comb", "g", "--n", "4", "--m", "2"],
    ["adversary", "certificate-k2", "--n", "6", "--size", "5"],
])
def test_every_document_has_schema_version(argv):
    assert call(*argv)[1]["schema_version"] == 1
