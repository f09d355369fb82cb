import io
import json
import subprocess
import sys

import pytest

from bicoarse.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def plain(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return out.splitlines()


def envelope(*argv):
    code, out, err = call("--json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_documented_examples():
    assert plain("norm", "abAAB") == ["3"]
    assert plain("dist", "ab", "ab") == ["0"]
    assert plain("z", "len", "24", "--set", "factorials:6", "--exclude", "24", "--cap", "5") == ["4"]


def test_certificate_output():
    lines = plain("norm", "abAAB", "--certificate")
    assert lines[0] == "3"
    assert json.loads(lines[1]) == {"deleted": [1, 3, 4], "matching": [[0, 2]]}


def test_envelope_shape():
    env = envelope("norm", "abAB")
    assert set(env) == {"cmd", "rank", "result", "meta"}
    assert env["cmd"] == "norm" and env["rank"] == 2 and env["result"] == {"norm": 2}
    assert envelope("--rank", "3", "norm", "abc")["rank"] == 3
    assert envelope("norm", "abc", "--rank", "3")["result"] == {"norm": 3}


ROUND_TRIP = [
    (("norm", "abAABabAAB"), lambda r: [str(r["norm"])]),
    (("dist", "ab", "ba"), lambda r: [str(r["distance"])]),
    (("moves", "abAAB", "1"), lambda r: [str(r["distance"])]),
    (("qm", "eval", "ababab", "--spec", '{"brooks":"ab"}'), lambda r: [r["value"]]),
    (("qm", "homog", "b", "--spec", '{"hom":{"a":"-1","b":"8/5"}}'),
     lambda r: [r["estimate"], r["error_bound"]]),
    (("qm", "defect", "--spec", '{"rolli":{"1":1,"2":5}}', "--radius", "2"), lambda r: [r["value"]]),
    (("qm", "modulus", "--spec", '{"brooks":"ab"}', "--radius", "3"), lambda r: r["rho"]),
    (("hs", "replace", "aab", "--rule", '{"w1":"aab","w2":"aBab"}'), lambda r: [r["image"]]),
    (("hs", "wobble", "ab", "--rule", '{"v":"ab","sigma":{"1":2,"2":1}}'), lambda r: [r["image"], r["raw"]]),
    (("hs", "local", "ababab", "--rule", '{"k":2,"table":{"ab":"a","BA":"A"},"target_rank":1}'),
     lambda r: [r["image"]]),
    (("z", "window", "--set", "1", "--N", "5", "--m", "4"),
     lambda r: [str(r["ok"]).lower(), " ".join(map(str, r["failures"]))]),
    (("z", "profinite", "--Q", "2,3", "--q", "5", "--steps", "2"), lambda r: [k["value"] for k in r["k"]]),
    (("lab", "u", "5"), lambda r: [r["u"]]),
    (("lab", "phi", "ab"), lambda r: [r["phi"], str(r["in_strip"]).lower()]),
    (("lab", "defect", "ab", "aab"), lambda r: [str(r["defect"])]),
    (("lab", "search", "--n", "1", "--cap", "4"), lambda r: [json.dumps(x) for x in r]),
]


@pytest.mark.parametrize("argv,derive", ROUND_TRIP, ids=[" ".join(a[:2]) for a, _ in ROUND_TRIP])
def test_plain_and_json_agree(argv, derive):
    assert derive(envelope(*argv)["result"]) == plain(*argv)


def test_audit_lines():
    lines = plain("audit", "--preset", "perturbed", "--radius", "3")
    assert lines == ["assoc 0", "unit 1", "inverse 1", "abelian 0", "rho 0 1 2 3"]
    env = envelope("audit", "--preset", "f2-cancel", "--radius", "1")
    assert env["result"]["abelian"] == {"value": 2, "witness": ["a", "b"]}


def test_moves_geodesic_json():
    lines = plain("moves", "ab", "ba", "--emit-geodesic")
    assert lines[0] == "2"
    assert json.loads(lines[1])["end"] == "ba"
    assert plain("moves", "aaaa", "1", "--cap", "3") == ["unreached"]


def test_domain_errors_exit_1():
    code, out, err = call("norm", "abx")
    assert code == 1 and "InvalidCharacter" in err
    code, out, _ = call("--json", "norm", "abx")
    assert code == 1
    env = json.loads(out)
    assert env["result"] is None and env["error"]["error"] == "InvalidCharacter"
    assert env["error"]["position"] == 2
    assert call("z", "profinite", "--Q", "5", "--q", "5")[0] == 1
    assert call("hs", "replace", "aba", "--rule", '{"w1":"aba","w2":"abba"}')[0] == 1
    assert call("z", "factorial", "9")[0] == 1


def test_usage_errors_exit_2():
    assert call()[0] == 2
    assert call("bogus")[0] == 2
    assert call("norm")[0] == 2
    assert call("lab", "defect", "ab")[0] == 2
    assert call("qm", "eval", "--spec", '{"brooks":"ab"}')[0] == 2
    assert call("z", "len", "5")[0] == 2


@pytest.mark.parametrize("argv", [
    ("qm", "eval", "ab", "--spec", "brooks:ab"),
    ("qm", "eval", "ab", "--spec", '{"hom": {"a": "zz"}}'),
    ("hs", "replace", "ab", "--rule", '{"w1": "aab"}'),
    ("hs", "wobble", "ab", "--rule", "[1, 2]"),
])
def test_malformed_specs_are_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and "--" in err


def test_deterministic_output():
    argv = ("--json", "lab", "search", "--n", "2", "--cap", "6", "--D", "2")
    assert call(*argv) == call(*argv)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "bicoarse", "norm", "abAAB"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "3"
    out = subprocess.run([sys.executable, "-m", "bicoarse", "frobnicate"], capture_output=True, text=True)
    assert out.returncode == 2
