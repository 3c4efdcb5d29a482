import io
import json
import subprocess
import sys

import pytest

from fcw.cli import main


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_reduce_defining_relation():
    assert run("reduce", "-g", "Xi0", "t0^-1 b t0") == (0, "c^-1 b c\n")


def test_member_with_witness():
    code, text = run("member", "-g", "Xi3", "-s", "L", "--witness", "c^-3 b c^3")
    assert code == 0
    assert text.splitlines()[0] == "Yes"
    code, text = run("member", "-g", "Xi3", "-s", "L", "c^-2 b c^2")
    assert (code, text) == (0, "No\n")


def test_member_unknown_exits_2():
    code, text = run("member", "-g", "KJ2", "-s", "LJ", "u b")
    assert code == 2 and text.startswith("Unknown")


def test_verify_command():
    code, text = run("verify", "lemma43", "--r", "2", "--samples", "300", "--seed", "42")
    data = json.loads(text)
    assert code == 0 and data["pass"] == 300 and data["fail"] == 0


def test_verify_failure_exits_3():
    code, text = run("verify", "remark48", "--A", "b;c", "--samples", "10")
    assert code == 3 and json.loads(text)["fail"] == 10


def test_check_reports_errors(tmp_path, monkeypatch):
    bad = tmp_path / "bad.fcw"
    bad.write_text("group F = free(a)\nsub A = subgroup(F; q)\n")
    assert run("check", str(bad))[0] == 1
    good = tmp_path / "good.fcw"
    good.write_bytes(b"group F = free(a, b)\r\nsub A = subgroup(F; a b, b^2)\r\n"
                     b"sub B = subgroup(F; a, b^2)\r\n")
    assert run("check", str(good)) == (0, "ok: 1 groups, 2 subgroups, 0 isomorphisms\n")
    code, text = run("intersect", "-w", str(good), "-g", "F", "A", "B")
    assert code == 0 and text.splitlines()[0] == "rank 2"
    code, text = run("dot", "-w", str(good), "-g", "F", "-s", "A")
    assert text.startswith("digraph A {")
    assert run("check", "-", stdin="group F = free(a)\n", monkeypatch=monkeypatch)[0] == 0


def test_gadget_outputs():
    code, text = run("gadget", "xi", "--m", "3")
    assert code == 0 and "group Xi3 = hnn(G; t3 : BC -> Bt3 by xi3" in text
    code, text = run("gadget", "example54", "--m", "2", "--emit", "json")
    data = json.loads(text)
    assert len(data["relators"]) == 14 and len(data["subgroups"]["LJ"]) == 4
    code, text = run("gadget", "example54", "--m", "0", "--emit", "dot")
    assert text.startswith("digraph scheme")


@pytest.mark.parametrize("m", ["0", "2"])
def test_emitted_dsl_pipes_into_check(m):
    emit = subprocess.run([sys.executable, "-m", "fcw.cli", "gadget", "example54", "--m", m,
                           "--emit", "dsl"], capture_output=True, text=True, check=True)
    chk = subprocess.run([sys.executable, "-m", "fcw.cli", "check", "-"], input=emit.stdout,
                         capture_output=True, text=True)
    assert chk.returncode == 0, chk.stderr
    assert chk.stdout.startswith("ok:")


def test_unknown_group_is_an_error():
    assert run("reduce", "-g", "Nope", "b")[0] == 1
