from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from frobtrace.cli import main
from frobtrace.fixtures import fixture_ids, verify_builtin
from frobtrace.session import Options, Session, SessionError, run_session, split_statements


def run(argv, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "frobtrace", *argv], input=stdin, capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_documented_examples():
    assert run_session("ring p=2 vars=x,y,z; h = z^2+x*y*z+x*y^2+x^2*y; fedder h") == "F-pure: true\n"
    assert run_session("ring p=2 vars=x; frobroot ideal(x^2) e=1") == "⟨x⟩\n"
    assert run_session("") == ""


def test_statement_splitting():
    assert split_statements("a = 1; b = 2 # c\n\n# only\nshow a") == [(1, "a = 1"), (1, "b = 2"), (4, "show a")]


@pytest.mark.parametrize(
    "script, code",
    [
        ("ring p=4 vars=x", 2),
        ("ring p=3 vars=x\nf = x +* 1", 2),
        ("ring p=3 vars=x\nbogus x", 2),
        ("ring p=3 vars=x\nkeyof 1/2[x] e=1\nkeyof 1/4[x] e=1", 1),
        ("ring p=5 vars=x,y,z\ngb ideal(x^3*y+y*z^2+1,y^3*x+x*z,z^3*y+x*y-2,x*y*z-1)", 3),
    ],
)
def test_exit_codes(script, code):
    argv = ["--step-cap", "5", "run", "-c", script] if code == 3 else ["run", "-c", script]
    rc, _, err = run(argv)
    assert rc == code
    assert "line " in err


def test_error_line_numbers():
    s = Session()
    with pytest.raises(SessionError) as info:
        s.run("ring p=3 vars=x\n\nnf x ideal(y)")
    assert info.value.line == 3


def test_stdin_file_and_json(tmp_path):
    script = "ring p=3 vars=x\nfactor x^3-x\ndiv 1/2[x]\n"
    rc, out, _ = run(["run"], stdin=script)
    assert rc == 0 and out == "(x) * (x + 1) * (x + 2)\n1/2[x]\n"
    path = tmp_path / "s.session"
    path.write_text(script)
    rc, out2, _ = run(["--json", "run", str(path)])
    rows = [json.loads(line) for line in out2.splitlines()]
    assert [r["output"] for r in rows] == out.splitlines()
    assert [r["line"] for r in rows] == [2, 3]


def test_default_ring_flags():
    assert run_session("nf x^3 x^2-y", Options(p=3, vars="x,y")) == "x*y\n"
    assert run_session("gb ideal(x^2-y,y^2)", Options(p=3, vars="x,y", order="lex")) == "⟨x^2 + 2*y, y^2⟩\n"


def test_replay_determinism():
    src = resources.files("frobtrace").joinpath("docs", "examples", "nottame1.session").read_text()
    runs = {run_session(src, Options(seed=s)) for s in range(3)}
    assert len(runs) == 1


def test_extension_session():
    script = """
    ring R p=3 vars=y
    ring S p=3 vars=x
    E = ext monogenic base=R g=T^2-y total=S map T->x y->x^2
    tracematrix E
    tame E
    use R
    transpose E y^2
    """
    out = run_session(script).splitlines()
    assert out[:2] == ["[2, 0]", "[0, 2*y]"]
    assert out[2] == "[y] -> [x]: index 2, tame"
    assert out[3:] == ["exists: true", "key: x^2", "delta: 1[x]"]


def test_every_fixture_passes():
    summary = verify_builtin("all")
    assert summary.all_passed, "\n".join(summary.lines)
    assert set(summary.results) == set(fixture_ids())
    assert {"y-x2", "nottame1", "nocommute", "nonoptimal", "artin-d4", "transform-family"} <= set(fixture_ids())


def test_verify_cli():
    rc, out, _ = run(["verify", "artin-d4"])
    assert rc == 0
    assert out.splitlines()[-1] == "total: 6/6 PASS"
    rc, _, err = run(["verify", "nope"])
    assert rc == 1 and "unknown fixture" in err
    assert main(["list"]) == 0


def test_oracle_script_agrees_with_fixtures():
    oracle = Path(str(resources.files("frobtrace").joinpath("docs", "examples", "oracle.py")))
    proc = subprocess.run([sys.executable, str(oracle), "--check"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout


def test_every_check_is_tagged():
    for fid in fixture_ids():
        src = resources.files("frobtrace").joinpath("docs", "examples", f"{fid}.session").read_text()
        for line in src.splitlines():
            if line.startswith("check "):
                assert line.rstrip().rsplit("@", 1)[1] in ("literature", "oracle", "direct"), line
