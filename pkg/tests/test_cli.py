import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalcove.cli import CaseSpec, CaseSpecError, main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


# --- case specs ----------------------------------------------------------------------------

ROOTS = ["a1", "a2", "a1+a2", "-a1"]

specs = st.builds(
    CaseSpec,
    types=st.lists(st.sampled_from(["A2", "B2", "C2", "G2", "A3"]), min_size=1, max_size=3,
                   unique=True).map(tuple),
    lam=st.one_of(st.none(), st.lists(st.integers(-9, 9), min_size=1, max_size=4).map(tuple)),
    w=st.one_of(st.just("all"), st.just("e"),
                st.lists(st.integers(1, 4), min_size=1, max_size=6).map(
                    lambda ix: "".join(f"s{i}" for i in ix))),
    order=st.one_of(st.none(), st.lists(st.sampled_from(ROOTS), min_size=1, max_size=4).map(tuple)),
    fmt=st.sampled_from(["markdown", "json", "dot"]),
    truncate=st.integers(0, 20),
    sweep=st.one_of(st.none(), st.tuples(st.integers(-5, 0), st.integers(0, 5))),
    cap=st.integers(0, 99),
)


@settings(max_examples=200)
@given(specs)
def test_case_spec_round_trip(spec):
    text = spec.format()
    assert CaseSpec.parse(text) == spec
    assert CaseSpec.parse(text).format() == text


def test_case_spec_defaults_and_words():
    spec = CaseSpec.parse("A2/-1,2/s1 s2")
    assert spec.lam == (-1, 2) and spec.w == "s1s2"
    assert spec.format() == "A2/-1,2/s1s2;order=auto;format=markdown;N=0;sweep=none;cap=24"
    assert CaseSpec.parse("A2/-1,2/1 2 1").w == "s1s2s1"
    assert CaseSpec.parse("A2/*").lam is None


@pytest.mark.parametrize("text,position", [("A2/-1,x/s1", 6), ("Q2/1,1", 0), ("A2/1,1/s1;N", 10),
                                           ("A2/1,1/s1;sweep=1-2", 16), ("A2/1,1/s1;bogus=3", 10)])
def test_case_spec_errors_carry_position(text, position):
    with pytest.raises(CaseSpecError) as info:
        CaseSpec.parse(text)
    assert info.value.position == position


# --- tables ---------------------------------------------------------------------------------

def test_table_admissible(capsys):
    status, out, _ = run(capsys, "table", "admissible", "--type", "A2", "--lambda", "-1,2",
                         "--w", "s1")
    lines = out.splitlines()
    assert status == 0
    assert lines[0] == "| A | end(A) | down(A) | wt(A) | height(A) |"
    assert len(lines) == 14
    assert "| {1, 3} | s1 | a^2 | 0 | 1 |" in lines
    assert "| {1, 3, 4} | e | a^1+a^2 | 0 | 1 |" in lines


def test_table_forgetful(capsys):
    status, out, _ = run(capsys, "table", "forgetful", "--case", "A2/-1,2/s1")
    assert "| {2, 3, 4} | ((s1s2s1, s2s1; s2s1; 0, 1/2, 1), s1s2) |" in out.splitlines()


def test_table_image_and_all_w(capsys):
    status, out, _ = run(capsys, "table", "image", "--case", "A2/-1,2/s1")
    assert "| (s1; ; 0, 1) | ○ | s1, e |" in out.splitlines()
    status, out, _ = run(capsys, "table", "admissible", "--case", "A2/-1,2/all")
    assert out.count("### w = ") == 6


def test_table_stats_zero_weight(capsys):
    status, out, _ = run(capsys, "table", "stats", "--type", "A2", "--lambda", "0,0", "--w", "s1")
    assert out.splitlines()[2:] == ["| {} | 0 | 0 |"]


def test_table_json(capsys):
    status, out, _ = run(capsys, "table", "admissible", "--case", "A2/-1,2/s1", "--format", "json")
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 12
    assert records[5] == {"A": [1, 3], "down": [0, 1], "end": "s1", "height": 1, "n": 0,
                          "w": "s1", "wt": ["0", "0"]}


def test_user_order_file(tmp_path, capsys):
    path = tmp_path / "order.txt"
    path.write_text("a1 < a1+a2 < a2\n")
    _, auto, _ = run(capsys, "table", "forgetful", "--case", "A2/-1,2/s1")
    _, given_, _ = run(capsys, "table", "forgetful", "--case", "A2/-1,2/s1", "--order", str(path))
    assert auto == given_
    path.write_text("a2 < a1+a2 < a1\n")
    status, _, err = run(capsys, "table", "forgetful", "--case", "A2/-1,2/s1", "--order", str(path))
    assert status == 2 and "not compatible" in err


# --- enumerations -------------------------------------------------------------------------

def test_enumerate_iqls(capsys):
    status, out, _ = run(capsys, "enumerate", "iqls", "--type", "A2", "--lambda", "-1,3",
                         "--format", "json")
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 36
    assert set(records[0]) == {"x", "y", "sigma", "wt", "nega"}


def test_enumerate_chain(capsys):
    status, out, _ = run(capsys, "enumerate", "chain", "--type", "A2", "--lambda", "-1,2",
                         "--format", "json")
    got = [(tuple(r["root"]), r["level"]) for r in map(json.loads, out.splitlines())]
    assert got == [((0, 1), 0), ((1, 1), 0), ((0, 1), 1), ((-1, 0), 1)]


def test_enumerate_inversions_zero(capsys):
    status, out, _ = run(capsys, "enumerate", "inversions", "--type", "A2", "--lambda", "0,0",
                         "--format", "json")
    assert status == 0 and out == ""


def test_enumerate_qbg_formats(capsys):
    _, dot, _ = run(capsys, "enumerate", "qbg", "--type", "A2", "--format", "dot")
    assert dot.startswith('digraph "QBG(A2)"')
    _, js, _ = run(capsys, "enumerate", "qbg", "--type", "A2", "--format", "json")
    assert len(js.splitlines()) == len([line for line in dot.splitlines() if "->" in line])
    status, _, err = run(capsys, "enumerate", "iqls", "--type", "A2", "--lambda", "1,1",
                         "--format", "dot")
    assert status == 2


# --- verify and series -----------------------------------------------------------------------

def test_verify_single_case(capsys):
    status, out, _ = run(capsys, "verify", "--case", "A2/-1,2/s1")
    report = json.loads(out)
    assert status == 0 and report["ok"]
    assert report["identity"][0]["lhs_terms"] == report["identity"][0]["rhs_terms"] == 12


def test_verify_sweep_a2(capsys):
    status, out, _ = run(capsys, "verify", "--type", "A2", "--sweep", "-2..2")
    report = json.loads(out)
    assert status == 0 and report["ok"] and report["shapes"] == 25
    assert report["failures"] == {}


def test_verify_empty_sweep(capsys):
    status, out, _ = run(capsys, "verify", "--type", "A2", "--sweep", "1..0")
    assert status == 0 and json.loads(out)["shapes"] == 0


def test_verify_cap_skips(capsys):
    status, out, _ = run(capsys, "verify", "--case", "A2/-1,2/s1", "--cap", "3")
    report = json.loads(out)
    assert status == 0 and report["skipped"] == [{"type": "A2", "lambda": [-1, 2], "inv": 4}]


def test_verify_reports_failure(capsys):
    status, out, _ = run(capsys, "verify", "--type", "G2", "--lambda", "-2,2", "--w", "e")
    assert status == 1 and not json.loads(out)["ok"]
    status, out, _ = run(capsys, "verify", "--type", "G2", "--lambda", "-2,2", "--w", "e",
                         "--relaxed-y")
    assert status == 0


def test_series(capsys):
    status, out, _ = run(capsys, "series", "--case", "A2/-1,2/s1", "--xi", "0,0",
                         "--truncate-par", "1")
    entries = json.loads(out)
    assert len(entries) == 24
    status, out, _ = run(capsys, "series", "--type", "A2", "--lambda", "0,0", "--w", "e")
    assert json.loads(out) == [{"chi": [[], []], "gch_index": {"direction": "e",
                                "translation": [0, 0]}, "q_exponent": "0", "sign": 1,
                                "weight": ["0", "0"]}]


@pytest.mark.parametrize("argv,needle", [
    (["table", "admissible", "--type", "A2"], "--lambda"),
    (["table", "admissible", "--lambda", "1,1"], "--type"),
    (["table", "admissible", "--type", "A2", "--lambda", "1,1,1"], "2 coefficients"),
    (["series", "--type", "A2", "--lambda", "1,1", "--xi", "1"], "xi needs"),
    (["table", "admissible", "--type", "A2", "--lambda", "1,1", "--w", "s1 x"], "Weyl group word"),
])
def test_errors_exit_two(capsys, argv, needle):
    status, out, err = run(capsys, *argv)
    assert status == 2 and out == "" and needle in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qalcove", "enumerate", "chain", "--type", "A2",
                           "--lambda", "-1,2"], capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[0] == "| k | root | level | d |"
