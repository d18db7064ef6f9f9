import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from coxgal.cli import InputError, JordanTerm, Report, main, parse_document, parse_report, render_machine

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def example(name):
    return str(EXAMPLES / name)


def test_analyze_exit_codes(capsys):
    code, out, _ = run(capsys, "analyze", example("fg_d4.toml"))
    assert code == 0 and "G2 (PinnedFixedPoint(3))" in out
    code, out, _ = run(capsys, "analyze", example("fg_a1_half.toml"))
    assert code == 2 and "group:        undetermined" in out


def test_bad_literal_location(capsys):
    code, _, err = run(capsys, "analyze", example("bad_literal.toml"))
    assert code == 1
    assert "bad_literal.toml:4:15" in err


@pytest.mark.parametrize(
    "text, line, column",
    [
        ('[connection]\ngroup = "A2"\nkind = "fg"\nX = ["0", "1/0"]\n', 4, 15),
        ('[connection]\ngroup = "Q7"\nkind = "fg"\n', 2, 10),
        ('[connection]\ngroup = "A2"\nkind = "fancy"\n', 3, 9),
        ('[connection]\ngroup = "A2"\nkind = "fg"\nX = ["0"]\n', 4, 1),
        ('[connection]\ngroup = "A2"\nkind = "fg"\nX = ["0", "0"\n', 5, None),
    ],
)
def test_document_errors_carry_positions(text, line, column):
    with pytest.raises(InputError) as info:
        parse_document(text, "doc.toml")
    err = info.value
    assert err.line == line
    if column is not None:
        assert err.column == column
    assert str(err).startswith(f"doc.toml:{line}")


def test_machine_round_trip_from_cli(capsys):
    for name in ("fg_d4.toml", "airy_e6.toml", "coxeter_g2.toml", "fg_a1_half.toml"):
        _, out, _ = run(capsys, "analyze", "--format", "machine", example(name))
        rep = parse_report(out)
        assert render_machine(rep) == out


def test_machine_fields(capsys):
    _, out, _ = run(capsys, "analyze", "--format", "machine", example("fg_d4.toml"))
    d = json.loads(out)
    assert d["schema_version"] == 1
    assert d["group"] == {"family": "G", "rank": 2, "realisation": "PinnedFixedPoint(3)"}
    assert d["slope"] == {"num": 1, "den": 6}
    assert d["rigid"] is True and d["connected"] is True
    assert d["local"]["dim_h"] == 2
    assert [t["num"] for t in d["jordan"]["terms"]] == [-1]


terms = st.builds(JordanTerm, st.integers(-30, 0), st.integers(1, 30), st.lists(st.sampled_from(["0", "1", "-1/2", "z3", "2*z3 + 1"]), max_size=4).map(tuple))
reports = st.builds(
    Report,
    st.one_of(st.none(), st.tuples(st.sampled_from("ABCDEFG"), st.integers(1, 8), st.sampled_from(["Self", "PinnedFixedPoint(2)", "PinnedFixedPoint(3)", "ViaD4"]))),
    st.fractions(min_value=Fraction(1, 100), max_value=3),
    st.sampled_from([True, False, None]),
    st.booleans(),
    st.one_of(st.none(), st.integers(0, 8)),
    st.one_of(st.none(), st.integers(1, 30)),
    st.lists(terms, max_size=3).map(tuple),
    st.lists(st.text(max_size=20), max_size=3).map(tuple),
    st.one_of(st.none(), st.integers(0, 248)),
)


@given(reports)
def test_report_round_trip(rep):
    # dim_h and theta_order travel together
    if rep.dim_h is None:
        rep = Report(rep.group, rep.slope, rep.rigid, rep.connected, None, None, rep.jordan, rep.notes, rep.dim_centraliser)
    elif rep.theta_order is None:
        rep = Report(rep.group, rep.slope, rep.rigid, rep.connected, rep.dim_h, 1, rep.jordan, rep.notes, rep.dim_centraliser)
    assert parse_report(render_machine(rep)) == rep


def test_parse_report_rejects_other_schema():
    with pytest.raises(ValueError):
        parse_report(json.dumps({"schema_version": 99}))


def _subprocess(*argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "coxgal", *argv], input=stdin, capture_output=True)


@pytest.mark.parametrize("fmt", ["human", "machine"])
def test_output_is_byte_deterministic(fmt):
    outs = {_subprocess("analyze", "--format", fmt, example("coxeter_g2.toml")).stdout for _ in range(3)}
    assert len(outs) == 1


def test_stdin_input():
    text = (EXAMPLES / "fg_d4.toml").read_bytes()
    res = _subprocess("analyze", "--format", "machine", stdin=text)
    assert res.returncode == 0
    assert json.loads(res.stdout)["group"]["family"] == "G"


def test_jordan_command(capsys):
    code, out, _ = run(capsys, "jordan", "--format", "machine", example("coxeter_a1.toml"))
    d = json.loads(out)
    assert code == 0 and d["slope"] == {"num": 1, "den": 2} and d["local"]["dim_h"] == 1
    code, out, _ = run(capsys, "jordan", example("airy_e6.toml"))
    assert code == 0 and "leading Jordan term" in out
    code, _, err = run(capsys, "jordan", example("fg_d4.toml"))
    assert code == 0


def test_jordan_needs_formal_type(tmp_path, capsys):
    p = tmp_path / "c.toml"
    p.write_text('[connection]\ngroup = "A2"\nkind = "coxeter"\nr = 1\n')
    code, _, err = run(capsys, "jordan", str(p))
    assert code == 1 and "formal_type" in err


def test_moduli_command(capsys):
    code, out, _ = run(capsys, "moduli", example("coxeter_a1.toml"), example("coxeter_a1.toml"))
    assert code == 0 and out.startswith("equivalent")
    code, out, _ = run(capsys, "moduli", "--format", "machine", example("coxeter_a1.toml"), example("coxeter_a1_double.toml"))
    d = json.loads(out)
    assert code == 0 and d["equivalent"] is False and d["k"] is None
    code, _, err = run(capsys, "moduli", example("coxeter_a1.toml"), example("coxeter_g2.toml"))
    assert code == 1


@pytest.mark.parametrize(
    "token, expected",
    [
        ("E6", [("E", 6, "Self"), ("F", 4, "PinnedFixedPoint(2)")]),
        ("D4", [("D", 4, "Self"), ("B", 3, "PinnedFixedPoint(2)"), ("G", 2, "PinnedFixedPoint(3)")]),
        ("B3", [("B", 3, "Self"), ("G", 2, "ViaD4")]),
        ("G2", [("G", 2, "Self")]),
    ],
)
def test_classify_command(capsys, token, expected):
    code, out, _ = run(capsys, "classify", "--format", "machine", token)
    d = json.loads(out)
    assert code == 0 and d["agree"]
    assert [(s["family"], s["rank"], s["realisation"]) for s in d["table"]] == expected


@pytest.mark.parametrize("token", ["H3", "A0", "D3", "E9", "xyz"])
def test_classify_rejects_unsupported(capsys, token):
    code, _, err = run(capsys, "classify", token)
    assert code == 1 and token in err


def test_table_command(capsys):
    code, out, _ = run(capsys, "table", "--max-rank", "4")
    assert code == 0
    lines = out.splitlines()
    assert "E6   E6, F4 [PinnedFixedPoint(2)]" in lines
    assert "B3   B3, G2 [ViaD4]" in lines
    assert not any(line.startswith("A5") for line in lines)
    code, out, _ = run(capsys, "table", "--format", "machine")
    assert code == 0 and len(json.loads(out)["rows"]) == 9 + 8 + 8 + 6 + 5


def test_cli_flags_override_document(capsys, tmp_path):
    p = tmp_path / "e6.toml"
    p.write_text('[connection]\ngroup = "E6"\nkind = "fg"\nX = ["1", "2", "3", "4", "5", "6"]\n')
    code, out, _ = run(capsys, "analyze", "--method", "orbit", "--orbit-bound", "50", str(p))
    assert code == 2 and "orbit infeasible" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/x.toml")
    assert code == 1 and "/nonexistent/x.toml" in err
