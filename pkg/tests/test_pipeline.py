import json

import pytest
from click.testing import CliRunner

from kapcheck.cycletuples import S12
from kapcheck.pipeline import (
    EXIT_MATCH,
    EXIT_MISMATCH,
    EXIT_UNDECIDED,
    CaseRecord,
    RunReport,
    classify_cases,
    cli,
    cycle_cases,
    format_ledger,
    ledger_diff,
    parse_ledger,
    realize_row,
    reproduce,
)


@pytest.fixture(scope="module")
def triangle_cases():
    return cycle_cases(S12, 3)[:12]


def test_record_round_trip():
    rec = CaseRecord("c1", "[1,x,1,x,1,x]", ("xxx",), "Torsion", "abc.json", "rules=1", "-")
    assert CaseRecord.parse(rec.line()) == rec
    with pytest.raises(ValueError):
        CaseRecord("c\t1", "t", (), "Torsion").line()


def test_ledger_is_deterministic(tmp_path, triangle_cases):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    classify_cases(triangle_cases, out=a)
    classify_cases(triangle_cases, out=b)
    assert a.read_bytes() == b.read_bytes()
    certs = list((tmp_path / "a.tsv.certs").iterdir())
    assert certs and all(json.loads(c.read_text())["kind"] != "Inconclusive" for c in certs)


def test_interrupted_ledger_resumes_to_identical_file(tmp_path, triangle_cases):
    full = tmp_path / "full.tsv"
    classify_cases(triangle_cases, out=full)
    part = tmp_path / "part.tsv"
    lines = full.read_text().splitlines()
    part.write_text("\n".join(lines[:6]) + "\n" + lines[6][:10])
    (tmp_path / "part.tsv.certs").mkdir()
    for c in (tmp_path / "full.tsv.certs").iterdir():
        (tmp_path / "part.tsv.certs" / c.name).write_text(c.read_text())
    run = classify_cases(triangle_cases, out=part)
    assert part.read_bytes() == full.read_bytes()
    assert all(run.verified.values())


def test_strict_parse_rejects_truncated_lines():
    text = format_ledger([CaseRecord("c1", "t", ("xx",), "Torsion")]) + "c2\tbroken"
    with pytest.raises(ValueError):
        parse_ledger(text)
    assert len(parse_ledger(text, strict=False)) == 1


def test_diff_ignores_rotation_and_inversion():
    a = [CaseRecord("c1", "t", ("xyX",), "Abelian")]
    b = [CaseRecord("c1", "t", ("xYX",), "Abelian")]
    c = [CaseRecord("c1", "t", ("yXx",), "Torsion")]
    assert ledger_diff(a, b) == []
    fields = {d.field for d in ledger_diff(a, c)}
    assert fields == {"verdict"}
    assert {d.field for d in ledger_diff(a, [])} == {"missing"}


def test_row_realization():
    assert realize_row([frozenset({0, 1}), frozenset({0})], [1, 1]) == [1, 0]
    assert realize_row([frozenset({0}), frozenset({0})], [1, 1]) is None
    assert realize_row([frozenset(), frozenset({2})], [0, 0, 1]) == [None, 2]


def test_report_exit_codes():
    rep = RunReport("x", 1)
    rep.compare("a", 1, 1)
    assert rep.exit_code == EXIT_MATCH
    rep.undecided.append("case")
    assert rep.exit_code == EXIT_UNDECIDED
    rep.compare("b", 1, 2)
    assert rep.exit_code == EXIT_MISMATCH


def test_unknown_table_id():
    with pytest.raises(KeyError):
        reproduce("no-such-table")


def test_cli_tables_reproduce_matches(tmp_path):
    out = tmp_path / "report.json"
    res = CliRunner().invoke(cli, ["--out", str(out), "tables", "reproduce", "example-c10"])
    assert res.exit_code == EXIT_MATCH, res.output
    assert json.loads(out.read_text())[0]["status"] == "match"


def test_cli_classify_reports_undecided(tmp_path):
    out = tmp_path / "l.tsv"
    args = ["--budget-steps", "300", "--out", str(out), "cycles", "classify", "--regime", "S12", "-n", "3"]
    res = CliRunner().invoke(cli, args)
    assert res.exit_code == EXIT_UNDECIDED
    assert len(parse_ledger(out.read_text())) == 126


def test_cli_diff_exit_codes(tmp_path):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    a.write_text(format_ledger([CaseRecord("c1", "t", ("xx",), "Torsion")]))
    b.write_text(format_ledger([CaseRecord("c1", "t", ("xx",), "Abelian")]))
    runner = CliRunner()
    assert runner.invoke(cli, ["tables", "diff", str(a), str(a)]).exit_code == EXIT_MATCH
    assert runner.invoke(cli, ["tables", "diff", str(a), str(b)]).exit_code == EXIT_MISMATCH


def test_cli_algebra_verify():
    res = CliRunner().invoke(
        cli, ["algebra", "verify", "2; cyclic:10; g0+g1+g4+g9", "2; cyclic:10; g0+g2+g4+g6+g8"]
    )
    assert res.exit_code == EXIT_MATCH, res.output
    assert "degree formula: holds" in res.output


def test_cli_forbid_multicycle():
    res = CliRunner().invoke(cli, ["forbid", "run", "multicycle(3)", "--regime", "S10"])
    assert res.exit_code == EXIT_MATCH, res.output
    assert "Forbidden" in res.output


def test_cli_graph_commands():
    runner = CliRunner()
    res = runner.invoke(cli, ["graphs", "regular", "-n", "7"])
    assert res.exit_code == 0
    assert len([ln for ln in res.output.splitlines() if ln and not ln.startswith("#")]) == 2
    res = runner.invoke(cli, ["graphs", "degseq", "4,4,4,4,4"])
    assert res.exit_code == 0
