import json
import logging

import pytest

from khtorsion.cli import RunConfig, UsageError, main

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "3_1", "--coeffs", "Z,Z2")
    assert code == 0
    assert "H over Z\n" in out and "H over Z2" in out and "1₂" in out


def test_compute_json_is_deterministic(capsys):
    first = run(capsys, "compute", "--pd", TREFOIL, "--coeffs", "Z", "--coeffs", "Z4", "--format", "json")
    second = run(capsys, "compute", "--pd", TREFOIL, "--coeffs", "Z", "--coeffs", "Z4", "--format", "json")
    assert first == second
    obj = json.loads(first[1])
    assert [t["ring"] for t in obj["tables"]] == ["Z", "Z4"]


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--knot", "3_1", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["knot"] == "3_1"
    assert rep["lemma19"] == "pass" and rep["theorem7"] == "pass" and rep["euler"] == "pass"
    assert rep["pages"]["turner"] == [6, 2, 2, 2]
    assert rep["pages"]["bockstein"] == [6, 4, 4]
    assert rep["ranks"] == {"dT_star": 2, "beta": 1, "nu_star": rep["ranks"]["nu_star"]}


def test_verify_unknot_pages(capsys):
    code, out, _ = run(capsys, "verify", "--knot", "unknot", "--checks", "pages")
    assert code == 0
    assert "turner=2,2,2,2" in out and "B-collapse=1" in out


def test_verify_batch_with_jobs(capsys):
    code, out, _ = run(capsys, "verify", "--max-crossings", "4", "--checks", "lemma19,euler", "--jobs", "2")
    assert code == 0
    assert out.strip().endswith("0 failing")
    assert "4_1" in out and "5_1" not in out


def test_classify_and_jones(capsys):
    code, out, _ = run(capsys, "classify", "--knot", "8_19")
    assert code == 0 and "QH-thick" in out
    code, out, _ = run(capsys, "jones", "--knot", "4_1", "--format", "json")
    assert json.loads(out)["abs_reduced_at_i"] == 5


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--max-crossings", "3")
    assert code == 0
    assert out.split()[0] == "0_1" and "3_1" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--knot", "no_such_knot"],
        ["compute"],
        ["compute", "--pd", "PD[X(1,2,3)]"],
        ["compute", "--knot", "3_1", "--coeffs", "Z6"],
        ["verify", "--knot", "3_1", "--checks", "bogus"],
        ["compute", "--knot", "3_1", "--pd", TREFOIL],
        ["compute", "--knot", "9_1", "--max-crossings", "8"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_stretch_gate():
    with pytest.raises(UsageError):
        from khtorsion.cli import _records

        big = "PD[" + ",".join(f"X({2*k+1},{2*k+2},{2*k+2},{2*k+1})" for k in range(13)) + "]"
        _records(RunConfig("compute", pd=big))


def test_cache_round_trip(tmp_path, capsys):
    args = ("compute", "--knot", "4_1", "--coeffs", "Z", "--cache", str(tmp_path), "--format", "json")
    first = run(capsys, *args)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    second = run(capsys, *args)
    assert first == second


def test_cache_write_failure_only_warns(tmp_path, capsys, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with caplog.at_level(logging.WARNING, logger="khtorsion"):
        code, out, _ = run(capsys, "compute", "--knot", "3_1", "--cache", str(blocker / "sub"))
    assert code == 0 and "H over Z" in out
    assert any("could not write cache" in r.message for r in caplog.records)


def test_verification_failure_exits_one(monkeypatch, capsys):
    import khtorsion.cli as cli

    monkeypatch.setattr(cli, "verify_record", lambda rec, checks, cache=None: {
        "knot": rec.name, "lemma19": "fail", "theorem7": None, "euler": None, "pages": None, "ranks": None,
    })
    code, out, _ = run(capsys, "verify", "--knot", "3_1", "--checks", "lemma19")
    assert code == 1 and "lemma19=fail" in out
