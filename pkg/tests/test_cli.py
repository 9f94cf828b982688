import json

import pytest

from conic_partitions import LineSet
from conic_partitions.cli import RunConfig, UsageError, execute, main, run_lemmas
from conic_partitions.errors import UnsupportedField


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_lemmas_q7(capsys):
    code, rep = _run(["--p", "7", "--command", "lemmas"], capsys)
    assert code == 0 and rep["passed"]
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["pencil.character_matrix_rank"]["observed"] == 2
    assert by_name["pencil.internal_subfamily_size"]["observed"] == [1]


def test_lemmas_q9_gates(capsys):
    code, rep = _run(["--p", "3", "--h", "2", "--command", "lemmas"], capsys)
    assert code == 0
    skipped = {c["name"]: c["reason"] for c in rep["checks"] if c["skipped"]}
    assert skipped["pencil.character_matrix_rank"] == "q = 1 mod 4"
    assert "pencil.internal_subfamily_size" in skipped


def test_q4_unsupported(capsys):
    with pytest.raises(UnsupportedField):
        run_lemmas(RunConfig(p=2, h=2, command="lemmas"))
    assert main(["--p", "2", "--h", "2"]) == 2


@pytest.mark.parametrize("argv,orbits", [
    (["--p", "5"], 2),
    (["--p", "3", "--h", "2"], 3),
    (["--p", "7", "--mode", "cover", "--size", "6"], 2),
])
def test_full_exit_zero(argv, orbits, capsys):
    code, rep = _run(argv + ["--command", "full"], capsys)
    assert code == 0
    assert rep["payload"]["orbits"]["orbit_count"] == orbits
    assert all(c["pass"] for c in rep["checks"])


def test_full_q3_fails(capsys):
    code, rep = _run(["--p", "3", "--command", "full"], capsys)
    assert code == 1
    census = next(c for c in rep["checks"] if c["name"] == "full.orbit_census")
    assert "Unknown" in census["observed"]


@pytest.mark.parametrize("argv", [
    ["--p", "7", "--command", "bogus"],
    ["--p", "7", "--size", "3", "--command", "full"],
    ["--p", "7", "--threads", "0"],
    ["--p", "17", "--command", "full"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_budget_exit(capsys):
    assert main(["--p", "7", "--command", "search", "--node-budget", "5"]) == 3


def test_report_deterministic_across_threads(capsys):
    _, a = _run(["--p", "7", "--command", "full"], capsys)
    _, b = _run(["--p", "7", "--command", "full", "--threads", "2"], capsys)
    assert a == b


def test_report_schema_and_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["--p", "5", "--command", "construct", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert {"artifact", "version", "schema_version", "config", "field", "checks", "payload",
            "passed"} <= set(rep)
    for item in rep["payload"]["constructions"]:
        L = LineSet.from_json(item["lineset"])
        assert item["lineset"]["line_ids"] == list(L.line_ids)
        assert item["verification"]["is_exact_partition"]


def test_search_dump_contains_instance(capsys):
    code, rep = _run(["--p", "3", "--command", "search"], capsys)
    assert code == 0
    assert len(rep["payload"]["instance"]["columns"]) == 3
    assert rep["payload"]["solutions"]["size_counts"] == {"2": 6, "3": 8}


def test_execute_validates():
    with pytest.raises(UsageError):
        execute(RunConfig(p=7, command="construct", mode="cover"))


def test_timings_flag(capsys):
    _, rep = _run(["--p", "5", "--command", "classify", "--timings"], capsys)
    assert "search" in rep["timings"]
