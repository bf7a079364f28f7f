import json

import pytest

from ordersums.bounds import CheckId, Verdict, sweep
from ordersums.cli import GroupSpecError, main, parse_group_spec
from ordersums.abelian import from_cyclic_factors, cyclic_group
from ordersums.records import CSV_COLUMNS, from_json, read_csv_rows, to_csv, to_json
from ordersums.registry import Registry, load_registry


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "spec, orders",
    [("6,2", [6, 2]), ("Z6xZ2", [6, 2]), ("Z6 x Z2", [6, 2]), (" z4 X z4 ", [4, 4]), ("12", [12])],
)
def test_parse_group_spec(spec, orders):
    assert parse_group_spec(spec) == from_cyclic_factors(orders)


def test_parse_cyclic_spec():
    assert parse_group_spec("cyclic:360") == cyclic_group(360)
    assert parse_group_spec("cyclic:1") == cyclic_group(1)


@pytest.mark.parametrize(
    "spec, position",
    [("Z6 x Z2 x", 9), ("6,a", 2), ("6,1", 2), ("Z6 + Z2", 3), ("cyclic:x", 7), ("", 0)],
)
def test_parse_group_spec_errors_carry_position(spec, position):
    with pytest.raises(GroupSpecError) as info:
        parse_group_spec(spec)
    assert info.value.position == position


def test_compute_golden(capsys):
    code, out, _ = run(capsys, "compute", "6,2")
    assert code == 0
    assert out.splitlines() == [
        "group: 2:[1,1];3:[1]",
        "invariant factors: Z6 x Z2",
        "order: 12",
        "cyclic: false",
        "m=25/6 (~4.16667)",
        "psi=49",
        "distribution={1:1,2:3,3:2,6:6}",
        "oracle: agrees",
    ]


def test_compute_small_cases(capsys):
    _, out, _ = run(capsys, "compute", "cyclic:1")
    assert "m=1 " in out
    _, out, _ = run(capsys, "compute", "2,2")
    assert "m=5/2 " in out
    _, out, _ = run(capsys, "compute", "1000,1000", "--oracle-cap", "10")
    assert "oracle: skipped" in out


def test_compute_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "compute", "6,,2")
    assert code == 2 and "position 2" in err


@pytest.mark.parametrize("n, rows", [(12, 2), (16, 5), (1, 1)])
def test_enumerate_row_counts(capsys, n, rows):
    code, out, _ = run(capsys, "enumerate", str(n), "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "signature,invariant_factors,m,cyclic"
    assert len(lines) == rows + 1


def test_enumerate_trivial_row(capsys):
    _, out, _ = run(capsys, "enumerate", "1", "--format", "json")
    assert json.loads(out) == [{"signature": "1", "invariant_factors": "Z1", "m": "1", "cyclic": "true"}]


def test_enumerate_cap_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", str(2**10), "--cap", "5")
    assert code == 3 and "cap" in err


def test_extremal_rows(capsys):
    _, out, _ = run(capsys, "extremal", "4..4", "--format", "json")
    (row,) = json.loads(out)
    assert (row["group"], row["ratio"], row["bound"], row["tight"]) == ("2:[1,1]", "5/4", "5/4", "true")
    _, out, _ = run(capsys, "extremal", "8..8", "--format", "json")
    (row,) = json.loads(out)
    assert (row["invariant_factors"], row["ratio"], row["bound"], row["tight"]) == ("Z4 x Z2", "7/5", "6/5", "false")
    _, out, _ = run(capsys, "extremal", "15..15", "--format", "json")
    (row,) = json.loads(out)
    assert row["status"] == "vacuous" and row["group"] == ""


def test_verify_main_csv(capsys, tmp_path):
    path = tmp_path / "main.csv"
    code, _, err = run(capsys, "verify", "--checks", "main", "--range", "2..100", "--format", "csv",
                       "--out", str(path))
    assert code == 0
    rows = read_csv_rows(path.read_text())
    assert len(rows) == 99
    assert all(r["check_id"] == "MAIN" and r["holds"] in ("true", "vacuous") for r in rows)
    assert "MAIN: holds=" in err
    assert path.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)


def test_verify_registered_failure_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "sqrt", "--range", "9..9")
    assert code == 0
    assert out.splitlines()[1] == "9,0,9,SQRT,441/1,324/1,false,false,,117/1"


def test_verify_unregistered_failure_exits_one(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps(Registry().to_dict()))
    code, _, err = run(capsys, "verify", "--checks", "sqrt", "--range", "9..9",
                       "--expected-failures", str(empty))
    assert code == 1 and "unexpected failure: n=9 SQRT" in err


def test_verify_beyond_registry_coverage_is_unexpected(capsys):
    # SHARPNESS fails for every t >= 3; the shipped registry stops at 10^4
    code, _, _ = run(capsys, "verify", "--checks", "sharpness", "--range", "10008..10008")
    assert code == 1


def test_verify_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--checks", "main", "--range", "0..0"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--checks", "bogus", "--range", "2..3"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--range", "5..3"])
    assert info.value.code == 2


def test_verify_cap_error_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "main", "--range", "1024..1024", "--cap", "3")
    assert code == 3
    assert ",error," in out


def test_json_round_trip(capsys, tmp_path):
    path = tmp_path / "all.json"
    code, _, _ = run(capsys, "verify", "--checks", "all", "--range", "1..200", "--format", "json",
                     "--out", str(path))
    assert code == 0
    assert from_json(path.read_text()) == sweep(1, 200, list(CheckId))


def test_json_fraction_shape():
    (r,) = sweep(8, 8, [CheckId.MAIN])
    (d,) = json.loads(to_json([r]))
    assert d["lhs"] == ["7", "5"] and d["rhs"] == ["6", "5"] and d["gap"] == ["1", "5"]
    assert d["holds"] is True and d["witness"] == "2:[2,1]"


def test_csv_encodes_every_verdict():
    reports = sweep(1, 30, list(CheckId))
    rows = read_csv_rows(to_csv(reports))
    tokens = {"holds": "true", "fails": "false", "vacuous": "vacuous", "n/a": "n/a", "error": "error"}
    for r, row in zip(reports, rows):
        assert row["holds"] == tokens[r.verdict.value]
        assert int(row["n"]) == r.n and row["check_id"] == r.check_id.value
    assert {r.verdict for r in reports} >= {Verdict.HOLDS, Verdict.FAILS, Verdict.VACUOUS,
                                           Verdict.NOT_APPLICABLE}


def test_output_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "verify", "--checks", "all", "--range", "2..300", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_shipped_registry_loads():
    reg = load_registry()
    assert reg.covers(CheckId.SQRT, 10**5)
    assert reg.failures[CheckId.SQRT] == {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 18, 20, 21, 24, 30}
    assert reg.failures[CheckId.MAIN] == frozenset()


def test_registry_subcommand(capsys, tmp_path):
    path = tmp_path / "reg.json"
    code, _, _ = run(capsys, "registry", "--limit", "100", "--out", str(path))
    assert code == 0
    reg = load_registry(path)
    assert reg.ranges[CheckId.SQRT] == (1, 100)
    assert reg.failures[CheckId.SHARPNESS] == {n for n in range(1, 101) if n % 8 == 0}
