import pytest

from ria_sim.cli import OutputTable, _parse_db_grid, _parse_float_list, cmd_bounds, format_float, main


def run_main(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------- plumbing


def test_float_format_is_nine_significant_digits():
    assert format_float(0.545454545454546) == "0.545454545"
    assert format_float(0.5) == "0.5"
    assert format_float(2000.0) == "2000"
    assert format_float(1.0 / 3.0) == "0.333333333"


def test_db_grid_parsing():
    assert _parse_db_grid("5:40:5", "--snr-db") == tuple(float(v) for v in range(5, 45, 5))
    assert _parse_db_grid("40,60", "--snr-db") == (40.0, 60.0)
    assert _parse_db_grid("10:10:5", "--snr-db") == (10.0,)
    with pytest.raises(ValueError):
        _parse_db_grid("40:10:5", "--snr-db")
    with pytest.raises(ValueError):
        _parse_db_grid("1:2", "--snr-db")
    with pytest.raises(ValueError):
        _parse_float_list("", "--epsilon")
    with pytest.raises(ValueError):
        _parse_float_list("a,b", "--epsilon")


def test_csv_round_trip_is_byte_identical():
    table = cmd_bounds(2, 10, 1.0)
    text = table.to_csv()
    assert OutputTable.from_csv(text).to_csv() == text


# ------------------------------------------------------------------ bounds


def test_bounds_row_k3():
    table = cmd_bounds(3, 3, 1.0)
    assert table.header == (
        "K", "thm1_inner", "thm1_outer", "tdma", "ghasemi_inner", "ghasemi_outer", "abdoli_inner",
    )
    assert table.rows == [
        ("3", "0.5", "0.545454545", "0.333333333", "0.428571429", "0.714285714", "0.387096774")
    ]


def test_bounds_k1_row():
    table = cmd_bounds(1, 1, 0.7)
    assert table.rows == [("1", "1", "1", "1", "", "", "")]


def test_bounds_reference_cells_limited_to_published_range():
    table = cmd_bounds(9, 12, 1.0)
    by_k = {row[0]: row for row in table.rows}
    assert by_k["10"][4] != ""
    assert by_k["11"][4:] == ("", "", "")
    assert by_k["12"][1] == format_float(2.0 / 13.0)


def test_bounds_crossover_column_identity():
    table = cmd_bounds(2, 10, 0.5)
    for row in table.rows:
        assert row[1] == row[3]  # inner bound at eps = 1/2 equals TDMA


def test_bounds_output_is_pure():
    assert cmd_bounds(2, 10, 1.0) == cmd_bounds(2, 10, 1.0)


def test_bounds_cli_and_usage_error(capsys):
    code, out = run_main(["bounds", "--kmin", "3", "--kmax", "3"], capsys)
    assert code == 0
    assert out.splitlines()[1] == "3,0.5,0.545454545,0.333333333,0.428571429,0.714285714,0.387096774"
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--kmin", "5", "--kmax", "2"])
    assert exc.value.code == 2


# ---------------------------------------------------------------- simulate


def test_simulate_grid_and_determinism(tmp_path, capsys):
    args = [
        "simulate", "--users", "3", "--snr-db", "10,20", "--epsilon", "1",
        "--trials", "8", "--seed", "3",
    ]
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(args + ["--output", str(out_a)]) == 0
    assert main(args + ["--output", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()

    text = out_a.read_text()
    table = OutputTable.from_csv(text)
    assert table.header == ("scheme", "K", "epsilon", "snr_db", "trials", "mean_rate", "outage10", "std_err")
    assert [row[0] for row in table.rows] == ["ria", "ria", "tdma", "tdma"]
    assert [row[3] for row in table.rows[:2]] == ["10", "20"]
    assert all(row[4] == "8" for row in table.rows)


def test_simulate_dof_table_appended(capsys):
    code, out = run_main(
        [
            "simulate", "--snr-db", "40,60", "--epsilon", "0.5,1", "--trials", "60",
            "--seed", "2", "--dof", "--dof-anchors", "40,60",
        ],
        capsys,
    )
    assert code == 0
    blocks = out.split("\n\n")
    assert len(blocks) == 2
    main_table = OutputTable.from_csv(blocks[0])
    slope_table = OutputTable.from_csv(blocks[1])
    assert len(main_table.rows) == 8
    assert slope_table.header == ("scheme", "K", "epsilon", "snr_lo_db", "snr_hi_db", "dof")
    assert len(slope_table.rows) == 4
    slopes = {(r[0], r[2]): float(r[5]) for r in slope_table.rows}
    assert slopes[("ria", "1")] == pytest.approx(0.5, abs=0.08)
    assert slopes[("ria", "0.5")] == pytest.approx(slopes[("tdma", "0.5")], abs=0.08)


def test_simulate_scheme_subset(capsys):
    code, out = run_main(
        ["simulate", "--snr-db", "10", "--epsilon", "1", "--trials", "5", "--schemes", "tdma"],
        capsys,
    )
    assert code == 0
    table = OutputTable.from_csv(out)
    assert [row[0] for row in table.rows] == ["tdma"]


def test_simulate_usage_errors():
    for bad in (
        ["simulate", "--epsilon", ""],
        ["simulate", "--epsilon", "1.5"],
        ["simulate", "--snr-db", "40:10:5"],
        ["simulate", "--trials", "0"],
        ["simulate", "--schemes", "zf"],
        ["simulate", "--schemes", "ria,zf"],
        ["simulate", "--schemes", ""],
        ["simulate", "--dof", "--dof-anchors", "40"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(bad)
        assert exc.value.code == 2


# ------------------------------------------------------------------ outage


def test_outage_grid_and_flat_baseline(capsys):
    code, out = run_main(
        [
            "outage", "--snr-db", "10,20", "--epsilon", "0.1,0.5,1",
            "--trials", "40", "--seed", "9",
        ],
        capsys,
    )
    assert code == 0
    table = OutputTable.from_csv(out)
    assert table.header == ("scheme", "K", "epsilon", "snr_db", "outage10")
    assert len(table.rows) == 2 * 3 * 2
    tdma_by_snr = {}
    for row in table.rows:
        if row[0] == "tdma":
            tdma_by_snr.setdefault(row[3], set()).add(row[4])
    assert all(len(v) == 1 for v in tdma_by_snr.values())


def test_outage_empty_epsilon_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["outage", "--epsilon", ""])
    assert exc.value.code == 2


def test_output_io_failure_returns_nonzero(capsys):
    code = main(
        ["bounds", "--kmin", "2", "--kmax", "3", "--output", "/nonexistent-dir/x.csv"]
    )
    assert code == 1
    assert "cannot write" in capsys.readouterr().err
