import csv
import subprocess
import sys

import numpy as np
import pytest

from tvsplit.cli import main
from tvsplit.errors import GridMismatch, NoExactSolution
from tvsplit.harness import (
    ConvergenceRow,
    RunConfig,
    convergence_study,
    density_error_norms,
    error_norms,
    read_table_csv,
    run_simulation,
    write_snapshot_csv,
    write_table_csv,
)
from tvsplit.operator import Field, Grid, make_field
from tvsplit.state import GasParams, Primitive


def _uniform_field(nx=8, dx_len=1.0, rho=1.0):
    grid = Grid(nx=nx, xmin=0.0, xmax=dx_len)
    gas = GasParams(1.4)
    return make_field(
        grid,
        lambda x: Primitive(rho=np.full_like(x, rho), u=np.zeros_like(x), p=np.ones_like(x)),
        gas,
    ), gas


def test_error_norms_identical_and_offset():
    f, _ = _uniform_field(10)
    same = f.copy()
    assert error_norms(f, same) == (0.0, 0.0)
    off = f.copy()
    off.U[0] += 0.25
    l1, linf = error_norms(off, f)
    assert l1 == pytest.approx(10 * 0.1 * 0.25)
    assert linf == pytest.approx(0.25)


def test_error_norms_grid_mismatch():
    f, _ = _uniform_field(10)
    g, _ = _uniform_field(20)
    with pytest.raises(GridMismatch):
        error_norms(f, g)


def test_zero_span_run_returns_initial_data():
    res = run_simulation(RunConfig(problem="ex1", order=2, nx=64, t_final=0.0))
    assert res.steps == 0
    l1, linf = density_error_norms(res)
    assert l1 == 0.0 and linf == 0.0


def test_convergence_requires_exact_solution():
    with pytest.raises(NoExactSolution):
        convergence_study(RunConfig(problem="ex3", order=1), meshes=(50, 100))


def test_convergence_single_mesh_has_empty_rates():
    tables = convergence_study(RunConfig(problem="ex1", order=1, t_final=0.01), meshes=(50,))
    rows = tables[1]
    assert len(rows) == 1
    assert rows[0].rate_l1 is None and rows[0].rate_linf is None


def test_rate_formula_reproduces_reference_table():
    # error columns with known dyadic decay must give back the planted rates
    errs = [4.93e-3, 2.49e-3, 1.25e-3, 6.27e-4]
    rates = [np.log2(errs[i] / errs[i + 1]) for i in range(3)]
    assert rates[0] == pytest.approx(0.985, abs=0.01)
    assert rates[1] == pytest.approx(0.994, abs=0.01)
    assert rates[2] == pytest.approx(0.996, abs=0.01)
    errs5 = [1.33e-7, 4.40e-9, 1.42e-10, 4.55e-12]
    rates5 = [np.log2(errs5[i] / errs5[i + 1]) for i in range(3)]
    for got, want in zip(rates5, (4.92, 4.95, 4.96)):
        assert got == pytest.approx(want, abs=0.01)


def test_snapshot_csv_round_trip_1d(tmp_path):
    res = run_simulation(RunConfig(problem="ex1", order=1, nx=2, t_final=0.0))
    path = tmp_path / "snap.csv"
    write_snapshot_csv(res.field, res.gas, str(path))
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "rho", "u", "p", "E"]
    assert len(rows) == 3  # header + 2 cells
    # 17 significant digits survive the round trip bit-for-bit
    x0 = float(rows[1][0])
    assert x0 == res.field.grid.x_centers()[0]
    rho0 = float(rows[1][1])
    assert rho0 == res.field.interior[0, 0]


def test_snapshot_csv_2d_schema(tmp_path):
    res = run_simulation(RunConfig(problem="ex8", order=1, nx=4, ny=4, t_final=0.0))
    path = tmp_path / "snap2d.csv"
    write_snapshot_csv(res.field, res.gas, str(path))
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "y", "rho", "u", "v", "p", "E"]
    assert len(rows) == 17
    # row-major: x varies slowest
    assert float(rows[1][0]) == float(rows[2][0])
    assert float(rows[1][1]) != float(rows[2][1])


def test_table_csv_round_trip(tmp_path):
    rows = [
        ConvergenceRow("100", 4.93e-3, 3.87e-3, None, None, 0.41),
        ConvergenceRow("200", 2.49e-3, 1.95e-3, 0.9851234567890123, 0.984, 0.007),
    ]
    path = tmp_path / "table.csv"
    write_table_csv(rows, str(path))
    back = read_table_csv(str(path))
    assert back[0].rate_l1 is None
    assert back[1].rate_l1 == rows[1].rate_l1
    assert back[1].error_l1 == rows[1].error_l1
    with open(path) as fh:
        header = fh.readline().strip()
    assert header == "mesh,error_l1,rate_l1,error_linf,rate_linf,wall_time"


def test_cli_run_and_exit_codes(tmp_path, capsys):
    out = tmp_path / "out.csv"
    code = main(["run", "--problem", "ex1", "--order", "2", "--nx", "50", "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "L1 =" in capsys.readouterr().out

    assert main(["run", "--problem", "nope"]) == 2
    # blast wave at order 5 on an absurdly coarse mesh dies -> solver error
    code = main(["run", "--problem", "ex1", "--order", "1", "--nx", "10", "--t-final", "-1"])
    assert code == 2


def test_cli_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "tvsplit", "run"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_cli_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "job.cfg"
    cfg.write_text(
        """
        # smooth advection, tiny run
        problem = ex1
        order = 3
        nx = 32
        t_final = 0.01
        """
    )
    code = main(["run", "--config", str(cfg), "--order", "1"])
    assert code == 0
    assert "order 1" in capsys.readouterr().out


def test_cli_converge_writes_tables(tmp_path):
    out = tmp_path / "conv.csv"
    code = main(
        [
            "converge", "--problem", "ex1", "--orders", "1,2", "--meshes", "32,64",
            "--t-final", "0.01", "--out", str(out),
        ]
    )
    assert code == 0
    t1 = read_table_csv(str(tmp_path / "conv_order1.csv"))
    t2 = read_table_csv(str(tmp_path / "conv_order2.csv"))
    assert len(t1) == 2 and len(t2) == 2
    assert t2[1].error_l1 < t1[1].error_l1


def test_cli_diagonal_slice(tmp_path):
    out = tmp_path / "diag.csv"
    code = main(
        ["run", "--problem", "ex8", "--nx", "16", "--order", "1", "--t-final", "0.01",
         "--diagonal-out", str(out)]
    )
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "rho", "u", "p", "E"]
    assert len(rows) == 17


def test_cli_snapshots(tmp_path):
    out = tmp_path / "run.csv"
    code = main(
        ["run", "--problem", "ex1", "--order", "1", "--nx", "32", "--t-final", "0.02",
         "--snapshots", "0.01", "--out", str(out)]
    )
    assert code == 0
    assert out.exists()
    assert (tmp_path / "run_t0.01.csv").exists()


def test_identical_configs_are_bit_identical():
    cfg = RunConfig(problem="ex3", order=5, nx=100, t_final=0.5)
    r1 = run_simulation(cfg)
    r2 = run_simulation(cfg)
    assert np.array_equal(r1.field.U, r2.field.U)
    assert r1.steps == r2.steps


def test_converge_parallel_meshes_match_sequential(monkeypatch):
    cfg = RunConfig(problem="ex1", order=2, t_final=0.01)
    monkeypatch.setenv("EULER_THREADS", "2")
    par = convergence_study(cfg, meshes=(32, 64))
    monkeypatch.setenv("EULER_THREADS", "0")
    seq = convergence_study(cfg, meshes=(32, 64))
    for a, b in zip(par[2], seq[2]):
        assert a.error_l1 == b.error_l1 and a.error_linf == b.error_linf


def test_unwritable_output_raises_io_failure(tmp_path):
    from tvsplit.errors import IoFailure

    res = run_simulation(RunConfig(problem="ex1", order=1, nx=8, t_final=0.0))
    with pytest.raises(IoFailure):
        write_snapshot_csv(res.field, res.gas, str(tmp_path / "no" / "dir" / "x.csv"))
