import csv
import io
import math

import numpy as np
import pytest
from scipy.linalg import expm

from gllmass.harness.advection import (
    CSV_COLUMNS,
    AdvectionConfig,
    ConfigError,
    DGAdvection,
    InitialCondition,
    run_advection,
)
from gllmass.harness.bench import run_apply_benchmark
from gllmass.harness.cli import main
from gllmass.harness.tables import emit_tables, fmt_real


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def strip_timing(text):
    rows = list(csv.reader(io.StringIO(text)))
    return [r[:-1] for r in rows]


# --- advection -----------------------------------------------------------

def test_config_validation_names_field():
    with pytest.raises(ConfigError) as exc:
        AdvectionConfig(elements=0)
    assert exc.value.field == "elements"
    for field, kwargs in [("degree", {"degree": 0}), ("cfl", {"cfl": -1.0}),
                          ("final_time", {"final_time": 0.0}), ("mass_mode", {"mass_mode": "diag"})]:
        with pytest.raises(ConfigError, match=field):
            AdvectionConfig(**kwargs)
    with pytest.raises(ConfigError, match="initial_condition"):
        InitialCondition.parse("square:1")


def test_time_step_divides_final_time():
    cfg = AdvectionConfig(degree=5, elements=3, cfl=0.3, final_time=1.7)
    dt, steps = cfg.time_step()
    assert dt > 0
    assert dt <= 0.3 * cfg.element_width / 25 + 1e-15
    assert dt * steps == pytest.approx(1.7, rel=1e-14)


def test_sine_n8_accuracy():
    rep = run_advection(AdvectionConfig(degree=8, elements=4, final_time=2.0, mass_mode="exact"))
    assert rep.l2_error <= 1e-6
    assert rep.conservation_defect <= 1e-12
    assert rep.l2_error >= 0 and math.isfinite(rep.linf_error)


@pytest.mark.parametrize("mode", ["exact", "lumped"])
@pytest.mark.parametrize("ic", ["sine:2", "gaussian:0.3"])
def test_zero_wave_speed_is_stationary(mode, ic):
    cfg = AdvectionConfig(degree=6, elements=3, wave_speed=0.0, final_time=0.5, mass_mode=mode, initial_condition=ic)
    solver = DGAdvection(cfg)
    u0 = cfg.initial_condition(solver.x)
    assert np.max(np.abs(solver.rhs(u0))) == 0.0
    rep = run_advection(cfg)
    assert np.max(np.abs(rep.solution - u0)) <= 1e-13
    assert rep.conservation_defect <= 1e-13


@pytest.mark.parametrize("mode", ["exact", "lumped"])
def test_conservation_against_matrix_exponential(mode):
    cfg = AdvectionConfig(degree=4, elements=2, final_time=2.0, cfl=0.05, mass_mode=mode,
                          initial_condition="gaussian:0.4")
    solver = DGAdvection(cfg)
    L = solver.dense_operator()
    u0 = cfg.initial_condition(solver.x)
    exact_time = (expm(L * cfg.final_time) @ u0.ravel(order="F")).reshape(u0.shape, order="F")

    w = np.tile(solver.grid.weights, cfg.elements) * cfg.element_width / 2
    # the exact semidiscrete flow conserves the quadrature integral
    assert abs(w @ exact_time.ravel(order="F") - w @ u0.ravel(order="F")) <= 1e-12
    assert abs(w @ L).max() <= 1e-12

    rep = run_advection(cfg)
    assert np.max(np.abs(rep.solution - exact_time)) <= 1e-8
    assert rep.conservation_defect <= 1e-12


def test_negative_wave_speed():
    rep = run_advection(AdvectionConfig(degree=8, elements=4, wave_speed=-1.0))
    assert rep.l2_error <= 1e-6


def test_upwind_operator_is_dissipative():
    for mode in ["exact", "lumped"]:
        L = DGAdvection(AdvectionConfig(degree=5, elements=3, mass_mode=mode)).dense_operator()
        assert np.max(np.linalg.eigvals(L).real) <= 1e-10


def test_spectral_convergence():
    errs = [run_advection(AdvectionConfig(degree=N, elements=4, cfl=0.05)).l2_error for N in range(4, 11)]
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    assert np.all(ratios >= 10), ratios


def test_report_row_and_dict():
    rep = run_advection(AdvectionConfig(degree=3, elements=2, final_time=0.1))
    row = rep.csv_row()
    assert len(row) == len(CSV_COLUMNS)
    assert row[:3] == ["exact", 3, 2]
    assert rep.as_dict()["config"]["initial_condition"] == "sine:1"


# --- benchmark -----------------------------------------------------------

def test_benchmark_results_agree():
    rows = run_apply_benchmark([8, 64], repeats=5)
    assert [r.N for r in rows] == [8, 64]
    assert all(r.max_abs_diff <= 1e-10 for r in rows)
    assert all(r.rank1_time_ns > 0 and r.dense_time_ns > 0 for r in rows)


def test_benchmark_rejects_bad_sizes():
    with pytest.raises(ValueError):
        run_apply_benchmark([])
    with pytest.raises(ValueError):
        run_apply_benchmark([1, 4])


@pytest.mark.slow
def test_benchmark_growth_slope():
    rows = run_apply_benchmark([512, 1024, 2048, 4096], repeats=100)
    for small, big in zip(rows, rows[1:]):
        dense_growth = big.dense_time_ns / small.dense_time_ns
        rank1_growth = big.rank1_time_ns / small.rank1_time_ns
        assert dense_growth >= 2 * rank1_growth, (small.N, dense_growth, rank1_growth)


# --- tables --------------------------------------------------------------

def test_fmt_real():
    assert fmt_real(2.0) == "2"
    assert fmt_real(2 / 3) == "0.6666666666666666"
    assert fmt_real(-0.0) == "0"
    assert fmt_real(float("nan")) == "nan"


def test_tables_gll():
    text = emit_tables(2, "gll")
    assert "gamma, 2, 0.6666666666666666, 1\n" in text
    text = emit_tables(1, "gll")
    assert "alpha, -0.3333333333333333\n" in text
    assert "beta, 1\n" in text
    assert "mass_inverse, 0, 2, -1\n" in text


def test_tables_gauss():
    text = emit_tables(3, "gauss")
    assert "alpha, n/a\n" in text and "beta, n/a\n" in text
    assert "gamma, 2, 0.6666666666666666, 0.4, 0.2857142857142857\n" in text


def test_tables_deterministic():
    assert emit_tables(7, "gll") == emit_tables(7, "gll")


# --- CLI -----------------------------------------------------------------

def test_cli_tables():
    code, out = run_cli("tables", "--degree", "2", "--family", "gll")
    assert code == 0
    assert "gamma, 2, 0.6666666666666666, 1" in out


@pytest.mark.parametrize("N", [1, 4, 16])
def test_cli_verify(N):
    code, out = run_cli("verify", "--degree", str(N))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["status"] == "pass" for r in rows)
    assert {"mass_vs_oracle", "lumped_inverse_identity", "rank1_annihilation"} <= {r["check"] for r in rows}


def test_cli_mortar():
    code, out = run_cli("mortar", "--source", "1", "--target", "2")
    assert code == 0
    assert "forward_lumped, 1, 0.5, 0.5" in out
    assert "backward_differs_from_interp" in out
    code, _ = run_cli("mortar", "--source", "3", "--target", "2")
    assert code == 2


def test_cli_advect_deterministic(tmp_path):
    argv = ["advect", "--degree", "3,4", "--elements", "2", "--t-final", "0.5", "--ic", "gaussian:0.3"]
    code1, out1 = run_cli(*argv)
    code2, out2 = run_cli(*argv)
    assert code1 == code2 == 0
    assert strip_timing(out1) == strip_timing(out2)
    rows = list(csv.DictReader(io.StringIO(out1)))
    assert list(rows[0].keys()) == list(CSV_COLUMNS)
    assert [(r["mode"], r["N"]) for r in rows] == [("exact", "3"), ("lumped", "3"), ("exact", "4"), ("lumped", "4")]


def test_cli_advect_dump_operator(tmp_path):
    path = tmp_path / "op.csv"
    code, _ = run_cli("advect", "--degree", "3", "--elements", "2", "--mass", "exact",
                      "--t-final", "0.1", "--dump-operator", str(path))
    assert code == 0
    L = np.loadtxt(path, delimiter=",")
    expected = DGAdvection(AdvectionConfig(degree=3, elements=2, final_time=0.1)).dense_operator()
    assert np.array_equal(L, expected)


def test_cli_advect_bad_config():
    code, _ = run_cli("advect", "--degree", "3", "--elements", "0")
    assert code == 2


def test_cli_bench():
    code, out = run_cli("bench", "--sizes", "16,32", "--repeats", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["N"] for r in rows] == ["16", "32"]
