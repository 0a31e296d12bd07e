import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fraccable import tables
from fraccable.errors import DomainError, ExpressionError
from fraccable.problems import config_from_dict, example2, example3, load_config
from fraccable.solver1d import CableProblem1D, solve_1d
from fraccable.solver2d import CableProblem2D, solve_2d
from fraccable.study import (RefinementStudy, compute_orders, coupled_ladder, emit_csv,
                             format_float, run_study, table2_study, trajectory_rows, write_csv)


def test_orders_from_published_rows():
    rows = tables.TABLE2[(0.5, 0.5)]
    errors = [r[2] for r in rows]
    taus = [1 / r[0] for r in rows]
    hs = [1 / r[1] for r in rows]
    tco, sco = compute_orders(errors, taus, hs)
    assert tco[0] == pytest.approx(1.8906, abs=5e-5)
    assert tco[-1] == pytest.approx(2.0015, abs=5e-5)
    for t, s in zip(tco, sco):
        assert s == pytest.approx(2 * t, rel=1e-12)


def test_orders_table1_row():
    rows = tables.TABLE1[0.5]
    tco, _ = compute_orders([r[1] for r in rows], [1 / r[0] for r in rows])
    assert tco[0] == pytest.approx(1.9991, abs=5e-5)


@settings(max_examples=50, deadline=None)
@given(p=st.floats(0.5, 4.0), c=st.floats(1e-6, 1e3), scale=st.floats(1e-3, 1e3))
def test_orders_exact_power_law_and_scale_invariance(p, c, scale):
    taus = [0.1, 0.05, 0.02, 0.01]
    errors = [c * t ** p for t in taus]
    tco, sco = compute_orders(errors, taus)
    assert sco == []
    assert tco == pytest.approx([p] * 3, rel=1e-9)
    assert compute_orders([scale * e for e in errors], taus)[0] == pytest.approx(tco, rel=1e-9)


def test_orders_validation():
    with pytest.raises(DomainError):
        compute_orders([1.0, 0.0], [0.1, 0.05])
    with pytest.raises(DomainError):
        compute_orders([1.0, 0.5], [0.05, 0.1])
    with pytest.raises(ValueError):
        compute_orders([1.0, 0.5], [0.1])
    assert compute_orders([1.0], [0.1]) == ([], [])


def test_coupled_ladder():
    assert coupled_ladder(5) == tables._LADDER


def test_study_validation():
    with pytest.raises(DomainError):
        RefinementStudy(lambda: example2(0.5, 0.5), [])
    with pytest.raises(DomainError):
        RefinementStudy(lambda: example2(0.5, 0.5), [(20, 10), (5, 5)])
    with pytest.raises(DomainError):
        RefinementStudy(lambda: example2(0.5, 0.5), [(5, 5)], norm="l1")
    with pytest.raises(DomainError):
        run_study(RefinementStudy(lambda: CableProblem1D(0.5, 0.5), [(5, 5)]))


def test_single_level_study():
    report = run_study(table2_study((0.5, 0.5), levels=1))
    assert len(report.rows) == 1
    assert report.rows[0].tco is None and report.rows[0].sco is None
    assert report.rows[0].error == pytest.approx(3.552136e-02, rel=1e-6)


def test_threads_keep_order_and_values():
    a = run_study(table2_study((0.4, 0.6), levels=4))
    b = run_study(table2_study((0.4, 0.6), levels=4), jobs=3)
    assert a.to_csv() == b.to_csv()


def test_report_csv_layout_and_round_trip():
    report = run_study(table2_study((0.6, 0.4), levels=3))
    text = report.to_csv()
    assert "\r" not in text
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["tau", "h", "error", "tco", "sco"]
    assert rows[1][3] == "" and rows[1][4] == ""
    for rec, parsed in zip(report.records(), rows[1:]):
        for v, cell in zip(rec, parsed):
            if v is not None:
                assert float(cell) == pytest.approx(v, rel=5e-9)
    assert "1/45" in report.format_table(tables.TABLE2[(0.6, 0.4)])


def test_csv_deterministic():
    one = run_study(table2_study((0.2, 0.8), levels=3)).to_csv()
    two = run_study(table2_study((0.2, 0.8), levels=3)).to_csv()
    assert one == two


def test_header_only_csv():
    assert write_csv(["t", "x", "u"], []) == "t,x,u\n"


def test_format_float():
    assert format_float(None) == ""
    assert format_float(1 / 3) == "0.333333333"
    assert float(format_float(6.694813e-05)) == 6.694813e-05


def test_emit_csv(tmp_path):
    path = emit_csv(["a", "b"], [[1, 0.5]], tmp_path / "deep" / "out.csv")
    assert path.read_bytes() == b"a,b\n1,0.5\n"
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        emit_csv(["a"], [], blocker / "sub" / "out.csv")


def test_trajectory_rows_1d_and_2d():
    sol = solve_1d(example2(0.5, 0.5), 2, 4)
    header, rows = trajectory_rows(sol)
    assert header == ["t", "x", "u", "exact", "abs_error"]
    assert len(rows) == 3 * 5
    sol2 = solve_2d(example3(0.5, 0.5), 2, 3)
    header, rows = trajectory_rows(sol2, [2])
    assert header[:3] == ["t", "x", "y"] and len(rows) == 16
    assert all(r[0] == 1.0 for r in rows)


def test_config_presets():
    run = config_from_dict({"problem": "example2", "alpha1": 0.5, "alpha2": 0.5, "N": 20, "M": 10})
    assert run.dim == 1 and run.M == (10,) and run.norm == "max-all"
    run = config_from_dict({"problem": "example3", "alpha1": 0.5, "alpha2": 0.5, "N": 20,
                            "M1": 6, "M2": 8, "norm": "max-final"})
    assert run.dim == 2 and run.M == (6, 8)


def test_config_custom_1d_matches_preset():
    a1, a2 = 0.4, 0.6
    cfg = {"problem": "custom", "alpha1": a1, "alpha2": a2, "K1": math.pi ** -8, "K2": 1,
           "domain": [1], "N": 20, "M": 10,
           "source": "2*(t + t^(1+alpha1)/(pi^6*gamma(2+alpha1)) + t^(1+alpha2)/gamma(2+alpha2))"
                     " * sin(pi*x)",
           "exact": "t^2*sin(pi*x)", "boundary": ["0", "0"]}
    run = config_from_dict(cfg)
    custom = solve_1d(run.problem, 20, 10)
    preset = solve_1d(example2(a1, a2), 20, 10)
    np.testing.assert_allclose(custom.u, preset.u, atol=1e-13)
    assert custom.error() == pytest.approx(preset.error(), rel=1e-9)


def test_config_custom_2d(tmp_path):
    cfg = {"alpha1": 0.5, "alpha2": 0.5, "domain": [1, 2], "N": 4, "M": 4,
           "source": "x*y", "boundary": "t*x"}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    run = load_config(path)
    assert isinstance(run.problem, CableProblem2D)
    assert run.problem.Ly == 2.0 and run.problem.exact is None


@pytest.mark.parametrize("cfg", [
    {"alpha1": 0.5, "alpha2": 0.5, "N": 4, "M": 4, "colour": 1},
    {"alpha1": 0.5, "N": 4, "M": 4},
    {"problem": "example9", "alpha1": 0.5, "alpha2": 0.5, "N": 4, "M": 4},
    {"alpha1": 0.5, "alpha2": 0.5, "N": 4, "M": 1, "exact": "t"},
    {"alpha1": 0.5, "alpha2": 0.5, "N": 4, "M": 4, "boundary": "t"},
    {"alpha1": 0.5, "alpha2": 0.5, "N": 4, "M": 4, "norm": "l1"},
    {"alpha1": 1.5, "alpha2": 0.5, "N": 4, "M": 4},
])
def test_config_rejects(cfg):
    with pytest.raises(ValueError):
        config_from_dict(cfg)


def test_config_bad_expression_offset():
    with pytest.raises(ExpressionError) as info:
        config_from_dict({"alpha1": 0.5, "alpha2": 0.5, "N": 4, "M": 4, "source": "x + * t"})
    assert info.value.offset == 4


def test_load_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DomainError):
        load_config(bad)
    bad.write_text("[1, 2]")
    with pytest.raises(DomainError):
        load_config(bad)
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "missing.json")


def test_implied_final_error():
    assert tables.implied_final_error(tables.TABLE3, (0.2, 0.8)) == pytest.approx(9.24e-05, rel=2e-3)
    # elsewhere the reconstruction agrees with the printed value
    for pair in tables.PAIRS:
        assert tables.implied_final_error(tables.TABLE2, pair) == pytest.approx(
            tables.TABLE2[pair][-1][2], rel=2e-3)
