import csv
import io
import math
import warnings

import numpy as np
import pytest

from translogistic.csvio import csv_text, format_value, write_csv
from translogistic.errors import OverlayWarning, ParseError, RegimeError, SolverError, UsageError
from translogistic.harness import (
    FIGURE_IDS,
    align_overlay,
    approximation_table,
    emit_figure_data,
    error_sweep,
    import_reference_errors,
    landmarks,
    solve_K,
)
from translogistic.period4 import EtaParam

from conftest import EPS0


class TestLandmarks:
    @pytest.mark.parametrize("eps", [1e-4, 1e-3, 1e-2, math.exp(-1)])
    def test_K_solves_equation(self, eps):
        k = solve_K(eps)
        assert k == pytest.approx(math.sqrt(math.log(k) - 1.5 * math.log(eps)), abs=1e-12)

    def test_values_at_1e3(self):
        lm = landmarks(1e-3)
        assert lm.K == pytest.approx(3.4039, abs=1e-4)
        assert lm.as_tuple() == (31, 116, 246)
        assert landmarks(1e-3, "literal").as_tuple() == (31, 12, 142)

    def test_K_at_inverse_e(self):
        assert solve_K(math.exp(-1)) == pytest.approx(1.3384, abs=1e-4)

    def test_ordering(self):
        for eps in np.geomspace(1e-5, 1e-2, 10):
            lm = landmarks(eps)
            assert lm.n1 < lm.n2 < lm.n3

    def test_no_solution(self):
        with pytest.raises(SolverError):
            solve_K(0.9)
        with pytest.raises(ValueError):
            solve_K(0.0)

    def test_unknown_grouping(self):
        with pytest.raises(UsageError):
            landmarks(1e-3, "other")


class TestRegimes:
    @pytest.mark.parametrize("mode,eps", [
        ("static2", 0.5), ("static2", 0.0), ("static4", 0.3), ("static4", 1.2),
        ("dynamic", 0.05), ("dynamic", -1e-3),
    ])
    def test_guard(self, mode, eps):
        with pytest.raises(RegimeError):
            approximation_table(mode, eps, 10)

    def test_sweep_checks_whole_grid_first(self):
        with pytest.raises(RegimeError):
            error_sweep("static2", [0.05, 0.6])

    def test_unknown_mode(self):
        with pytest.raises(UsageError):
            error_sweep("static8", [0.5])

    def test_alias(self):
        assert error_sweep("static-2", [0.05], n_max=50)[0].mode == "static2"


class TestSweeps:
    def test_static2_report(self):
        (rep,) = error_sweep("static2", [0.05])
        assert rep.n_range == (0, 2000)
        assert rep.max_abs_error < 1e-2
        assert 0 <= rep.argmax_n <= 2000

    def test_dynamic_peak_after_transition(self):
        (rep,) = error_sweep("dynamic", [1e-3], n_max=300)
        assert rep.argmax_n > landmarks(1e-3).n2
        assert set(rep.landmark_errors) == set(landmarks(1e-3).as_tuple())

    def test_branch_errors_shrink_towards_bifurcation(self):
        reps = error_sweep("static4", [EtaParam.from_eta(h).eps for h in (0.06, 0.04, 0.02)])
        errs = np.array([r.branch_errors for r in reps])
        assert errs.shape == (3, 4)
        assert np.all(np.diff(errs, axis=0) < 0)

    def test_static4_error_peaks_early(self):
        # the initial data come from the 2-periodic form, so the worst error is near n = 0
        (rep,) = error_sweep("static4", [EPS0 + 1e-2])
        assert rep.argmax_n < 50
        assert rep.max_abs_error < 0.05
        assert max(rep.branch_errors) < 0.01


class TestCsv:
    def test_format(self):
        assert format_value(3) == "3"
        assert format_value(np.int64(-2)) == "-2"
        assert format_value(0.1) == "0.10000000000000001"
        assert format_value(float("nan")) == "nan"
        assert format_value("R2") == "R2"

    def test_round_trip(self):
        rows = [(1, 0.25, 1 / 3), (2, -1e-300, 7.0)]
        text = csv_text(["n", "a", "b"], rows)
        back = list(csv.reader(io.StringIO(text)))
        assert back[0] == ["n", "a", "b"]
        assert [float(v) for v in back[2][1:]] == [-1e-300, 7.0]
        assert float(back[1][2]) == 1 / 3
        assert "\r" not in text

    def test_write_targets(self, tmp_path):
        buf = io.StringIO()
        write_csv(buf, ["a"], [(1,)])
        write_csv(tmp_path / "x.csv", ["a"], [(1,)])
        assert buf.getvalue() == (tmp_path / "x.csv").read_text() == "a\n1\n"


class TestOverlay:
    def test_read_and_align(self, tmp_path):
        p = tmp_path / "ref.csv"
        p.write_text("eps,error\n0.02,1e-5\n0.01,2e-6\n")
        ov = import_reference_errors(p)
        assert list(ov.eps) == [0.01, 0.02]
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            np.testing.assert_allclose(align_overlay(ov, [0.01, 0.02]), [2e-6, 1e-5])

    def test_mismatched_grid_warns(self, tmp_path):
        p = tmp_path / "ref.csv"
        p.write_text("eps,error\n0.01,2e-6\n")
        with pytest.warns(OverlayWarning):
            out = align_overlay(import_reference_errors(p), [0.011])
        assert out[0] == 2e-6

    def test_empty_file(self, tmp_path):
        p = tmp_path / "ref.csv"
        p.write_text("")
        with pytest.warns(OverlayWarning):
            ov = import_reference_errors(p)
        assert len(ov) == 0
        assert np.isnan(align_overlay(ov, [0.1])).all()

    def test_header_only(self, tmp_path):
        p = tmp_path / "ref.csv"
        p.write_text("eps,error\n")
        with pytest.warns(OverlayWarning):
            assert len(import_reference_errors(p)) == 0

    def test_bad_header(self, tmp_path):
        p = tmp_path / "ref.csv"
        p.write_text("e,err\n0.1,0.2\n")
        with pytest.raises(ParseError) as info:
            import_reference_errors(p)
        assert info.value.line == 1

    def test_bad_record(self, tmp_path):
        p = tmp_path / "ref.csv"
        p.write_text("eps,error\n0.1,0.2\n0.2,abc\n")
        with pytest.raises(ParseError) as info:
            import_reference_errors(p)
        assert info.value.line == 3


class TestFigures:
    @pytest.mark.parametrize("fig", FIGURE_IDS)
    def test_deterministic(self, fig, tmp_path):
        first = emit_figure_data(fig, tmp_path / "a")
        second = emit_figure_data(fig, tmp_path / "b")
        assert [p.name for p in first] == [p.name for p in second]
        for p, q in zip(first, second):
            assert p.read_bytes() == q.read_bytes()
        assert any(p.suffix == ".gp" for p in first)

    def test_reference_column(self, tmp_path):
        ref = tmp_path / "ref.csv"
        ref.write_text("eps,error\n0.0005,1e-4\n0.01,1e-3\n")
        with pytest.warns(OverlayWarning):
            files = emit_figure_data("dyn-error", tmp_path / "out", import_reference_errors(ref))
        head = files[0].read_text().splitlines()[0]
        assert head == "eps,err_n1,err_n2,err_n3,reference"

    def test_annotations(self, tmp_path):
        files = emit_figure_data("4-per", tmp_path)
        ann = [p for p in files if p.name == "4-per_annotations.csv"][0]
        rows = dict(csv.reader(io.StringIO(ann.read_text())))
        assert float(rows["z0"]) == pytest.approx(0.99505389177972, abs=1e-11)

    def test_unknown_id(self, tmp_path):
        with pytest.raises(UsageError):
            emit_figure_data("fig-9", tmp_path)
