import math

import numpy as np
import pytest

from mdi_asymmetry import scan
from mdi_asymmetry.errors import ConfigError, NotPSDError, ScanError
from mdi_asymmetry.presets import figure_specs
from mdi_asymmetry.scan import AxisSpec, GridSpec, Measure, Path, landmark_report, run_scan

PI = math.pi
THETA = dict(min=0.0, max=2 * PI)


def theta_spec(n=5, measure=Measure.GLOBAL_PURE, fixed=(), path=Path.BOTH):
    return GridSpec(
        AxisSpec("theta_b", count=n, **THETA), AxisSpec("theta_a", count=n, **THETA), measure, fixed, path
    )


class TestConfig:
    def test_valid(self):
        spec = theta_spec()
        assert spec.measure is Measure.GLOBAL_PURE and spec.path is Path.BOTH

    @pytest.mark.parametrize(
        "axis1,axis2",
        [
            (AxisSpec("theta_a", 1.0, 1.0, 3), AxisSpec("theta_b", 0, 1, 3)),
            (AxisSpec("theta_a", 0, 1, 1), AxisSpec("theta_b", 0, 1, 3)),
            (AxisSpec("theta_a", 0, 1, 2.5), AxisSpec("theta_b", 0, 1, 3)),
            (AxisSpec("theta_a", 0, 1, 3), AxisSpec("theta_a", 0, 1, 3)),
            (AxisSpec("phi", 0, 1, 3), AxisSpec("theta_b", 0, 1, 3)),
            (AxisSpec("theta_a", 0, math.inf, 3), AxisSpec("theta_b", 0, 1, 3)),
            (AxisSpec("r_a", 0, 1, 3), AxisSpec("theta_b", 0, 1, 3)),
        ],
    )
    def test_bad_axes(self, axis1, axis2):
        with pytest.raises(ConfigError):
            GridSpec(axis1, axis2, Measure.GLOBAL_PURE)

    def test_fixed_must_cover_exactly(self):
        a1, a2 = AxisSpec("theta_b", 0, 1, 3), AxisSpec("theta_a", 0, 1, 3)
        with pytest.raises(ConfigError):
            GridSpec(a1, a2, Measure.UNITARY_PURE)
        with pytest.raises(ConfigError):
            GridSpec(a1, a2, Measure.GLOBAL_PURE, {"t": 1.0})
        GridSpec(a1, a2, Measure.UNITARY_PURE, {"t": 1.0})

    def test_bloch_range(self):
        with pytest.raises(ConfigError):
            GridSpec(AxisSpec("r_b", -1, 1.5, 3), AxisSpec("r_a", -1, 1, 3), Measure.GLOBAL_RHO3)

    def test_no_closed_form_needs_oracle_path(self):
        with pytest.raises(ConfigError):
            theta_spec(measure=Measure.LOCAL_PURE, fixed={"t": 0.0})
        theta_spec(measure=Measure.LOCAL_PURE, fixed={"t": 0.0}, path="oracle")

    def test_unknown_measure_or_path(self):
        with pytest.raises(ConfigError):
            theta_spec(measure="global-mixed")
        with pytest.raises(ConfigError):
            theta_spec(path="sideways")

    def test_run_scan_type_check(self):
        with pytest.raises(ConfigError):
            run_scan({"measure": "global-pure"})

    def test_json_is_stable(self):
        a = theta_spec(measure=Measure.UNITARY_PURE, fixed=[("t", 1.0)])
        b = theta_spec(measure=Measure.UNITARY_PURE, fixed={"t": 1})
        assert a == b and a.to_json() == b.to_json()


class TestRunScan:
    def test_smallest_grid(self):
        r1 = run_scan(theta_spec(2), workers=1)
        r2 = run_scan(theta_spec(2), workers=1)
        assert r1.values.shape == (2, 2)
        assert r1.values.tobytes() == r2.values.tobytes()
        assert len(list(r1.rows())) == 4

    def test_result_is_read_only(self):
        r = run_scan(theta_spec(3), workers=1)
        with pytest.raises(ValueError):
            r.values[0, 0] = 1.0

    def test_max_deviation_summary(self):
        r = run_scan(theta_spec(9), workers=1)
        assert r.max_deviation == r.deviations.max()
        assert r.max_deviation <= 1e-9

    def test_oracle_path_has_no_deviations(self):
        r = run_scan(theta_spec(3, path="oracle"), workers=1)
        assert r.deviations is None and r.max_deviation is None

    def test_row_major_layout(self):
        r = run_scan(theta_spec(5), workers=1)
        rows = list(r.rows())
        x1, x2, v, _ = rows[7]
        assert (x1, x2) == (r.axis1_values[1], r.axis2_values[2])
        assert v == r.values[1, 2]

    def test_fig2a_diagonal_zero(self):
        (_, spec), = figure_specs("fig2a", grid=41)
        r = run_scan(spec, workers=1)
        assert np.abs(np.diag(r.values)).max() <= 1e-10
        assert r.max_deviation <= 1e-9

    def test_fig1_landmarks(self):
        (_, spec), = figure_specs("fig1", grid=41)
        r = run_scan(spec, workers=1)
        lm = landmark_report(r)
        assert lm.max_value == pytest.approx(1, abs=1e-9)
        assert lm.argmax == (PI / 2, PI / 2)
        assert lm.min_value == pytest.approx(0, abs=1e-12)
        assert lm.argmin == (0.0, 0.0)
        assert lm.max_deviation <= 1e-9

    def test_fig7_argmax(self):
        (_, spec), = figure_specs("fig7", grid=41, t=PI / 2)
        lm = landmark_report(run_scan(spec, workers=1))
        assert lm.axes == ("theta_b", "theta_a")
        assert lm.max_value == pytest.approx(1, abs=1e-9)
        # (theta_a, theta_b) = (pi, 0)
        assert lm.argmax == (0.0, PI)

    @pytest.mark.parametrize("workers", [1, 4, 8])
    def test_determinism_across_workers(self, workers):
        (_, spec), = figure_specs("fig3", grid=21)
        ref = run_scan(spec, workers=1)
        r = run_scan(spec, workers=workers)
        assert r.values.tobytes() == ref.values.tobytes()

    def test_fig1_symmetries(self):
        (_, spec), = figure_specs("fig1", grid=41)
        v = run_scan(spec, workers=1).values
        assert np.abs(v - v.T).max() <= 1e-10
        assert np.abs(v - v[::-1, ::-1]).max() <= 1e-10

    def test_null_lines(self):
        (_, spec), = figure_specs("fig1", grid=41)
        v = run_scan(spec, workers=1).values
        for k in (0, 20, 40):
            assert v[k, k] <= 1e-10

    def test_numeric_failure_reports_coordinates(self, monkeypatch):
        def broken(p):
            raise NotPSDError("synthetic", index=2, eigenvalue=-1.0)

        info = scan.MEASURES[Measure.GLOBAL_PURE]
        monkeypatch.setitem(scan.MEASURES, Measure.GLOBAL_PURE, scan.MeasureInfo(info.parameters, broken, broken))
        with pytest.raises(ScanError) as exc:
            run_scan(theta_spec(5), workers=1)
        assert exc.value.coords == {"theta_b": 0.0, "theta_a": PI}

    def test_non_finite_reports_coordinates(self, monkeypatch):
        def nan_at_one(p):
            out = np.zeros(len(p["theta_a"]))
            out[1] = np.nan
            return out

        info = scan.MEASURES[Measure.GLOBAL_PURE]
        monkeypatch.setitem(scan.MEASURES, Measure.GLOBAL_PURE, scan.MeasureInfo(info.parameters, nan_at_one))
        with pytest.raises(ScanError) as exc:
            run_scan(theta_spec(5, path="oracle"), workers=1)
        assert exc.value.coords == {"theta_b": 0.0, "theta_a": PI / 2}


class TestLandmarks:
    def _result(self, values):
        values = np.asarray(values, dtype=float)
        spec = theta_spec(values.shape[0])
        return scan.ScanResult(spec, spec.axis1.values(), spec.axis2.values(), values)

    def test_constant_zero(self):
        lm = landmark_report(self._result(np.zeros((3, 3))))
        assert lm.max_value == lm.min_value == 0
        assert lm.argmax == lm.argmin == (0.0, 0.0)

    def test_tie_goes_to_lowest_index(self):
        v = np.zeros((3, 3))
        v[2, 0] = 1.0
        v[1, 2] = 1.0 - 1e-13
        lm = landmark_report(self._result(v))
        assert lm.argmax == (PI, 2 * PI)
        assert lm.max_value == 1.0


class TestPresets:
    def test_all_presets_build(self):
        for fig in ("fig1", "fig2a", "fig2b", "fig3", "fig6"):
            assert len(figure_specs(fig, grid=5)) == 1
        assert len(figure_specs("fig4", grid=5)) == 3
        assert len(figure_specs("fig7", grid=5)) == 3
        assert len(figure_specs("fig7", grid=5, t=1.0)) == 1
        assert figure_specs("fig5", grid=5, axis="z", r_b=0.5)[0][1].measure is Measure.LOCAL_RHO3
        assert figure_specs("fig5", grid=5, axis="x", r_b=0.5)[0][1].measure is Measure.LOCAL_RHO1

    def test_fig5_requires_flags(self):
        with pytest.raises(ConfigError):
            figure_specs("fig5", grid=5)
        with pytest.raises(ConfigError):
            figure_specs("fig5", grid=5, axis="y", r_b=0.5)

    def test_unknown_id(self):
        with pytest.raises(ConfigError):
            figure_specs("fig9")

    def test_fig3_default_theta_b(self):
        (_, spec), = figure_specs("fig3", grid=5)
        assert dict(spec.fixed) == {"theta_b": PI / 2}
