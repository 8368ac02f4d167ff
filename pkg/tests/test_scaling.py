import numpy as np
import pytest

from doublewell.errors import InvalidInputError
from doublewell.scaling import (
    ScanConfig,
    ScanResult,
    ScanRow,
    find_peaks,
    fit_position_exponent,
    fit_value_scaling,
    scan,
)


def series_result(ys):
    """Wrap a bare value series in a ScanResult with a unit lambda grid."""
    rows = tuple(ScanRow(lam=float(i), chi_fd=float(y)) for i, y in enumerate(ys))
    config = ScanConfig(2, 0.0, 0.0, float(len(ys) - 1), len(ys))
    return ScanResult(config, rows)


class TestScanConfig:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            ScanConfig(2, 0.0, 1.0, 0.5, 10)
        with pytest.raises(InvalidInputError):
            ScanConfig(2, 0.0, 0.0, 1.0, 0)
        with pytest.raises(InvalidInputError):
            ScanConfig(2, 0.0, 0.0, 1.0, 5, ("bogus",))

    def test_single_node(self):
        cfg = ScanConfig(2, 0.0, 0.7, 0.7, 1)
        assert cfg.lambdas().tolist() == [0.7]


class TestScan:
    def test_small_chi_scan(self):
        result = scan(ScanConfig(2, 1e-3, 0.0, 1.0, 3, ("chi",)))
        chis = result.column("chi_fd")
        assert len(chis) == 3
        assert np.all(np.isfinite(chis))
        assert np.all(chis >= 0)

    def test_deterministic_and_thread_invariant(self):
        cfg = ScanConfig(20, 1e-3, 1.5, 2.5, 9, ("chi", "correlations", "phase"))
        serial = scan(cfg)
        again = scan(cfg)
        threaded = scan(cfg, max_workers=4)
        assert serial == again
        assert serial == threaded

    def test_requested_columns_only(self):
        result = scan(ScanConfig(6, 1e-3, 1.0, 2.0, 3, ("entropy",)))
        assert np.all(np.isfinite(result.column("s1")))
        assert np.all(np.isnan(result.column("chi_fd")))
        assert np.all(np.isnan(result.column("discord")))

    def test_phase_column(self):
        result = scan(ScanConfig(800, 1e-10, 1.0, 1.0, 1, ("phase",)))
        assert result.rows[0].phase_label == "binomial"

    def test_rows_sorted(self):
        result = scan(ScanConfig(5, 0.0, 0.2, 1.8, 6, ("chi",)))
        lams = result.lambdas
        assert np.all(np.diff(lams) > 0)


class TestFindPeaks:
    def test_monotone_series_empty(self):
        assert find_peaks(series_result([1, 2, 3, 4, 5]), "chi_fd") == []

    def test_two_peaks(self):
        peaks = find_peaks(series_result([1, 5, 1, 7, 1]), "chi_fd")
        assert len(peaks) == 2
        assert peaks[0].height >= 5
        assert peaks[1].height >= 7

    def test_prominence_filter(self):
        # the middle bump is only 4% above its flanking valleys
        peaks = find_peaks(series_result([1.0, 10.0, 9.6, 10.0 * 0.999, 9.6, 10.0, 1.0]), "chi_fd", 0.05)
        assert len(peaks) == 2

    def test_too_short(self):
        with pytest.raises(InvalidInputError):
            find_peaks(series_result([1, 2]), "chi_fd")


class TestFits:
    def test_exact_power_law_positions(self):
        ns = [800, 1000, 1200, 1600]
        lam_max = [2 + n ** (-0.7) for n in ns]
        fit = fit_position_exponent(ns, lam_max)
        assert fit.exponent == pytest.approx(0.7, abs=1e-10)
        assert fit.fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_position_fit_errors(self):
        with pytest.raises(InvalidInputError):
            fit_position_exponent([800, 1000], [2.1, 2.05])
        with pytest.raises(InvalidInputError):
            fit_position_exponent([800, 1000, 1200], [2.1, 2.0, 2.05])

    def test_exact_power_law_values(self):
        ns = [3000, 4000, 5000, 6000]
        vals = [n ** (-0.6661) for n in ns]
        fit = fit_value_scaling(ns, vals, "power")
        assert fit.exponent == pytest.approx(0.6661, abs=1e-10)
        assert fit.power_r_squared == pytest.approx(1.0, abs=1e-12)

    def test_exponential_model(self):
        ns = [100, 200, 300, 400]
        vals = [np.exp(0.01 * n) for n in ns]
        fit = fit_value_scaling(ns, vals, "exponential")
        assert fit.fit.slope == pytest.approx(0.01, abs=1e-10)
        assert fit.exponential_r_squared == pytest.approx(1.0, abs=1e-12)
        assert fit.power_r_squared < 1.0

    def test_value_fit_errors(self):
        with pytest.raises(InvalidInputError):
            fit_value_scaling([1, 2, 3], [1.0, -1.0, 2.0])
        with pytest.raises(InvalidInputError):
            fit_value_scaling([1, 2, 3], [1.0, 1.0, 1.0], "bogus")
