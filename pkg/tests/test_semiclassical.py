import math

import numpy as np
import pytest

from doublewell.errors import InvalidInputError
from doublewell.semiclassical import (
    critical_lambda,
    energy_per_particle,
    stationary_z,
    z_min,
)


class TestEnergy:
    def test_balanced_zero_phase(self):
        assert energy_per_particle(0, 0, 0, 0, 100) == pytest.approx(-1.0)

    def test_pi_phase_flips_sign(self):
        assert energy_per_particle(0, math.pi, 0, 0, 100) == pytest.approx(1.0)

    def test_formula_evaluation(self):
        # direct high-precision evaluation of the defining expression
        z, lam, tilt, n = 0.5, 2.0, 1e-3, 100
        expected = (
            -math.sqrt(1 - 0.25) - lam / (4 * n) * (n * 0.25 + n - 2) - tilt * z
        )
        assert energy_per_particle(z, 0.0, lam, tilt, n) == pytest.approx(
            expected, abs=1e-15
        )

    def test_domain_error(self):
        with pytest.raises(InvalidInputError):
            energy_per_particle(1.0, 0, 1, 0, 10)

    def test_even_in_z_without_tilt(self):
        for z in (0.1, 0.4, 0.8):
            assert energy_per_particle(z, 0, 2.5, 0, 50) == pytest.approx(
                energy_per_particle(-z, 0, 2.5, 0, 50), abs=1e-14
            )


class TestStationary:
    def test_free_case(self):
        roots = stationary_z(0.0, 0.0)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(0.0, abs=1e-9)

    def test_closed_form_above_bifurcation(self):
        roots = stationary_z(4.0, 0.0)
        expected = [-math.sqrt(3) / 2, 0.0, math.sqrt(3) / 2]
        assert np.allclose(roots, expected, atol=1e-9)

    def test_fine_grid_oracle(self):
        lam, tilt = 2.5, 1e-3
        roots = stationary_z(lam, tilt)
        zs = np.linspace(-1 + 1e-9, 1 - 1e-9, 1_000_000)
        f = zs / np.sqrt(1 - zs * zs) - 0.5 * lam * zs - tilt
        brackets = np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0]
        assert len(roots) == len(brackets)
        for r, i in zip(roots, brackets):
            assert abs(r - zs[i]) < 1e-5


class TestZMin:
    def test_below_bifurcation(self):
        assert z_min(1.0, 0.0).z == pytest.approx(0.0, abs=1e-9)

    def test_tilt_selects_positive_branch(self):
        point = z_min(4.0, 1e-6)
        assert point.z == pytest.approx(math.sqrt(3) / 2, abs=1e-4)

    def test_tie_break_toward_larger_z(self):
        # degenerate double minimum at zero tilt
        assert z_min(4.0, 0.0).z > 0

    def test_closed_form_above_two(self):
        for lam in (2.5, 3.0, 3.5):
            z = z_min(lam, 0.0).z
            assert z * z == pytest.approx(1 - (2 / lam) ** 2, abs=1e-8)

    def test_monotone_in_tilt(self):
        for lam in (1.5, 2.1, 3.0):
            zs = [z_min(lam, tilt).z for tilt in (0.0, 1e-4, 1e-2, 1e-1)]
            assert all(b >= a - 1e-9 for a, b in zip(zs, zs[1:]))


class TestCriticalLambda:
    @pytest.mark.parametrize("tilt", [1e-10, 1e-5, 1e-3])
    def test_small_tilt_jump_near_two(self, tilt):
        crit = critical_lambda(tilt)
        assert abs(crit - 2.0) <= 0.05

    def test_large_tilt_is_smooth(self):
        assert math.isnan(critical_lambda(1e-1))

    def test_large_tilt_max_step_below_threshold(self):
        # dense grid confirms the minimizer moves smoothly at large tilt
        lams = np.arange(0.5, 4.0, 0.05)
        zs = [z_min(float(lam), 1e-1).z for lam in lams]
        assert max(b - a for a, b in zip(zs, zs[1:])) < 0.1

    def test_bad_resolution(self):
        with pytest.raises(InvalidInputError):
            critical_lambda(1e-3, resolution=0.0)
