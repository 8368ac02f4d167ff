import numpy as np
import pytest

from doublewell.errors import InvalidInputError
from doublewell.numerics import (
    TridiagonalMatrix,
    eigh_hermitian_small,
    eigh_tridiagonal,
    find_roots,
    linear_fit,
    refine_peak,
)


def random_tridiagonal(rng, dim):
    return TridiagonalMatrix(rng.normal(size=dim), rng.normal(size=dim - 1))


class TestTridiagonal:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            TridiagonalMatrix([0, 0], [1, 2])
        with pytest.raises(InvalidInputError):
            TridiagonalMatrix([0, np.nan], [1])

    def test_2x2_closed_form(self):
        m = TridiagonalMatrix([0, 0], [-1])
        pairs = eigh_tridiagonal(m)
        assert np.allclose([p.value for p in pairs], [-1, 1])
        assert np.allclose(np.abs(pairs[0].vector), [1 / np.sqrt(2)] * 2)

    def test_free_hopping_3x3(self):
        m = TridiagonalMatrix([0, 0, 0], [-np.sqrt(2), -np.sqrt(2)])
        values = [p.value for p in eigh_tridiagonal(m)]
        assert np.allclose(values, [-2, 0, 2], atol=1e-12)

    def test_against_dense_oracle(self):
        rng = np.random.default_rng(42)
        m = random_tridiagonal(rng, 50)
        dense_values = np.linalg.eigvalsh(m.dense())
        values = [p.value for p in eigh_tridiagonal(m)]
        assert np.allclose(values, dense_values, atol=1e-10)

    def test_k_lowest_subset(self):
        rng = np.random.default_rng(7)
        m = random_tridiagonal(rng, 40)
        all_pairs = eigh_tridiagonal(m)
        low = eigh_tridiagonal(m, 3)
        assert len(low) == 3
        for a, b in zip(low, all_pairs):
            assert a.value == pytest.approx(b.value, abs=1e-10)

    def test_orthonormality_and_residual(self):
        rng = np.random.default_rng(3)
        m = random_tridiagonal(rng, 60)
        pairs = eigh_tridiagonal(m)
        vmat = np.array([p.vector for p in pairs])
        assert np.max(np.abs(vmat @ vmat.T - np.eye(60))) < 1e-10
        assert all(p.residual < 1e-10 for p in pairs)

    def test_trace_preservation(self):
        rng = np.random.default_rng(11)
        for dim in (5, 30, 120):
            m = random_tridiagonal(rng, dim)
            values = sum(p.value for p in eigh_tridiagonal(m))
            assert values == pytest.approx(np.sum(m.diag), rel=1e-9, abs=1e-9)

    def test_ground_energy_matches_dense(self):
        rng = np.random.default_rng(5)
        for dim in (10, 50, 200):
            m = random_tridiagonal(rng, dim)
            e0 = eigh_tridiagonal(m, 1)[0].value
            dense_e0 = np.linalg.eigvalsh(m.dense())[0]
            assert e0 == pytest.approx(dense_e0, rel=1e-12, abs=1e-12)

    def test_bad_k_lowest(self):
        m = TridiagonalMatrix([0, 0], [-1])
        with pytest.raises(InvalidInputError):
            eigh_tridiagonal(m, 0)
        with pytest.raises(InvalidInputError):
            eigh_tridiagonal(m, 3)


class TestHermitian:
    def test_half_identity(self):
        vals = [v for v, _ in eigh_hermitian_small(0.5 * np.eye(2))]
        assert vals == pytest.approx([0.5, 0.5])

    def test_pauli_x(self):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        vals = [v for v, _ in eigh_hermitian_small(sx)]
        assert vals == pytest.approx([-1, 1])

    def test_characteristic_polynomial_oracle(self):
        rng = np.random.default_rng(9)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = a + a.conj().T
        vals = np.array([v for v, _ in eigh_hermitian_small(h)])
        roots = np.sort(np.real(np.roots(np.poly(h))))
        assert np.allclose(vals, roots, atol=1e-9)

    def test_reconstruction(self):
        rng = np.random.default_rng(13)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = a + a.conj().T
        decomp = eigh_hermitian_small(h)
        rebuilt = sum(v * np.outer(vec, vec.conj()) for v, vec in decomp)
        assert np.linalg.norm(h - rebuilt) <= 1e-12 * np.linalg.norm(h)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidInputError):
            eigh_hermitian_small(np.array([[0, 1], [0, 0]], dtype=complex))


class TestLinearFit:
    def test_exact_line(self):
        xs = np.arange(5.0)
        fit = linear_fit(xs, 2 * xs + 1)
        assert fit.slope == pytest.approx(2.0, abs=1e-12)
        assert fit.intercept == pytest.approx(1.0, abs=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_xs(self):
        with pytest.raises(InvalidInputError):
            linear_fit([1, 1, 1], [1, 2, 3])

    def test_too_short(self):
        with pytest.raises(InvalidInputError):
            linear_fit([1, 2], [1, 2])

    def test_r_squared_bounds(self):
        rng = np.random.default_rng(21)
        xs = np.linspace(0, 1, 30)
        fit = linear_fit(xs, rng.normal(size=30))
        assert 0.0 <= fit.r_squared <= 1.0


class TestFindRoots:
    def test_linear(self):
        roots = find_roots(lambda z: z, -0.5, 0.5, 101)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(0.0, abs=1e-12)

    def test_bifurcation_contact(self):
        # triple contact of the stationarity curve at the critical coupling
        roots = find_roots(
            lambda z: z / np.sqrt(1 - z * z) - 1.0 * z, -0.999, 0.999, 10_001
        )
        assert len(roots) == 1
        assert roots[0] == pytest.approx(0.0, abs=1e-6)

    def test_three_roots(self):
        roots = find_roots(
            lambda z: z / np.sqrt(1 - z * z) - 2.0 * z, -0.999, 0.999, 10_001
        )
        expected = [-np.sqrt(3) / 2, 0.0, np.sqrt(3) / 2]
        assert len(roots) == 3
        assert np.allclose(roots, expected, atol=1e-9)

    def test_no_sign_change(self):
        assert find_roots(lambda z: z * z + 1, -1, 1, 50) == []

    def test_residual_bound(self):
        f = lambda x: np.cos(3 * x)  # noqa: E731
        for r in find_roots(f, 0, 4, 2000):
            assert abs(f(r)) <= 1e-9 * max(1.0, 3.0)

    def test_bad_interval(self):
        with pytest.raises(InvalidInputError):
            find_roots(lambda x: x, 1.0, 0.0, 10)


class TestRefinePeak:
    def test_symmetric(self):
        vertex = refine_peak([0, 1, 2], [1, 2, 1], 1)
        assert (vertex.x, vertex.y) == (1.0, 2.0)
        assert not vertex.degenerate

    def test_asymmetric_hand_computed(self):
        # parabola through (0,0),(1,3),(2,2) is y = -2x^2 + 5x,
        # vertex at x = 5/4, y = 25/8
        vertex = refine_peak([0, 1, 2], [0, 3, 2], 1)
        assert vertex.x == pytest.approx(1.25, abs=1e-12)
        assert vertex.y == pytest.approx(25 / 8, abs=1e-12)

    def test_collinear(self):
        vertex = refine_peak([0, 1, 2], [1, 2, 3], 1)
        assert vertex.degenerate
        assert (vertex.x, vertex.y) == (1.0, 2.0)

    def test_boundary_index(self):
        with pytest.raises(InvalidInputError):
            refine_peak([0, 1, 2], [3, 2, 1], 0)
