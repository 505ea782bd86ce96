import numpy as np
import pytest
from numpy.testing import assert_allclose

from parma import (
    PeriodicModel,
    SolutionInput,
    build_fundamental,
    direct_recursion,
    error_weights,
    green_coefficients,
    known_innovation_weights,
    laplace_determinant,
    lu_determinant,
)

from conftest import random_model


def psi_by_power_series(phi, theta, n):
    """MA-infinity weights of a constant ARMA via polynomial long division.

    Divides ``1 + theta_1 z + ...`` by ``1 - phi_1 z - ...`` term by term.
    """
    phi = list(phi)
    theta = list(theta)
    psi = np.zeros(n + 1)
    psi[0] = 1.0
    for k in range(1, n + 1):
        acc = theta[k - 1] if k <= len(theta) else 0.0
        for j in range(1, min(k, len(phi)) + 1):
            acc += phi[j - 1] * psi[k - j]
        psi[k] = acc
    return psi


def impulse_weight(model, t, r, origin_lead):
    """Weight of eps_{t-r} in y_t, by propagating a one-hot innovation.

    Runs the plain difference-equation recursion from zero initial values
    at origin ``t - origin_lead`` twice (one-hot innovation minus the
    zero-innovation baseline); linearity makes the difference the exact
    coefficient.
    """
    eps = np.zeros(origin_lead + model.q)
    eps[origin_lead + model.q - 1 - r] = 1.0  # chronological storage
    one = direct_recursion(SolutionInput(
        model, origin=t - origin_lead, steps=origin_lead,
        initial=np.zeros(model.p), innovations=eps))
    base = direct_recursion(SolutionInput(
        model, origin=t - origin_lead, steps=origin_lead,
        initial=np.zeros(model.p), innovations=np.zeros_like(eps)))
    return one - base


class TestFundamentalMatrix:
    def test_order_one_is_single_coefficient(self):
        model = PeriodicModel(l=4, p=1, q=0, drift=np.zeros(4),
                              ar=[[0.9, 0.8, 0.7, 0.6]], ma=[], sigma2=np.ones(4))
        f = build_fundamental(model, 4, 1)  # t = 4 sits in season 4
        assert f.values.shape == (1, 1)
        assert f.values[0, 0] == 0.6

    def test_p2_is_tridiagonal(self, rng):
        model = random_model(rng, p=2, q=0, l=3)
        f = build_fundamental(model, 5, 6).values
        assert_allclose(np.diag(f, 1), -1.0)
        for off in range(2, 6):
            assert np.all(np.diag(f, off) == 0.0)
        for off in range(-2, -6, -1):
            assert np.all(np.diag(f, off) == 0.0)
        view = model.view()
        assert f[3, 3] == view.ar(1, 5 - 6 + 4)
        assert f[3, 2] == view.ar(2, 5 - 6 + 4)

    def test_p3_order2_truncates_band(self, rng):
        model = random_model(rng, p=3, q=0, l=4)
        f = build_fundamental(model, 9, 2).values
        view = model.view()
        expect = np.array([[view.ar(1, 8), -1.0],
                           [view.ar(2, 9), view.ar(1, 9)]])
        assert_allclose(f, expect)

    def test_bandwidth_invariant(self, rng):
        for _ in range(10):
            model = random_model(rng, q=0)
            k = int(rng.integers(1, 10))
            f = build_fundamental(model, int(rng.integers(-5, 6)), k).values
            for i in range(1, k + 1):
                for j in range(1, k + 1):
                    if j > i + 1 or j < i - model.p + 1:
                        assert f[i - 1, j - 1] == 0.0

    def test_deleting_leading_rows_gives_lower_order_matrix(self, rng):
        model = random_model(rng, p=3, q=0, l=5)
        big = build_fundamental(model, 7, 9)
        for r in (1, 3, 6):
            small = build_fundamental(model, 7, 9 - r)
            assert_allclose(big.principal_submatrix(r).values, small.values)

    def test_principal_minor_determinants_walk_down_the_table(self, rng):
        model = random_model(rng, p=3, q=0, l=4)
        k = 10
        big = build_fundamental(model, 5, k)
        table = green_coefficients(model, 5, k)
        for r in range(k):
            det = laplace_determinant(big.principal_submatrix(r))
            assert_allclose(det, table.value(k - r), rtol=1e-10, atol=1e-300)

    def test_block_toeplitz_assembly_matches(self, rng):
        # periodic structure: the full matrix is block Toeplitz in the
        # one-period block, a (-1)-corner block above, a band block below
        for _ in range(5):
            l = int(rng.integers(2, 6))
            p = int(rng.integers(1, l + 1))  # band blocks only defined for p <= l
            model = random_model(rng, p=p, q=0, l=l)
            t, n = int(rng.integers(-3, 4)) * l + l, 3
            block = build_fundamental(model, t, l).values
            corner = np.zeros((l, l))
            corner[l - 1, 0] = -1.0
            band = np.zeros((l, l))
            view = model.view()
            for i in range(1, l + 1):
                for m in range(i + 1, min(p, l + 2) + 1):
                    band[i - 1, l - m + i] = view.ar(m, t - l + i)
            big = np.zeros((n * l, n * l))
            for b in range(n):
                big[b * l:(b + 1) * l, b * l:(b + 1) * l] = block
                if b + 1 < n:
                    big[b * l:(b + 1) * l, (b + 1) * l:(b + 2) * l] = corner
                    big[(b + 1) * l:(b + 2) * l, b * l:(b + 1) * l] = band
            assert_allclose(big, build_fundamental(model, t, n * l).values)


class TestGreenRecurrence:
    def test_constant_ar1_powers(self):
        model = PeriodicModel.constant(ar=[0.5], l=1)
        table = green_coefficients(model, 3, 3)
        assert_allclose(table.nonnegative, [1.0, 0.5, 0.25, 0.125])

    def test_seed_values(self, rng):
        model = random_model(rng, p=4, q=0)
        table = green_coefficients(model, 2, 5)
        assert table.value(0) == 1.0
        for m in (1, 2, 3):
            assert table.value(-m) == 0.0

    def test_lag_one_is_first_ar_coefficient(self, rng):
        model = random_model(rng, p=3, q=0, l=4)
        t = 11
        table = green_coefficients(model, t, 1)
        assert table.value(1) == model.view().ar(1, t)

    def test_par14_full_period_is_coefficient_product(self):
        a, b, c, d = 0.9, 1.3, -0.7, 0.5
        model = PeriodicModel(l=4, p=1, q=0, drift=np.zeros(4),
                              ar=[[a, b, c, d]], ma=[], sigma2=np.ones(4))
        table = green_coefficients(model, 8, 4)  # t = 8 sits in season 4
        assert_allclose(table.value(4), a * b * c * d, rtol=1e-14)

    def test_matches_naive_laplace_expansion(self, rng):
        for _ in range(20):
            model = random_model(rng, p=int(rng.integers(1, 4)), q=0,
                                 l=int(rng.integers(1, 6)))
            t = int(rng.integers(-6, 7))
            table = green_coefficients(model, t, 12)
            for k in range(1, 13):
                det = laplace_determinant(build_fundamental(model, t, k))
                assert_allclose(table.value(k), det,
                                rtol=1e-10, atol=1e-300)

    def test_random_par35_matches_oracle(self, rng):
        model = random_model(rng, p=3, q=0, l=5)
        t = 5
        table = green_coefficients(model, t, 12)
        for k in range(1, 13):
            det = laplace_determinant(build_fundamental(model, t, k))
            assert abs(table.value(k) - det) <= 1e-10 * max(1.0, abs(det))

    def test_lu_agreement_at_larger_orders(self, rng):
        model = random_model(rng, p=4, q=0, l=6)
        table = green_coefficients(model, 0, 150)
        for k in (40, 97, 150):
            det = lu_determinant(build_fundamental(model, 0, k))
            assert_allclose(table.value(k), det, rtol=1e-8)

    def test_anchor_shift_by_period_is_identical(self, rng):
        model = random_model(rng, q=0)
        t = int(rng.integers(-8, 9))
        a = green_coefficients(model, t, 30)
        b = green_coefficients(model, t + model.l, 30)
        assert np.array_equal(a.values, b.values)
        assert a.anchor_season == b.anchor_season

    def test_p0_table_is_impulse_only(self):
        model = PeriodicModel(l=3, p=0, q=0, drift=np.zeros(3), ar=[], ma=[],
                              sigma2=np.ones(3))
        table = green_coefficients(model, 1, 6)
        assert_allclose(table.nonnegative, [1, 0, 0, 0, 0, 0, 0])

    def test_constant_model_reduces_to_classical_psi(self, rng):
        # spectral radius kept moderate so the comparison stays well scaled
        for phi, theta in [((0.5,), ()), ((0.6, -0.3), ()), ((0.5,), (0.3,)),
                           ((1.2, -0.5), (0.4, 0.2))]:
            model = PeriodicModel.constant(ar=phi, ma=theta, l=3)
            psi = psi_by_power_series(phi, theta, 50)
            got = error_weights(model, 7, 51)
            assert_allclose(got, psi, rtol=0, atol=1e-12)

    def test_overflow_flag(self):
        model = PeriodicModel.constant(ar=[2.0], l=1)
        assert green_coefficients(model, 0, 400).overflowing
        assert not green_coefficients(model, 0, 10).overflowing


class TestErrorWeights:
    def test_pure_ar_equals_green_table(self, rng):
        model = random_model(rng, p=2, q=0, l=3)
        table = green_coefficients(model, 4, 7)
        assert np.array_equal(error_weights(model, 4, 8), table.nonnegative)

    def test_constant_arma11_psi(self):
        model = PeriodicModel.constant(ar=[0.5], ma=[0.3], l=1)
        assert_allclose(error_weights(model, 0, 3), [1.0, 0.8, 0.4])

    def test_parma_matches_impulse_propagation(self, rng):
        for _ in range(5):
            model = random_model(rng, p=1, q=1, l=2)
            t = int(rng.integers(0, 5))
            h = 6
            got = error_weights(model, t, h)
            want = [impulse_weight(model, t, r, origin_lead=h) for r in range(h)]
            assert_allclose(got, want, rtol=1e-12, atol=1e-12)


class TestKnownInnovationWeights:
    def test_q0_is_empty(self, rng):
        model = random_model(rng, q=0)
        assert known_innovation_weights(model, 3, 2).size == 0

    def test_single_ma_lag_one_step(self, rng):
        model = random_model(rng, p=2, q=1, l=3)
        t = 5
        got = known_innovation_weights(model, t, lead=1)
        assert_allclose(got, [model.view().ma(1, t)])

    def test_parma12_matches_impulse_propagation(self, rng):
        for _ in range(5):
            model = random_model(rng, p=1, q=2, l=2)
            t = int(rng.integers(0, 4))
            lead = 2
            got = known_innovation_weights(model, t, lead)
            want = [impulse_weight(model, t, r, origin_lead=lead)
                    for r in range(lead, lead + model.q)]
            assert_allclose(got, want, rtol=1e-12, atol=1e-12)


class TestDeterminantOracles:
    def test_laplace_matches_numpy_on_dense(self, rng):
        for n in (1, 2, 5, 8):
            a = rng.normal(size=(n, n))
            assert_allclose(laplace_determinant(a), np.linalg.det(a), rtol=1e-9)

    def test_lu_matches_numpy(self, rng):
        a = rng.normal(size=(60, 60))
        assert_allclose(lu_determinant(a), np.linalg.det(a), rtol=1e-9)

    def test_guards(self):
        with pytest.raises(ValueError, match="order 14"):
            laplace_determinant(np.eye(15))
        with pytest.raises(ValueError, match="order 512"):
            lu_determinant(np.eye(513))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="square"):
            laplace_determinant(np.zeros((2, 3)))
        with pytest.raises(ValueError, match="square"):
            lu_determinant(np.zeros((2, 3)))

    def test_singular_matrix_is_zero(self):
        a = np.ones((4, 4))
        assert lu_determinant(a) == 0.0


class TestContractEdges:
    def test_table_lag_bounds(self, rng):
        model = random_model(rng, p=2, q=0)
        table = green_coefficients(model, 0, 5)
        with pytest.raises(IndexError):
            table.value(6)
        with pytest.raises(IndexError):
            table.value(-2)
        with pytest.raises(IndexError):
            table.lags(-2, 3)

    def test_negative_max_lag_rejected(self, rng):
        with pytest.raises(ValueError, match="max_lag"):
            green_coefficients(random_model(rng), 0, -1)

    def test_zero_order_fundamental_rejected(self, rng):
        with pytest.raises(ValueError, match="order"):
            build_fundamental(random_model(rng), 0, 0)

    def test_bad_principal_submatrix(self, rng):
        f = build_fundamental(random_model(rng, p=1, q=0), 0, 3)
        with pytest.raises(ValueError):
            f.principal_submatrix(3)

    def test_weight_helpers_validate_inputs(self, rng):
        model = random_model(rng, p=1, q=1, l=2)
        with pytest.raises(ValueError, match="horizon"):
            error_weights(model, 0, 0)
        with pytest.raises(ValueError, match="lead"):
            known_innovation_weights(model, 0, 0)
        wrong_season = green_coefficients(model, 1, 8)
        with pytest.raises(ValueError, match="season"):
            error_weights(model, 2, 4, table=wrong_season)
        with pytest.raises(ValueError, match="season"):
            known_innovation_weights(model, 2, 3, table=wrong_season)
