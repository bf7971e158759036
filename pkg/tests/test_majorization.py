import math

import numpy as np
import pytest

from polycrit.poly import Polynomial
from polycrit import majorization as mj

from conftest import disk_points


def power_minus_z(n):
    coeffs = [0.0] * (n + 1)
    coeffs[1] = -1.0
    coeffs[n] = 1.0
    return Polynomial(tuple(coeffs))


class TestTuples:
    def test_pm_one_first_order(self):
        p = Polynomial((-1.0, 0.0, 1.0))
        Z = mj.tuple_Z(p, 0.0, 1)
        W = mj.tuple_W(p, 0.0, 1)
        assert sorted(v.real for v in Z.values) == [-1.0, 1.0]
        assert len(W.values) == 1 and abs(W.values[0]) <= 1e-14

    @pytest.mark.parametrize("n", range(3, 9))
    def test_power_family_moduli(self, n):
        W = mj.tuple_W(power_minus_z(n), 0.0, 1)
        assert np.abs(np.abs(np.array(W.values)) - n ** (-1 / (n - 1))).max() <= 1e-12

    def test_cubic_pair_products(self):
        p = power_minus_z(3)
        Z = mj.tuple_Z(p, 0.0, 2)
        W = mj.tuple_W(p, 0.0, 2)
        assert sorted(round(v.real, 9) for v in Z.values) == [-1.0, 0.0, 0.0]
        assert len(W.values) == 1
        assert abs(W.values[0] - (-1 / 3)) <= 1e-12

    def test_counts_match_binomials(self, rng):
        p = Polynomial.from_roots(disk_points(rng, 6, min_sep=1e-2))
        for k in range(1, 6):
            assert len(mj.tuple_Z(p, 0.1j, k).values) == math.comb(6, k)
            assert len(mj.tuple_W(p, 0.1j, k).values) == math.comb(5, k)

    def test_blowup_capped(self):
        p = Polynomial.from_roots(0.9 * np.exp(2j * np.pi * np.arange(16) / 16))
        with pytest.raises(ValueError, match="blowup"):
            mj.tuple_Z(p, 0.0, 8)

    def test_k_range_guard(self):
        p = power_minus_z(3)
        with pytest.raises(ValueError):
            mj.tuple_Z(p, 0.0, 3)

    def test_relabeling_invariance(self, rng):
        roots = disk_points(rng, 5, min_sep=1e-2)
        t1 = mj.tuple_Z(Polynomial.from_roots(roots), 0.2, 2)
        t2 = mj.tuple_Z(Polynomial.from_roots(roots[::-1]), 0.2, 2)
        a = sorted(t1.values, key=lambda z: (z.real, z.imag))
        b = sorted(t2.values, key=lambda z: (z.real, z.imag))
        assert np.abs(np.array(a) - np.array(b)).max() <= 1e-10


class TestCheckMajorization:
    def test_centroid_witness(self):
        X = mj.ProductTuple((0.0 + 0j,), 0.0, 1)
        Y = mj.ProductTuple((1.0 + 0j, -1.0 + 0j), 0.0, 1)
        cert = mj.check_majorization(X, Y)
        assert cert is not None
        assert np.allclose(cert.R, [[0.5, 0.5]])

    def test_outside_hull_infeasible(self):
        X = mj.ProductTuple((2.0 + 0j,), 0.0, 1)
        Y = mj.ProductTuple((1.0 + 0j, -1.0 + 0j), 0.0, 1)
        assert mj.check_majorization(X, Y) is None

    def test_genuine_pairs_feasible_all_orders(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 7))
            p = Polynomial.from_roots(disk_points(rng, n))
            for k in range(1, n):
                cert = mj.check_majorization(mj.tuple_W(p, 0.0, k), mj.tuple_Z(p, 0.0, k))
                assert cert is not None
                assert cert.row_sum_residual <= 1e-8
                assert cert.col_sum_residual <= 1e-8
                assert cert.neg_entry <= 1e-9
                assert cert.reconstruction_residual <= 1e-7

    def test_corrupted_mean_infeasible(self, rng):
        # a shifted critical tuple moves the mean, which a rectangularly
        # stochastic matrix always preserves
        p = Polynomial.from_roots(disk_points(rng, 4, min_sep=1e-2))
        W = mj.tuple_W(p, 0.0, 1)
        shifted = mj.ProductTuple(tuple(v + 3.0 for v in W.values), 0.0, 1)
        assert mj.check_majorization(shifted, mj.tuple_Z(p, 0.0, 1)) is None

    def test_size_order_guard(self):
        X = mj.ProductTuple((0.0 + 0j, 1.0 + 0j), 0.0, 1)
        Y = mj.ProductTuple((1.0 + 0j,), 0.0, 1)
        with pytest.raises(ValueError, match="len"):
            mj.check_majorization(X, Y)


class TestDbsInequality:
    def test_quartic_modulus_means(self):
        p = power_minus_z(4)
        lhs, rhs = mj.dbs_inequality(mj.tuple_W(p, 0.0, 1), mj.tuple_Z(p, 0.0, 1), "abs")
        assert abs(lhs - 4 ** (-1 / 3)) <= 1e-10
        assert abs(rhs - 0.75) <= 1e-12
        assert lhs <= rhs

    def test_linear_functional_equality(self, rng):
        # means of re are equal at first order: the critical centroid
        # matches the root centroid
        p = Polynomial.from_roots(disk_points(rng, 5))
        lhs, rhs = mj.dbs_inequality(mj.tuple_W(p, 0.0, 1), mj.tuple_Z(p, 0.0, 1), "re")
        assert abs(lhs - rhs) <= 1e-10

    def test_squared_modulus(self):
        p = Polynomial((-1.0, 0.0, 1.0))
        lhs, rhs = mj.dbs_inequality(mj.tuple_W(p, 0.0, 1), mj.tuple_Z(p, 0.0, 1), "abs2")
        assert abs(lhs) <= 1e-14
        assert abs(rhs - 1.0) <= 1e-14

    def test_all_builtins_dominated_for_genuine_pairs(self, rng):
        for _ in range(5):
            n = int(rng.integers(3, 7))
            p = Polynomial.from_roots(disk_points(rng, n))
            for k in (1, n - 1):
                W, Z = mj.tuple_W(p, 0.0, k), mj.tuple_Z(p, 0.0, k)
                if mj.check_majorization(W, Z) is None:
                    continue
                for f_id in mj.CONVEX_TESTS:
                    lhs, rhs = mj.dbs_inequality(W, Z, f_id)
                    assert lhs <= rhs + 1e-9, f_id

    def test_parameterized_distance(self):
        p = power_minus_z(3)
        lhs, rhs = mj.dbs_inequality(
            mj.tuple_W(p, 0.0, 1), mj.tuple_Z(p, 0.0, 1), "dist:0.3,-0.2"
        )
        assert lhs <= rhs + 1e-9

    def test_unknown_identifier(self):
        p = power_minus_z(3)
        with pytest.raises(ValueError, match="unknown convex test"):
            mj.dbs_inequality(mj.tuple_W(p, 0.0, 1), mj.tuple_Z(p, 0.0, 1), "cube")


class TestSymmetricMeanIdentity:
    def test_genuine_pairs_vanish(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 7))
            p = Polynomial.from_roots(disk_points(rng, n))
            for k in range(1, n):
                for _ in range(10):
                    alpha = complex(*rng.uniform(-1, 1, 2))
                    assert mj.symmetric_mean_identity(p, alpha, k) <= 1e-9

    def test_corrupted_critical_set_breaks_identity(self, rng):
        # moving one critical point by 0.1 shifts the first-order mean by
        # 0.1/(n-1), far above the identity tolerance
        p = Polynomial.from_roots(disk_points(rng, 5, min_sep=1e-2))
        W = mj.tuple_W(p, 0.0, 1)
        Z = mj.tuple_Z(p, 0.0, 1)
        corrupted = np.array(W.values)
        corrupted[0] += 0.1
        residual = abs(np.mean(corrupted) - np.mean(np.array(Z.values)))
        assert residual > 1e-3

    def test_top_order_reduces_to_derivative_at_origin(self, rng):
        for n in (3, 4, 6):
            p = Polynomial.from_roots(disk_points(rng, n, min_sep=1e-2))
            W = mj.tuple_W(p, 0.0, n - 1)
            prod_w = W.values[0]
            expect = (-1.0) ** (n - 1) * p.derivative()(0.0) / n
            assert abs(prod_w - expect) <= 1e-10
            assert mj.symmetric_mean_identity(p, 0.0, n - 1) <= 1e-9
