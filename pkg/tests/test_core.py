import numpy as np
import pytest

from mvlowrank.core import (
    BlockCoefficients,
    MultiViewDesign,
    ResponseMatrix,
    concat_design,
    nuclear_norm,
    numeric_rank,
    operator_norm,
    svd,
)

from oracles import eig_singular_values, power_iteration_top_singular


def random_design(rng, n, sizes):
    return MultiViewDesign(tuple(rng.standard_normal((n, p)) for p in sizes))


class TestContainers:
    def test_design_bookkeeping(self):
        rng = np.random.default_rng(0)
        d = random_design(rng, 7, (2, 3, 4))
        assert d.n_samples == 7
        assert d.n_blocks == 3
        assert d.block_sizes == (2, 3, 4)
        assert d.n_features == 9

    def test_design_rejects_row_mismatch(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError, match="rows"):
            MultiViewDesign((rng.standard_normal((4, 2)), rng.standard_normal((5, 2))))

    def test_design_rejects_empty(self):
        with pytest.raises(ValueError):
            MultiViewDesign(())

    def test_design_blocks_are_frozen_copies(self):
        src = np.ones((3, 2))
        d = MultiViewDesign((src,))
        src[0, 0] = 7.0
        assert d.blocks[0][0, 0] == 1.0
        with pytest.raises(ValueError):
            d.blocks[0][0, 0] = 2.0

    def test_responses_reject_non_finite(self):
        bad = np.ones((3, 2))
        bad[1, 1] = np.nan
        with pytest.raises(ValueError, match="finite"):
            ResponseMatrix(bad)

    def test_coefficients_roundtrip(self):
        rng = np.random.default_rng(1)
        full = rng.standard_normal((9, 4))
        b = BlockCoefficients.from_full(full, (2, 3, 4))
        assert b.block_sizes == (2, 3, 4)
        np.testing.assert_array_equal(b.full, full)

    def test_coefficients_reject_column_mismatch(self):
        with pytest.raises(ValueError, match="columns"):
            BlockCoefficients((np.ones((2, 3)), np.ones((2, 4))))


class TestConcatDesign:
    def test_single_block_identity(self):
        rng = np.random.default_rng(2)
        block = rng.standard_normal((5, 3))
        d = MultiViewDesign((block,))
        np.testing.assert_array_equal(concat_design(d), block)

    def test_two_blocks_layout(self):
        rng = np.random.default_rng(3)
        b1 = rng.standard_normal((4, 2))
        b2 = rng.standard_normal((4, 3))
        x = concat_design(MultiViewDesign((b1, b2)))
        assert x.shape == (4, 5)
        np.testing.assert_array_equal(x[:, :2], b1)
        np.testing.assert_array_equal(x[:, 2:], b2)

    def test_split_concat_roundtrip_is_bit_exact(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal((6, 9))
        d = MultiViewDesign((x[:, :2], x[:, 2:5], x[:, 5:]))
        np.testing.assert_array_equal(concat_design(d), x)


class TestNorms:
    def test_nuclear_norm_zero(self):
        assert nuclear_norm(np.zeros((3, 4))) == 0.0

    def test_nuclear_norm_diagonal(self):
        assert nuclear_norm(np.diag([3.0, 1.0])) == pytest.approx(4.0, abs=1e-12)

    def test_nuclear_norm_matches_eig_oracle(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((4, 3))
        assert nuclear_norm(a) == pytest.approx(eig_singular_values(a).sum(), abs=1e-10)

    def test_operator_norm_identity(self):
        assert operator_norm(np.eye(4)) == pytest.approx(1.0, abs=1e-12)

    def test_operator_norm_diagonal(self):
        assert operator_norm(np.diag([3.0, 1.0])) == pytest.approx(3.0, abs=1e-12)

    def test_operator_norm_matches_power_iteration(self):
        rng = np.random.default_rng(6)
        a = rng.standard_normal((5, 4))
        assert operator_norm(a) == pytest.approx(
            power_iteration_top_singular(a, tol=1e-12), abs=1e-8
        )

    def test_nuclear_dominates_operator(self):
        rng = np.random.default_rng(7)
        for trial in range(20):
            a = rng.standard_normal((6, 4))
            assert nuclear_norm(a) >= operator_norm(a) - 1e-12
        # equality holds exactly for rank <= 1
        u = rng.standard_normal(6)
        v = rng.standard_normal(4)
        a1 = np.outer(u, v)
        assert nuclear_norm(a1) == pytest.approx(operator_norm(a1), rel=1e-10)
        assert numeric_rank(a1) == 1

    def test_absolute_homogeneity(self):
        rng = np.random.default_rng(8)
        a = rng.standard_normal((5, 3))
        base = nuclear_norm(a)
        for c in (-2.0, 0.0, 0.5):
            assert nuclear_norm(c * a) == pytest.approx(abs(c) * base, abs=1e-10)


class TestNumericRank:
    def test_zero_matrix(self):
        assert numeric_rank(np.zeros((4, 5))) == 0

    def test_identity(self):
        assert numeric_rank(np.eye(4), tol=1e-8) == 4

    def test_low_rank_product(self):
        rng = np.random.default_rng(9)
        left = rng.standard_normal((6, 2))
        right = rng.standard_normal((5, 2))
        a = left @ right.T
        assert numeric_rank(a) == 2
        # cross-check with the eigendecomposition oracle
        s = eig_singular_values(a)
        assert int((s > 1e-8 * s[0]).sum()) == 2

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            numeric_rank(np.eye(2), tol=0.0)


class TestSvd:
    def test_reconstruction_and_ordering(self):
        rng = np.random.default_rng(10)
        for n, p in ((20, 10), (50, 80), (500, 500)):
            a = rng.standard_normal((n, p))
            res = svd(a)
            assert np.all(np.diff(res.singular_values) <= 0)
            assert np.all(res.singular_values >= 0)
            err = operator_norm(a - res.reconstruct()) / max(1.0, operator_norm(a))
            assert err < 1e-10

    def test_orthonormal_factors(self):
        rng = np.random.default_rng(11)
        a = rng.standard_normal((12, 7))
        res = svd(a)
        np.testing.assert_allclose(
            res.left_vectors.T @ res.left_vectors, np.eye(7), atol=1e-12
        )
        np.testing.assert_allclose(
            res.right_vectors.T @ res.right_vectors, np.eye(7), atol=1e-12
        )
