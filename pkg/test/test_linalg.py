# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

# pylint: disable=invalid-name,missing-docstring

from test.common import CCauchyTestCase

import unittest

import numpy as np

from ccauchy import linalg
from ccauchy.ccauchyerror import (DimensionMismatch, NotPositiveDefinite,
                                  ResampleExhausted, SingularInput)


class TestHermitianPD(CCauchyTestCase):
    """Validation of scatter matrices."""

    def test_identity(self):
        hpd = linalg.HermitianPD.identity(3)
        self.assertEqual(hpd.dim, 3)
        self.assertAllClose(hpd.chol, np.eye(3))
        self.assertEqual(hpd.logdet(), 0.0)

    def test_non_hermitian_names_entry_pair(self):
        with self.assertRaises(NotPositiveDefinite) as context:
            linalg.HermitianPD([[2.0, 0.5], [0.25, 2.0]])
        self.assertIn('(0, 1)', context.exception.message)
        self.assertIn('(1, 0)', context.exception.message)

    def test_not_square(self):
        with self.assertRaises(DimensionMismatch):
            linalg.HermitianPD(np.ones((2, 3)))

    def test_non_finite(self):
        with self.assertRaises(NotPositiveDefinite):
            linalg.HermitianPD([[np.nan]])
        with self.assertRaises(NotPositiveDefinite):
            linalg.HermitianPD([[1.0, np.inf], [np.inf, 1.0]])

    def test_not_two_dimensional(self):
        with self.assertRaises(DimensionMismatch):
            linalg.as_cmat([1.0, 2.0])

    def test_read_only(self):
        hpd = linalg.HermitianPD([[2.0, 1j], [-1j, 2.0]])
        with self.assertRaises(ValueError):
            hpd.matrix[0, 0] = 5.0
        with self.assertRaises(ValueError):
            hpd.chol[0, 0] = 5.0

    def test_logdet(self):
        sigma = linalg.random_hpd(4, seed=11)
        sign, expected = np.linalg.slogdet(sigma.matrix)
        self.assertAlmostEqual(sign.real, 1.0)
        self.assertAlmostEqual(sigma.logdet(), expected, places=10)

    def test_equality(self):
        first = linalg.HermitianPD([[2.0, 1j], [-1j, 2.0]])
        second = linalg.HermitianPD(np.array([[2.0, 1j], [-1j, 2.0]]))
        self.assertEqual(first, second)
        self.assertEqual(hash(first), hash(second))
        self.assertNotEqual(first, linalg.HermitianPD.identity(2))


class TestCholesky(CCauchyTestCase):
    """Hermitian Cholesky factor."""

    def test_identity(self):
        self.assertAllClose(linalg.cholesky(np.eye(2)), np.eye(2), atol=0.0)

    def test_multiply_back(self):
        sigma = np.array([[2.0, 1j], [-1j, 2.0]])
        chol = linalg.cholesky(sigma)
        self.assertAllClose(np.triu(chol, 1), np.zeros((2, 2)), atol=0.0)
        self.assertTrue(np.all(np.diag(chol).real > 0))
        self.assertAllClose(np.diag(chol).imag, np.zeros(2), atol=0.0)
        self.assertAllClose(chol @ chol.conj().T, sigma, atol=1e-12 * 2.0)

    def test_random_multiply_back(self):
        for seed in range(20):
            sigma = linalg.random_hpd(1 + seed % 5, seed=seed)
            chol = linalg.cholesky(sigma)
            scale = linalg.max_norm(sigma.matrix)
            self.assertAllClose(chol @ chol.conj().T, sigma.matrix, atol=1e-12 * scale)

    def test_near_singular(self):
        v = np.array([1.0, 1j])
        sigma = np.outer(v, v.conj()) + 1e-15 * np.eye(2)
        with self.assertRaises(NotPositiveDefinite):
            linalg.cholesky(sigma)

    def test_indefinite(self):
        with self.assertRaises(NotPositiveDefinite):
            linalg.cholesky([[1.0, 2.0], [2.0, 1.0]])


class TestRQDecompose(CCauchyTestCase):
    """RQ factorization with canonical phases."""

    def assertValidFactors(self, mat, factors, residual=1e-10):
        r, q = factors
        n = mat.shape[0]
        self.assertAllClose(r @ q, mat, atol=residual * linalg.max_norm(mat))
        self.assertAllClose(q @ q.conj().T, np.eye(n), atol=1e-12)
        self.assertAllClose(np.tril(r, -1), np.zeros((n, n)), atol=1e-12)
        self.assertTrue(np.all(np.diag(r).real > 0))
        self.assertTrue(np.all(np.diag(r).imag == 0))

    def test_upper_triangular(self):
        mat = np.array([[2.0, 1.0 + 1j, 3.0], [0.0, 1.5, -1j], [0.0, 0.0, 0.5]])
        factors = linalg.rq_decompose(mat)
        self.assertAllClose(factors.r, mat, atol=1e-12)
        self.assertAllClose(factors.q, np.eye(3), atol=1e-12)

    def test_permutation(self):
        mat = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        self.assertValidFactors(mat, linalg.rq_decompose(mat), residual=1e-12)

    def test_ginibre(self):
        mat = linalg.ginibre(4, np.random.default_rng(7))
        self.assertValidFactors(mat, linalg.rq_decompose(mat))

    def test_random_sizes(self):
        for seed in range(60):
            mat = linalg.random_invertible(1 + seed % 6, seed=seed)
            self.assertValidFactors(mat, linalg.rq_decompose(mat))

    def test_repeatable(self):
        mat = linalg.random_invertible(5, seed=3)
        first = linalg.rq_decompose(mat)
        second = linalg.rq_decompose(mat.copy())
        self.assertTrue(np.array_equal(first.r, second.r))
        self.assertTrue(np.array_equal(first.q, second.q))

    def test_singular(self):
        with self.assertRaises(SingularInput):
            linalg.rq_decompose([[1.0, 2.0], [0.0, 0.0]])

    def test_not_square(self):
        with self.assertRaises(DimensionMismatch):
            linalg.rq_decompose(np.ones((2, 3)))


class TestDet(CCauchyTestCase):

    def test_triangular(self):
        self.assertEqual(linalg.det(np.diag([2.0, 3.0])), 6.0)
        self.assertEqual(linalg.det(np.eye(5)), 1.0)
        self.assertEqual(linalg.det([[2.0, 0.0], [7.0, 1j]]), 2j)

    def test_permutation_parity(self):
        self.assertEqual(linalg.det([[0.0, 1.0], [1.0, 0.0]]), -1.0)

    def test_singular(self):
        self.assertEqual(linalg.det([[1.0, 2.0], [2.0, 4.0]]), 0.0)

    def test_random(self):
        mat = linalg.ginibre(5, np.random.default_rng(2))
        expected = np.linalg.det(mat)
        self.assertLess(abs(linalg.det(mat) - expected), 1e-10 * abs(expected))


class TestSolveHPD(CCauchyTestCase):

    def test_solve(self):
        sigma = linalg.random_hpd(3, seed=4)
        rhs = np.array([1.0, 1j, -2.0 + 0.5j])
        solution = linalg.solve_hpd(sigma, rhs)
        self.assertAllClose(sigma.matrix @ solution, rhs, atol=1e-10)

    def test_columns(self):
        sigma = np.array([[2.0, 1j], [-1j, 2.0]])
        self.assertAllClose(sigma @ linalg.solve_hpd(sigma, np.eye(2)), np.eye(2), atol=1e-12)

    def test_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            linalg.solve_hpd(np.eye(2), np.ones(3))


class TestRandomMatrices(CCauchyTestCase):

    def test_unitary(self):
        for n in range(1, 7):
            u = linalg.random_unitary(n, seed=n)
            self.assertAllClose(u @ u.conj().T, np.eye(n), atol=1e-12)

    def test_unitary_deterministic(self):
        self.assertTrue(np.array_equal(linalg.random_unitary(4, seed=9),
                                       linalg.random_unitary(4, seed=9)))

    def test_invertible_guard(self):
        guard = 0.2
        for seed in range(10):
            svals = np.linalg.svd(linalg.random_invertible(3, seed=seed, min_condition_guard=guard),
                                  compute_uv=False)
            self.assertGreaterEqual(svals[-1], guard * svals[0])

    def test_invertible_exhausted(self):
        with self.assertRaises(ResampleExhausted):
            linalg.random_invertible(3, seed=0, min_condition_guard=1.0)

    def test_random_hpd(self):
        sigma = linalg.random_hpd(3, seed=5)
        self.assertIsInstance(sigma, linalg.HermitianPD)
        self.assertAllClose(sigma.matrix, sigma.matrix.conj().T, atol=0.0)


if __name__ == '__main__':
    unittest.main()
