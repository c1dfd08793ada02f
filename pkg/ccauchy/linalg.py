# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
Dense complex matrix kernels: Hermitian Cholesky, RQ factorization,
determinants, Hermitian solves and random matrices.

Matrices are complex128 numpy arrays. Factorizations delegate to LAPACK
through scipy.linalg and add the validation and canonical forms the rest of
the package relies on.
"""

import collections
import logging
import warnings

import numpy as np
import scipy.linalg

from .ccauchyerror import (CCauchyError, DimensionMismatch, NotPositiveDefinite,
                           ResampleExhausted, SingularInput)

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
PIVOT_TOL = 1e-13
CONDITION_GUARD = 1e-4
MAX_RESAMPLE = 100

RQFactors = collections.namedtuple('RQFactors', ['r', 'q'])


def as_cmat(m, name='matrix', error=CCauchyError):
    """Validate and copy `m` as a finite 2-D complex matrix.

    Raises:
        DimensionMismatch: if `m` is not 2-D or is empty.
        CCauchyError: of class `error` if `m` has non-finite entries.
    """
    mat = np.array(m, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise DimensionMismatch('{} must be a non-empty 2-D array, got shape {}'.format(
            name, mat.shape))
    if not np.all(np.isfinite(mat)):
        raise error('{} has non-finite entries'.format(name))
    return mat


def max_norm(m):
    """Largest entry modulus."""
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def _square(m, name='matrix', error=CCauchyError):
    mat = as_cmat(m, name, error)
    if mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch('{} must be square, got shape {}'.format(name, mat.shape))
    return mat


class HermitianPD(object):
    """Hermitian positive-definite matrix with its Cholesky factor.

    The factor is computed once at construction, which is where positive
    definiteness is checked.
    """

    def __init__(self, matrix):
        """
        Args:
            matrix (array_like): dim x dim complex matrix.

        Raises:
            NotPositiveDefinite: if the matrix is not Hermitian within 1e-12
                or a Cholesky pivot falls below 1e-13 times the largest
                diagonal entry.
                Also raised for non-finite entries.
        """
        mat = _square(matrix, 'scatter', NotPositiveDefinite)
        diff = np.abs(mat - mat.conj().T)
        if np.max(diff) > HERMITIAN_TOL:
            j, k = np.unravel_index(np.argmax(diff), diff.shape)
            raise NotPositiveDefinite(
                'matrix is not Hermitian: entry ({}, {}) = {} but entry ({}, {}) = {}'.format(
                    j, k, mat[j, k], k, j, mat[k, j]))
        # the Hermitian part carries the matrix from here on
        mat = 0.5 * (mat + mat.conj().T)
        self._matrix = mat
        self._matrix.setflags(write=False)
        self._chol = _cholesky_factor(mat)
        self._chol.setflags(write=False)

    @classmethod
    def identity(cls, dim):
        """Identity matrix of size `dim`."""
        return cls(np.eye(dim, dtype=complex))

    @property
    def dim(self):
        """Matrix dimension."""
        return self._matrix.shape[0]

    @property
    def matrix(self):
        """The matrix (read-only)."""
        return self._matrix

    @property
    def chol(self):
        """Lower-triangular L with L L* equal to the matrix (read-only)."""
        return self._chol

    def logdet(self):
        """Natural log of the (real, positive) determinant."""
        return 2.0 * float(np.sum(np.log(np.real(np.diag(self._chol)))))

    def __eq__(self, other):
        if not isinstance(other, HermitianPD):
            return NotImplemented
        return np.array_equal(self._matrix, other._matrix)

    def __hash__(self):
        return hash(self._matrix.tobytes())

    def __repr__(self):
        return 'HermitianPD({!r})'.format(self._matrix.tolist())


def _as_hpd(sigma):
    return sigma if isinstance(sigma, HermitianPD) else HermitianPD(sigma)


def _cholesky_factor(mat):
    scale = float(np.max(np.real(np.diag(mat))))
    if scale <= 0:
        raise NotPositiveDefinite('matrix has no positive diagonal entry')
    try:
        chol = scipy.linalg.cholesky(mat, lower=True, check_finite=False)
    except np.linalg.LinAlgError as err:
        raise NotPositiveDefinite('Cholesky factorization failed: {}'.format(err))
    pivots = np.real(np.diag(chol)) ** 2
    k = int(np.argmin(pivots))
    if pivots[k] <= PIVOT_TOL * scale:
        raise NotPositiveDefinite(
            'pivot {} is {:.3e}, below {:.0e} x largest diagonal {:.3e}'.format(
                k, pivots[k], PIVOT_TOL, scale))
    return np.tril(chol)


def cholesky(sigma):
    """Lower-triangular factor L with L L* = sigma and real positive diagonal.

    Args:
        sigma (HermitianPD or array_like): scatter matrix.

    Returns:
        numpy.ndarray: the factor.

    Raises:
        NotPositiveDefinite: if sigma is not Hermitian positive definite.
    """
    return np.array(_as_hpd(sigma).chol)


def rq_decompose(m):
    """Factor a square invertible matrix as m = r q.

    r is upper triangular with a positive real diagonal and q is unitary.
    With that diagonal the factorization is unique, so equal inputs give
    bitwise equal factors.

    Args:
        m (array_like): n x n complex matrix.

    Returns:
        RQFactors: the factors.

    Raises:
        SingularInput: if a diagonal entry of r is negligible relative to
            the largest one.
    """
    mat = _square(m)
    n = mat.shape[0]
    r, q = scipy.linalg.rq(mat, check_finite=False)
    diag = np.diag(r)
    moduli = np.abs(diag)
    if moduli.min() <= n * np.finfo(float).eps * moduli.max():
        raise SingularInput('triangular pivot {:.3e} is negligible against {:.3e}'.format(
            moduli.min(), moduli.max()))
    # m = (r D^-1)(D q) with D the diagonal phases of r
    phases = diag / moduli
    r = np.triu(r / phases[np.newaxis, :])
    r[np.diag_indices(n)] = moduli
    q = q * phases[:, np.newaxis]
    return RQFactors(r=r, q=q)


def det(m):
    """Determinant, exact for triangular input and 0 for singular input."""
    mat = _square(m)
    if not np.any(np.tril(mat, -1)) or not np.any(np.triu(mat, 1)):
        return complex(np.prod(np.diag(mat)))
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(mat, check_finite=False)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    sign = -1.0 if swaps % 2 else 1.0
    return complex(sign * np.prod(np.diag(lu)))


def solve_hpd(sigma, v):
    """Solve sigma w = v through the Cholesky factor of sigma.

    Args:
        sigma (HermitianPD or array_like): scatter matrix.
        v (array_like): right-hand side, a vector or a matrix of columns.

    Returns:
        numpy.ndarray: w, same shape as v.

    Raises:
        NotPositiveDefinite: if sigma is not Hermitian positive definite.
        DimensionMismatch: if the sizes disagree.
    """
    hpd = _as_hpd(sigma)
    rhs = np.asarray(v, dtype=complex)
    if rhs.shape[0] != hpd.dim:
        raise DimensionMismatch('right-hand side has length {}, matrix has dimension {}'.format(
            rhs.shape[0], hpd.dim))
    return scipy.linalg.cho_solve((hpd.chol, True), rhs, check_finite=False)


def ginibre(n, rng):
    """n x n matrix of iid standard complex Gaussians (unit total variance)."""
    draws = rng.standard_normal((n, n, 2))
    return (draws[..., 0] + 1j * draws[..., 1]) / np.sqrt(2.0)


def random_unitary(n, seed=None):
    """Haar-distributed n x n unitary.

    QR of a Ginibre matrix, with Q's columns rotated by the phases of R's
    diagonal so that the triangular factor has a positive real diagonal.
    """
    if n < 1:
        raise CCauchyError('unitary size must be at least 1, got {}'.format(n))
    rng = np.random.default_rng(seed)
    q, r = scipy.linalg.qr(ginibre(n, rng), check_finite=False)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))[np.newaxis, :]


def random_invertible(n, seed=None, min_condition_guard=CONDITION_GUARD):
    """Ginibre n x n matrix whose smallest/largest singular value ratio is at
    least `min_condition_guard`, redrawn from the same generator until it is.

    Raises:
        ResampleExhausted: after 100 rejected draws.
    """
    if n < 1:
        raise CCauchyError('matrix size must be at least 1, got {}'.format(n))
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RESAMPLE):
        mat = ginibre(n, rng)
        svals = scipy.linalg.svdvals(mat, check_finite=False)
        if svals[-1] >= min_condition_guard * svals[0]:
            if attempt:
                logger.debug('random_invertible accepted after %d redraws', attempt)
            return mat
    raise ResampleExhausted('no {0}x{0} draw met condition guard {1} in {2} attempts'.format(
        n, min_condition_guard, MAX_RESAMPLE))


def random_hpd(n, seed=None, min_condition_guard=CONDITION_GUARD):
    """Random Hermitian positive-definite matrix a a* with a well-conditioned a."""
    mat = random_invertible(n, seed, min_condition_guard)
    return HermitianPD(mat @ mat.conj().T)
