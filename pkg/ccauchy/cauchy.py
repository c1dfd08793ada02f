# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
The Cauchy family on complex p-space.

The standard member gamma has density

    pi^-p Gamma(p+1) (1 + ||z||^2)^-(p+1)

with respect to Lebesgue measure on C^p = R^2p, and the family is its orbit
under affine maps: Z = L Z0 + tau has location tau and scatter
Sigma = L L*, with density

    pi^-p det(Sigma)^-1 Gamma(p+1) (1 + (z - tau)* Sigma^-1 (z - tau))^-(p+1).

The family is closed under every Möbius map of C^p, and pushforward()
computes the image parameters exactly. Realified, a member is the
2p-dimensional t-distribution with two degrees of freedom.
"""

import logging

import numpy as np
import scipy.linalg
import scipy.stats
from scipy.special import gammaln

from . import linalg
from .ccauchyerror import DegenerateDraw, DimensionMismatch, NotAffine, ParseError
from .ccauchyjob import chunk_bounds, chunk_rng, run_chunks
from .mobius import affine_from_parts

logger = logging.getLogger(__name__)

SAMPLE_CHUNK = 8192
UNIT_TOL = 1e-12
AFFINE_CHECK_TOL = 1e-10


def _complex_vector(values, p, name):
    vec = np.asarray(values, dtype=complex).ravel()
    if vec.size != p:
        raise DimensionMismatch('{} has length {}, expected {}'.format(name, vec.size, p))
    if not np.all(np.isfinite(vec)):
        raise ParseError('{} has non-finite entries'.format(name))
    return vec


class ComplexCauchy(object):
    """Cauchy distribution on C^p with location tau and scatter Sigma.

    Values are immutable. Equality compares (tau, Sigma); the Cholesky
    factor is a cache.
    """

    def __init__(self, tau, sigma):
        """
        Args:
            tau (array_like): location, complex vector of length p.
            sigma (HermitianPD or array_like): p x p scatter matrix.

        Raises:
            NotPositiveDefinite: if sigma is not Hermitian positive definite.
            DimensionMismatch: if tau and sigma disagree in size.
        """
        self._sigma = sigma if isinstance(sigma, linalg.HermitianPD) else linalg.HermitianPD(sigma)
        self._tau = _complex_vector(tau, self._sigma.dim, 'location')
        self._tau.setflags(write=False)

    @classmethod
    def standard(cls, p):
        """The standard member gamma of C^p: tau = 0, Sigma = I."""
        if p < 1:
            raise DimensionMismatch('dimension must be at least 1, got {}'.format(p))
        return cls(np.zeros(p, dtype=complex), linalg.HermitianPD.identity(p))

    @classmethod
    def from_affine(cls, alpha):
        """The member alpha . gamma: location offset(alpha), scatter A A* for
        A = linear_part(alpha)."""
        alpha = alpha.as_affine()
        lin = alpha.linear_part
        return cls(alpha.offset, _hermitian(lin @ lin.conj().T))

    @property
    def p(self):
        """Complex dimension."""
        return self._sigma.dim

    @property
    def tau(self):
        """Location (read-only)."""
        return self._tau

    @property
    def sigma(self):
        """Scatter as HermitianPD."""
        return self._sigma

    @property
    def chol(self):
        """Lower-triangular L with L L* = Sigma (read-only)."""
        return self._sigma.chol

    def to_affine(self):
        """The affine map alpha = [[L, tau], [0, 1]] with self = alpha . gamma."""
        return affine_from_parts(self.chol, self._tau)

    def _points(self, z):
        pts = np.asarray(z, dtype=complex)
        if pts.ndim not in (1, 2) or pts.shape[-1] != self.p:
            raise DimensionMismatch('points must have trailing dimension {}, got shape {}'.format(
                self.p, pts.shape))
        return pts

    def quad_form(self, z):
        """(z - tau)* Sigma^-1 (z - tau) by a triangular solve, clamped at 0."""
        pts = self._points(z)
        diff = np.atleast_2d(pts - self._tau)
        white = scipy.linalg.solve_triangular(self.chol, diff.T, lower=True, check_finite=False)
        quad = np.maximum(np.sum(np.abs(white) ** 2, axis=0), 0.0)
        return quad if pts.ndim == 2 else float(quad[0])

    def log_density(self, z):
        """Log density at a point, or at each row of an (n, p) batch."""
        p = self.p
        const = -p * np.log(np.pi) + gammaln(p + 1) - self._sigma.logdet()
        return const - (p + 1) * np.log1p(self.quad_form(z))

    def sample(self, n, seed=None, threads=None):
        """Draw n points as an (n, p) complex array.

        Z0_j = W_j / W_{p+1} for a standard complex Gaussian W in C^{p+1},
        then Z = L Z0 + tau. Rows are generated in chunks of SAMPLE_CHUNK;
        chunk k draws from the k-th spawned child of SeedSequence(seed), so
        the output does not depend on `threads` and a shorter sample is a
        prefix of a longer one.

        Raises:
            DegenerateDraw: if W_{p+1} underflows on a draw and its redraw.
        """
        ratios = _chunked(_standard_ratio_chunk, self.p, n, seed, threads)
        return ratios @ self.chol.T + self._tau

    def pushforward(self, m):
        """Distribution of m(Z) for Z ~ self, itself a member of the family.

        With alpha = [[L, tau], [0, 1]], factor g alpha = r q (r upper
        triangular with positive diagonal, q unitary) and read
        r = [[A, b], [0, delta]]: the image has location b / delta and
        scatter (A / delta)(A / delta)*.
        """
        if m.p != self.p:
            raise DimensionMismatch('map acts on C^{}, distribution lives on C^{}'.format(
                m.p, self.p))
        factors = linalg.rq_decompose(m.g @ self.to_affine().g)
        r = factors.r
        delta = r[-1, -1].real
        lin = r[:-1, :-1] / delta
        result = ComplexCauchy(r[:-1, -1] / delta, _hermitian(lin @ lin.conj().T))
        try:
            affine = m.as_affine()
        except NotAffine:
            return result
        error = param_rel_error(result, affine_pushforward(self, affine))
        if error > AFFINE_CHECK_TOL:
            logger.warning('RQ pushforward differs from the affine law by %.3e', error)
        return result

    def real_embedding(self):
        """The equivalent real t-distribution with two degrees of freedom."""
        mat = self._sigma.matrix
        w = np.block([[mat.real, -mat.imag], [mat.imag, mat.real]])
        eta = np.concatenate([self._tau.real, self._tau.imag])
        return RealT2(eta, 0.5 * (w + w.T))

    def projection_params(self, u):
        """(loc, scale) of Re(u* Z) for a unit vector u.

        Re(u* Z) is distributed as loc + scale T, T having the distribution
        function marginal_cdf.
        """
        vec = _complex_vector(u, self.p, 'direction')
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > UNIT_TOL:
            raise DimensionMismatch('direction must have unit norm, got {:.15g}'.format(norm))
        loc = float(np.vdot(vec, self._tau).real)
        scale = float(np.linalg.norm(self.chol.conj().T @ vec))
        return loc, scale

    def to_dict(self):
        """JSON-ready form {"p", "tau": [[re, im], ...], "sigma": [[[re, im], ...], ...]}."""
        return {'p': self.p,
                'tau': [[float(x.real), float(x.imag)] for x in self._tau],
                'sigma': [[[float(x.real), float(x.imag)] for x in row]
                          for row in self._sigma.matrix]}

    @classmethod
    def from_dict(cls, data):
        """Inverse of to_dict.

        Raises:
            ParseError: if the dictionary is malformed.
            NotPositiveDefinite: if sigma is not Hermitian positive definite.
        """
        try:
            p = int(data['p'])
            tau = np.array(data['tau'], dtype=float)
            sigma = np.array(data['sigma'], dtype=float)
        except (KeyError, TypeError, ValueError) as err:
            raise ParseError('malformed distribution: {}'.format(err))
        if p < 1 or tau.shape != (p, 2) or sigma.shape != (p, p, 2):
            raise ParseError('distribution with p={} has tau shape {} and sigma shape {}'.format(
                p, tau.shape, sigma.shape))
        return cls(tau[:, 0] + 1j * tau[:, 1], sigma[..., 0] + 1j * sigma[..., 1])

    def __eq__(self, other):
        if not isinstance(other, ComplexCauchy):
            return NotImplemented
        return np.array_equal(self._tau, other.tau) and self._sigma == other.sigma

    def __hash__(self):
        return hash((self._tau.tobytes(), hash(self._sigma)))

    def __repr__(self):
        return 'ComplexCauchy(tau={!r}, sigma={!r})'.format(
            self._tau.tolist(), self._sigma.matrix.tolist())


class RealT2(object):
    """2p-dimensional real t-distribution with two degrees of freedom,
    location eta and shape W."""

    dof = 2

    def __init__(self, eta, w):
        self._eta = np.asarray(eta, dtype=float).ravel()
        self._w = np.asarray(w, dtype=float)
        if self._w.shape != (self._eta.size, self._eta.size) or self._eta.size % 2:
            raise DimensionMismatch('eta of length {} and W of shape {} do not fit'.format(
                self._eta.size, self._w.shape))
        self._eta.setflags(write=False)
        self._w.setflags(write=False)
        self._chol = scipy.linalg.cholesky(self._w, lower=True)

    @property
    def dim(self):
        """Real dimension 2p."""
        return self._eta.size

    @property
    def eta(self):
        """Location (read-only)."""
        return self._eta

    @property
    def w(self):
        """Shape matrix (read-only)."""
        return self._w

    def logdet(self):
        """log det W."""
        return 2.0 * float(np.sum(np.log(np.diag(self._chol))))

    def log_density(self, x):
        """-p log(pi) - log(det W)/2 + log Gamma(p+1) - (p+1) log(1 + (x-eta)' W^-1 (x-eta))."""
        p = self.dim // 2
        pts = np.asarray(x, dtype=float)
        diff = np.atleast_2d(pts - self._eta)
        white = scipy.linalg.solve_triangular(self._chol, diff.T, lower=True, check_finite=False)
        quad = np.sum(white ** 2, axis=0)
        logp = (-p * np.log(np.pi) - 0.5 * self.logdet() + gammaln(p + 1)
                - (p + 1) * np.log1p(quad))
        return logp if pts.ndim == 2 else float(logp[0])

    def frozen(self):
        """The same law as a scipy.stats.multivariate_t (shape W / 2, df 2)."""
        return scipy.stats.multivariate_t(loc=self._eta, shape=0.5 * self._w, df=self.dof)

    def rvs(self, n, seed=None):
        """Draw n points of R^2p directly from the real t-distribution."""
        draws = self.frozen().rvs(size=n, random_state=np.random.default_rng(seed))
        return np.reshape(draws, (n, self.dim))

    def to_dict(self):
        """JSON-ready form {"dim", "dof", "eta", "w"}."""
        return {'dim': self.dim, 'dof': self.dof,
                'eta': [float(x) for x in self._eta],
                'w': [[float(x) for x in row] for row in self._w]}


def _hermitian(mat):
    return 0.5 * (mat + mat.conj().T)


def _gaussian_rows(rng, count, width):
    draws = rng.standard_normal((count, width, 2))
    return (draws[..., 0] + 1j * draws[..., 1]) / np.sqrt(2.0)


def _standard_ratio_chunk(p, index, count, seed):
    rng = chunk_rng(seed, index)
    gauss = _gaussian_rows(rng, count, p + 1)
    tiny = np.finfo(float).tiny
    bad = np.abs(gauss[:, p]) < tiny
    if np.any(bad):
        logger.warning('redrawing %d degenerate Gaussian row(s) in chunk %d', bad.sum(), index)
        gauss[bad] = _gaussian_rows(rng, int(bad.sum()), p + 1)
        if np.any(np.abs(gauss[:, p]) < tiny):
            raise DegenerateDraw('last Gaussian coordinate underflowed twice in chunk {}'.format(
                index))
    return gauss[:, :p] / gauss[:, p:]


def _sphere_chunk(p, index, count, seed):
    gauss = _gaussian_rows(chunk_rng(seed, index), count, p + 1)
    return gauss / np.linalg.norm(gauss, axis=1, keepdims=True)


def _chunked(chunk_fn, p, n, seed, threads):
    if n < 1:
        raise DimensionMismatch('sample size must be at least 1, got {}'.format(n))
    if seed is None:
        seed = np.random.SeedSequence().entropy
    chunks = chunk_bounds(n, SAMPLE_CHUNK)
    logger.debug('drawing %d rows in %d chunk(s), p=%d', n, len(chunks), p)
    parts = run_chunks(chunk_fn, [(p, index, count, seed) for index, _, count in chunks],
                       threads=threads)
    return np.concatenate(parts, axis=0)


def standard(p):
    """The standard member gamma of C^p."""
    return ComplexCauchy.standard(p)


def log_density(d, z):
    """See ComplexCauchy.log_density."""
    return d.log_density(z)


def sample(d, n, seed=None, threads=None):
    """See ComplexCauchy.sample."""
    return d.sample(n, seed=seed, threads=threads)


def sample_sphere(p, n, seed=None, threads=None):
    """n points uniform on the unit sphere of C^{p+1}, as an (n, p+1) array.

    Normalized standard complex Gaussians, chunked like ComplexCauchy.sample.
    """
    return _chunked(_sphere_chunk, p, n, seed, threads)


def sphere_ratio(y):
    """Y_{p+1}^-1 (Y_1, ..., Y_p) for each row of an (n, p+1) array of
    sphere points; standard-distributed when the rows are uniform."""
    pts = np.asarray(y, dtype=complex)
    return pts[:, :-1] / pts[:, -1:]


def pushforward(d, m):
    """See ComplexCauchy.pushforward."""
    return d.pushforward(m)


def affine_pushforward(d, m):
    """Image of d under an affine map z -> G z + h: (G tau + h, G Sigma G*)."""
    affine = m.as_affine()
    lin, offset = affine.linear_part, affine.offset
    return ComplexCauchy(lin @ d.tau + offset, _hermitian(lin @ d.sigma.matrix @ lin.conj().T))


def real_embedding(d):
    """See ComplexCauchy.real_embedding."""
    return d.real_embedding()


def real_t2_log_density(rt, x):
    """See RealT2.log_density."""
    return rt.log_density(x)


def projection_params(d, u):
    """See ComplexCauchy.projection_params."""
    return d.projection_params(u)


def realify_points(z):
    """Map complex (n, p) points to real (n, 2p) rows (Re z_1..Re z_p, Im z_1..Im z_p)."""
    pts = np.asarray(z, dtype=complex)
    return np.concatenate([pts.real, pts.imag], axis=-1)


def marginal_cdf(t):
    """Distribution function 1/2 + t / (2 sqrt(1 + t^2)) of Re(Z_1) under gamma."""
    t = np.asarray(t, dtype=float)
    return 0.5 + 0.5 * t / np.sqrt(1.0 + t * t)


def marginal_ppf(q):
    """Inverse of marginal_cdf."""
    s = 2.0 * np.asarray(q, dtype=float) - 1.0
    return s / np.sqrt(1.0 - s * s)


def param_rel_error(d1, d2):
    """Scale-aware distance between two parameterizations.

    max(||tau1 - tau2|| / (||tau2|| + sqrt(||Sigma2||)), ||Sigma1 - Sigma2|| / ||Sigma2||)
    with entrywise max norms.
    """
    sigma_scale = linalg.max_norm(d2.sigma.matrix)
    tau_err = linalg.max_norm(d1.tau - d2.tau) / (linalg.max_norm(d2.tau) + np.sqrt(sigma_scale))
    sigma_err = linalg.max_norm(d1.sigma.matrix - d2.sigma.matrix) / sigma_scale
    return max(tau_err, sigma_err)
