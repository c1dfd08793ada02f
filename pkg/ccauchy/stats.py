# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
Statistical verification: goodness-of-fit and two-sample tests, and
integration checks of the density normalization.
"""

import json
import logging

import numpy as np
import scipy.stats
from numpy.polynomial.legendre import leggauss
from scipy.spatial.distance import pdist, squareform

from . import cauchy
from .ccauchyerror import CCauchyError, DimensionMismatch, InvalidCDF
from .ccauchyjob import chunk_rng, run_chunks

logger = logging.getLogger(__name__)

DEFAULT_ALPHA = 0.01
DEFAULT_PERMUTATIONS = 499
PERMUTATION_BLOCK = 64
KS_MIN_SIZE = 10
ENERGY_MIN_SIZE = 50
MC_MIN_SIZE = 10 ** 4


class GofReport(object):
    """Outcome of one statistical check."""

    def __init__(self, test_name, n1, n2, statistic, p_value, seed, alpha=DEFAULT_ALPHA):
        if not 0.0 <= p_value <= 1.0:
            raise CCauchyError('p-value {} outside [0, 1]'.format(p_value))
        self.test_name = test_name
        self.n1 = int(n1)
        self.n2 = int(n2)
        self.statistic = float(statistic)
        self.p_value = float(p_value)
        self.seed = seed
        self.alpha = float(alpha)

    @property
    def passed(self):
        """True when the p-value exceeds alpha."""
        return self.p_value > self.alpha

    def to_dict(self):
        """JSON-ready dictionary."""
        return {'test_name': self.test_name, 'n1': self.n1, 'n2': self.n2,
                'statistic': self.statistic, 'p_value': self.p_value,
                'seed': self.seed, 'alpha': self.alpha, 'passed': self.passed}

    @classmethod
    def from_dict(cls, data):
        """Inverse of to_dict; `passed` is recomputed."""
        return cls(data['test_name'], data['n1'], data['n2'], data['statistic'],
                   data['p_value'], data.get('seed'), data.get('alpha', DEFAULT_ALPHA))

    def to_json(self):
        """One JSON line."""
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        return 'GofReport({})'.format(self.to_json())


def write_json_lines(reports, stream):
    """Write one JSON object per report."""
    for report in reports:
        stream.write(report.to_json() + '\n')


def rejection_band(trials, alpha=DEFAULT_ALPHA, confidence=0.99):
    """Exact binomial interval for the number of rejections among `trials`
    independent null runs at level `alpha`."""
    low, high = scipy.stats.binom.interval(confidence, trials, alpha)
    return int(low), int(high)


def ks_test(samples, cdf, alpha=DEFAULT_ALPHA, seed=None, test_name='ks'):
    """One-sample Kolmogorov-Smirnov test.

    D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over the sorted
    sample; the p-value is the asymptotic Kolmogorov tail at sqrt(n) D_n.

    Raises:
        InvalidCDF: if cdf returns values outside [0, 1].
    """
    values = np.sort(np.asarray(samples, dtype=float).ravel())
    n = values.size
    if n < KS_MIN_SIZE:
        raise DimensionMismatch('KS test needs at least {} samples, got {}'.format(
            KS_MIN_SIZE, n))
    probs = np.asarray(cdf(values), dtype=float)
    if np.any(~np.isfinite(probs)) or np.any(probs < 0.0) or np.any(probs > 1.0):
        raise InvalidCDF('cdf returned values outside [0, 1]')
    ranks = np.arange(1, n + 1) / n
    stat = max(np.max(ranks - probs), np.max(probs - (ranks - 1.0 / n)))
    p_value = float(np.clip(scipy.stats.kstwobign.sf(np.sqrt(n) * stat), 0.0, 1.0))
    logger.debug('%s: n=%d D=%.5f p=%.4g', test_name, n, stat, p_value)
    return GofReport(test_name, n, 0, stat, p_value, seed, alpha)


def _energy_from_blocks(dist, labels, nx):
    # labels: (N, R) boolean membership of the first sample; V-statistics
    first = labels.astype(float)
    second = 1.0 - first
    ny = dist.shape[0] - nx
    d_first = dist @ first
    within_x = np.sum(first * d_first, axis=0) / (nx * nx)
    between = np.sum(second * d_first, axis=0) / (nx * ny)
    within_y = np.sum(second * (dist @ second), axis=0) / (ny * ny)
    return 2.0 * between - within_x - within_y


def _permutation_block(dist, nx, index, count, seed):
    rng = chunk_rng(seed, index)
    total = dist.shape[0]
    labels = np.zeros((total, count), dtype=bool)
    for column in range(count):
        labels[rng.permutation(total)[:nx], column] = True
    return _energy_from_blocks(dist, labels, nx)


def energy_test(a, b, n_permutations=DEFAULT_PERMUTATIONS, seed=None, alpha=DEFAULT_ALPHA,
                test_name='energy', threads=None):
    """Two-sample energy-distance permutation test.

    The statistic is 2 mean||a - b|| - mean||a - a'|| - mean||b - b'|| with
    all pairs (V-statistics), so it is zero for identical samples. The
    p-value is (k + 1) / (R + 1), k counting permuted statistics at least
    the observed one.
    """
    first = np.asarray(a, dtype=float)
    second = np.asarray(b, dtype=float)
    if first.ndim == 1:
        first = first[:, np.newaxis]
    if second.ndim == 1:
        second = second[:, np.newaxis]
    if first.shape[1] != second.shape[1]:
        raise DimensionMismatch('samples live in R^{} and R^{}'.format(
            first.shape[1], second.shape[1]))
    nx, ny = first.shape[0], second.shape[0]
    if min(nx, ny) < ENERGY_MIN_SIZE:
        raise DimensionMismatch('energy test needs {} points per side, got {} and {}'.format(
            ENERGY_MIN_SIZE, nx, ny))
    if seed is None:
        seed = np.random.SeedSequence().entropy

    dist = squareform(pdist(np.vstack([first, second])))
    observed_labels = np.zeros((nx + ny, 1), dtype=bool)
    observed_labels[:nx, 0] = True
    observed = float(_energy_from_blocks(dist, observed_labels, nx)[0])

    blocks = [(dist, nx, index, min(PERMUTATION_BLOCK, n_permutations - start), seed)
              for index, start in enumerate(range(0, n_permutations, PERMUTATION_BLOCK))]
    permuted = np.concatenate(run_chunks(_permutation_block, blocks, threads=threads))
    tie = 1e-12 * max(1.0, float(np.mean(dist)))
    exceed = int(np.count_nonzero(permuted >= observed - tie))
    p_value = (exceed + 1.0) / (n_permutations + 1.0)
    logger.debug('%s: n=(%d, %d) E=%.5g p=%.4g', test_name, nx, ny, observed, p_value)
    return GofReport(test_name, nx, ny, observed, p_value, seed, alpha)


def quad_mass_p1(d, r_max=200.0, n_r=2000, n_theta=64, density=None):
    """Total mass of a p = 1 density by polar quadrature around tau.

    Gauss-Legendre in the radius over [0, r_max], equispaced angles, plus the
    exact mass (1 + r_max^2 / Sigma)^-1 of the family member beyond r_max.

    Args:
        d (ComplexCauchy): distribution with p = 1.
        density (callable): density on (n, 1) complex points; defaults to
            exp(d.log_density).

    Raises:
        DimensionMismatch: if d.p != 1.
    """
    if d.p != 1:
        raise DimensionMismatch('quadrature mass needs p = 1, got p = {}'.format(d.p))
    if density is None:
        def density(z):
            return np.exp(d.log_density(z))
    nodes, weights = leggauss(n_r)
    radii = 0.5 * r_max * (nodes + 1.0)
    r_weights = 0.5 * r_max * weights
    angles = 2.0 * np.pi * np.arange(n_theta) / n_theta
    grid = d.tau[0] + np.outer(radii, np.exp(1j * angles))
    values = np.asarray(density(grid.reshape(-1, 1)), dtype=float).reshape(grid.shape)
    inner = float(np.sum(r_weights * radii * values.sum(axis=1)) * (2.0 * np.pi / n_theta))
    scale = float(d.sigma.matrix[0, 0].real)
    tail = 1.0 / (1.0 + r_max * r_max / scale)
    logger.debug('quad_mass_p1: inner=%.12f tail=%.3e', inner, tail)
    return inner + tail


def mc_mass(d, n=10 ** 5, seed=None, proposal=None, density=None):
    """Importance-sampling estimate of the total mass of d's density.

    Draws from `proposal` and averages density(z) / proposal_density(z). The
    default proposal is the standard member shifted to tau and scaled by
    trace(Sigma) / p, which keeps the ratio bounded; for a standard d it is
    d itself and the estimate is exactly 1.

    Returns:
        tuple(float, float): estimate and its jackknife standard error.
    """
    if n < MC_MIN_SIZE:
        raise DimensionMismatch('mass estimate needs at least {} draws, got {}'.format(
            MC_MIN_SIZE, n))
    if proposal is None:
        spread = float(np.trace(d.sigma.matrix).real) / d.p
        proposal = cauchy.ComplexCauchy(d.tau, spread * np.eye(d.p))
    if density is None:
        log_target = d.log_density
    else:
        def log_target(z):
            return np.log(density(z))
    draws = proposal.sample(n, seed=seed)
    ratios = np.exp(log_target(draws) - proposal.log_density(draws))
    total = float(np.sum(ratios))
    leave_one_out = (total - ratios) / (n - 1)
    estimate = total / n
    std_error = float(np.sqrt((n - 1) / n * np.sum((leave_one_out - estimate) ** 2)))
    return estimate, std_error


def closure_experiment(d, m, n=500, seed=None, n_permutations=DEFAULT_PERMUTATIONS,
                       alpha=DEFAULT_ALPHA, threads=None):
    """Check that m(Z), Z ~ d, has the law pushforward(d, m).

    Samples n points of d mapped through m and n points of the pushforward
    with independent seeds, then runs energy_test on their real embeddings.

    Raises:
        PoleHit: if a mapped draw lands on the polar set.
    """
    if n < 500:
        raise DimensionMismatch('closure experiment needs n >= 500, got {}'.format(n))
    if seed is None:
        seed = np.random.SeedSequence().entropy
    source_seed, image_seed, perm_seed = (
        int(s) for s in np.random.SeedSequence(seed).generate_state(3))
    mapped = m.apply(d.sample(n, seed=source_seed, threads=threads))
    image = d.pushforward(m).sample(n, seed=image_seed, threads=threads)
    report = energy_test(cauchy.realify_points(mapped), cauchy.realify_points(image),
                         n_permutations=n_permutations, seed=perm_seed, alpha=alpha,
                         test_name='closure', threads=threads)
    report.seed = seed
    logger.info('closure p=%d n=%d seed=%s: p-value %.4g', d.p, n, seed, report.p_value)
    return report
