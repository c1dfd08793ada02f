# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""Provider for the seeded verification checks run by `ccauchy verify`.

Each check returns one or more SuiteRow records; a run passes when every row
passes. Statistical checks aggregate many seeded runs and compare the number
of rejections with a binomial allowance, so a single unlucky seed does not
decide the verdict.
"""

import collections
import csv
import logging
import math

import numpy as np
import scipy.stats

from . import cauchy, linalg, stats
from .cauchy import param_rel_error
from .mobius import MobiusMap
from .randomparams import RandomParamsGenerator

logger = logging.getLogger(__name__)

SuiteRow = collections.namedtuple('SuiteRow',
                                  ['test', 'p', 'seed', 'statistic', 'p_value', 'passed'])

CSV_HEADER = list(SuiteRow._fields)


def _rejection_row(test, p, seed, rejections, runs, alpha, min_pass_fraction=None):
    # p-value: chance of at least this many rejections under the null
    p_value = float(scipy.stats.binom.sf(rejections - 1, runs, alpha)) if rejections else 1.0
    if min_pass_fraction is None:
        low, high = stats.rejection_band(runs, alpha)
        passed = low <= rejections <= high
    else:
        passed = runs - rejections >= math.ceil(min_pass_fraction * runs)
    return SuiteRow(test, p, seed, rejections, p_value, passed)


def _normalized_denominator(m, z):
    scale = np.linalg.norm(m.c) * np.linalg.norm(z, axis=-1) + abs(m.d)
    return np.abs(m.denominator(z)) / scale


class VerificationSuite(object):
    """Provider for the verification checks."""

    DEFAULT_CONFIGURATION = {
        'seed': 20140208,
        'alpha': 0.01,
        'dims': [1, 2, 3],
        'quad_instances': 10,
        'quad_tol': 1e-3,
        'mc_n': 10 ** 5,
        'sampler_runs': 100,
        'sampler_n': 10 ** 5,
        'sphere_runs': 100,
        'sphere_n': 2000,
        'sphere_permutations': 199,
        'sphere_min_pass': 0.95,
        'closure_trials': 50,
        'closure_n': 500,
        'closure_permutations': 499,
        'closure_min_pass': 0.9,
        'chain_trials': 20,
        'affine_trials': 50,
        'rq_matrices': 1000,
        'rq_max_size': 6,
        'embedding_instances': 10,
        'embedding_points': 1000,
        'group_maps': 1000,
        'group_points': 5,
        'functoriality_trials': 100,
    }

    def __init__(self, configuration=None, threads=None):
        self.configuration = dict(self.DEFAULT_CONFIGURATION)
        self.configuration.update(configuration or {})
        self.threads = threads
        self._checks = collections.OrderedDict([
            ('normalization', self._check_normalization),
            ('sampler', self._check_sampler),
            ('sphere', self._check_sphere),
            ('closure', self._check_closure),
            ('rq', self._check_rq),
            ('embedding', self._check_embedding),
            ('group_laws', self._check_group_laws),
            ('functoriality', self._check_functoriality),
            ('fixed_points', self._check_fixed_points),
        ])

    def checks(self, name=None):
        """Names of the registered checks, optionally filtered by name."""
        names = list(self._checks)
        if name:
            names = [check for check in names if check == name]
        return names

    def run(self, only=None):
        """Run the selected checks and return their rows in order.

        Raises:
            KeyError: if `only` names no registered check.
        """
        names = self.checks(only)
        if only and not names:
            raise KeyError('unknown check {!r}; known: {}'.format(only, ', '.join(self._checks)))
        rows = []
        for index, name in enumerate(self.checks()):
            if name not in names:
                continue
            seed = int(np.random.SeedSequence([self.configuration['seed'], index])
                       .generate_state(1)[0])
            logger.info('running check %s (seed %d)', name, seed)
            produced = self._checks[name](seed)
            for row in produced:
                logger.info('%s p=%s statistic=%s passed=%s', row.test, row.p, row.statistic,
                            row.passed)
            rows.extend(produced)
        return rows

    def _check_normalization(self, seed):
        cfg = self.configuration
        gen = RandomParamsGenerator(seed, min_condition_guard=0.1)
        tol = cfg['quad_tol']
        rows = []
        instances = [cauchy.standard(1)] + [gen.distribution(1)
                                            for _ in range(cfg['quad_instances'])]
        errors = [abs(stats.quad_mass_p1(dist) - 1.0) for dist in instances]
        rows.append(SuiteRow('quad_mass', 1, seed, max(errors), '', max(errors) <= tol))
        for p in cfg['dims']:
            if p < 2:
                continue
            mc_seed = gen.next_seed()
            estimate, std_error = stats.mc_mass(gen.distribution(p), cfg['mc_n'], seed=mc_seed)
            score = abs(estimate - 1.0) / std_error
            p_value = float(2.0 * scipy.stats.norm.sf(score))
            rows.append(SuiteRow('mc_mass', p, mc_seed, score, p_value, score <= 3.0))
        return rows

    def _check_sampler(self, seed):
        cfg = self.configuration
        rows = []
        for p in cfg['dims']:
            gen = RandomParamsGenerator([seed, p])
            rejections = 0
            for _ in range(cfg['sampler_runs']):
                dist = gen.distribution(p)
                u = gen.unit_vector(p)
                loc, scale = dist.projection_params(u)
                draws = dist.sample(cfg['sampler_n'], seed=gen.next_seed(), threads=self.threads)
                projected = (draws @ u.conj()).real
                report = stats.ks_test((projected - loc) / scale, cauchy.marginal_cdf,
                                       alpha=cfg['alpha'])
                rejections += not report.passed
            rows.append(_rejection_row('sampler_ks', p, seed, rejections, cfg['sampler_runs'],
                                       cfg['alpha']))
        return rows

    def _check_sphere(self, seed):
        cfg = self.configuration
        rows = []
        for p in cfg['dims']:
            gen = RandomParamsGenerator([seed, p])
            rejections = 0
            for _ in range(cfg['sphere_runs']):
                ratio = cauchy.sphere_ratio(
                    cauchy.sample_sphere(p, cfg['sphere_n'], seed=gen.next_seed()))
                direct = cauchy.standard(p).sample(cfg['sphere_n'], seed=gen.next_seed())
                report = stats.energy_test(cauchy.realify_points(ratio),
                                           cauchy.realify_points(direct),
                                           n_permutations=cfg['sphere_permutations'],
                                           seed=gen.next_seed(), alpha=cfg['alpha'],
                                           threads=self.threads)
                rejections += not report.passed
            rows.append(_rejection_row('sphere_path', p, seed, rejections, cfg['sphere_runs'],
                                       cfg['alpha'], cfg['sphere_min_pass']))
        return rows

    def _check_closure(self, seed):
        cfg = self.configuration
        gen = RandomParamsGenerator(seed, min_condition_guard=linalg.CONDITION_GUARD)
        dims = cfg['dims']
        rejections = 0
        for trial in range(cfg['closure_trials']):
            p = dims[trial % len(dims)]
            report = stats.closure_experiment(gen.distribution(p), gen.mobius(p),
                                              n=cfg['closure_n'], seed=gen.next_seed(),
                                              n_permutations=cfg['closure_permutations'],
                                              alpha=cfg['alpha'], threads=self.threads)
            rejections += not report.passed
        rows = [_rejection_row('closure', '', seed, rejections, cfg['closure_trials'],
                               cfg['alpha'], cfg['closure_min_pass'])]
        broken = 0
        for trial in range(cfg['chain_trials']):
            p = dims[trial % len(dims)]
            dist, g, h = gen.distribution(p), gen.mobius(p), gen.mobius(p)
            # one composed map against the two maps applied in turn
            reports = [stats.closure_experiment(start, m, n=cfg['closure_n'],
                                                seed=gen.next_seed(),
                                                n_permutations=cfg['closure_permutations'],
                                                alpha=cfg['alpha'], threads=self.threads)
                       for start, m in ((dist, h.compose(g)), (dist.pushforward(g), h))]
            broken += not all(report.passed for report in reports)
        rows.append(_rejection_row('closure_chain', '', seed, broken, cfg['chain_trials'],
                                   cfg['alpha'], cfg['closure_min_pass']))
        worst = 0.0
        for trial in range(cfg['affine_trials']):
            p = dims[trial % len(dims)]
            dist, affine = gen.distribution(p), gen.affine(p)
            worst = max(worst, param_rel_error(dist.pushforward(affine),
                                               cauchy.affine_pushforward(dist, affine)))
        rows.append(SuiteRow('affine_consistency', '', seed, worst, '', worst <= 1e-10))
        return rows

    def _check_rq(self, seed):
        cfg = self.configuration
        gen = RandomParamsGenerator(seed, min_condition_guard=linalg.CONDITION_GUARD)
        worst = {'reconstruction': 0.0, 'unitarity': 0.0, 'triangularity': 0.0}
        canonical = repeatable = True
        for index in range(cfg['rq_matrices']):
            size = 1 + index % cfg['rq_max_size']
            mat = gen.invertible(size)
            factors = linalg.rq_decompose(mat)
            r, q = factors
            worst['reconstruction'] = max(worst['reconstruction'],
                                          linalg.max_norm(r @ q - mat) / linalg.max_norm(mat))
            worst['unitarity'] = max(worst['unitarity'],
                                     linalg.max_norm(q @ q.conj().T - np.eye(size)))
            worst['triangularity'] = max(worst['triangularity'],
                                         linalg.max_norm(np.tril(r, -1)))
            diag = np.diag(r)
            canonical &= bool(np.all(diag.real > 0) and np.all(diag.imag == 0))
            again = linalg.rq_decompose(mat)
            repeatable &= np.array_equal(again.r, r) and np.array_equal(again.q, q)
        limits = {'reconstruction': 1e-10, 'unitarity': 1e-12, 'triangularity': 1e-12}
        rows = [SuiteRow('rq_' + key, '', seed, value, '', value <= limits[key])
                for key, value in sorted(worst.items())]
        rows.append(SuiteRow('rq_canonical', '', seed, int(canonical and repeatable), '',
                             canonical and repeatable))
        return rows

    def _check_embedding(self, seed):
        cfg = self.configuration
        rows = []
        for p in cfg['dims']:
            gen = RandomParamsGenerator([seed, p])
            worst_density = worst_det = 0.0
            for _ in range(cfg['embedding_instances']):
                dist = gen.distribution(p)
                real = dist.real_embedding()
                z = dist.tau + gen.points(p, cfg['embedding_points'], scale=3.0)
                diff = dist.log_density(z) - real.log_density(cauchy.realify_points(z))
                worst_density = max(worst_density, float(np.max(np.abs(diff))))
                det_sigma = math.exp(dist.sigma.logdet())
                det_w = float(np.linalg.det(real.w))
                worst_det = max(worst_det, abs(det_w - det_sigma ** 2) / det_sigma ** 2)
            rows.append(SuiteRow('embedding_density', p, seed, worst_density, '',
                                 worst_density <= 1e-10))
            rows.append(SuiteRow('embedding_det', p, seed, worst_det, '', worst_det <= 1e-10))
        return rows

    def _check_group_laws(self, seed):
        cfg = self.configuration
        rows = []
        for p in cfg['dims']:
            gen = RandomParamsGenerator([seed, p], min_condition_guard=linalg.CONDITION_GUARD)
            identity = MobiusMap.identity(p)
            worst_inverse = worst_action = 0.0
            for _ in range(cfg['group_maps']):
                m1, m2 = gen.mobius(p), gen.mobius(p)
                worst_inverse = max(worst_inverse, m1.compose(m1.invert()).proj_distance(identity))
                both = m1.compose(m2)
                z = gen.points(p, cfg['group_points'])
                keep = ((_normalized_denominator(m2, z) > 1e-6)
                        & (_normalized_denominator(both, z) > 1e-6))
                z = z[keep]
                if not len(z):
                    continue
                inner = m2.apply(z)
                keep = _normalized_denominator(m1, inner) > 1e-6
                direct, chained = both.apply(z[keep]), m1.apply(inner[keep])
                if len(direct):
                    error = (np.linalg.norm(direct - chained, axis=1)
                             / (1.0 + np.linalg.norm(chained, axis=1)))
                    worst_action = max(worst_action, float(np.max(error)))
            rows.append(SuiteRow('group_inverse', p, seed, worst_inverse, '',
                                 worst_inverse <= 1e-10))
            rows.append(SuiteRow('group_action', p, seed, worst_action, '', worst_action <= 1e-9))
        return rows

    def _check_functoriality(self, seed):
        cfg = self.configuration
        gen = RandomParamsGenerator(seed)
        dims = cfg['dims']
        worst = 0.0
        for trial in range(cfg['functoriality_trials']):
            p = dims[trial % len(dims)]
            dist, g, h = gen.distribution(p), gen.mobius(p), gen.mobius(p)
            chained = dist.pushforward(g).pushforward(h)
            direct = dist.pushforward(h.compose(g))
            worst = max(worst, param_rel_error(chained, direct))
        return [SuiteRow('functoriality', '', seed, worst, '', worst <= 1e-8)]

    def _check_fixed_points(self, seed):
        rows = []
        gamma = cauchy.standard(1)
        inversion = MobiusMap([[0, 1], [1, 0]])
        image = gamma.pushforward(inversion)
        error = max(linalg.max_norm(image.tau), linalg.max_norm(image.sigma.matrix - 1.0))
        rows.append(SuiteRow('inversion_invariance', 1, seed, error, '', error <= 1e-12))

        gen = RandomParamsGenerator(seed)
        worst = 0.0
        for p in self.configuration['dims']:
            dist = gen.distribution(p)
            worst = max(worst, param_rel_error(dist.pushforward(MobiusMap.identity(p)), dist))
        rows.append(SuiteRow('identity_noop', '', seed, worst, '', worst <= 1e-12))

        worst = 0.0
        for p in self.configuration['dims']:
            unitary = MobiusMap(gen.unitary(p + 1))
            image = cauchy.standard(p).pushforward(unitary)
            worst = max(worst, param_rel_error(image, cauchy.standard(p)))
        rows.append(SuiteRow('unitary_isotropy', '', seed, worst, '', worst <= 1e-10))

        expected = {1: -math.log(math.pi), 2: math.log(2.0) - 2.0 * math.log(math.pi)}
        for p, value in sorted(expected.items()):
            error = abs(cauchy.standard(p).log_density(np.zeros(p)) - value)
            rows.append(SuiteRow('density_at_origin', p, seed, error, '', error <= 1e-12))
        return rows

    def __str__(self):
        return 'VerificationSuite'


def write_rows(rows, stream):
    """Write the summary table as CSV with a header row."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.test, row.p, row.seed, _fmt(row.statistic), _fmt(row.p_value),
                         'true' if row.passed else 'false'])


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return value

