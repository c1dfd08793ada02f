# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
Command-line front end.

Distributions and maps are read from JSON files, samples and densities are
written as CSV, parameters as JSON. Exit codes: 0 success, 1 failed
verification, 2 unparsable input, 3 invalid parameter, 4 dimension mismatch.
"""

import argparse
import contextlib
import csv
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .cauchy import ComplexCauchy
from .ccauchyerror import CCauchyError, ParseError
from .ccauchyjob import thread_count
from .mobius import MobiusMap
from .stats import DEFAULT_ALPHA, closure_experiment, write_json_lines
from .verifyprovider import VerificationSuite, write_rows

logger = logging.getLogger(__name__)

COMMANDS = ('sample', 'density', 'pushforward', 'embed', 'closure-test', 'verify')
REQUIRES_DIST = ('sample', 'density', 'pushforward', 'embed', 'closure-test')
REQUIRES_MAP = ('pushforward', 'closure-test')
DEFAULT_N = 1000
CLOSURE_MIN_N = 500


class RunConfig(object):
    """Validated settings of one command-line invocation."""

    def __init__(self, command, dist=None, map=None, n=DEFAULT_N, seed=0,
                 alpha=DEFAULT_ALPHA, output=None, only=None, points=None, threads=None):
        # pylint: disable=redefined-builtin
        if command not in COMMANDS:
            raise ParseError('unknown command {!r}'.format(command))
        if command in REQUIRES_DIST and dist is None:
            raise ParseError('{} needs --dist'.format(command))
        if command in REQUIRES_MAP and map is None:
            raise ParseError('{} needs --map'.format(command))
        if n < 1:
            raise ParseError('--n must be at least 1, got {}'.format(n))
        if command == 'closure-test' and n < CLOSURE_MIN_N:
            raise ParseError('closure-test needs --n >= {}, got {}'.format(CLOSURE_MIN_N, n))
        if seed < 0:
            raise ParseError('--seed must be non-negative, got {}'.format(seed))
        if not 0.0 < alpha < 1.0:
            raise ParseError('--alpha must lie in (0, 1), got {}'.format(alpha))
        self.command = command
        self.dist = dist
        self.map = map
        self.n = n
        self.seed = seed
        self.alpha = alpha
        self.output = output
        self.only = only
        self.points = points
        self.threads = thread_count(threads)

    @classmethod
    def from_args(cls, args):
        """Build from an argparse namespace, loading the JSON inputs."""
        return cls(args.command,
                   dist=ComplexCauchy.from_dict(_load_json(args.dist)) if args.dist else None,
                   map=MobiusMap.from_dict(_load_json(args.map)) if args.map else None,
                   n=args.n, seed=args.seed, alpha=args.alpha, output=args.output,
                   only=args.only, points=args.points)


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, ValueError) as err:
        raise ParseError('cannot read JSON from {}: {}'.format(path, err))


def _dump_json(data):
    return json.dumps(data, sort_keys=True, allow_nan=False)


def _fmt(value):
    return repr(float(value))


def sample_header(p):
    """CSV header re_z1,im_z1,...,re_zp,im_zp."""
    return [part for j in range(1, p + 1) for part in ('re_z{}'.format(j), 'im_z{}'.format(j))]


def _interleave(z):
    pts = np.atleast_2d(z)
    rows = np.empty((pts.shape[0], 2 * pts.shape[1]))
    rows[:, 0::2] = pts.real
    rows[:, 1::2] = pts.imag
    return rows


def read_points(path, p):
    """Read sample-format CSV (header row, 2p columns) into (n, p) complex points.

    Raises:
        ParseError: if the file cannot be read or has the wrong width.
    """
    try:
        with open(path, newline='') as handle:
            reader = csv.reader(handle)
            next(reader)
            values = np.array([[float(x) for x in row] for row in reader if row], dtype=float)
    except (OSError, ValueError, StopIteration) as err:
        raise ParseError('cannot read points from {}: {}'.format(path, err))
    if values.ndim != 2 or values.shape[1] != 2 * p:
        raise ParseError('points file needs {} columns, got shape {}'.format(2 * p, values.shape))
    return values[:, 0::2] + 1j * values[:, 1::2]


def cmd_sample(config, stream):
    """Write n draws as CSV rows."""
    draws = config.dist.sample(config.n, seed=config.seed, threads=config.threads)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(sample_header(config.dist.p))
    for row in _interleave(draws):
        writer.writerow([_fmt(x) for x in row])
    return 0


def cmd_density(config, stream):
    """Write points and their log densities as CSV rows."""
    dist = config.dist
    if config.points:
        points = read_points(config.points, dist.p)
    else:
        points = dist.sample(config.n, seed=config.seed, threads=config.threads)
    values = np.atleast_1d(dist.log_density(points))
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(sample_header(dist.p) + ['log_density'])
    for row, value in zip(_interleave(points), values):
        writer.writerow([_fmt(x) for x in row] + [_fmt(value)])
    return 0


def cmd_pushforward(config, stream):
    """Write the image parameters as canonical JSON."""
    image = config.dist.pushforward(config.map)
    stream.write(_dump_json(image.to_dict()) + '\n')
    return 0


def cmd_embed(config, stream):
    """Write the real t2 parameters as JSON."""
    stream.write(_dump_json(config.dist.real_embedding().to_dict()) + '\n')
    return 0


def cmd_closure_test(config, stream):
    """Write one closure GofReport as a JSON line; exit 1 when it rejects."""
    report = closure_experiment(config.dist, config.map, n=config.n, seed=config.seed,
                                alpha=config.alpha, threads=config.threads)
    write_json_lines([report], stream)
    return 0 if report.passed else 1


def cmd_verify(config, stream):
    """Run the verification suite and write the summary CSV."""
    overrides = {'alpha': config.alpha}
    if config.seed:
        overrides['seed'] = config.seed
    suite = VerificationSuite(overrides, threads=config.threads)
    try:
        rows = suite.run(only=config.only)
    except KeyError as err:
        raise ParseError(str(err))
    write_rows(rows, stream)
    failed = [row.test for row in rows if not row.passed]
    if failed:
        logger.warning('failed checks: %s', ', '.join(failed))
    return 1 if failed else 0


HANDLERS = {
    'sample': cmd_sample,
    'density': cmd_density,
    'pushforward': cmd_pushforward,
    'embed': cmd_embed,
    'closure-test': cmd_closure_test,
    'verify': cmd_verify,
}


def build_parser():
    """The argparse parser for `ccauchy`."""
    parser = argparse.ArgumentParser(
        prog='ccauchy',
        description='Cauchy distributions on complex space: sampling, densities, '
                    'Möbius pushforwards and verification.')
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--dist', metavar='FILE', help='distribution JSON')
    parser.add_argument('--map', metavar='FILE', help='Möbius map JSON')
    parser.add_argument('--points', metavar='FILE', help='evaluation points CSV (density)')
    parser.add_argument('--n', type=int, default=DEFAULT_N, help='number of draws')
    parser.add_argument('--seed', type=int, default=0, help='random seed')
    parser.add_argument('--alpha', type=float, default=DEFAULT_ALPHA, help='test level')
    parser.add_argument('--output', metavar='FILE', help='output file (default stdout)')
    parser.add_argument('--only', metavar='NAME', help='run a single verification check')
    return parser


@contextlib.contextmanager
def _open_output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, 'w', newline='') as handle:
            yield handle


def main(argv=None):
    """Entry point; returns the process exit code."""
    logging.basicConfig(level=logging._nameToLevel.get(os.getenv('LOG_LEVEL', ''),
                                                       logging.WARNING),
                        format='%(name)s:%(levelname)s: %(message)s')
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code else 0
    try:
        config = RunConfig.from_args(args)
        with _open_output(config.output) as stream:
            return HANDLERS[config.command](config, stream)
    except CCauchyError as err:
        sys.stderr.write('ccauchy: error: {}\n'.format(err.message))
        return err.exit_code


if __name__ == '__main__':
    sys.exit(main())
