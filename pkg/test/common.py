# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
Shared functionality and helpers for the unit tests.
"""

from enum import Enum
import functools
import inspect
import logging
import os
import unittest
from unittest.util import safe_repr

import numpy as np

from ccauchy import __path__ as main_path


class Path(Enum):
    """Helper with paths commonly used during the tests."""
    # Main path:    ccauchy
    MAIN = main_path[0]
    # test path: test
    TEST = os.path.dirname(__file__)
    # Fixtures path:    test/resources
    RESOURCES = os.path.join(os.path.dirname(__file__), 'resources')


class CCauchyTestCase(unittest.TestCase):
    """Helper class that contains common functionality."""

    @classmethod
    def setUpClass(cls):
        cls.moduleName = os.path.splitext(inspect.getfile(cls))[0]
        cls.log = logging.getLogger(cls.__name__)

        # Set logging to file and stdout if the LOG_LEVEL environment variable
        # is set.
        if os.getenv('LOG_LEVEL'):
            # Set up formatter.
            log_fmt = ('{}.%(funcName)s:%(levelname)s:%(asctime)s:'
                       ' %(message)s'.format(cls.__name__))
            formatter = logging.Formatter(log_fmt)

            # Set up the file handler.
            log_file_name = '%s.log' % cls.moduleName
            file_handler = logging.FileHandler(log_file_name)
            file_handler.setFormatter(formatter)
            cls.log.addHandler(file_handler)

            # Set the logging level from the environment variable, defaulting
            # to INFO if it is not a valid level.
            level = logging._nameToLevel.get(os.getenv('LOG_LEVEL'),
                                             logging.INFO)
            cls.log.setLevel(level)

    @staticmethod
    def _get_resource_path(filename, path=Path.RESOURCES):
        """ Get the absolute path to a resource.

        Args:
            filename (string): filename or relative path to the resource.
            path (Path): path used as relative to the filename.
        Returns:
            str: the absolute path to the resource.
        """
        return os.path.normpath(os.path.join(path.value, filename))

    def assertAllClose(self, actual, desired, rtol=0.0, atol=1e-12, msg=None):
        """
        Assert two arrays are elementwise equal within atol + rtol * |desired|.

        Args:
            actual (array_like): computed values.
            desired (array_like): expected values, same shape.
            rtol (float): relative tolerance.
            atol (float): absolute tolerance.
            msg (str): return a custom message on failure.

        Raises:
            TypeError: raises TestCase failureException if the test fails.
        """
        # pylint: disable=invalid-name
        actual = np.asarray(actual)
        desired = np.asarray(desired)
        if actual.shape != desired.shape:
            standard_msg = 'shapes differ: %s != %s' % (safe_repr(actual.shape),
                                                        safe_repr(desired.shape))
            raise self.failureException(self._formatMessage(msg, standard_msg))
        excess = np.abs(actual - desired) - (atol + rtol * np.abs(desired))
        if actual.size == 0 or np.all(excess <= 0):
            return
        worst = np.unravel_index(np.argmax(excess), excess.shape)
        standard_msg = '%d of %d entries differ, worst at %s: %s != %s (atol %s, rtol %s)' % (
            np.count_nonzero(excess > 0), excess.size, worst, safe_repr(actual[worst]),
            safe_repr(desired[worst]), atol, rtol)
        raise self.failureException(self._formatMessage(msg, standard_msg))

    def assertParamsClose(self, dist1, dist2, tol=1e-12, msg=None):
        """
        Assert two distributions have the same parameters up to the relative
        error of `ccauchy.cauchy.param_rel_error`.

        Args:
            dist1 (ComplexCauchy): computed distribution.
            dist2 (ComplexCauchy): expected distribution.
            tol (float): largest accepted relative error.
            msg (str): return a custom message on failure.
        """
        # pylint: disable=invalid-name
        from ccauchy.cauchy import param_rel_error
        if dist1.p != dist2.p:
            standard_msg = 'dimensions differ: %d != %d' % (dist1.p, dist2.p)
            raise self.failureException(self._formatMessage(msg, standard_msg))
        error = param_rel_error(dist1, dist2)
        if error <= tol:
            return
        standard_msg = '%s != %s (relative error %.3e > %s)' % (safe_repr(dist1),
                                                                safe_repr(dist2), error, tol)
        raise self.failureException(self._formatMessage(msg, standard_msg))

    def assertMostlyPass(self, reports, min_passed, msg=None):
        """
        Assert at least `min_passed` of the statistical reports passed.

        Args:
            reports (list(GofReport)): outcomes of independent seeded runs.
            min_passed (int): least number of passing runs.
            msg (str): return a custom message on failure.
        """
        # pylint: disable=invalid-name
        passed = sum(report.passed for report in reports)
        if passed >= min_passed:
            return
        standard_msg = 'only %d of %d runs passed, p-values %s' % (
            passed, len(reports), [round(report.p_value, 4) for report in reports])
        raise self.failureException(self._formatMessage(msg, standard_msg))


def slow_test(func):
    """
    Decorator that signals that the test takes minutes to run.

    Args:
        func (callable): test function to be decorated.

    Returns:
        callable: the decorated function.
    """

    @functools.wraps(func)
    def _(*args, **kwargs):
        if SKIP_SLOW_TESTS:
            raise unittest.SkipTest('Skipping slow tests')
        return func(*args, **kwargs)

    return _


SKIP_SLOW_TESTS = os.getenv('SKIP_SLOW_TESTS', True) not in ['false', 'False', '-1']
