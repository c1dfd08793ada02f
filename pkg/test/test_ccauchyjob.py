# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

# pylint: disable=invalid-name,missing-docstring

from test.common import CCauchyTestCase

import os
import time
import unittest
from concurrent import futures
from unittest import mock

import numpy as np

from ccauchy.ccauchyerror import JobError, ParseError
from ccauchy.ccauchyjob import ChunkJob, chunk_bounds, chunk_rng, run_chunks, thread_count


def _draw(index, count, seed):
    return chunk_rng(seed, index).standard_normal(count)


def _fail(index):
    raise ValueError('chunk {} failed'.format(index))


def _fail_first(index, ran):
    if index == 0:
        raise ValueError('first chunk failed')
    time.sleep(0.05)
    ran.append(index)


class TestThreadCount(CCauchyTestCase):

    def test_explicit(self):
        self.assertEqual(thread_count(4), 4)
        self.assertEqual(thread_count(-1), 0)

    def test_environment(self):
        with mock.patch.dict(os.environ, {'CCAUCHY_THREADS': '3'}):
            self.assertEqual(thread_count(), 3)
        with mock.patch.dict(os.environ, {'CCAUCHY_THREADS': ''}):
            self.assertEqual(thread_count(), 0)

    def test_unset(self):
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(thread_count(), 0)

    def test_invalid(self):
        with mock.patch.dict(os.environ, {'CCAUCHY_THREADS': 'many'}):
            with self.assertRaises(ParseError):
                thread_count()
        with mock.patch.dict(os.environ, {'CCAUCHY_THREADS': '-2'}):
            with self.assertRaises(ParseError):
                thread_count()


class TestChunks(CCauchyTestCase):

    def test_bounds(self):
        self.assertEqual(chunk_bounds(10, 4), [(0, 0, 4), (1, 4, 4), (2, 8, 2)])
        self.assertEqual(chunk_bounds(4, 4), [(0, 0, 4)])

    def test_rng_is_spawned_child(self):
        child = np.random.SeedSequence(5).spawn(3)[2]
        expected = np.random.default_rng(child).standard_normal(4)
        self.assertTrue(np.array_equal(chunk_rng(5, 2).standard_normal(4), expected))

    def test_run_sequential_equals_parallel(self):
        args = [(index, 100, 7) for index in range(6)]
        sequential = run_chunks(_draw, args, threads=0)
        parallel = run_chunks(_draw, args, threads=3)
        for first, second in zip(sequential, parallel):
            self.assertTrue(np.array_equal(first, second))

    def test_error_propagates(self):
        with self.assertRaises(ValueError):
            run_chunks(_fail, [(0,), (1,)], threads=0)
        with self.assertRaises(ValueError):
            run_chunks(_fail, [(0,), (1,)], threads=2)

    def test_error_cancels_queued_chunks(self):
        ran = []
        with self.assertRaises(ValueError):
            run_chunks(_fail_first, [(index, ran) for index in range(40)], threads=1)
        self.assertLess(len(ran), 39)


class TestChunkJob(CCauchyTestCase):

    def test_requires_submit(self):
        job = ChunkJob(_draw, [(0, 3, 1)])
        with self.assertRaises(JobError):
            job.result()
        with self.assertRaises(JobError):
            job.cancel()

    def test_resubmit(self):
        job = ChunkJob(_draw, [(0, 3, 1)])
        job.submit()
        with self.assertRaises(JobError):
            job.submit()

    def test_inline(self):
        job = ChunkJob(_draw, [(0, 3, 1), (1, 3, 1)])
        job.submit()
        self.assertEqual([len(part) for part in job.result()], [3, 3])

    def test_inline_error(self):
        job = ChunkJob(_fail, [(0,)])
        job.submit()
        with self.assertRaises(ValueError):
            job.result()
        self.assertFalse(job.cancel())

    def test_executor_ordered(self):
        with futures.ThreadPoolExecutor(max_workers=2) as executor:
            job = ChunkJob(_draw, [(index, 5, 3) for index in range(4)], executor=executor)
            job.submit()
            results = job.result(timeout=30)
        for index, part in enumerate(results):
            self.assertTrue(np.array_equal(part, _draw(index, 5, 3)))


if __name__ == '__main__':
    unittest.main()
