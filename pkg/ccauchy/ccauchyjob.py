# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""This module implements the chunk job used for parallel generation and
permutation loops.

Work is split into chunks whose randomness depends only on the chunk index,
so running the chunks sequentially or on an executor gives the same result.
"""

import functools
import logging
import os
from concurrent import futures

import numpy as np

from .ccauchyerror import JobError, ParseError

logger = logging.getLogger(__name__)

THREADS_ENV = 'CCAUCHY_THREADS'


def requires_submit(func):
    """
    Decorator to ensure that a submit has been performed before
    calling the method.

    Args:
        func (callable): test function to be decorated.

    Returns:
        callable: the decorated function.
    """
    @functools.wraps(func)
    def _wrapper(self, *args, **kwargs):
        if self._futures is None:
            raise JobError("Job not submitted yet!. You have to .submit() first!")
        return func(self, *args, **kwargs)
    return _wrapper


def thread_count(threads=None):
    """Resolve the number of worker threads.

    Args:
        threads (int or None): explicit count; None reads CCAUCHY_THREADS.

    Returns:
        int: 0 for sequential execution, otherwise the pool size.

    Raises:
        ParseError: if the environment variable is not a non-negative integer.
    """
    if threads is not None:
        return max(int(threads), 0)
    raw = os.getenv(THREADS_ENV, '0').strip() or '0'
    try:
        value = int(raw)
    except ValueError:
        raise ParseError('{} must be an integer, got {!r}'.format(THREADS_ENV, raw))
    if value < 0:
        raise ParseError('{} must be non-negative, got {}'.format(THREADS_ENV, value))
    return value


def chunk_rng(seed, index):
    """Generator for chunk `index` of a computation seeded with `seed`.

    This is the `index`-th child of ``SeedSequence(seed).spawn``, so it does
    not depend on how many chunks there are.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def chunk_bounds(total, size):
    """Split `total` items into consecutive (index, start, count) chunks."""
    return [(index, start, min(size, total - start))
            for index, start in enumerate(range(0, total, size))]


class ChunkJob(object):
    """Chunk job class.

    Attributes:
        _executor (futures.Executor or None): executor running the chunks;
            None runs them inline at submit time.
    """

    def __init__(self, fn, chunk_args, executor=None):
        self._fn = fn
        self._chunk_args = list(chunk_args)
        self._executor = executor
        self._futures = None

    def submit(self):
        """Submit every chunk for execution.

        Raises:
            JobError: if trying to re-submit the job.
        """
        if self._futures is not None:
            raise JobError("We have already submitted the job!")

        if self._executor is None:
            self._futures = [_run_inline(self._fn, args) for args in self._chunk_args]
        else:
            self._futures = [self._executor.submit(self._fn, *args)
                             for args in self._chunk_args]
        logger.debug('submitted %d chunks of %s', len(self._futures),
                     getattr(self._fn, '__name__', self._fn))

    @requires_submit
    def result(self, timeout=None):
        """Get the chunk results in submission order.

        Args:
            timeout (float): number of seconds to wait for each chunk.

        Returns:
            list: one entry per chunk.

        Raises:
            concurrent.futures.TimeoutError: if timeout occurred.
            concurrent.futures.CancelledError: if job cancelled before completed.
        """
        return [future.result(timeout=timeout) for future in self._futures]

    @requires_submit
    def cancel(self):
        """Cancel the chunks that have not started; True if all were cancelled."""
        return all([future.cancel() for future in self._futures])


def _run_inline(fn, args):
    future = futures.Future()
    try:
        future.set_result(fn(*args))
    except Exception as err:  # pylint: disable=broad-except
        future.set_exception(err)
    return future


def run_chunks(fn, chunk_args, threads=None):
    """Run `fn` over every argument tuple and return the ordered results.

    Args:
        fn (callable): chunk function.
        chunk_args (list(tuple)): positional arguments, one tuple per chunk.
        threads (int or None): worker count; None reads CCAUCHY_THREADS.

    Returns:
        list: results in the order of `chunk_args`.
    """
    workers = thread_count(threads)
    if workers == 0 or len(chunk_args) <= 1:
        job = ChunkJob(fn, chunk_args)
        job.submit()
        return job.result()
    with futures.ThreadPoolExecutor(max_workers=workers) as executor:
        job = ChunkJob(fn, chunk_args, executor=executor)
        job.submit()
        try:
            return job.result()
        except Exception:
            # drop the chunks still queued
            job.cancel()
            raise
