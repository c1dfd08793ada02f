# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""Generate random distributions, maps and points."""

import numpy as np

from . import linalg
from .cauchy import ComplexCauchy
from .mobius import MobiusMap, affine_from_parts


class RandomParamsGenerator(object):
    """
    Generate random parameters for verification runs.

    Every draw comes from one numpy Generator, so a generator built from the
    same seed replays the same sequence.
    """
    def __init__(self, seed=None, min_condition_guard=1e-2, location_scale=2.0):
        """
        Args:
          seed (int): Random number seed. If none, draw fresh entropy.
          min_condition_guard (float): singular-value ratio required of
            random matrices.
          location_scale (float): scale of random locations.
        """
        self.rng = np.random.default_rng(seed)
        self.min_condition_guard = min_condition_guard
        self.location_scale = location_scale

    def next_seed(self):
        """A fresh integer seed for the seeded library functions."""
        return int(self.rng.integers(2 ** 32))

    def invertible(self, n):
        """Ginibre n x n matrix meeting the condition guard."""
        return linalg.random_invertible(n, self.next_seed(), self.min_condition_guard)

    def unitary(self, n):
        """Haar n x n unitary."""
        return linalg.random_unitary(n, self.next_seed())

    def hpd(self, p):
        """Random Hermitian positive-definite p x p scatter."""
        mat = self.invertible(p)
        return linalg.HermitianPD(mat @ mat.conj().T)

    def vector(self, p, scale=1.0):
        """Complex Gaussian vector of length p."""
        draws = self.rng.standard_normal((p, 2))
        return scale * (draws[:, 0] + 1j * draws[:, 1]) / np.sqrt(2.0)

    def unit_vector(self, p):
        """Uniform unit vector of C^p."""
        vec = self.vector(p)
        return vec / np.linalg.norm(vec)

    def points(self, p, n, scale=1.0):
        """(n, p) complex Gaussian points."""
        draws = self.rng.standard_normal((n, p, 2))
        return scale * (draws[..., 0] + 1j * draws[..., 1]) / np.sqrt(2.0)

    def distribution(self, p):
        """Random member of the family on C^p."""
        return ComplexCauchy(self.vector(p, self.location_scale), self.hpd(p))

    def mobius(self, p):
        """Random well-conditioned Möbius map of C^p."""
        return MobiusMap(self.invertible(p + 1))

    def affine(self, p):
        """Random well-conditioned affine map of C^p."""
        return affine_from_parts(self.invertible(p), self.vector(p, self.location_scale))
