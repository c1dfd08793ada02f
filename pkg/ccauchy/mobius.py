# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
Möbius transformations of complex p-space.

An invertible (p+1)x(p+1) complex matrix g = [[a, b], [c, d]] acts on
z in C^p by z -> (a z + b) / (c z + d), the denominator being the scalar
c z + d. Maps are projective: g and any non-zero multiple of g act the same
way, so g is stored scaled to |det g| = 1. The remaining unit-phase freedom
is handled by proj_distance.
"""

import logging

import numpy as np
import scipy.linalg
import scipy.optimize

from . import linalg
from .ccauchyerror import (DimensionMismatch, NotAffine, ParseError,
                           PoleHit, SingularInput)

logger = logging.getLogger(__name__)

POLE_TOL = 1e-300
AFFINE_TOL = 1e-12
PHASE_GRID = 64
CANONICAL_TOL = 8 * np.finfo(float).eps


def _canonical(g):
    # the RQ pivot guard raises SingularInput for rank-deficient g
    linalg.rq_decompose(g)
    det = abs(linalg.det(g))
    if det == 0:
        raise SingularInput('Möbius matrix is singular')
    scale = det ** (1.0 / g.shape[0])
    # already canonical up to rounding: keep g bit for bit
    if abs(scale - 1.0) <= CANONICAL_TOL:
        return g
    return g / scale


class MobiusMap(object):
    """Projective transformation z -> (a z + b) / (c z + d) of C^p."""

    def __init__(self, g):
        """
        Args:
            g (array_like): invertible (p+1)x(p+1) complex matrix, p >= 1.

        Raises:
            SingularInput: if g is numerically singular.
            DimensionMismatch: if g is not square or is 1x1.
        """
        mat = linalg.as_cmat(g, 'Möbius matrix', SingularInput)
        if mat.shape[0] != mat.shape[1] or mat.shape[0] < 2:
            raise DimensionMismatch('Möbius matrix must be (p+1)x(p+1) with p >= 1, '
                                    'got shape {}'.format(mat.shape))
        self._g = _canonical(mat)
        self._g.setflags(write=False)

    @classmethod
    def identity(cls, p):
        """The identity map of C^p."""
        return cls(np.eye(p + 1, dtype=complex))

    @property
    def p(self):
        """Dimension of the space acted on."""
        return self._g.shape[0] - 1

    @property
    def g(self):
        """Canonical matrix, |det g| = 1 (read-only)."""
        return self._g

    @property
    def a(self):
        """p x p block."""
        return self._g[:-1, :-1]

    @property
    def b(self):
        """Column block of length p."""
        return self._g[:-1, -1]

    @property
    def c(self):
        """Row block of length p."""
        return self._g[-1, :-1]

    @property
    def d(self):
        """Corner scalar."""
        return complex(self._g[-1, -1])

    def _points(self, z):
        pts = np.asarray(z, dtype=complex)
        if pts.ndim not in (1, 2) or pts.shape[-1] != self.p:
            raise DimensionMismatch('points must have trailing dimension {}, got shape {}'.format(
                self.p, pts.shape))
        if not np.all(np.isfinite(pts)):
            raise ParseError('points must be finite')
        return pts

    def denominator(self, z):
        """The scalar c z + d for a point or each row of a batch."""
        pts = self._points(z)
        return pts @ self.c + self.d

    def apply(self, z):
        """Image of a point, or of each row of an (n, p) batch.

        Raises:
            PoleHit: if |c z + d| <= 1e-300 (||a z + b|| + 1) for some point.
        """
        pts = self._points(z)
        numer = pts @ self.a.T + self.b
        denom = np.asarray(pts @ self.c + self.d)
        scale = np.linalg.norm(numer, axis=-1) + 1.0
        hits = np.atleast_1d(np.abs(denom) <= POLE_TOL * scale)
        if np.any(hits):
            where = np.flatnonzero(hits)
            raise PoleHit('{} point(s) on the polar set, first at index {}'.format(
                where.size, where[0]))
        return numer / np.expand_dims(denom, -1)

    __call__ = apply

    def compose(self, other):
        """The map z -> self(other(z)).

        The product of two affine maps is affine.
        """
        if other.p != self.p:
            raise DimensionMismatch('cannot compose maps of C^{} and C^{}'.format(self.p, other.p))
        product = self._g @ other.g
        if isinstance(self, AffineMap) and isinstance(other, AffineMap):
            return AffineMap(product)
        return MobiusMap(product)

    def invert(self):
        """The inverse map."""
        inverse = scipy.linalg.inv(self._g, check_finite=False)
        if isinstance(self, AffineMap):
            inverse[-1, :-1] = 0
            return AffineMap(inverse)
        return MobiusMap(inverse)

    def as_affine(self, tol=AFFINE_TOL):
        """View as an affine map.

        Succeeds when ||c|| <= tol ||g||_max and |d| > tol ||g||_max; the c
        block of the result is set to exactly zero.

        Raises:
            NotAffine: otherwise.
        """
        if isinstance(self, AffineMap):
            return self
        bound = tol * linalg.max_norm(self._g)
        c_norm = float(np.linalg.norm(self.c))
        if c_norm > bound or abs(self.d) <= bound:
            raise NotAffine('c block has norm {:.3e} and |d| = {:.3e} (tolerance {:.3e})'.format(
                c_norm, abs(self.d), bound))
        g = np.array(self._g)
        g[-1, :-1] = 0
        return AffineMap(g)

    def proj_distance(self, other):
        """Distance between the projective classes of two maps.

        The minimum over unit-modulus phi of ||g1 - phi g2||_max, found on a
        phase grid and refined around the best grid point. Zero exactly when
        the maps coincide.
        """
        if other.p != self.p:
            raise DimensionMismatch('cannot compare maps of C^{} and C^{}'.format(self.p, other.p))
        g1, g2 = self._g, other.g

        def distance(theta):
            return linalg.max_norm(g1 - np.exp(1j * theta) * g2)

        step = 2.0 * np.pi / PHASE_GRID
        thetas = list(np.arange(PHASE_GRID) * step)
        # the Frobenius-optimal phase is usually the answer already
        inner = np.vdot(g2, g1)
        if inner != 0:
            thetas.append(float(np.angle(inner)))
        values = [distance(theta) for theta in thetas]
        best = int(np.argmin(values))
        refined = scipy.optimize.minimize_scalar(
            distance, bounds=(thetas[best] - step, thetas[best] + step), method='bounded',
            options={'xatol': 1e-14})
        return min(values[best], float(refined.fun))

    def to_dict(self):
        """JSON-ready form {"p": int, "g": [[re, im], ...]} in row-major order."""
        return {'p': self.p,
                'g': [[float(x.real), float(x.imag)] for x in self._g.ravel()]}

    @classmethod
    def from_dict(cls, data):
        """Inverse of to_dict; returns an AffineMap when the c block is zero.

        Raises:
            ParseError: if the dictionary is malformed.
        """
        try:
            p = int(data['p'])
            pairs = np.array(data['g'], dtype=float)
        except (KeyError, TypeError, ValueError) as err:
            raise ParseError('malformed Möbius map: {}'.format(err))
        if p < 1 or pairs.shape != ((p + 1) ** 2, 2):
            raise ParseError('Möbius map with p={} needs {} [re, im] pairs, got shape {}'.format(
                p, (p + 1) ** 2, pairs.shape))
        g = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(p + 1, p + 1)
        if not np.any(g[-1, :-1]):
            return AffineMap(g)
        return cls(g)

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return np.array_equal(self._g, other.g)

    def __hash__(self):
        return hash(self._g.tobytes())

    def __repr__(self):
        return '{}(p={}, g={!r})'.format(type(self).__name__, self.p, self._g.tolist())


class AffineMap(MobiusMap):
    """Möbius map with c = 0, i.e. z -> (a z + b) / d."""

    def __init__(self, g):
        """
        Raises:
            NotAffine: if the c block is not exactly zero or d is zero.
        """
        mat = linalg.as_cmat(g, 'affine matrix', SingularInput)
        if mat.shape[0] >= 2 and (np.any(mat[-1, :-1]) or mat[-1, -1] == 0):
            raise NotAffine('affine matrix needs c = 0 and d != 0')
        super().__init__(mat)

    @property
    def linear_part(self):
        """a / d."""
        return self.a / self.d

    @property
    def offset(self):
        """b / d."""
        return self.b / self.d


def affine_from_parts(linear, offset):
    """The affine map z -> linear z + offset, i.e. [[linear, offset], [0, 1]].

    Raises:
        SingularInput: if `linear` is singular.
    """
    lin = linalg.as_cmat(linear, 'linear part', SingularInput)
    vec = np.asarray(offset, dtype=complex).ravel()
    p = lin.shape[0]
    if lin.shape != (p, p) or vec.size != p:
        raise DimensionMismatch('linear part {} and offset of length {} do not fit'.format(
            lin.shape, vec.size))
    g = np.zeros((p + 1, p + 1), dtype=complex)
    g[:p, :p] = lin
    g[:p, p] = vec
    g[p, p] = 1.0
    return AffineMap(g)


def proj_distance(m1, m2):
    """See MobiusMap.proj_distance."""
    return m1.proj_distance(m2)
