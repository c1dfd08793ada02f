# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""
Exceptions raised by the complex Cauchy library.

Every class carries the process exit code the command-line front end uses
when the error reaches it.
"""


class CCauchyError(Exception):
    """Base class for errors raised by the complex Cauchy library."""

    exit_code = 1

    def __init__(self, *message):
        """Set the error message."""
        super().__init__(*message)
        self.message = ' '.join(message)

    def __str__(self):
        """Return the message."""
        return repr(self.message)


class ParseError(CCauchyError):
    """Malformed JSON or CSV input."""

    exit_code = 2


class NotPositiveDefinite(CCauchyError):
    """A scatter matrix is not Hermitian positive definite."""

    exit_code = 3


class SingularInput(CCauchyError):
    """A matrix is numerically rank deficient."""

    exit_code = 3


class NotAffine(CCauchyError):
    """A Möbius map has a non-zero c block."""

    exit_code = 3


class InvalidCDF(CCauchyError):
    """A distribution function returned values outside [0, 1]."""

    exit_code = 3


class DimensionMismatch(CCauchyError):
    """Operands act on complex spaces of different dimension."""

    exit_code = 4


class PoleHit(CCauchyError):
    """A point lies on the polar set {z : cz + d = 0} of a Möbius map."""


class DegenerateDraw(CCauchyError):
    """The last Gaussian coordinate underflowed twice in a row."""


class ResampleExhausted(CCauchyError):
    """No draw satisfied the condition guard within the attempt budget."""


class JobError(CCauchyError):
    """A chunk job was used out of order."""
