# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""Cauchy distributions on complex space and their Möbius pushforwards."""

from .ccauchyerror import CCauchyError
from .linalg import HermitianPD
from .mobius import AffineMap, MobiusMap
from .cauchy import ComplexCauchy, RealT2
from .stats import GofReport
from .verifyprovider import VerificationSuite

__version__ = '0.1.0'
