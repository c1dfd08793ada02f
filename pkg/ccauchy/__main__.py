# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

"""Run the command-line front end with `python -m ccauchy`."""

import sys

from .cli import main

sys.exit(main())
