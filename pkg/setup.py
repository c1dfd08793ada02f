# -*- coding: utf-8 -*-

# Copyright 2018, IBM.
#
# This source code is licensed under the Apache License, Version 2.0 found in
# the LICENSE.txt file in the root directory of this source tree.

from setuptools import setup, find_packages

setup(
    name="ccauchy",
    version="0.1.0",
    author="ccauchy developers",
    description="Cauchy distributions on complex space: sampling, densities and Möbius pushforwards",
    long_description="This module implements the Cauchy family of distributions on complex p-space: exact sampling, log densities, the exact pushforward under Möbius transformations, the equivalent real t-distribution with two degrees of freedom, and a seeded statistical suite that verifies the closure of the family.",
    license="Apache 2.0",
    classifiers=[
        "Environment :: Console",
        "License :: OSI Approved :: Apache Software License",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: MacOS",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    install_requires=['numpy>=1.17', 'scipy>=1.6'],
    keywords="cauchy distribution mobius transformation complex statistics",
    packages=find_packages(exclude=['test*']),
    entry_points={
        'console_scripts': ['ccauchy=ccauchy.cli:main'],
    },
    include_package_data=True,
    python_requires=">=3.6"
)
