# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench Python module.

Provide a numerical laboratory for dimensional functional inequalities
(logarithmic Sobolev, Talagrand, HWI, Brascamp-Lieb, concentration) and the
Fokker-Planck contraction and smoothing estimates over log-concave measures.
"""

__version__ = '0.1.0'
__author__ = 'Microsoft'
