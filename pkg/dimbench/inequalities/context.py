# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Identifiers of the inequality catalogue and their variants."""

from dimbench.common.enum import Enum


class ItemCategory(Enum):
    """The Enum class representing the categories of catalogue items."""
    INEQUALITY = 'inequality'
    STRUCTURAL = 'structural'
    AUDIT = 'audit'


class InequalityId(Enum):
    """The Enum class representing the inequality and check ids."""
    LSI_DIMENSIONAL = 'lsi_dimensional'
    LP_EUCLIDEAN_LSI = 'lp_euclidean_lsi'
    MODIFIED_LSI = 'modified_lsi'
    TALAGRAND_DIMENSIONAL = 'talagrand_dimensional'
    HWI = 'hwi'
    HWI_GAUSSIAN_COMPARISON = 'hwi_gaussian_comparison'
    TENSORIZATION = 'tensorization'
    LINEARIZATION = 'linearization'
    BRASCAMP_LIEB = 'brascamp_lieb'
    CONCENTRATION = 'concentration'
    TRACE_BOUND = 'trace_bound'
    GEODESIC_CONVEXITY = 'geodesic_convexity'
    CONVEXITY_FUNCTIONAL = 'convexity_functional'
    CONTRACTION = 'contraction'
    ENTROPY_SMOOTHING = 'entropy_smoothing'
    IMPROVED_RATE = 'improved_rate'
    FUNDAMENTAL_ENTROPY = 'fundamental_entropy'


class LsiVariant(Enum):
    """The Enum class representing the dimensional log-Sobolev variants."""
    GAUSSIAN_BL = 'gaussian_bl'
    GAMMA2_S = 'gamma2_s'
    LP_HOMOGENEOUS = 'lp_homogeneous'
    TRANSPORT_DEFLSI = 'transport_defLSI'
    COMBINED = 'combined'


class BrascampLiebVariant(Enum):
    """The Enum class representing the Brascamp-Lieb and Poincaré variants."""
    CLASSICAL = 'classical'
    TRANSPORT_I = 'transport_I'
    BBL_II = 'bbl_II'
    GAUSSIAN_DIM = 'gaussian_dim'
    GAUSSIAN_SPECTRAL = 'gaussian_spectral'
    HARGE = 'harge'
    BOBKOV_LEDOUX = 'bobkov_ledoux'
