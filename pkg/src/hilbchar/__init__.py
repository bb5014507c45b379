"""Multiplicative characteristic classes of Hilbert schemes of points on
non-compact simply-connected surfaces, with a localization cross-check."""

from .rings import DUAL, RATIONALS, CoefficientRing, poly_in_y
from .series import Series, compose_inverse, divided_difference, exp_series, log_series, substitute
from .partitions import Partition, Bipartition, enumerate_bipartitions, enumerate_partitions
from .symfunc import jack_polynomial, specialize_two_vars
from .fock import FockState, FormalState, SurfaceModel, CohClass, exp_state, rho, specialize
from .engine import (
    ClassSpec,
    builtin,
    chern_character_state,
    chern_character_tables,
    tangent_class_state,
    tangent_coefficients,
    tautological_class_state,
    tautological_coefficients,
)

__version__ = "0.1.0"
