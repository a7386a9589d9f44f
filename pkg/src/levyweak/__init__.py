"""Computation with infinitely divisible distributions through their generating triplets."""

__version__ = "0.1.0"

from .errors import DomainError, NotDefinableError, NumericalError
from .levy_core import (Atoms, LevyTriplet, PolarProduct, RadialDecomposition, ScalarDensity, Stable,
                        char_exponent, convolution_power, dilate, drift_of, mean_of, sharp_location, triplet)
