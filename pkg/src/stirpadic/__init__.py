"""p-adic valuations and unit-part congruences of Stirling numbers."""
from .padic import INFINITE, DigitVector, ValUnit, digit_sum, digits, nu, val_unit
from .sequences import (
    ConsistencyError,
    Kind,
    SeriesPoly,
    bernoulli_number,
    bernoulli_poly,
    stirling1,
    stirling2,
)
from .minzero import ClassificationReport, classify_first, classify_second

__version__ = "0.1.0"
