"""Discrete fractional maximal operators, Riesz potentials and weighted Morrey norms on Z."""

from .core import (DomainError, ExponentProfile, FiniteSequence, IntervalRun, ProfileError,
                   ProfileKind, SymmetricInterval, dilate, left_dilate, make_profile)
from .norms import (MorreyResult, layer_cake, lp_norm, morrey_norm, weak_lp_norm,
                    weighted_morrey_norm)
from .operators import (CapacityError, EvalWindow, fractional_maximal, riesz_difference,
                        riesz_fast, riesz_naive, riesz_symmetric, uniform_bound)
from .trend import Verdict, classify_growth
from .weights import IntervalFamily, Weight
from .whitney import IntegerSet, decompose, ray_gap_check, verify_decomposition

__version__ = "0.1.0"
