"""Nonlinear shifted four-point subdivision with a harmonic-mean limiter.

Refinement rules, the analysis harnesses built on them, and the CLI.
"""

from .errors import InvariantError, LengthError, PolicyError, SubdivisionError
from .grid import BoundaryPolicy, SampledCurve, abscissae, extend, sample
from .pph_core import arithmetic_mean, first_difference, pph, second_difference
from .schemes import (
    SchemeKind,
    StencilCase,
    ppha_perturbation,
    refine,
    refine_chaikin,
    refine_linear_shifted,
    refine_ppha,
    refine_ppha_via_chaikin,
    refine_to_level,
)

__version__ = "0.1.0"
