"""Rotation numbers of circle-map lifts and their slope at rigid rotations.

The library computes rotation numbers of parametrised lifts, classifies
families that are rigidly rational at the origin (transversal, mode-locked,
or boundary), and predicts the derivative of the rotation number there via
the resonant-profile passage-time integral — with independent oracles
(iterate-sensitivity quadrature, continuum flow) and a piecewise-linear
analogue built on exact symbolic composition.
"""

from .errors import (
    AliasingError,
    BreakCollisionError,
    FamilyValidationError,
    HomeomorphismError,
    IterationCapError,
    MonotonicityError,
    ProgressError,
    RotnumError,
    SensitivityError,
    VelocityError,
)
from .families import family_from_dict, load_family
from .lifts import (
    AffinePath,
    ArnoldFamily,
    HarmonicProfile,
    IteratedLift,
    ShiftedLift,
    SmoothFamily,
    iterate_with_sensitivity,
    mu_sensitivity,
    q_expand,
    q_reduced,
)
from .oracle import PassageTime, euler_orbit_vs_flow, passage_time, traverse_time
from .predict import (
    SlopeReport,
    brunovsky_slope,
    classify_and_predict,
    closed_form,
    parkhe_slope,
)
from .pwl import (
    PWLFamily,
    PWLNormalForm,
    gmm_slope,
    normal_form,
    rigid_check,
    validate,
)
from .rotation import (
    RotationEstimate,
    birkhoff,
    birkhoff_many,
    crossing,
    crossing_many,
    rho_of_power,
)
from .spectral import ResonantProfile, Spectrum, analyze, extrema, resonant, synthesize

__all__ = [
    "AffinePath",
    "AliasingError",
    "ArnoldFamily",
    "BreakCollisionError",
    "FamilyValidationError",
    "HarmonicProfile",
    "HomeomorphismError",
    "IteratedLift",
    "IterationCapError",
    "MonotonicityError",
    "PWLFamily",
    "PWLNormalForm",
    "PassageTime",
    "ProgressError",
    "ResonantProfile",
    "RotationEstimate",
    "RotnumError",
    "SensitivityError",
    "ShiftedLift",
    "SlopeReport",
    "SmoothFamily",
    "Spectrum",
    "VelocityError",
    "analyze",
    "birkhoff",
    "birkhoff_many",
    "brunovsky_slope",
    "classify_and_predict",
    "closed_form",
    "crossing",
    "crossing_many",
    "euler_orbit_vs_flow",
    "extrema",
    "family_from_dict",
    "gmm_slope",
    "iterate_with_sensitivity",
    "load_family",
    "mu_sensitivity",
    "normal_form",
    "parkhe_slope",
    "passage_time",
    "q_expand",
    "q_reduced",
    "resonant",
    "rho_of_power",
    "rigid_check",
    "synthesize",
    "traverse_time",
    "validate",
]
