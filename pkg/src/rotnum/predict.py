"""Classification at the rigid point and the predicted slope of the rotation number.

A family rigid at p/q is classified by the sign pattern of a + Psi, where
Psi is the q-resonant part of the drive profile:

* ``transversal`` -- a + Psi has no zero; the rotation number is
  differentiable at mu = 0 with slope 1/T0, T0 the passage-time integral
  of 1/(a + Psi) over one period (slope negative when a + Psi < 0).
* ``mode_locked`` -- a + Psi changes sign; the rotation number is constant
  at p/q on a neighbourhood, so the slope is 0.
* ``indeterminate`` -- an extremum of a + Psi sits within tolerance of
  zero; the tangential boundary case, for which no claim is made.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SensitivityError
from .lifts import HarmonicProfile, mu_sensitivity
from .quadrature import periodic_integral
from .spectral import ResonantProfile, analyze, extrema, resonant

TRANSVERSALITY_TOL = 1e-9


@dataclass(frozen=True)
class SlopeReport:
    """Outcome of the transversality test and slope prediction."""

    classification: str  # "transversal" | "mode_locked" | "indeterminate"
    slope: float
    min_a_psi: float
    max_a_psi: float
    T0: float = None
    quadrature_error: float = 0.0
    resonant_profile: ResonantProfile = None


def classify_and_predict(family, tol=TRANSVERSALITY_TOL):
    """Classify a family at mu = 0 and predict the slope of the rotation number.

    T0 is computed by periodic trapezoidal quadrature with sample doubling
    until two successive values agree to 1e-12.
    """
    red = family.reduced()
    a, q = red.a, red.q
    M = red.psi.max_harmonic
    if M:
        prof = resonant(analyze(red.psi, M), q)
    else:
        prof = ResonantProfile(q=q, profile=HarmonicProfile())
    mn, mx = extrema(a, prof)
    if mn > tol or mx < -tol:
        t0, err, _ = periodic_integral(lambda x: 1.0 / (a + prof.evaluate(x)))
        return SlopeReport(
            classification="transversal",
            slope=1.0 / t0,
            min_a_psi=mn,
            max_a_psi=mx,
            T0=t0,
            quadrature_error=err,
            resonant_profile=prof,
        )
    if mn < -tol and mx > tol:
        return SlopeReport(
            classification="mode_locked",
            slope=0.0,
            min_a_psi=mn,
            max_a_psi=mx,
            resonant_profile=prof,
        )
    return SlopeReport(
        classification="indeterminate",
        slope=math.nan,
        min_a_psi=mn,
        max_a_psi=mx,
        resonant_profile=prof,
    )


def brunovsky_slope(family):
    """The drift a: the slope that would hold with no resonant harmonics.

    Coincides with :func:`classify_and_predict` exactly when the resonant
    profile is empty; the gap between the two is the resonance effect.
    """
    return family.reduced().a


def parkhe_slope(family, n=4096):
    """Slope via the q-th-iterate sensitivity integral, with no Fourier step.

    The integrand d F^q / d mu (x, 0) is propagated through composition by
    the chain rule and integrated by the uniform trapezoidal rule, making
    this an oracle independent of the resonant-profile path.
    """
    q = family.reduced().q
    xs = np.arange(n) / n
    sens = mu_sensitivity(family, xs, q)
    if np.min(sens) <= 0.0:
        raise SensitivityError("non-positive sensitivity: d F^q / d mu (x, 0) <= 0 on grid")
    return float(1.0 / (q * np.mean(1.0 / sens)))


def closed_form(case, **params):
    """Exact reference slopes for the benchmark map configurations.

    * ``arnold_q1``  -- drift a, sine coefficient b; sign(a) sqrt(a^2 - b^2)
    * ``modified_q2``-- drift a, cos(4 pi x) coefficient c; sqrt(a^2 - c^2)
    * ``modified_u`` -- one-parameter perfect-square profile; (1 - u^2)^(3/2)
    """
    if case == "arnold_q1":
        a, b = params["a"], params["b"]
        if abs(a) <= abs(b):
            raise ValueError("arnold_q1 requires |a| > |b|")
        return math.copysign(math.sqrt(a * a - b * b), a)
    if case == "modified_q2":
        a, c = params["a"], params["c"]
        if a <= abs(c):
            raise ValueError("modified_q2 requires a > |c|")
        return math.sqrt(a * a - c * c)
    if case == "modified_u":
        u = params["u"]
        if abs(u) >= 0.5:
            raise ValueError("modified_u requires |u| < 1/2")
        return (1.0 - u * u) ** 1.5
    raise ValueError(f"unknown closed-form case {case!r}")
