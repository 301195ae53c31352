"""Fourier analysis of drive profiles and resonance filtering.

The q-th iterate of a family rigid at p/q keeps, at first order in the
parameter, only the harmonics of the drive whose index is a multiple of q.
This module extracts Fourier coefficients (by direct DFT summation, exact
to rounding for trigonometric polynomials) and builds that resonant
sub-profile.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, FamilyValidationError
from .lifts import HarmonicProfile
from .quadrature import golden_minimize


@dataclass(frozen=True)
class Spectrum:
    """Complex Fourier coefficients c_m of a real period-1 function.

    ``coeffs[m + M]`` holds c_m for m in [-M, M]. ``residual_energy`` is the
    grid energy not captured below the cutoff (a diagnostic for sampled,
    non-polynomial inputs).
    """

    coeffs: np.ndarray
    M: int
    sample_count: int
    residual_energy: float = 0.0

    def coefficient(self, m):
        if abs(m) > self.M:
            return 0.0 + 0.0j
        return complex(self.coeffs[m + self.M])

    @property
    def energy(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))


@dataclass(frozen=True)
class ResonantProfile:
    """The sub-profile of a drive surviving in the q-th iterate at first order."""

    q: int
    profile: HarmonicProfile

    def evaluate(self, x):
        return self.profile.evaluate(x)

    __call__ = evaluate


def analyze(psi, M, N=None):
    """Fourier coefficients of ``psi`` up to harmonic M.

    ``psi`` may be a :class:`HarmonicProfile` or any callable sampled on the
    uniform grid j/N. Requires N > 2M; coefficients are exact (to rounding)
    for trigonometric polynomials of degree <= M. The mean must vanish:
    the constant part of a drive belongs in the family drift.
    """
    if N is None:
        N = max(64, 4 * (M + 1))
    if N <= 2 * M:
        raise AliasingError(f"aliasing risk: need N > 2M (got N={N}, M={M})")
    grid = np.arange(N) / N
    samples = np.asarray(psi(grid) if callable(psi) else psi.evaluate(grid), dtype=float)
    ms = np.arange(-M, M + 1)
    kernel = np.exp(-2j * np.pi * np.outer(ms, grid))
    coeffs = kernel @ samples / N
    c0 = coeffs[M]
    if abs(c0) > 1e-10:
        raise FamilyValidationError(f"profile has nonzero mean ({c0.real:.3e})")
    coeffs[M] = 0.0
    residual = float(np.mean(samples**2) - np.sum(np.abs(coeffs) ** 2))
    return Spectrum(coeffs=coeffs, M=M, sample_count=N, residual_energy=max(residual, 0.0))


def synthesize(spectrum, drop_tol=1e-15):
    """Real-form profile with the same coefficients (conjugate pairs merged)."""
    terms = []
    for m in range(1, spectrum.M + 1):
        c = spectrum.coefficient(m)
        cc = 2.0 * c.real
        ss = -2.0 * c.imag
        if abs(cc) > drop_tol or abs(ss) > drop_tol:
            terms.append((m, cc, ss))
    return HarmonicProfile(tuple(terms))


def resonant(spectrum, q):
    """Keep exactly the harmonics whose index is divisible by q."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    terms = []
    for m in range(q, spectrum.M + 1, q):
        c = spectrum.coefficient(m)
        cc = 2.0 * c.real
        ss = -2.0 * c.imag
        if abs(cc) > 1e-15 or abs(ss) > 1e-15:
            terms.append((m, cc, ss))
    return ResonantProfile(q=q, profile=HarmonicProfile(tuple(terms)))


def extrema(a, profile, grid=2**14, xtol=1e-12):
    """(min, max) of a + profile(x) over one period.

    Coarse grid scan followed by golden-section refinement around the best
    cells. Exact for an empty profile.
    """
    prof = profile.profile if isinstance(profile, ResonantProfile) else profile
    if not prof.terms:
        return float(a), float(a)
    xs = np.arange(grid) / grid
    vals = prof.evaluate(xs)
    h = 1.0 / grid

    def refine(sign):
        # sign=+1 refines the minimum, sign=-1 the maximum
        i = int(np.argmin(sign * vals))
        x0 = xs[i]
        _, best = golden_minimize(lambda x: sign * prof.evaluate(x), x0 - h, x0 + h, xtol)
        return sign * best

    return float(a + refine(1.0)), float(a + refine(-1.0))
