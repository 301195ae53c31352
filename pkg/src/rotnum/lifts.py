"""One-parameter families of lifts of orientation-preserving circle maps.

A lift is a continuous increasing function F with F(x+1) = F(x) + 1. The
families here pass through a rigid rational rotation x + p/q at mu = 0 and
carry exact first-order data in mu, so parameter sensitivities can be
propagated through composition without finite differencing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FamilyValidationError, HomeomorphismError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HarmonicProfile:
    """Zero-mean trigonometric polynomial in real form.

    ``terms`` is a sequence of ``(m, cos_coeff, sin_coeff)`` triples with
    strictly increasing harmonic indices m >= 1, representing

        sum_m  cos_coeff * cos(2 pi m x) + sin_coeff * sin(2 pi m x).

    The absence of an m = 0 term makes the mean over one period zero; the
    constant part of a drive belongs in the family's drift instead.
    """

    terms: tuple = ()

    def __post_init__(self):
        clean = []
        last = 0
        for m, cc, ss in self.terms:
            m = int(m)
            if m < 1:
                raise FamilyValidationError("harmonic index must be >= 1 (zero-mean profile)")
            if m <= last:
                raise FamilyValidationError("harmonic indices must be strictly increasing")
            last = m
            clean.append((m, float(cc), float(ss)))
        object.__setattr__(self, "terms", tuple(clean))

    @property
    def max_harmonic(self):
        return self.terms[-1][0] if self.terms else 0

    @property
    def amplitude_bound(self):
        """Upper bound on |psi(x)|."""
        return sum(abs(cc) + abs(ss) for _, cc, ss in self.terms)

    @property
    def derivative_bound(self):
        """Upper bound on |psi'(x)|."""
        return sum(TWO_PI * m * (abs(cc) + abs(ss)) for m, cc, ss in self.terms)

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for m, cc, ss in self.terms:
            ang = (TWO_PI * m) * x
            if cc:
                out += cc * np.cos(ang)
            if ss:
                out += ss * np.sin(ang)
        return out if out.ndim else float(out)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for m, cc, ss in self.terms:
            w = TWO_PI * m
            ang = w * x
            if cc:
                out -= cc * w * np.sin(ang)
            if ss:
                out += ss * w * np.cos(ang)
        return out if out.ndim else float(out)

    __call__ = evaluate


@dataclass(frozen=True)
class AffinePath:
    """Parameter path mu -> v0 + d * mu (value and derivative at mu = 0)."""

    v0: float = 0.0
    d: float = 0.0

    def __call__(self, mu):
        return self.v0 + self.d * mu


@dataclass(frozen=True)
class LiftValue:
    """A lift value together with its first-order sensitivity in mu."""

    value: float
    mu_derivative: float


def _window_check_grid(family, window, n=4096):
    """Grid check that d/dx F > 0 at the window endpoints."""
    if not math.isfinite(window):
        return
    xs = np.arange(n) / n
    for mu in (-window, window):
        if np.min(family.dx(xs, mu)) <= 0.0:
            raise FamilyValidationError(
                f"not a homeomorphism at mu={mu}: d/dx F <= 0 on the grid"
            )


class _WindowMixin:
    def _require_in_window(self, mu):
        if not self.check_window:
            return
        worst = float(np.max(np.abs(mu)))
        if worst > self.mu_window * (1.0 + 1e-12):
            raise HomeomorphismError(
                f"not a homeomorphism at mu={worst}: outside window +/-{self.mu_window}"
            )

    def iterate(self, x0, mu, n):
        """n-fold composition F^n(x0, mu)."""
        if n < 0:
            raise ValueError("iteration count must be >= 0")
        step = self.stepper(mu)
        x = np.asarray(x0, dtype=float)
        for _ in range(int(n)):
            x = step(x)
        return x if np.ndim(x) else float(x)


@dataclass(frozen=True)
class SmoothFamily(_WindowMixin):
    """Family of lifts F(x, mu) = x + p/q + mu (a + psi(x)) + mu^2 (g0 + g(x)).

    p and q must be coprime; psi and g are zero-mean trigonometric
    polynomials and the second-order term is held constant in mu. The
    homeomorphism window is configurable; if omitted it is derived from
    derivative bounds of psi and g and verified on a 4096-point grid.
    """

    p: int
    q: int
    a: float
    psi: HarmonicProfile = HarmonicProfile()
    g0: float = 0.0
    g: HarmonicProfile = HarmonicProfile()
    mu_window: float = None
    check_window: bool = True

    def __post_init__(self):
        if self.q < 1:
            raise FamilyValidationError("q must be a positive integer")
        if math.gcd(abs(self.p), self.q) != 1:
            raise FamilyValidationError("p and q must be coprime")
        if self.mu_window is None:
            d1 = self.psi.derivative_bound
            d2 = self.g.derivative_bound
            if d2 > 0.0:
                window = (-d1 + math.sqrt(d1 * d1 + 4.0 * d2)) / (2.0 * d2)
            elif d1 > 0.0:
                window = 1.0 / d1
            else:
                window = math.inf
            object.__setattr__(self, "mu_window", window * (1.0 - 1e-12))
        if self.check_window:
            _window_check_grid(self, self.mu_window)

    @property
    def rotation_at_zero(self):
        return self.p / self.q

    def eval(self, x, mu):
        """Lift value F(x, mu)."""
        self._require_in_window(mu)
        mu = np.asarray(mu, dtype=float)
        return (
            x
            + self.p / self.q
            + mu * (self.a + self.psi.evaluate(x))
            + mu * mu * (self.g0 + self.g.evaluate(x))
        )

    def dx(self, x, mu):
        """Spatial derivative dF/dx."""
        mu = np.asarray(mu, dtype=float)
        return 1.0 + mu * self.psi.derivative(x) + mu * mu * self.g.derivative(x)

    def dmu(self, x, mu):
        """Parameter derivative dF/dmu."""
        mu = np.asarray(mu, dtype=float)
        return self.a + self.psi.evaluate(x) + 2.0 * mu * (self.g0 + self.g.evaluate(x))

    def velocity(self, x, mu):
        """Velocity field of the limiting flow, a + psi(x) + mu (g0 + g(x))."""
        return self.a + self.psi.evaluate(x) + mu * (self.g0 + self.g.evaluate(x))

    def stepper(self, mu):
        """A fast closure x -> F(x, mu) with mu-dependent work hoisted out."""
        self._require_in_window(mu)
        mu = np.asarray(mu, dtype=float)
        shift = self.p / self.q + mu * self.a + mu * mu * self.g0
        psi = self.psi
        if self.g.terms:
            g = self.g
            mu2 = mu * mu

            def step(x):
                return x + shift + mu * psi.evaluate(x) + mu2 * g.evaluate(x)

        else:

            def step(x):
                return x + shift + mu * psi.evaluate(x)

        return step

    def reduced(self):
        return self


@dataclass(frozen=True)
class ArnoldFamily(_WindowMixin):
    """Lift x + alpha(mu) + beta(mu) sin(2 pi x) + gamma(mu) cos(4 pi x).

    gamma identically zero gives the classic sine circle map. All three
    parameter paths are affine in mu. When beta(0) = gamma(0) = 0 and
    alpha(0) = p/q the family reduces to a :class:`SmoothFamily` with drift
    alpha'(0) and profile beta'(0) sin(2 pi x) + gamma'(0) cos(4 pi x).
    """

    alpha: AffinePath
    beta: AffinePath = AffinePath()
    gamma: AffinePath = AffinePath()
    p: int = None
    q: int = None
    mu_window: float = None
    check_window: bool = True

    def __post_init__(self):
        if (self.p is None) != (self.q is None):
            raise FamilyValidationError("p and q must be given together")
        if self.p is not None:
            if self.q < 1:
                raise FamilyValidationError("q must be a positive integer")
            if math.gcd(abs(self.p), self.q) != 1:
                raise FamilyValidationError("p and q must be coprime")
            if abs(self.alpha.v0 - self.p / self.q) > 1e-12:
                raise FamilyValidationError("alpha(0) does not equal p/q")
        if self.mu_window is None:
            base = TWO_PI * abs(self.beta.v0) + 2.0 * TWO_PI * abs(self.gamma.v0)
            slope = TWO_PI * abs(self.beta.d) + 2.0 * TWO_PI * abs(self.gamma.d)
            if base >= 1.0:
                if self.check_window:
                    raise FamilyValidationError(
                        "not a homeomorphism at mu=0: 2 pi |beta(0)| + 4 pi |gamma(0)| >= 1"
                    )
                window = math.inf
            elif slope > 0.0:
                window = (1.0 - base) / slope
            else:
                window = math.inf
            object.__setattr__(self, "mu_window", window * (1.0 - 1e-12))
        if self.check_window:
            _window_check_grid(self, self.mu_window)

    def eval(self, x, mu):
        self._require_in_window(mu)
        out = x + self.alpha(mu)
        if self.beta.v0 or self.beta.d:
            out = out + self.beta(mu) * np.sin(TWO_PI * np.asarray(x, dtype=float))
        if self.gamma.v0 or self.gamma.d:
            out = out + self.gamma(mu) * np.cos(2.0 * TWO_PI * np.asarray(x, dtype=float))
        return out

    def dx(self, x, mu):
        x = np.asarray(x, dtype=float)
        out = np.ones(np.broadcast(x, np.asarray(mu)).shape)
        out = out + self.beta(mu) * TWO_PI * np.cos(TWO_PI * x)
        out = out - self.gamma(mu) * 2.0 * TWO_PI * np.sin(2.0 * TWO_PI * x)
        return out

    def dmu(self, x, mu):
        x = np.asarray(x, dtype=float)
        out = self.alpha.d + self.beta.d * np.sin(TWO_PI * x)
        out = out + self.gamma.d * np.cos(2.0 * TWO_PI * x)
        return out + 0.0 * np.asarray(mu, dtype=float)

    def stepper(self, mu):
        self._require_in_window(mu)
        al = self.alpha(np.asarray(mu, dtype=float))
        be = self.beta(np.asarray(mu, dtype=float))
        ga = self.gamma(np.asarray(mu, dtype=float))
        if np.any(ga):

            def step(x):
                return x + al + be * np.sin(TWO_PI * x) + ga * np.cos(2.0 * TWO_PI * x)

        else:

            def step(x):
                return x + al + be * np.sin(TWO_PI * x)

        return step

    def reduced(self):
        """Equivalent class-form family, valid when beta(0) = gamma(0) = 0."""
        if abs(self.beta.v0) > 1e-14 or abs(self.gamma.v0) > 1e-14:
            raise FamilyValidationError(
                "family is not rigid at mu=0: beta(0) and gamma(0) must vanish"
            )
        p, q = self.p, self.q
        if p is None:
            frac = Fraction(self.alpha.v0).limit_denominator(10**6)
            if abs(float(frac) - self.alpha.v0) > 1e-12:
                raise FamilyValidationError("alpha(0) is not recognisably rational")
            p, q = frac.numerator, frac.denominator
        terms = []
        if self.beta.d:
            terms.append((1, 0.0, self.beta.d))
        if self.gamma.d:
            terms.append((2, self.gamma.d, 0.0))
        return SmoothFamily(
            p=p,
            q=q,
            a=self.alpha.d,
            psi=HarmonicProfile(tuple(terms)),
            check_window=self.check_window,
        )


@dataclass(frozen=True)
class ShiftedLift:
    """A lift translated by an integer: x -> F(x, mu) + k."""

    base: object
    k: int

    def eval(self, x, mu):
        return self.base.eval(x, mu) + self.k

    def dx(self, x, mu):
        return self.base.dx(x, mu)

    def dmu(self, x, mu):
        return self.base.dmu(x, mu)

    def stepper(self, mu):
        step = self.base.stepper(mu)
        k = self.k
        return lambda x: step(x) + k


@dataclass(frozen=True)
class IteratedLift:
    """The lift x -> F^n(x, mu) - shift.

    With n = q and shift = p this is the reduced map of a family in class
    p/q: a lift with rotation number q rho(F) - p, close to zero.
    """

    base: object
    n: int
    shift: float = 0.0

    def eval(self, x, mu):
        step = self.base.stepper(mu)
        x = np.asarray(x, dtype=float)
        for _ in range(self.n):
            x = step(x)
        return x - self.shift

    def dx(self, x, mu):
        step = self.base.stepper(mu)
        x = np.asarray(x, dtype=float)
        prod = np.ones(x.shape) if x.ndim else 1.0
        for _ in range(self.n):
            prod = prod * self.base.dx(x, mu)
            x = step(x)
        return prod

    def dmu(self, x, mu):
        return iterate_with_sensitivity(self.base, x, mu, self.n).mu_derivative

    def stepper(self, mu):
        step = self.base.stepper(mu)
        n, shift = self.n, self.shift

        def power_step(x):
            for _ in range(n):
                x = step(x)
            return x - shift

        return power_step


def q_reduced(family):
    """The reduced lift G = F^q - p of a family rigid at p/q."""
    red = family.reduced()
    return IteratedLift(family, red.q, shift=red.p)


def iterate_with_sensitivity(family, x0, mu, n):
    """Propagate (F^n(x0), dF^n/dmu) through composition by the chain rule."""
    x = np.asarray(x0, dtype=float)
    sens = np.zeros(x.shape) if x.ndim else 0.0
    for _ in range(int(n)):
        sens = family.dx(x, mu) * sens + family.dmu(x, mu)
        x = family.eval(x, mu)
    if np.ndim(x):
        return LiftValue(x, sens)
    return LiftValue(float(x), float(sens))


def mu_sensitivity(family, x, n, mu=0.0):
    """dF^n/dmu(x, mu); at mu = 0 this is the integrand of the slope formula."""
    return iterate_with_sensitivity(family, x, mu, n).mu_derivative


def q_expand(family):
    """First-order expansion of the q-th iterate at mu = 0.

    Returns ``(p, first_order)`` where ``first_order(x)`` evaluates
    q (a + Psi(x)) through the shift-average identity

        sum_{r=0}^{q-1} psi(x + r p / q) = q Psi(x),

    with Psi the q-resonant part of psi. No Fourier transform is taken;
    the identity follows from cancellation of the non-resonant terms.
    """
    red = family.reduced()
    p, q, a, psi = red.p, red.q, red.a, red.psi

    def first_order(x):
        x = np.asarray(x, dtype=float)
        total = np.full(x.shape, float(q) * a)
        for r in range(q):
            total = total + psi.evaluate(x + r * p / q)
        return total if total.ndim else float(total)

    return p, first_order
