"""Continuum oracle: passage times of the limiting flow and Euler-orbit deviation.

A family with rotation 0 at mu = 0 is, after one step of size mu, the
Euler iteration of the flow dX/dt = a + psi(X) + mu g(X). The time the
flow takes to traverse one period is computable by quadrature, and the
orbit of the map shadows the flow to O(mu); both facts are exposed here
so the map-side estimators can be validated against the continuum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import FamilyValidationError, RotnumError, VelocityError
from .quadrature import periodic_integral


@dataclass(frozen=True)
class PassageTime:
    """Time for the limiting flow to move from X = 0 to X = 1."""

    T_mu: float
    mu: float
    method: str


def _reduced_r01(family):
    red = family.reduced()
    if (red.p, red.q) != (0, 1):
        raise FamilyValidationError("continuum oracle requires a family rigid at 0/1")
    return red


def passage_time(family, mu, grid=4096):
    """T(mu), the unit traversal time of the flow, by periodic quadrature."""
    red = _reduced_r01(family)
    xs = np.arange(grid) / grid
    if np.min(red.velocity(xs, mu)) <= 0.0:
        raise VelocityError(f"vanishing velocity at mu={mu}: field not positive on grid")
    value, _, _ = periodic_integral(lambda x: 1.0 / red.velocity(x, mu))
    return PassageTime(T_mu=float(value), mu=float(mu), method="quadrature")


def traverse_time(velocity, kinks=None, tol=1e-12):
    """Unit traversal time of an arbitrary positive velocity field.

    Adaptive quadrature of 1/velocity over [0, 1]; ``kinks`` lists interior
    points where the field is non-smooth (e.g. piecewise-linear breaks).
    """
    value, _ = quad(
        lambda x: 1.0 / velocity(x),
        0.0,
        1.0,
        points=sorted(kinks) if kinks else None,
        limit=200,
        epsabs=tol,
        epsrel=tol,
    )
    return float(value)


def euler_orbit_vs_flow(family, mu, n, grid=4096):
    """Largest gap between the flow and the map orbit over n steps.

    Integrates the flow with a high-order adaptive integrator (DOP853,
    local tolerance 1e-12) sampled at times j*mu and compares against the
    map orbit x_{j+1} = F(x_j, mu) from 0. The gap must shrink linearly
    with mu; the sweep over mu is the oracle, not any single run.
    """
    red = _reduced_r01(family)
    xs = np.arange(grid) / grid
    if np.min(red.velocity(xs, mu)) <= 0.0:
        raise VelocityError(f"vanishing velocity at mu={mu}: field not positive on grid")
    times = np.arange(n + 1) * mu
    sol = solve_ivp(
        lambda t, X: red.velocity(X, mu),
        (0.0, times[-1]),
        [0.0],
        t_eval=times,
        method="DOP853",
        rtol=1e-12,
        atol=1e-12,
    )
    if not sol.success:
        raise RotnumError(f"flow integration failed: {sol.message}")
    step = red.stepper(mu)
    orbit = np.empty(n + 1)
    x = 0.0
    orbit[0] = x
    for j in range(1, n + 1):
        x = step(x)
        orbit[j] = x
    return float(np.max(np.abs(sol.y[0] - orbit)))
