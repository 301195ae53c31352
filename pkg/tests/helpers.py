"""Shared generators for randomized family tests."""

from __future__ import annotations

import numpy as np

from rotnum import HarmonicProfile, PWLFamily, SmoothFamily, validate
from rotnum.pwl import _PWLMap


def random_transversal_family(rng, q_max=5, m_max=8):
    """A smooth family rigid at a random p/q with a + psi strictly positive.

    Drawing the drift above the profile's amplitude bound guarantees
    a + psi > 0 everywhere, hence a fortiori a + Psi > 0 for the resonant
    sub-profile, so the family is always transversal.
    """
    q = int(rng.integers(1, q_max + 1))
    p = int(rng.integers(0, q))
    while np.gcd(p, q) != 1:
        p = int(rng.integers(0, q))
    n_terms = int(rng.integers(1, 5))
    ms = rng.choice(np.arange(1, m_max + 1), size=n_terms, replace=False)
    terms = tuple(
        (int(m), float(rng.normal(scale=0.5)), float(rng.normal(scale=0.5)))
        for m in sorted(ms)
    )
    psi = HarmonicProfile(terms)
    a = psi.amplitude_bound + float(rng.uniform(0.2, 2.0))
    return SmoothFamily(p=p, q=q, a=a, psi=psi)


def random_circle_homeo(rng, n_max=4):
    """A random piecewise-linear degree-1 circle homeomorphism fixing no structure."""
    n = int(rng.integers(2, n_max + 1))
    breaks = np.sort(rng.uniform(0.0, 1.0, size=n))
    while np.min(np.diff(np.append(breaks, breaks[0] + 1.0))) < 0.05:
        breaks = np.sort(rng.uniform(0.0, 1.0, size=n))
    values = np.sort(rng.uniform(0.0, 1.0, size=n))
    while np.min(np.diff(np.append(values, values[0] + 1.0))) < 0.05:
        values = np.sort(rng.uniform(0.0, 1.0, size=n))
    return _PWLMap(breaks, values)


def random_rigid_pwl_family(rng, q_max=3, n_max=4, window=1e-4, max_tries=50):
    """A piecewise-linear family that is exactly the rotation by p/q at mu = 0.

    Break points and values both move: values at speed da_k, break points
    at speed db_k, with da_k - db_k > 0 so the first-order drive of the
    q-th iterate stays positive. Rejects the rare draws that fail
    homeomorphism validation on the window.
    """
    for _ in range(max_tries):
        q = int(rng.integers(1, q_max + 1))
        p = int(rng.integers(0, q)) if q > 1 else int(rng.integers(0, 2))
        while np.gcd(p, q) != 1:
            p = int(rng.integers(0, q))
        n = int(rng.integers(2, n_max + 1))
        breaks = np.sort(rng.uniform(0.0, 1.0, size=n))
        if np.min(np.diff(np.append(breaks, breaks[0] + 1.0))) < 0.05:
            continue
        db = rng.uniform(-0.2, 0.2, size=n)
        da = db + rng.uniform(0.3, 2.0, size=n)
        fam = PWLFamily(
            breaks=tuple((float(b), float(d)) for b, d in zip(breaks, db)),
            values=tuple((float(b + p / q), float(d)) for b, d in zip(breaks, da)),
            p=p,
            q=q,
        )
        if not validate(fam, window):
            return fam
    raise RuntimeError("could not draw a valid rigid piecewise-linear family")


def random_conjugated_rigid_pwl(rng, q):
    """A rigid family built by conjugating the p/q rotation with a random
    piecewise-linear homeomorphism.

    For q >= 2 the map at mu = 0 has non-unit slopes, so the break points
    of the q-th iterate collide at mu = 0 with discontinuous first-order
    data: rigid, but outside the scope of the normal-form construction.
    """
    p = 1 if q == 1 else next(r for r in range(1, q) if np.gcd(r, q) == 1)
    h = random_circle_homeo(rng)
    rot = _PWLMap([0.0], [p / q])
    m0 = h.compose(rot.compose(h.inverse()))
    da = rng.uniform(0.3, 2.0, size=len(m0.breaks))
    return PWLFamily(
        breaks=tuple((float(b), 0.0) for b in m0.breaks),
        values=tuple((float(v), float(d)) for v, d in zip(m0.values, da)),
        p=p,
        q=q,
    )
