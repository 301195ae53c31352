"""Piecewise-linear circle lifts: validation, symbolic composition, and the
first-order normal form of the q-th iterate.

A family is given by affine parameter paths for its break points b_k(mu)
and break values a_k(mu); slopes follow from consecutive pairs with the
wraparound a_{N+1} = a_1 + 1, b_{N+1} = b_1 + 1. When the q-th iterate is
a rigid integer translation at mu = 0, the iterate admits the first-order
normal form x + p + mu (A_i + B_i (x - gamma_i)) piece by piece, and the
slope of the rotation number at mu = 0 is 1/(q sum_i T_i) with T_i the
passage time of the linear velocity field A_i + B_i (X - gamma_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BreakCollisionError,
    FamilyValidationError,
    MonotonicityError,
    RotnumError,
)


class _PWLMap:
    """A fixed piecewise-linear lift, represented by break/value pairs.

    ``breaks`` is sorted with breaks[0] in [0, 1) and span < 1; ``values``
    holds the map at each break. Slopes are implied by consecutive pairs
    (the map is continuous), with the +1 wraparound closing the period.
    """

    __slots__ = ("breaks", "values", "slopes")

    def __init__(self, breaks, values):
        breaks = np.asarray(breaks, dtype=float).copy()
        values = np.asarray(values, dtype=float).copy()
        if breaks.shape != values.shape or breaks.ndim != 1 or len(breaks) < 1:
            raise FamilyValidationError("breaks and values must be matching 1-d sequences")
        shift = math.floor(breaks[0])
        breaks -= shift
        values -= shift
        if np.any(np.diff(breaks) <= 0.0) or breaks[-1] - breaks[0] >= 1.0:
            raise FamilyValidationError("break points must be strictly increasing within one period")
        db = np.diff(np.append(breaks, breaks[0] + 1.0))
        dv = np.diff(np.append(values, values[0] + 1.0))
        if np.any(dv <= 0.0):
            raise FamilyValidationError("map values must be strictly increasing (slopes > 0)")
        self.breaks = breaks
        self.values = values
        self.slopes = dv / db

    def piece_index(self, y):
        """Index of the piece containing y, for y in [breaks[0], breaks[0]+1)."""
        idx = np.searchsorted(self.breaks, y, side="right") - 1
        return np.clip(idx, 0, len(self.breaks) - 1)

    def normalize(self, x):
        """(y, k) with y = x - k in [breaks[0], breaks[0]+1) and k integer."""
        k = np.floor(x - self.breaks[0])
        return x - k, k

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        y, k = self.normalize(x)
        idx = self.piece_index(y)
        out = self.values[idx] + self.slopes[idx] * (y - self.breaks[idx]) + k
        return out if out.ndim else float(out)

    def slope_at(self, x):
        y, _ = self.normalize(np.asarray(x, dtype=float))
        out = self.slopes[self.piece_index(y)]
        return out if out.ndim else float(out)

    def inverse(self):
        return _PWLMap(self.values, self.breaks)

    def compose(self, inner, tol=1e-12):
        """The lift self(inner(x)), with break points propagated exactly."""
        cands = list(np.mod(inner.breaks, 1.0))
        n = len(inner.breaks)
        b_ext = np.append(inner.breaks, inner.breaks[0] + 1.0)
        v_ext = np.append(inner.values, inner.values[0] + 1.0)
        for i in range(n):
            v_lo, v_hi = v_ext[i], v_ext[i + 1]
            s = inner.slopes[i]
            for g in self.breaks:
                k_lo = math.ceil(v_lo - g)
                k_hi = math.floor(v_hi - g)
                for k in range(k_lo, k_hi + 1):
                    c = g + k
                    if v_lo < c < v_hi:
                        cands.append((b_ext[i] + (c - v_lo) / s) % 1.0)
        cands = np.sort(np.asarray(cands))
        keep = [cands[0]]
        for c in cands[1:]:
            if c - keep[-1] > tol:
                keep.append(c)
        if len(keep) > 1 and (keep[0] + 1.0) - keep[-1] <= tol:
            keep.pop()
        breaks = np.asarray(keep)
        return _PWLMap(breaks, self.eval(inner.eval(breaks)))

    def power(self, q, tol=1e-12):
        out = self
        for _ in range(q - 1):
            out = out.compose(self, tol=tol)
        return out


@dataclass(frozen=True)
class PWLFamily:
    """Family of piecewise-linear lifts with affine parameter paths.

    ``breaks`` is a sequence of (b_k at mu=0, db_k/dmu) and ``values`` a
    matching sequence of (a_k at mu=0, da_k/dmu); p/q is the rotation
    number of the rigid iterate at mu = 0 when there is one.
    """

    breaks: tuple
    values: tuple
    p: int = 0
    q: int = 1

    def __post_init__(self):
        breaks = tuple((float(b), float(db)) for b, db in self.breaks)
        values = tuple((float(a), float(da)) for a, da in self.values)
        if len(breaks) != len(values) or not breaks:
            raise FamilyValidationError("need matching, non-empty break and value paths")
        b0 = [b for b, _ in breaks]
        if any(not 0.0 <= b < 1.0 for b in b0):
            raise FamilyValidationError("break points at mu=0 must lie in [0, 1)")
        if any(x >= y for x, y in zip(b0, b0[1:])):
            raise FamilyValidationError("break points at mu=0 must be strictly increasing")
        if self.q < 1 or math.gcd(abs(self.p), self.q) != 1:
            raise FamilyValidationError("p and q must be coprime with q >= 1")
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "values", values)

    @property
    def n_pieces(self):
        return len(self.breaks)

    def b(self, mu):
        return np.array([b + db * mu for b, db in self.breaks])

    def a(self, mu):
        return np.array([a + da * mu for a, da in self.values])

    def at_mu(self, mu):
        return _PWLMap(self.b(mu), self.a(mu))

    def _slope_data(self, mu):
        """Slopes s_k(mu) and their mu-derivatives at this mu."""
        b = self.b(mu)
        a = self.a(mu)
        db_path = np.array([db for _, db in self.breaks])
        da_path = np.array([da for _, da in self.values])
        delta_b = np.diff(np.append(b, b[0] + 1.0))
        delta_a = np.diff(np.append(a, a[0] + 1.0))
        delta_db = np.diff(np.append(db_path, db_path[0]))
        delta_da = np.diff(np.append(da_path, da_path[0]))
        s = delta_a / delta_b
        s_prime = (delta_da * delta_b - delta_a * delta_db) / (delta_b * delta_b)
        return s, s_prime

    def eval(self, x, mu):
        return self.at_mu(float(mu)).eval(x)

    def dx(self, x, mu):
        return self.at_mu(float(mu)).slope_at(x)

    def dmu(self, x, mu):
        """dF/dmu, piecewise affine: a_k' - s_k b_k' + s_k'(x - b_k)."""
        mu = float(mu)
        m = self.at_mu(mu)
        s, s_prime = self._slope_data(mu)
        db_path = np.array([db for _, db in self.breaks])
        da_path = np.array([da for _, da in self.values])
        y, _ = m.normalize(np.asarray(x, dtype=float))
        idx = m.piece_index(y)
        out = da_path[idx] - s[idx] * db_path[idx] + s_prime[idx] * (y - m.breaks[idx])
        return out if np.ndim(out) else float(out)

    def stepper(self, mu):
        if np.ndim(mu) == 0:
            return self.at_mu(float(mu)).eval
        maps = [self.at_mu(float(v)) for v in np.ravel(mu)]

        def step(x):
            flat = np.ravel(np.asarray(x, dtype=float)).copy()
            for i, m in enumerate(maps):
                flat[i] = m.eval(flat[i])
            return flat.reshape(np.shape(x))

        return step

    def iterate(self, x0, mu, n):
        step = self.stepper(mu)
        x = np.asarray(x0, dtype=float)
        for _ in range(int(n)):
            x = step(x)
        return x if np.ndim(x) else float(x)

    def reduced(self):
        return self


def _affine_product(p0, p1, q0, q1):
    """Coefficients of (p0 + p1 mu)(q0 + q1 mu)."""
    return p0 * q0, p0 * q1 + p1 * q0, p1 * q1


def validate(family, window):
    """Check the homeomorphism conditions on [-window, window].

    Returns a list of violation strings; an empty list means the family is
    a valid break-point homeomorphism throughout the window. Affine paths
    make endpoint checks sufficient for ordering and slope positivity;
    adjacent-slope coincidences are located exactly as polynomial roots
    (a coincidence at mu = 0 itself is allowed: that is the rigid point).
    """
    w = float(window)
    if w <= 0.0:
        raise ValueError("window must be positive")
    problems = []
    n = family.n_pieces
    for mu in (-w, w):
        b = family.b(mu)
        gaps = np.diff(np.append(b, b[0] + 1.0))
        if np.any(gaps <= 0.0):
            problems.append(f"break ordering violated at mu={mu}")
            continue
        s, _ = family._slope_data(mu)
        if np.any(s <= 0.0):
            problems.append(f"non-positive slope at mu={mu}")
    if n >= 2:
        b0 = np.array([b for b, _ in family.breaks])
        db = np.array([d for _, d in family.breaks])
        a0 = np.array([a for a, _ in family.values])
        da = np.array([d for _, d in family.values])
        dAb = np.diff(np.append(b0, b0[0] + 1.0)), np.diff(np.append(db, db[0]))
        dAa = np.diff(np.append(a0, a0[0] + 1.0)), np.diff(np.append(da, da[0]))
        for i in range(n):
            j = (i + 1) % n
            # s_i(mu) = s_j(mu)  <=>  da_i(mu) db_j(mu) - da_j(mu) db_i(mu) = 0
            c0a, c1a, c2a = _affine_product(dAa[0][i], dAa[1][i], dAb[0][j], dAb[1][j])
            c0b, c1b, c2b = _affine_product(dAa[0][j], dAa[1][j], dAb[0][i], dAb[1][i])
            coeffs = np.array([c2a - c2b, c1a - c1b, c0a - c0b])
            scale = max(np.max(np.abs(coeffs)), 1.0)
            if np.all(np.abs(coeffs) < 1e-14 * scale):
                problems.append(f"slopes of pieces {i} and {j} identical for all mu")
                continue
            nz = np.abs(coeffs) > 1e-14 * scale
            first = int(np.argmax(nz))
            roots = np.roots(coeffs[first:]) if len(coeffs[first:]) > 1 else []
            for r in roots:
                if abs(r.imag) < 1e-12 and 1e-12 < abs(r.real) < w:
                    problems.append(
                        f"slopes of pieces {i} and {j} coincide at mu={r.real:.6g}"
                    )
    return problems


def rigid_check(family, p=None, q=None, tol=1e-9):
    """True iff the q-fold composition at mu = 0 is exactly x + p.

    The composition is carried out symbolically on the pieces, so the
    check is a finite exact test over the composed break set.
    """
    p = family.p if p is None else p
    q = family.q if q is None else q
    m = family.at_mu(0.0).power(q)
    if np.max(np.abs(m.slopes - 1.0)) > tol:
        return False
    return bool(np.max(np.abs(m.values - m.breaks - p)) <= tol)


@dataclass(frozen=True, eq=False)
class PWLNormalForm:
    """First-order normal form of the q-th iterate on its break intervals.

    On [gamma_i, gamma_{i+1}): F^q(x, mu) = x + p + mu (A_i + B_i (x - gamma_i))
    up to O(mu^2). Can be constructed directly to test the slope formula in
    isolation.
    """

    p: int
    q: int
    gammas: np.ndarray
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "gammas", np.asarray(self.gammas, dtype=float))
        object.__setattr__(self, "A", np.asarray(self.A, dtype=float))
        object.__setattr__(self, "B", np.asarray(self.B, dtype=float))

    @property
    def n_pieces(self):
        return len(self.gammas)

    @property
    def gaps(self):
        return np.diff(np.append(self.gammas, self.gammas[0] + 1.0))

    def continuity_defects(self):
        """|A_i + B_i (gamma_{i+1} - gamma_i) - A_{i+1}|, periodic."""
        ends = self.A + self.B * self.gaps
        return np.abs(ends - np.roll(self.A, -1))


def normal_form(family, p=None, q=None, dedup_tol=1e-12):
    """First-order normal form of F^q for a family rigid at mu = 0.

    Break points of the iterate are the preimages F^{-r} of the family's
    break set, r < q; on each resulting interval the parameter sensitivity
    of F^q is affine in x and is recovered exactly from two interior
    samples.
    """
    p = family.p if p is None else p
    q = family.q if q is None else q
    if not rigid_check(family, p, q):
        raise FamilyValidationError(f"family is not rigid at mu=0 for {p}/{q}")
    m0 = family.at_mu(0.0)
    inv = m0.inverse()
    pts = np.mod(m0.breaks, 1.0)
    cands = [pts]
    for _ in range(1, q):
        pts = np.mod(inv.eval(pts), 1.0)
        cands.append(pts)
    cands = np.sort(np.concatenate(cands))
    gammas = []
    cluster = [cands[0]]
    for c in cands[1:]:
        if c - cluster[-1] <= dedup_tol:
            cluster.append(c)
        else:
            gammas.append(cluster)
            cluster = [c]
    gammas.append(cluster)
    if len(gammas) > 1 and (gammas[0][0] + 1.0) - gammas[-1][-1] <= dedup_tol:
        gammas[0] = [g - 1.0 for g in gammas.pop()] + gammas[0]
    out = []
    for cluster in gammas:
        if max(cluster) - min(cluster) > 1e-13:
            raise BreakCollisionError(
                "duplicate break collision: distinct break orbits within the "
                f"deduplication tolerance near x={cluster[0]:.12g}"
            )
        out.append(float(np.mean(cluster)))
    gam = np.sort(np.mod(np.asarray(out), 1.0))
    gaps = np.diff(np.append(gam, gam[0] + 1.0))
    x1 = gam + 0.25 * gaps
    x2 = gam + 0.75 * gaps
    xall = np.concatenate([x1, x2])
    sens = np.zeros_like(xall)
    xc = xall.copy()
    for _ in range(q):
        sens = family.dx(xc, 0.0) * sens + family.dmu(xc, 0.0)
        xc = m0.eval(xc)
    s1, s2 = sens[: len(gam)], sens[len(gam):]
    B = (s2 - s1) / (x2 - x1)
    A = s1 - B * (x1 - gam)
    nf = PWLNormalForm(p=p, q=q, gammas=gam, A=A, B=B)
    scale = max(1.0, float(np.max(np.abs(A))))
    if float(np.max(nf.continuity_defects())) > 1e-10 * scale:
        # Distinct break points of the iterate collapse onto one point at
        # mu = 0 carrying incompatible one-sided first-order data, so no
        # normal form with constant piece coefficients exists.
        raise BreakCollisionError(
            "break orbits of the iterate collide at mu=0 with discontinuous "
            "first-order data; constant-coefficient normal form does not exist"
        )
    return nf


def gmm_slope(nf, b_tol=1e-12):
    """Slope of the rotation number at mu = 0 from the normal form.

    Each piece contributes the passage time of the linear velocity field
    A_i + B_i (X - gamma_i) across its interval:

        T_i = (1/B_i) log(1 + B_i (gamma_{i+1} - gamma_i) / A_i)

    (the linear-in-x branch degenerating to (gamma_{i+1} - gamma_i)/A_i),
    and the slope is 1/(q sum_i T_i). Requires first-order monotonicity:
    the sensitivity must stay positive across every piece.
    """
    gaps = nf.gaps
    ends = nf.A + nf.B * gaps
    if min(float(np.min(nf.A)), float(np.min(ends))) <= 0.0:
        raise MonotonicityError(
            "monotonicity violated: first-order sensitivity not positive on all pieces"
        )
    T = np.empty(nf.n_pieces)
    for i in range(nf.n_pieces):
        if abs(nf.B[i]) <= b_tol:
            T[i] = gaps[i] / nf.A[i]
        else:
            arg = nf.B[i] * gaps[i] / nf.A[i]
            if arg <= -1.0:
                raise RotnumError("log domain error in passage-time formula")
            T[i] = math.log1p(arg) / nf.B[i]
    return float(1.0 / (nf.q * np.sum(T)))
