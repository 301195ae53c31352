"""Lift families: evaluation, periodicity, sensitivities, and the q-fold expansion."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotnum import (
    AffinePath,
    ArnoldFamily,
    FamilyValidationError,
    HarmonicProfile,
    HomeomorphismError,
    SmoothFamily,
    analyze,
    iterate_with_sensitivity,
    mu_sensitivity,
    q_expand,
    q_reduced,
    resonant,
)

SIN = HarmonicProfile(((1, 0.0, 1.0),))


def make_family(p=0, q=1, a=2.0, terms=((1, 0.0, 1.0),), g0=0.0, g=()):
    return SmoothFamily(
        p=p, q=q, a=a, psi=HarmonicProfile(terms), g0=g0, g=HarmonicProfile(g)
    )


class TestHarmonicProfile:
    def test_sin_evaluates(self):
        prof = SIN
        assert prof.evaluate(0.25) == pytest.approx(1.0)
        assert prof.evaluate(0.0) == pytest.approx(0.0, abs=1e-15)

    def test_derivative_of_sin(self):
        prof = SIN
        assert prof.derivative(0.0) == pytest.approx(2 * np.pi)

    def test_amplitude_bound_dominates(self):
        prof = HarmonicProfile(((1, 0.3, -0.4), (3, 0.0, 0.2)))
        xs = np.linspace(0, 1, 1001)
        assert np.max(np.abs(prof.evaluate(xs))) <= prof.amplitude_bound + 1e-12

    def test_rejects_unsorted_terms(self):
        with pytest.raises(FamilyValidationError):
            HarmonicProfile(((2, 1.0, 0.0), (1, 0.0, 1.0)))

    def test_rejects_zero_harmonic(self):
        with pytest.raises(FamilyValidationError):
            HarmonicProfile(((0, 1.0, 0.0),))


class TestSmoothFamilyEval:
    def test_matches_hand_formula(self):
        fam = make_family(a=2.0)
        x, mu = 0.3, 0.01
        expected = x + mu * (2.0 + np.sin(2 * np.pi * x))
        assert fam.eval(x, mu) == pytest.approx(expected, abs=1e-14)

    def test_second_order_term(self):
        fam = make_family(a=2.0, g0=3.0, g=((2, 1.0, 0.0),))
        x, mu = 0.1, 0.05
        expected = (
            x
            + mu * (2.0 + np.sin(2 * np.pi * x))
            + mu**2 * (3.0 + np.cos(4 * np.pi * x))
        )
        assert fam.eval(x, mu) == pytest.approx(expected, abs=1e-14)

    def test_rigid_at_zero(self):
        fam = make_family(p=1, q=3)
        xs = np.linspace(0, 1, 17)
        assert np.allclose(fam.eval(xs, 0.0), xs + 1 / 3)

    @given(
        x=st.floats(-5, 5),
        k=st.integers(-3, 3),
        mu=st.floats(-0.01, 0.01),
    )
    @settings(max_examples=100, deadline=None)
    def test_lift_periodicity(self, x, k, mu):
        fam = make_family(p=2, q=5, a=1.5, terms=((1, 0.2, -0.3), (4, 0.0, 0.1)))
        assert fam.eval(x + k, mu) == pytest.approx(fam.eval(x, mu) + k, abs=1e-12)

    def test_window_violation_raises(self):
        fam = make_family(a=0.0, terms=((1, 0.0, 1.0),))
        with pytest.raises(HomeomorphismError):
            fam.eval(0.0, 1.0)

    def test_window_check_can_be_disabled(self):
        fam = SmoothFamily(p=0, q=1, a=0.0, psi=SIN, check_window=False)
        fam.eval(0.0, 1.0)  # no raise


class TestSensitivity:
    def test_triple_composition_hand_unrolled(self):
        fam = make_family(a=1.3, terms=((1, 0.4, -0.2), (2, 0.0, 0.3)))
        x0, mu = 0.37, 0.002
        lv = iterate_with_sensitivity(fam, x0, mu, 3)
        # unroll the chain rule by hand
        xs = [x0]
        for _ in range(3):
            xs.append(fam.eval(xs[-1], mu))
        s_ref = 0.0
        for xi in xs[:3]:
            s_ref = fam.dx(xi, mu) * s_ref + fam.dmu(xi, mu)
        assert lv.value == pytest.approx(xs[-1], abs=1e-14)
        assert lv.mu_derivative == pytest.approx(s_ref, abs=1e-14)

    def test_chain_rule_vs_finite_difference(self):
        fam = make_family(p=1, q=2, a=2.1, terms=((1, 0.3, 0.5), (2, -0.2, 0.1)))
        h = 1e-6
        for x0 in (0.0, 0.21, 0.77):
            s = iterate_with_sensitivity(fam, x0, 0.0, 2).mu_derivative
            fd = (fam.iterate(x0, h, 2) - fam.iterate(x0, -h, 2)) / (2 * h)
            assert s == pytest.approx(fd, rel=1e-6)

    def test_mu_sensitivity_vectorized(self):
        fam = make_family(p=1, q=3, a=1.7, terms=((3, 0.4, 0.0),))
        xs = np.linspace(0, 1, 11)
        sens = mu_sensitivity(fam, xs, 3)
        singles = [iterate_with_sensitivity(fam, x, 0.0, 3).mu_derivative for x in xs]
        assert np.allclose(sens, singles, atol=1e-13)


class TestQExpansion:
    def test_q_expand_matches_resonant_profile(self):
        fam = make_family(
            p=2, q=3, a=2.0, terms=((1, 0.3, 0.4), (3, 0.2, -0.1), (6, 0.0, 0.05))
        )
        _, first_order = q_expand(fam)
        prof = resonant(analyze(fam.psi, fam.psi.max_harmonic), 3)
        xs = np.linspace(0, 1, 33)
        assert np.max(np.abs(first_order(xs) - 3 * (2.0 + prof.evaluate(xs)))) < 1e-10

    def test_q_reduced_iterate_matches_direct(self):
        fam = make_family(p=1, q=2, a=1.4, terms=((1, 0.0, 0.6), (2, 0.3, 0.0)))
        lifted = q_reduced(fam)
        x, mu = 0.4, 0.003
        assert lifted.eval(x, mu) == pytest.approx(
            fam.eval(fam.eval(x, mu), mu) - 1, abs=1e-13
        )


class TestArnoldFamily:
    def test_eval_formula(self):
        fam = ArnoldFamily(
            alpha=AffinePath(0.1, 2.0),
            beta=AffinePath(0.0, 1.0),
            gamma=AffinePath(0.0, 0.5),
        )
        x, mu = 0.3, 0.01
        expected = (
            x
            + (0.1 + 2 * mu)
            + (mu) * np.sin(2 * np.pi * x)
            + (0.5 * mu) * np.cos(4 * np.pi * x)
        )
        assert fam.eval(x, mu) == pytest.approx(expected, abs=1e-14)

    def test_reduction_to_smooth_family(self):
        fam = ArnoldFamily(
            alpha=AffinePath(0.5, 5.0),
            beta=AffinePath(0.0, 4.0),
            gamma=AffinePath(0.0, 0.5),
            p=1,
            q=2,
        )
        red = fam.reduced()
        assert (red.p, red.q) == (1, 2)
        assert red.a == pytest.approx(5.0)
        xs = np.linspace(0, 1, 9)
        assert np.allclose(
            red.psi.evaluate(xs),
            4.0 * np.sin(2 * np.pi * xs) + 0.5 * np.cos(4 * np.pi * xs),
        )

    def test_reduction_requires_vanishing_drive(self):
        fam = ArnoldFamily(alpha=AffinePath(0.0, 1.0), beta=AffinePath(0.1, 0.0))
        with pytest.raises(FamilyValidationError):
            fam.reduced()

    def test_infers_rational_from_alpha(self):
        fam = ArnoldFamily(alpha=AffinePath(2 / 3, 1.0), beta=AffinePath(0.0, 1.0))
        red = fam.reduced()
        assert (red.p, red.q) == (2, 3)


class TestMonotonicity:
    def test_orbits_preserve_order_inside_window(self):
        fam = make_family(a=1.0)
        mu = 0.05
        xs = np.sort(np.random.default_rng(7).uniform(0, 1, 32))
        out = fam.eval(xs, mu)
        assert np.all(np.diff(out) > 0)
