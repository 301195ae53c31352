"""Transversality classification and predicted slopes against closed forms and oracles."""

import numpy as np
import pytest

from rotnum import (
    HarmonicProfile,
    SensitivityError,
    SmoothFamily,
    brunovsky_slope,
    classify_and_predict,
    closed_form,
    parkhe_slope,
)
from helpers import random_transversal_family


def benchmark_family(p, q, a, b, c):
    terms = []
    if b:
        terms.append((1, 0.0, b))
    if c:
        terms.append((2, c, 0.0))
    return SmoothFamily(p=p, q=q, a=a, psi=HarmonicProfile(tuple(terms)))


class TestClosedForms:
    def test_sine_drive_q1(self):
        rep = classify_and_predict(benchmark_family(0, 1, 5.0, 4.0, 0.0))
        assert rep.classification == "transversal"
        assert rep.slope == pytest.approx(closed_form("arnold_q1", a=5.0, b=4.0), abs=1e-10)
        assert closed_form("arnold_q1", a=5.0, b=4.0) == pytest.approx(3.0)

    def test_weak_drive_q1(self):
        rep = classify_and_predict(benchmark_family(0, 1, 5.0, 1.0, 0.0))
        assert rep.slope == pytest.approx(np.sqrt(24.0), abs=1e-10)

    def test_second_harmonic_q2(self):
        for b in (-1.0, 1.0, 4.0):
            rep = classify_and_predict(benchmark_family(1, 2, 5.0, b, 0.5))
            assert rep.slope == pytest.approx(
                closed_form("modified_q2", a=5.0, c=0.5), abs=1e-10
            )

    def test_q2_slope_independent_of_sine_component(self):
        # the first harmonic is non-resonant at q = 2 and must not matter
        slopes = [
            classify_and_predict(benchmark_family(1, 2, 5.0, b, 3.0)).slope
            for b in (-1.0, 1.0, 4.0)
        ]
        assert np.ptp(slopes) < 1e-12
        assert slopes[0] == pytest.approx(4.0, abs=1e-10)

    def test_perfect_square_family(self):
        for u in (0.2, -0.2, 0.4, -0.4):
            fam = benchmark_family(0, 1, 1.0 + 0.5 * u * u, 2.0 * u, -0.5 * u * u)
            rep = classify_and_predict(fam)
            assert rep.slope == pytest.approx(closed_form("modified_u", u=u), abs=1e-10)

    def test_u_symmetry(self):
        assert closed_form("modified_u", u=0.3) == closed_form("modified_u", u=-0.3)

    def test_closed_form_domains(self):
        with pytest.raises(ValueError):
            closed_form("arnold_q1", a=1.0, b=2.0)
        with pytest.raises(ValueError):
            closed_form("modified_q2", a=0.5, c=1.0)
        with pytest.raises(ValueError):
            closed_form("modified_u", u=0.7)


class TestClassification:
    def test_mode_locked(self):
        rep = classify_and_predict(benchmark_family(0, 1, 0.5, 1.0, 0.0))
        assert rep.classification == "mode_locked"
        assert rep.slope == 0.0

    def test_indeterminate_on_tangency(self):
        rep = classify_and_predict(benchmark_family(0, 1, 1.0, 1.0, 0.0))
        assert rep.classification == "indeterminate"
        assert np.isnan(rep.slope)

    def test_negative_drift_transversal(self):
        rep = classify_and_predict(benchmark_family(0, 1, -5.0, 4.0, 0.0))
        assert rep.classification == "transversal"
        assert rep.slope == pytest.approx(-3.0, abs=1e-10)

    def test_degenerate_resonance_reduces_to_drift(self):
        # q = 3 with drive of harmonics 1 and 2 only: empty resonant profile
        fam = SmoothFamily(
            p=1, q=3, a=2.5, psi=HarmonicProfile(((1, 0.4, 0.1), (2, 0.0, 0.3)))
        )
        rep = classify_and_predict(fam)
        assert rep.slope == pytest.approx(2.5, abs=1e-12)
        assert rep.slope == pytest.approx(brunovsky_slope(fam))

    def test_resonance_lowers_the_drift_slope(self):
        # with a resonant harmonic present the true slope sits strictly
        # below the bare drift
        fam = benchmark_family(0, 1, 5.0, 4.0, 0.0)
        assert classify_and_predict(fam).slope < brunovsky_slope(fam)


class TestParkheOracle:
    def test_matches_closed_form_q1(self):
        fam = benchmark_family(0, 1, 5.0, 4.0, 0.0)
        assert parkhe_slope(fam) == pytest.approx(3.0, abs=1e-8)

    def test_matches_classifier_q2(self):
        fam = benchmark_family(1, 2, 5.0, 4.0, 0.5)
        assert parkhe_slope(fam) == pytest.approx(
            classify_and_predict(fam).slope, abs=1e-8
        )

    def test_random_families_agree(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            fam = random_transversal_family(rng)
            assert parkhe_slope(fam) == pytest.approx(
                classify_and_predict(fam).slope, abs=1e-8
            )

    def test_rejects_sign_changing_sensitivity(self):
        with pytest.raises(SensitivityError):
            parkhe_slope(benchmark_family(0, 1, 0.5, 1.0, 0.0))
