"""Probit dose-response tests.

Derived values computed by hand from Y = a + b*ln(C**n * t) with the
chlorine constants and the standard normal CDF; the 600 ppm / 25 min case
is the reference worked example.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erimap.hazard import (
    CHLORINE,
    Exposure,
    NonPositiveDose,
    ProbitParams,
    dose,
    exposure_to_soft_evidence,
    probit_to_probability,
    probit_value,
)


class TestDose:
    def test_reference_case(self):
        assert dose(Exposure(600, 25), n=2) == pytest.approx(9.0e6, rel=0, abs=0)

    def test_outer_zone(self):
        assert dose(Exposure(200, 15), n=2) == pytest.approx(6.0e5)

    def test_vanishing_duration_limit(self):
        assert dose(Exposure(600, 1e-12), n=2) == pytest.approx(0.0, abs=1e-3)

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            Exposure(0, 10)
        with pytest.raises(ValueError):
            Exposure(600, 0)


class TestProbitValue:
    def test_reference_case(self):
        assert probit_value(9.0e6, CHLORINE) == pytest.approx(6.4417, abs=1e-3)

    def test_middle_zone(self):
        assert probit_value(4.0e6, CHLORINE) == pytest.approx(5.6957, abs=1e-3)

    def test_midpoint_dose_gives_half(self):
        d = math.exp((5 - CHLORINE.a) / CHLORINE.b)
        assert probit_value(d, CHLORINE) == pytest.approx(5.0, abs=1e-9)
        assert probit_to_probability(probit_value(d, CHLORINE)) == pytest.approx(0.5, abs=1e-9)

    def test_non_positive_dose(self):
        with pytest.raises(NonPositiveDose):
            probit_value(0.0, CHLORINE)

    def test_params_invariants(self):
        with pytest.raises(ValueError):
            ProbitParams(a=-8.29, b=0.0, n=2)


class TestProbitToProbability:
    def test_midpoint(self):
        assert probit_to_probability(5.0) == 0.5

    def test_reference_cases(self):
        assert probit_to_probability(6.4417) == pytest.approx(0.9253, abs=1e-3)
        assert probit_to_probability(5.6957) == pytest.approx(0.7567, abs=1e-3)

    def test_bounded_and_increasing(self):
        ys = [i / 10 for i in range(-20, 121)]
        ps = [probit_to_probability(y) for y in ys]
        assert all(0.0 < p < 1.0 for p in ps)
        assert all(a < b for a, b in zip(ps, ps[1:]))


class TestExposureToSoftEvidence:
    def test_inner_zone_first_estimate(self):
        ratio = exposure_to_soft_evidence(Exposure(600, 15), CHLORINE)
        assert ratio[0] == pytest.approx(0.834, abs=1e-3)
        assert ratio[0] + ratio[1] == pytest.approx(1.0, abs=1e-12)

    def test_middle_zone_first_estimate(self):
        ratio = exposure_to_soft_evidence(Exposure(400, 15), CHLORINE)
        assert ratio[0] == pytest.approx(0.589, abs=1e-3)

    def test_short_exposure_goes_to_zero(self):
        ratio = exposure_to_soft_evidence(Exposure(600, 1e-9), CHLORINE)
        assert ratio[0] < 1e-6

    def test_composition_matches_pipeline(self):
        e = Exposure(523.7, 18.2)
        q = probit_to_probability(probit_value(dose(e, CHLORINE.n), CHLORINE))
        assert exposure_to_soft_evidence(e, CHLORINE) == pytest.approx((q, 1 - q), abs=1e-12)

    @settings(max_examples=100)
    @given(
        c=st.floats(10.0, 500.0),
        t=st.floats(5.0, 30.0),
        dc=st.floats(0.5, 100.0),
        dt=st.floats(0.5, 10.0),
    )
    def test_monotone_in_concentration_and_duration(self, c, t, dc, dt):
        # Range keeps the CDF away from float saturation at exactly 0 or 1.
        base = exposure_to_soft_evidence(Exposure(c, t), CHLORINE)[0]
        assert exposure_to_soft_evidence(Exposure(c + dc, t), CHLORINE)[0] > base
        assert exposure_to_soft_evidence(Exposure(c, t + dt), CHLORINE)[0] > base
