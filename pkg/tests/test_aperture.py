"""Aperture construction and energy closed forms vs quadrature oracles."""

import numpy as np
import pytest

from airybeams import (
    AiryBeamSpec,
    DomainError,
    GaussianBeamSpec,
    K0,
    SamplingError,
    airy_energy_modulated_closed,
    airy_energy_truncated_closed,
    airy_unit_energy_amplitude,
    aperture_energy,
    gaussian_unit_energy_amplitude,
    make_airy_aperture,
    make_gaussian_aperture,
)


class TestAiryAperture:
    def test_sample_value_at_zero(self):
        spec = AiryBeamSpec(gamma_a=K0)
        ap = make_airy_aperture(spec, -1.0, 1.0, dx=1.0 / 32.0)
        i0 = np.argmin(np.abs(ap.x))
        assert ap.samples[i0].real == pytest.approx(0.35503, abs=1e-5)

    def test_normalized_energy_is_one(self):
        spec = AiryBeamSpec.normalized(K0 / 18.0, 0.01)
        ap = make_airy_aperture(spec, -900.0, 40.0, dx=1.0 / 16.0)
        assert aperture_energy(ap) == pytest.approx(1.0, abs=1e-4)

    def test_unit_amplitude_matches_quadrature(self):
        # U_a from the closed form against brute normalization by quadrature
        g, a = K0 / 18.0, 0.01
        u_closed = airy_unit_energy_amplitude(g, a)
        spec = AiryBeamSpec(gamma_a=g, alpha_a=a)
        ap = make_airy_aperture(spec, -1600.0, 60.0, dx=1.0 / 16.0)
        u_quad = 1.0 / np.sqrt(aperture_energy(ap))
        assert u_closed == pytest.approx(u_quad, rel=1e-6)

    def test_sampling_guard(self):
        # gamma = k0 makes the tail oscillate ~ sqrt(-xi) rad per
        # wavelength; a coarse dx must be rejected
        spec = AiryBeamSpec(gamma_a=K0)
        with pytest.raises(SamplingError):
            make_airy_aperture(spec, -200.0, 0.0, dx=0.25)

    def test_mirror_flag_reflects_profile(self):
        spec = AiryBeamSpec(gamma_a=K0 / 9.0, alpha_a=0.05)
        ap = make_airy_aperture(spec, -8.0, 8.0, dx=1.0 / 32.0)
        apm = make_airy_aperture(spec.mirrored(), -8.0, 8.0, dx=1.0 / 32.0)
        assert np.allclose(np.abs(apm.samples), np.abs(ap.samples[::-1]))

    def test_spec_invariants(self):
        with pytest.raises(DomainError):
            AiryBeamSpec(gamma_a=-1.0)
        with pytest.raises(DomainError):
            AiryBeamSpec(gamma_a=1.0, alpha_a=-0.1)
        with pytest.raises(DomainError):
            AiryBeamSpec(gamma_a=1.0, amplitude=0.0)


class TestGaussianAperture:
    def test_normalized_energy_is_one(self):
        spec = GaussianBeamSpec.normalized(np.sqrt(6.0), 0.08 * K0)
        ap = make_gaussian_aperture(spec, -30.0, 30.0, dx=1.0 / 16.0)
        assert aperture_energy(ap) == pytest.approx(1.0, abs=1e-6)

    def test_unit_amplitude_formula(self):
        # V_a = (2/pi)^(1/4)/sqrt(w_a); 0.5707 for w_a = sqrt(6)
        w = np.sqrt(6.0)
        va = gaussian_unit_energy_amplitude(w)
        assert va == pytest.approx((2.0 / np.pi) ** 0.25 / np.sqrt(w), rel=1e-12)
        assert va == pytest.approx(0.5707, abs=1e-4)
        spec = GaussianBeamSpec.normalized(w)
        ap = make_gaussian_aperture(spec, -40.0, 40.0, dx=1.0 / 16.0)
        assert aperture_energy(ap) == pytest.approx(1.0, abs=1e-6)

    def test_peak_at_center(self):
        spec = GaussianBeamSpec.normalized(2.0, mu_a=0.0, center=1.25)
        ap = make_gaussian_aperture(spec, -10.0, 10.0, dx=1.0 / 16.0)
        i = np.argmax(np.abs(ap.samples))
        assert ap.x[i] == pytest.approx(1.25, abs=ap.dx)
        assert abs(ap.samples[i]) == pytest.approx(spec.amplitude, rel=1e-6)

    def test_energy_independent_of_tilt(self):
        for mu in (0.0, 0.3 * K0, -0.8 * K0):
            spec = GaussianBeamSpec.normalized(2.5, mu_a=mu)
            ap = make_gaussian_aperture(spec, -25.0, 25.0, dx=1.0 / 32.0)
            assert aperture_energy(ap) == pytest.approx(1.0, abs=1e-6)


class TestApertureEnergy:
    def test_zero_field(self):
        spec = GaussianBeamSpec.normalized(2.0)
        ap = make_gaussian_aperture(spec, -5.0, 5.0)
        assert aperture_energy(ap.with_samples(np.zeros(ap.n))) == 0.0

    def test_quadratic_scaling(self):
        spec = GaussianBeamSpec.normalized(2.0)
        ap = make_gaussian_aperture(spec, -15.0, 15.0)
        assert aperture_energy(ap.with_samples(2.0 * ap.samples)) == pytest.approx(
            4.0 * aperture_energy(ap), rel=1e-12
        )

    def test_normalized_airy_window(self):
        spec = AiryBeamSpec.normalized(K0 / 18.0, 0.01)
        ap = make_airy_aperture(spec, -300.0, 20.0, dx=1.0 / 16.0)
        assert aperture_energy(ap) == pytest.approx(1.0, abs=1e-3)


class TestTruncatedClosedForm:
    def test_at_first_zero(self):
        # Ai term vanishes at the zero; cross-check by quadrature
        g = K0 / 18.0
        x_eff = 2.33811 / g
        closed = airy_energy_truncated_closed(g, x_eff)
        xi = np.linspace(-x_eff, 0.0, 20001)
        from airybeams import airy_ai

        quad = np.trapezoid(np.abs(airy_ai(g * xi + 0j)) ** 2, xi)
        assert closed == pytest.approx(quad, rel=1e-6)
        assert closed == pytest.approx(0.4247 / g, rel=1e-3)

    def test_empty_aperture(self):
        assert airy_energy_truncated_closed(K0 / 18.0, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_monotone_in_width(self):
        g = K0 / 18.0
        assert airy_energy_truncated_closed(g, 10.0 / g) > airy_energy_truncated_closed(
            g, 5.0 / g
        )


class TestModulatedClosedForm:
    def test_normalization_identity(self):
        spec = AiryBeamSpec.normalized(K0 / 18.0, 0.01)
        assert airy_energy_modulated_closed(spec) == pytest.approx(1.0, rel=1e-12)

    def test_against_quadrature(self):
        spec = AiryBeamSpec(gamma_a=K0 / 9.0, alpha_a=0.1)
        closed = airy_energy_modulated_closed(spec)
        ap = make_airy_aperture(spec, -6.0 / 0.1, 30.0, dx=1.0 / 32.0)
        assert aperture_energy(ap) == pytest.approx(closed, rel=1e-4)

    def test_amplitude_scaling(self):
        base = AiryBeamSpec(gamma_a=K0 / 9.0, alpha_a=0.1, amplitude=1.0)
        doubled = AiryBeamSpec(gamma_a=K0 / 9.0, alpha_a=0.1, amplitude=2.0)
        assert airy_energy_modulated_closed(doubled) == pytest.approx(
            4.0 * airy_energy_modulated_closed(base), rel=1e-12
        )

    def test_rejects_zero_apodization(self):
        with pytest.raises(DomainError):
            airy_energy_modulated_closed(AiryBeamSpec(gamma_a=1.0, alpha_a=0.0))

    @pytest.mark.parametrize(
        "alpha,gamma", [(0.005, K0 / 30.0), (0.5, K0 / 3.0), (0.05, K0 / 10.0)]
    )
    def test_closed_vs_quadrature_across_range(self, alpha, gamma):
        # window [-6/alpha, +6/alpha]; sampling tightened to resolve the
        # fastest |Ai|^2 lobes at the left edge
        spec = AiryBeamSpec(gamma_a=gamma, alpha_a=alpha)
        lo = -6.0 / alpha
        hi = min(6.0 / alpha, 1e4)
        rate = gamma**1.5 * np.sqrt(-lo)
        dx = min(1.0 / 16.0, np.pi / (8.0 * rate))
        ap = make_airy_aperture(spec, lo, hi, dx=dx)
        assert aperture_energy(ap) == pytest.approx(
            airy_energy_modulated_closed(spec), rel=1e-3
        )


class TestApodizationAsSoftTruncation:
    def test_envelope_decay_landmarks(self):
        alpha = 0.07
        spec = AiryBeamSpec(gamma_a=K0 / 12.0, alpha_a=alpha)
        # the envelope factor exp(alpha*xi) alone carries the decay
        assert np.exp(alpha * (-1.0 / alpha)) == pytest.approx(0.368, abs=1e-3)
        assert np.exp(alpha * (-3.0 / alpha)) == pytest.approx(0.0498, abs=1e-4)
        ap = make_airy_aperture(spec, -4.0 / alpha, 5.0, dx=1.0 / 16.0)
        bare = make_airy_aperture(
            AiryBeamSpec(gamma_a=K0 / 12.0), -4.0 / alpha, 5.0, dx=1.0 / 16.0
        )
        ratio = np.abs(ap.samples) / np.maximum(np.abs(bare.samples), 1e-300)
        i = np.argmin(np.abs(ap.x + 1.0 / alpha))
        # nearest grid node to xi = -1/alpha; envelope there is exp(alpha*x_i)
        assert ratio[i] == pytest.approx(np.exp(alpha * ap.x[i]), rel=1e-9)
        assert ratio[i] == pytest.approx(np.exp(-1.0), rel=5e-3)
