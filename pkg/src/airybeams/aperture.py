"""Aperture field construction and energy bookkeeping.

Beams are seeded by a complex field on the plane z = 0.  Two families
are supported: exponentially apodized (finite-energy) Airy profiles

    E_a(xi) = U_a * Ai(gamma_a * xi) * exp(alpha_a * xi) * exp(-j * nu_a * xi)

and tilted Gaussian profiles

    E_a(xi) = V_a * exp(-(xi - center)^2 / waist^2) * exp(-j * mu_a * xi).

All lengths are in wavelength units (see units.py).
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, SamplingError
from .specfun import airy_ai
from .units import K0

#: default transverse sample spacing, wavelengths
DEFAULT_DX = 1.0 / 16.0

#: minimum samples per local oscillation period of any phase factor
SAMPLES_PER_PERIOD = 8


def airy_unit_energy_amplitude(gamma_a, alpha_a):
    """Normalization U_a giving unit energy for the apodized Airy field."""
    if alpha_a <= 0:
        raise DomainError("unit-energy normalization requires alpha_a > 0")
    return (8.0 * np.pi * alpha_a * gamma_a) ** 0.25 * np.exp(
        -((alpha_a / gamma_a) ** 3) / 3.0
    )


def gaussian_unit_energy_amplitude(waist):
    """Normalization V_a giving unit energy for the Gaussian field."""
    if waist <= 0:
        raise DomainError("waist must be positive")
    return (2.0 / np.pi) ** 0.25 / np.sqrt(waist)


@dataclass(frozen=True)
class AiryBeamSpec:
    """Apodized Airy aperture parameters, wavelength-normalized.

    gamma_a:   spatial scaling (1/wavelength); strictly positive.  A
               mirror-reversed beam is expressed with ``mirror=True``
               rather than a negative gamma_a.
    alpha_a:   exponential apodization (1/wavelength), >= 0.
    nu_a:      launch-angle phase slope (1/wavelength).
    amplitude: peak scaling U_a (> 0).
    """

    gamma_a: float
    alpha_a: float = 0.0
    nu_a: float = 0.0
    amplitude: float = 1.0
    mirror: bool = False

    def __post_init__(self):
        if not np.isfinite([self.gamma_a, self.alpha_a, self.nu_a, self.amplitude]).all():
            raise DomainError("beam parameters must be finite")
        if self.gamma_a <= 0:
            raise DomainError("gamma_a must be positive (use mirror=True to flip)")
        if self.alpha_a < 0:
            raise DomainError("alpha_a must be nonnegative")
        if self.amplitude <= 0:
            raise DomainError("amplitude must be positive")

    @classmethod
    def normalized(cls, gamma_a, alpha_a, nu_a=0.0, mirror=False):
        """Spec with U_a chosen so the (unbounded) aperture energy is 1."""
        return cls(
            gamma_a=gamma_a,
            alpha_a=alpha_a,
            nu_a=nu_a,
            amplitude=airy_unit_energy_amplitude(gamma_a, alpha_a),
            mirror=mirror,
        )

    def mirrored(self):
        return replace(self, mirror=not self.mirror)


@dataclass(frozen=True)
class GaussianBeamSpec:
    """Tilted Gaussian aperture parameters, wavelength-normalized.

    waist:     1/e field radius w_a (> 0).
    mu_a:      launch-angle phase slope (1/wavelength).
    amplitude: peak value V_a (> 0).
    center:    transverse offset of the beam center (wavelengths); used
               by the obstructed-energy matching procedure.
    """

    waist: float
    mu_a: float = 0.0
    amplitude: float = 1.0
    center: float = 0.0

    def __post_init__(self):
        if not np.isfinite([self.waist, self.mu_a, self.amplitude, self.center]).all():
            raise DomainError("beam parameters must be finite")
        if self.waist <= 0:
            raise DomainError("waist must be positive")
        if self.amplitude <= 0:
            raise DomainError("amplitude must be positive")

    @classmethod
    def normalized(cls, waist, mu_a=0.0, center=0.0):
        return cls(
            waist=waist,
            mu_a=mu_a,
            amplitude=gaussian_unit_energy_amplitude(waist),
            center=center,
        )

    def shifted(self, center):
        return replace(self, center=center)


@dataclass(frozen=True)
class SampledAperture:
    """Complex aperture field samples on [x1, x2] with uniform spacing."""

    x1: float
    x2: float
    dx: float
    x: np.ndarray
    samples: np.ndarray

    def __post_init__(self):
        if self.x2 <= self.x1:
            raise DomainError("x2 must exceed x1")
        if len(self.x) != len(self.samples):
            raise DomainError("x/sample length mismatch")

    @property
    def n(self):
        return len(self.samples)

    def with_samples(self, samples):
        return replace(self, samples=np.asarray(samples, dtype=complex))


def _sample_grid(x1, x2, dx):
    if not (np.isfinite(x1) and np.isfinite(x2) and x1 < x2):
        raise DomainError("need finite x1 < x2")
    if dx <= 0:
        raise DomainError("dx must be positive")
    n = int(round((x2 - x1) / dx)) + 1
    if n < 2:
        raise DomainError("window shorter than one sample spacing")
    x = np.linspace(x1, x2, n)
    return x, (x2 - x1) / (n - 1)


def airy_phase_rate(spec: AiryBeamSpec, xi):
    """Largest local spatial phase rate (rad/wavelength) of the Airy field.

    The oscillatory tail of Ai(gamma_a*xi) has local rate
    gamma_a^(3/2) * sqrt(-xi); the tilt adds |nu_a|.
    """
    xi = np.asarray(xi, dtype=float)
    osc = spec.gamma_a ** 1.5 * np.sqrt(np.maximum(0.0, -xi))
    return float(np.max(osc) + abs(spec.nu_a))


def _require_resolved(max_rate, dx, what):
    # >= SAMPLES_PER_PERIOD samples per local period 2*pi/max_rate
    if max_rate > 0 and dx > 2.0 * np.pi / (SAMPLES_PER_PERIOD * max_rate):
        raise SamplingError(
            f"dx={dx:g} too coarse for {what}: need dx <= "
            f"{2.0 * np.pi / (SAMPLES_PER_PERIOD * max_rate):g}"
        )


def airy_aperture_field(spec: AiryBeamSpec, xi):
    """Evaluate the apodized Airy aperture field at transverse points xi."""
    xi = np.asarray(xi, dtype=float)
    s = -xi if spec.mirror else xi
    field = (
        spec.amplitude
        * airy_ai(spec.gamma_a * s + 0j)
        * np.exp(spec.alpha_a * s)
        * np.exp(-1j * spec.nu_a * xi)
    )
    return np.asarray(field, dtype=complex)


def gaussian_aperture_field(spec: GaussianBeamSpec, xi):
    """Evaluate the tilted Gaussian aperture field at transverse points xi."""
    xi = np.asarray(xi, dtype=float)
    return (
        spec.amplitude
        * np.exp(-((xi - spec.center) ** 2) / spec.waist**2)
        * np.exp(-1j * spec.mu_a * xi)
    ).astype(complex)


def make_airy_aperture(spec: AiryBeamSpec, x1, x2, dx=DEFAULT_DX):
    """Sample the Airy aperture field on [x1, x2]."""
    x, dx_eff = _sample_grid(x1, x2, dx)
    edge = max(abs(x1), abs(x2)) if spec.mirror else x1
    _require_resolved(airy_phase_rate(spec, edge), dx_eff, "the Airy aperture oscillation")
    return SampledAperture(x1=x1, x2=x2, dx=dx_eff, x=x, samples=airy_aperture_field(spec, x))


def make_gaussian_aperture(spec: GaussianBeamSpec, x1, x2, dx=DEFAULT_DX):
    """Sample the Gaussian aperture field on [x1, x2]."""
    x, dx_eff = _sample_grid(x1, x2, dx)
    _require_resolved(abs(spec.mu_a), dx_eff, "the Gaussian tilt phase")
    return SampledAperture(
        x1=x1, x2=x2, dx=dx_eff, x=x, samples=gaussian_aperture_field(spec, x)
    )


def aperture_energy(ap: SampledAperture) -> float:
    """Trapezoidal energy integral of |samples|^2 over the window."""
    return float(np.trapezoid(np.abs(ap.samples) ** 2, ap.x))


def airy_energy_truncated_closed(gamma_a, x_eff) -> float:
    """Transmitted energy of the bare Airy field on [-x_eff, 0].

    Closed form for alpha_a = 0, nu_a = 0, unit amplitude:
    (1/g) * [g*x_eff*Ai(-g*x_eff)^2 - Ai'(0)^2 + Ai'(-g*x_eff)^2].
    """
    if gamma_a <= 0:
        raise DomainError("gamma_a must be positive")
    if x_eff < 0:
        raise DomainError("x_eff must be nonnegative")
    from scipy.special import airy as _airy

    v = gamma_a * x_eff
    ai_m, aip_m, _, _ = _airy(-v)
    aip0 = _airy(0.0)[1]
    return float((v * ai_m**2 - aip0**2 + aip_m**2) / gamma_a)


def airy_energy_modulated_closed(spec: AiryBeamSpec) -> float:
    """Total energy of the apodized Airy field over the whole real line.

    U_a^2 / sqrt(8*pi*alpha_a*gamma_a) * exp((2/3)*(alpha_a/gamma_a)^3);
    diverges as alpha_a -> 0, so alpha_a must be positive.
    """
    if spec.alpha_a <= 0:
        raise DomainError("closed-form energy requires alpha_a > 0")
    r = spec.alpha_a / spec.gamma_a
    return float(
        spec.amplitude**2
        / np.sqrt(8.0 * np.pi * spec.alpha_a * spec.gamma_a)
        * np.exp(2.0 * r**3 / 3.0)
    )


def gaussian_energy_closed(spec: GaussianBeamSpec) -> float:
    """Total energy of the Gaussian field: sqrt(pi/2) * V_a^2 * w_a."""
    return float(np.sqrt(np.pi / 2.0) * spec.amplitude**2 * spec.waist)


# re-export for callers that build apertures from physical parameters
__all__ = [
    "DEFAULT_DX",
    "SAMPLES_PER_PERIOD",
    "AiryBeamSpec",
    "GaussianBeamSpec",
    "SampledAperture",
    "airy_unit_energy_amplitude",
    "gaussian_unit_energy_amplitude",
    "airy_aperture_field",
    "gaussian_aperture_field",
    "make_airy_aperture",
    "make_gaussian_aperture",
    "aperture_energy",
    "airy_energy_truncated_closed",
    "airy_energy_modulated_closed",
    "gaussian_energy_closed",
    "K0",
]
