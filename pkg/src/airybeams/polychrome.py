"""Polychromatic pulsed Airy beams (Nyquist-sinc pulse).

Frequencies are expressed relative to the carrier, f_ratio = f/f0, so
the flat spectral window of the sinc pulse spans
[-bandwidth_ratio/2, +bandwidth_ratio/2] and the wave number of a
component is k(f) = k0 * (1 + f_ratio).  With the spectral amplitude
chosen as sqrt(B) * U_a the total (time x space) aperture energy of a
unit-energy beam stays one, and the zero-bandwidth limit of the
time-integrated intensity reduces to the monochromatic |u|^2.
"""

from dataclasses import dataclass

import numpy as np

from .aperture import AiryBeamSpec
from .errors import DomainError
from .propagate import airy_envelope
from .units import K0

DEFAULT_FREQ_NODES = 33


@dataclass(frozen=True)
class PulseSpec:
    """Nyquist-sinc pulse: flat spectrum of width B_a = bandwidth_ratio * f0."""

    bandwidth_ratio: float

    def __post_init__(self):
        if not (0.0 < self.bandwidth_ratio < 2.0):
            raise DomainError("bandwidth_ratio must lie in (0, 2) so k(f) stays positive")


def wavenumber_at(f_ratio):
    """k(f) = k0 * (1 + f/f0)."""
    f_ratio = np.asarray(f_ratio, dtype=float)
    if np.any(1.0 + f_ratio <= 0):
        raise DomainError("1 + f_ratio must be positive")
    return K0 * (1.0 + f_ratio)


def pulse_amplitude(spec: AiryBeamSpec, pulse: PulseSpec) -> float:
    """Spectral normalization: U_bar = sqrt(B) * U_a keeps total energy at 1."""
    return float(np.sqrt(pulse.bandwidth_ratio) * spec.amplitude)


def pulsed_airy_spectral_field(spec: AiryBeamSpec, pulse: PulseSpec, z, x, f_ratio):
    """Spectral field P(f) * u(z, x; f) * exp(-j k(f) z) of one component.

    The envelope u(.; f) is the monochromatic Airy envelope with k0
    replaced by k(f) and amplitude U_bar; P(f) = 1/B inside the band.
    """
    if abs(f_ratio) > pulse.bandwidth_ratio / 2.0:
        raise DomainError(
            f"f_ratio {f_ratio:g} outside the band +/-{pulse.bandwidth_ratio / 2:g}"
        )
    k = float(wavenumber_at(f_ratio))
    ubar = pulse_amplitude(spec, pulse)
    comp = AiryBeamSpec(
        gamma_a=spec.gamma_a, alpha_a=spec.alpha_a, nu_a=spec.nu_a,
        amplitude=ubar, mirror=spec.mirror,
    )
    z = np.asarray(z, dtype=float)
    return (1.0 / pulse.bandwidth_ratio) * airy_envelope(comp, z, x, k0=k) * np.exp(-1j * k * z)


def polychromatic_intensity(spec: AiryBeamSpec, pulse: PulseSpec, z, x,
                            n_nodes=DEFAULT_FREQ_NODES):
    """Time-integrated intensity of the pulsed beam at (z, x).

    Gauss-Legendre quadrature over the flat band of |u(z,x;f)|^2; the
    1/B^2 spectral weight and the sqrt(B) amplitude combine so the
    result approaches the monochromatic intensity as B -> 0.  Broadcasts
    over z and x.
    """
    if n_nodes < 1:
        raise DomainError("need at least one frequency node")
    b = pulse.bandwidth_ratio
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    f = 0.5 * b * nodes
    w = 0.5 * b * weights
    z = np.asarray(z, dtype=float)
    x = np.asarray(x, dtype=float)
    out = np.zeros(np.broadcast(z, x).shape, dtype=float)
    for fi, wi in zip(f, w):
        u = airy_envelope(spec, z, x, k0=float(wavenumber_at(fi)))
        out = out + wi * np.abs(u) ** 2
    return out / b
