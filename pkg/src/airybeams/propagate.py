"""Field propagation from an aperture to (z, x) observation points.

Four routes are provided:

* Rayleigh-Sommerfeld quadrature (exact scalar kernel, Hankel H2_1),
* Huygens-Fresnel quadrature (paraxial quadratic-phase kernel),
* Fraunhofer far-field form (Fourier transform of the aperture),
* closed forms for the apodized Airy and the Gaussian beams.

Conventions: time dependence exp(+j*2*pi*f0*t), forward propagation
exp(-j*k0*z), principal branch for complex square roots.  Quadrature is
composite trapezoidal over the (band-limited) aperture samples.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .aperture import AiryBeamSpec, GaussianBeamSpec, SampledAperture
from .errors import DomainError, FarFieldError, ParaxialError, SamplingError
from .specfun import airy_ai, hankel2
from .units import K0, LAMBDA0

#: largest tolerated kernel phase advance per aperture sample, radians
MAX_PHASE_STEP = np.pi / 4.0

#: minimum propagation distance for the Rayleigh-Sommerfeld kernel
RS_MIN_Z = 2.0 * LAMBDA0


@dataclass(frozen=True)
class FieldGrid:
    """Complex field samples over a (z, x) rectangle; rows index z."""

    z: np.ndarray
    x: np.ndarray
    field: np.ndarray

    def __post_init__(self):
        if self.field.shape != (len(self.z), len(self.x)):
            raise DomainError("field shape must be (len(z), len(x))")
        if len(self.z) > 1 and not np.all(np.diff(self.z) > 0):
            raise DomainError("z values must be strictly increasing")
        if len(self.x) > 1 and not np.all(np.diff(self.x) > 0):
            raise DomainError("x values must be strictly increasing")

    def column(self, i):
        """Field row at z[i] as a 1-D array over x."""
        return self.field[i]


def intensity_grid(fg: FieldGrid) -> np.ndarray:
    """Elementwise |field|^2."""
    return np.abs(fg.field) ** 2


def _as_axis(v, name):
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    return v


def _check_kernel_sampling(dx, z, x, ap):
    """Reject aperture sampling that under-resolves the kernel oscillation.

    The physical kernel phase k0*rho advances at most k0*|x-xi|/rho per
    unit xi, which the worst offset/min-z pair bounds.  The same bound is
    applied to the paraxial kernel: its faster quadratic-phase
    oscillation beyond that rate occurs only where the kernel itself has
    left its validity region (and where stationary-phase cancellation
    suppresses the contribution).
    """
    off = max(abs(float(x.max()) - ap.x1), abs(float(x.min()) - ap.x2),
              abs(float(x.max()) - ap.x2), abs(float(x.min()) - ap.x1))
    zmin = float(z.min())
    rate = K0 * off / np.hypot(off, zmin)
    if rate > 0 and dx > MAX_PHASE_STEP / rate:
        raise SamplingError(
            f"aperture dx={dx:g} advances the kernel phase by more than "
            f"{MAX_PHASE_STEP:.3f} rad per sample (need dx <= {MAX_PHASE_STEP / rate:g})"
        )


def propagate_rs(ap: SampledAperture, z, x, check_sampling=True) -> FieldGrid:
    """Rayleigh-Sommerfeld quadrature: exact scalar-diffraction kernel.

    field(z, x) = (1/2j) * integral (k0*z/rho) * E_a(xi) * H2_1(k0*rho) dxi
    with rho = sqrt((x - xi)^2 + z^2).  Requires z >= 2 wavelengths so the
    Hankel argument stays in its smooth large-argument region.
    """
    z = _as_axis(z, "z")
    x = _as_axis(x, "x")
    if np.any(z < RS_MIN_Z):
        raise DomainError(f"Rayleigh-Sommerfeld propagation requires z >= {RS_MIN_Z:g}")
    if check_sampling:
        _check_kernel_sampling(ap.dx, z, x, ap)
    out = np.empty((len(z), len(x)), dtype=complex)
    for i, zi in enumerate(z):
        rho = np.sqrt((x[:, None] - ap.x[None, :]) ** 2 + zi**2)
        integrand = (K0 * zi / rho) * ap.samples[None, :] * hankel2(1, K0 * rho)
        out[i] = np.trapezoid(integrand, ap.x, axis=1) / 2j
    return FieldGrid(z=z, x=x, field=out)


def worst_paraxial_ratio(ap: SampledAperture, z, x) -> float:
    """max |x - xi| / z over the requested geometry."""
    z = _as_axis(z, "z")
    x = _as_axis(x, "x")
    off = max(abs(float(x.max()) - ap.x1), abs(float(x.min()) - ap.x2),
              abs(float(x.max()) - ap.x2), abs(float(x.min()) - ap.x1))
    return off / float(z.min())


def propagate_fresnel(
    ap: SampledAperture, z, x, check_sampling=True, strict_paraxial=False,
    paraxial_limit=0.2,
) -> FieldGrid:
    """Huygens-Fresnel quadrature with the quadratic-phase kernel.

    field(z, x) = sqrt(j/(lambda0*z)) * exp(-j*k0*z)
                  * integral E_a(xi) * exp(-j*k0*(x-xi)^2/(2z)) dxi

    The textbook validity condition |x - xi| << z can be enforced with
    ``strict_paraxial=True`` (raises ParaxialError above paraxial_limit);
    by default it is not enforced, because for caustic beams the kernel
    stays accurate wherever the integrand is not negligible even though
    remote aperture tails violate the pointwise bound.
    """
    z = _as_axis(z, "z")
    x = _as_axis(x, "x")
    if np.any(z <= 0):
        raise DomainError("Fresnel propagation requires z > 0")
    if strict_paraxial:
        ratio = worst_paraxial_ratio(ap, z, x)
        if ratio > paraxial_limit:
            raise ParaxialError(
                f"worst |x-xi|/z = {ratio:.3f} exceeds paraxial limit {paraxial_limit:g}"
            )
    if check_sampling:
        _check_kernel_sampling(ap.dx, z, x, ap)
    out = np.empty((len(z), len(x)), dtype=complex)
    for i, zi in enumerate(z):
        pref = np.sqrt(1j / (LAMBDA0 * zi)) * np.exp(-1j * K0 * zi)
        kern = np.exp(-1j * K0 * (x[:, None] - ap.x[None, :]) ** 2 / (2.0 * zi))
        out[i] = pref * np.trapezoid(ap.samples[None, :] * kern, ap.x, axis=1)
    return FieldGrid(z=z, x=x, field=out)


def fraunhofer_distance(ap: SampledAperture) -> float:
    """z_F = (pi/lambda0) * max(|x1|, |x2|)^2."""
    return np.pi / LAMBDA0 * max(abs(ap.x1), abs(ap.x2)) ** 2


def propagate_far_field(ap: SampledAperture, z, x) -> FieldGrid:
    """Fraunhofer form: Fourier transform of the aperture with phase prefactors.

    Valid for z >> z_F; raises FarFieldError below 1*z_F and warns
    between 1 and 10 z_F.
    """
    z = _as_axis(z, "z")
    x = _as_axis(x, "x")
    zf = fraunhofer_distance(ap)
    if np.any(z < zf):
        raise FarFieldError(f"z below the Fraunhofer distance {zf:g}")
    if np.any(z < 10.0 * zf):
        warnings.warn(
            f"far-field evaluation below 10*z_F = {10 * zf:g}; accuracy degrades",
            stacklevel=2,
        )
    out = np.empty((len(z), len(x)), dtype=complex)
    for i, zi in enumerate(z):
        pref = (
            np.sqrt(1j * K0 / (2.0 * np.pi * zi))
            * np.exp(-1j * K0 * zi)
            * np.exp(-1j * K0 * x**2 / (2.0 * zi))
        )
        kern = np.exp(1j * K0 * x[:, None] * ap.x[None, :] / zi)
        out[i] = pref * np.trapezoid(ap.samples[None, :] * kern, ap.x, axis=1)
    return FieldGrid(z=z, x=x, field=out)


def airy_envelope(spec: AiryBeamSpec, z, x, k0=K0):
    """Slow envelope u(z, x) of the apodized Airy beam (unbounded aperture).

    u(z,x) = U_a * Ai(g*x - z^2 g^4/(4 k^2) - z g nu/k - j z g alpha/k)
             * exp(alpha*(x - z^2 g^3/(2 k^2) - z nu/k)) * exp(-j*phi)
    phi    = nu*x + (z g^2/(2k)) * (g*x - z^2 g^4/(6 k^2) - z g nu/k
             + alpha^2/g^2 - nu^2/g^2)

    ``k0`` may be overridden for polychromatic components.  Broadcasts
    over z and x.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("envelope defined for z >= 0")
    x = np.asarray(x, dtype=float)
    if spec.mirror:
        # mirrored beam: reflect the transverse axis and the launch tilt
        flipped = AiryBeamSpec(
            gamma_a=spec.gamma_a, alpha_a=spec.alpha_a, nu_a=-spec.nu_a,
            amplitude=spec.amplitude, mirror=False,
        )
        return airy_envelope(flipped, z, -x, k0)
    g, a, nu = spec.gamma_a, spec.alpha_a, spec.nu_a
    arg = g * x - z**2 * g**4 / (4.0 * k0**2) - z * g * nu / k0 - 1j * z * g * a / k0
    env = np.exp(a * (x - z**2 * g**3 / (2.0 * k0**2) - z * nu / k0))
    phi = nu * x + (z * g**2 / (2.0 * k0)) * (
        g * x - z**2 * g**4 / (6.0 * k0**2) - z * g * nu / k0 + a**2 / g**2 - nu**2 / g**2
    )
    return airy_ai(arg) * spec.amplitude * env * np.exp(-1j * phi)


def airy_field_closed(spec: AiryBeamSpec, z, x):
    """Full closed-form Airy field E(z, x) = u(z, x) * exp(-j*k0*z)."""
    z = np.asarray(z, dtype=float)
    return airy_envelope(spec, z, x) * np.exp(-1j * K0 * z)


def airy_field_grid(spec: AiryBeamSpec, z, x) -> FieldGrid:
    z = _as_axis(z, "z")
    x = _as_axis(x, "x")
    return FieldGrid(z=z, x=x, field=airy_field_closed(spec, z[:, None], x[None, :]))


def rayleigh_range(spec: GaussianBeamSpec) -> float:
    """z0 = k0 * w_a^2 / 2."""
    return K0 * spec.waist**2 / 2.0


def gaussian_beam_radius(spec: GaussianBeamSpec, z):
    """w(z) = w_a * sqrt(1 + (z/z0)^2)."""
    z0 = rayleigh_range(spec)
    return spec.waist * np.sqrt(1.0 + (np.asarray(z, dtype=float) / z0) ** 2)


def gaussian_curvature_radius(spec: GaussianBeamSpec, z):
    """R(z) = z * (1 + (z0/z)^2); infinite at z = 0."""
    z = np.asarray(z, dtype=float)
    z0 = rayleigh_range(spec)
    with np.errstate(divide="ignore"):
        return np.where(z == 0.0, np.inf, z * (1.0 + (z0 / np.where(z == 0, 1, z)) ** 2))


def gaussian_envelope(spec: GaussianBeamSpec, z, x):
    """Slow envelope of the Gaussian beam, including the Gouy-type phase.

    The curvature term is evaluated through 1/R(z) = z/(z^2 + z0^2) so
    z = 0 (planar wavefront) is handled without special cases.  A nonzero
    spec.center shifts the whole solution transversely.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("envelope defined for z >= 0")
    x = np.asarray(x, dtype=float) - spec.center
    z0 = rayleigh_range(spec)
    wz = spec.waist * np.sqrt(1.0 + (z / z0) ** 2)
    xs = x - z * spec.mu_a / K0
    inv_r = z / (z**2 + z0**2)
    return (
        spec.amplitude
        * np.sqrt(spec.waist / wz)
        * np.exp(-(xs**2) / wz**2)
        * np.exp(-1j * (K0 / 2.0) * xs**2 * inv_r)
        * np.exp(-1j * (x - z * spec.mu_a / (2.0 * K0)) * spec.mu_a)
        * np.exp(0.5j * np.arctan(z / z0))
    )


def gaussian_field_closed(spec: GaussianBeamSpec, z, x):
    """Full closed-form Gaussian field E(z, x) = u(z, x) * exp(-j*k0*z)."""
    z = np.asarray(z, dtype=float)
    return gaussian_envelope(spec, z, x) * np.exp(-1j * K0 * z)


def gaussian_field_grid(spec: GaussianBeamSpec, z, x) -> FieldGrid:
    z = _as_axis(z, "z")
    x = _as_axis(x, "x")
    return FieldGrid(z=z, x=x, field=gaussian_field_closed(spec, z[:, None], x[None, :]))
