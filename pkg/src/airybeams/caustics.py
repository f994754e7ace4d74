"""Ray families, caustic envelopes, and diffraction-resisting range metrics.

An aperture phase profile Phi(.) launches a ray from each transverse
point xi; the envelope of that ray family is the caustic, which carries
the beam's intensity maximum.  Solvers are provided for the paraxial
system (with spatial scaling gamma_a and tilt nu_a applied externally,
so Phi itself is evaluated at gamma_a*xi) and for the nonparaxial
system (profile already complete).  The inverse problem, recovering the
aperture phase that traces a prescribed convex trajectory, is solved by
tangency root-finding plus numerical integration of the phase gradient.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import optimize

from .aperture import AiryBeamSpec
from .errors import CausticError, DomainError
from .specfun import airy_ai
from .units import K0, LAMBDA0

#: finite-difference step for derivative fallbacks, wavelengths
FD_STEP = 1e-4

#: residual bound every caustic point must satisfy
CAUSTIC_RESIDUAL_TOL = 1e-8


def _fd1(f, v, h=FD_STEP):
    # centered first derivative with one Richardson refinement
    d1 = (f(v + h) - f(v - h)) / (2.0 * h)
    d2 = (f(v + h / 2) - f(v - h / 2)) / h
    return (4.0 * d2 - d1) / 3.0


@dataclass(frozen=True)
class PhaseProfile:
    """Aperture phase Phi and its derivatives on [xi_min, xi_max].

    Derivatives not supplied analytically fall back to centered finite
    differences of the next-lower derivative (Richardson-refined).
    """

    phi: Callable[[float], float]
    dphi: Optional[Callable] = None
    d2phi: Optional[Callable] = None
    d3phi: Optional[Callable] = None
    xi_min: float = -np.inf
    xi_max: float = np.inf
    fd_step: float = FD_STEP

    def d1(self, v):
        if self.dphi is not None:
            return self.dphi(v)
        return _fd1(self.phi, v, self.fd_step)

    def d2(self, v):
        if self.d2phi is not None:
            return self.d2phi(v)
        return _fd1(self.d1, v, self.fd_step)

    def d3(self, v):
        if self.d3phi is not None:
            return self.d3phi(v)
        return _fd1(self.d2, v, self.fd_step)


def airy_phase_profile(xi_max=-1e-6, xi_min=-np.inf) -> PhaseProfile:
    """Phase of the caustic-forming Airy component, Phi(v) = pi/4 - (2/3)(-v)^(3/2).

    Valid for v < 0 (the oscillatory side); derivatives are analytic:
    Phi' = sqrt(-v), Phi'' = -1/(2 sqrt(-v)), Phi''' = -(1/4)(-v)^(-3/2).
    """
    return PhaseProfile(
        phi=lambda v: np.pi / 4.0 - (2.0 / 3.0) * (-v) ** 1.5,
        dphi=lambda v: np.sqrt(-v),
        d2phi=lambda v: -0.5 / np.sqrt(-v),
        d3phi=lambda v: -0.25 * (-v) ** -1.5,
        xi_min=xi_min,
        xi_max=xi_max,
    )


@dataclass(frozen=True)
class CausticCurve:
    """Envelope points (z_c, x_c, xi_c), z_c strictly increasing."""

    z: np.ndarray
    x: np.ndarray
    xi: np.ndarray
    residual: np.ndarray = field(default=None)

    def x_at(self, z):
        zq = np.asarray(z, dtype=float)
        if np.any(zq < self.z[0]) or np.any(zq > self.z[-1]):
            raise CausticError("z outside the computed caustic range")
        return np.interp(zq, self.z, self.x)


@dataclass(frozen=True)
class RangeReport:
    """Diffraction-resisting / corner / Fraunhofer distances (wavelengths)."""

    z_max: float
    z_corner: float
    z_fraunhofer: float
    z_fraunhofer_apodized: float


def ray_at(profile: PhaseProfile, xi, z, gamma_a=1.0, nu_a=0.0):
    """Transverse position of the paraxial ray from xi after distance z.

    x = xi + z * (gamma_a * Phi'(gamma_a*xi) + nu_a) / k0
    """
    xi = np.asarray(xi, dtype=float)
    return xi + np.asarray(z, dtype=float) * (
        gamma_a * profile.d1(gamma_a * xi) + nu_a
    ) / K0


def _scan_brackets(fun, lo, hi, n=400):
    """Sign-change brackets of fun on [lo, hi] from a uniform scan."""
    v = np.linspace(lo, hi, n)
    with np.errstate(all="ignore"):
        f = np.array([fun(t) for t in v], dtype=float)
    ok = np.isfinite(f)
    out = []
    for i in range(len(v) - 1):
        if ok[i] and ok[i + 1] and f[i] * f[i + 1] < 0:
            out.append((v[i], v[i + 1]))
    return out


def _finite_scan_domain(profile, fallback=(-1e4, -1e-9)):
    lo = profile.xi_min if np.isfinite(profile.xi_min) else fallback[0]
    hi = profile.xi_max if np.isfinite(profile.xi_max) else fallback[1]
    if lo >= hi:
        raise DomainError("empty phase-profile domain")
    return lo, hi


def caustic_paraxial(profile: PhaseProfile, gamma_a, nu_a, z_values) -> CausticCurve:
    """Solve the paraxial envelope system for each requested z_c.

    System (per z_c, unknown xi):
        x_c = xi + z_c * (gamma_a * Phi'(gamma_a*xi) + nu_a) / k0
        0   = 1 + z_c * gamma_a^2 * Phi''(gamma_a*xi) / k0
    A caustic requires Phi'' < 0 somewhere on the domain.
    """
    z_values = np.atleast_1d(np.asarray(z_values, dtype=float))
    if np.any(z_values <= 0) or not np.all(np.diff(z_values) > 0):
        raise DomainError("z values must be positive and strictly increasing")
    lo, hi = _finite_scan_domain(profile)

    zs, xs, xis, res = [], [], [], []
    missing = 0
    for zc in z_values:
        def g2(xi):
            return 1.0 + zc * gamma_a**2 * profile.d2(gamma_a * xi) / K0

        brackets = _scan_brackets(g2, lo, hi)
        if not brackets:
            missing += 1
            continue
        xi_c = optimize.brentq(g2, *brackets[0], xtol=1e-14, rtol=1e-15)
        x_c = float(ray_at(profile, xi_c, zc, gamma_a, nu_a))
        r = abs(g2(xi_c))
        zs.append(zc)
        xs.append(x_c)
        xis.append(xi_c)
        res.append(r)
    if not zs:
        raise CausticError(
            "no caustic: Phi'' never satisfies 1 + z*g^2*Phi''/k0 = 0 on the domain"
        )
    return CausticCurve(
        z=np.array(zs), x=np.array(xs), xi=np.array(xis), residual=np.array(res)
    )


def caustic_nonparaxial(profile: PhaseProfile, z_values) -> CausticCurve:
    """Solve the nonparaxial envelope system for each requested z_c.

    System (per z_c, unknown xi), with s = Phi'(xi):
        x_c = xi + z_c * s / sqrt(k0^2 - s^2)
        0   = 1 + z_c * k0^2 * Phi''(xi) / (k0^2 - s^2)^(3/2)
    Requires |Phi'| < k0 on the domain (ray slopes must stay real).
    """
    z_values = np.atleast_1d(np.asarray(z_values, dtype=float))
    if np.any(z_values <= 0) or not np.all(np.diff(z_values) > 0):
        raise DomainError("z values must be positive and strictly increasing")
    lo, hi = _finite_scan_domain(profile)

    probe = np.linspace(lo, hi, 200)
    with np.errstate(all="ignore"):
        slopes = np.array([profile.d1(v) for v in probe], dtype=float)
    fin = np.isfinite(slopes)
    if fin.any() and np.any(np.abs(slopes[fin]) >= K0):
        raise CausticError("|Phi'| >= k0 on part of the aperture (unphysical ray slope)")

    zs, xs, xis, res = [], [], [], []
    for zc in z_values:
        def g2(xi):
            s = profile.d1(xi)
            den = (K0**2 - s**2) ** 1.5
            return 1.0 + zc * K0**2 * profile.d2(xi) / den

        brackets = _scan_brackets(g2, lo, hi)
        if not brackets:
            continue
        # steep-slope profiles can expose a second envelope branch deep
        # in the tail; keep the near-axis fold (largest xi root)
        xi_c = optimize.brentq(g2, *brackets[-1], xtol=1e-14, rtol=1e-15)
        s = profile.d1(xi_c)
        x_c = xi_c + zc * s / np.sqrt(K0**2 - s**2)
        zs.append(zc)
        xs.append(float(x_c))
        xis.append(xi_c)
        res.append(abs(g2(xi_c)))
    if not zs:
        raise CausticError("no caustic: the nonparaxial envelope condition has no root")
    return CausticCurve(
        z=np.array(zs), x=np.array(xs), xi=np.array(xis), residual=np.array(res)
    )


def phase_for_trajectory(g, dg, xi_values, z_range) -> PhaseProfile:
    """Aperture phase whose rays are tangent to the convex curve x = g(z).

    For each xi the tangency condition g(z) = xi + z*dg(z) is solved for
    z on z_range, then Phi'(xi) = k0 * dg(z) / sqrt(1 + dg(z)^2).  The
    phase itself is integrated numerically with anchor Phi(0) = 0.
    """
    xi_values = np.asarray(xi_values, dtype=float)
    if len(xi_values) < 4 or not np.all(np.diff(xi_values) > 0):
        raise DomainError("xi_values must be increasing with at least 4 points")
    z_lo, z_hi = z_range
    if not 0 <= z_lo < z_hi:
        raise DomainError("need 0 <= z_lo < z_hi")

    z_probe = np.linspace(max(z_lo, 1e-9), z_hi, 600)
    dg_probe = np.asarray([dg(z) for z in z_probe], dtype=float)
    steering_only = np.ptp(dg_probe) < 1e-12 * max(1.0, np.max(np.abs(dg_probe)))

    def tangency(xi):
        def h(z):
            return g(z) - z * dg(z) - xi

        brackets = _scan_brackets(h, max(z_lo, 1e-9), z_hi, n=600)
        if not brackets:
            raise CausticError(
                f"tangency not found: no ray from xi={xi:g} touches the curve in z_range"
            )
        return optimize.brentq(h, *brackets[0], xtol=1e-13)

    slopes = np.empty_like(xi_values)
    for i, xi in enumerate(xi_values):
        # a straight trajectory has no unique tangency: every ray shares
        # its slope, so the phase gradient is the same constant for all xi
        s = dg_probe[0] if steering_only else dg(tangency(xi))
        slopes[i] = K0 * s / np.sqrt(1.0 + s * s)

    from scipy.interpolate import CubicSpline

    slope_spline = CubicSpline(xi_values, slopes)
    phi_spline = slope_spline.antiderivative()
    anchor_point = float(np.clip(0.0, xi_values[0], xi_values[-1]))
    anchor = phi_spline(anchor_point)
    d2_spline = slope_spline.derivative()
    d3_spline = d2_spline.derivative()

    return PhaseProfile(
        phi=lambda v: phi_spline(v) - anchor,
        dphi=slope_spline,
        d2phi=d2_spline,
        d3phi=d3_spline,
        xi_min=float(xi_values[0]), xi_max=float(xi_values[-1]),
        fd_step=max(FD_STEP, 2.0 * float(np.max(np.diff(xi_values)))),
    )


def trajectory_curvature(g, dg, d2g, z):
    """Local curvature |g''| / (1 + g'^2)^(3/2) of the trajectory x = g(z)."""
    z = np.asarray(z, dtype=float)
    return np.abs(d2g(z)) / (1.0 + dg(z) ** 2) ** 1.5


def field_near_caustic_sp(
    profile: PhaseProfile, amplitude, point, x, gamma_a=1.0, nu_a=0.0
):
    """Stationary-phase (fold) approximation of the field near a caustic point.

    ``point`` is a (z_c, x_c, xi_c) triple from a caustic solver and
    ``amplitude`` the aperture magnitude A_a(xi).  The local field is an
    Airy profile in (x - x_c) scaled by the second and third derivatives
    of the total phase at xi_c; it breaks down when the third derivative
    vanishes (fold degenerates).
    """
    z_c, x_c, xi_c = point
    x = np.asarray(x, dtype=float)

    # total aperture phase (scaling and tilt included) and its derivatives
    v = gamma_a * xi_c
    p1 = gamma_a * profile.d1(v) + nu_a
    p2 = gamma_a**2 * profile.d2(v)
    p3 = gamma_a**3 * profile.d3(v)
    if abs(p3) < 1e-12:
        raise CausticError("degenerate caustic: third phase derivative vanishes")
    if p2 >= 0:
        raise CausticError("not a forward caustic point: Phi'' must be negative")

    a_c = amplitude(xi_c) if callable(amplitude) else float(amplitude)
    phi_c = profile.phi(v) + nu_a * xi_c
    q_c = phi_c + K0 * (x_c - xi_c) ** 2 / (2.0 * z_c)
    omega = (K0 / z_c) * (x - x_c) * (x_c - xi_c + 0.5 * (x - x_c))
    scale = np.cbrt(p3 / 2.0)  # signed real cube root
    return (
        np.sqrt(2.0 * np.pi)
        * np.exp(-3j * np.pi / 4.0)
        * np.exp(-1j * K0 * z_c)
        * np.exp(-1j * q_c)
        * np.exp(-1j * omega)
        * (a_c * np.sqrt(-p2) / scale)
        * airy_ai(p2 * (x - x_c) / scale + 0j)
    )


def caustic_intensity_modulated(spec: AiryBeamSpec, z_c):
    """Closed-form intensity of the apodized Airy beam along its caustic.

    I(z_c) = U_a^2 * |Ai(-j z_c g a / k0)|^2 * exp(-z_c^2 g^3 a / (2 k0^2))
    """
    z_c = np.asarray(z_c, dtype=float)
    if np.any(z_c < 0):
        raise DomainError("z_c must be nonnegative")
    g, a = spec.gamma_a, spec.alpha_a
    ai = airy_ai(-1j * z_c * g * a / K0)
    return spec.amplitude**2 * np.abs(ai) ** 2 * np.exp(-(z_c**2) * g**3 * a / (2.0 * K0**2))


def airy_caustic_x(spec: AiryBeamSpec, z):
    """Parabolic caustic x_c(z) = g^3 z^2/(4 k0^2) + nu z/k0 (sign-flipped if mirrored)."""
    z = np.asarray(z, dtype=float)
    x = spec.gamma_a**3 * z**2 / (4.0 * K0**2) + spec.nu_a * z / K0
    return -x if spec.mirror else x


def range_report(spec: AiryBeamSpec, x_eff=None, n=3) -> RangeReport:
    """Distance bounds for a (possibly truncated) apodized Airy beam.

    z_max      = sqrt(2 k0^2 x_eff / g^3)      (finite-aperture bound)
    z_corner   = sqrt(2 k0^2 / (g^3 alpha))    (apodization bound)
    z_F        = (pi/lambda0) x_eff^2          (hard-truncation Fraunhofer)
    z_F_apod   = pi n^2 / (lambda0 alpha^2)    (apodized Fraunhofer)
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    g, a = spec.gamma_a, spec.alpha_a
    if x_eff is None or np.isinf(x_eff):
        z_max = np.inf
        z_f = np.inf
    else:
        if x_eff <= 0:
            raise DomainError("x_eff must be positive")
        z_max = float(np.sqrt(2.0 * K0**2 * x_eff / g**3))
        z_f = float(np.pi / LAMBDA0 * x_eff**2)
    z_corner = np.inf if a == 0 else float(np.sqrt(2.0 * K0**2 / (g**3 * a)))
    z_f_apod = np.inf if a == 0 else float(np.pi * n**2 / (LAMBDA0 * a**2))
    return RangeReport(
        z_max=z_max, z_corner=z_corner, z_fraunhofer=z_f, z_fraunhofer_apodized=z_f_apod
    )
