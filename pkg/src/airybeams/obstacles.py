"""Obstructed (NLoS) propagation: knife edges and soft Gaussian screens.

A knife edge at z_b removes the field inside (x_b1, x_b2) at that plane;
the field beyond is recovered by quadrature over the complement.  A soft
screen multiplies the incident field by a smooth transmittance
1 - exp(-(x-mu)^2/(2 sigma^2)); for an apodized Airy beam the diffracted
field then splits into the unperturbed beam minus a closed-form
perturbation that decays with distance (the self-healing mechanism).
"""

from dataclasses import dataclass

import numpy as np

from .aperture import AiryBeamSpec, SampledAperture
from .caustics import CausticCurve
from .errors import DomainError, WindowError
from .propagate import FieldGrid, airy_envelope, propagate_fresnel, propagate_rs
from .units import K0, LAMBDA0


@dataclass(frozen=True)
class KnifeEdgeSpec:
    """Opaque strip (x_b1, x_b2) on the plane z = z_b; x_b2 may be +inf.

    z_b = 0 is allowed and blocks the strip directly on the aperture.
    """

    z_b: float
    x_b1: float
    x_b2: float = np.inf

    def __post_init__(self):
        if self.z_b < 0:
            raise DomainError("z_b must be nonnegative")
        # x_b1 == x_b2 is the degenerate zero-measure strip (transparent)
        if not self.x_b1 <= self.x_b2:
            raise DomainError("need x_b1 <= x_b2")


@dataclass(frozen=True)
class SoftObstacleSpec:
    """Gaussian absorption screen at z_b: center mu_obs, width sigma_obs."""

    z_b: float
    mu_obs: float
    sigma_obs: float

    def __post_init__(self):
        if self.z_b <= 0:
            raise DomainError("z_b must be positive")
        if self.sigma_obs <= 0:
            raise DomainError("sigma_obs must be positive")


def clearance_edge_position(caustic, z_b, clearance) -> float:
    """Lower-edge position x_b1 = g(z_b) + clearance.

    ``caustic`` is a CausticCurve (range-checked interpolation) or a
    callable g(z).
    """
    if isinstance(caustic, CausticCurve):
        g_zb = float(caustic.x_at(z_b))
    elif callable(caustic):
        g_zb = float(caustic(z_b))
    else:
        raise DomainError("caustic must be a CausticCurve or a callable")
    return g_zb + clearance


def knife_edge_mask(spec: KnifeEdgeSpec, x) -> np.ndarray:
    """1 outside the strip, 0 strictly inside (a zero-width strip blocks nothing)."""
    x = np.asarray(x, dtype=float)
    return np.where((x > spec.x_b1) & (x < spec.x_b2), 0.0, 1.0)


def knife_edge_field(
    column: SampledAperture, spec: KnifeEdgeSpec, z, x, method="rs"
) -> FieldGrid:
    """Propagate an incident column past the knife edge to points beyond it.

    ``column`` holds the incident field sampled on the obstacle plane
    (its coordinates bound the integration domain); ``z`` are absolute
    distances from the original aperture and must exceed z_b.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z <= spec.z_b):
        raise DomainError("observation plane must lie beyond the obstacle")
    masked = column.with_samples(column.samples * knife_edge_mask(spec, column.x))
    if method == "rs":
        fg = propagate_rs(masked, z - spec.z_b, x)
    elif method == "fresnel":
        fg = propagate_fresnel(masked, z - spec.z_b, x)
    else:
        raise DomainError("method must be 'rs' or 'fresnel'")
    return FieldGrid(z=z, x=fg.x, field=fg.field)


def two_stage_knife_field(
    ap: SampledAperture, spec: KnifeEdgeSpec, z, x,
    column_span=None, column_dx=None, method="rs",
) -> FieldGrid:
    """Aperture -> obstacle-plane column -> diffracted field beyond the edge.

    The intermediate column spans ``column_span`` (default: the aperture
    window padded by one obstacle distance on each side, a unit-slope
    escape cone).  With z_b = 0 the mask applies directly to the
    aperture samples (opaque strip on the aperture).
    """
    if spec.z_b == 0.0:
        masked = ap.with_samples(ap.samples * knife_edge_mask(spec, ap.x))
        return propagate_rs(masked, z, x) if method == "rs" else propagate_fresnel(masked, z, x)
    if column_span is None:
        pad = max(spec.z_b, 5.0 * LAMBDA0)
        column_span = (ap.x1 - pad, ap.x2 + pad)
    dxc = column_dx if column_dx is not None else ap.dx
    ncol = int(round((column_span[1] - column_span[0]) / dxc)) + 1
    xcol = np.linspace(column_span[0], column_span[1], ncol)
    col = propagate_rs(ap, np.array([spec.z_b]), xcol)
    column = SampledAperture(
        x1=column_span[0], x2=column_span[1], dx=(column_span[1] - column_span[0]) / (ncol - 1),
        x=xcol, samples=col.field[0],
    )
    return knife_edge_field(column, spec, z, x, method=method)


def soft_transmittance(spec: SoftObstacleSpec, x):
    """tau(x) = 1 - exp(-(x - mu)^2 / (2 sigma^2)) in [0, 1]."""
    x = np.asarray(x, dtype=float)
    return 1.0 - np.exp(-((x - spec.mu_obs) ** 2) / (2.0 * spec.sigma_obs**2))


def soft_perturbation_closed(spec: AiryBeamSpec, obs: SoftObstacleSpec, z, x):
    """Closed-form perturbation p(z, x) of an apodized Airy beam (z > z_b).

    p is built from the Gaussian-screen absorption of the incident
    closed-form beam: with dz = z - z_b,

        delta = -z_b^2 g^4/(4 k0^2) - z_b g nu/k0 - j z_b g alpha/k0
        U_b   = U_a * exp(-alpha(z_b^2 g^3/(2 k0^2) + z_b nu/k0))
                    * exp(-mu^2/(2 sigma^2)) * exp(+j phase(z_b))
        nu_b  = alpha + mu/sigma^2 - j(nu + z_b g^3/(2 k0) - k0 x/dz)
        eta   = -k0/(2 dz) + j/(2 sigma^2)

        p = U_b sqrt(j/(lambda0 dz)) e^{-j k0 x^2/(2 dz)} sqrt(j pi/eta)
            * Ai(delta - g^4/(16 eta^2) + j g nu_b/(2 eta))
            * e^{-g^3 nu_b/(8 eta^2)}
            * e^{+j (g^2/(4 eta)) (delta - g^4/(24 eta^2) + nu_b^2/g^2)}

    All square roots take the principal branch; the assembled form is
    algebraically identical to the single-radical expression but avoids
    branch ambiguity in the product of radicals.
    """
    if spec.mirror:
        raise DomainError("soft-obstacle closed form is defined for unmirrored beams")
    z = np.asarray(z, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(z <= obs.z_b):
        raise DomainError("perturbation defined beyond the obstacle plane only")
    g, a, nu = spec.gamma_a, spec.alpha_a, spec.nu_a
    zb, mu, sig = obs.z_b, obs.mu_obs, obs.sigma_obs
    dz = z - zb

    delta = -(zb**2) * g**4 / (4.0 * K0**2) - zb * g * nu / K0 - 1j * zb * g * a / K0
    nu_b = a + mu / sig**2 - 1j * (nu + zb * g**3 / (2.0 * K0) - K0 * x / dz)
    eta = -K0 / (2.0 * dz) + 1j / (2.0 * sig**2)

    # the separate exponential factors can individually over/underflow
    # (e.g. a remote screen: exp(-mu^2/2sig^2) -> 0 against a growing
    # Airy argument), so all scalar exponents are summed before a single
    # exponentiation, with the Airy factor in its scaled form
    w = delta - g**4 / (16.0 * eta**2) + 1j * g * nu_b / (2.0 * eta)
    zeta = (2.0 / 3.0) * w * np.sqrt(w)  # Ai(w) = airye(w) * exp(-zeta)
    exponent = (
        -a * (zb**2 * g**3 / (2.0 * K0**2) + zb * nu / K0)
        - mu**2 / (2.0 * sig**2)
        + 1j * (zb * g**2 / (2.0 * K0))
        * (zb**2 * g**4 / (6.0 * K0**2) + zb * g * nu / K0 - a**2 / g**2 + nu**2 / g**2)
        - 1j * K0 * x**2 / (2.0 * dz)
        - (g**3) * nu_b / (8.0 * eta**2)
        + 1j * (g**2 / (4.0 * eta)) * (delta - g**4 / (24.0 * eta**2) + nu_b**2 / g**2)
        - zeta
    )
    from scipy.special import airye

    ai_scaled = airye(w)[0]
    return (
        spec.amplitude
        * np.sqrt(1j / (LAMBDA0 * dz))
        * np.sqrt(1j * np.pi / eta)
        * ai_scaled
        * np.exp(exponent)
    )


def soft_diffracted_envelope(spec: AiryBeamSpec, obs: SoftObstacleSpec, z, x):
    """u_d(z, x) = u(z, x) - p(z, x) for z > z_b (slow envelopes)."""
    return airy_envelope(spec, z, x) - soft_perturbation_closed(spec, obs, z, x)


def soft_diffracted_field(spec: AiryBeamSpec, obs: SoftObstacleSpec, z, x):
    """Full diffracted field E_d = u_d * exp(-j k0 z)."""
    z = np.asarray(z, dtype=float)
    return soft_diffracted_envelope(spec, obs, z, x) * np.exp(-1j * K0 * z)


def similarity_index(u_d, u, x_c, z_c, epsilon=12.0, n_nodes=257) -> float:
    """Normalized correlation of two envelopes along z at fixed transverse x_c.

    rho = |int u_d u* dv| / (||u_d|| ||u||) over v in
    [z_c - eps/2, z_c + eps/2]; equals 1 iff the fields are proportional
    on the window.  ``u_d`` and ``u`` are callables (z_array, x) -> field.
    """
    if epsilon <= 0:
        raise DomainError("window width epsilon must be positive")
    v = np.linspace(z_c - epsilon / 2.0, z_c + epsilon / 2.0, n_nodes)
    fd = np.asarray(u_d(v, x_c))
    fu = np.asarray(u(v, x_c))
    den_d = np.trapezoid(np.abs(fd) ** 2, v)
    den_u = np.trapezoid(np.abs(fu) ** 2, v)
    if den_d <= 0 or den_u <= 0:
        raise WindowError("a field vanishes on the correlation window")
    num = np.abs(np.trapezoid(fd * np.conj(fu), v))
    return float(num / np.sqrt(den_d * den_u))
