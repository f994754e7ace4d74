"""Near-field link budget along the caustic.

Received energy is the integral of |E|^2 over the receiving aperture,
normalized against a unit-energy transmit aperture, so path loss in dB
is simply -10*log10 of the received energy.  Both numeric-column and
closed-form routes are provided, plus the obstructed-energy bookkeeping
used by the Airy-vs-Gaussian comparisons.
"""

import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import optimize

from .aperture import (
    AiryBeamSpec,
    GaussianBeamSpec,
    SampledAperture,
    gaussian_aperture_field,
)
from .errors import DomainError, WindowError
from .specfun import airy_ai, airy_ai_prime
from .units import K0


@dataclass(frozen=True)
class ReceiverSpec:
    """Receiving aperture of transverse width dx_r.

    Placement is either on-caustic at a given z_c (window ends at the
    caustic, [x_c - dx_r, x_c]) or an explicit (z_r, x_r) position.
    """

    width: float
    z_c: Optional[float] = None
    position: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.width <= 0:
            raise DomainError("receiver width must be positive")
        if (self.z_c is None) == (self.position is None):
            raise DomainError("specify exactly one of z_c or position")


def received_energy(x, column, x_lo, x_hi) -> float:
    """Trapezoidal integral of |column|^2 over the window [x_lo, x_hi].

    ``column`` is a complex field sampled at transverse points ``x`` (one
    fixed z).  Window endpoints are interpolated so partial cells count.
    """
    x = np.asarray(x, dtype=float)
    column = np.asarray(column)
    if x_hi <= x_lo:
        raise WindowError("window must have positive width")
    if x_lo < x[0] or x_hi > x[-1]:
        raise WindowError(
            f"window [{x_lo:g}, {x_hi:g}] outside sampled range [{x[0]:g}, {x[-1]:g}]"
        )
    intens = np.abs(column) ** 2
    inside = (x > x_lo) & (x < x_hi)
    xs = np.concatenate(([x_lo], x[inside], [x_hi]))
    ys = np.concatenate((
        [np.interp(x_lo, x, intens)], intens[inside], [np.interp(x_hi, x, intens)],
    ))
    return float(np.trapezoid(ys, xs))


def received_energy_closed(spec: AiryBeamSpec, z_c, dx_r, n_nodes=400) -> float:
    """Received energy on the caustic-aligned window via the closed-form beam.

    E_r = U_a^2 * exp(-z^2 g^3 a/(2 k0^2))
          * integral_{-dx_r}^{0} |Ai(g v - j z g a/k0)|^2 e^{2 a v} dv
    (zero launch angle assumed; the exponential prefactor carries the
    dominant z dependence).
    """
    if spec.nu_a != 0.0:
        raise DomainError("closed-form received energy assumes nu_a = 0")
    if spec.alpha_a <= 0.0:
        raise DomainError("closed-form received energy requires alpha_a > 0")
    if dx_r <= 0:
        raise DomainError("receiver width must be positive")
    if z_c < 0:
        raise DomainError("z_c must be nonnegative")
    g, a = spec.gamma_a, spec.alpha_a
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    v = 0.5 * dx_r * (nodes - 1.0)  # map [-1,1] -> [-dx_r, 0]
    w = 0.5 * dx_r * weights
    integ = np.abs(airy_ai(g * v - 1j * z_c * g * a / K0)) ** 2 * np.exp(2.0 * a * v)
    return float(
        spec.amplitude**2
        * np.exp(-(z_c**2) * g**3 * a / (2.0 * K0**2))
        * np.sum(w * integ)
    )


def received_energy_qdl_approx(spec: AiryBeamSpec, dx_r) -> float:
    """Quasi-diffractionless plateau energy (first-order in alpha_a * dx_r).

    Closed form in Ai, Ai' at 0 and -g*dx_r; valid for alpha_a*dx_r << 1
    (warns above 0.05, rejected at 0.1).
    """
    if spec.nu_a != 0.0:
        raise DomainError("plateau approximation assumes nu_a = 0")
    if dx_r <= 0:
        raise DomainError("receiver width must be positive")
    prod = spec.alpha_a * dx_r
    if prod >= 0.1:
        raise DomainError(f"alpha_a*dx_r = {prod:g} outside the approximation domain (< 0.1)")
    if prod > 0.05:
        warnings.warn(
            f"alpha_a*dx_r = {prod:g} > 0.05: plateau approximation degrades", stacklevel=2
        )
    g, a = spec.gamma_a, spec.alpha_a
    gd = g * dx_r
    ai0 = 0.3550280538878172
    aip0 = -0.2588194037928068
    ai_m = airy_ai(-gd).real
    aip_m = airy_ai_prime(-gd).real
    ratio = a / g
    head = (2.0 / 3.0) * ratio * ai0 * aip0 - aip0**2
    tail = (
        gd * ai_m**2
        + aip_m**2
        - (2.0 / 3.0) * ratio * (ai_m * aip_m + gd * aip_m**2 + gd**2 * ai_m**2)
    )
    return float(spec.amplitude**2 / g * (head + tail))


def path_loss_db(energy_received) -> float:
    """Free-space path loss -10*log10(E_r) against unit transmit energy."""
    e = float(energy_received)
    if not (0.0 < e <= 1.0):
        raise DomainError("received energy must lie in (0, 1] for a unit-energy aperture")
    return -10.0 * np.log10(e)


def _interval_fraction(x, intensity, lo, hi) -> float:
    total = np.trapezoid(intensity, x)
    if total <= 0:
        raise DomainError("zero-energy field")
    a = max(lo, x[0])
    b = min(hi, x[-1])
    if b <= a:
        return 0.0
    inside = (x > a) & (x < b)
    xs = np.concatenate(([a], x[inside], [b]))
    ys = np.concatenate(
        ([np.interp(a, x, intensity)], intensity[inside], [np.interp(b, x, intensity)])
    )
    return float(np.trapezoid(ys, xs) / total)


def obstructed_energy_fraction(ap: SampledAperture, shadow) -> float:
    """Fraction of the aperture energy inside the shadow interval.

    ``shadow`` is (x_b1, x_b2); either bound may be infinite.  An empty
    intersection with the aperture window yields 0.
    """
    lo, hi = shadow
    if hi < lo:
        raise DomainError("shadow interval must be ordered")
    return _interval_fraction(ap.x, np.abs(ap.samples) ** 2, lo, hi)


def field_energy_fraction(x, column, shadow) -> float:
    """Fraction of a sampled field column's energy inside the shadow interval.

    Same bookkeeping as obstructed_energy_fraction but for a field
    sampled on an arbitrary plane (e.g. the obstacle plane).
    """
    lo, hi = shadow
    if hi < lo:
        raise DomainError("shadow interval must be ordered")
    return _interval_fraction(
        np.asarray(x, dtype=float), np.abs(np.asarray(column)) ** 2, shadow[0], shadow[1]
    )


def match_gaussian_center(
    fraction_of_center, target, bracket=(-13.0, 13.0), n_scan=521, branch="auto",
    aim=None, tol=1e-12,
):
    """Gaussian center offset whose obstructed-energy fraction hits ``target``.

    ``fraction_of_center`` maps a trial center to the blocked fraction;
    for a fixed shadow interval the map is monotone on each side of the
    shadow, so every sign change found by a uniform scan over ``bracket``
    is refined by Brent's method.  ``branch`` selects among multiple
    roots: 'lower'/'upper' take the smallest/largest center, 'auto'
    prefers the root closest to ``aim`` (or smallest |center| if no aim
    is given).
    """
    lo, hi = bracket
    cs = np.linspace(lo, hi, n_scan)
    vals = np.array([fraction_of_center(c) - target for c in cs])
    roots = []
    for i in range(len(cs) - 1):
        if vals[i] == 0.0:
            roots.append(cs[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(
                optimize.brentq(
                    lambda c: fraction_of_center(c) - target, cs[i], cs[i + 1], xtol=tol
                )
            )
    if not roots:
        raise DomainError("no center offset reaches the target fraction in the bracket")
    if branch == "lower":
        return min(roots)
    if branch == "upper":
        return max(roots)
    key = (lambda r: abs(r - aim)) if aim is not None else abs
    return min(roots, key=key)


def matched_gaussian_spec(
    gspec: GaussianBeamSpec, window, shadow, target, dx=1.0 / 16.0, branch="auto", aim=None
) -> GaussianBeamSpec:
    """Shifted copy of ``gspec`` whose aperture shadow fraction equals ``target``.

    The fraction is evaluated on the aperture window (x1, x2) with the
    aperture-plane definition of the obstructed energy.
    """
    x1, x2 = window
    n = int(round((x2 - x1) / dx)) + 1
    x = np.linspace(x1, x2, n)

    def frac(center):
        samples = gaussian_aperture_field(gspec.shifted(center), x)
        return _interval_fraction(x, np.abs(samples) ** 2, shadow[0], shadow[1])

    center = match_gaussian_center(frac, target, bracket=(x1, x2), branch=branch, aim=aim)
    return gspec.shifted(center)
