"""Special functions used by the closed-form beam solutions.

Airy Ai of complex argument and second-kind Hankel functions (orders 0
and 1) are evaluated with scipy.special, which wraps the AMOS library in
double precision.  The helpers here add the domain validation this
package relies on and the classic approximation for the negative real
zeros of Ai.
"""

import numpy as np
from scipy import special

from .errors import DomainError

#: largest |z| accepted by the complex Airy evaluators; far beyond this
#: the result under/overflows double precision anyway.
AIRY_MAX_RADIUS = 1e4


def _validated_complex(z, max_radius):
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite argument")
    if np.any(np.abs(z) > max_radius):
        raise DomainError(f"|z| exceeds supported radius {max_radius:g}")
    return z


def airy_ai(z):
    """Airy function Ai(z) for real or complex z (scalar or array)."""
    z = _validated_complex(z, AIRY_MAX_RADIUS)
    out = special.airy(z)[0]
    return complex(out) if out.ndim == 0 else out


def airy_ai_prime(z):
    """Derivative dAi/dz for real or complex z (scalar or array)."""
    z = _validated_complex(z, AIRY_MAX_RADIUS)
    out = special.airy(z)[1]
    return complex(out) if out.ndim == 0 else out


def airy_zero_approx(n):
    """Approximate location of the n-th negative real zero of Ai.

    Uses the asymptotic formula -[(3*pi/2) * (n - 1/4)]**(2/3) for unit
    spatial scaling.  Accurate to ~0.8% at n=1 and rapidly better beyond.
    """
    n = int(n)
    if n < 1:
        raise DomainError("zero index n must be >= 1")
    return -((1.5 * np.pi * (n - 0.25)) ** (2.0 / 3.0))


def hankel2(order, u):
    """Second-kind Hankel function H2_order(u) = J - jY, order in {0, 1}.

    Defined here for positive real argument only (Y diverges at 0).
    """
    if order not in (0, 1):
        raise DomainError("only orders 0 and 1 are supported")
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise DomainError("non-finite argument")
    if np.any(u <= 0):
        raise DomainError("hankel2 requires u > 0")
    out = special.hankel2(order, u)
    return complex(out) if out.ndim == 0 else out
