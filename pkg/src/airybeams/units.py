"""Wavelength-normalized units.

All lengths in this package are expressed in units of the carrier
wavelength, so LAMBDA0 == 1 and the carrier wave number is K0 == 2*pi.
Physical inputs (e.g. a carrier frequency in GHz) are converted at the
CLI boundary only.
"""

import math

LAMBDA0 = 1.0
K0 = 2.0 * math.pi

#: speed of light in vacuum, m/s (used only for physical-unit conversion)
C_VACUUM = 299_792_458.0


def wavelength_m(carrier_ghz: float) -> float:
    """Carrier wavelength in meters for a carrier frequency in GHz."""
    if carrier_ghz <= 0:
        raise ValueError("carrier_ghz must be positive")
    return C_VACUUM / (carrier_ghz * 1e9)
