"""Acquisition parameters and the squint/Doppler conversions.

Angles are radians everywhere inside the package; degrees appear only at CLI
and file boundaries.  A squint angle theta_sq maps to Doppler frequency via

    f_d = (2V / lambda) * sin(theta_sq)

which every other module builds on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DopplerRangeError, ParameterError

# Vacuum speed of light [m/s].  Fixed, not configurable, so that derived
# golden values are reproducible bit for bit.
C = 299_792_458.0


@dataclass(frozen=True)
class RadarParams:
    """Immutable acquisition constants.

    f_c: carrier frequency [Hz]
    V: platform speed [m/s]
    B_a: azimuth (Doppler) bandwidth [Hz]
    B_r: range bandwidth [Hz]
    f_dc: Doppler centroid [Hz], 0 for broadside acquisitions
    """

    f_c: float
    V: float
    B_a: float
    B_r: float
    f_dc: float = 0.0

    @property
    def lam(self) -> float:
        """Wavelength [m], always derived as c / f_c."""
        return C / self.f_c

    @property
    def doppler_window(self) -> tuple[float, float]:
        """Observable Doppler interval [f_dc - B_a/2, f_dc + B_a/2] in Hz."""
        return (self.f_dc - self.B_a / 2, self.f_dc + self.B_a / 2)


def make_params(
    f_c: float,
    V: float,
    rho_a: float,
    rho_r: float,
    f_dc: float = 0.0,
) -> RadarParams:
    """Build RadarParams from carrier, speed, and spatial resolutions.

    Bandwidths follow the usual SAR resolution relations B_a = V / rho_a and
    B_r = c / (2 rho_r).  rho_a and rho_r are the azimuth and slant-range
    resolutions [m].
    """
    if f_c <= 0 or V <= 0 or rho_a <= 0 or rho_r <= 0:
        raise ParameterError(
            "f_c, V, rho_a, rho_r must all be positive, got "
            f"f_c={f_c}, V={V}, rho_a={rho_a}, rho_r={rho_r}"
        )
    B_a = V / rho_a
    lam = C / f_c
    # The window edges must stay inside the realizable Doppler span, else
    # squint_from_doppler is undefined there.
    if B_a >= 2 * V / lam:
        raise ParameterError(
            f"azimuth bandwidth {B_a} Hz reaches beyond the realizable "
            f"Doppler span 2V/lambda = {2 * V / lam} Hz (rho_a <= lambda/2)"
        )
    return RadarParams(f_c=f_c, V=V, B_a=B_a, B_r=C / (2 * rho_r), f_dc=f_dc)


def doppler_from_squint(p: RadarParams, theta_sq: float) -> float:
    """Doppler frequency [Hz] of the squint angle theta_sq [rad]."""
    if not abs(theta_sq) < math.pi / 2:
        raise ValueError(f"squint angle must satisfy |theta_sq| < 90 deg, got {theta_sq} rad")
    return 2 * p.V / p.lam * math.sin(theta_sq)


def squint_from_doppler(p: RadarParams, f_d: float) -> float:
    """Squint angle [rad] observing Doppler f_d; inverse of doppler_from_squint."""
    arg = p.lam * f_d / (2 * p.V)
    if abs(arg) > 1:
        raise DopplerRangeError(
            f"Doppler {f_d} Hz is not realizable at this geometry "
            f"(|lambda*f_d/(2V)| = {abs(arg)} > 1)"
        )
    return math.asin(arg)


def observable(p: RadarParams, f_d: float) -> bool:
    """True when f_d falls inside the captured Doppler window (edges inclusive)."""
    lo, hi = p.doppler_window
    return lo <= f_d <= hi
