"""Unit conversion boundary.

Every conversion between user-facing units (km/h, kW, kWh, rpm) and the
internal SI system lives here and only here. No other module in the
package is allowed to multiply by these factors; a test greps the source
tree to enforce that.
"""

import math

MPS_PER_KMH = 1.0 / 3.6
W_PER_KW = 1000.0
WH_PER_KWH = 1000.0
M_PER_KM = 1000.0
MS_PER_S = 1000.0
RADPS_PER_RPM = 2.0 * math.pi / 60.0


def kmh_to_mps(value: float) -> float:
    return value * MPS_PER_KMH


def mps_to_kmh(value: float) -> float:
    return value / MPS_PER_KMH


def kw_to_w(value: float) -> float:
    return value * W_PER_KW


def w_to_kw(value: float) -> float:
    return value / W_PER_KW


def rpm_to_radps(value: float) -> float:
    return value * RADPS_PER_RPM


def kwh_to_ah(value_kwh: float, v_nom_v: float) -> float:
    """Battery capacity from energy rating at nominal voltage."""
    return value_kwh * WH_PER_KWH / v_nom_v


def m_to_km(value: float) -> float:
    return value / M_PER_KM


def wh_to_kwh(value: float) -> float:
    return value / WH_PER_KWH
