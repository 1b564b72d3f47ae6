"""Wave speeds and conditional hyperbolicity of the quasi-linear system.

The characteristic polynomial factors as P(lambda) = -P_SW(lambda) + d with

    P_SW(lambda) = (b - u_e - lambda)*((u_e - lambda)^2 - h/Fr^2),
    d = delta_bar*a/Fr^2,

where a, b are the partial derivatives of the viscous-layer flux
(1 + 1/H)*r*u_e with respect to u_e and r, taken with the velocity gradient
treated as a frozen external field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closures import (BlasiusConstant, ClosureLaw, FalknerSkanFit,
                       FixedProfile, Pohlhausen4)


@dataclass(frozen=True)
class WaveSpeeds:
    """Decoupled speeds, Nickalls bounds, cubic roots and hyperbolicity."""

    lam1_0: float
    lam2_0: float
    lam3_0: float
    lam_L: float
    lam_R: float
    roots: tuple
    hyperbolic: bool
    margin: float


def jacobian_coeffs(u_e, r, lambda1, H, law: ClosureLaw = FalknerSkanFit()):
    """Partial derivatives (a, b) of the flux (1 + 1/H)*r*u_e.

    With the Falkner-Skan fit on its exponential branch the chain rule
    through H(Lambda1) contributes the 0.74*Lambda1 terms; constant-H laws
    (and the saturated branch Lambda1 >= 0.6) lose them.
    """
    u_e = np.asarray(u_e, float)
    r = np.asarray(r, float)
    lambda1 = np.asarray(lambda1, float)
    H = np.asarray(H, float)
    if isinstance(law, FalknerSkanFit):
        active = lambda1 < 0.6
        a = r * (1.0 + np.where(active, 1.0 - 0.74 * lambda1, 1.0) / H)
        b = u_e * (1.0 + np.where(active, 1.0 + 0.74 * lambda1, 1.0) / H)
    elif isinstance(law, (BlasiusConstant, FixedProfile, Pohlhausen4)):
        # Pohlhausen4 treated as frozen-H for wave-speed estimates
        a = (1.0 + 1.0 / H) * r
        b = (1.0 + 1.0 / H) * u_e
    else:
        raise TypeError(f"unknown closure law: {law!r}")
    return a, b


def decoupled_speeds(h, u_e, b, froude):
    """(lam1_0, lam2_0, lam3_0): shallow-water pair and viscous-layer speed."""
    c = np.sqrt(np.asarray(h, float)) / froude
    return u_e - c, u_e + c, b - u_e


def nickalls_bounds(u_e, b, h, froude):
    """Closed-form interval containing all real characteristic roots."""
    u_e = np.asarray(u_e, float)
    b = np.asarray(b, float)
    radius = np.sqrt((2.0 * u_e - b) ** 2 + 3.0 * np.asarray(h, float) / froude**2)
    lam_L = (u_e + b - 2.0 * radius) / 3.0
    lam_R = (u_e + b + 2.0 * radius) / 3.0
    return lam_L, lam_R


def _p_sw(lam, u_e, b, c2):
    return (b - u_e - lam) * ((u_e - lam) ** 2 - c2)


def characteristic_roots(h, u_e, a, b, froude, delta_bar) -> WaveSpeeds:
    """Solve P_SW(lambda) = d for the full wave speeds of one state.

    Closed-form trigonometric solution polished by one Newton step per root.
    Non-hyperbolic states are flagged, not fatal; ``margin`` is the signed
    distance of d to the admissible interval (P_SW(lam-), P_SW(lam+)).
    """
    h = float(h)
    u_e = float(u_e)
    a = float(a)
    b = float(b)
    c2 = h / froude**2
    d = delta_bar * a / froude**2

    lam1_0, lam2_0, lam3_0 = decoupled_speeds(h, u_e, b, froude)
    lam_L, lam_R = nickalls_bounds(u_e, b, h, froude)

    # monic form: lambda^3 - p*lambda^2 + q*lambda - s + d = 0
    B = b - u_e
    p = B + 2.0 * u_e
    q = 2.0 * u_e * B + u_e**2 - c2
    s = B * (u_e**2 - c2)

    # critical points of P_SW; the radicand (B - u_e)^2 + 3*c2 is positive
    disc = math.sqrt((B - u_e) ** 2 + 3.0 * c2)
    lam_minus = (p - disc) / 3.0
    lam_plus = (p + disc) / 3.0
    p_min = _p_sw(lam_minus, u_e, b, c2)
    p_max = _p_sw(lam_plus, u_e, b, c2)
    margin = min(d - p_min, p_max - d)
    hyperbolic = p_min < d < p_max

    # depressed cubic t^3 + pt*t + qt with lambda = t + p/3
    shift = p / 3.0
    pt = q - p**2 / 3.0
    qt = -s + d + p * q / 3.0 - 2.0 * p**3 / 27.0
    roots = []
    if hyperbolic or margin >= 0.0:
        # three real roots (trigonometric form); pt < 0 here
        m = 2.0 * math.sqrt(max(-pt, 0.0) / 3.0)
        arg = 3.0 * qt / (pt * m) if pt != 0.0 and m != 0.0 else 0.0
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg) / 3.0
        for k in range(3):
            roots.append(m * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift)
    else:
        # single real root (Cardano)
        half_q = qt / 2.0
        delta = half_q**2 + (pt / 3.0) ** 3
        sq = math.sqrt(delta)
        u_c = math.copysign(abs(-half_q + sq) ** (1.0 / 3.0), -half_q + sq)
        v_c = math.copysign(abs(-half_q - sq) ** (1.0 / 3.0), -half_q - sq)
        roots.append(u_c + v_c + shift)

    # Newton polish on g = P_SW - d
    polished = []
    for lam in roots:
        for _ in range(3):
            g = _p_sw(lam, u_e, b, c2) - d
            dg = -((u_e - lam) ** 2 - c2) - 2.0 * (b - u_e - lam) * (u_e - lam)
            if dg == 0.0:
                break
            lam -= g / dg
        polished.append(lam)
    polished.sort()

    return WaveSpeeds(lam1_0=float(lam1_0), lam2_0=float(lam2_0),
                      lam3_0=float(lam3_0), lam_L=float(lam_L),
                      lam_R=float(lam_R), roots=tuple(polished),
                      hyperbolic=bool(hyperbolic), margin=float(margin))
