"""Three-wave well-balanced approximate Riemann solver.

Each interface carries two outer waves with speeds lam_L <= 0 <= lam_R and a
stationary contact at speed 0 associated with the topography jump. The star
discharges q* and r* come from the integral consistency relations combined
with the contact invariants; the star depths solve the linear depth relation
together with the Bernoulli relation across the contact.

All functions are vectorized over interfaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .closures import closure_factors
from .hyperbolicity import jacobian_coeffs, nickalls_bounds
from .state import ConservedState, PhysicalParams, recover_delta1

log = logging.getLogger(__name__)

_NEWTON_TOL = 1e-15
_NEWTON_MAX_ITER = 50


@dataclass(frozen=True)
class RiemannFan:
    """Interface wave speeds, star states and the two numerical fluxes."""

    lam_L: np.ndarray
    lam_R: np.ndarray
    q_star: np.ndarray
    r_star: np.ndarray
    h_L_star: np.ndarray
    h_R_star: np.ndarray
    F_left: tuple    # (h, q, r) components
    F_right: tuple
    fallback: np.ndarray  # bool mask of interfaces using the HLL fallback


def physical_flux(h, q, r, H, params: PhysicalParams):
    """F(W) = (h*u_e - delta_bar*r, h*u_e^2 + h^2/(2Fr^2), (1+1/H)*r*u_e)."""
    u_e = q / h
    F0 = q - params.delta_bar * r
    F1 = q * u_e + h**2 / (2.0 * params.froude**2)
    F2 = (1.0 + 1.0 / H) * r * u_e
    return F0, F1, F2


def source_averages(W_L: ConservedState, W_R: ConservedState, jump_fb, froude):
    """Vol'pert averages of the two non-conservative source terms."""
    topo_src = (W_L.h + W_R.h) / (2.0 * froude**2) * np.asarray(jump_fb, float)
    exchange_src = (W_L.q + W_R.q) / (W_L.h + W_R.h) * (W_R.r - W_L.r)
    return topo_src, exchange_src


def _star_depths(h_L, h_R, q_star, C, jump_fb, lam_L, lam_R, froude):
    """Solve the 2x2 star-depth system by Newton on h_R*.

    The linear consistency relation eliminates h_L*; the fallback mask marks
    interfaces where the Newton branch degenerates (non-convergence or a
    nonpositive depth), which then use equal HLL star depths.
    """
    fr2 = froude**2
    span = lam_R - lam_L
    h_hll = C / span
    fallback = np.zeros_like(h_L, dtype=bool)

    active = (jump_fb != 0.0) & (lam_L < 0.0) & (lam_R > 0.0)
    hR = h_hll.copy()
    hL = h_hll.copy()

    if np.any(active):
        idx = np.nonzero(active)[0]
        hr = h_hll[idx].copy()
        lamL = lam_L[idx]
        lamR = lam_R[idx]
        Ci = C[idx]
        qi = q_star[idx]
        jfb = jump_fb[idx]
        ok = np.ones(idx.size, dtype=bool)
        hl = (lamR * hr - Ci) / lamL
        for _ in range(_NEWTON_MAX_ITER):
            hl = (lamR * hr - Ci) / lamL
            bad = (hr <= 0.0) | (hl <= 0.0)
            ok &= ~bad
            hr_s = np.where(bad, 1.0, hr)
            hl_s = np.where(bad, 1.0, hl)
            g = (qi**2 / 2.0 * (1.0 / hr_s**2 - 1.0 / hl_s**2)
                 + (hr_s - hl_s + jfb) / fr2)
            dhl = lamR / lamL
            dg = (qi**2 / 2.0 * (-2.0 / hr_s**3 + 2.0 * dhl / hl_s**3)
                  + (1.0 - dhl) / fr2)
            small = np.abs(dg) < 1e-8
            if np.any(small & ok):
                log.debug("near-critical star-depth solve at %d interfaces",
                          int(np.count_nonzero(small & ok)))
            step = np.where(np.abs(dg) > 1e-300, g / np.where(dg == 0, 1.0, dg),
                            0.0)
            hr = hr - np.where(ok, step, 0.0)
            if not np.any(ok) or np.all(
                    np.abs(step[ok]) <= _NEWTON_TOL * np.maximum(1.0, hr[ok])):
                break
        hl = (lamR * hr - Ci) / lamL
        ok &= (hr > 0.0) & (hl > 0.0)
        hR[idx] = np.where(ok, hr, h_hll[idx])
        hL[idx] = np.where(ok, hl, h_hll[idx])
        fb_mask = np.zeros(idx.size, dtype=bool)
        fb_mask[~ok] = True
        fallback[idx] = fb_mask

    # degenerate outer speeds: zero-width star region on that side
    left_degenerate = lam_L >= 0.0
    right_degenerate = lam_R <= 0.0
    hL = np.where(left_degenerate, h_L, hL)
    hR = np.where(right_degenerate, h_R, hR)
    # with one side degenerate the linear relation fixes the other depth
    one_sided_L = left_degenerate & ~right_degenerate & (jump_fb != 0.0)
    one_sided_R = right_degenerate & ~left_degenerate & (jump_fb != 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        hR = np.where(one_sided_L, (C + lam_L * h_L) / np.where(lam_R == 0, 1.0, lam_R), hR)
        hL = np.where(one_sided_R, (lam_R * h_R - C) / np.where(lam_L == 0, -1.0, lam_L), hL)
    return hL, hR, fallback


def solve_local_riemann(W_L: ConservedState, W_R: ConservedState, jump_fb,
                        params: PhysicalParams, dx,
                        dudx_L=0.0, dudx_R=0.0) -> RiemannFan:
    """Star states and left/right numerical fluxes at each interface.

    dudx_L/dudx_R are the frozen velocity-gradient samples of the two cells,
    feeding the per-side closure evaluation.
    """
    jump_fb = np.broadcast_to(np.asarray(jump_fb, float), W_L.h.shape).copy()
    fr = params.froude
    db = params.delta_bar

    u_L = W_L.q / W_L.h
    u_R = W_R.q / W_R.h
    d1_L = recover_delta1(W_L.q, W_L.r, W_L.h)
    d1_R = recover_delta1(W_R.q, W_R.r, W_R.h)
    lam1_L = d1_L**2 * np.asarray(dudx_L, float)
    lam1_R = d1_R**2 * np.asarray(dudx_R, float)
    H_L, _ = closure_factors(params.closure, lam1_L)
    H_R, _ = closure_factors(params.closure, lam1_R)

    _, b_L = jacobian_coeffs(u_L, W_L.r, lam1_L, H_L, params.closure)
    _, b_R = jacobian_coeffs(u_R, W_R.r, lam1_R, H_R, params.closure)
    lamL_L, lamR_L = nickalls_bounds(u_L, b_L, W_L.h, fr)
    lamL_R, lamR_R = nickalls_bounds(u_R, b_R, W_R.h, fr)
    lam_L = np.minimum(np.minimum(lamL_L, lamL_R), 0.0)
    lam_R = np.maximum(np.maximum(lamR_L, lamR_R), 0.0)
    span = lam_R - lam_L

    F_L = physical_flux(W_L.h, W_L.q, W_L.r, H_L, params)
    F_R = physical_flux(W_R.h, W_R.q, W_R.r, H_R, params)
    topo_src, exchange_src = source_averages(W_L, W_R, jump_fb, fr)

    r_star = (lam_R * W_R.r - lam_L * W_L.r - (F_R[2] - F_L[2])
              + exchange_src) / span
    q_star = (lam_R * W_R.q - lam_L * W_L.q - (F_R[1] - F_L[1])
              - topo_src + db * exchange_src) / span
    C = lam_R * W_R.h - lam_L * W_L.h - (F_R[0] - F_L[0])
    h_L_star, h_R_star, fallback = _star_depths(
        W_L.h, W_R.h, q_star, C, jump_fb, lam_L, lam_R, fr)

    FL0 = F_L[0] + lam_L * (h_L_star - W_L.h)
    FL1 = F_L[1] + lam_L * (q_star - W_L.q)
    FL2 = F_L[2] + lam_L * (r_star - W_L.r)
    FR0 = F_R[0] - lam_R * (W_R.h - h_R_star)
    FR1 = F_R[1] - lam_R * (W_R.q - q_star)
    FR2 = F_R[2] - lam_R * (W_R.r - r_star)

    return RiemannFan(lam_L=lam_L, lam_R=lam_R, q_star=q_star, r_star=r_star,
                      h_L_star=h_L_star, h_R_star=h_R_star,
                      F_left=(FL0, FL1, FL2), F_right=(FR0, FR1, FR2),
                      fallback=fallback)
