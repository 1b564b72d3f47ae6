"""Time integration: splitting scheme, CFL control and boundary conditions.

Each step applies, in order: ghost-cell boundary conditions, velocity
gradient freeze, CFL time-step selection, the Godunov convection step and
the semi-implicit friction step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .closures import closure_factors, ue_gradient
from .errors import DryCell, NegativeDiscriminant
from .hyperbolicity import jacobian_coeffs, nickalls_bounds
from .riemann import solve_local_riemann
from .state import (ConservedState, Grid1D, H_DRY, PhysicalParams,
                    recover_delta1)

log = logging.getLogger(__name__)

N_GHOST = 2  # the order-4 gradient stencil needs two ghost cells per side


@dataclass(frozen=True)
class SubcriticalInflow:
    u_in: float


@dataclass(frozen=True)
class SupercriticalInflow:
    u_in: float
    h_in: float


@dataclass(frozen=True)
class FreeOutflow:
    pass


InflowSpec = Union[SubcriticalInflow, SupercriticalInflow]


@dataclass(frozen=True)
class BoundarySpec:
    left: InflowSpec
    right: FreeOutflow = field(default_factory=FreeOutflow)


@dataclass(frozen=True)
class RunState:
    """Time, step counter, interior states and accumulated diagnostics."""

    t: float
    step_count: int
    W: ConservedState
    diagnostics: dict = field(default_factory=dict)


def apply_boundaries(W: ConservedState, spec: BoundarySpec,
                     params: PhysicalParams) -> ConservedState:
    """Return the state extended by two ghost cells per side.

    Inflow imposes the edge velocity with a flat profile (delta1 = 0); the
    subcritical variant recovers the ghost depth from the outgoing classical
    shallow-water Riemann invariant. Outflow copies the last interior cell.
    """
    h1, q1 = W.h[0], W.q[0]
    u1 = q1 / h1
    left = spec.left
    if isinstance(left, SupercriticalInflow):
        h_g = left.h_in
        u_g = left.u_in
    elif isinstance(left, SubcriticalInflow):
        u_g = left.u_in
        # outgoing characteristic u - 2*sqrt(h)/Fr extrapolated from the
        # first interior cell fixes the ghost depth once u_in is imposed
        sqrt_hg = np.sqrt(h1) + params.froude * (left.u_in - u1) / 2.0
        if sqrt_hg <= 0.0:
            log.warning("inflow invariant produced nonpositive depth; clamping")
            h_g = H_DRY
        else:
            h_g = sqrt_hg**2
    else:
        raise TypeError(f"unsupported left boundary: {left!r}")
    ghost_left = (np.full(N_GHOST, h_g), np.full(N_GHOST, h_g * u_g),
                  np.zeros(N_GHOST))
    ghost_right = (np.full(N_GHOST, W.h[-1]), np.full(N_GHOST, W.q[-1]),
                   np.full(N_GHOST, W.r[-1]))
    return ConservedState(
        h=np.concatenate([ghost_left[0], W.h, ghost_right[0]]),
        q=np.concatenate([ghost_left[1], W.q, ghost_right[1]]),
        r=np.concatenate([ghost_left[2], W.r, ghost_right[2]]))


def extended_topo(grid: Grid1D) -> np.ndarray:
    """Topography with flat extension into the ghost cells."""
    return np.concatenate([np.full(N_GHOST, grid.topo[0]), grid.topo,
                           np.full(N_GHOST, grid.topo[-1])])


def frozen_gradient(W_ext: ConservedState, dx, order=4) -> np.ndarray:
    """Velocity gradient over the extended state, frozen for the step."""
    u_e = W_ext.q / W_ext.h
    return ue_gradient(u_e, dx, order=order)


def compute_dt(W_ext: ConservedState, params: PhysicalParams, dx,
               cfl_number=0.9, dudx=None, dt_max=np.inf) -> float:
    """CFL time step from the Nickalls bounds plus the reverse-flow cap."""
    if not 0.0 < cfl_number <= 1.0:
        raise ValueError("cfl_number must lie in (0, 1]")
    u_e = W_ext.q / W_ext.h
    delta1 = recover_delta1(W_ext.q, W_ext.r, W_ext.h)
    if dudx is None:
        dudx = np.zeros_like(u_e)
    lambda1 = delta1**2 * dudx
    H, f2 = closure_factors(params.closure, lambda1)
    _, b = jacobian_coeffs(u_e, W_ext.r, lambda1, H, params.closure)
    lam_L, lam_R = nickalls_bounds(u_e, b, W_ext.h, params.froude)
    lam_max = np.max(np.maximum(np.abs(lam_L), np.abs(lam_R)))
    if lam_max <= 0.0:
        dt = dt_max
    else:
        dt = cfl_number * dx / (2.0 * lam_max)
    f2H = f2 * H
    reverse = f2 < 0.0
    if np.any(reverse):
        cap = np.min(-delta1[reverse] ** 2 / (4.0 * f2H[reverse]))
        dt = min(dt, cap)
    dt = min(dt, dt_max)
    if not dt > 0.0:
        raise ValueError("nonpositive time step")
    return float(dt)


def convection_step(W_ext: ConservedState, topo_ext, params: PhysicalParams,
                    dx, dt, dudx=None):
    """One Godunov update of the interior cells of the extended state.

    Returns (interior ConservedState, interface RiemannFan).
    """
    n_ext = W_ext.h.size
    n = n_ext - 2 * N_GHOST
    if dudx is None:
        dudx = np.zeros(n_ext)
    sl = slice(N_GHOST - 1, n_ext - N_GHOST)      # left cells of interfaces
    sr = slice(N_GHOST, n_ext - N_GHOST + 1)      # right cells
    W_L = ConservedState(W_ext.h[sl], W_ext.q[sl], W_ext.r[sl])
    W_R = ConservedState(W_ext.h[sr], W_ext.q[sr], W_ext.r[sr])
    jump_fb = topo_ext[sr] - topo_ext[sl]
    fan = solve_local_riemann(W_L, W_R, jump_fb, params, dx,
                              dudx_L=dudx[sl], dudx_R=dudx[sr])
    # interfaces 0..n surround the n interior cells
    lam = dt / dx
    h_new = W_ext.h[N_GHOST:-N_GHOST] - lam * (fan.F_left[0][1:] - fan.F_right[0][:-1])
    q_new = W_ext.q[N_GHOST:-N_GHOST] - lam * (fan.F_left[1][1:] - fan.F_right[1][:-1])
    r_new = W_ext.r[N_GHOST:-N_GHOST] - lam * (fan.F_left[2][1:] - fan.F_right[2][:-1])
    if np.any(h_new <= H_DRY):
        raise DryCell("depth fell below the dry threshold during convection")
    return ConservedState(h=h_new, q=q_new, r=r_new), fan


def friction_step(W: ConservedState, dt, params: PhysicalParams,
                  f2H) -> ConservedState:
    """Semi-implicit friction update of delta1; h and u_e are unchanged.

    f2H is the per-cell product (f2*H) evaluated at the pre-convection state.
    """
    u_e = W.q / W.h
    delta1 = recover_delta1(W.q, W.r, W.h)
    disc = delta1**2 + 4.0 * np.asarray(f2H, float) * dt
    if np.any(disc < 0.0):
        raise NegativeDiscriminant("friction discriminant negative; "
                                   "time-step selection is broken")
    delta1_new = 0.5 * (delta1 + np.sqrt(disc))
    return ConservedState(h=W.h.copy(), q=W.q.copy(), r=delta1_new * u_e)


def step(run: RunState, grid: Grid1D, params: PhysicalParams,
         boundaries: BoundarySpec, cfl_number=0.9, gradient_order=4,
         dt_max=np.inf, dt_cap: Optional[float] = None):
    """Advance one full split step; returns the new RunState."""
    W_ext = apply_boundaries(run.W, boundaries, params)
    topo_ext = extended_topo(grid)
    dudx = frozen_gradient(W_ext, grid.dx, order=gradient_order)
    dt = compute_dt(W_ext, params, grid.dx, cfl_number=cfl_number,
                    dudx=dudx, dt_max=dt_max)
    if dt_cap is not None:
        dt = min(dt, dt_cap)

    delta1_ext = recover_delta1(W_ext.q, W_ext.r, W_ext.h)
    lambda1 = delta1_ext**2 * dudx
    H, f2 = closure_factors(params.closure, lambda1)
    interior = slice(N_GHOST, -N_GHOST)

    W_half, fan = convection_step(W_ext, topo_ext, params, grid.dx, dt,
                                  dudx=dudx)
    W_new = friction_step(W_half, dt, params, (f2 * H)[interior])

    diag = dict(run.diagnostics)
    diag["last_dt"] = dt
    diag["min_f2"] = float(np.min(f2))
    diag["max_abs_lambda"] = float(np.max(np.maximum(np.abs(fan.lam_L),
                                                     np.abs(fan.lam_R))))
    fill = params.delta_bar * recover_delta1(W_new.q, W_new.r, W_new.h) / W_new.h
    diag["n_thick_layer"] = int(np.count_nonzero(fill > 0.5))
    return RunState(t=run.t + dt, step_count=run.step_count + 1, W=W_new,
                    diagnostics=diag)


def advance(run: RunState, t_end, grid: Grid1D, params: PhysicalParams,
            boundaries: BoundarySpec, cfl_number=0.9, gradient_order=4,
            dt_max=np.inf, snapshot_times=(),
            on_snapshot: Optional[Callable] = None,
            log_every: int = 0) -> RunState:
    """Run the loop until t_end, clipping the last step to land exactly.

    Snapshot callbacks fire at end-of-step states, once per requested time,
    as soon as the run time reaches it.
    """
    pending = sorted(t for t in snapshot_times if t >= run.t)
    if run.t == 0.0 and pending and pending[0] == 0.0:
        if on_snapshot is not None:
            on_snapshot(run)
        pending.pop(0)
    while run.t < t_end - 1e-14 * max(1.0, t_end):
        next_stop = pending[0] if pending else t_end
        cap = min(next_stop, t_end) - run.t
        run = step(run, grid, params, boundaries, cfl_number=cfl_number,
                   gradient_order=gradient_order, dt_max=dt_max, dt_cap=cap)
        while pending and run.t >= pending[0] - 1e-14 * max(1.0, pending[0]):
            if on_snapshot is not None:
                on_snapshot(run)
            pending.pop(0)
        if log_every and run.step_count % log_every == 0:
            log.info("step=%d t=%.6g dt=%.3g thick_cells=%d",
                     run.step_count, run.t, run.diagnostics.get("last_dt", 0),
                     run.diagnostics.get("n_thick_layer", 0))
    return run
