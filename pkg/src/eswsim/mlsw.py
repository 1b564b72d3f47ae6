"""Multilayer Saint-Venant reference solver.

Vertical discretization of the long-wave equations into N layers of fixed
depth fractions; horizontal transport uses a local Lax-Friedrichs flux per
layer (with the free-surface jump in the diffusion so that lake-at-rest
states stay exact), vertical momentum diffusion is solved implicitly per
cell. Used as a qualitative cross-check of the integrated model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProfile, DomainError, TridiagonalFailure
from .state import Grid1D, PhysicalParams, U_EPS
from .timeloop import InflowSpec, SubcriticalInflow, SupercriticalInflow


@dataclass(frozen=True)
class LayerGrid:
    """Fixed layer fractions, exponentially refined towards the bottom."""

    n_layers: int = 100

    @property
    def fractions(self) -> np.ndarray:
        N = self.n_layers
        alpha = np.arange(N + 1)
        z = (np.exp(10.0 * alpha / N) - 1.0) / (np.exp(10.0) - 1.0)
        return np.diff(z)

    @property
    def interfaces(self) -> np.ndarray:
        """Relative heights z_alpha of the layer interfaces, 0 to 1."""
        N = self.n_layers
        alpha = np.arange(N + 1)
        return (np.exp(10.0 * alpha / N) - 1.0) / (np.exp(10.0) - 1.0)


@dataclass(frozen=True)
class MlswState:
    """Total depth per cell and per-layer velocities, shape (N, n_cells)."""

    h: np.ndarray
    u: np.ndarray

    @classmethod
    def uniform(cls, layers: LayerGrid, n_cells, h0, u0) -> "MlswState":
        return cls(h=np.full(n_cells, float(h0)),
                   u=np.full((layers.n_layers, n_cells), float(u0)))


def _ghosted(state: MlswState, left: InflowSpec, layers: LayerGrid,
             params: PhysicalParams):
    """One ghost cell per side: inflow with flat profile, free outflow."""
    if isinstance(left, SupercriticalInflow):
        h_g, u_g = left.h_in, left.u_in
    elif isinstance(left, SubcriticalInflow):
        U1 = float(np.sum(layers.fractions * state.u[:, 0]))
        # outgoing invariant U - 2*sqrt(h)/Fr fixes the ghost depth
        sqrt_hg = np.sqrt(state.h[0]) + params.froude * (left.u_in - U1) / 2.0
        h_g = max(sqrt_hg, 1e-6) ** 2
        u_g = left.u_in
    else:
        raise TypeError(f"unsupported inflow: {left!r}")
    h = np.concatenate([[h_g], state.h, [state.h[-1]]])
    u = np.concatenate([np.full((layers.n_layers, 1), u_g), state.u,
                        state.u[:, -1:]], axis=1)
    return h, u


def mlsw_compute_dt(state: MlswState, params: PhysicalParams, dx,
                    cfl_number=0.9, dt_max=np.inf) -> float:
    """CFL step from the fastest layer speed |u| + sqrt(h)/Fr."""
    lam = np.max(np.abs(state.u), axis=0) + np.sqrt(state.h) / params.froude
    lam_max = float(np.max(lam))
    dt = min(cfl_number * dx / (2.0 * lam_max), dt_max)
    if not dt > 0.0:
        raise DomainError("nonpositive time step")
    return dt


def _thomas(lower, diag, upper, rhs):
    """Batched Thomas solve; systems along axis 0, batches along axis 1."""
    n = diag.shape[0]
    c = np.empty_like(diag)
    d = np.empty_like(rhs)
    denom = diag[0]
    if np.any(denom == 0.0):
        raise TridiagonalFailure("zero pivot in vertical friction solve")
    c[0] = upper[0] / denom
    d[0] = rhs[0] / denom
    for i in range(1, n):
        denom = diag[i] - lower[i] * c[i - 1]
        if np.any(denom == 0.0):
            raise TridiagonalFailure("zero pivot in vertical friction solve")
        c[i] = upper[i] / denom if i < n - 1 else 0.0
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom
    x = np.empty_like(rhs)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def mlsw_step(state: MlswState, layers: LayerGrid, dt,
              params: PhysicalParams, grid: Grid1D,
              left: InflowSpec) -> MlswState:
    """One transport + exchange + implicit vertical friction step."""
    dx = grid.dx
    fr2 = params.froude**2
    ell = layers.fractions[:, None]
    h, u = _ghosted(state, left, layers, params)
    topo = np.concatenate([[grid.topo[0]], grid.topo, [grid.topo[-1]]])
    eta = h + topo
    hu = ell * h[None, :] * u             # (N, n+2)

    # interface wave speed (local Lax-Friedrichs)
    cell_speed = np.max(np.abs(u), axis=0) + np.sqrt(h) / params.froude
    s = np.maximum(cell_speed[:-1], cell_speed[1:])   # (n+1,)

    jump_eta = eta[1:] - eta[:-1]
    flux_mass = 0.5 * (hu[:, :-1] + hu[:, 1:]) \
        - 0.5 * s[None, :] * ell * jump_eta[None, :]
    flux_mom = 0.5 * (hu[:, :-1] * u[:, :-1] + hu[:, 1:] * u[:, 1:]) \
        - 0.5 * s[None, :] * (hu[:, 1:] - hu[:, :-1])
    flux_total = np.sum(flux_mass, axis=0)

    div_mass = (flux_mass[:, 1:] - flux_mass[:, :-1]) / dx      # (N, n)
    div_total = (flux_total[1:] - flux_total[:-1]) / dx          # (n,)
    div_mom = (flux_mom[:, 1:] - flux_mom[:, :-1]) / dx

    h_new = state.h - dt * div_total
    if np.any(h_new <= 0.0):
        raise DomainError("total depth became nonpositive in transport")

    # cumulative mass exchange through layer interfaces (top one vanishes)
    G = np.cumsum(div_mass - ell * div_total[None, :], axis=0)
    G[-1] = 0.0
    u_int = state.u
    # interface velocity upwinded by the sign of G (downward flux carries
    # the upper layer's velocity)
    u_up = np.where(G[:-1] >= 0.0, u_int[1:], u_int[:-1])
    m = np.zeros_like(G)
    m[:-1] = u_up * G[:-1]
    dm = m - np.vstack([np.zeros((1, m.shape[1])), m[:-1]])

    # central free-surface slope for the hydrostatic pressure term
    deta_dx = (eta[2:] - eta[:-2]) / (2.0 * dx)
    h_alpha = ell * state.h[None, :]
    hu_star = (h_alpha * state.u - dt * div_mom
               - dt * h_alpha * deta_dx[None, :] / fr2 + dt * dm)

    # implicit vertical friction on the updated layer depths
    h_alpha_new = ell * h_new[None, :]
    u_star = hu_star / h_alpha_new
    nu = params.delta_bar**2
    N = layers.n_layers
    c_int = np.zeros((N, h_new.size))          # c_int[a] couples a and a+1
    if N > 1:
        c_int[:-1] = 2.0 * nu * dt / (h_alpha_new[1:] + h_alpha_new[:-1])
    c_bot = 2.0 * nu * dt / h_alpha_new[0]
    diag = h_alpha_new.copy()
    diag[0] += c_bot
    diag += c_int
    diag[1:] += c_int[:-1]
    lower = np.zeros_like(diag)
    upper = np.zeros_like(diag)
    if N > 1:
        lower[1:] = -c_int[:-1]
        upper[:-1] = -c_int[:-1]
    rhs = h_alpha_new * u_star
    u_new = _thomas(lower, diag, upper, rhs)
    return MlswState(h=h_new, u=u_new)


def mlsw_diagnostics(state: MlswState, layers: LayerGrid,
                     params: PhysicalParams):
    """(delta1, delta2, H, f2, tau_bar) per cell from the layer profiles."""
    if np.any(np.abs(state.u[-1]) <= U_EPS):
        raise DegenerateProfile("top-layer velocity vanishes")
    db = params.delta_bar
    if db <= 0.0:
        raise DomainError("diagnostics require delta_bar > 0")
    ell = layers.fractions[:, None]
    h_alpha = ell * state.h[None, :]
    u_e = state.u[-1]
    ratio = state.u / u_e[None, :]
    dd1 = np.sum((1.0 - ratio) * h_alpha, axis=0)
    dd2 = np.sum(ratio * (1.0 - ratio) * h_alpha, axis=0)
    if np.any(dd2 <= 0.0):
        raise DegenerateProfile("momentum thickness nonpositive")
    delta1 = dd1 / db
    delta2 = dd2 / db
    H = delta1 / delta2
    tau_bar = db * 2.0 * state.u[0] / h_alpha[0]
    f2 = tau_bar * delta1 / (H * u_e)
    return delta1, delta2, H, f2, tau_bar
