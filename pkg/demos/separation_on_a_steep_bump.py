"""
Boundary-layer separation behind a steep bump
=============================================

Increasing the bump height drives the layer on the lee side towards
separation: the friction factor f2 crosses zero where the wall shear
vanishes and reverse flow begins. The location of incipient separation
is sensitive to how sharply the velocity-gradient parameter Lambda1 is
resolved, so the 2nd- and 4th-order gradient stencils are compared.
"""

import numpy as np

from eswsim import (BoundarySpec, ConservedState, Grid1D, PhysicalParams,
                    RunState, SubcriticalInflow, advance, recover_delta1)
from eswsim.analytic import gaussian_bump
from eswsim.closures import closure_factors, ue_gradient


def min_f2(alpha, order, n=400):
    grid = Grid1D.uniform(0.0, 2.0, n,
                          lambda x: gaussian_bump(x, alpha, 0.1, 1.0))
    params = PhysicalParams(froude=1.0, delta_bar=1e-3)
    W = ConservedState(h=np.full(n, 2.0), q=np.full(n, 2.0), r=np.zeros(n))
    state = advance(RunState(0.0, 0, W), 6.0, grid, params,
                    BoundarySpec(left=SubcriticalInflow(u_in=1.0)),
                    gradient_order=order)
    u_e = state.W.q / state.W.h
    d1 = recover_delta1(state.W.q, state.W.r, state.W.h)
    lam1 = d1**2 * ue_gradient(u_e, grid.dx, order=order)
    _, f2 = closure_factors(params.closure, lam1)
    x = grid.cell_centers
    w = (x > 0.3) & (x < 1.9)
    j = np.argmin(np.where(w, f2, np.inf))
    return f2[j], x[j]


print(f"{'alpha':>7} {'order':>6} {'min f2':>9} {'at x':>7}  state")
for alpha in (0.01, 0.02, 0.03):
    for order in (4, 2):
        f2m, xm = min_f2(alpha, order)
        state = "separated" if f2m <= 0.0 else "attached"
        print(f"{alpha:>7.2f} {order:>6} {f2m:>9.4f} {xm:>7.3f}  {state}")
print("\nThe shear minimum sits on the lee side, slightly downstream of")
print("the crest; the lower-order gradient smears Lambda1 and predicts a")
print("marginally less negative minimum.")
