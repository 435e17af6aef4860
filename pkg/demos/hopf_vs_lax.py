"""Lax and Hopf representations of a two-time Hamilton-Jacobi solution.

For a convex datum both formulas apply; the demo prints their max gap next
to the tau_dual tolerance, and the semigroup and commutation gaps.

    python3 demos/hopf_vs_lax.py
"""

import numpy as np

from mtcl.convex import tau_dual
from mtcl.grid import Grid, GridFn
from mtcl.hamiltonians import PowerEven, Quadratic
from mtcl.hj import HJProblem, commutation_check, hopf_eval, lax_eval, semigroup_check


def main():
    g = GridFn.from_callable(lambda x: np.abs(x) + 0.1 * x * x, Grid(-8, 8, 1601))
    p = HJProblem(Quadratic(), PowerEven(4), g)
    tol = tau_dual(g, g)
    for t in [(0.1, 0.0), (0.2, 0.1), (0.0, 0.2), (0.3, 0.3)]:
        lax = lax_eval(p, t, (-1, 1)).w
        hopf = hopf_eval(p, t, (-1, 1))
        gap = float(np.max(np.abs(lax.values - hopf.values)))
        print(f"t={t}: max |lax - hopf| = {gap:.2e} (tau_dual {tol:.2e})")
    t = (0.3, 0.3)
    for rep in (semigroup_check(p, (0.15, 0.15), t, (-1, 1)), commutation_check(p, t, (-1, 1))):
        for line in rep.lines():
            print(line)


if __name__ == "__main__":
    main()
