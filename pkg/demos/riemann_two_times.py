"""Burgers Riemann problems evolved in two times.

Prints, for a few (t1, t2), the shock front against (t1 + t2) / 2, the
rarefaction error against clamp(x / (t1 + t2), 0, 1) and the L1 gap between
the Lax-Oleinik solution and split Godunov in both orders.

    python3 demos/riemann_two_times.py
"""

import numpy as np

from mtcl.claw import ClawProblem, front_position, lax_oleinik_field
from mtcl.fv import H1_FIRST, H2_FIRST, l1_distance, split_evolve
from mtcl.grid import Grid, GridFn
from mtcl.hamiltonians import Quadratic


def riemann(ul, ur, grid, h):
    return ClawProblem(h, h, GridFn.from_callable(lambda x: np.where(x < 0, ul, ur), grid))


def main():
    grid = Grid(-3.5, 4.5, 4001)
    h = Quadratic()
    ts = [0.25, 0.5, 1.0]
    shock = lax_oleinik_field(riemann(1.0, 0.0, grid, h), ts, ts, (-1, 2))
    fan = lax_oleinik_field(riemann(0.0, 1.0, grid, h), ts, ts, (-1, 2))
    print(f"{'t1':>5} {'t2':>5} {'front':>8} {'exact':>6} {'fan L1':>9} {'godunov h1|h2 first':>22}")
    for i, a in enumerate(ts):
        for j, b in enumerate(ts):
            u = shock.slice(i, j)
            v = fan.slice(i, j)
            exact = v.with_values(np.clip(v.nodes / (a + b), 0, 1))
            gaps = [
                l1_distance(u, split_evolve(shock.problem.u0, h, h, (a, b), order, report=shock.grid))
                for order in (H1_FIRST, H2_FIRST)
            ]
            print(
                f"{a:5.2f} {b:5.2f} {front_position(u, 0.5):8.4f} {(a + b) / 2:6.3f} "
                f"{l1_distance(v, exact):9.2e} {gaps[0]:10.2e} {gaps[1]:10.2e}"
            )


if __name__ == "__main__":
    main()
