"""Two-time Hamilton-Jacobi equations and scalar conservation laws on uniform grids.

Solutions come from exact grid versions of the Lax and Lax-Oleinik
formulas; the package also ships the discrete convex analysis they rest on,
a Godunov finite-volume reference and verification suites.
"""

from mtcl.claw import ClawField, ClawProblem, lax_oleinik_eval, lax_oleinik_field, primitive
from mtcl.convex import (
    biconjugate,
    conjugate,
    conjugate_bruteforce,
    inf_conv_direct,
    inf_conv_dual,
    moreau_yosida,
)
from mtcl.errors import (
    CFLError,
    ConfigError,
    ConvexityError,
    GridError,
    ImproperFunctionError,
    MTCLError,
    NumericalError,
    TruncationError,
)
from mtcl.fv import FVState, godunov_step, l1_distance, split_evolve
from mtcl.grid import Grid, GridFn, TimePair
from mtcl.hamiltonians import PowerEven, Quadratic, TabulatedConvex, combine, sample
from mtcl.hj import HJField, HJProblem, hopf_eval, lax_eval, lax_field
from mtcl.testfunctions import EntropyPair, TestFn

__version__ = "0.1.0"

__all__ = [
    "CFLError",
    "ClawField",
    "ClawProblem",
    "ConfigError",
    "ConvexityError",
    "EntropyPair",
    "FVState",
    "Grid",
    "GridError",
    "GridFn",
    "HJField",
    "HJProblem",
    "ImproperFunctionError",
    "MTCLError",
    "NumericalError",
    "PowerEven",
    "Quadratic",
    "TabulatedConvex",
    "TestFn",
    "TimePair",
    "TruncationError",
    "biconjugate",
    "combine",
    "conjugate",
    "conjugate_bruteforce",
    "godunov_step",
    "hopf_eval",
    "inf_conv_direct",
    "inf_conv_dual",
    "l1_distance",
    "lax_eval",
    "lax_field",
    "lax_oleinik_eval",
    "lax_oleinik_field",
    "moreau_yosida",
    "primitive",
    "sample",
    "split_evolve",
]
