"""
Smooth test functions on the ``(t1, t2, x)`` lattice and entropy pairs.

:class:`TestFn` is the tensorised C-infinity bump used in weak-form and
entropy quadrature; :class:`SmoothFn` wraps arbitrary C1 callables for the
viscosity-solution check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import quad

from mtcl.hamiltonians import Hamiltonian

__all__ = [
    "bump",
    "bump_deriv",
    "TestFn",
    "SmoothFn",
    "random_bumps",
    "EntropyPair",
    "kruzkov",
    "kruzkov_family",
    "quadrature_pair",
    "smooth_entropy",
]


def bump(s):
    """``exp(1 - 1/(1 - s**2))`` on ``|s| < 1``, zero elsewhere; peak value 1 at ``s = 0``."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    si = s[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - si * si))
    return out


def bump_deriv(s):
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    si = s[inside]
    d = 1.0 - si * si
    out[inside] = np.exp(1.0 - 1.0 / d) * (-2.0 * si / (d * d))
    return out


@lru_cache(maxsize=None)
def _bump_constants():
    mass = quad(lambda s: float(bump(s)), -1, 1)[0]
    s = np.linspace(-1, 1, 200001)
    slope = float(np.max(np.abs(bump_deriv(s))))
    return mass, slope


@dataclass(frozen=True)
class TestFn:
    """``amplitude * bump((t1-c1)/r1) * bump((t2-c2)/r2) * bump((x-c3)/r3)``."""

    __test__ = False  # not a pytest class

    center: tuple
    radii: tuple
    amplitude: float = 1.0

    def __post_init__(self):
        if len(self.center) != 3 or len(self.radii) != 3:
            raise ValueError("TestFn needs a 3-component center and radii")
        if min(self.radii) <= 0:
            raise ValueError(f"radii must be positive, got {self.radii}")
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))

    def _scaled(self, t1, t2, x):
        c, r = self.center, self.radii
        return (np.asarray(t1) - c[0]) / r[0], (np.asarray(t2) - c[1]) / r[1], (np.asarray(x) - c[2]) / r[2]

    def value(self, t1, t2, x):
        s1, s2, s3 = self._scaled(t1, t2, x)
        return self.amplitude * bump(s1) * bump(s2) * bump(s3)

    __call__ = value

    def grad(self, t1, t2, x):
        """``(d/dt1, d/dt2, d/dx)``, broadcast over the arguments."""
        s1, s2, s3 = self._scaled(t1, t2, x)
        b1, b2, b3 = bump(s1), bump(s2), bump(s3)
        d1, d2, d3 = bump_deriv(s1), bump_deriv(s2), bump_deriv(s3)
        r = self.radii
        a = self.amplitude
        return a * d1 * b2 * b3 / r[0], a * b1 * d2 * b3 / r[1], a * b1 * b2 * d3 / r[2]

    def support(self):
        """Closed box ``((lo, hi) per axis)`` containing the support."""
        return tuple((c - r, c + r) for c, r in zip(self.center, self.radii))

    @property
    def volume(self):
        r = self.radii
        return 8.0 * r[0] * r[1] * r[2]

    @property
    def c1_norm(self):
        _, slope = _bump_constants()
        return abs(self.amplitude) * max(1.0, slope / min(self.radii))

    @property
    def l1_norm(self):
        mass, _ = _bump_constants()
        r = self.radii
        return abs(self.amplitude) * mass**3 * r[0] * r[1] * r[2]


@dataclass(frozen=True)
class SmoothFn:
    """A C1 function of ``(t1, t2, x)`` given by its value and gradient callables."""

    fn: Callable
    gradient: Callable

    def value(self, t1, t2, x):
        return self.fn(t1, t2, x)

    __call__ = value

    def grad(self, t1, t2, x):
        return self.gradient(t1, t2, x)


def random_bumps(rng, count, t_box, x_box, radii):
    """``count`` bumps with centres drawn so that each support stays inside the boxes.

    ``t_box`` is ``(lo, hi)`` for both times, ``x_box`` for space and
    ``radii`` the fixed ``(r1, r2, rx)``.
    """
    r1, r2, rx = radii
    out = []
    for _ in range(count):
        c1 = rng.uniform(t_box[0] + r1, t_box[1] - r1)
        c2 = rng.uniform(t_box[0] + r2, t_box[1] - r2)
        c3 = rng.uniform(x_box[0] + rx, x_box[1] - rx)
        out.append(TestFn((c1, c2, c3), (r1, r2, rx)))
    return out


@dataclass(frozen=True)
class EntropyPair:
    """Convex entropy ``eta`` with fluxes ``q1, q2`` satisfying ``q_i' = eta' H_i'``."""

    name: str
    eta: Callable
    deta: Callable
    q1: Callable
    q2: Callable

    def q(self, which):
        return self.q1 if which == 1 else self.q2


def kruzkov(k, h1: Hamiltonian, h2: Hamiltonian) -> EntropyPair:
    """``eta = |u - k|``, ``q_i = sgn(u - k) (H_i(u) - H_i(k))``."""
    k = float(k)

    def make_q(h):
        hk = float(h.eval(k))
        return lambda u: np.sign(u - k) * (h.eval(u) - hk)

    return EntropyPair(
        f"kruzkov[k={k!r}]",
        lambda u: np.abs(u - k),
        lambda u: np.sign(u - k),
        make_q(h1),
        make_q(h2),
    )


def kruzkov_family(h1, h2, lo, hi, count=17):
    """``count`` Kruzkov pairs with constants evenly spaced over ``[lo, hi]``."""
    return [kruzkov(k, h1, h2) for k in np.linspace(lo, hi, count)]


_GL_ORDER = 24


def quadrature_pair(name, eta, deta, h1: Hamiltonian, h2: Hamiltonian, order=_GL_ORDER) -> EntropyPair:
    """Entropy pair whose fluxes are ``q_i(v) = int_0^v eta'(s) H_i'(s) ds`` by Gauss-Legendre."""
    nodes, weights = np.polynomial.legendre.leggauss(order)

    def make_q(h):
        def q(u):
            u = np.asarray(u, dtype=np.float64)
            s = 0.5 * u[..., None] * (nodes + 1.0)
            integrand = deta(s) * h.deriv(s)
            return 0.5 * u * np.sum(weights * integrand, axis=-1)

        return q

    return EntropyPair(name, eta, deta, make_q(h1), make_q(h2))


def smooth_entropy(k, h1, h2) -> EntropyPair:
    """``eta(u) = ((u - k)**2 - k**2) / 2``, fluxes by quadrature."""
    k = float(k)
    return quadrature_pair(
        f"quadratic[k={k!r}]",
        lambda u: 0.5 * ((u - k) ** 2 - k * k),
        lambda u: u - k,
        h1,
        h2,
    )
