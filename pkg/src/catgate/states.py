"""Input and reference wavefunctions sampled on uniform coordinate grids.

Units: hbar = 1, quadratures q, p with [q, p] = i.
"""
from dataclasses import dataclass
from math import factorial, sqrt

import numpy as np

from .errors import GridMismatchError, ParameterRangeError
from .numerics import hermite

__all__ = [
    "GridSpec",
    "QuadratureGrid",
    "CubicResourceParams",
    "PerfectCatSpec",
    "default_grid",
    "vacuum_wf",
    "squeezed_vacuum_wf",
    "cubic_phase_wf",
    "fock_wf",
    "perfect_cat_wf",
]

DEFAULT_POINTS = 4096


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``x_min .. x_max`` with ``num_points`` samples (endpoints included)."""

    x_min: float
    x_max: float
    num_points: int = DEFAULT_POINTS

    def __post_init__(self):
        if self.num_points < 2:
            raise ParameterRangeError("a grid needs at least two points")
        if not self.x_min < self.x_max:
            raise ParameterRangeError("grid needs x_min < x_max")

    @classmethod
    def symmetric(cls, half_width, num_points=DEFAULT_POINTS):
        return cls(-float(half_width), float(half_width), int(num_points))

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.num_points)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.num_points - 1)

    def covers(self, lo, hi):
        return self.x_min <= lo and self.x_max >= hi


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Complex wavefunction samples on a :class:`GridSpec`.

    The samples array is made read-only on construction.
    """

    grid: GridSpec
    samples: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.shape != (self.grid.num_points,):
            raise ParameterRangeError(
                f"expected {self.grid.num_points} samples, got shape {s.shape}"
            )
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def x_min(self):
        return self.grid.x_min

    @property
    def x_max(self):
        return self.grid.x_max

    @property
    def num_points(self):
        return self.grid.num_points

    @property
    def x(self):
        return self.grid.x

    @property
    def dx(self):
        return self.grid.dx

    def norm(self):
        """Squared norm ``sum |psi|^2 dx``."""
        return float(np.sum(np.abs(self.samples) ** 2) * self.dx)

    def normalized(self):
        n = self.norm()
        if not n > 0:
            raise ParameterRangeError("cannot normalize a zero wavefunction")
        return QuadratureGrid(self.grid, self.samples / np.sqrt(n))

    def inner(self, other):
        """``<self|other>`` as a grid sum."""
        if self.grid != other.grid:
            raise GridMismatchError(f"grids differ: {self.grid} vs {other.grid}")
        return complex(np.sum(np.conj(self.samples) * other.samples) * self.dx)

    def __call__(self, x):
        """Linear interpolation of the samples at ``x``."""
        xs = self.x
        return np.interp(x, xs, self.samples.real) + 1j * np.interp(x, xs, self.samples.imag)

    def momentum_density(self):
        """Momentum axis and ``|phi(p)|^2`` normalized on that axis (FFT)."""
        n = self.num_points
        p = 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(n, self.dx))
        phi = np.fft.fftshift(np.fft.fft(self.samples))
        dens = np.abs(phi) ** 2
        dp = p[1] - p[0]
        return p, dens / (dens.sum() * dp)

    def momentum_mean(self):
        p, dens = self.momentum_density()
        return float(np.sum(p * dens) * (p[1] - p[0]))


@dataclass(frozen=True)
class CubicResourceParams:
    """Squeezing ``s`` (0 < s <= 1) and cubic nonlinearity ``gamma`` of the resource."""

    s: float
    gamma: float

    def __post_init__(self):
        if not 0 < self.s <= 1:
            raise ParameterRangeError(f"squeezing s must lie in (0, 1], got {self.s}")
        if not self.gamma > 0:
            raise ParameterRangeError(f"gamma must be positive, got {self.gamma}")


@dataclass(frozen=True)
class PerfectCatSpec:
    """Two squeezed Gaussians at ``+-alpha_prime`` with momentum ``alpha_dprime``.

    ``theta`` is the relative phase (pi for the odd cat).  ``norm`` is the
    prefactor that makes the state unit-norm on whatever grid it is
    sampled; it is filled in by :func:`perfect_cat_wf`, the value here is
    only the analytic overlap-corrected estimate.
    """

    alpha_prime: float
    alpha_dprime: float = 0.0
    s_prime: float = 2.0
    theta: float = np.pi

    def __post_init__(self):
        if not self.s_prime > 0:
            raise ParameterRangeError("s_prime must be positive")

    @property
    def norm(self):
        # the two components overlap as exp(-s'^2 alpha'^2) cos(theta)
        overlap = np.exp(-(self.s_prime * self.alpha_prime) ** 2) * np.cos(self.theta)
        return float(np.sqrt(self.s_prime / np.sqrt(np.pi)) / np.sqrt(2.0 * (1.0 + overlap)))


def default_grid(alpha_prime=0.0, alpha_dprime=0.0, s_prime=1.0, num_points=DEFAULT_POINTS):
    """Symmetric grid wide enough for every state built in this package."""
    half = max(8.0, abs(alpha_prime) + abs(alpha_dprime) + 8.0 / min(1.0, s_prime))
    return GridSpec.symmetric(half, num_points)


def _grid(grid):
    return default_grid() if grid is None else grid


def vacuum_wf(grid=None):
    """Vacuum ``pi**-0.25 exp(-x**2/2)``."""
    grid = _grid(grid)
    x = grid.x
    return QuadratureGrid(grid, np.pi ** -0.25 * np.exp(-0.5 * x * x))


def squeezed_vacuum_wf(s, grid=None):
    """Momentum-squeezed vacuum ``sqrt(s) pi**-0.25 exp(-s**2 x**2 / 2)``."""
    grid = _grid(grid)
    x = grid.x
    return QuadratureGrid(grid, np.sqrt(s) * np.pi ** -0.25 * np.exp(-0.5 * (s * x) ** 2))


def cubic_phase_wf(params, grid=None):
    """Squeezed vacuum multiplied by the cubic phase ``exp(i gamma x**3)``."""
    grid = _grid(grid)
    x = grid.x
    s = params.s
    amp = np.sqrt(s) * np.pi ** -0.25 * np.exp(-0.5 * (s * x) ** 2)
    return QuadratureGrid(grid, amp * np.exp(1j * params.gamma * x ** 3))


def fock_amplitude(n, x):
    """Number-state wavefunction ``H_n(x) exp(-x**2/2) / (pi**0.25 sqrt(2**n n!))``."""
    x = np.asarray(x, dtype=float)
    c = 1.0 / (np.pi ** 0.25 * sqrt(2.0 ** n * factorial(n)))
    return c * hermite(n, x) * np.exp(-0.5 * x * x)


def fock_wf(n, grid=None):
    if not 0 <= n <= 64:
        raise ParameterRangeError(f"photon number must be in [0, 64], got {n}")
    if grid is None:
        grid = GridSpec.symmetric(max(8.0, sqrt(2 * n + 1) + 6.0))
    return QuadratureGrid(grid, fock_amplitude(n, grid.x))


def perfect_cat_wf(spec, grid=None):
    """Sample the reference squeezed cat and normalize it on the grid."""
    if grid is None:
        grid = default_grid(spec.alpha_prime, spec.alpha_dprime, spec.s_prime)
    x = grid.x
    sp, a = spec.s_prime, spec.alpha_prime
    carrier = np.exp(1j * spec.alpha_dprime * x)
    plus = np.exp(0.5j * spec.theta - 0.5 * sp ** 2 * (x - a) ** 2)
    minus = np.exp(-0.5j * spec.theta - 0.5 * sp ** 2 * (x + a) ** 2)
    return QuadratureGrid(grid, carrier * (plus + minus)).normalized()
