"""Conditional output of the beamsplitter gate.

Signal (vacuum, mode 1) and resource (mode 2) are mixed on a real
beamsplitter ``[[rho, -tau], [tau, rho]]``; the momentum of mode 2 is then
measured with outcome ``y_m``.  The unnormalized signal wavefunction is

    psi~(x) = (2 pi)^-1/2  int dx2  psi1(rho x + tau x2) psi2(-tau x + rho x2) exp(-i x2 y_m)

and its squared norm is the outcome probability density ``P(y_m)``.

Two independent routes are provided for the cubic-phase resource: direct
adaptive quadrature of the integral above, and the closed form in terms of
the Airy function.  The number-state resource only has the quadrature route.
"""
from dataclasses import dataclass, replace
from math import log, sqrt
import warnings

import numpy as np

from .errors import AiryOverflowError, BranchError, ParameterRangeError
from .numerics import QuadratureSpec, airy_ai_scaled, airy_zeta, integrate_complex
from .semiclassical import map_cubic, map_fock
from .states import QuadratureGrid, default_grid, fock_amplitude

__all__ = [
    "GateConfig",
    "GateTemplate",
    "FockGateConfig",
    "ClosedFormCoefficients",
    "ConditionalState",
    "closed_form_coefficients",
    "unnormalized_closed",
    "unnormalized_integral",
    "output_wf_closed",
    "output_wf_integral",
    "fock_output_wf",
    "success_probability",
    "gate_grid",
]

_UNITARITY_TOL = 1e-12
# envelope cut: exp(-A u^2) < 1e-16 of peak
_ENVELOPE_LOG = log(1e16)
_CHUNK = 128
# exp(expo - zeta) cancels two large exponents; beyond this size the
# rounding error of the difference exceeds ~1e-8
_CANCELLATION_LIMIT = 1e-8 / np.finfo(float).eps


def _check_beamsplitter(rho, tau):
    if not (0 < rho < 1 and 0 < tau < 1):
        raise ParameterRangeError(f"rho and tau must lie in (0, 1), got rho={rho}, tau={tau}")
    if abs(rho * rho + tau * tau - 1.0) > _UNITARITY_TOL:
        raise ParameterRangeError(
            f"beamsplitter not unitary: rho^2 + tau^2 - 1 = {rho * rho + tau * tau - 1.0:.3e}"
        )


@dataclass(frozen=True)
class GateTemplate:
    """Beamsplitter and resource squeezing; gamma and y_m are filled in per run."""

    rho: float
    tau: float
    s: float = 0.2

    def __post_init__(self):
        _check_beamsplitter(self.rho, self.tau)
        if not 0 < self.s <= 1:
            raise ParameterRangeError(f"squeezing s must lie in (0, 1], got {self.s}")

    @classmethod
    def from_rho(cls, rho, s=0.2):
        return cls(rho, sqrt(1.0 - rho * rho), s)

    def config(self, gamma, y_m):
        return GateConfig(self.rho, self.tau, self.s, gamma, y_m)


@dataclass(frozen=True)
class GateConfig:
    rho: float
    tau: float
    s: float
    gamma: float
    y_m: float = 0.0

    def __post_init__(self):
        _check_beamsplitter(self.rho, self.tau)
        if not 0 < self.s <= 1:
            raise ParameterRangeError(f"squeezing s must lie in (0, 1], got {self.s}")
        if not self.gamma > 0:
            raise ParameterRangeError(f"gamma must be positive, got {self.gamma}")

    @classmethod
    def from_rho(cls, rho, s, gamma, y_m=0.0):
        return cls(rho, sqrt(1.0 - rho * rho), s, gamma, y_m)

    @property
    def template(self):
        return GateTemplate(self.rho, self.tau, self.s)

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class FockGateConfig:
    rho: float
    tau: float
    n: int
    y_m: float = 0.0

    def __post_init__(self):
        _check_beamsplitter(self.rho, self.tau)
        if not 0 <= self.n <= 64 or int(self.n) != self.n:
            raise ParameterRangeError(f"photon number must be an integer in [0, 64], got {self.n}")

    @classmethod
    def from_rho(cls, rho, n, y_m=0.0):
        return cls(rho, sqrt(1.0 - rho * rho), n, y_m)


@dataclass(frozen=True)
class ClosedFormCoefficients:
    """Cubic-exponent coefficients of the x2 integral at coordinates ``x``.

    The integrand is ``exp(d) exp(i (a x2^3 + b x2^2 + c x2))``.
    """

    a: float
    b_at_x: np.ndarray
    c_at_x: np.ndarray
    d_at_x: np.ndarray
    phi: float


@dataclass(frozen=True)
class ConditionalState:
    """Normalized output wavefunction and the density ``P(y_m)`` per unit y_m."""

    wavefunction: QuadratureGrid
    prob_density: float


def closed_form_coefficients(cfg, x):
    rho, tau, s, g, y = cfg.rho, cfg.tau, cfg.s, cfg.gamma, cfg.y_m
    x = np.asarray(x, dtype=float)
    a = rho ** 3 * g
    b = 0.5j * (rho ** 2 * s ** 2 + tau ** 2) - 3 * rho ** 2 * tau * g * x
    c = 1j * rho * tau * x - 1j * rho * tau * s ** 2 * x - y + 3 * rho * tau ** 2 * g * x ** 2
    d = -1j * tau ** 3 * g * x ** 3 - 0.5 * (rho ** 2 + tau ** 2 * s ** 2) * x ** 2
    phi = (tau ** 2 / rho ** 2 + s ** 2) / (6.0 * g)
    return ClosedFormCoefficients(a, b, c, d, phi)


def gate_grid(cfg, num_points=4096):
    """Default grid for a config: wide enough for both copies and their momentum."""
    try:
        pair = map_fock(cfg) if hasattr(cfg, "n") else map_cubic(cfg)
        a1, a2 = pair.half_spacing, pair.plus.p
    except BranchError:
        a1, a2 = 0.0, cfg.tau * cfg.y_m / cfg.rho
    return default_grid(a1, a2, 1.0 / cfg.rho, num_points)


def unnormalized_closed(cfg, x):
    """Closed-form ``psi~(x)`` via the Airy function (norm squared is ``P(y_m)``)."""
    rho, tau, s, g, y = cfg.rho, cfg.tau, cfg.s, cfg.gamma, cfg.y_m
    x = np.asarray(x, dtype=float)
    phi = (tau ** 2 / rho ** 2 + s ** 2) / (6.0 * g)
    k = rho * (3.0 * g) ** (1.0 / 3.0)
    z = (1j * tau * x / rho + 3.0 * rho * g * phi ** 2 - y) / k
    expo = (
        -0.5 * x ** 2 / rho ** 2
        + 2.0 * g * phi ** 3
        - phi * y / rho
        + 1j * (tau / rho) * (phi / rho - y) * x
    )
    ai_s = airy_ai_scaled(z)
    zeta = airy_zeta(z)
    if np.max(np.abs(expo), initial=0.0) > _CANCELLATION_LIMIT:
        raise ParameterRangeError(
            f"closed form loses precision for gamma={g} (exponents of size "
            f"{np.max(np.abs(expo)):.3g} cancel); use the quadrature route"
        )
    with np.errstate(over="ignore", invalid="ignore"):
        psi = sqrt(2.0 * s) / k * np.exp(expo - zeta) * ai_s
    if not np.all(np.isfinite(psi)):
        raise AiryOverflowError(
            f"closed-form output overflows for rho={rho}, gamma={g}, y_m={y}, s={s}"
        )
    return psi


def _cubic_integrand_factory(cfg, x):
    rho, tau, s, g, y = cfg.rho, cfg.tau, cfg.s, cfg.gamma, cfg.y_m
    centre = rho * tau * (s * s - 1.0) * x / (tau * tau + s * s * rho * rho)
    pref = sqrt(s) / (sqrt(np.pi) * sqrt(2.0 * np.pi))

    def f(u):
        x2 = centre[None, :] + u[:, None]
        a1 = rho * x[None, :] + tau * x2
        a2 = -tau * x[None, :] + rho * x2
        return pref * np.exp(-0.5 * a1 * a1 - 0.5 * (s * a2) ** 2 + 1j * (g * a2 ** 3 - x2 * y))

    half = sqrt(_ENVELOPE_LOG / (0.5 * (tau * tau + s * s * rho * rho)))
    return f, half


def _fock_integrand_factory(cfg, x):
    rho, tau, n, y = cfg.rho, cfg.tau, cfg.n, cfg.y_m
    pref = np.pi ** -0.25 / sqrt(2.0 * np.pi)

    def f(u):
        x2 = u[:, None]
        a1 = rho * x[None, :] + tau * x2
        a2 = -tau * x[None, :] + rho * x2
        return pref * np.exp(-0.5 * a1 * a1 - 1j * x2 * y) * fock_amplitude(n, a2)

    # rotation-invariant envelope exp(-(x^2 + x2^2)/2), padded past the turning point
    half = sqrt(2.0 * _ENVELOPE_LOG) + sqrt(2 * n + 1)
    return f, half


def _integrate_on_grid(factory, cfg, x, abs_tol, rel_tol):
    out = np.empty(x.size, dtype=complex)
    for start in range(0, x.size, _CHUNK):
        xs = x[start:start + _CHUNK]
        f, half = factory(cfg, xs)
        spec = QuadratureSpec(-half, half, abs_tol=abs_tol, rel_tol=rel_tol)
        out[start:start + _CHUNK] = integrate_complex(f, spec).value
    return out


def unnormalized_integral(cfg, x, abs_tol=1e-13, rel_tol=1e-11):
    """``psi~(x)`` by direct quadrature over the resource coordinate."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    factory = _fock_integrand_factory if hasattr(cfg, "n") else _cubic_integrand_factory
    return _integrate_on_grid(factory, cfg, x, abs_tol, rel_tol)


def _conditional(grid, psi):
    state = QuadratureGrid(grid, psi)
    p = state.norm()
    if not p > 0:
        raise ParameterRangeError("outcome has zero probability on this grid")
    return ConditionalState(state.normalized(), p)


def output_wf_integral(cfg, grid=None):
    """Output state by quadrature; works for :class:`GateConfig` and :class:`FockGateConfig`."""
    grid = gate_grid(cfg) if grid is None else grid
    return _conditional(grid, unnormalized_integral(cfg, grid.x))


def output_wf_closed(cfg, grid=None):
    """Output state from the Airy closed form."""
    grid = gate_grid(cfg) if grid is None else grid
    return _conditional(grid, unnormalized_closed(cfg, grid.x))


def fock_output_wf(cfg, grid=None):
    """Output state of the number-state gate."""
    return output_wf_integral(cfg, grid)


def success_probability(cfg, y_range, num=801, grid=None):
    """Tabulate ``P(y_m)`` for the gamma/s/beamsplitter of ``cfg``.

    ``cfg.y_m`` is ignored.  A :class:`RuntimeWarning` is issued when the
    trapezoid integral over ``y_range`` falls below 0.999, meaning the
    range misses part of the outcome distribution.

    Returns
    -------
    y, prob : ndarray
    """
    y = np.linspace(y_range[0], y_range[1], num)
    if grid is None:
        ymax = max(y_range[1], 0.0)
        reach = cfg.tau * sqrt(ymax / (3.0 * cfg.gamma * cfg.rho))
        grid = default_grid(reach, 0.0, 1.0 / cfg.rho, 4096)
    x = grid.x
    prob = np.array(
        [np.sum(np.abs(unnormalized_closed(replace(cfg, y_m=v), x)) ** 2) * grid.dx for v in y]
    )
    total = float(np.trapezoid(prob, y))
    if total < 0.999:
        warnings.warn(
            f"P(y_m) integrates to {total:.6f} over {tuple(y_range)}; widen the range",
            RuntimeWarning,
            stacklevel=2,
        )
    return y, prob
