"""c-number in/out map of the gate.

The homodyne outcome replaces the measured momentum operator, so each input
phase-plane point of the signal maps to two output points, one per
intersection of the measurement line with the resource curve (a parabola
for the cubic phase state, a circle for a number state).

Functions take any object with ``rho``, ``tau``, ``gamma``/``n`` and
``y_m`` attributes, so gate configs from :mod:`catgate.gate` work directly.
"""
from dataclasses import dataclass
from math import pi, sqrt

from .errors import BranchError
from .states import PerfectCatSpec

__all__ = [
    "PhasePoint",
    "BranchPair",
    "map_cubic",
    "map_fock",
    "half_spacing",
    "ym_for_half_spacing",
    "copy_squeezing",
    "perfect_cat_from_semiclassics",
]


@dataclass(frozen=True)
class PhasePoint:
    q: float = 0.0
    p: float = 0.0


ORIGIN = PhasePoint()


@dataclass(frozen=True)
class BranchPair:
    """The two destinations of one input point; ``minus.q <= plus.q``."""

    minus: PhasePoint
    plus: PhasePoint

    @property
    def half_spacing(self):
        return 0.5 * (self.plus.q - self.minus.q)


def _cubic_radicand(cfg, p1, p2):
    r = cfg.y_m - cfg.tau * p1 - cfg.rho * p2
    if r < 0:
        raise BranchError(
            f"outside semiclassical support: y_m - tau p1 - rho p2 = {r:.6g} < 0 "
            "(measurement line misses the resource parabola)"
        )
    return r


def map_cubic(cfg, point=ORIGIN, p2_initial=0.0):
    """Map a signal point through the cubic-phase gate.

    ``p2_initial`` is the resource momentum before the cubic evolution;
    the default 0 is the infinitely squeezed limit.
    """
    r = _cubic_radicand(cfg, point.p, p2_initial)
    shift = cfg.tau / sqrt(3.0 * cfg.gamma * cfg.rho) * sqrt(r)
    q0 = cfg.rho * point.q
    p_out = (point.p - cfg.tau * cfg.y_m) / cfg.rho
    return BranchPair(PhasePoint(q0 - shift, p_out), PhasePoint(q0 + shift, p_out))


def half_spacing(cfg, p1_initial=0.0):
    """Half the coordinate distance between the two copies of a point."""
    r = _cubic_radicand(cfg, p1_initial, 0.0)
    return cfg.tau / sqrt(3.0 * cfg.gamma * cfg.rho) * sqrt(r)


def ym_for_half_spacing(gamma, rho, tau, delta_q):
    """Outcome ``y_m`` that puts the copies of the origin at ``+-delta_q``."""
    if delta_q < 0:
        raise ValueError("delta_q must be non-negative")
    return 3.0 * gamma * rho * delta_q ** 2 / tau ** 2


def copy_squeezing(cfg):
    """Coordinate squeezing factor of both copies, ``1/rho``."""
    return 1.0 / cfg.rho


def map_fock(cfg, point=ORIGIN):
    """Map a signal point through the number-state gate (resource circle of radius sqrt(2n+1))."""
    shifted = cfg.y_m - cfg.tau * point.p
    r = 2 * cfg.n + 1 - shifted ** 2 / cfg.rho ** 2
    if r < 0:
        raise BranchError(
            f"outside semiclassical support: 2n+1 - (y_m - tau p1)^2/rho^2 = {r:.6g} < 0 "
            "(measurement line misses the resource circle)"
        )
    shift = cfg.tau * sqrt(r)
    q0 = cfg.rho * point.q
    p_out = point.p / cfg.rho - cfg.tau * cfg.y_m / cfg.rho
    return BranchPair(PhasePoint(q0 - shift, p_out), PhasePoint(q0 + shift, p_out))


def perfect_cat_from_semiclassics(cfg, theta=pi):
    """Reference cat whose components sit where the origin is mapped to."""
    pair = map_fock(cfg) if hasattr(cfg, "n") else map_cubic(cfg)
    return PerfectCatSpec(
        alpha_prime=pair.half_spacing,
        alpha_dprime=pair.plus.p,
        s_prime=copy_squeezing(cfg),
        theta=theta,
    )
