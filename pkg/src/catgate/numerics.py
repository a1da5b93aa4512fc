"""Special functions and quadrature used by the gate simulation.

The Airy function of the first kind is needed at complex arguments, which
rules out the usual real-only routines.  It is evaluated in three regimes:

* Maclaurin series near the origin,
* Poincare asymptotic expansion (with the sectorial connection formula
  near the negative real axis) outside ``AIRY_SWITCH_RADIUS``,
* inside that radius but deep in the decaying sector, where the series
  cancels catastrophically, Taylor stepping of ``w'' = z w`` inward from
  the asymptotic value on the switchover circle.

All routines accept scalars or numpy arrays and broadcast.
"""
from dataclasses import dataclass
from math import gamma as _gamma

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import AiryOverflowError, ParameterRangeError, QuadratureError

__all__ = [
    "AIRY_SWITCH_RADIUS",
    "QuadratureSpec",
    "QuadratureResult",
    "airy_ai",
    "airy_ai_prime",
    "airy_ai_scaled",
    "airy_zeta",
    "hermite",
    "integrate_complex",
]

AI0 = 3.0 ** (-2.0 / 3.0) / _gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / _gamma(1.0 / 3.0)

AIRY_SWITCH_RADIUS = 7.0
# series loses about exp(|zeta| + Re zeta) relative to the result
_SERIES_LOSS_LIMIT = 11.0
_TAYLOR_STEPS = 8
_TAYLOR_TERMS = 40
_ASYMPTOTIC_TERMS = 60
_EPS = np.finfo(float).eps

_OMEGA = np.exp(2j * np.pi / 3.0)
_OMEGA_BAR = np.conj(_OMEGA)
_E_PI3 = np.exp(1j * np.pi / 3.0)


def _asymptotic_coefficients(n):
    u = np.empty(n)
    u[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
    k = np.arange(n)
    v = -(6 * k + 1) / (6 * k - 1) * u
    return u, v


_U, _V = _asymptotic_coefficients(_ASYMPTOTIC_TERMS)


def airy_zeta(z):
    """Return ``(2/3) z**1.5`` on the principal branch."""
    z = np.asarray(z, dtype=complex)
    return 2.0 / 3.0 * z * np.sqrt(z)


def _maclaurin(z):
    """Ai and Ai' from the power series about the origin (unscaled)."""
    z3 = z ** 3
    f = np.ones_like(z)
    g = z.copy()
    df = np.zeros_like(z)
    dg = np.ones_like(z)
    tf = np.ones_like(z)
    tg = z.copy()
    tdf = z * z / 2.0
    tdg = np.ones_like(z)
    df = df + tdf
    for k in range(1, 200):
        tf = tf * z3 / ((3 * k - 1) * (3 * k))
        tg = tg * z3 / ((3 * k) * (3 * k + 1))
        tdg = tdg * z3 / ((3 * k - 2) * (3 * k))
        f += tf
        g += tg
        dg += tdg
        if k >= 2:
            tdf = tdf * z3 / ((3 * k - 3) * (3 * k - 1))
            df += tdf
        small = max(np.max(np.abs(tf), initial=0.0), np.max(np.abs(tg), initial=0.0),
                    np.max(np.abs(tdf), initial=0.0), np.max(np.abs(tdg), initial=0.0))
        if small < 1e-18:
            break
    return AI0 * f + AIP0 * g, AI0 * df + AIP0 * dg


def _asymptotic_direct(z):
    """Scaled Ai, Ai' for |ph z| <= 2pi/3 from the Poincare expansion.

    Scaled means multiplied by exp(zeta).  Each sum is truncated at its
    smallest term.
    """
    zeta = airy_zeta(z)
    inv = -1.0 / zeta
    su = np.ones_like(z)
    sv = np.ones_like(z)
    pw = np.ones_like(z)
    last = np.ones(z.shape)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, _ASYMPTOTIC_TERMS):
        pw = pw * inv
        tu = _U[k] * pw
        tv = _V[k] * pw
        mag = np.abs(tu)
        active &= mag < last
        if not active.any():
            break
        su = np.where(active, su + tu, su)
        sv = np.where(active, sv + tv, sv)
        last = mag
        active &= mag > _EPS * np.abs(su) * 1e-2
    z14 = z ** 0.25
    c = 0.5 / np.sqrt(np.pi)
    return c * su / z14, -c * z14 * sv


def _asymptotic(z):
    """Scaled Ai, Ai' for any z away from the origin."""
    z = np.asarray(z, dtype=complex)
    ai = np.empty_like(z)
    aip = np.empty_like(z)
    direct = np.abs(np.angle(z)) <= 2.0 * np.pi / 3.0
    if direct.any():
        ai[direct], aip[direct] = _asymptotic_direct(z[direct])
    conn = ~direct
    if conn.any():
        zc = z[conn]
        zeta = airy_zeta(zc)
        z1 = zc * _OMEGA_BAR
        z2 = zc * _OMEGA
        a1, d1 = _asymptotic_direct(z1)
        a2, d2 = _asymptotic_direct(z2)
        e1 = np.exp(zeta - airy_zeta(z1))
        e2 = np.exp(zeta - airy_zeta(z2))
        ai[conn] = _E_PI3 * e1 * a1 + np.conj(_E_PI3) * e2 * a2
        aip[conn] = np.conj(_E_PI3) * e1 * d1 + _E_PI3 * e2 * d2
    return ai, aip


def _taylor_inward(z):
    """Unscaled Ai, Ai' by stepping the Airy equation in from the switch circle.

    Used only where Ai decays outward, so the inward march follows the
    dominant solution and is stable.
    """
    r = np.abs(z)
    start = z * (AIRY_SWITCH_RADIUS / r)
    a_s, ap_s = _asymptotic(start)
    decay = np.exp(-airy_zeta(start))
    w, dw = a_s * decay, ap_s * decay
    z0 = start
    h = (z - start) / _TAYLOR_STEPS
    for _ in range(_TAYLOR_STEPS):
        # a_{k+2} (k+1)(k+2) = z0 a_k + a_{k-1}
        a_prev = np.zeros_like(w)
        a_k = w
        a_k1 = dw
        val = a_k + a_k1 * h
        der = a_k1.copy()
        hp = h.copy()  # h**(k+1) bookkeeping below
        for k in range(0, _TAYLOR_TERMS):
            a_k2 = (z0 * a_k + a_prev) / ((k + 1) * (k + 2))
            hp_next = hp * h
            val = val + a_k2 * hp_next
            der = der + (k + 2) * a_k2 * hp
            a_prev, a_k, a_k1 = a_k, a_k1, a_k2
            hp = hp_next
        w, dw = val, der
        z0 = z0 + h
    return w, dw


def _airy_scaled_pair(z):
    """Return exp(zeta)*Ai(z), exp(zeta)*Ai'(z) and zeta for array z."""
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    if not np.all(np.isfinite(z)):
        raise ParameterRangeError("Airy argument must be finite")
    zeta = airy_zeta(z)
    ai = np.empty_like(z)
    aip = np.empty_like(z)
    r = np.abs(z)
    inner = r <= AIRY_SWITCH_RADIUS
    loss = np.abs(zeta) + zeta.real
    series = inner & (loss <= _SERIES_LOSS_LIMIT)
    march = inner & ~series
    outer = ~inner
    if series.any():
        a, d = _maclaurin(z[series])
        scale = np.exp(zeta[series])
        ai[series], aip[series] = a * scale, d * scale
    if march.any():
        a, d = _taylor_inward(z[march])
        scale = np.exp(zeta[march])
        ai[march], aip[march] = a * scale, d * scale
    if outer.any():
        ai[outer], aip[outer] = _asymptotic(z[outer])
    return ai.reshape(shape), aip.reshape(shape), zeta.reshape(shape)


def _unscale(values, zeta):
    with np.errstate(over="ignore", invalid="ignore"):
        out = values * np.exp(-zeta)
    if not np.all(np.isfinite(out)):
        raise AiryOverflowError("Airy function magnitude exceeds the floating-point range")
    return out


def _as_output(values, z):
    return values[()] if np.ndim(z) == 0 else values


def airy_ai(z):
    """Airy function of the first kind at complex argument.

    Parameters
    ----------
    z : complex or array_like of complex

    Returns
    -------
    complex or ndarray
        ``Ai(z)``.  Relative accuracy is about 1e-12 for moderate ``|z|``
        away from the zeros on the negative real axis.

    Raises
    ------
    AiryOverflowError
        If ``|Ai(z)|`` exceeds the float range (far out on the growing
        sectors).  Use :func:`airy_ai_scaled` there.
    """
    ai, _, zeta = _airy_scaled_pair(z)
    return _as_output(_unscale(ai, zeta), z)


def airy_ai_prime(z):
    """Derivative ``Ai'(z)``; same conventions as :func:`airy_ai`."""
    _, aip, zeta = _airy_scaled_pair(z)
    return _as_output(_unscale(aip, zeta), z)


def airy_ai_scaled(z):
    """Return ``exp(zeta) * Ai(z)`` with ``zeta = (2/3) z**1.5`` (principal).

    The scaled value stays O(|z|**-0.25) everywhere, so it can be combined
    with large exponential prefactors without intermediate overflow.
    """
    ai, _, _ = _airy_scaled_pair(z)
    return _as_output(ai, z)


def hermite(n, x):
    """Physicists' Hermite polynomial ``H_n(x)`` by three-term recurrence.

    >>> hermite(5, 1.0)
    -8.0
    """
    if not 0 <= n <= 64 or int(n) != n:
        raise ParameterRangeError(f"Hermite order must be an integer in [0, 64], got {n}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return _as_output(h_prev, x)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return _as_output(h, x)


@dataclass(frozen=True)
class QuadratureSpec:
    """Interval and tolerances for :func:`integrate_complex`."""

    lower: float
    upper: float
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 20000

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ParameterRangeError("quadrature needs lower < upper")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ParameterRangeError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ParameterRangeError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    panels: int


GL_ORDER = 15
_GL_X, _GL_W = leggauss(GL_ORDER)


def _panel_sums(f, a, b, m_shape):
    """Gauss-Legendre estimates on both halves of each panel [a, b]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    lo = np.stack([a, mid], axis=1)  # (P, 2)
    hw = 0.5 * half  # half-width of each half panel
    centres = lo + hw[:, None]
    nodes = centres[:, :, None] + hw[:, None, None] * _GL_X[None, None, :]
    vals = np.asarray(f(nodes.ravel()), dtype=complex)
    vals = vals.reshape(nodes.shape + m_shape)
    w = _GL_W.reshape((1, 1, GL_ORDER) + (1,) * len(m_shape))
    sums = np.sum(vals * w, axis=2) * hw.reshape((-1, 1) + (1,) * len(m_shape))
    return sums[:, 0], sums[:, 1]


def integrate_complex(f, spec):
    """Adaptive 15-point Gauss-Legendre quadrature of a complex integrand.

    Panels are bisected until the whole-panel estimate and the sum of the
    two half-panel estimates agree to ``max(abs_tol, rel_tol*|I_panel|)``
    scaled by the panel's share of the interval.

    Parameters
    ----------
    f : callable
        Maps a 1-D array of nodes to values of shape ``(n,)`` or ``(n, m)``
        (vector-valued integrands are refined on a shared panel set).
    spec : QuadratureSpec

    Returns
    -------
    QuadratureResult
        ``value`` is complex, or a complex array of shape ``(m,)``;
        ``error`` is the summed panel error estimate (max over components).

    Raises
    ------
    QuadratureError
        When ``spec.max_subdivisions`` bisections do not reach tolerance.
    """
    probe = np.asarray(f(np.array([0.5 * (spec.lower + spec.upper)])), dtype=complex)
    m_shape = probe.shape[1:]
    width = spec.upper - spec.lower

    edges = np.linspace(spec.lower, spec.upper, 9)
    a, b = edges[:-1], edges[1:]
    whole = None
    total = np.zeros(m_shape, dtype=complex)
    err_total = np.zeros(m_shape)
    subdivisions = 0
    panels = 0
    while a.size:
        left, right = _panel_sums(f, a, b, m_shape)
        halves = left + right
        if whole is None:
            # first pass: compare against the coarse one-panel rule
            mid = 0.5 * (a + b)
            hw = 0.5 * (b - a)
            nodes = mid[:, None] + hw[:, None] * _GL_X[None, :]
            vals = np.asarray(f(nodes.ravel()), dtype=complex).reshape(nodes.shape + m_shape)
            wshape = (1, GL_ORDER) + (1,) * len(m_shape)
            whole = np.sum(vals * _GL_W.reshape(wshape), axis=1) * hw.reshape((-1,) + (1,) * len(m_shape))
        err = np.abs(whole - halves)
        share = ((b - a) / width).reshape((-1,) + (1,) * len(m_shape))
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(halves)) * share
        ok = np.all((err <= tol).reshape(a.size, -1), axis=1)
        total += halves[ok].sum(axis=0)
        err_total += err[ok].sum(axis=0)
        panels += int(ok.sum())
        bad = ~ok
        nbad = int(bad.sum())
        if nbad == 0:
            break
        subdivisions += nbad
        if subdivisions > spec.max_subdivisions:
            pending = err[bad].reshape(nbad, -1).max(axis=0)
            worst = int(np.argmax(pending)) if m_shape else None
            raise QuadratureError(
                f"no convergence after {spec.max_subdivisions} subdivisions "
                f"(worst error estimate {pending.max():.3e}"
                + (f" at component {worst})" if worst is not None else ")"),
                error_estimate=float(pending.max()),
                worst_index=worst,
            )
        ab, bb = a[bad], b[bad]
        mid = 0.5 * (ab + bb)
        a = np.concatenate([ab, mid])
        b = np.concatenate([mid, bb])
        whole = np.concatenate([left[bad], right[bad]])
    error = float(np.max(err_total)) if m_shape else float(err_total)
    value = total if m_shape else complex(total)
    return QuadratureResult(value=value, error=error, panels=panels)
