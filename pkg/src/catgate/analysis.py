"""Fidelity, Wigner functions and parameter sweeps over the gate."""
from dataclasses import dataclass, field
from math import pi, sqrt

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import CatGateError, GridMismatchError, ParameterRangeError
from .gate import GateTemplate, gate_grid, output_wf_closed, unnormalized_closed
from .semiclassical import perfect_cat_from_semiclassics, ym_for_half_spacing
from .states import PerfectCatSpec, QuadratureGrid, perfect_cat_wf

__all__ = [
    "REFERENCE_TABLE",
    "WignerGrid",
    "SweepResult",
    "fidelity",
    "cat_fidelity",
    "wigner",
    "momentum_amplitude",
    "fidelity_map",
    "infidelity_slice",
    "find_optimal_gamma",
    "probability_curve",
    "infidelity_vs_squeezing",
    "refine_reference_cell",
    "squeezing_db",
    "probability_peak",
]

# Published (rho, gamma, y_m, F) cells for s = 0.2 and half-spacing 2.87.
REFERENCE_TABLE = (
    (sqrt(3) / 2, ((0.106, 9.05, 0.9976), (0.197, 16.87, 0.9993), (0.296, 25.39, 0.9995))),
    (1 / sqrt(2), ((0.111, 3.87, 0.9768), (0.205, 7.17, 0.9933), (0.299, 10.45, 0.9969))),
    (1 / 2, ((0.115, 1.89, 0.7742), (0.202, 3.34, 0.9244), (0.289, 4.77, 0.9626))),
)


def squeezing_db(s):
    """Squeezing in dB for the quadrature scale factor ``s`` (0.2 -> 13.98 dB)."""
    return -20.0 * np.log10(s)


def fidelity(psi_a, psi_b):
    """``|<a|b>|^2`` for two unit-norm wavefunctions on the same grid."""
    if psi_a.grid != psi_b.grid:
        raise GridMismatchError(f"fidelity needs identical grids: {psi_a.grid} vs {psi_b.grid}")
    f = abs(psi_a.inner(psi_b)) ** 2
    return min(f, 1.0)


def cat_fidelity(cfg, delta_q=None, theta=pi, grid=None):
    """Fidelity of the closed-form output to the reference cat.

    The reference components sit at the semiclassical destinations of the
    origin; ``delta_q`` overrides the half-spacing.
    """
    spec = perfect_cat_from_semiclassics(cfg, theta)
    if delta_q is not None:
        spec = PerfectCatSpec(delta_q, spec.alpha_dprime, spec.s_prime, theta)
    grid = gate_grid(cfg) if grid is None else grid
    out = output_wf_closed(cfg, grid).wavefunction
    return fidelity(perfect_cat_wf(spec, grid), out)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """``values[i, j] = W(x_axis[i], p_axis[j])``."""

    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray

    @property
    def dx(self):
        return float(self.x_axis[1] - self.x_axis[0])

    @property
    def dp(self):
        return float(self.p_axis[1] - self.p_axis[0])

    def integral(self):
        return float(self.values.sum() * self.dx * self.dp)

    def purity(self):
        return float(2 * pi * np.sum(self.values ** 2) * self.dx * self.dp)

    def marginal_x(self):
        return self.values.sum(axis=1) * self.dp

    def marginal_p(self):
        return self.values.sum(axis=0) * self.dx

    def value_at(self, x, p):
        i = int(np.argmin(np.abs(self.x_axis - x)))
        j = int(np.argmin(np.abs(self.p_axis - p)))
        return float(self.values[i, j])


def wigner(psi, p_axis=None, x_step=0.05, p_max=None, support_tol=1e-30):
    """Wigner function of a pure state by direct summation.

    ``W(x, p) = (1/pi) sum_k conj(psi(x + k h)) psi(x - k h) exp(2 i p k h) h``
    on the sub-grid of spacing ``h`` (the input spacing times the integer
    stride closest to ``x_step``).  The x axis is trimmed to where
    ``|psi|^2 > support_tol * max``.

    By default the momentum axis is the symmetric full period
    ``p_m = m pi / (K h)``, ``|m| <= M``, ``K = 2M + 1``; on that axis the
    coordinate marginal is exact.  ``p_max`` keeps only ``|p| <= p_max``;
    an explicit ``p_axis`` must be symmetric about zero.
    """
    stride = max(1, int(round(x_step / psi.dx)))
    h = stride * psi.dx
    sub = psi.samples[::stride]
    xs = psi.x[::stride]
    dens = np.abs(sub) ** 2
    keep = np.nonzero(dens > support_tol * dens.max())[0]
    lo, hi = keep[0], keep[-1]
    sub = sub[lo:hi + 1]
    xs = xs[lo:hi + 1]
    n = sub.size
    m = (n - 1) // 2
    k = np.arange(-m, m + 1)
    if p_axis is None:
        p_axis = np.arange(-m, m + 1) * pi / ((2 * m + 1) * h)
        if p_max is not None:
            p_axis = p_axis[np.abs(p_axis) <= p_max]
    else:
        p_axis = np.asarray(p_axis, dtype=float)
        if not np.allclose(p_axis, -p_axis[::-1], atol=1e-12 * max(1.0, np.abs(p_axis).max())):
            raise ParameterRangeError("p_axis must be symmetric about zero")
    padded = np.concatenate([np.zeros(m, complex), sub, np.zeros(m, complex)])
    j = np.arange(n)[:, None] + m
    corr = np.conj(padded[j + k[None, :]]) * padded[j - k[None, :]]
    phase = np.exp(2j * np.outer(k * h, p_axis))
    values = (corr @ phase).real * (h / pi)
    return WignerGrid(xs.copy(), p_axis, values)


def momentum_amplitude(psi, p):
    """``phi(p) = (2 pi)^-1/2 int psi(x) exp(-i p x) dx`` at arbitrary momenta."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    x = psi.x
    out = np.empty(p.size, dtype=complex)
    for i in range(0, p.size, 256):
        blk = p[i:i + 256]
        out[i:i + 256] = np.exp(-1j * np.outer(blk, x)) @ psi.samples
    return out * psi.dx / sqrt(2 * pi)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Tabulated metric over one or two parameter axes.

    ``axes`` maps axis names to 1-D arrays in the order of ``values``'
    dimensions.  ``meta`` carries whatever is needed to re-evaluate a cell
    (template, delta_q, grid).
    """

    axes: dict
    values: np.ndarray
    metric: str
    template: GateTemplate
    meta: dict = field(default_factory=dict)


def _sweep_grid(template, gamma_max, ym_max, num_points):
    return gate_grid(template.config(gamma_max, ym_max), num_points)


def fidelity_map(template, gamma_range, ym_range, resolution=(61, 61), num_points=4096):
    """Fidelity over a (gamma, y_m) rectangle; reference cat recomputed per cell.

    Cells whose closed form cannot be evaluated (or whose outcome has no
    semiclassical branch) are NaN.
    """
    ng, ny = (resolution, resolution) if np.isscalar(resolution) else resolution
    gammas = np.linspace(*gamma_range, ng)
    yms = np.linspace(*ym_range, ny)
    grid = _sweep_grid(template, min(gammas), max(yms), num_points)
    out = np.full((ng, ny), np.nan)
    for i, g in enumerate(gammas):
        for j, y in enumerate(yms):
            try:
                out[i, j] = cat_fidelity(template.config(g, y), grid=grid)
            except CatGateError:
                pass
    return SweepResult({"gamma": gammas, "y_m": yms}, out, "fidelity", template, {"grid": grid})


def _slice_objective(template, delta_q, grid):
    def infid(g):
        y = ym_for_half_spacing(g, template.rho, template.tau, delta_q)
        return 1.0 - cat_fidelity(template.config(g, y), delta_q=delta_q, grid=grid)

    return infid


def infidelity_slice(template, delta_q=2.87, gamma_range=(0.05, 0.35), resolution=601,
                     num_points=4096):
    """``1 - F`` versus gamma with y_m tied to gamma at fixed half-spacing."""
    gammas = np.linspace(*gamma_range, resolution)
    ymax = ym_for_half_spacing(max(gammas), template.rho, template.tau, delta_q)
    grid = _sweep_grid(template, max(gammas), ymax, num_points)
    f = _slice_objective(template, delta_q, grid)
    vals = np.full(gammas.size, np.nan)
    for i, g in enumerate(gammas):
        try:
            vals[i] = f(g)
        except CatGateError:
            pass
    yms = ym_for_half_spacing(gammas, template.rho, template.tau, delta_q)
    return SweepResult(
        {"gamma": gammas},
        vals,
        "infidelity",
        template,
        {"delta_q": delta_q, "grid": grid, "y_m": yms},
    )


def find_optimal_gamma(slice_result, xtol=1e-5):
    """Refine every interior local minimum of an infidelity slice.

    Each coarse minimum ``v[i-1] > v[i] <= v[i+1]`` seeds a golden-section
    search on the bracket ``(g[i-1], g[i], g[i+1])``.

    Returns
    -------
    list of (gamma, infidelity)
        Empty when the slice has no interior minimum.
    """
    g = slice_result.axes["gamma"]
    v = np.asarray(slice_result.values)
    meta = slice_result.meta
    f = None
    if "delta_q" in meta:
        f = _slice_objective(slice_result.template, meta["delta_q"], meta["grid"])
    found = []
    for i in range(1, len(v) - 1):
        if not (np.isfinite(v[i - 1]) and np.isfinite(v[i]) and np.isfinite(v[i + 1])):
            continue
        if v[i] < v[i - 1] and v[i] <= v[i + 1]:
            if f is None:
                found.append((float(g[i]), float(v[i])))
                continue
            res = minimize_scalar(f, bracket=(g[i - 1], g[i], g[i + 1]), method="golden",
                                  tol=xtol)
            x = float(np.clip(res.x, g[i - 1], g[i + 1]))
            found.append((x, float(f(x))))
    return found


def refine_reference_cell(template, gamma_ref, delta_q=2.87, window=0.006, resolution=61,
                          num_points=4096):
    """Locate the fidelity optimum nearest ``gamma_ref`` on the fixed-spacing line.

    Returns ``(gamma, y_m, fidelity)``.  Raises :class:`CatGateError` if the
    window contains no interior optimum.
    """
    sl = infidelity_slice(template, delta_q, (gamma_ref - window, gamma_ref + window),
                          resolution, num_points)
    minima = find_optimal_gamma(sl, xtol=1e-7)
    if not minima:
        raise CatGateError(f"no fidelity optimum within {window} of gamma={gamma_ref}")
    g, infid = min(minima, key=lambda m: abs(m[0] - gamma_ref))
    return g, ym_for_half_spacing(g, template.rho, template.tau, delta_q), 1.0 - infid


def probability_curve(template, pairs, s_range=(0.02, 1.0), resolution=197, num_points=4096):
    """``P(y_m)`` versus initial squeezing at fixed (gamma, y_m) pairs.

    ``values[k, i]`` belongs to ``pairs[k]`` and ``s[i]``.
    """
    ss = np.linspace(*s_range, resolution)
    gmin = min(g for g, _ in pairs)
    ymax = max(y for _, y in pairs)
    grid = _sweep_grid(template, gmin, ymax, num_points)
    x = grid.x
    vals = np.empty((len(pairs), ss.size))
    for k, (g, y) in enumerate(pairs):
        for i, s in enumerate(ss):
            cfg = GateTemplate(template.rho, template.tau, s).config(g, y)
            vals[k, i] = np.sum(np.abs(unnormalized_closed(cfg, x)) ** 2) * grid.dx
    return SweepResult({"pair": np.arange(len(pairs)), "s": ss}, vals, "probability", template,
                       {"pairs": list(pairs), "grid": grid})


def infidelity_vs_squeezing(template, gammas, delta_q=2.87, s_range=(0.02, 1.0),
                            resolution=99, num_points=4096):
    """``1 - F`` versus initial squeezing for each gamma, y_m tied to the half-spacing."""
    ss = np.linspace(*s_range, resolution)
    ymax = max(ym_for_half_spacing(g, template.rho, template.tau, delta_q) for g in gammas)
    grid = _sweep_grid(template, min(gammas), ymax, num_points)
    vals = np.full((len(gammas), ss.size), np.nan)
    for k, g in enumerate(gammas):
        y = ym_for_half_spacing(g, template.rho, template.tau, delta_q)
        for i, s in enumerate(ss):
            cfg = GateTemplate(template.rho, template.tau, s).config(g, y)
            try:
                vals[k, i] = 1.0 - cat_fidelity(cfg, delta_q=delta_q, grid=grid)
            except CatGateError:
                pass
    return SweepResult({"gamma": np.asarray(gammas, float), "s": ss}, vals, "infidelity", template,
                       {"delta_q": delta_q, "grid": grid})


def probability_peak(curve, k=0):
    """Refined squeezing ``s`` maximising ``P`` for pair ``k`` of a probability curve."""
    ss = curve.axes["s"]
    vals = curve.values[k]
    i = int(np.argmax(vals))
    lo, hi = ss[max(i - 1, 0)], ss[min(i + 1, ss.size - 1)]
    g, y = curve.meta["pairs"][k]
    grid = curve.meta["grid"]
    t = curve.template

    def neg(s):
        cfg = GateTemplate(t.rho, t.tau, s).config(g, y)
        return -np.sum(np.abs(unnormalized_closed(cfg, grid.x)) ** 2) * grid.dx

    res = minimize_scalar(neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-7})
    return float(res.x), float(-res.fun)
