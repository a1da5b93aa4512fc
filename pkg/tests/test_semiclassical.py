from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catgate.errors import BranchError
from catgate.gate import FockGateConfig, GateConfig
from catgate.semiclassical import (
    ORIGIN,
    PhasePoint,
    copy_squeezing,
    half_spacing,
    map_cubic,
    map_fock,
    perfect_cat_from_semiclassics,
    ym_for_half_spacing,
)


def test_half_spacing_example():
    # rho = tau = 1/sqrt2, gamma = 1/3, y = 4 sqrt2: delta_q = sqrt(8) / sqrt2 = 2
    cfg = GateConfig.from_rho(1 / sqrt(2), 0.2, 1 / 3, sqrt(2) * 4.0)
    assert half_spacing(cfg) == pytest.approx(2.0, rel=1e-14)


def test_ym_example():
    assert ym_for_half_spacing(0.289, 0.5, sqrt(3) / 2, 2.87) == pytest.approx(
        3 * 0.289 * 0.5 * 2.87 ** 2 / 0.75, rel=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.01, 1.0), st.floats(0.0, 6.0))
def test_round_trip(rho, gamma, dq):
    tau = sqrt(1 - rho * rho)
    y = ym_for_half_spacing(gamma, rho, tau, dq)
    cfg = GateConfig(rho, tau, 0.2, gamma, y)
    assert abs(half_spacing(cfg) - dq) <= 1e-12 * max(1.0, dq)


def test_ym_array_and_negative():
    y = ym_for_half_spacing(np.array([0.1, 0.2]), 0.5, sqrt(3) / 2, 2.0)
    assert y.shape == (2,)
    with pytest.raises(ValueError):
        ym_for_half_spacing(0.1, 0.5, sqrt(3) / 2, -1.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(-1, 1), st.floats(0.2, 0.9))
def test_branch_momenta_equal(q1, p1, rho):
    cfg = GateConfig.from_rho(rho, 0.2, 0.2, 20.0)
    pair = map_cubic(cfg, PhasePoint(q1, p1))
    assert pair.minus.p == pair.plus.p
    assert pair.minus.q <= pair.plus.q
    assert pair.plus.p == pytest.approx((p1 - cfg.tau * cfg.y_m) / rho, rel=1e-14, abs=1e-14)


def test_cubic_origin_map():
    cfg = GateConfig.from_rho(0.5, 0.2, 0.289, 4.77)
    pair = map_cubic(cfg)
    dq = cfg.tau * sqrt(4.77 / (3 * 0.289 * 0.5))
    assert pair.plus.q == pytest.approx(dq, rel=1e-14)
    assert pair.minus.q == pytest.approx(-dq, rel=1e-14)
    assert pair.plus.p == pytest.approx(-cfg.tau * 4.77 / 0.5, rel=1e-14)
    assert copy_squeezing(cfg) == 2.0


def test_shearing_opposite_signs():
    cfg = GateConfig.from_rho(0.5, 0.2, 0.2, 3.34)
    h = 1e-6
    up = map_cubic(cfg, PhasePoint(0.0, h))
    dn = map_cubic(cfg, PhasePoint(0.0, -h))
    d_minus = (up.minus.q - dn.minus.q) / (2 * h)
    d_plus = (up.plus.q - dn.plus.q) / (2 * h)
    assert d_minus > 0 > d_plus
    assert d_minus == pytest.approx(-d_plus, rel=1e-6)
    # same along the resource momentum
    d2 = map_cubic(cfg, ORIGIN, h).plus.q - map_cubic(cfg, ORIGIN, -h).plus.q
    d2m = map_cubic(cfg, ORIGIN, h).minus.q - map_cubic(cfg, ORIGIN, -h).minus.q
    assert d2 * d2m < 0


def test_cubic_branch_error():
    cfg = GateConfig.from_rho(0.5, 0.2, 0.2, -0.1)
    with pytest.raises(BranchError):
        map_cubic(cfg)
    with pytest.raises(BranchError):
        half_spacing(cfg)
    # tangent: both branches coincide
    pair = map_cubic(cfg.with_(y_m=0.0))
    assert pair.half_spacing == 0.0


def test_fock_map_example():
    cfg = FockGateConfig.from_rho(0.5, 5, 0.0)
    pair = map_fock(cfg)
    assert pair.half_spacing == sqrt(3) / 2 * sqrt(11)
    assert pair.plus.p == 0.0 and pair.minus.p == 0.0


def test_fock_branch_error_and_shear():
    cfg = FockGateConfig.from_rho(0.5, 2, 0.0)
    with pytest.raises(BranchError):
        map_fock(cfg.__class__(cfg.rho, cfg.tau, 2, 1.2))
    h = 1e-6
    pt = PhasePoint(0.0, 0.5)
    up = map_fock(cfg, PhasePoint(0.0, 0.5 + h))
    dn = map_fock(cfg, PhasePoint(0.0, 0.5 - h))
    assert (up.plus.q - dn.plus.q) * (up.minus.q - dn.minus.q) < 0
    assert map_fock(cfg, pt).plus.p == pytest.approx(0.5 / 0.5, rel=1e-15)


def test_perfect_cat_from_semiclassics():
    spec = perfect_cat_from_semiclassics(GateConfig.from_rho(0.5, 0.2, 0.115, 1.89))
    assert spec.alpha_prime == pytest.approx(sqrt(0.75) * sqrt(1.89 / (3 * 0.115 * 0.5)))
    assert spec.alpha_dprime == pytest.approx(-sqrt(0.75) * 1.89 / 0.5)
    assert spec.s_prime == 2.0 and spec.theta == np.pi
    fspec = perfect_cat_from_semiclassics(FockGateConfig.from_rho(0.5, 5))
    assert fspec.alpha_prime == sqrt(0.75) * sqrt(11)
