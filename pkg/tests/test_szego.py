"""Multiplicative splits, the scalar Cauchy kernel, and the model solution."""

import pytest
from mpmath import mp, mpc, mpf

from thdet.config import precision_ctx
from thdet.errors import ModelNotFactorizable, OnCircle
from thdet.fourier import unit_nodes
from thdet.numerics import PrecMatrix, det_lu
from thdet.symbols import Symbol, constant
from thdet.szego import (
    build_rho_kernel,
    c_rho,
    check_unit_reflection,
    lambda_exterior_closed_form,
    lambda_jump_residual,
    lambda_model,
    lambda_model_sided,
    model_jump_matrix,
    szego_split,
)

DIGITS = 60
TOL20 = mpf("1e-40")

# Exact interior model solution for the pair phi = d = 1: a single
# permutation-with-signs matrix (the scalar kernel contributes c = -1).
J0_ROWS = (
    (0, 0, 0, -1),
    (-1, 0, 0, 0),
    (0, -1, 0, 0),
    (1, 0, 1, 0),
)


def _trivial_splits():
    one = constant(1)
    sd = szego_split(one, 16, 64)
    return sd, sd


def _matrix_close(m, rows, tol):
    worst = mpf(0)
    for j in range(4):
        for k in range(4):
            worst = max(worst, abs(m.get(j, k) - rows[j][k]))
    return worst < tol


def test_trivial_split_is_all_ones():
    with precision_ctx(DIGITS):
        sd, _ = _trivial_splits()
        assert abs(sd.alpha0 - 1) < mpf("1e-55")
        assert abs(sd.inner(mpf("0.3")) - 1) < mpf("1e-55")
        assert abs(sd.outer(mpf(3)) - 1) < mpf("1e-55")
        for k in range(-16, 17):
            assert abs(sd.log_coeff(k)) < mpf("1e-55")


def test_exponential_splits_into_itself_and_one():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: mp.exp(z), 0, mp.inf)
        sd = szego_split(f, 64, 256)
        for z in (mpf("0.5"), mpc(0, "0.2"), mpc("-0.3", "0.1")):
            assert abs(sd.inner(z) - mp.exp(z)) < mpf("1e-50")
        for z in (mpf(3), mpc(0, 5)):
            assert abs(sd.outer(z) - 1) < mpf("1e-50")


def test_boundary_product_identity(crit_syms):
    """On the circle the inner factor equals outer factor times the symbol."""
    with precision_ctx(DIGITS):
        sd = szego_split(crit_syms.phi_unit, 128, 512)
        tail = abs(sd.log_coeff(128)) + abs(sd.log_coeff(-128))
        tol = TOL20 + 100 * tail
        worst = mpf(0)
        for tau in unit_nodes(64):
            worst = max(
                worst, abs(sd.inner(tau) - sd.outer(tau) * crit_syms.phi_unit(tau))
            )
        assert worst < tol


def test_alpha0_is_geometric_mean(crit_syms):
    from thdet.symbols import log_on_circle

    with precision_ctx(DIGITS):
        sd = szego_split(crit_syms.phi_unit, 64, 256)
        samples = log_on_circle(crit_syms.phi_unit, 256)
        mean = sum(samples) / 256
        assert abs(sd.alpha0 - mp.exp(mean)) < mpf("1e-50") * abs(sd.alpha0)


def test_scalar_kernel_trivial_values():
    with precision_ctx(DIGITS):
        sda, sdb = _trivial_splits()
        kernel = build_rho_kernel(sda, sdb, 16, 64)
        assert abs(c_rho(sda, sdb, mpf("0.3"), kernel) + 1) < mpf("1e-54")
        assert abs(c_rho(sda, sdb, mpf(0), kernel) + 1) < mpf("1e-54")
        assert abs(c_rho(sda, sdb, mpf(3), kernel)) < mpf("1e-54")
        with pytest.raises(OnCircle):
            c_rho(sda, sdb, mpc(0, 1), kernel)


def test_scalar_kernel_critical_refinement(crit_engine, crit_syms):
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        k1 = build_rho_kernel(sd_a, sd_b, 64, 256)
        sd_a2 = szego_split(crit_syms.phi_unit, 128, 512)
        sd_b2 = szego_split(crit_syms.multiplier, 128, 512)
        k2 = build_rho_kernel(sd_a2, sd_b2, 128, 512)
        z = mpc(0, "0.5")
        assert abs(k1.interior(z) - k2.interior(z)) < TOL20


def test_additive_boundary_decomposition(crit_syms):
    """interior - exterior recovers minus the kernel itself on the circle."""
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        kernel = build_rho_kernel(sd_a, sd_b, 64, 256)
        worst = mpf(0)
        for tau in unit_nodes(16):
            lhs = kernel.interior(tau) - kernel.exterior(tau)
            worst = max(worst, abs(lhs + kernel.value(tau)))
        assert worst < mpf("1e-50")


def test_model_far_field_is_identity(crit_syms):
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        kernel = build_rho_kernel(sd_a, sd_b, 64, 256)
        z = mpf("1e6")
        lam = lambda_model(sd_a, sd_b, kernel.exterior(z), z)
        dev = lam.sub(PrecMatrix.identity(4)).max_abs()
        assert dev < mpf("1e-5")


def test_model_trivial_plug_in():
    with precision_ctx(DIGITS):
        sda, sdb = _trivial_splits()
        kernel = build_rho_kernel(sda, sdb, 16, 64)
        z_in = mpf("0.5")
        lam_in = lambda_model(sda, sdb, kernel.interior(z_in), z_in)
        assert _matrix_close(lam_in, J0_ROWS, mpf("1e-54"))
        z_out = mpf(2)
        lam_out = lambda_model(sda, sdb, kernel.exterior(z_out), z_out)
        eye = tuple(tuple(int(j == k) for k in range(4)) for j in range(4))
        assert _matrix_close(lam_out, eye, mpf("1e-54"))


def test_model_determinant_constant_on_each_side(crit_syms):
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        kernel = build_rho_kernel(sd_a, sd_b, 64, 256)
        interior_pts = [mpf("0.4"), mpc(0, "0.6"), mpc("-0.5", "0.2"), mpf("-0.7")]
        exterior_pts = [mpf(2), mpc(0, 3), mpc("-1.5", "0.5"), mpf("-4")]
        for pts, side in ((interior_pts, "interior"), (exterior_pts, "exterior")):
            dets = []
            for z in pts:
                c = kernel.interior(z) if side == "interior" else kernel.exterior(z)
                dets.append(det_lu(lambda_model_sided(sd_a, sd_b, c, z, side)))
            spread = max(abs(d - dets[0]) for d in dets)
            assert spread < TOL20 * max(1, abs(dets[0]))


def test_exterior_matches_closed_product_form(crit_syms):
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        kernel = build_rho_kernel(sd_a, sd_b, 64, 256)
        for z in (mpf(3), mpc("1.5", "0.5")):
            c = kernel.exterior(z)
            assembled = lambda_model_sided(sd_a, sd_b, c, z, "exterior")
            oracle = lambda_exterior_closed_form(sd_a, sd_b, c, z)
            assert assembled.sub(oracle).max_abs() < mpf("1e-50")


def test_jump_residual_trivial_at_one():
    with precision_ctx(DIGITS):
        sda, sdb = _trivial_splits()
        kernel = build_rho_kernel(sda, sdb, 16, 64)
        one = constant(1)
        res = lambda_jump_residual(sda, sdb, kernel, one, one, mpf(1))
        assert res < TOL20


def test_jump_residual_critical_on_roots(crit_syms):
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 128, 512)
        sd_b = szego_split(crit_syms.multiplier, 128, 512)
        kernel = build_rho_kernel(sd_a, sd_b, 128, 512)
        worst = mpf(0)
        for tau in unit_nodes(64):
            worst = max(
                worst,
                lambda_jump_residual(
                    sd_a, sd_b, kernel, crit_syms.phi_unit, crit_syms.multiplier, tau
                ),
            )
        assert worst < mpf("1e-30")


def test_swapped_sides_violate_the_jump(crit_syms):
    """Negative control: multiplying the jump on the wrong side is O(1)."""
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        kernel = build_rho_kernel(sd_a, sd_b, 64, 256)
        tau = unit_nodes(64)[5]
        lam_in = lambda_model_sided(sd_a, sd_b, kernel.interior(tau), tau, "interior")
        lam_out = lambda_model_sided(sd_a, sd_b, kernel.exterior(tau), tau, "exterior")
        jump = model_jump_matrix(crit_syms.phi_unit, crit_syms.multiplier, tau)
        wrong = lam_out.sub(lam_in.matmul(jump)).max_abs()
        assert wrong > mpf("1e-2")


def test_reflection_guard():
    with precision_ctx(DIGITS):
        bad = Symbol(lambda z: 2 * z, mpf("0.25"), mpf(4))
        with pytest.raises(ModelNotFactorizable):
            check_unit_reflection(bad)


def test_reflection_check_wired_into_lambda_model(crit_syms):
    with precision_ctx(DIGITS):
        sd_a = szego_split(crit_syms.phi_unit, 64, 256)
        sd_b = szego_split(crit_syms.multiplier, 64, 256)
        kernel = build_rho_kernel(sd_a, sd_b, 64, 256)
        z = mpf("0.5")
        lam = lambda_model(
            sd_a, sd_b, kernel.interior(z), z, d=crit_syms.multiplier
        )
        assert lam.rows == 4
        bad = Symbol(lambda z: 2 * z, mpf("0.25"), mpf(4))
        with pytest.raises(ModelNotFactorizable):
            lambda_model(sd_a, sd_b, kernel.interior(z), z, d=bad)
        with pytest.raises(OnCircle):
            lambda_model(sd_a, sd_b, kernel.interior(z), mpc(0, 1))
