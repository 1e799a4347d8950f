"""Contour kernels, coefficient asymptotics, and the offset reduction solvers."""

import random

import pytest
from mpmath import mp, mpc, mpf

from thdet.asymptotics import (
    AsymptoticEngine,
    ContourConfig,
    MaskedMatrix,
    RHPData,
    _dmin,
    exact_h01_from_data,
    exact_h01_via_chain,
    offset00_residual,
    offset01_residual,
    offset02_residual,
    r1jk_zero,
    shifted_jump_residual,
    solve_offset00,
    solve_offset01,
    solve_offset02,
    solve_offset02_lu,
    swap_matrix,
    wsym_residual,
)
from thdet.config import precision_ctx
from thdet.determinants import norm_h
from thdet.errors import (
    ConfigError,
    DegeneratePredictor,
    GenericConditionFailed,
    GenericityFailed,
    MissingData,
)
from thdet.fourier import unit_nodes
from thdet.numerics import PrecMatrix, invert
from thdet.symbols import constant

DIGITS = 60
TOL12 = mpf("1e-48")
TOL15 = mpf("1e-45")
TOL20 = mpf("1e-40")

J0_ROWS = (
    (0, 0, 0, -1),
    (-1, 0, 0, 0),
    (0, -1, 0, 0),
    (1, 0, 1, 0),
)


# ---------------------------------------------------------------------------
# masked matrices and the reflection machinery


def test_swap_matrix_is_an_involution():
    with precision_ctx(DIGITS):
        w = swap_matrix()
        assert w.matmul(w).sub(PrecMatrix.identity(4)).max_abs() == 0


def test_masked_matrix_reports_missing_entries():
    m = MaskedMatrix("probe", {(1, 2): mpc(3)})
    assert m.has(1, 2) and not m.has(2, 1)
    assert m.get(1, 2) == mpc(3)
    with pytest.raises(MissingData) as err:
        m.get(4, 4)
    assert "probe" in str(err.value)


def test_masked_matrix_reflection_permutes_indices():
    m = MaskedMatrix("a", {(1, 2): mpc(5), (3, 4): mpc(7)})
    c = m.w_conjugate("b")
    assert c.get(2, 1) == mpc(5)
    assert c.get(4, 3) == mpc(7)
    assert not c.has(1, 2)


def test_masked_matrix_round_trip():
    with precision_ctx(DIGITS):
        full = PrecMatrix.from_rows(
            [[mpc(j * 4 + k) for k in range(4)] for j in range(4)]
        )
        m = MaskedMatrix.from_full("f", full)
        assert m.full_matrix().sub(full).max_abs() == 0


# ---------------------------------------------------------------------------
# jump reflection symmetry


def test_jump_reflection_trivial_at_one():
    with precision_ctx(DIGITS):
        one = constant(1)
        assert wsym_residual(one, one, 0, 1, mpf(1)) < mpf("1e-55")


def test_jump_reflection_critical_on_roots(crit_syms):
    with precision_ctx(DIGITS):
        for offs in ((0, 1), (0, 2)):
            worst = mpf(0)
            for tau in unit_nodes(64):
                worst = max(
                    worst,
                    wsym_residual(
                        crit_syms.phi_unit, crit_syms.weight_unit,
                        offs[0], offs[1], tau,
                    ),
                )
            assert worst < TOL15


def test_shifted_jump_factors(crit_syms):
    with precision_ctx(DIGITS):
        tau = unit_nodes(16)[3]
        res = shifted_jump_residual(
            crit_syms.phi_unit, crit_syms.multiplier, tau, 5
        )
        assert res < TOL15


# ---------------------------------------------------------------------------
# kernels and contour coefficients


def test_trivial_kernels_collapse(trivial_engine):
    with precision_ctx(DIGITS):
        z = mpf("0.3")
        gset = trivial_engine.gset
        assert abs(gset.entry((1, 2), z)) < mpf("1e-54")
        assert abs(gset.entry((1, 4), z) - 1) < mpf("1e-54")


def test_kernel_side_enforced(crit_engine):
    with precision_ctx(DIGITS):
        with pytest.raises(ConfigError):
            crit_engine.gset.entry((1, 2), mpf(3))  # inner kernel, outer point
        with pytest.raises(ConfigError):
            crit_engine.gset.entry((3, 2), mpf("0.5"))  # outer kernel, inner point


def test_kernel_internal_identity(crit_engine):
    """g23 * alpha(1/z) + alpha0 * d(1/z) * beta(z) vanishes identically."""
    with precision_ctx(DIGITS):
        gset = crit_engine.gset
        sd_a, sd_b = crit_engine.sd_alpha, crit_engine.sd_beta
        a0 = crit_engine.alpha0
        d = crit_engine.d
        worst = mpf(0)
        for j in range(16):
            z = mpf("0.6") * mp.expjpi(mpf(2 * j) / 16 + mpf("0.05"))
            lhs = gset.entry((2, 3), z) * sd_a.inner(1 / z) \
                + a0 * d(1 / z) * sd_b.inner(z)
            worst = max(worst, abs(lhs))
        assert worst < TOL15


def test_contour_coefficient_of_monomials():
    with precision_ctx(DIGITS):
        cfg = ContourConfig(mpf("0.5"), 64)
        g_in = lambda z: z ** -5
        assert abs(r1jk_zero(g_in, 5, "inner", cfg) - 1) < mpf("1e-50")
        assert abs(r1jk_zero(g_in, 3, "inner", cfg)) < mpf("1e-50")
        g_out = lambda z: z ** 4
        assert abs(r1jk_zero(g_out, 4, "outer", cfg) - 1) < mpf("1e-50")
        g_one = lambda z: mpc(1)
        assert abs(r1jk_zero(g_one, 4, "inner", cfg)) < mpf("1e-50")
        assert abs(r1jk_zero(g_one, 4, "outer", cfg)) < mpf("1e-50")


def test_contour_coefficient_is_linear(crit_engine):
    with precision_ctx(DIGITS):
        g = crit_engine.gset.callable_for((4, 3))
        cfg = ContourConfig(crit_engine.r_star, 256)
        c1 = r1jk_zero(g, 6, "inner", cfg)
        c2 = r1jk_zero(lambda z: 2 * g(z), 6, "inner", cfg)
        assert abs(c2 - 2 * c1) < mpf("1e-50") * max(1, abs(c1))


def test_coefficients_radius_independent(crit_engine):
    with precision_ctx(DIGITS):
        a = crit_engine.r1((3, 2), 10, radius=mpf("0.6"))
        b = crit_engine.r1((3, 2), 10, radius=mpf("0.7"))
        assert abs(a - b) < TOL20


def test_radius_validated(crit_engine):
    with pytest.raises(ConfigError):
        crit_engine.r1((3, 2), 4, radius=mpf("0.2"))
    with pytest.raises(ConfigError):
        crit_engine.r1((3, 2), 4, radius=mpf("1.1"))


# ---------------------------------------------------------------------------
# energy-style combinations and predictors


def test_energy_trivial_is_zero(trivial_engine):
    with precision_ctx(DIGITS):
        assert abs(trivial_engine.energy_cal(5)) < mpf("1e-54")


def test_energy_decays_geometrically(crit_engine):
    from thdet.ising import fit_geometric_ratio

    with precision_ctx(DIGITS):
        points = [(n, abs(crit_engine.energy_cal(n))) for n in range(6, 17)]
        ratio = fit_geometric_ratio(points)
        assert ratio is not None and ratio < 1


def test_predict_h11_trivial_is_degenerate(trivial_engine):
    with pytest.raises(DegeneratePredictor):
        trivial_engine.predict_h11(5)


def test_predict_h11_error_shrinks(crit_engine, crit_sys11):
    with precision_ctx(DIGITS):
        def rel(n):
            exact = norm_h(crit_sys11, n)
            return abs(crit_engine.predict_h11(n + 1) - exact) / abs(exact)

        assert rel(10) < rel(6) / 2


def test_predict_h11_contour_choice_invisible(crit_syms):
    with precision_ctx(DIGITS):
        values = []
        for r_star in (mpf("0.6"), mpf("0.7")):
            eng = AsymptoticEngine(
                crit_syms.phi_unit, crit_syms.multiplier,
                digits=DIGITS, m_order=64, nodes=256, r_star=r_star,
            )
            values.append(eng.predict_h11(8))
        assert abs(values[0] - values[1]) < TOL20


def test_monitors_trivial_vanish(trivial_engine):
    with precision_ctx(DIGITS):
        m = trivial_engine.monitors(6)
        assert max(m) < mpf("1e-54")
        with pytest.raises(GenericityFailed):
            trivial_engine.check_genericity(6)


def test_monitors_critical_above_threshold(crit_engine):
    with precision_ctx(DIGITS):
        crit_engine.check_genericity(12)  # must not raise
        assert min(crit_engine.monitors(12)) > mpf("1e-30")


def test_predict_h01_trivial_fails_genericity(trivial_engine):
    with pytest.raises(GenericityFailed):
        trivial_engine.predict_h01(6)


def test_predict_h01_critical_regression_pins(crit_engine):
    """Frozen values of the first-order closed-form predictor at these exact
    engine settings; they pin the sign and branch conventions rather than the
    predictor's (limited) accuracy."""
    with precision_ctx(DIGITS):
        v9 = crit_engine.predict_h01(9)
        v17 = crit_engine.predict_h01(17)
        assert abs(v9 - mpf("-0.9760997205")) < mpf("1e-6")
        assert abs(v17 - mpf("-0.9870676620")) < mpf("1e-6")
        assert abs(v17.imag) < mpf("1e-30") * abs(v17)


def test_normalization_real_positive(crit_engine):
    with precision_ctx(DIGITS):
        a0 = crit_engine.alpha0
        assert a0.real > 0
        assert abs(a0.imag) < mpf("1e-50")


def test_model_route_predicts_shifted_norms(exp_engine, exp_sys01):
    with precision_ctx(DIGITS):
        n = 8
        exact = norm_h(exp_sys01, n)
        predicted = exp_engine.predict_h01_model(n + 1)
        assert abs(predicted - exact) / abs(exact) < mpf("1e-6")


def test_model_jump_residual_small(crit_engine):
    with precision_ctx(DIGITS):
        worst = mpf(0)
        for tau in unit_nodes(16):
            worst = max(worst, crit_engine.lambda_jump_residual(tau))
        assert worst < mpf("1e-30")


# ---------------------------------------------------------------------------
# first-order data


def test_p_trivial_is_permutation_form(trivial_engine):
    with precision_ctx(DIGITS):
        p = trivial_engine.p_asymptotic(6)
        worst = mpf(0)
        for j in range(4):
            for k in range(4):
                worst = max(worst, abs(p.get(j, k) - J0_ROWS[j][k]))
        assert worst < mpf("1e-50")


def test_p_corner_entry_is_always_one(crit_engine, exp_engine):
    with precision_ctx(DIGITS):
        for engine in (crit_engine, exp_engine):
            assert engine.p_asymptotic(8).get(3, 2) == mpc(1)


def test_p_reflection_deviation_shrinks(crit_engine):
    """W P(n)^{-1} W approaches P(n) as n grows."""
    with precision_ctx(DIGITS):
        w = swap_matrix()

        def dev(n):
            p = crit_engine.p_asymptotic(n)
            return w.matmul(invert(p)).matmul(w).sub(p).max_abs()

        assert dev(12) < dev(6)


def test_first_order_matrix_entries(crit_engine):
    with precision_ctx(DIGITS):
        n = 8
        x1 = crit_engine.x1_inf_asymptotic(n)
        assert x1.get(1, 3) == mpc(0)
        assert x1.get(2, 4) == mpc(0)
        assert x1.get(3, 1) == mpc(0)
        # Inner entries carry coefficient order n+1, outer entries n-1.
        assert x1.get(1, 2) == -crit_engine.r1((1, 2), n + 1)
        assert x1.get(3, 2) == -crit_engine.r1((3, 2), n - 1)
        assert x1.get(1, 1) == -crit_engine.sd_alpha.log_coeff(-1)
        assert x1.get(3, 3) == crit_engine.sd_alpha.log_coeff(1)
        with pytest.raises(MissingData):
            x1.get(2, 2)


def test_rhp_data_seeding(exp_engine):
    with precision_ctx(DIGITS):
        plain = exp_engine.rhp_data(6)
        with pytest.raises(MissingData):
            solve_offset00(plain)
        seeded = exp_engine.rhp_data(6, seed=11)
        assert seeded.x1_inf.has(2, 2)
        assert seeded.x2_inf.has(3, 4)
        # Reflection of the circle-side matrix mirrors the seeded values.
        assert seeded.x1_circ.get(1, 1) == seeded.x1_inf.get(2, 2)


# ---------------------------------------------------------------------------
# offset reduction solvers


def _random_entry(rng):
    return mpc(mpf(rng.uniform(0.2, 1.0)), mpf(rng.uniform(-0.5, 0.5)))


def _full_masked(name, rng):
    return MaskedMatrix(
        name,
        {
            (j, k): _random_entry(rng)
            for j in range(1, 5)
            for k in range(1, 5)
        },
    )


def _synthetic_data(seed):
    rng = random.Random(seed)
    p = _full_masked("p", rng)
    x1 = _full_masked("x1_inf", rng)
    x2 = _full_masked("x2_inf", rng)
    return RHPData(6, p, x1, x2, x1.w_conjugate("x1_circ"), digits=DIGITS)


def test_offset01_plugback_on_derived_data(exp_engine):
    with precision_ctx(DIGITS):
        data = exp_engine.rhp_data(6)
        result = solve_offset01(data)
        assert offset01_residual(data, result) < TOL12


def test_offset01_plugback_on_synthetic_data():
    with precision_ctx(DIGITS):
        data = _synthetic_data(205)
        result = solve_offset01(data)
        assert offset01_residual(data, result) < TOL12


def test_offset01_correction_is_degree_one_diagonal():
    with precision_ctx(DIGITS):
        data = _synthetic_data(205)
        result = solve_offset01(data)
        r0 = result.r_at(mpf(0))
        r7 = result.r_at(mpf(7))
        assert r7.get(0, 0) - r0.get(0, 0) == mpc(7)
        assert r7.get(2, 2) - r0.get(2, 2) == mpc(7)
        assert r7.get(1, 1) == mpc(1)
        assert r7.get(3, 3) == mpc(1)
        assert r7.get(1, 3) == mpc(0)


def test_offset01_trivial_data_degenerate(trivial_engine):
    with precision_ctx(DIGITS):
        with pytest.raises(GenericConditionFailed):
            solve_offset01(trivial_engine.rhp_data(6))


def test_offset00_plugback(exp_engine):
    with precision_ctx(DIGITS):
        data = exp_engine.rhp_data(6, seed=11)
        result = solve_offset00(data)
        assert offset00_residual(data, result) < TOL12
        synthetic = _synthetic_data(117)
        result2 = solve_offset00(synthetic)
        assert offset00_residual(synthetic, result2) < TOL12


def test_offset00_decoupled_block():
    """When both cross couplings vanish and the pivot is 1, the hatted
    corner solves to exactly 1 and its partner to exactly 0."""
    with precision_ctx(DIGITS):
        rng = random.Random(40)
        p = _full_masked("p", rng).with_entries({(3, 3): mpc(1)})
        x1 = _full_masked("x1_inf", rng).with_entries({(3, 4): mpc(0)})
        x2 = _full_masked("x2_inf", rng).with_entries({(3, 4): mpc(0)})
        data = RHPData(6, p, x1, x2, x1.w_conjugate("x1_circ"), digits=DIGITS)
        result = solve_offset00(data)
        assert abs(result.yhat44 - 1) < mpf("1e-50")
        assert abs(result.y43) < mpf("1e-50")


def test_offset02_plugback_and_lu_cross_check(exp_engine):
    with precision_ctx(DIGITS):
        for data in (exp_engine.rhp_data(6, seed=11), _synthetic_data(88)):
            result = solve_offset02(data)
            assert offset02_residual(data, result) < TOL12
            lu = solve_offset02_lu(data)
            worst = mpf(0)
            for j, column in result.columns.items():
                for value, ref in zip(column, lu[j]):
                    worst = max(worst, abs(value - ref) / max(1, abs(value)))
            assert worst < TOL12


def test_offset02_zero_rhs_maps_to_zero():
    with precision_ctx(DIGITS):
        data = _synthetic_data(88)
        result = solve_offset02(data)
        out = result.closed_form.apply((mpc(0), mpc(0), mpc(0), mpc(0)))
        assert all(v == mpc(0) for v in out)


def test_minor_antisymmetry():
    with precision_ctx(DIGITS):
        rng = random.Random(3)
        p = _full_masked("p", rng)
        assert _dmin(p, 1, 2, 3, 4) == -_dmin(p, 3, 2, 1, 4)
        assert _dmin(p, 1, 2, 3, 4) == -_dmin(p, 1, 4, 3, 2)
        assert _dmin(p, 1, 2, 1, 4) == mpc(0) - _dmin(p, 1, 4, 1, 2)


def test_exact_norm_reduction_routes_agree():
    """Two independent eliminations of the same 4x4 system must coincide."""
    with precision_ctx(DIGITS):
        data = _synthetic_data(61)
        direct = exact_h01_from_data(data)
        chained = exact_h01_via_chain(data)
        assert abs(direct - chained) < TOL15 * max(1, abs(direct))


def test_exact_norm_reduction_on_derived_data(exp_engine):
    with precision_ctx(DIGITS):
        data = exp_engine.rhp_data(8)
        direct = exact_h01_from_data(data)
        chained = exact_h01_via_chain(data)
        assert abs(direct - chained) < TOL15 * max(1, abs(direct))


def test_exact_norm_reduction_trivial_degenerate(trivial_engine):
    with precision_ctx(DIGITS):
        with pytest.raises(GenericConditionFailed):
            exact_h01_from_data(trivial_engine.rhp_data(6))
