"""Symbol algebra: annuli, reflection, winding, and the lattice families."""

import pytest
from mpmath import mp, mpc, mpf

from thdet.config import precision_ctx
from thdet.errors import (
    InvalidParams,
    NonzeroWinding,
    OutsideAnnulus,
    PhaseUnresolved,
    ZeroOnCircle,
)
from thdet.fourier import unit_nodes
from thdet.numerics import pairwise_sum
from thdet.symbols import (
    IsingParams,
    Symbol,
    constant,
    ising_symbols,
    log_on_circle,
    sym_product,
    sym_shift,
    tilde,
    winding_number,
)

DIGITS = 60
TOL10 = mpf("1e-50")


def test_constant_symbol_everywhere():
    with precision_ctx(DIGITS):
        one = constant(1)
        assert abs(one(mpc(0, 1)) - 1) == 0
        assert abs(one(mpf("1e6")) - 1) == 0


def test_monomial_eval():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z * z, 0, mp.inf, label="z^2")
        assert abs(f(mpf(2)) - 4) == 0


def test_annulus_enforced():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z, mpf("0.5"), mpf(2))
        with pytest.raises(OutsideAnnulus):
            f(mpf(3))
        with pytest.raises(OutsideAnnulus):
            f(mpf("0.1"))


def test_tilde_reflects_argument():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z, mpf("0.25"), mpf(4))
        g = tilde(f)
        assert abs(g(mpf(2)) - mpf("0.5")) == 0
        # The reflection is an involution pointwise (up to the rounding
        # incurred by the double reciprocal of a non-dyadic argument).
        h = tilde(g)
        for z in (mpf("0.7"), mpc("1.1", "0.3")):
            assert abs(h(z) - f(z)) < mpf("1e-55")


def test_tilde_on_monomial_mirrors_exponent_sign():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z ** 3, mpf("0.1"), mpf(10))
        g = tilde(f)
        z = mpf("1.3")
        assert abs(g(z) - z ** -3) < TOL10


def test_lattice_phi_value_at_one_fixes_branch():
    with precision_ctx(DIGITS):
        syms = ising_symbols(IsingParams(q=mpf("0.5"), coupling=mpf("0.25")))
        v = syms.phi(mpf(1))
        assert abs(v - mpf("1.5")) < TOL10
        assert abs(v.imag) < TOL10


def test_weight_ratio_reflection_inverse_on_circle(crit_syms):
    with precision_ctx(DIGITS):
        d = crit_syms.multiplier
        dt = tilde(d)
        worst = mpf(0)
        for tau in unit_nodes(64):
            worst = max(worst, abs(d(tau) * dt(tau) - 1))
        assert worst < TOL10


def test_multiplier_reflection_also_holds_decoupled():
    with precision_ctx(DIGITS):
        syms = ising_symbols(IsingParams(q=mpf("0.5"), coupling=mpf(0)))
        d = syms.multiplier
        dt = tilde(d)
        worst = max(abs(d(tau) * dt(tau) - 1) for tau in unit_nodes(64))
        assert worst < TOL10


def test_winding_of_monomial():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z * z, mpf("0.5"), mpf(2))
        assert winding_number(f, 256) == 2


def test_winding_of_raw_ratio_below_transition():
    with precision_ctx(DIGITS):
        syms = ising_symbols(IsingParams(q=mpf("0.5"), coupling=mpf("0.1")))
        assert syms.case == "below_critical"
        assert syms.raw_winding == -2
        assert winding_number(syms.raw_ratio, 256) == -2
        # Shifting by z^2 cancels the winding.
        shifted = sym_shift(syms.raw_ratio, 2)
        assert winding_number(shifted, 256) == 0
        assert winding_number(syms.multiplier, 256) == 0


def test_offsets_follow_winding():
    with precision_ctx(DIGITS):
        crit = ising_symbols(IsingParams(q=mpf("0.5"), coupling=mpf("0.25")))
        below = ising_symbols(IsingParams(q=mpf("0.5"), coupling=mpf("0.1")))
        decoupled = ising_symbols(IsingParams(q=mpf("0.5"), coupling=mpf(0)))
        assert crit.offsets == (0, 1)
        assert below.offsets == (0, 2)
        assert decoupled.offsets == (0, 2)


def test_log_on_circle_of_scaled_constant():
    with precision_ctx(DIGITS):
        f = constant(mp.e)
        samples = log_on_circle(f, 256)
        assert len(samples) == 256
        worst = max(abs(s - 1) for s in samples)
        assert worst < TOL10


def test_log_on_circle_of_exponential_returns_nodes():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: mp.exp(z), 0, mp.inf)
        samples = log_on_circle(f, 256)
        nodes = unit_nodes(256)
        worst = max(abs(s - t) for s, t in zip(samples, nodes))
        assert worst < TOL10


def test_log_on_circle_reexponentiates(crit_syms):
    with precision_ctx(DIGITS):
        f = crit_syms.phi_unit
        samples = log_on_circle(f, 64)
        nodes = unit_nodes(64)
        worst = max(abs(mp.exp(s) - f(t)) for s, t in zip(samples, nodes))
        assert worst < TOL10


def test_log_on_circle_rejects_winding():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z * z, mpf("0.5"), mpf(2))
        with pytest.raises(NonzeroWinding):
            log_on_circle(f, 256)


def test_winding_rejects_zero_on_circle():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z - 1, mpf("0.5"), mpf(2))
        with pytest.raises(ZeroOnCircle):
            winding_number(f, 256)


def test_winding_gives_up_on_unresolvable_phase():
    # Exponent 43648 has alternating bits 15..6, so on every power-of-two
    # grid from 256 through 65536 nodes the wrapped phase step stays in the
    # quarter-turn rejection band and no refinement ever certifies it.
    f = Symbol(lambda z: z ** 43648, mpf("0.5"), mpf(2))
    with pytest.raises(PhaseUnresolved):
        winding_number(f, 256)


def test_invalid_lattice_parameters():
    for q, coupling in (
        (mpf(2), mpf("0.1")),
        (mpf(0), mpf("0.1")),
        (mpf("-0.5"), mpf("0.1")),
        (mpf("0.5"), mpf(1)),
        (mpf("0.5"), mpf("-0.1")),
    ):
        with pytest.raises(InvalidParams):
            ising_symbols(IsingParams(q=q, coupling=coupling))


def test_phi_unit_reflection_symmetric(crit_syms):
    """The unit-annulus factor is invariant under z -> 1/z."""
    with precision_ctx(DIGITS):
        f = crit_syms.phi_unit
        g = tilde(f)
        worst = max(abs(f(tau) - g(tau)) for tau in unit_nodes(32))
        assert worst < TOL10


def test_sym_product_multiplies_pointwise():
    with precision_ctx(DIGITS):
        f = Symbol(lambda z: z, mpf("0.5"), mpf(2))
        g = Symbol(lambda z: z + 1, mpf("0.25"), mpf(4))
        fg = sym_product(f, g)
        z = mpf("0.9")
        assert abs(fg(z) - z * (z + 1)) == 0
        # Annulus is the intersection.
        with pytest.raises(OutsideAnnulus):
            fg(mpf(3))
