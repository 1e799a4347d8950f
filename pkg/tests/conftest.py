"""Shared fixtures: symbol families, engines, and determinant systems.

Everything here runs at a reduced working precision (60 digits, truncation
order 64, 256 quadrature nodes) so the whole unit suite stays fast; the
acceptance tests build their own high-precision objects where a criterion
demands it.
"""

import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

from thdet.asymptotics import AsymptoticEngine
from thdet.determinants import THSystem
from thdet.ising import th_system
from thdet.symbols import IsingParams, Symbol, constant, ising_symbols, sym_product

settings.register_profile(
    "ci",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

DIGITS = 60
M_ORDER = 64
NODES = 256


def make_exp_phi():
    return Symbol(lambda z: mp.exp(z), 0, mp.inf, label="exp(z)")


def make_exp_ratio():
    t = mp.mpf("0.3")
    return Symbol(lambda z: mp.exp(t * (z - 1 / z)), 0, mp.inf, label="exp-ratio")


@pytest.fixture(scope="session")
def crit_syms():
    """Square-lattice family tuned so the weight ratio has winding zero
    after a single index shift (offsets (0, 1))."""
    return ising_symbols(IsingParams(q=mp.mpf("0.5"), coupling=mp.mpf("0.25")))


@pytest.fixture(scope="session")
def exp_phi():
    return make_exp_phi()


@pytest.fixture(scope="session")
def exp_ratio():
    return make_exp_ratio()


@pytest.fixture(scope="session")
def exp_weight(exp_phi, exp_ratio):
    return sym_product(exp_ratio, exp_phi, label="exp-weight")


@pytest.fixture(scope="session")
def crit_engine(crit_syms):
    return AsymptoticEngine(
        crit_syms.phi_unit, crit_syms.multiplier,
        digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )


@pytest.fixture(scope="session")
def exp_engine(exp_phi, exp_ratio):
    return AsymptoticEngine(
        exp_phi, exp_ratio, digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )


@pytest.fixture(scope="session")
def trivial_engine():
    return AsymptoticEngine(
        constant(1), constant(1), digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )


@pytest.fixture(scope="session")
def crit_sys01(crit_syms):
    return th_system(crit_syms, digits=DIGITS, m_order=M_ORDER, nodes=NODES)


@pytest.fixture(scope="session")
def crit_sys11(crit_syms):
    return THSystem(
        phi=crit_syms.phi_unit, weight=crit_syms.weight_unit,
        toeplitz_offset=1, hankel_offset=1,
        digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )


@pytest.fixture(scope="session")
def exp_sys01(exp_phi, exp_weight):
    return THSystem(
        phi=exp_phi, weight=exp_weight, toeplitz_offset=0, hankel_offset=1,
        digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )


@pytest.fixture(scope="session")
def trivial_sys_w1():
    """phi = 1, weight = 1 with a unit index shift: the shifted weight
    coefficients all vanish, so every determinant equals 1."""
    return THSystem(
        phi=constant(1), weight=constant(1), toeplitz_offset=0, hankel_offset=1,
        digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )


@pytest.fixture(scope="session")
def trivial_sys_w0():
    return THSystem(
        phi=constant(1), weight=constant(0), toeplitz_offset=0, hankel_offset=0,
        digits=DIGITS, m_order=M_ORDER, nodes=NODES,
    )
