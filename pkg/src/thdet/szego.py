"""Multiplicative splits on the circle and the explicit model factorization.

A nonvanishing, winding-zero symbol f splits as f = inner / outer on |z| = 1,
where inner(z) = exp(sum_{k>=0} c_k z^k) is analytic inside and
outer(z) = exp(-sum_{k>=1} c_{-k} z^{-k}) is analytic outside, c_k being the
Fourier coefficients of a continuous log f. From the splits of a symbol pair
this module builds the scalar kernel rho, its one-sided Cauchy transforms,
and the explicit piecewise-analytic 4x4 matrix that solves the associated
model jump problem exactly when the weight ratio d satisfies d(z) d(1/z) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .config import (
    DEFAULT_NODES,
    DEFAULT_TRUNC_ORDER,
    precision_ctx,
    tol,
    validate_quadrature,
)
from .errors import ModelNotFactorizable, OnCircle, OutsideAnnulus
from .fourier import LaurentSeries, series_from_samples, unit_nodes
from .numerics import PrecMatrix, to_prec
from .symbols import Symbol, log_on_circle


@dataclass(frozen=True)
class SzegoSplit:
    """Inner/outer factorization data of one symbol.

    `log_series` holds the Fourier coefficients of the continuous logarithm;
    `alpha0` = inner(0) = exp(c_0). The inner factor converges for
    |z| < r_o, the outer factor for |z| > r_i, where (r_i, r_o) is the
    symbol's annulus.
    """

    log_series: LaurentSeries
    alpha0: mpc
    r_i: object
    r_o: object
    label: str = ""

    def log_coeff(self, k: int) -> mpc:
        return self.log_series.coeff(k)

    def inner(self, z) -> mpc:
        zz = to_prec(z)
        if not abs(zz) < mp.mpf(self.r_o):
            raise OutsideAnnulus(
                f"inner factor needs |z| < {mp.nstr(mp.mpf(self.r_o), 8)}, "
                f"got |z| = {mp.nstr(abs(zz), 8)}"
            )
        m = self.log_series.m_order
        acc = mpc(0)
        for k in range(m, -1, -1):  # c_M .. c_0
            acc = acc * zz + self.log_series.coeff(k)
        return mp.exp(acc)

    def outer(self, z) -> mpc:
        zz = to_prec(z)
        if not abs(zz) > mp.mpf(self.r_i):
            raise OutsideAnnulus(
                f"outer factor needs |z| > {mp.nstr(mp.mpf(self.r_i), 8)}, "
                f"got |z| = {mp.nstr(abs(zz), 8)}"
            )
        m = self.log_series.m_order
        inv = 1 / zz
        acc = mpc(0)
        for k in range(m, 0, -1):  # c_{-M} .. c_{-1}
            acc = acc * inv + self.log_series.coeff(-k)
        return mp.exp(-acc * inv)


def szego_split(f: Symbol, m_order: int = None, nodes: int = None) -> SzegoSplit:
    """Split a nonvanishing winding-zero symbol into inner/outer factors."""
    m_order = DEFAULT_TRUNC_ORDER if m_order is None else m_order
    nodes = DEFAULT_NODES if nodes is None else nodes
    validate_quadrature(m_order, nodes)
    logs = log_on_circle(f, nodes)
    series = series_from_samples(
        logs, m_order, radius=1, valid_r_i=f.r_i, valid_r_o=f.r_o
    )
    return SzegoSplit(
        log_series=series,
        alpha0=mp.exp(series.coeff(0)),
        r_i=mp.mpf(f.r_i),
        r_o=mp.mpf(f.r_o),
        label=f.label,
    )


@dataclass(frozen=True)
class RhoKernel:
    """The scalar kernel rho(tau) = 1 / (beta_out beta_in alpha_in~ alpha_in)
    as a Laurent series, with one-sided Cauchy transforms.

    interior(z) = -sum_{k>=0} rho_k z^k, exterior(z) = sum_{k<=-1} rho_k z^k;
    on the circle they differ by the kernel itself:
    interior(tau) - exterior(tau) = -rho(tau).
    """

    series: LaurentSeries

    def value(self, tau) -> mpc:
        m = self.series.m_order
        zz = to_prec(tau)
        acc_pos = mpc(0)
        for k in range(m, -1, -1):
            acc_pos = acc_pos * zz + self.series.coeff(k)
        inv = 1 / zz
        acc_neg = mpc(0)
        for k in range(m, 0, -1):
            acc_neg = acc_neg * inv + self.series.coeff(-k)
        return acc_pos + acc_neg * inv

    def interior(self, z) -> mpc:
        zz = to_prec(z)
        m = self.series.m_order
        acc = mpc(0)
        for k in range(m, -1, -1):
            acc = acc * zz + self.series.coeff(k)
        return -acc

    def exterior(self, z) -> mpc:
        zz = to_prec(z)
        m = self.series.m_order
        inv = 1 / zz
        acc = mpc(0)
        for k in range(m, 0, -1):
            acc = acc * inv + self.series.coeff(-k)
        return acc * inv


_RHO_CACHE: dict = {}


def build_rho_kernel(sd_alpha: SzegoSplit, sd_beta: SzegoSplit,
                     m_order: int = None, nodes: int = None) -> RhoKernel:
    """Sample rho on the unit circle and store its Laurent coefficients."""
    m_order = DEFAULT_TRUNC_ORDER if m_order is None else m_order
    nodes = DEFAULT_NODES if nodes is None else nodes
    key = (id(sd_alpha), id(sd_beta), m_order, nodes, mp.dps)
    cached = _RHO_CACHE.get(key)
    if cached is not None:
        return cached
    validate_quadrature(m_order, nodes)
    pts = unit_nodes(nodes)
    samples = []
    for tau in pts:
        samples.append(
            1
            / (
                sd_beta.outer(tau)
                * sd_beta.inner(tau)
                * sd_alpha.inner(1 / tau)
                * sd_alpha.inner(tau)
            )
        )
    r_i = max(mp.mpf(sd_beta.r_i), 1 / mp.mpf(sd_alpha.r_o))
    r_o = min(mp.mpf(sd_beta.r_o), mp.mpf(sd_alpha.r_o))
    kernel = RhoKernel(
        series_from_samples(samples, m_order, radius=1,
                            valid_r_i=r_i, valid_r_o=r_o)
    )
    _RHO_CACHE[key] = kernel
    return kernel


def c_rho(sd_alpha: SzegoSplit, sd_beta: SzegoSplit, z,
          kernel: RhoKernel = None) -> mpc:
    """One-sided Cauchy transform of rho at z, chosen by |z| vs 1.

    Points within 10^{-dps/2} of the unit circle are ambiguous and rejected;
    use the kernel's interior/exterior methods directly for boundary values.
    """
    if kernel is None:
        kernel = build_rho_kernel(sd_alpha, sd_beta)
    zz = to_prec(z)
    az = abs(zz)
    if abs(az - 1) < mpf(10) ** (-(mp.dps // 2)):
        raise OnCircle(
            "z lies on (or indistinguishably near) the unit circle; "
            "evaluate a one-sided boundary value instead"
        )
    return kernel.interior(zz) if az < 1 else kernel.exterior(zz)


def check_unit_reflection(d: Symbol, nodes: int = 256) -> mpf:
    """Largest deviation of d(tau) d(1/tau) from 1 over circle nodes.

    Raises ModelNotFactorizable beyond the working-precision threshold: the
    model jump problem is solved by the explicit product only for weight
    ratios with this reflection symmetry.
    """
    pts = unit_nodes(nodes)
    worst = mpf(0)
    for tau in pts:
        dev = abs(to_prec(d.fn(tau)) * to_prec(d.fn(1 / tau)) - 1)
        if dev > worst:
            worst = dev
    if worst > tol(mp.dps, 20):
        raise ModelNotFactorizable(
            f"max |d(z) d(1/z) - 1| = {mp.nstr(worst, 8)} over {nodes} nodes "
            f"exceeds {mp.nstr(tol(mp.dps, 20), 3)}"
        )
    return worst


def _assemble(alpha0, case_rows, c_val):
    working = [list(r) for r in case_rows]
    working[1] = [working[1][j] + c_val * working[0][j] for j in range(4)]
    return PrecMatrix.from_rows(
        [
            working[3],
            working[0],
            [x / alpha0 for x in working[2]],
            [alpha0 * x for x in working[1]],
        ]
    )


def lambda_model_sided(sd_alpha: SzegoSplit, sd_beta: SzegoSplit,
                       c_rho_eval, z, side: str) -> PrecMatrix:
    """The model solution evaluated on a chosen side ('interior'/'exterior').

    `c_rho_eval` must be the matching one-sided Cauchy transform value at z.
    """
    zz = to_prec(z)
    zero = mpc(0)
    c_val = to_prec(c_rho_eval)
    alpha0 = sd_alpha.alpha0
    if side == "interior":
        a = sd_alpha.inner(zz)
        b = sd_beta.inner(zz)
        at = sd_alpha.outer(1 / zz)
        case_rows = [
            [-b, zero, zero, zero],
            [zero, zero, 1 / (at * b * a), zero],
            [zero, -at, zero, zero],
            [zero, zero, zero, -a],
        ]
    elif side == "exterior":
        a = sd_alpha.outer(zz)
        b = sd_beta.outer(zz)
        at = sd_alpha.inner(1 / zz)
        case_rows = [
            [zero, b, zero, zero],
            [zero, zero, zero, 1 / (b * at * a)],
            [zero, zero, at, zero],
            [a, zero, zero, zero],
        ]
    else:
        raise ValueError(f"side must be 'interior' or 'exterior', got {side!r}")
    return _assemble(alpha0, case_rows, c_val)


def lambda_model(sd_alpha: SzegoSplit, sd_beta: SzegoSplit, c_rho_eval, z,
                 d: Symbol = None, nodes: int = 256) -> PrecMatrix:
    """The model solution at z, side chosen by |z| vs 1.

    When the weight ratio `d` is supplied, its reflection symmetry
    d(z) d(1/z) = 1 is verified first (ModelNotFactorizable on failure).
    """
    if d is not None:
        check_unit_reflection(d, nodes)
    zz = to_prec(z)
    az = abs(zz)
    if abs(az - 1) < mpf(10) ** (-(mp.dps // 2)):
        raise OnCircle(
            "z lies on the unit circle; use lambda_model_sided for "
            "boundary values"
        )
    side = "interior" if az < 1 else "exterior"
    return lambda_model_sided(sd_alpha, sd_beta, c_rho_eval, zz, side)


def lambda_exterior_closed_form(sd_alpha: SzegoSplit, sd_beta: SzegoSplit,
                                c_rho_eval, z) -> PrecMatrix:
    """Independent closed product form of the exterior model solution.

    diag(alpha, beta, alpha~/alpha0, alpha0/(alpha~ alpha beta)) plus the
    single off-diagonal entry alpha0 * beta * C_rho at (4, 2); used as a
    cross-check oracle against the assembled exterior solution.
    """
    zz = to_prec(z)
    a = sd_alpha.outer(zz)
    b = sd_beta.outer(zz)
    at = sd_alpha.inner(1 / zz)
    alpha0 = sd_alpha.alpha0
    c_val = to_prec(c_rho_eval)
    zero = mpc(0)
    return PrecMatrix.from_rows(
        [
            [a, zero, zero, zero],
            [zero, b, zero, zero],
            [zero, zero, at / alpha0, zero],
            [zero, alpha0 * b * c_val, zero, alpha0 / (at * a * b)],
        ]
    )


def model_jump_matrix(phi: Symbol, d: Symbol, tau) -> PrecMatrix:
    """The 4x4 model jump matrix at a circle point tau.

    Built from phi, phi(1/.), the weight w = d * phi and its reflection;
    its (2,3) entry vanishes identically when d(z) d(1/z) = 1.
    """
    tt = to_prec(tau)
    phi_v = to_prec(phi.fn(tt))
    phi_t = to_prec(phi.fn(1 / tt))
    w_v = to_prec(d.fn(tt)) * phi_v
    w_t = to_prec(d.fn(1 / tt)) * phi_t
    zero = mpc(0)
    return PrecMatrix.from_rows(
        [
            [zero, zero, zero, -phi_v],
            [-w_v / phi_v, zero, phi_t - w_v * w_t / phi_v, zero],
            [zero, -1 / phi_t, zero, zero],
            [1 / phi_v, zero, w_t / phi_v, zero],
        ]
    )


def lambda_jump_residual(sd_alpha: SzegoSplit, sd_beta: SzegoSplit,
                         kernel: RhoKernel, phi: Symbol, d: Symbol,
                         tau) -> mpf:
    """Max-entry deviation of interior value minus exterior value times jump.

    For an exactly factorizable pair this is pure truncation/rounding error;
    it certifies the model solution and all sign conventions at once.
    """
    tt = to_prec(tau)
    lam_in = lambda_model_sided(
        sd_alpha, sd_beta, kernel.interior(tt), tt, "interior"
    )
    lam_out = lambda_model_sided(
        sd_alpha, sd_beta, kernel.exterior(tt), tt, "exterior"
    )
    jump = model_jump_matrix(phi, d, tt)
    return lam_in.sub(lam_out.matmul(jump)).max_abs()
