"""Spectral quadrature on circles.

Coefficients of annulus-analytic functions are recovered with the trapezoid
rule on equispaced nodes, which converges geometrically for analytic
integrands. All contour integrals used by the higher layers reduce to Laurent
coefficients at a chosen radius (the Cauchy kernel at the origin is 1/mu), so
a single quadrature primitive serves the whole library. Summation is
index-ascending pairwise for deterministic, byte-stable output.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .config import validate_quadrature
from .errors import OutsideAnnulus
from .numerics import pairwise_sum, to_prec

_NODE_CACHE: dict = {}


def unit_nodes(n: int) -> tuple:
    """The n-th roots of unity e^{2 pi i j / n}, cached per (n, precision)."""
    key = (n, mp.dps)
    cached = _NODE_CACHE.get(key)
    if cached is None:
        cached = tuple(mp.expjpi(mpf(2 * j) / n) for j in range(n))
        _NODE_CACHE[key] = cached
    return cached


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated two-sided series sum_{k=-M..M} c_k z^k.

    `coeffs[k + m_order]` holds c_k. The series is trusted on the open
    annulus (valid_r_i, valid_r_o).
    """

    coeffs: tuple
    m_order: int
    valid_r_i: mpf
    valid_r_o: mpf

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.m_order + 1:
            raise ValueError(
                f"need {2 * self.m_order + 1} coefficients, got {len(self.coeffs)}"
            )

    def coeff(self, k: int) -> mpc:
        from .errors import TruncationExceeded

        if abs(k) > self.m_order:
            raise TruncationExceeded(
                f"coefficient index {k} beyond truncation +-{self.m_order}"
            )
        return self.coeffs[k + self.m_order]

    def in_annulus(self, z) -> bool:
        az = abs(to_prec(z))
        return self.valid_r_i < az < self.valid_r_o


def series_from_samples(samples, m_order: int, radius=1, valid_r_i=None,
                        valid_r_o=None) -> LaurentSeries:
    """Laurent coefficients from equispaced samples on |z| = radius.

    c_k = radius^{-k} * (1/N) sum_j samples[j] * omega^{-jk}; the samples must
    be listed in node order j = 0..N-1 with node radius*omega^j.
    """
    n = len(samples)
    nodes = unit_nodes(n)
    r = mp.mpf(radius)
    coeffs = []
    for k in range(-m_order, m_order + 1):
        total = pairwise_sum(
            [samples[j] * nodes[(-j * k) % n] for j in range(n)]
        )
        coeffs.append(total / n / (r ** k))
    return LaurentSeries(
        tuple(coeffs),
        m_order,
        mp.mpf(valid_r_i) if valid_r_i is not None else mp.mpf(0),
        mp.mpf(valid_r_o) if valid_r_o is not None else mp.inf,
    )


def fourier_coeffs(f, m_order: int, nodes: int) -> LaurentSeries:
    """Coefficients c_k = (1/N) sum_j f(omega^j) omega^{-jk}, |k| <= M.

    Requires nodes to be a power of two with nodes >= 4*m_order so aliasing
    sits far below the coefficient tails of analytic inputs.
    """
    validate_quadrature(m_order, nodes)
    pts = unit_nodes(nodes)
    samples = [f.fn(z) for z in pts]
    return series_from_samples(
        samples, m_order, radius=1, valid_r_i=f.r_i, valid_r_o=f.r_o
    )


def eval_series(s: LaurentSeries, z) -> mpc:
    """Horner evaluation in z (k >= 0) plus Horner in 1/z (k < 0)."""
    zz = to_prec(z)
    if not s.in_annulus(zz):
        raise OutsideAnnulus(
            f"|z| = {abs(zz)} outside validity ({s.valid_r_i}, {s.valid_r_o})"
        )
    return _eval_split(s.coeffs, s.m_order, zz)


def _eval_split(coeffs, m_order: int, zz: mpc) -> mpc:
    acc_pos = mpc(0)
    for k in range(2 * m_order, m_order - 1, -1):  # c_M .. c_0
        acc_pos = acc_pos * zz + coeffs[k]
    inv = 1 / zz
    acc_neg = mpc(0)
    for k in range(0, m_order):  # c_{-M} .. c_{-1}
        acc_neg = acc_neg * inv + coeffs[k]
    return acc_pos + acc_neg * inv


def horner_onesided(coeffs, z) -> mpc:
    """sum_k coeffs[k] * z^k for a one-sided coefficient list."""
    zz = to_prec(z)
    acc = mpc(0)
    for c in reversed(coeffs):
        acc = acc * zz + c
    return acc


def contour_coefficient(f, k: int, radius, nodes: int) -> mpc:
    """Laurent coefficient c_k of f on the circle |mu| = radius.

    Equals (1/2 pi i) * integral over that circle of mu^{-k-1} f(mu) d mu,
    computed by the trapezoid rule at `nodes` points.
    """
    r = mp.mpf(radius)
    if not (f.r_i < r < f.r_o):
        raise OutsideAnnulus(
            f"radius {r} outside annulus ({f.r_i}, {f.r_o})"
        )
    pts = unit_nodes(nodes)
    samples = [f.fn(r * w) for w in pts]
    return coefficient_from_samples(samples, k, r)


def coefficient_from_samples(samples, k: int, radius) -> mpc:
    """Single Laurent coefficient from existing samples on |mu| = radius."""
    n = len(samples)
    nodes = unit_nodes(n)
    r = mp.mpf(radius)
    total = pairwise_sum([samples[j] * nodes[(-j * k) % n] for j in range(n)])
    return total / n / (r ** k)
