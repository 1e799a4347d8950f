"""Toeplitz-plus-Hankel determinants and orthogonal-polynomial norms.

The order-n determinant is built from a symbol pair (phi, weight) and an
integer offset pair (dr, ds): entry (j, k) is phi_{j-k+dr} + weight_{j+k+ds},
0 <= j, k < n, where f_m denotes the m-th Fourier coefficient on the unit
circle. The associated monic polynomials p_n satisfy a one-sided
orthogonality relation against the same moment functional; their norms h_n
tie successive determinants together via h_n = D_{n+1} / D_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpc

from .config import (
    DEFAULT_NODES,
    DEFAULT_PRECISION,
    DEFAULT_TRUNC_ORDER,
    precision_ctx,
    tol,
    validate_quadrature,
)
from .errors import ConfigError, Singular, SingularDn, TruncationExceeded
from .fourier import coefficient_from_samples, unit_nodes
from .numerics import PrecMatrix, pairwise_sum, solve_linear, det_lu
from .symbols import Symbol


@dataclass(frozen=True)
class THSystem:
    """A symbol pair plus offsets, with cached circle samples and moments."""

    phi: Symbol
    weight: Symbol
    toeplitz_offset: int = 0
    hankel_offset: int = 0
    digits: int = DEFAULT_PRECISION
    m_order: int = DEFAULT_TRUNC_ORDER
    nodes: int = DEFAULT_NODES
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        validate_quadrature(self.m_order, self.nodes)

    def _samples(self, which: str):
        key = ("samples", which)
        if key not in self._cache:
            f = self.phi if which == "phi" else self.weight
            with precision_ctx(self.digits):
                pts = unit_nodes(self.nodes)
                self._cache[key] = [mpc(f.fn(z)) for z in pts]
        return self._cache[key]

    def coeff(self, which: str, k: int) -> mpc:
        """Fourier coefficient f_k of the chosen symbol ('phi' or 'weight')."""
        if abs(k) > self.m_order:
            raise TruncationExceeded(
                f"moment index {k} beyond truncation order {self.m_order}; "
                "raise m_order (and nodes) to reach larger matrices"
            )
        key = ("c", which, k)
        if key not in self._cache:
            with precision_ctx(self.digits):
                self._cache[key] = coefficient_from_samples(
                    self._samples(which), k, mp.mpf(1)
                )
        return self._cache[key]

    def entry(self, j: int, k: int) -> mpc:
        """Matrix entry phi_{j-k+dr} + weight_{j+k+ds}."""
        return self.coeff("phi", j - k + self.toeplitz_offset) + self.coeff(
            "weight", j + k + self.hankel_offset
        )


def build_matrix(sys: THSystem, n: int) -> PrecMatrix:
    """The n x n moment matrix; row j is the test index, column k the degree."""
    if n < 0:
        raise ConfigError(f"matrix order must be nonnegative, got {n}")
    with precision_ctx(sys.digits):
        rows = [[sys.entry(j, k) for k in range(n)] for j in range(n)]
        return PrecMatrix.from_rows(rows)


def det_th(sys: THSystem, n: int) -> mpc:
    """Determinant D_n of the order-n moment matrix (D_0 = 1)."""
    key = ("det", n)
    if key not in sys._cache:
        with precision_ctx(sys.digits):
            if n == 0:
                sys._cache[key] = mpc(1)
            else:
                sys._cache[key] = det_lu(build_matrix(sys, n))
    return sys._cache[key]


def _entry_scale(m: PrecMatrix) -> mp.mpf:
    s = m.max_abs()
    return s if s > 0 else mp.mpf(1)


def check_det_scale(sys: THSystem, n: int) -> mpc:
    """D_n, raising SingularDn when it is negligible against the entry scale."""
    with precision_ctx(sys.digits):
        d = det_th(sys, n)
        if n > 0:
            scale = _entry_scale(build_matrix(sys, n)) ** n
            if abs(d) < tol(sys.digits, 10) * scale:
                raise SingularDn(
                    f"|D_{n}| = {mp.nstr(abs(d), 8)} is below "
                    f"{mp.nstr(tol(sys.digits, 10) * scale, 8)}"
                )
        return d


def orthopoly(sys: THSystem, n: int) -> tuple:
    """Coefficients (p_0, ..., p_n), p_n = 1, of the monic degree-n polynomial
    annihilating the moment functional at test indices 0..n-1."""
    with precision_ctx(sys.digits):
        if n == 0:
            return (mpc(1),)
        b = build_matrix(sys, n + 1)
        a = PrecMatrix.from_rows(
            [[b.get(j, k) for k in range(n)] for j in range(n)]
        )
        rhs = [-b.get(j, n) for j in range(n)]
        try:
            p = solve_linear(a, rhs)
        except Singular as exc:
            raise SingularDn(
                f"order-{n} moment matrix is numerically singular: {exc}"
            ) from exc
        return tuple(list(p) + [mpc(1)])


def norm_h(sys: THSystem, n: int) -> mpc:
    """The norm h_n, computed from the monic polynomial at test index n.

    Independent of the determinant ratio D_{n+1} / D_n, which it must equal;
    the agreement of the two routes is a consistency check used in tests.
    """
    key = ("h", n)
    if key not in sys._cache:
        with precision_ctx(sys.digits):
            p = orthopoly(sys, n)
            sys._cache[key] = orthogonality_residual(sys, p, n)
    return sys._cache[key]


def norm_h_ratio(sys: THSystem, n: int) -> mpc:
    """h_n as the determinant ratio D_{n+1} / D_n."""
    with precision_ctx(sys.digits):
        return det_th(sys, n + 1) / check_det_scale(sys, n)


def orthogonality_residual(sys: THSystem, p, k: int) -> mpc:
    """sum_m p_m * (phi_{k-m+dr} + weight_{m+k+ds}) at test index k.

    Vanishes for k < deg p and equals h_{deg p} at k = deg p.
    """
    with precision_ctx(sys.digits):
        return pairwise_sum(
            [mpc(p[m]) * sys.entry(k, m) for m in range(len(p))]
        )
