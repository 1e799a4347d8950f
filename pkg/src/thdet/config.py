"""Run-level defaults and precision helpers.

All numerical work happens at an explicit decimal-digit working precision.
Library objects that cache numbers remember the digit count they were built
with; entry points re-enter that precision via :func:`precision_ctx` so that
values survive mixed-precision test sessions unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .errors import ConfigError

DEFAULT_PRECISION = 120  # decimal digits
DEFAULT_TRUNC_ORDER = 128  # Laurent truncation M: coefficients -M..M
DEFAULT_NODES = 1024  # quadrature nodes N (power of two, N >= 4M)

MIN_PRECISION = 50
MAX_PHASE_NODES = 2 ** 16
MIN_WINDING_NODES = 256  # adaptive-doubling ceiling for phase unwrapping


def precision_ctx(digits: int):
    """Context manager entering a working precision of `digits` digits."""
    if digits < MIN_PRECISION:
        raise ConfigError(
            f"working precision must be >= {MIN_PRECISION} digits, got {digits}"
        )
    return mp.workdps(digits)


def tol(digits: int, offset: int):
    """10**-(digits - offset) as an mpf at the current precision.

    The library's tolerances are all expressed relative to the working
    precision; `offset` is the number of digits of slack granted.
    """
    return mp.mpf(10) ** (-(digits - offset))


def validate_quadrature(m_order: int, nodes: int) -> None:
    """Check the node-count contract: power of two and at least 4*M."""
    from .errors import NodeCountTooSmall

    if nodes < 4 * m_order:
        raise NodeCountTooSmall(
            f"need nodes >= 4*truncation ({4 * m_order}), got {nodes}"
        )
    if nodes & (nodes - 1) != 0 or nodes <= 0:
        raise NodeCountTooSmall(f"node count must be a power of two, got {nodes}")


@dataclass(frozen=True)
class RunConfig:
    """Bundle of run parameters shared by library entry points.

    `digits` is the working decimal precision (>= 50), `m_order` the Laurent
    truncation order M, `nodes` the quadrature node count N (a power of two
    with N >= 4M), and `r_star` an optional contour radius in (0, 1); the
    pair-dependent lower bound on r_star is enforced where the pair is known.
    """

    digits: int = DEFAULT_PRECISION
    m_order: int = DEFAULT_TRUNC_ORDER
    nodes: int = DEFAULT_NODES
    r_star: object = None

    def __post_init__(self):
        if self.digits < MIN_PRECISION:
            raise ConfigError(
                f"working precision must be >= {MIN_PRECISION} digits, "
                f"got {self.digits}"
            )
        validate_quadrature(self.m_order, self.nodes)
        if self.r_star is not None:
            r = mp.mpf(self.r_star)
            if not (0 < r < 1):
                raise ConfigError(
                    f"contour radius must lie in (0, 1), got {mp.nstr(r, 8)}"
                )
