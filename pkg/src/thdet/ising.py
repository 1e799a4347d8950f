"""Finite-size magnetization values for the layered Ising family.

Each magnetization value is a prefactor times one Toeplitz-plus-Hankel
determinant built from the case-dispatched symbol pair of
:func:`thdet.symbols.ising_symbols`. The geometric-mean-1 normalization is
used throughout so the sequence M_n stays bounded; at the critical coupling
it converges at a geometric rate, which `criticality_study` quantifies.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .config import (
    DEFAULT_NODES,
    DEFAULT_PRECISION,
    DEFAULT_TRUNC_ORDER,
    precision_ctx,
)
from .determinants import THSystem, det_th
from .symbols import IsingParams, IsingSymbols, ising_symbols


def th_system(syms: IsingSymbols, digits: int = DEFAULT_PRECISION,
              m_order: int = DEFAULT_TRUNC_ORDER,
              nodes: int = DEFAULT_NODES) -> THSystem:
    """The determinant system for one symbol case (unit normalization)."""
    return THSystem(
        phi=syms.phi_unit,
        weight=syms.weight_unit,
        toeplitz_offset=syms.offsets[0],
        hankel_offset=syms.offsets[1],
        digits=digits,
        m_order=m_order,
        nodes=nodes,
    )


def magnetization(p: IsingParams, n: int, digits: int = DEFAULT_PRECISION,
                  m_order: int = DEFAULT_TRUNC_ORDER,
                  nodes: int = DEFAULT_NODES) -> mpc:
    """M_n = (1 - coupling)^{-3/2} * D_n for the case-dispatched pair."""
    syms = ising_symbols(p)
    sys = th_system(syms, digits, m_order, nodes)
    with precision_ctx(digits):
        return syms.prefactor() * det_th(sys, n)


@dataclass(frozen=True)
class StudyRow:
    n: int
    value: mpc
    diff: object  # |M_n - M_{n-1}|, None at the first row


@dataclass(frozen=True)
class CriticalityStudy:
    """Convergence data of M_n at one parameter point.

    `fitted_ratio` is exp(slope) of a least-squares fit of log |M_n - M_{n-1}|
    against n over the rows with a defined, nonzero difference: the average
    geometric factor between successive corrections. `max_imag_fraction` is
    the largest |Im M_n| / |M_n| observed — a reality check, literally.
    """

    params: IsingParams
    case: str
    rows: tuple
    fitted_ratio: object
    max_imag_fraction: object


def fit_geometric_ratio(points) -> object:
    """exp(least-squares slope) of (n, log magnitude) pairs; None if < 2."""
    pts = [(mp.mpf(n), mp.log(m)) for n, m in points if m > 0]
    if len(pts) < 2:
        return None
    count = mp.mpf(len(pts))
    sx = mp.fsum(x for x, _ in pts)
    sy = mp.fsum(y for _, y in pts)
    sxx = mp.fsum(x * x for x, _ in pts)
    sxy = mp.fsum(x * y for x, y in pts)
    denom = count * sxx - sx * sx
    if denom == 0:
        return None
    return mp.exp((count * sxy - sx * sy) / denom)


def criticality_study(p: IsingParams, n_max: int,
                      digits: int = DEFAULT_PRECISION,
                      m_order: int = DEFAULT_TRUNC_ORDER,
                      nodes: int = DEFAULT_NODES,
                      n_min: int = 1) -> CriticalityStudy:
    """Magnetization values M_{n_min}..M_{n_max} with convergence diagnostics."""
    syms = ising_symbols(p)
    sys = th_system(syms, digits, m_order, nodes)
    with precision_ctx(digits):
        prefactor = syms.prefactor()
        rows = []
        previous = None
        max_imag = mpf(0)
        for n in range(n_min, n_max + 1):
            value = prefactor * det_th(sys, n)
            diff = None if previous is None else abs(value - previous)
            rows.append(StudyRow(n=n, value=value, diff=diff))
            if abs(value) > 0:
                frac = abs(value.imag) / abs(value)
                if frac > max_imag:
                    max_imag = frac
            previous = value
        ratio = fit_geometric_ratio(
            [(row.n, row.diff) for row in rows if row.diff is not None]
        )
        return CriticalityStudy(
            params=p,
            case=syms.case,
            rows=tuple(rows),
            fitted_ratio=ratio,
            max_imag_fraction=max_imag,
        )
