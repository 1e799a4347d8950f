"""Annulus-analytic symbols on the unit circle.

A symbol is a callable analytic on an annulus r_i < |z| < r_o containing the
unit circle, carried together with that annulus so downstream quadrature can
check admissibility. This module provides checked evaluation, the reflection
f(z) -> f(1/z), algebraic combinators, winding numbers and continuous
logarithms on the circle, and the symbol pairs entering the Ising
magnetization determinants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .config import MAX_PHASE_NODES, MIN_WINDING_NODES, tol
from .errors import (
    ConfigError,
    InvalidParams,
    NonzeroWinding,
    OutsideAnnulus,
    PhaseUnresolved,
    ZeroOnCircle,
)
from .fourier import unit_nodes
from .numerics import to_prec


@dataclass(frozen=True)
class Symbol:
    """A function analytic on the open annulus (r_i, r_o) around |z| = 1."""

    fn: object
    r_i: object = 0
    r_o: object = mp.inf
    label: str = ""

    def __call__(self, z):
        return eval(self, z)


def eval(f: Symbol, z) -> mpc:
    """Evaluate a symbol, rejecting points outside its annulus."""
    zz = to_prec(z)
    az = abs(zz)
    if not (mp.mpf(f.r_i) < az < mp.mpf(f.r_o)):
        raise OutsideAnnulus(
            f"|z| = {mp.nstr(az, 8)} outside annulus "
            f"({mp.nstr(mp.mpf(f.r_i), 8)}, {mp.nstr(mp.mpf(f.r_o), 8)})"
            + (f" of {f.label}" if f.label else "")
        )
    return to_prec(f.fn(zz))


def tilde(f: Symbol) -> Symbol:
    """The reflected symbol z -> f(1/z), with the inverted annulus."""
    r_i = mp.mpf(f.r_i)
    r_o = mp.mpf(f.r_o)
    new_ri = mp.mpf(0) if mp.isinf(r_o) else 1 / r_o
    new_ro = mp.inf if r_i == 0 else 1 / r_i
    fn = f.fn
    return Symbol(lambda z: fn(1 / z), new_ri, new_ro,
                  label=(f.label + "~") if f.label else "")


def constant(c) -> Symbol:
    value = to_prec(c)
    return Symbol(lambda z: value, 0, mp.inf, label="const")


def sym_product(f: Symbol, g: Symbol, label: str = "") -> Symbol:
    ff, gg = f.fn, g.fn
    return Symbol(
        lambda z: ff(z) * gg(z),
        max(mp.mpf(f.r_i), mp.mpf(g.r_i)),
        min(mp.mpf(f.r_o), mp.mpf(g.r_o)),
        label=label,
    )


def sym_add(f: Symbol, g: Symbol, label: str = "") -> Symbol:
    ff, gg = f.fn, g.fn
    return Symbol(
        lambda z: ff(z) + gg(z),
        max(mp.mpf(f.r_i), mp.mpf(g.r_i)),
        min(mp.mpf(f.r_o), mp.mpf(g.r_o)),
        label=label,
    )


def sym_scale(f: Symbol, c, label: str = "") -> Symbol:
    ff = f.fn
    cc = to_prec(c)
    return Symbol(lambda z: cc * ff(z), mp.mpf(f.r_i), mp.mpf(f.r_o),
                  label=label or f.label)


def sym_shift(f: Symbol, k: int, label: str = "") -> Symbol:
    """z^k * f(z): shifts every Fourier index of f up by k."""
    ff = f.fn
    return Symbol(lambda z: (z ** k) * ff(z), mp.mpf(f.r_i), mp.mpf(f.r_o),
                  label=label or (f.label + f"<<{k}" if f.label else ""))


class _PhaseJump(Exception):
    """Internal: adjacent phase samples differ by >= pi/2; refine the grid."""


def _circle_values(f: Symbol, n: int):
    if not (mp.mpf(f.r_i) < 1 < mp.mpf(f.r_o)):
        raise OutsideAnnulus("symbol annulus does not contain the unit circle")
    pts = unit_nodes(n)
    vals = [to_prec(f.fn(z)) for z in pts]
    largest = max(abs(v) for v in vals)
    if largest == 0:
        raise ZeroOnCircle("symbol vanishes at every sampled circle node")
    floor = largest * tol(mp.dps, 5)
    for j, v in enumerate(vals):
        if abs(v) < floor:
            raise ZeroOnCircle(
                f"symbol magnitude {mp.nstr(abs(v), 5)} at node {j}/{n} is "
                f"below {mp.nstr(floor, 5)}; zero on or near the unit circle"
            )
    return vals


def _wrap_to_half_turn(d):
    two_pi = 2 * mp.pi
    while d > mp.pi:
        d -= two_pi
    while d <= -mp.pi:
        d += two_pi
    return d


def _phase_walk(vals):
    """Cumulative continuous phases along the circle, plus the closing step.

    Raises _PhaseJump whenever two adjacent samples are separated by a
    quarter turn or more, in which case the caller refines the grid.
    """
    args = [mp.arg(v) for v in vals]
    n = len(vals)
    quarter = mp.pi / 2
    phases = [args[0]]
    for j in range(1, n):
        d = _wrap_to_half_turn(args[j] - args[j - 1])
        if abs(d) >= quarter:
            raise _PhaseJump
        phases.append(phases[-1] + d)
    d = _wrap_to_half_turn(args[0] - args[-1])
    if abs(d) >= quarter:
        raise _PhaseJump
    total = phases[-1] + d - phases[0]
    return phases, total


def winding_number(f: Symbol, nodes: int) -> int:
    """Winding of f around 0 along the unit circle.

    Starts from `nodes` samples (at least 256) and doubles the grid until
    every adjacent phase step is below pi/2, so the unwrapped phase is
    unambiguous; gives up at 2^16 nodes.
    """
    if nodes < MIN_WINDING_NODES:
        raise ConfigError(
            f"winding_number needs at least {MIN_WINDING_NODES} nodes, got {nodes}"
        )
    n = nodes
    while True:
        try:
            _, total = _phase_walk(_circle_values(f, n))
            break
        except _PhaseJump:
            n *= 2
            if n > MAX_PHASE_NODES:
                raise PhaseUnresolved(
                    f"phase steps still exceed pi/2 at {MAX_PHASE_NODES} nodes"
                )
    w = total / (2 * mp.pi)
    wi = int(mp.nint(w))
    if abs(w - wi) > mp.mpf("0.25"):
        raise PhaseUnresolved(f"accumulated phase {mp.nstr(w, 10)} is not near an integer")
    return wi


def log_on_circle(f: Symbol, nodes: int) -> tuple:
    """Samples of a continuous branch of log f at `nodes` equispaced points.

    Requires winding number zero (otherwise no continuous branch exists and
    NonzeroWinding is raised). Phase continuity is certified on a grid that
    is doubled as needed; the result is then subsampled back to `nodes`
    points, which the doubled grids contain exactly.
    """
    if nodes < 1:
        raise ConfigError("log_on_circle needs at least one node")
    n = nodes
    while n < MIN_WINDING_NODES:
        n *= 2
    while True:
        vals = _circle_values(f, n)
        try:
            phases, total = _phase_walk(vals)
            break
        except _PhaseJump:
            n *= 2
            if n > MAX_PHASE_NODES:
                raise PhaseUnresolved(
                    f"phase steps still exceed pi/2 at {MAX_PHASE_NODES} nodes"
                )
    w = total / (2 * mp.pi)
    if abs(w) > mp.mpf("0.25"):
        raise NonzeroWinding(
            f"winding number {mp.nstr(w, 10)} != 0: no continuous logarithm"
        )
    step = n // nodes
    return tuple(
        mpc(mp.log(abs(vals[j * step])), phases[j * step]) for j in range(nodes)
    )


# ---------------------------------------------------------------------------
# Ising magnetization symbols


def _half_power(u) -> mpc:
    """sqrt with the branch cut on the positive real axis: |u|^{1/2} e^{i arg(u)/2},
    arg taken in [0, 2 pi)."""
    uu = to_prec(u)
    if uu == 0:
        return mpc(0)
    a = mp.arg(uu)
    if a < 0:
        a += 2 * mp.pi
    return mp.sqrt(abs(uu)) * mp.expj(a / 2)


@dataclass(frozen=True)
class IsingParams:
    """Parameters of the layered-lattice magnetization determinants.

    `q` lies in (0, 1); `coupling` is the layer-coupling ratio, restricted
    here to [0, 1). The determinant family changes character at
    coupling = q^2, where a zero of the weight ratio crosses the unit circle.
    """

    q: object
    coupling: object


@dataclass(frozen=True)
class IsingSymbols:
    """Symbol data for one parameter point of the magnetization family.

    `phi` carries the half-power branch normalization (so phi(1) = 1.5 at
    q = 0.5); `phi_unit` = q * phi has geometric mean 1 on the circle, which
    keeps the determinants bounded, and is the normalization used for all
    numerics. `weight` / `weight_unit` are the matching Hankel weights.
    `multiplier` is the winding-adjusted ratio m with
    weight_unit = m * phi_unit in the purely multiplicative cases; it
    satisfies m(z) m(1/z) = 1. `offsets` = (toeplitz_offset, hankel_offset).
    """

    case: str
    q: object
    coupling: object
    zero_loc: object
    phi: Symbol
    phi_unit: Symbol
    weight: Symbol
    weight_unit: Symbol
    multiplier: Symbol
    raw_ratio: Symbol
    raw_winding: int
    offsets: tuple
    r_i: object
    r_o: object
    extra: dict = field(default_factory=dict, compare=False)

    def prefactor(self):
        """(1 - coupling)^{-3/2}, evaluated at the ambient precision."""
        return (1 - mp.mpf(self.coupling)) ** mp.mpf("-1.5")


def _phi_fns(q):
    qq = mp.mpf(q)

    def branch(z):
        return (
            mpc(0, -1)
            * _half_power(z - 1 / qq ** 2)
            * _half_power(z - qq ** 2)
            / _half_power(z)
        )

    def unit(z):
        return mp.sqrt(1 - qq ** 2 * z) * mp.sqrt(1 - qq ** 2 / z)

    return branch, unit


def ising_symbols(p: IsingParams) -> IsingSymbols:
    """Build the determinant symbol pair for one parameter point.

    Dispatches on the location a = q^2 / coupling of the finite zero of the
    weight ratio: outside the circle (below-critical), on it (critical), or
    inside (above-critical); coupling = 0 sends the zero to infinity. In the
    first three of those cases the ratio has winding -2, -1, 0 respectively
    and the winding is absorbed into the Hankel index offset, keeping every
    multiplier at winding zero with m(z) m(1/z) = 1.
    """
    q = mp.mpf(p.q)
    coupling = mp.mpf(p.coupling)
    if not (0 < q < 1):
        raise InvalidParams(f"q must lie in (0, 1), got {mp.nstr(q, 8)}")
    if coupling < 0:
        raise InvalidParams(
            "negative coupling ratios are outside the supported regime"
        )
    if coupling >= 1:
        raise InvalidParams(
            f"coupling must lie in [0, 1), got {mp.nstr(coupling, 8)}"
        )
    q2 = q ** 2
    branch_fn, unit_fn = _phi_fns(q)
    r_i_phi, r_o_phi = q2, 1 / q2

    if coupling == 0:
        case = "decoupled"
        zero_loc = mp.inf

        def raw(z):
            return (q2 * z - 1) / (z * (z - q2))

        def mult(z):
            return z * (q2 * z - 1) / (z - q2)

        raw_winding = -2
        offsets = (0, 2)
        r_i, r_o = q2, 1 / q2
    else:
        zero_loc = q2 / coupling

        def raw(z):
            return -((z - zero_loc) * (q2 * z - 1)) / ((z - q2) * (zero_loc * z - 1))

        if abs(zero_loc - 1) <= mp.mpf("1e-12"):
            case = "critical"

            def raw(z):  # noqa: F811 -- cancelled form, finite at z = 1
                return (1 - q2 * z) / (z - q2)

            def mult(z):
                return z * (1 - q2 * z) / (z - q2)

            raw_winding = -1
            offsets = (0, 1)
            r_i, r_o = q2, 1 / q2
        elif zero_loc > 1:
            case = "below_critical"

            def mult(z):
                return z * z * raw(z)

            raw_winding = -2
            offsets = (0, 2)
            r_i = max(q2, 1 / zero_loc)
            r_o = min(1 / q2, zero_loc)
        else:
            case = "above_critical"
            mult = raw
            raw_winding = 0
            offsets = (0, 0)
            r_i = q2
            r_o = 1 / zero_loc

    phi = Symbol(branch_fn, r_i_phi, r_o_phi, label="phi")
    phi_unit = Symbol(unit_fn, r_i_phi, r_o_phi, label="phi_unit")
    multiplier = Symbol(mult, r_i, r_o, label="multiplier")
    raw_ratio = Symbol(raw, r_i, r_o, label="ratio")

    extra = {}
    if case == "above_critical":
        # Additive tail correcting the Hankel weight: a geometric series in
        # zero_loc with an explicit prefactor, supported on indices k >= 0.
        tail_amp = (
            (coupling ** 2 - q ** 4)
            * coupling ** mp.mpf("-1.5")
            / mp.sqrt(coupling - q ** 4)
        )
        tail = Symbol(
            lambda z: tail_amp / (1 - zero_loc * z),
            0,
            1 / zero_loc,
            label="tail",
        )
        scale = (1 - coupling) ** mp.mpf("1.5")
        weight_unit = sym_add(
            sym_product(multiplier, phi_unit),
            sym_scale(tail, scale),
            label="weight_unit",
        )
        extra = {"tail_amplitude": tail_amp, "tail_ratio": zero_loc}
    else:
        weight_unit = sym_product(multiplier, phi_unit, label="weight_unit")
    weight = sym_scale(weight_unit, 1 / q, label="weight")

    return IsingSymbols(
        case=case,
        q=q,
        coupling=coupling,
        zero_loc=zero_loc,
        phi=phi,
        phi_unit=phi_unit,
        weight=weight,
        weight_unit=weight_unit,
        multiplier=multiplier,
        raw_ratio=raw_ratio,
        raw_winding=raw_winding,
        offsets=offsets,
        r_i=r_i,
        r_o=r_o,
        extra=extra,
    )
