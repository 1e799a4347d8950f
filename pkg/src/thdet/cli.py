"""Command-line interface.

Subcommands:

* ``coeffs``        Fourier coefficients of a symbol expression.
* ``dets``          determinant/norm ladder of a symbol pair.
* ``asymp-compare`` exact norms against asymptotic predictions.
* ``ising``         magnetization table of the layered Ising family.
* ``check``         self-verification suite of structural invariants.

Exit codes: 0 success, 2 configuration/input errors, 3 degenerate data
(predictors or reductions undefined at this point), 4 invariant violation.
All numeric output is full-precision text, deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys

from mpmath import mp, mpc, mpf

from . import determinants, ising
from .asymptotics import (
    AsymptoticEngine,
    offset00_residual,
    offset01_residual,
    offset02_residual,
    solve_offset00,
    solve_offset01,
    solve_offset02,
    solve_offset02_lu,
    wsym_residual,
)
from .config import (
    DEFAULT_NODES,
    DEFAULT_PRECISION,
    DEFAULT_TRUNC_ORDER,
    precision_ctx,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    DegeneratePredictor,
    GenericConditionFailed,
    GenericityFailed,
    InvalidParams,
    MissingData,
    ModelNotFactorizable,
    NodeCountTooSmall,
    NonzeroWinding,
    OnCircle,
    OutsideAnnulus,
    PhaseUnresolved,
    Singular,
    SingularDn,
    ThdetError,
    TruncationExceeded,
    ZeroOnCircle,
)
from .fourier import fourier_coeffs
from .ising import fit_geometric_ratio
from .symbols import (
    IsingParams,
    Symbol,
    ising_symbols,
    sym_product,
)

SCHEMA = "th-asym/1"

# Calibrated index alignment: the offset-(1,1) predictor at argument n
# approximates the norm of index n - 1, like the offset-(0,1) one.
H11_SHIFT = 1
H01_SHIFT = 1


# ---------------------------------------------------------------------------
# symbol expression parsing

_FUNCTIONS = {"exp": mp.exp, "log": mp.log, "sqrt": mp.sqrt}


def _eval_node(node, z):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, z)
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, z)
        right = _eval_node(node.right, z)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        if isinstance(node.op, ast.Pow):
            return left ** right
        raise ConfigError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.UnaryOp):
        value = _eval_node(node.operand, z)
        if isinstance(node.op, ast.USub):
            return -value
        if isinstance(node.op, ast.UAdd):
            return value
        raise ConfigError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS:
            raise ConfigError("only exp(), log(), sqrt() calls are allowed")
        if len(node.args) != 1 or node.keywords:
            raise ConfigError("symbol functions take exactly one argument")
        return _FUNCTIONS[node.func.id](_eval_node(node.args[0], z))
    if isinstance(node, ast.Name):
        if node.id == "z":
            return z
        if node.id == "i":
            return mpc(0, 1)
        if node.id == "pi":
            return +mp.pi
        if node.id == "e":
            return +mp.e
        raise ConfigError(f"unknown name {node.id!r} in symbol expression")
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return mpf(node.value)
        if isinstance(node.value, float):
            return mpf(node.value)
        raise ConfigError(f"unsupported literal {node.value!r}")
    raise ConfigError(f"unsupported expression element {type(node).__name__}")


def parse_symbol(text: str, r_i=0, r_o=None) -> Symbol:
    """Parse a one-variable expression in z into a Symbol.

    Grammar: numbers, z, i, pi, e, + - * / ** ( ), exp(), log(), sqrt().
    """
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse symbol expression {text!r}: {exc}")
    _eval_node(tree, mpc(1))  # validate the node set eagerly
    return Symbol(
        lambda z: _eval_node(tree, z),
        mp.mpf(r_i),
        mp.inf if r_o is None else mp.mpf(r_o),
        label=text,
    )


# ---------------------------------------------------------------------------
# output helpers


def _ns(x, digits: int) -> str:
    return mp.nstr(x, digits)


def _emit(lines, out):
    out.write("\n".join(lines) + "\n")


def _rows_to_json(command: str, meta: dict, header, rows, comments) -> str:
    payload = {
        "schema": SCHEMA,
        "command": command,
        **meta,
        "columns": list(header),
        "rows": [list(r) for r in rows],
    }
    if comments:
        payload["notes"] = list(comments)
    return json.dumps(payload, indent=2)


def _write_table(args, command, meta, header, rows, comments, out):
    if getattr(args, "format", "csv") == "json":
        out.write(_rows_to_json(command, meta, header, rows, comments) + "\n")
    else:
        lines = [", ".join(header)]
        lines.extend(", ".join(str(c) for c in row) for row in rows)
        lines.extend(comments)
        _emit(lines, out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(args, out=sys.stdout) -> int:
    with precision_ctx(args.digits):
        f = parse_symbol(args.symbol)
        series = fourier_coeffs(f, args.m_order, args.nodes)
        rows = []
        for k in range(-args.m_order, args.m_order + 1):
            c = series.coeff(k)
            rows.append((k, _ns(c.real, args.digits), _ns(c.imag, args.digits)))
    _write_table(
        args,
        "coeffs",
        {"symbol": args.symbol, "m_order": args.m_order,
         "nodes": args.nodes, "digits": args.digits},
        ("k", "Re c_k", "Im c_k"),
        rows,
        [],
        out,
    )
    return 0


def _resolve_pair(args):
    """(phi, weight, offsets, engine_ratio_or_None) from CLI arguments."""
    if args.q is not None:
        coupling = args.coupling
        if coupling is None:
            coupling = mp.mpf(args.q) ** 2  # critical point
        syms = ising_symbols(IsingParams(q=args.q, coupling=coupling))
        ratio = syms.multiplier if syms.case != "above_critical" else None
        return syms.phi_unit, syms.weight_unit, syms.offsets, ratio
    if args.phi is None:
        raise ConfigError("provide either --q (Ising family) or --phi/--ratio")
    phi = parse_symbol(args.phi, args.r_i, args.r_o)
    if args.ratio is not None:
        ratio = parse_symbol(args.ratio, args.r_i, args.r_o)
        weight = sym_product(ratio, phi, label="weight")
    elif args.weight is not None:
        ratio = None
        weight = parse_symbol(args.weight, args.r_i, args.r_o)
    else:
        raise ConfigError("provide --ratio or --weight alongside --phi")
    offsets = _parse_offsets(args.offsets)
    return phi, weight, offsets, ratio


def _parse_offsets(text) -> tuple:
    try:
        dr, ds = (int(part) for part in text.split(","))
    except Exception:
        raise ConfigError(f"offsets must look like '0,1', got {text!r}")
    return dr, ds


def cmd_dets(args, out=sys.stdout) -> int:
    phi, weight, offsets, _ = _resolve_pair(args)
    if args.offsets is not None and args.q is not None:
        offsets = _parse_offsets(args.offsets)
    sys_ = determinants.THSystem(
        phi=phi, weight=weight,
        toeplitz_offset=offsets[0], hankel_offset=offsets[1],
        digits=args.digits, m_order=args.m_order, nodes=args.nodes,
    )
    rows = []
    with precision_ctx(args.digits):
        for n in range(args.n_min, args.n_max + 1):
            dn = determinants.det_th(sys_, n)
            hn = determinants.norm_h(sys_, n)
            rows.append(
                (
                    n,
                    _ns(dn.real, args.digits),
                    _ns(dn.imag, args.digits),
                    _ns(hn.real, args.digits),
                    _ns(hn.imag, args.digits),
                )
            )
    _write_table(
        args,
        "dets",
        {"offsets": list(offsets), "digits": args.digits},
        ("n", "Re D_n", "Im D_n", "Re h_n", "Im h_n"),
        rows,
        [],
        out,
    )
    return 0


def cmd_asymp_compare(args, out=sys.stdout) -> int:
    phi, weight, offsets, ratio = _resolve_pair(args)
    if args.offsets is not None:
        offsets = _parse_offsets(args.offsets)
    if offsets not in ((0, 1), (1, 1)):
        raise ConfigError(
            f"predictors exist for offsets (0,1) and (1,1); got {offsets}"
        )
    if ratio is None:
        raise ConfigError(
            "asymp-compare needs a multiplicative pair: supply --ratio "
            "(or an Ising case whose weight is multiplier * phi)"
        )
    engine = AsymptoticEngine(
        phi, ratio, digits=args.digits, m_order=args.m_order,
        nodes=args.nodes, r_star=args.r_star,
        debug_flip_g23=getattr(args, "debug_flip_g23", False),
    )
    sys_ = determinants.THSystem(
        phi=phi, weight=weight,
        toeplitz_offset=offsets[0], hankel_offset=offsets[1],
        digits=args.digits, m_order=args.m_order, nodes=args.nodes,
    )
    shift = H01_SHIFT if offsets == (0, 1) else H11_SHIFT
    rows, comments, skipped = [], [], 0
    rel_errs = []
    with precision_ctx(args.digits):
        for n in range(args.n_min, args.n_max + 1):
            try:
                monitors = engine.monitors(n + shift)
                if offsets == (0, 1):
                    predicted = engine.predict_h01(n + shift)
                else:
                    predicted = engine.predict_h11(n + shift)
            except (GenericityFailed, DegeneratePredictor) as exc:
                comments.append(f"# n={n} skipped: {exc}")
                skipped += 1
                continue
            exact = determinants.norm_h(sys_, n)
            rel = abs(predicted - exact) / abs(exact)
            rel_errs.append((n, rel))
            rows.append(
                (
                    n,
                    _ns(exact.real, args.digits),
                    _ns(exact.imag, args.digits),
                    _ns(predicted.real, args.digits),
                    _ns(predicted.imag, args.digits),
                    _ns(rel, 12),
                    *(_ns(m, 12) for m in monitors),
                )
            )
        ratio_fit = fit_geometric_ratio(rel_errs)
        slope = mp.log(ratio_fit, 10) if ratio_fit is not None else None
    comments.append(
        "# fitted_slope = " + (_ns(slope, 12) if slope is not None else "n/a")
    )
    comments.append(f"# skipped_rows = {skipped}")
    _write_table(
        args,
        "asymp-compare",
        {"offsets": list(offsets), "digits": args.digits,
         "r_star": _ns(engine.r_star, 12)},
        ("n", "Re h_exact", "Im h_exact", "Re h_pred", "Im h_pred",
         "rel_err", "m1", "m2", "m3", "m4"),
        rows,
        comments,
        out,
    )
    return 0


def cmd_ising(args, out=sys.stdout) -> int:
    params = IsingParams(q=args.q, coupling=args.coupling)
    study = ising.criticality_study(
        params, args.n_max, digits=args.digits,
        m_order=args.m_order, nodes=args.nodes, n_min=args.n_min,
    )
    rows = []
    with precision_ctx(args.digits):
        for row in study.rows:
            rows.append(
                (
                    row.n,
                    _ns(row.value.real, args.digits),
                    _ns(row.value.imag, args.digits),
                    _ns(row.diff, 12) if row.diff is not None else "",
                )
            )
        comments = [f"# case = {study.case}"]
        comments.append(
            "# fitted_ratio = "
            + (_ns(study.fitted_ratio, 12) if study.fitted_ratio is not None else "n/a")
        )
        comments.append(
            "# max_imag_fraction = " + _ns(study.max_imag_fraction, 12)
        )
    _write_table(
        args,
        "ising",
        {"q": str(args.q), "coupling": str(args.coupling),
         "digits": args.digits},
        ("n", "Re M_n", "Im M_n", "|M_n - M_{n-1}|"),
        rows,
        comments,
        out,
    )
    return 0


# ---------------------------------------------------------------------------
# self-check suite


def _check_families(digits):
    t = mp.mpf("0.3")
    exp_phi = Symbol(lambda z: mp.exp(z), 0, mp.inf, label="exp(z)")
    exp_ratio = Symbol(
        lambda z: mp.exp(t * (z - 1 / z)), 0, mp.inf, label="exp-ratio"
    )
    syms = ising_symbols(IsingParams(q=mp.mpf("0.5"), coupling=mp.mpf("0.25")))
    return (exp_phi, exp_ratio), syms


def cmd_check(args, out=sys.stdout) -> int:
    quick = args.profile == "quick"
    digits = args.digits if args.digits else (60 if quick else 80)
    m_order = 64 if quick else DEFAULT_TRUNC_ORDER
    nodes = 256 if quick else 512
    jump_nodes = 16 if quick else 64
    failures = []
    lines = []

    def report(name, ok, detail):
        lines.append(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures.append(name)

    with precision_ctx(digits):
        (exp_phi, exp_ratio), syms = _check_families(digits)
        exp_weight = sym_product(exp_ratio, exp_phi)
        tol_sym = mpf(10) ** (-(digits - 15))

        # 1. reflection symmetry of the 4x4 jump
        worst = mpf(0)
        pts = [mp.expjpi(mpf(2 * j) / 7) * mpf("1.1") for j in range(7)]
        pts += [mp.expjpi(mpf(2 * j) / 5) * mpf("0.8") for j in range(5)]
        for pair in (
            (exp_phi, exp_weight),
            (syms.phi_unit, syms.weight_unit),
        ):
            for offs in ((0, 0), (0, 1), (0, 2), (1, 1)):
                for z in pts:
                    worst = max(worst, wsym_residual(pair[0], pair[1], *offs, z))
        report(
            "jump-reflection-symmetry", worst < tol_sym,
            f"max residual {mp.nstr(worst, 5)} (tol {mp.nstr(tol_sym, 3)})",
        )

        # 2. model-solution suite
        from .numerics import PrecMatrix, det_lu, to_prec
        from .szego import lambda_model, szego_split

        engines = {}
        for label, phi_s, ratio_s in (
            ("exp-family", exp_phi, exp_ratio),
            ("ising-critical", syms.phi_unit, syms.multiplier),
        ):
            engine = AsymptoticEngine(
                phi_s, ratio_s, digits=digits, m_order=m_order, nodes=nodes,
                debug_flip_g23=args.debug_flip_g23,
            )
            engines[label] = engine
            worst_jump = mpf(0)
            circle = unit_points(jump_nodes)
            for tau in circle:
                worst_jump = max(worst_jump, engine.lambda_jump_residual(tau))
            report(
                f"model-jump[{label}]", worst_jump < mpf("1e-30"),
                f"max residual {mp.nstr(worst_jump, 5)}",
            )

            worst_det = mpf(0)
            for k in range(8):
                z = mp.expjpi(mpf(2 * k) / 8 + mpf("0.1")) * (
                    mpf("0.7") if k % 2 else mpf("1.6")
                )
                c_val = (
                    engine.kernel.interior(z)
                    if abs(z) < 1
                    else engine.kernel.exterior(z)
                )
                lam = lambda_model(engine.sd_alpha, engine.sd_beta, c_val, z)
                worst_det = max(worst_det, abs(det_lu(lam) - 1))
            report(
                f"model-determinant[{label}]",
                worst_det < mpf(10) ** (-(digits - 20)),
                f"max |det - 1| = {mp.nstr(worst_det, 5)}",
            )

            far = mp.mpf("1e6")
            lam_far = lambda_model(
                engine.sd_alpha, engine.sd_beta,
                engine.kernel.exterior(far), far,
            )
            dev = lam_far.sub(PrecMatrix.identity(4)).max_abs()
            report(
                f"model-normalization[{label}]", dev < mpf("1e-5"),
                f"|model(1e6) - I| = {mp.nstr(dev, 5)}",
            )

            # 3. contour-coefficient suite.  Probe radii stay close to the
            # working radius: far smaller radii amplify quadrature aliasing
            # (including exponentiated rounding noise of the series tails)
            # by radius^(-nodes).  The tolerance still carries the
            # first-principles aliasing floor, which matters when --digits
            # far exceeds what the node count can support.
            r_lo = max(mpf("0.85") * engine.r_star,
                       (engine.r0 + engine.r_star) / 2)
            r_hi = engine.r_star + (1 - engine.r_star) / 4
            n_probe = 6 if quick else 10
            alias = (
                100 * (engine.r0 / r_lo) ** (nodes - n_probe)
                if engine.r0 > 0 else mpf(0)
            )
            tol_ci = mpf(10) ** (-(digits - 20)) + alias
            worst_r = mpf(0)
            for jk in ((1, 4), (3, 2), (2, 3), (4, 1)):
                v1 = engine.r1(jk, n_probe, radius=r_lo)
                v2 = engine.r1(jk, n_probe, radius=r_hi)
                worst_r = max(worst_r, abs(v1 - v2))
            report(
                f"contour-independence[{label}]",
                worst_r < tol_ci,
                f"max radius sensitivity {mp.nstr(worst_r, 5)} "
                f"(tol {mp.nstr(tol_ci, 3)})",
            )

            # 3b. one-sided kernel defining identity: the (2,3) kernel times
            # the continued inner split factor must cancel against
            # alpha0 * d(1/z) * (inner split factor of d).  This is the
            # check the --debug-flip-g23 fault injection is designed to trip.
            gset = engine.g_kernel_set()
            worst_id = mpf(0)
            for j in range(16):
                z = mp.expjpi(mpf(2 * j) / 16 + mpf("0.05")) * mpf("0.6")
                lhs = gset.entry((2, 3), z) * engine.sd_alpha.inner(1 / z)
                rhs = (
                    engine.sd_alpha.alpha0
                    * to_prec(ratio_s.fn(1 / z))
                    * engine.sd_beta.inner(z)
                )
                worst_id = max(worst_id, abs(lhs + rhs))
            report(
                f"kernel-identity[{label}]",
                worst_id < mpf(10) ** (-(digits - 15)),
                f"max defining-identity residual {mp.nstr(worst_id, 5)}",
            )

        # 3c. multiplicative split of each winding-zero symbol: on the unit
        # circle the inner factor equals the outer factor times the symbol
        # itself (boundary-value identity of the two-sided split).
        for label, sym in (
            ("exp-family", exp_phi),
            ("ising-critical", syms.phi),
        ):
            sd = szego_split(sym, m_order, nodes)
            tail = abs(sd.log_coeff(m_order)) + abs(sd.log_coeff(-m_order))
            tol_split = mpf(10) ** (-(digits - 20)) + 100 * tail
            worst_split = mpf(0)
            for tau in unit_points(jump_nodes):
                dev = abs(sd.inner(tau) - sd.outer(tau) * to_prec(sym.fn(tau)))
                worst_split = max(worst_split, dev)
            report(
                f"boundary-split[{label}]", worst_split < tol_split,
                f"max boundary deviation {mp.nstr(worst_split, 5)} "
                f"(tol {mp.nstr(tol_split, 3)})",
            )

        # 3d. offset-reduction solvers: solve each closed-form system on
        # first-order connection data, then substitute back into the system
        # it claims to solve.
        data_plain = engines["exp-family"].rhp_data(6)
        data_seeded = engines["exp-family"].rhp_data(6, seed=11)
        tol_plug = mpf(10) ** (-(digits - 12))
        res01 = offset01_residual(data_plain, solve_offset01(data_plain))
        report(
            "plugback-offset01", res01 < tol_plug,
            f"system residual {mp.nstr(res01, 5)}",
        )
        res00 = offset00_residual(data_seeded, solve_offset00(data_seeded))
        report(
            "plugback-offset00", res00 < tol_plug,
            f"system residual {mp.nstr(res00, 5)}",
        )
        sol02 = solve_offset02(data_seeded)
        res02 = offset02_residual(data_seeded, sol02)
        lu02 = solve_offset02_lu(data_seeded)
        dev_lu = mpf(0)
        for key, cols in sol02.columns.items():
            for value, lu_value in zip(cols, lu02[key]):
                scale = max(mpf(1), abs(value))
                dev_lu = max(dev_lu, abs(value - lu_value) / scale)
        report(
            "plugback-offset02", res02 < tol_plug and dev_lu < tol_plug,
            f"system residual {mp.nstr(res02, 5)}, "
            f"LU cross-check deviation {mp.nstr(dev_lu, 5)}",
        )

        # 4. predictor-versus-determinant sanity. The offset-(1,1) ratio
        # predictor is checked on the critical lattice pair; the offset-(0,1)
        # norm is checked on the exponential pair, whose reduction data is
        # nondegenerate (the critical pair's connection matrix has exact
        # zeros in the reduction pivots, so no converging (0,1) predictor
        # exists there).
        n_sane = 8 if quick else 10
        for label, phi_s, weight_s, offs, shift in (
            ("ising-critical", syms.phi_unit, syms.weight_unit,
             (1, 1), H11_SHIFT),
            ("exp-family", exp_phi, exp_weight, (0, 1), H01_SHIFT),
        ):
            engine = engines[label]
            predict = (
                engine.predict_h11 if offs == (1, 1)
                else engine.predict_h01_model
            )
            sys_ = determinants.THSystem(
                phi=phi_s, weight=weight_s,
                toeplitz_offset=offs[0], hankel_offset=offs[1],
                digits=digits, m_order=m_order, nodes=nodes,
            )
            exact = determinants.norm_h(sys_, n_sane)
            predicted = predict(n_sane + shift)
            rel = abs(predicted - exact) / abs(exact)
            report(
                f"predictor-sanity[{offs[0]},{offs[1]}]", rel < mpf("1e-3"),
                f"relative deviation {mp.nstr(rel, 5)} at n={n_sane} "
                f"({label})",
            )

        # 5. determinant ladder
        one = Symbol(lambda z: mpc(1), 0, mp.inf, label="1")
        triv = determinants.THSystem(
            phi=one, weight=one, toeplitz_offset=0, hankel_offset=1,
            digits=digits, m_order=m_order, nodes=nodes,
        )
        worst_triv = mpf(0)
        for n in range(0, 7):
            worst_triv = max(worst_triv, abs(determinants.det_th(triv, n) - 1))
        report(
            "trivial-determinants", worst_triv < mpf(10) ** (-(digits - 10)),
            f"max |D_n - 1| = {mp.nstr(worst_triv, 5)}",
        )

        sys_e = determinants.THSystem(
            phi=exp_phi, weight=exp_weight, toeplitz_offset=0,
            hankel_offset=1, digits=digits, m_order=m_order, nodes=nodes,
        )
        worst_ladder = mpf(0)
        for n in range(0, 6):
            lhs = determinants.norm_h(sys_e, n) * determinants.det_th(sys_e, n)
            rhs = determinants.det_th(sys_e, n + 1)
            scale = max(abs(rhs), mpf(1))
            worst_ladder = max(worst_ladder, abs(lhs - rhs) / scale)
        report(
            "norm-determinant-ladder",
            worst_ladder < mpf(10) ** (-(digits - 15)),
            f"max scaled deviation {mp.nstr(worst_ladder, 5)}",
        )

    _emit(lines, out)
    if failures:
        out.write(f"FAILED checks: {', '.join(failures)}\n")
        return 4
    out.write("all checks passed\n")
    return 0


def unit_points(n: int):
    return [mp.expjpi(mpf(2 * j) / n) for j in range(n)]


# ---------------------------------------------------------------------------
# parser and dispatch


def _add_common(p, digits=DEFAULT_PRECISION, m_order=DEFAULT_TRUNC_ORDER,
                nodes=DEFAULT_NODES):
    p.add_argument("--digits", type=int, default=digits)
    p.add_argument("--m-order", type=int, default=m_order)
    p.add_argument("--nodes", type=int, default=nodes)
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_pair(p):
    p.add_argument("--q", type=str, default=None,
                   help="Ising family parameter in (0,1)")
    p.add_argument("--coupling", type=str, default=None,
                   help="Ising coupling ratio; defaults to the critical q^2")
    p.add_argument("--phi", type=str, default=None,
                   help="symbol expression in z")
    p.add_argument("--ratio", type=str, default=None,
                   help="weight-ratio expression (weight = ratio * phi)")
    p.add_argument("--weight", type=str, default=None,
                   help="weight expression (alternative to --ratio)")
    p.add_argument("--offsets", type=str, default=None,
                   help="offset pair 'dr,ds'")
    p.add_argument("--r-i", type=str, default="0")
    p.add_argument("--r-o", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thdet",
        description="Toeplitz+Hankel determinants, norms and asymptotics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="Fourier coefficients of a symbol")
    p.add_argument("--symbol", required=True)
    _add_common(p, m_order=16, nodes=256)
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("dets", help="determinant and norm ladder")
    _add_pair(p)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=10)
    _add_common(p)
    p.set_defaults(fn=cmd_dets)

    p = sub.add_parser("asymp-compare",
                       help="exact norms vs asymptotic predictions")
    _add_pair(p)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--r-star", type=str, default=None)
    p.add_argument("--debug-flip-g23", action="store_true",
                   help=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(fn=cmd_asymp_compare)

    p = sub.add_parser("ising", help="magnetization table")
    p.add_argument("--q", type=str, required=True)
    p.add_argument("--coupling", type=str, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=12)
    _add_common(p)
    p.set_defaults(fn=cmd_ising)

    p = sub.add_parser("check", help="structural self-checks")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--debug-flip-g23", action="store_true",
                   help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_check)

    return parser


_CONFIG_ERRORS = (
    ConfigError,
    InvalidParams,
    NodeCountTooSmall,
    TruncationExceeded,
    OutsideAnnulus,
    OnCircle,
    ZeroOnCircle,
    NonzeroWinding,
    PhaseUnresolved,
    MissingData,
)

_DEGENERACY_ERRORS = (
    DegeneratePredictor,
    GenericityFailed,
    GenericConditionFailed,
    SingularDn,
    Singular,
)

_INVARIANT_ERRORS = (ConsistencyError, ModelNotFactorizable)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except _CONFIG_ERRORS as exc:
        print(f"error (configuration): {exc}", file=sys.stderr)
        return 2
    except _DEGENERACY_ERRORS as exc:
        print(f"error (degenerate data): {exc}", file=sys.stderr)
        return 3
    except _INVARIANT_ERRORS as exc:
        print(f"error (invariant violated): {exc}", file=sys.stderr)
        return 4
    except ThdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
