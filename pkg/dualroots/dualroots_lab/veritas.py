"""Checkers for the realrootedness, interlacing and monotonicity statements.

Every comparison goes through certified enclosures from rootlab. A check
reports Inconclusive when enclosures reach the width floor without
separating, which is never reported as a failure.
"""
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath

from dualroots.dualroots_lab.config import DualRootsConfig, get_config
from dualroots.dualroots_lab.consts import DUALROOTS_SUITE_MAX_DEGREE
from dualroots.dualroots_lab.exceptions import (
    DualRootsConfigException,
    DualRootsDomainException,
    TheoremViolationException,
)
from dualroots.dualroots_lab.families import (
    FamilyId,
    FamilyKind,
    charlier,
    check_degree,
    constant_root_ledger,
    dz_family,
    family_poly,
    gegenbauer,
    gegenbauer_modified,
    gegenbauer_ode_residue,
    gegenbauer_tilde,
    laguerre,
    laguerre_ode_residue,
    modified_identity_residue,
    modified_rule_residue,
    reduced_gegenbauer,
    szego_derivative_residue,
    szego_recurrence_residue,
    szego_shift_residue,
    tilde_derivative_shift_residue,
    tilde_identity_residue,
)
from dualroots.dualroots_lab.log import log
from dualroots.dualroots_lab.polycore import (
    RationalLike,
    UniPoly,
    dyadic_grid,
    to_rational,
)
from dualroots.dualroots_lab.reports import (
    InterlacingReport,
    MonotonicityReport,
    OrthogonalityReport,
    Report,
    SuiteReport,
    Verdict,
    fmt_rational,
)
from dualroots.dualroots_lab.rootlab import (
    RootEnclosure,
    RootIsolation,
    compare_roots,
    gamma_roots,
    isolate,
    positive_roots,
    sign_at_root,
    zero_multiplicity,
)
from dualroots.dualroots_lab.trajectory import (
    cross_check,
    divergence_probe,
    initial_order_check,
    slopes,
    trace,
)
from dualroots.dualroots_lab.workers import parallel_map

THEOREM_IDS = (
    "def-family",
    "def-gtilde",
    "thm-interlderiv",
    "thm-monoroots",
    "cor-laguerrez",
    "thm-gegenbauerz",
    "cor-gegenbauerzmod",
    "thm-dualinterlG",
    "cor-dualinterlGmod",
    "thm-laguerreD",
    "thm-gegenbauerD",
    "lem-laguerre-ineq",
    "thm-charlier-orth",
    "lem-interlacing",
    "lem-ode-roots",
)

HALF = Fraction(1, 2)


def _dicts(encs: Sequence[RootEnclosure], digits: int = None) -> List[dict]:
    return [e.to_dict(digits) for e in encs]


def _expanded_desc(encs: Sequence[RootEnclosure]) -> List[RootEnclosure]:
    """Descending roots, each repeated by its multiplicity"""
    rslt = []
    for enc in reversed(list(encs)):
        rslt.extend([enc] * enc.multiplicity)
    return rslt


def _allowed(enc_a: RootEnclosure, enc_b: RootEnclosure, allowed: Sequence[Fraction]):
    for mu in allowed:
        if (
            enc_a.contains(mu)
            and enc_b.contains(mu)
            and enc_a.poly.sign_at(mu) == 0
            and enc_b.poly.sign_at(mu) == 0
        ):
            return mu
    return None


# region Interlacing


def interlace_enclosures(
    report: InterlacingReport,
    p_desc: List[RootEnclosure],
    q_desc: List[RootEnclosure],
    mode: str = "weak",
    leading: str = "either",
    allowed_equalities: Sequence[Fraction] = (),
    config: DualRootsConfig = None,
) -> InterlacingReport:
    """Checks the chain p1 >= q1 >= p2 >= ... (or led by q) on descending enclosures"""
    assert mode in ("strict", "weak"), ValueError(f"Unknown mode {mode!r}")
    assert leading in ("p", "either"), ValueError(f"Unknown leading rule {leading!r}")
    config = get_config(config)
    floor = config.width_floor

    if len(q_desc) > len(p_desc) or len(p_desc) - len(q_desc) > 1:
        report.fail(message="root counts cannot interlace", p_count=len(p_desc), q_count=len(q_desc))
        return report

    leader = "p"
    if len(p_desc) == len(q_desc) and p_desc and leading == "either":
        rel, _, _ = compare_roots(p_desc[0], q_desc[0], floor)
        if rel == "<":
            leader = "q"
    report.leading = leader

    first, second = (p_desc, q_desc) if leader == "p" else (q_desc, p_desc)
    labels = ("p", "q") if leader == "p" else ("q", "p")
    chain: List[Tuple[str, int, RootEnclosure]] = []
    for i in range(len(first)):
        chain.append((labels[0], i + 1, first[i]))
        if i < len(second):
            chain.append((labels[1], i + 1, second[i]))

    equalities = False
    seen_shared = set()
    for (ua, ui, upper), (la, li, lower) in zip(chain, chain[1:]):
        rel, lower, upper = compare_roots(lower, upper, floor)
        if rel == "<":
            continue
        pair = {"upper": f"{ua}{ui}", "lower": f"{la}{li}"}
        if rel is None:
            report.inconclusive(message="enclosures overlap at the width floor", **pair)
            continue
        if rel == ">":
            report.fail(
                message="chain order violated",
                upper_root=upper.to_dict(),
                lower_root=lower.to_dict(),
                **pair,
            )
            continue
        # equal roots
        mu = _allowed(upper, lower, allowed_equalities)
        key = (upper.lo, upper.hi) if mu is None else mu
        if key not in seen_shared:
            seen_shared.add(key)
            report.shared_roots.append(
                {"root": upper.to_dict(), "ledger": mu is not None, **pair}
            )
        if mode == "strict" and mu is None:
            report.fail(message="equal roots in strict mode", root=upper.to_dict(), **pair)
        equalities = True

    if report.outcome == Verdict.passed:
        report.verdict = Verdict.weak_interlace if equalities else Verdict.strict_interlace
    return report


def check_interlacing(
    p: UniPoly,
    q: UniPoly,
    mode: str = "weak",
    leading: str = "either",
    allowed_equalities: Sequence[Fraction] = (),
    theorem_id: str = "lem-interlacing",
    config: DualRootsConfig = None,
) -> InterlacingReport:
    """Interlacing of the real roots of p and q, deg q in {deg p, deg p - 1}"""
    config = get_config(config)
    if p.is_zero or q.is_zero:
        raise DualRootsDomainException("Interlacing is not defined for the zero polynomial")
    if q.degree not in (p.degree, p.degree - 1):
        raise DualRootsDomainException(
            f"Degree mismatch: deg p = {p.degree}, deg q = {q.degree}"
        )
    iso_p, iso_q = isolate(p, config), isolate(q, config)
    for name, iso in (("p", iso_p), ("q", iso_q)):
        if not iso.is_real_rooted:
            raise DualRootsDomainException(
                f"Input {name} is not real-rooted (nonreal deficit {iso.nonreal_deficit})"
            )
    tol = config.theorem_tol
    p_roots, q_roots = iso_p.refine_all(tol), iso_q.refine_all(tol)

    report = InterlacingReport(
        theorem_id,
        {"p": p.to_text(), "q": q.to_text(), "mode": mode},
    )
    report.p_roots = _dicts(p_roots, config.decimal_digits)
    report.q_roots = _dicts(q_roots, config.decimal_digits)
    return interlace_enclosures(
        report,
        _expanded_desc(p_roots),
        _expanded_desc(q_roots),
        mode,
        leading,
        allowed_equalities,
        config,
    )


def _guarded_interlacing(report_inputs: dict, theorem_id: str, *args, **kwargs) -> Report:
    """check_interlacing where a realrootedness failure is a failed check"""
    try:
        report = check_interlacing(*args, theorem_id=theorem_id, **kwargs)
    except DualRootsDomainException as ex:
        report = InterlacingReport(theorem_id, {})
        report.fail(message=str(ex))
    report.inputs.update(report_inputs)
    return report


def _x_domain(kind: FamilyKind, z0: Fraction):
    if kind == FamilyKind.laguerre and z0 <= -1:
        raise DualRootsDomainException(f"Laguerre checks need z > -1, got {fmt_rational(z0)}")
    if kind in (FamilyKind.gegenbauer, FamilyKind.gegenbauer_modified) and z0 <= -HALF:
        raise DualRootsDomainException(
            f"Gegenbauer checks need z > -1/2, got {fmt_rational(z0)}"
        )


def verify_classical_x_interlacing(
    f: FamilyId, z0: RationalLike, config: DualRootsConfig = None
) -> SuiteReport:
    """P_n against P_{n-1} and against dP_n/dx, in x at z = z0"""
    z0 = to_rational(z0)
    kind = f.kind
    if kind not in (FamilyKind.laguerre, FamilyKind.gegenbauer, FamilyKind.gegenbauer_modified):
        raise DualRootsDomainException(f"No classical interlacing check for {kind.value}")
    _x_domain(kind, z0)
    if f.n < 1:
        raise DualRootsDomainException("Interlacing checks need n >= 1")
    if kind == FamilyKind.gegenbauer and z0 == 0:
        # G_n(x, 0) vanishes identically, the rescaled family carries the roots
        log.info("Gegenbauer at z=0 checked through the modified family")
        kind = FamilyKind.gegenbauer_modified

    big = family_poly(FamilyId(kind, f.n), config)
    p = big.specialize("z", z0)
    q = family_poly(FamilyId(kind, f.n - 1), config).specialize("z", z0)
    r = big.differentiate("x").specialize("z", z0)
    inputs = {"family": kind.value, "n": f.n, "z0": fmt_rational(z0)}
    suite = SuiteReport("thm-interlderiv", inputs)
    suite.add(
        _guarded_interlacing(
            {**inputs, "pair": "previous"}, "thm-interlderiv", p, q, "strict", "p", config=config
        )
    )
    suite.add(
        _guarded_interlacing(
            {**inputs, "pair": "dx"}, "thm-interlderiv", p, r, "strict", "p", config=config
        )
    )
    return suite


def verify_dual_interlacing(
    n: int,
    x0: RationalLike,
    families: Sequence[str] = ("gegenbauer", "gegenbauer-modified"),
    config: DualRootsConfig = None,
) -> SuiteReport:
    """G_n(x0, .) against G_{n-1}(x0, .) and dG_n/dx(x0, .) in z, likewise for Ĝ"""
    config = get_config(config)
    x0 = to_rational(x0)
    check_degree(n, config)
    inputs = {"n": n, "x0": fmt_rational(x0)}
    suite = SuiteReport("thm-dualinterlG", inputs)
    if n < 1:
        raise DualRootsDomainException("Dual interlacing needs n >= 1")
    if x0 == 0:
        suite.verdict = Verdict.degenerate_at_zero
        suite.add_witness(message="x0 = 0: interlacing holds only up to conventions")
        return suite
    if not -1 <= x0 <= 1:
        raise DualRootsDomainException(f"Dual interlacing needs x0 in [-1, 1], got {fmt_rational(x0)}")

    for family in families:
        kind = FamilyKind.parse(family)
        big = family_poly(FamilyId(kind, n), config)
        p = big.specialize("x", x0)
        partners = {
            "previous": family_poly(FamilyId(kind, n - 1), config).specialize("x", x0),
            "dx": big.differentiate("x").specialize("x", x0),
        }
        modified = kind == FamilyKind.gegenbauer_modified
        theorem_id = "cor-dualinterlGmod" if modified else "thm-dualinterlG"
        mode = "strict" if modified and abs(x0) != 1 else "weak"
        for partner, q in partners.items():
            ledger = constant_root_ledger(kind, n, partner)
            report = _guarded_interlacing(
                {**inputs, "family": kind.value, "pair": partner},
                theorem_id,
                p,
                q,
                mode,
                "either",
                ledger.shared,
                config=config,
            )
            report["ledger"] = ledger.to_dict()
            if mode == "strict":
                for name, poly in (("p", p), ("q", q)):
                    if not isolate(poly, config).is_simple:
                        report.fail(message=f"{name} has a multiple root in z")
            suite.add(report)
    return suite


# endregion

# region Monotonicity


def _strictly_increasing(grid: Sequence[Fraction]) -> bool:
    return all(a < b for a, b in zip(grid, grid[1:]))


def _monotonicity_theorem(kind: FamilyKind, var_fixed: str, k: int) -> str:
    if var_fixed == "x":
        return "thm-gegenbauerz"
    if k == 0:
        return "thm-monoroots"
    return "thm-laguerreD" if kind == FamilyKind.laguerre else "thm-gegenbauerD"


def verify_root_monotonicity(
    f: FamilyId,
    var_fixed: str,
    grid: Sequence[RationalLike],
    root_selector: str = "all",
    k: int = 0,
    expected: Optional[Verdict] = None,
    config: DualRootsConfig = None,
) -> SuiteReport:
    """Per root verdicts for the roots moving along the grid.

    Args:
        var_fixed (str): "z" to follow the x-roots of d^k/dz^k P(x, z_j) over a
            z grid, "x" to follow the gamma roots over an x grid.
        root_selector (str): "all", "positive" or "gamma".
        expected (Verdict, optional): Required direction; by default
            Laguerre roots increase, positive Gegenbauer roots decrease and
            gamma roots increase on [-1, 0) and decrease on (0, 1].
    """
    config = get_config(config)
    assert var_fixed in ("x", "z"), ValueError(f"Unknown variable tag {var_fixed!r}")
    assert root_selector in ("all", "positive", "gamma"), ValueError(
        f"Unknown root selector {root_selector!r}"
    )
    grid = [to_rational(v) for v in grid]
    if len(grid) < 2 or not _strictly_increasing(grid):
        raise DualRootsDomainException("The grid must hold at least two strictly increasing values")
    kind = f.kind
    theorem_id = _monotonicity_theorem(kind, var_fixed, k)
    inputs = {
        "family": kind.value,
        "n": f.n,
        "k": k,
        "var_fixed": var_fixed,
        "selector": root_selector,
        "grid": [fmt_rational(v) for v in grid],
    }
    suite = SuiteReport(theorem_id, inputs)

    per_point: List[List[RootEnclosure]] = []
    if var_fixed == "x":
        if root_selector != "gamma" or kind not in (
            FamilyKind.gegenbauer,
            FamilyKind.gegenbauer_modified,
            FamilyKind.gegenbauer_tilde,
        ):
            raise DualRootsDomainException("Fixed-x monotonicity follows the gamma roots only")
        if not (all(-1 <= x < 0 for x in grid) or all(0 < x <= 1 for x in grid)):
            raise DualRootsDomainException("The x grid must lie in [-1, 0) or in (0, 1]")
        if expected is None:
            expected = Verdict.increasing if grid[0] < 0 else Verdict.decreasing
        for x in grid:
            per_point.append(gamma_roots(f.n, x, None, "value", config).values)
    else:
        if root_selector == "gamma":
            raise DualRootsDomainException("The gamma selector needs var_fixed = x")
        for z in grid:
            _x_domain(kind, z)
        poly = dz_family(f, k, config)
        for z in grid:
            spec = poly.specialize("z", z)
            if spec.degree < 1:
                per_point.append([])
                continue
            iso = isolate(spec, config)
            iso.refine_all(config.theorem_tol)
            if root_selector == "positive":
                per_point.append(positive_roots(iso))
            else:
                per_point.append(iso.intervals)
        if expected is None and kind == FamilyKind.laguerre:
            expected = Verdict.increasing

    counts = {len(v) for v in per_point}
    if len(counts) != 1:
        suite.fail(message="root count changes along the grid", counts=[len(v) for v in per_point])
        return suite

    for i in range(counts.pop()):
        series = [encs[i] for encs in per_point]
        report = MonotonicityReport(theorem_id, dict(inputs))
        report.root_index = i + 1
        report.grid = inputs["grid"]
        report.values.extend(_dicts(series, config.decimal_digits))
        if all(e.exact and e.lo == 0 for e in series):
            report.add_witness(message="root fixed at 0")
            suite.add(report)
            continue

        direction = expected
        if direction is None:
            # Gegenbauer x-roots: positive ones decrease, negative ones increase
            direction = Verdict.decreasing if series[0].lo >= 0 else Verdict.increasing

        steps = []
        for j, (a, b) in enumerate(zip(series, series[1:])):
            rel, _, _ = compare_roots(a, b, config.width_floor)
            steps.append(rel)
            if rel is None:
                report.inconclusive(message="unresolved step", step=j)
        if None not in steps:
            if all(s == "<" for s in steps):
                report.verdict = Verdict.increasing
            elif all(s == ">" for s in steps):
                report.verdict = Verdict.decreasing
            else:
                report.fail(message="not monotone", steps=steps)
        if report.outcome == Verdict.passed and report.verdict != direction:
            report.fail(message=f"expected {direction.value}", observed=report["verdict"])
        suite.add(report)
    return suite


# endregion

# region Realrootedness in z


def verify_z_realrootedness(
    kind: FamilyKind,
    n: int,
    x_grid: Sequence[RationalLike],
    config: DualRootsConfig = None,
) -> Report:
    """Zero nonreal deficit of P_n(x0, .) on the support, simple roots for Ĝ"""
    config = get_config(config)
    kind = FamilyKind.parse(kind)
    theorem_id = {
        FamilyKind.laguerre: "cor-laguerrez",
        FamilyKind.gegenbauer: "thm-gegenbauerz",
        FamilyKind.gegenbauer_modified: "cor-gegenbauerzmod",
    }.get(kind)
    if theorem_id is None:
        raise DualRootsDomainException(f"No realrootedness statement for {kind.value}")
    grid = [to_rational(x) for x in x_grid]
    for x in grid:
        if kind == FamilyKind.laguerre and x < 0:
            raise DualRootsDomainException(f"Laguerre realrootedness holds for x >= 0, got {fmt_rational(x)}")
        if kind != FamilyKind.laguerre and (x == 0 or abs(x) > 1):
            raise DualRootsDomainException(
                f"Gegenbauer realrootedness holds for x in [-1, 1] without 0, got {fmt_rational(x)}"
            )

    poly = family_poly(FamilyId(kind, n), config)
    report = Report(theorem_id, {"family": kind.value, "n": n, "grid": [fmt_rational(x) for x in grid]})
    report["rows"] = []
    for x in grid:
        spec = poly.specialize("x", x)
        iso = isolate(spec, config)
        row = {
            "x": fmt_rational(x),
            "degree": spec.degree,
            "real_count": iso.real_count,
            "nonreal_deficit": iso.nonreal_deficit,
            "simple": iso.is_simple,
        }
        report["rows"].append(row)
        if spec.degree != n:
            report.fail(message="degree drop in z", **row)
        elif iso.nonreal_deficit > 0:
            report.fail(message="nonreal roots inside the support", **row)
        elif kind == FamilyKind.gegenbauer_modified and not iso.is_simple:
            report.fail(message="multiple root", **row)
    return report


def verify_gegenbauer_z(
    n: int, x_grid: Sequence[RationalLike], config: DualRootsConfig = None
) -> SuiteReport:
    """Realrootedness of G_n(x0, .) and the motion of its gamma roots"""
    config = get_config(config)
    grid = sorted(to_rational(x) for x in x_grid)
    suite = SuiteReport("thm-gegenbauerz", {"n": n, "grid": [fmt_rational(x) for x in grid]})
    suite.add(verify_z_realrootedness(FamilyKind.gegenbauer, n, grid, config))
    if n < 2:
        return suite
    for x in grid:
        try:
            count = len(gamma_roots(n, x, None, "value", config))
        except TheoremViolationException as ex:
            suite.fail(message=str(ex), **ex.witness)
            continue
        if count != n // 2:
            suite.fail(message="gamma count", x=fmt_rational(x), count=count)
    f = FamilyId(FamilyKind.gegenbauer, n)
    for part in ([x for x in grid if x < 0], [x for x in grid if x > 0]):
        if len(part) >= 2:
            suite.add(verify_root_monotonicity(f, "x", part, "gamma", config=config))
    return suite


# endregion

# region Derivative families


def verify_derivative_family(
    f: FamilyId,
    z0: RationalLike,
    raise_on_fail: bool = False,
    config: DualRootsConfig = None,
) -> SuiteReport:
    """Root profile of d^k/dz^k P_n(x, z0) for k = 0..n.

    Laguerre: degree n-k, simple real roots, strict chain interlacing,
    increasing roots. Ĝ: degree n, floor(n/2) positive roots while
    k <= n - floor(n/2) then n-k, zero roots adding two by two, strict
    interlacing of positive roots, decreasing positive roots.
    """
    config = get_config(config)
    z0 = to_rational(z0)
    kind = f.kind
    if kind not in (FamilyKind.laguerre, FamilyKind.gegenbauer_modified):
        raise DualRootsDomainException("Derivative families are checked for Laguerre and Ĝ")
    _x_domain(kind, z0)
    n = f.n
    h = n // 2
    laguerre_family = kind == FamilyKind.laguerre
    theorem_id = "thm-laguerreD" if laguerre_family else "thm-gegenbauerD"
    inputs = {"family": kind.value, "n": n, "z0": fmt_rational(z0)}
    suite = SuiteReport(theorem_id, inputs)
    tol = config.theorem_tol
    floor = config.width_floor

    polys = [dz_family(f, k, config).specialize("z", z0) for k in range(n + 1)]
    isos: List[Optional[RootIsolation]] = []
    for p in polys:
        if p.is_zero or p.degree < 1:
            isos.append(None)
            continue
        iso = isolate(p, config)
        iso.refine_all(tol)
        isos.append(iso)

    def roots_of(k: int) -> List[RootEnclosure]:
        iso = isos[k]
        if iso is None:
            return []
        return iso.intervals if laguerre_family else positive_roots(iso)

    for k, p in enumerate(polys):
        report = Report(theorem_id, {**inputs, "k": k})
        report["degree"] = p.degree
        iso = isos[k]
        expected_degree = n - k if laguerre_family else n
        if p.degree != expected_degree:
            report.fail(message="degree", expected=expected_degree, poly=p.to_text())
        if not laguerre_family and p.leading <= 0:
            report.fail(message="leading coefficient not positive", poly=p.to_text())
        if iso is not None:
            report["real_count"] = iso.real_count
            report["nonreal_deficit"] = iso.nonreal_deficit
            if not iso.is_real_rooted:
                report.fail(message="not real-rooted", poly=p.to_text())

        if laguerre_family:
            if iso is not None and not iso.is_simple:
                report.fail(message="multiple root", poly=p.to_text())
        else:
            expected_pos = h if k <= n - h else n - k
            pos = len(roots_of(k))
            zeros = zero_multiplicity(p) if not p.is_zero else None
            report["positive_count"] = pos
            report["zero_multiplicity"] = zeros
            if pos != expected_pos:
                report.fail(message="positive root count", expected=expected_pos, observed=pos)
            if zeros != n - 2 * expected_pos:
                report.fail(message="zero multiplicity", expected=n - 2 * expected_pos, observed=zeros)
            if any(e.multiplicity != 1 for e in roots_of(k)):
                report.fail(message="multiple positive root", poly=p.to_text())

        if k >= 1 and roots_of(k - 1):
            chain = InterlacingReport(theorem_id, {"k": k})
            interlace_enclosures(
                chain,
                _expanded_desc(roots_of(k - 1)),
                _expanded_desc(roots_of(k)),
                "strict",
                "p",
                (),
                config,
            )
            report["interlacing"] = chain["verdict"]
            if chain.outcome == Verdict.failed:
                report.fail(message="chain interlacing", witnesses=chain.witnesses)
            elif chain.outcome == Verdict.inconclusive:
                report.inconclusive(message="chain interlacing unresolved")

            # motion of the roots of P_{k-1} forces the sign of P_k there
            motion_sign = -1 if laguerre_family else 1
            h_poly = p * polys[k - 1].derivative()
            for enc in roots_of(k - 1):
                s, _ = sign_at_root(h_poly, enc, floor)
                if s is None:
                    report.inconclusive(message="unresolved sign", root=enc.to_dict())
                elif s != motion_sign:
                    report.fail(message="root motion sign", root=enc.to_dict(), sign=s)

        if 1 <= k <= n - 1 and roots_of(k):
            # Laguerre inequality in z at the roots of P_k
            h_poly = polys[k + 1] * polys[k - 1]
            for enc in roots_of(k):
                s, _ = sign_at_root(h_poly, enc, floor)
                if s is None:
                    report.inconclusive(message="unresolved sign", root=enc.to_dict())
                elif s != -1:
                    report.fail(message="Laguerre inequality in z", root=enc.to_dict(), sign=s)
        suite.add(report)

    grid = [z0, z0 + HALF, z0 + 1]
    for k in range(n):
        if not roots_of(k):
            continue
        suite.add(
            verify_root_monotonicity(
                f,
                "z",
                grid,
                "all" if laguerre_family else "positive",
                k,
                Verdict.increasing if laguerre_family else Verdict.decreasing,
                config,
            )
        )

    if raise_on_fail and suite.outcome == Verdict.failed:
        failing = next(c for c in suite.checks if Verdict(c["verdict"]).outcome == Verdict.failed)
        raise TheoremViolationException(
            f"Derivative family profile failed for {f}",
            theorem_id=theorem_id,
            witness=failing,
        )
    return suite


# endregion

# region Inequalities and sums


def laguerre_inequality_check(
    p: UniPoly, grid: Sequence[RationalLike], config: DualRootsConfig = None
) -> Report:
    """p''(z)p(z) - p'(z)^2 < 0 at every grid point, exactly"""
    iso = isolate(p, config)
    if not iso.is_real_rooted:
        raise DualRootsDomainException(
            f"Laguerre's inequality needs a real-rooted input (deficit {iso.nonreal_deficit})"
        )
    grid = [to_rational(v) for v in grid]
    report = Report("lem-laguerre-ineq", {"p": p.to_text(), "grid": [fmt_rational(v) for v in grid]})
    d1, d2 = p.derivative(), p.derivative(2)
    report["values"] = []
    for v in grid:
        value = d2(v) * p(v) - d1(v) ** 2
        report["values"].append({"z": fmt_rational(v), "value": fmt_rational(value)})
        if value > 0:
            report.fail(z=fmt_rational(v), value=fmt_rational(value))
        elif value == 0:
            if iso.is_simple:
                report.fail(z=fmt_rational(v), value="0", message="equality with simple roots")
            else:
                report.add_witness(z=fmt_rational(v), message="multiple-root case, weak inequality")
    return report


def charlier_orthogonality(
    n: int,
    m: int,
    x0: RationalLike,
    tol: RationalLike = None,
    dps: int = 50,
    config: DualRootsConfig = None,
) -> OrthogonalityReport:
    """Truncated Poisson-weighted sum of C_n C_m against n! x0^-n delta_nm.

    The terms are summed exactly and weighted by exp(-x0) at dps digits. For
    z > N the term x0^z/z! A z^d (A the absolute coefficient sum, d = n+m) is
    a majorant, and once its ratio drops below 1/2 the tail is at most twice
    the first omitted term.
    """
    config = get_config(config)
    x0 = to_rational(x0)
    tol = to_rational(tol) if tol is not None else config.ortho_tol
    if x0 <= 0:
        raise DualRootsDomainException(f"Charlier sums need x0 > 0, got {fmt_rational(x0)}")
    if not (0 <= n <= 12 and 0 <= m <= 12):
        raise DualRootsDomainException("Charlier sums are checked for n, m <= 12")
    if tol <= 0:
        raise DualRootsConfigException("tol must be positive")

    product = charlier(n, x0, config) * charlier(m, x0, config)
    d = max(product.degree, 0)
    a = sum(abs(c) for c in product.coeffs)
    target = Fraction(factorial(n)) / x0**n if n == m else Fraction(0)

    report = OrthogonalityReport(
        "thm-charlier-orth",
        {"n": n, "m": m, "x0": fmt_rational(x0), "tol": fmt_rational(tol), "dps": dps},
    )
    with mpmath.workdps(dps):
        weight = mpmath.exp(-mpmath.mpf(x0.numerator) / x0.denominator)
        total = Fraction(0)
        term = Fraction(1)  # x0^z / z!
        truncation = None
        tail = None
        for z in range(config.ortho_max_terms):
            total += term * product(z)
            term = term * x0 / (z + 1)  # now x0^(z+1)/(z+1)!
            nxt = z + 1
            ratio = x0 / (nxt + 1) * (Fraction(nxt + 1, nxt) ** d)
            if ratio <= HALF:
                bound = 2 * term * a * Fraction(nxt) ** d
                tail_mp = weight * (mpmath.mpf(bound.numerator) / bound.denominator)
                if tail_mp <= mpmath.mpf(tol.numerator) / tol.denominator / 10:
                    truncation, tail = z, tail_mp
                    break
        partial = weight * (mpmath.mpf(total.numerator) / total.denominator)
        target_mp = mpmath.mpf(target.numerator) / target.denominator
        difference = abs(partial - target_mp)
        report["target"] = fmt_rational(target)
        report["partial_sum"] = mpmath.nstr(partial, 30)
        report["difference"] = mpmath.nstr(difference, 6)
        if truncation is None:
            report["truncation_N"] = config.ortho_max_terms
            report["tail_bound"] = None
            report.inconclusive(message="tail bound not reached within the term cap")
            return report
        report["truncation_N"] = truncation
        report["tail_bound"] = mpmath.nstr(tail, 6)
        if difference > tail + mpmath.mpf(tol.numerator) / tol.denominator:
            report.fail(difference=mpmath.nstr(difference, 6))
    return report


# endregion

# region Identities and gamma data


def verify_family_identities(n_max: int, config: DualRootsConfig = None) -> Report:
    """Every exact identity tying the families together, for 1 <= n <= n_max"""
    check_degree(n_max + 1, config)
    report = Report("def-family", {"n_max": n_max})
    residues: Dict[str, Callable[[int], object]] = {
        "laguerre-ode": laguerre_ode_residue,
        "gegenbauer-ode": gegenbauer_ode_residue,
        "szego-derivative": szego_derivative_residue,
        "szego-recurrence": szego_recurrence_residue,
        "szego-shift": szego_shift_residue,
        "tilde-factorization": tilde_identity_residue,
        "tilde-shift": tilde_derivative_shift_residue,
        "modified-rescaling": modified_identity_residue,
        "modified-factor-rule": modified_rule_residue,
    }
    checked = 0
    for n in range(1, n_max + 1):
        for name, residue in residues.items():
            checked += 1
            value = residue(n)
            if not value.is_zero:
                report.fail(identity=name, n=n, residue=value.to_text())
        for kind, poly in (("gegenbauer", gegenbauer(n)), ("gegenbauer-modified", gegenbauer_modified(n))):
            checked += 2
            if poly.parities("x") != {n % 2}:
                report.fail(identity="parity", family=kind, n=n)
            if poly.reflect("x") != poly.scale((-1) ** n):
                report.fail(identity="reflection", family=kind, n=n)
        for kind in ("gegenbauer", "gegenbauer-modified"):
            checked += 1
            for mu in constant_root_ledger(kind, n).p_roots:
                if not family_poly(FamilyId(kind, n)).specialize("z", mu).is_zero:
                    report.fail(identity="constant root", family=kind, n=n, root=fmt_rational(mu))
    report["identities_checked"] = checked
    return report


def verify_gamma_initial(n: int, config: DualRootsConfig = None) -> Report:
    """gamma_i(-1) = -1/2 - (i-1) and the closed form of G̃_n(-1, z)"""
    config = get_config(config)
    decomposition = gegenbauer_tilde(n, config)
    report = Report("def-gtilde", {"n": n})
    h = n // 2
    closed = UniPoly.constant(Fraction((-1) ** n * 2**n, factorial(n)), "z")
    for i in range(1, h + 1):
        closed = closed * UniPoly((HALF + i - 1, 1), "z")
    if decomposition.reduced.specialize("x", -1) != closed:
        report.fail(message="closed form at x = -1", poly=decomposition.reduced.specialize("x", -1).to_text())
    if n >= 2:
        roots = gamma_roots(n, -1, None, "modulus", config)
        values = roots.exact_values()
        expected = [-HALF - (i - 1) for i in range(1, h + 1)]
        report["gamma"] = [fmt_rational(v) if v is not None else None for v in values]
        if values != expected:
            report.fail(message="initial gamma values", expected=[fmt_rational(v) for v in expected])
    return report


def verify_gamma_chain(
    n: int, x_grid: Sequence[RationalLike], config: DualRootsConfig = None
) -> SuiteReport:
    """G̃_n against G̃_{n-1} and against G̃_{n-1}(x, z+1), strict for x in (-1, 0)"""
    config = get_config(config)
    if n < 2:
        raise DualRootsDomainException("The gamma chain needs n >= 2")
    grid = [to_rational(x) for x in x_grid]
    if any(not -1 <= x < 0 for x in grid):
        raise DualRootsDomainException("The gamma chain is checked on [-1, 0)")
    suite = SuiteReport("lem-interlacing", {"n": n, "grid": [fmt_rational(x) for x in grid]})
    current = reduced_gegenbauer(n)
    previous = reduced_gegenbauer(n - 1)
    shifted = previous.shift("z", 1)
    for x in grid:
        mode = "weak" if x == -1 else "strict"
        inputs = {"n": n, "x": fmt_rational(x)}
        p = current.specialize("x", x)
        suite.add(
            _guarded_interlacing(
                {**inputs, "pair": "previous"},
                "lem-interlacing",
                p,
                previous.specialize("x", x),
                mode,
                "p",
                config=config,
            )
        )
        suite.add(
            _guarded_interlacing(
                {**inputs, "pair": "shift"},
                "lem-interlacing",
                p,
                shifted.specialize("x", x),
                mode,
                "p",
                config=config,
            )
        )
    return suite


def verify_ode_roots(
    n: int,
    x_end: RationalLike = Fraction(-1, 16),
    steps: int = 64,
    config: DualRootsConfig = None,
) -> SuiteReport:
    """Traced roots against certified enclosures, positive slopes, flat start, divergence"""
    config = get_config(config)
    x_end = to_rational(x_end)
    trajectory = trace(n, -1, x_end, steps, config)
    suite = SuiteReport("lem-ode-roots", {"n": n, "x_end": fmt_rational(x_end), "steps": steps})
    if not trajectory.completed:
        for event in trajectory.events:
            suite.fail(**event)
    suite.add(cross_check(trajectory, config))

    positive = Report("lem-ode-roots", {"n": n, "check": "slopes"})
    s = slopes(trajectory)
    if s.size and not (s > 0).all():
        positive.fail(message="non positive slope", minimum=float(s.min()))
    suite.add(positive)

    if n == 2:
        closed = Report("lem-ode-roots", {"n": n, "check": "closed-form"})
        with mpmath.workprec(config.mp_bits):
            last = trajectory[-1]
            x = last.x
            exact = Fraction(1) / (2 * x * x) - 1
            gap = abs(last.gamma_values[0] - mpmath.mpf(exact.numerator) / exact.denominator)
            closed["gap"] = mpmath.nstr(gap, 6)
            if gap > mpmath.mpf("1e-9"):
                closed.fail(message="endpoint differs from 1/(2x^2) - 1")
        suite.add(closed)

    for i in range(2, n // 2 + 1):
        suite.add(initial_order_check(n, i, config=config))

    probe = [Fraction(-1, 2**k) for k in range(1, 7)]
    suite.add(divergence_probe(n, probe, config))
    return suite


# endregion

# region Dispatch and suites

DEFAULT_LAGUERRE_X = [Fraction(0), HALF, Fraction(1), Fraction(2), Fraction(5)]
DEFAULT_LAGUERRE_Z = [Fraction(0), HALF, Fraction(1), Fraction(2)]
DEFAULT_MODIFIED_Z = [Fraction(0), HALF, Fraction(1)]
DEFAULT_INEQUALITY_Z = [Fraction(-1, 2), Fraction(0), Fraction(1), Fraction(5, 2), Fraction(7)]


def support_grid(points: int = None, config: DualRootsConfig = None) -> List[Fraction]:
    """Dyadic points of [-1, 1] without 0"""
    points = points or get_config(config).grid_points
    return [x for x in dyadic_grid(-1, 1, points, True, True) if x != 0]


def negative_grid(points: int = None, config: DualRootsConfig = None) -> List[Fraction]:
    """Dyadic points of [-1, 0)"""
    points = points or get_config(config).grid_points
    return dyadic_grid(-1, 0, points, True, False)


def _require(value, name: str, theorem_id: str):
    if value is None:
        raise DualRootsConfigException(f"{theorem_id} needs --{name}")
    return value


def run_theorem(
    theorem_id: str,
    n: int = None,
    m: int = None,
    z: RationalLike = None,
    x0: RationalLike = None,
    grid: Sequence[RationalLike] = None,
    tol: RationalLike = None,
    family: str = None,
    steps: int = 64,
    x_end: RationalLike = Fraction(-1, 16),
    config: DualRootsConfig = None,
) -> Report:
    """Runs one named check with the given parameters and desk-scale defaults"""
    config = get_config(config)
    if theorem_id not in THEOREM_IDS:
        raise DualRootsConfigException(
            f"Unknown theorem id {theorem_id!r}, expected one of: {', '.join(THEOREM_IDS)}"
        )
    z = to_rational(z) if z is not None else None
    x0 = to_rational(x0) if x0 is not None else None
    grid = [to_rational(v) for v in grid] if grid else None

    if theorem_id == "def-family":
        return verify_family_identities(n or DUALROOTS_SUITE_MAX_DEGREE, config)
    n = _require(n, "n", theorem_id)
    if theorem_id == "def-gtilde":
        return verify_gamma_initial(n, config)
    if theorem_id == "thm-interlderiv":
        kind = FamilyKind.parse(family or "laguerre")
        return verify_classical_x_interlacing(FamilyId(kind, n), z if z is not None else 0, config)
    if theorem_id == "thm-monoroots":
        suite = SuiteReport(theorem_id, {"n": n})
        families = [FamilyKind.parse(family)] if family else [FamilyKind.laguerre, FamilyKind.gegenbauer_modified]
        for kind in families:
            laguerre_kind = kind == FamilyKind.laguerre
            z_grid = grid or (DEFAULT_LAGUERRE_Z if laguerre_kind else DEFAULT_MODIFIED_Z)
            suite.add(
                verify_root_monotonicity(
                    FamilyId(kind, n), "z", z_grid, "all" if laguerre_kind else "positive", 0, None, config
                )
            )
        return suite
    if theorem_id == "cor-laguerrez":
        return verify_z_realrootedness(FamilyKind.laguerre, n, grid or DEFAULT_LAGUERRE_X, config)
    if theorem_id == "thm-gegenbauerz":
        return verify_gegenbauer_z(n, grid or support_grid(config=config), config)
    if theorem_id == "cor-gegenbauerzmod":
        return verify_z_realrootedness(
            FamilyKind.gegenbauer_modified, n, grid or support_grid(config=config), config
        )
    if theorem_id in ("thm-dualinterlG", "cor-dualinterlGmod"):
        families = ("gegenbauer",) if theorem_id == "thm-dualinterlG" else ("gegenbauer-modified",)
        points = [x0] if x0 is not None else (grid or support_grid(config=config))
        suite = SuiteReport(theorem_id, {"n": n, "grid": [fmt_rational(x) for x in points]})
        for x in points:
            suite.add(verify_dual_interlacing(n, x, families, config))
        return suite
    if theorem_id == "thm-laguerreD":
        return verify_derivative_family(FamilyId(FamilyKind.laguerre, n), z if z is not None else 0, config=config)
    if theorem_id == "thm-gegenbauerD":
        return verify_derivative_family(
            FamilyId(FamilyKind.gegenbauer_modified, n), z if z is not None else HALF, config=config
        )
    if theorem_id == "lem-laguerre-ineq":
        p = laguerre(n, config).specialize("x", x0 if x0 is not None else 1)
        return laguerre_inequality_check(p, grid or DEFAULT_INEQUALITY_Z, config)
    if theorem_id == "thm-charlier-orth":
        return charlier_orthogonality(
            n, m if m is not None else n, x0 if x0 is not None else 1, tol, config=config
        )
    if theorem_id == "lem-interlacing":
        return verify_gamma_chain(n, grid or negative_grid(config=config), config)
    return verify_ode_roots(n, x_end, steps, config)


def _run_task(task: Tuple[str, dict]) -> dict:
    theorem_id, params = task
    return dict(run_theorem(theorem_id, **params))


def paper_tasks(n_max: int = None) -> List[Tuple[str, dict]]:
    """The desk-scale acceptance run, in deterministic order"""
    n_max = n_max or DUALROOTS_SUITE_MAX_DEGREE
    tasks: List[Tuple[str, dict]] = [("def-family", {"n": n_max})]
    for n in range(2, n_max + 1):
        tasks.append(("def-gtilde", {"n": n}))
    for n in range(1, n_max + 1):
        for family, z0 in (("laguerre", 0), ("laguerre", 1), ("gegenbauer-modified", 0), ("gegenbauer", HALF)):
            tasks.append(("thm-interlderiv", {"n": n, "family": family, "z": z0}))
    for n in range(2, n_max + 1):
        tasks.append(("thm-monoroots", {"n": n}))
    for n in range(1, n_max + 1):
        tasks.append(("cor-laguerrez", {"n": n}))
        tasks.append(("thm-gegenbauerz", {"n": n}))
        tasks.append(("cor-gegenbauerzmod", {"n": n}))
    for n in range(1, n_max + 1):
        tasks.append(("thm-dualinterlG", {"n": n}))
        tasks.append(("cor-dualinterlGmod", {"n": n}))
    for n in range(1, n_max + 1):
        for z0 in (0, 1):
            tasks.append(("thm-laguerreD", {"n": n, "z": z0}))
        for z0 in (0, HALF, 1):
            tasks.append(("thm-gegenbauerD", {"n": n, "z": z0}))
    for n in range(1, n_max + 1):
        for x0 in (0, 1, 2):
            tasks.append(("lem-laguerre-ineq", {"n": n, "x0": x0}))
    for x0 in (1, 2, Fraction(5, 2)):
        for n in range(0, 7):
            for m in range(0, 7):
                tasks.append(("thm-charlier-orth", {"n": n, "m": m, "x0": x0}))
    for n in range(3, n_max + 1):
        tasks.append(("lem-interlacing", {"n": n}))
    for n in range(2, min(n_max, 6) + 1):
        tasks.append(("lem-ode-roots", {"n": n}))
    return tasks


def run_suite(
    name: str = "paper",
    workers: int = None,
    n_max: int = None,
    config: DualRootsConfig = None,
) -> SuiteReport:
    if name != "paper":
        raise DualRootsConfigException(f"Unknown suite {name!r}")
    tasks = paper_tasks(n_max)
    log.info(f"Running the {name} suite: {len(tasks)} checks")
    results = parallel_map(_run_task, tasks, workers, config)
    suite = SuiteReport(f"suite-{name}", {"n_max": n_max or DUALROOTS_SUITE_MAX_DEGREE})
    for result in results:
        suite.add(Report(from_report=result))
    suite["counts"] = suite.counts()
    return suite


# endregion
