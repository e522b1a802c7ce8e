"""Root trajectories of the reduced Gegenbauer polynomials in x.

The roots gamma_i(x) of G̃_n(x, .) solve dz/dx = -dG̃/dx / dG̃/dz with
gamma_i(-1) = -1/2 - (i-1). Each grid interval is integrated with RK4 and
every grid point is polished by Newton against the exact specialization.
This is a cross-check, certified values come from rootlab.
"""
from fractions import Fraction
from math import ceil
from typing import List, Sequence

import mpmath
import numpy as np
import pandas as pd

from dualroots.dualroots_lab.config import DualRootsConfig, get_config
from dualroots.dualroots_lab.exceptions import DualRootsDomainException
from dualroots.dualroots_lab.families import check_degree, gegenbauer, reduced_gegenbauer
from dualroots.dualroots_lab.log import log
from dualroots.dualroots_lab.polycore import BiPoly, RationalLike, UniPoly, to_rational
from dualroots.dualroots_lab.reports import Report, fmt_rational
from dualroots.dualroots_lab.rootlab import compare_roots, gamma_roots, to_decimal

CSV_COLUMNS = ["x", "i", "gamma", "residual", "step"]


def _mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


class _MpBiPoly:
    """Working precision evaluator of a BiPoly at float points"""

    def __init__(self, p: BiPoly) -> None:
        self.terms = [(i, j, _mpf(c)) for (i, j), c in p.terms.items()]

    def __call__(self, x, z):
        return mpmath.fsum(c * x**i * z**j for i, j, c in self.terms)


class TrajectorySample(dict):
    def __init__(
        self,
        x: Fraction,
        gamma: Sequence = (),
        residual: Sequence = (),
        step: Fraction = None,
        digits: int = None,
    ):
        """A polished point of the traced roots, one entry per root index

        Args:
            x (Fraction): The grid point.
            gamma (Sequence): The polished roots at working precision, gamma_1 > gamma_2 > ...
            residual (Sequence): Relative residuals |G̃(x, gamma)| / sum |c_j||gamma|^j.
            step (Fraction, optional): The integration substep that was accepted.
        """
        super().__init__()
        digits = digits or get_config().decimal_digits
        self.gamma_values = list(gamma)
        self["x"] = fmt_rational(x)
        self["x_decimal"] = mpmath.nstr(_mpf(x), 30)
        self["gamma"] = [mpmath.nstr(g, digits) for g in gamma]
        self["residual"] = [mpmath.nstr(r, 6) for r in residual]
        self["step"] = to_decimal(step, 12) if step is not None else None

    @property
    def x(self) -> Fraction:
        return Fraction(self["x"])

    @property
    def gamma(self) -> List[str]:
        return self["gamma"]

    @property
    def residual(self) -> List[str]:
        return self["residual"]

    @property
    def step(self) -> str:
        return self["step"]


class Trajectory(list):
    """Accepted samples in grid order, plus the events that stopped tracing"""

    def __init__(self, n: int, samples: Sequence[TrajectorySample] = ()):
        super().__init__(samples)
        self.n = n
        self.events: List[dict] = []

    @property
    def completed(self) -> bool:
        return len(self.events) == 0

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for sample in self:
            for i, (g, r) in enumerate(zip(sample.gamma, sample.residual)):
                rows.append(
                    {
                        "x": sample["x_decimal"],
                        "i": i + 1,
                        "gamma": g,
                        "residual": r,
                        "step": sample.step,
                    }
                )
        return pd.DataFrame(rows, columns=CSV_COLUMNS)

    def to_csv(self, path: str = None) -> str:
        """RFC-4180 CSV text (CRLF rows), also written to path when given"""
        text = self.to_frame().to_csv(index=False, lineterminator="\r\n")
        if path:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        return text

    def to_dict(self) -> dict:
        return {"n": self.n, "samples": list(self), "events": self.events}


def relative_residual(p: UniPoly, z) -> mpmath.mpf:
    scale = mpmath.fsum(abs(_mpf(c)) * abs(z) ** j for j, c in enumerate(p.coeffs))
    if scale == 0:
        return mpmath.mpf(0)
    return abs(p.evaluate_mp(z)) / scale


def _newton(p: UniPoly, dp: UniPoly, z, tol, max_iterations: int):
    """Returns (root, converged)"""
    for _ in range(max_iterations):
        d = dp.evaluate_mp(z)
        if d == 0:
            return z, False
        dz = p.evaluate_mp(z) / d
        z = z - dz
        if abs(dz) <= tol * max(1, abs(z)):
            return z, True
    return z, False


def _rk4(F, x0, z0, h, m: int):
    x, z = x0, z0
    for _ in range(m):
        k1 = F(x, z)
        k2 = F(x + h / 2, z + h * k1 / 2)
        k3 = F(x + h / 2, z + h * k2 / 2)
        k4 = F(x + h, z + h * k3)
        z = z + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        x = x + h
    return z


def _strictly_decreasing(values) -> bool:
    return all(a > b for a, b in zip(values, values[1:]))


def trace(
    n: int,
    x_start: RationalLike = -1,
    x_end: RationalLike = Fraction(-1, 16),
    steps: int = 64,
    config: DualRootsConfig = None,
) -> Trajectory:
    """Traces every gamma_i of G̃_n on the exact grid x_start + j (x_end - x_start)/steps"""
    config = get_config(config)
    x_start, x_end = to_rational(x_start), to_rational(x_end)
    check_degree(n, config)
    if n < 2:
        raise DualRootsDomainException("Tracing needs n >= 2")
    if not -1 <= x_start < x_end < 0:
        raise DualRootsDomainException(
            f"Tracing needs -1 <= x_start < x_end < 0, got {fmt_rational(x_start)},"
            f" {fmt_rational(x_end)}"
        )
    if steps < 1:
        raise DualRootsDomainException("steps must be >= 1")

    tilde = reduced_gegenbauer(n)
    h = n // 2
    grid = [x_start + (x_end - x_start) * j / steps for j in range(steps + 1)]
    trajectory = Trajectory(n)

    with mpmath.workprec(config.mp_bits):
        dgx = _MpBiPoly(tilde.differentiate("x"))
        dgz = _MpBiPoly(tilde.differentiate("z"))

        def F(x, z):
            return -dgx(x, z) / dgz(x, z)

        polish_tol = _mpf(config.polish_tol)
        if x_start == -1:
            gammas = [_mpf(Fraction(-1, 2) - (i - 1)) for i in range(1, h + 1)]
        else:
            start = gamma_roots(n, x_start, config.csv_tol, "value", config)
            gammas = [v.to_float_mp() for v in start.values]

        p0 = tilde.specialize("x", x_start)
        trajectory.append(
            TrajectorySample(
                x_start,
                gammas,
                [relative_residual(p0, g) for g in gammas],
                None,
                config.decimal_digits,
            )
        )

        for x_lo, x_hi in zip(grid, grid[1:]):
            delta = x_hi - x_lo
            substep = min(delta, config.step_scale * x_hi * x_hi)
            m = max(1, ceil(delta / substep))
            p = tilde.specialize("x", x_hi)
            dp = p.derivative()
            while True:
                step = delta / m
                if step < config.min_step:
                    event = {
                        "kind": "CollisionOrSingularity",
                        "x": fmt_rational(x_lo),
                        "message": f"No acceptable step above {fmt_rational(config.min_step)}",
                    }
                    log.warning(f"Trajectory of G̃_{n} stopped at x={fmt_rational(x_lo)}")
                    trajectory.events.append(event)
                    return trajectory
                accepted, self_check = None, False
                try:
                    predicted = [_rk4(F, _mpf(x_lo), g, _mpf(step), m) for g in gammas]
                    polished = [
                        _newton(p, dp, z, polish_tol, config.polish_max_iterations)
                        for z in predicted
                    ]
                    self_check = all(ok for _, ok in polished) and all(
                        abs(z - zp) <= mpmath.mpf("1e-3") * max(1, abs(z))
                        for (z, _), zp in zip(polished, predicted)
                    )
                    accepted = [z for z, _ in polished]
                except ZeroDivisionError:
                    self_check = False
                if self_check and _strictly_decreasing(accepted):
                    break
                log.debug(f"Halving the substep at x={fmt_rational(x_lo)} (n={n})")
                m *= 2

            gammas = accepted
            trajectory.append(
                TrajectorySample(
                    x_hi,
                    gammas,
                    [relative_residual(p, g) for g in gammas],
                    step,
                    config.decimal_digits,
                )
            )
    return trajectory


def cross_check(trajectory: Trajectory, config: DualRootsConfig = None) -> Report:
    """Every traced root must sit in the certified enclosure at its grid point"""
    config = get_config(config)
    report = Report("lem-ode-roots", {"n": trajectory.n, "check": "enclosures"})
    with mpmath.workprec(config.mp_bits):
        slack = _mpf(config.polish_tol)
        for sample in trajectory:
            certified = gamma_roots(trajectory.n, sample.x, None, "value", config)
            if len(certified) != len(sample.gamma_values):
                report.fail(x=sample["x"], message="root count mismatch")
                continue
            for i, (enc, g) in enumerate(zip(certified.values, sample.gamma_values)):
                tol = slack * max(1, abs(g)) + _mpf(enc.width)
                if not (_mpf(enc.lo) - tol <= g <= _mpf(enc.hi) + tol):
                    report.fail(x=sample["x"], i=i + 1, traced=sample.gamma[i], enclosure=enc.to_dict())
    return report


def slopes(trajectory: Trajectory) -> np.ndarray:
    """Finite difference slopes, one row per grid interval and one column per root"""
    if len(trajectory) < 2:
        return np.zeros((0, trajectory.n // 2))
    xs = np.array([float(s.x) for s in trajectory])
    gs = np.array([[float(g) for g in s.gamma_values] for s in trajectory])
    return np.diff(gs, axis=0) / np.diff(xs)[:, None]


def divergence_probe(
    n: int,
    xs: Sequence[RationalLike],
    config: DualRootsConfig = None,
) -> Report:
    """Growth of the gamma roots as x -> 0 from below, with the root sum identity"""
    config = get_config(config)
    xs = [to_rational(x) for x in xs]
    if not xs or any(x >= 0 or x < -1 for x in xs):
        raise DualRootsDomainException("The probe needs x values in [-1, 0)")
    if any(a >= b for a, b in zip(xs, xs[1:])):
        raise DualRootsDomainException("The probe needs x values decreasing in magnitude")

    report = Report("lem-ode-roots", {"n": n, "x": [fmt_rational(x) for x in xs], "check": "divergence"})
    report["values"] = []
    previous = None
    g_full = gegenbauer(n, config)
    mu_sum = -sum(range(n - n // 2))
    for x in xs:
        roots = gamma_roots(n, x, None, "value", config)
        report["values"].append(roots.to_dict())

        # Vieta on G_n(x, .): sum of all z-roots = -[z^(n-1)] / [z^n]
        spec = g_full.specialize("x", x)
        root_sum = -spec.coeffs[n - 1] / spec.coeffs[n]
        gamma_sum = root_sum - mu_sum
        lo = sum(v.lo for v in roots.values)
        hi = sum(v.hi for v in roots.values)
        if not lo <= gamma_sum <= hi:
            report.fail(x=fmt_rational(x), message="root sum identity", expected=fmt_rational(gamma_sum))

        if previous is not None:
            for i, (a, b) in enumerate(zip(previous.values, roots.values)):
                rel, _, _ = compare_roots(a, b, config.width_floor)
                if rel is None:
                    report.inconclusive(x=fmt_rational(x), i=i + 1, message="unresolved growth step")
                elif rel != "<":
                    report.fail(x=fmt_rational(x), i=i + 1, message="gamma did not grow")
        previous = roots
    return report


def initial_order_check(
    n: int,
    i: int,
    hs: Sequence[RationalLike] = (Fraction(1, 256), Fraction(1, 512), Fraction(1, 1024)),
    config: DualRootsConfig = None,
) -> Report:
    """|gamma_i(-1+h) - gamma_i(-1)| <= C h^i, C fitted on two h and verified on the third"""
    config = get_config(config)
    hs = [to_rational(h) for h in hs]
    assert len(hs) == 3, ValueError("Three step sizes are needed")
    if not 1 <= i <= n // 2:
        raise DualRootsDomainException(f"Root index {i} out of range for n={n}")

    start = Fraction(-1, 2) - (i - 1)
    with mpmath.workprec(config.mp_bits):
        ds = []
        for h in hs:
            roots = gamma_roots(n, -1 + h, None, "value", config)
            ds.append(abs(roots.values[i - 1].to_float_mp() - _mpf(start)))

    log_h = np.log([float(h) for h in hs])
    log_d = np.log([float(d) for d in ds])
    order = float(np.polyfit(log_h[:2], log_d[:2], 1)[0])
    c = max(float(d) / float(h) ** i for d, h in zip(ds[:2], hs[:2]))
    bound = 2 * c * float(hs[2]) ** i

    report = Report(
        "lem-ode-roots",
        {"n": n, "i": i, "h": [fmt_rational(h) for h in hs], "check": "initial-order"},
    )
    report["observed_order"] = round(order, 6)
    report["fitted_constant"] = float(f"{c:.6g}")
    if float(ds[2]) > bound or order < i - 0.5:
        report.fail(message="initial flatness", observed_order=round(order, 6))
    return report
