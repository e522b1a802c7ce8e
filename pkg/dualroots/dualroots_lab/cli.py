"""Command line front end.

    python -m dualroots.dualroots_lab gen --family laguerre --n 2
    python -m dualroots.dualroots_lab verify --theorem thm-laguerreD --n 4 --z 0
    python -m dualroots.dualroots_lab verify --suite paper --workers 4
    python -m dualroots.dualroots_lab scan --family gegenbauer --n-max 10 --grid 1
    python -m dualroots.dualroots_lab trace --n 4 --to -1/4 --steps 64

Exit codes: 0 all Pass, 1 any Fail, 2 Inconclusive without Fail, 3 bad
configuration or a parameter outside the domain of the requested operation.
"""
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import click
import pandas as pd

from dualroots.dualroots_lab.config import get_config
from dualroots.dualroots_lab.exceptions import (
    DualRootsConfigException,
    DualRootsException,
    ZeroPolynomialException,
)
from dualroots.dualroots_lab.families import (
    FamilyId,
    FamilyKind,
    charlier,
    dz_family,
    family_poly,
    gegenbauer_tilde,
)
from dualroots.dualroots_lab.log import log
from dualroots.dualroots_lab.polycore import parse_grid, parse_rational
from dualroots.dualroots_lab.reports import Verdict, exit_code_for, fmt_rational, to_json
from dualroots.dualroots_lab.rootlab import first_nonreal, gamma_roots, isolate
from dualroots.dualroots_lab.trajectory import trace
from dualroots.dualroots_lab.veritas import THEOREM_IDS, run_suite, run_theorem

CONFIG_ERROR_EXIT_CODE = 3
OUTPUT_FORMATS = ("json", "csv", "text")


class RationalParam(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except DualRootsConfigException as ex:
            self.fail(str(ex), param, ctx)


class GridParam(click.ParamType):
    name = "grid"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return parse_grid(str(value))
        except DualRootsConfigException as ex:
            self.fail(str(ex), param, ctx)


RATIONAL = RationalParam()
GRID = GridParam()


class RunConfig:
    """The validated options of a single command"""

    def __init__(
        self,
        command: str,
        family: str = None,
        n: int = None,
        n_min: int = 1,
        n_max: int = None,
        k: int = 0,
        m: int = None,
        x: Fraction = None,
        z: Fraction = None,
        x0: Fraction = None,
        grid: List[Fraction] = None,
        tol: Fraction = None,
        output_format: str = "json",
        output: str = None,
        workers: int = None,
    ) -> None:
        self.command = command
        self.family = FamilyKind.parse(family) if family is not None else None
        self.n = n
        self.n_min = n_min
        self.n_max = n_max
        self.k = k
        self.m = m
        self.x = x
        self.z = z
        self.x0 = x0
        self.grid = grid
        self.tol = tol
        self.output_format = output_format
        self.output = output
        self.workers = workers
        self.validate()

    def validate(self):
        for name in ("n", "n_max", "m"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise DualRootsConfigException(f"--{name.replace('_', '-')} must be >= 0")
        if self.k is not None and self.k < 0:
            raise DualRootsConfigException("--k must be >= 0")
        if self.grid is not None and len(self.grid) == 0:
            raise DualRootsConfigException("The grid must not be empty")
        if self.tol is not None and self.tol <= 0:
            raise DualRootsConfigException("--tol must be positive")
        if self.workers is not None and self.workers < 1:
            raise DualRootsConfigException("--workers must be >= 1")
        if self.output_format not in OUTPUT_FORMATS:
            raise DualRootsConfigException(f"Unknown output format {self.output_format!r}")

    def require(self, *names: str):
        for name in names:
            if getattr(self, name) is None:
                raise DualRootsConfigException(
                    f"{self.command} needs --{name.replace('_', '-')}"
                )


def emit(text: str, output: str = None):
    """Writes the document to the output file, or stdout"""
    if output:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        return
    click.echo(text, nl=not text.endswith("\n"))


def emit_document(document: dict, cfg: RunConfig):
    if cfg.output_format == "text" and "text" in document:
        emit(document["text"] + "\n", cfg.output)
    else:
        emit(to_json(document) + "\n", cfg.output)


# region Commands


@click.group(name="dualroots")
def dualroots():
    """Exact construction and root checks of the Laguerre, Gegenbauer and Charlier families"""


@dualroots.command()
@click.option("--family", required=True, help="laguerre, gegenbauer, gegenbauer-modified, gegenbauer-tilde or charlier")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=0, help="Order of the z derivative")
@click.option("--x", "x", type=RATIONAL, default=None, help="Specialize x")
@click.option("--z", "z", type=RATIONAL, default=None, help="Specialize z")
@click.option("--x0", type=RATIONAL, default=None, help="Charlier parameter")
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json")
@click.option("--output", "-o", default=None)
def gen(family, n, k, x, z, x0, output_format, output):
    """Dumps the exact coefficients of a family polynomial"""
    cfg = RunConfig("gen", family=family, n=n, k=k, x=x, z=z, x0=x0, output_format=output_format, output=output)
    emit_document(generate(cfg), cfg)


@dualroots.command()
@click.option("--family", required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=0, help="Order of the z derivative")
@click.option("--x", "x", type=RATIONAL, default=None, help="Roots in z at this x")
@click.option("--z", "z", type=RATIONAL, default=None, help="Roots in x at this z")
@click.option("--x0", type=RATIONAL, default=None, help="Charlier parameter")
@click.option("--gamma", "gamma_ordering", type=click.Choice(["modulus", "value"]), default=None,
              help="Enclose the gamma roots of the reduced Gegenbauer polynomial at --x")
@click.option("--tol", type=RATIONAL, default=None)
@click.option("--output", "-o", default=None)
def roots(family, n, k, x, z, x0, gamma_ordering, tol, output):
    """Root counts and certified enclosures of a specialization"""
    cfg = RunConfig("roots", family=family, n=n, k=k, x=x, z=z, x0=x0, tol=tol, output=output)
    emit_document(root_document(cfg, gamma_ordering), cfg)


@dualroots.command()
@click.option("--theorem", type=click.Choice(THEOREM_IDS), default=None)
@click.option("--suite", type=click.Choice(["paper"]), default=None)
@click.option("--family", default=None)
@click.option("--n", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--n-max", type=int, default=None, help="Largest degree of a suite run")
@click.option("--z", "z", type=RATIONAL, default=None)
@click.option("--x0", type=RATIONAL, default=None)
@click.option("--grid", type=GRID, default=None, help='"dyadic:[lo,hi):m" or "a,b,c"')
@click.option("--tol", type=RATIONAL, default=None)
@click.option("--steps", type=int, default=64)
@click.option("--to", "x_end", type=RATIONAL, default=Fraction(-1, 16))
@click.option("--workers", type=int, default=None)
@click.option("--output", "-o", default=None)
def verify(theorem, suite, family, n, m, n_max, z, x0, grid, tol, steps, x_end, workers, output):
    """Runs one checker, or the whole suite"""
    if (theorem is None) == (suite is None):
        raise DualRootsConfigException("verify needs exactly one of --theorem or --suite")
    cfg = RunConfig(
        "verify", family=family, n=n, m=m, n_max=n_max, z=z, x0=x0, grid=grid, tol=tol,
        output=output, workers=workers,
    )
    if suite is not None:
        report = run_suite(suite, cfg.workers, cfg.n_max)
    else:
        report = run_theorem(
            theorem, n=cfg.n, m=cfg.m, z=cfg.z, x0=cfg.x0, grid=cfg.grid, tol=cfg.tol,
            family=family, steps=steps, x_end=x_end,
        )
    if report.outcome == Verdict.inconclusive:
        log.warning(f"{report.theorem_id}: Inconclusive")
    emit_document(report, cfg)
    return exit_code_for(report.outcome)


@dualroots.command()
@click.option("--family", required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--n-min", type=int, default=1)
@click.option("--grid", type=GRID, required=True)
@click.option("--workers", type=int, default=None)
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json")
@click.option("--output", "-o", default=None)
def scan(family, n_max, n_min, grid, workers, output_format, output):
    """Nonreal deficits of P_n(x0, z) over a degree range and an x grid"""
    cfg = RunConfig(
        "scan", family=family, n_min=n_min, n_max=n_max, grid=grid, workers=workers,
        output_format=output_format, output=output,
    )
    first, rows = first_nonreal(cfg.family, cfg.n_max, cfg.grid, cfg.n_min, cfg.workers)
    violations = [r for r in rows if r["in_support"] and r["nonreal_deficit"] > 0]
    if violations:
        log.warning(f"{len(violations)} positive deficits inside the support")
    code = exit_code_for(Verdict.failed if violations else Verdict.passed)
    if cfg.output_format == "csv":
        emit(pd.DataFrame(rows).to_csv(index=False, lineterminator="\r\n"), cfg.output)
        return code
    emit_document(
        {
            "command": "scan",
            "family": cfg.family.value,
            "rows": rows,
            "first_nonreal": first,
            "message": "none found at this scale" if first is None else "positive deficit found",
        },
        cfg,
    )
    return code


@dualroots.command(name="trace")
@click.option("--n", type=int, required=True)
@click.option("--from", "x_start", type=RATIONAL, default=Fraction(-1))
@click.option("--to", "x_end", type=RATIONAL, default=Fraction(-1, 16))
@click.option("--steps", type=int, default=64)
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--output", "-o", default=None)
def trace_command(n, x_start, x_end, steps, output_format, output):
    """Traces the gamma roots of the reduced Gegenbauer polynomial in x"""
    cfg = RunConfig("trace", n=n, output_format=output_format, output=output)
    trajectory = trace(n, x_start, x_end, steps)
    if cfg.output_format == "csv":
        emit(trajectory.to_csv(), cfg.output)
    else:
        emit_document(trajectory.to_dict(), cfg)
    return 0 if trajectory.completed else 1


# endregion

# region Documents


def generate(cfg: RunConfig) -> dict:
    kind = cfg.family
    doc = {"command": "gen", "family": kind.value, "n": cfg.n, "k": cfg.k}
    if kind == FamilyKind.charlier:
        cfg.require("x0")
        poly = charlier(cfg.n, cfg.x0).derivative(cfg.k)
        doc.update(x0=fmt_rational(cfg.x0), coeffs=[fmt_rational(c) for c in poly.coeffs], text=poly.to_text())
        return doc
    if kind == FamilyKind.gegenbauer_tilde:
        doc["decomposition"] = gegenbauer_tilde(cfg.n).to_dict()
    poly = dz_family(FamilyId(kind, cfg.n), cfg.k)
    if cfg.x is not None and cfg.z is not None:
        raise DualRootsConfigException("Specialize at most one of --x and --z")
    if cfg.x is not None or cfg.z is not None:
        var, value = ("x", cfg.x) if cfg.x is not None else ("z", cfg.z)
        spec = poly.specialize(var, value)
        doc.update(
            {var: fmt_rational(value), "coeffs": [fmt_rational(c) for c in spec.coeffs], "text": spec.to_text()}
        )
        return doc
    doc.update(terms=poly.to_json(), text=poly.to_text())
    return doc


def root_document(cfg: RunConfig, gamma_ordering: Optional[str] = None) -> dict:
    kind = cfg.family
    tol = cfg.tol or get_config().theorem_tol
    doc = {"command": "roots", "family": kind.value, "n": cfg.n, "k": cfg.k, "tol": fmt_rational(tol)}
    if gamma_ordering is not None:
        if gamma_ordering not in ("modulus", "value"):
            raise DualRootsConfigException(f"Unknown gamma ordering {gamma_ordering!r}")
        cfg.require("x")
        doc.update(gamma_roots(cfg.n, cfg.x, tol, gamma_ordering).to_dict())
        return doc
    if kind == FamilyKind.charlier:
        cfg.require("x0")
        poly = charlier(cfg.n, cfg.x0).derivative(cfg.k)
        doc["x0"] = fmt_rational(cfg.x0)
    else:
        if (cfg.x is None) == (cfg.z is None):
            raise DualRootsConfigException("roots needs exactly one of --x and --z")
        var, value = ("x", cfg.x) if cfg.x is not None else ("z", cfg.z)
        poly = family_poly(FamilyId(kind, cfg.n)).differentiate("z", cfg.k).specialize(var, value)
        doc[var] = fmt_rational(value)
    doc["poly"] = poly.to_text()
    if poly.is_zero:
        raise ZeroPolynomialException("The specialized polynomial vanishes identically", code=3)
    if poly.degree < 1:
        doc.update(degree=poly.degree, real_count=0, nonreal_deficit=0, roots=[])
        return doc
    iso = isolate(poly)
    iso.refine_all(tol)
    doc.update(iso.to_dict())
    return doc


# endregion


def main(argv: Sequence[str] = None) -> int:
    """Runs the command line, returning the process exit code"""
    try:
        rslt = dualroots.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted", err=True)
        return 1
    except click.UsageError as ex:
        ex.show()
        return CONFIG_ERROR_EXIT_CODE
    except click.ClickException as ex:
        ex.show()
        return CONFIG_ERROR_EXIT_CODE
    except DualRootsException as ex:
        click.echo(f"Error: {ex}", err=True)
        return ex.exit_code
    if isinstance(rslt, int):
        return rslt
    return 0


if __name__ == "__main__":
    sys.exit(main())
