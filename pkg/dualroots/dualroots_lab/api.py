import json
from typing import Optional

from fastapi import FastAPI
from fastapi.responses import RedirectResponse, Response

from dualroots.dualroots_lab.cli import RunConfig, generate, root_document
from dualroots.dualroots_lab.exceptions import DualRootsException
from dualroots.dualroots_lab.polycore import parse_grid, parse_rational
from dualroots.dualroots_lab.reports import to_json
from dualroots.dualroots_lab.rootlab import first_nonreal
from dualroots.dualroots_lab.veritas import run_theorem

api = FastAPI()


def _rational(value: Optional[str]):
    return parse_rational(value) if value is not None else None


def to_error_response(ex: DualRootsException):
    return Response(
        content=json.dumps({"message": ex.message, "code": ex.exit_code}),
        status_code=422,
        media_type="application/json",
    )


def to_json_response(document: dict):
    return Response(content=to_json(document), media_type="application/json")


@api.get("/")
def dualroots_redirect_root():
    return RedirectResponse("/docs#")


@api.get("/gen")
def dualroots_gen(
    family: str,
    n: int,
    k: int = 0,
    x: str = None,
    z: str = None,
    x0: str = None,
):
    try:
        cfg = RunConfig("gen", family=family, n=n, k=k, x=_rational(x), z=_rational(z), x0=_rational(x0))
        return to_json_response(generate(cfg))
    except DualRootsException as ex:
        return to_error_response(ex)


@api.get("/roots")
def dualroots_roots(
    family: str,
    n: int,
    k: int = 0,
    x: str = None,
    z: str = None,
    x0: str = None,
    gamma: str = None,
    tol: str = None,
):
    try:
        cfg = RunConfig(
            "roots", family=family, n=n, k=k, x=_rational(x), z=_rational(z), x0=_rational(x0), tol=_rational(tol)
        )
        return to_json_response(root_document(cfg, gamma))
    except DualRootsException as ex:
        return to_error_response(ex)


@api.get("/verify")
def dualroots_verify(
    theorem: str,
    n: int = None,
    m: int = None,
    family: str = None,
    z: str = None,
    x0: str = None,
    grid: str = None,
    tol: str = None,
):
    try:
        report = run_theorem(
            theorem,
            n=n,
            m=m,
            z=_rational(z),
            x0=_rational(x0),
            grid=parse_grid(grid) if grid is not None else None,
            tol=_rational(tol),
            family=family,
        )
        return to_json_response(report)
    except DualRootsException as ex:
        return to_error_response(ex)


@api.get("/scan")
def dualroots_scan(family: str, n_max: int, grid: str, n_min: int = 1):
    try:
        cfg = RunConfig("scan", family=family, n_min=n_min, n_max=n_max, grid=parse_grid(grid))
        first, rows = first_nonreal(cfg.family, cfg.n_max, cfg.grid, cfg.n_min)
        return to_json_response({"command": "scan", "family": cfg.family.value, "rows": rows, "first_nonreal": first})
    except DualRootsException as ex:
        return to_error_response(ex)


if __name__ == "__main__":
    from uvicorn import run
    import logging

    run(
        api,
        host="0.0.0.0",
        port=9090,
        log_level=logging.ERROR,
    )
