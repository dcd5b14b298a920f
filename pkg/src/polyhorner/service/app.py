"""FastAPI service wrapping the core package.

Factorisation is the expensive step and evaluation the cheap repeated one,
so the service is a natural fit for multi-client use: factorise or benchmark
on the server, evaluate as often as needed.  Domain validation errors from
the core (bad shapes, arity mismatches, out-of-range variables) surface as
HTTP 400 with a message naming the offending field.
"""

from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..benchmark import BenchmarkConfig, format_summary, records_to_csv, summarize, sweep
from ..canonical import DegreeKind, count_fully_occupied
from ..factorize import factorize_greedy, factorize_optimal, render
from ..recipe import compile_recipe, dump_recipe, eval_recipe
from .schemas import (
    BenchRequest,
    BenchResponse,
    CountResponse,
    DifferentiateRequest,
    DifferentiateResponse,
    EvaluateRequest,
    EvaluateResponse,
    FactorizeRequest,
    FactorizeResponse,
    PolynomialPayload,
)


def create_app() -> FastAPI:
    app = FastAPI(title="polyhorner", version=__version__)

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/factorize", response_model=FactorizeResponse)
    def factorize(request: FactorizeRequest) -> FactorizeResponse:
        poly = request.polynomial.to_polynomial()
        if request.optimal:
            factorisation = factorize_optimal(poly, node_budget=request.budget)
            exhausted = factorisation.search_info.exhausted
        else:
            factorisation = factorize_greedy(poly)
            exhausted = False
        return FactorizeResponse(
            rendering=render(factorisation, poly.coefficients),
            ops_horner=factorisation.op_count,
            ops_canonical=poly.canonical_op_count(),
            optimal=request.optimal,
            exhausted=exhausted,
            recipe_dump=dump_recipe(compile_recipe(factorisation)) if request.dump_recipe else None,
        )

    @app.post("/evaluate", response_model=EvaluateResponse)
    def evaluate(request: EvaluateRequest) -> EvaluateResponse:
        poly = request.polynomial.to_polynomial()
        if request.method == "canonical":
            value = poly.evaluate(request.point)
        else:
            recipe = compile_recipe(factorize_greedy(poly))
            value = eval_recipe(recipe, poly.coefficients, request.point)
        return EvaluateResponse(value=value)

    @app.post("/differentiate", response_model=DifferentiateResponse)
    def differentiate(request: DifferentiateRequest) -> DifferentiateResponse:
        poly = request.polynomial.to_polynomial()
        derivative = poly.partial_derivative(request.var)
        return DifferentiateResponse(polynomial=PolynomialPayload.from_polynomial(derivative))

    @app.get("/count", response_model=CountResponse)
    def count(
        dimension: int = Query(ge=1),
        degree: int = Query(ge=0),
        kind: str = Query(),
    ) -> CountResponse:
        try:
            degree_kind = DegreeKind(kind)
        except ValueError:
            raise ValueError(f'field "kind" must be one of total, euclidean, maximal; got {kind!r}')
        return CountResponse(
            dimension=dimension,
            degree=degree,
            kind=degree_kind.value,
            count=count_fully_occupied(dimension, degree, degree_kind),
        )

    @app.post("/bench", response_model=BenchResponse)
    def bench(request: BenchRequest) -> BenchResponse:
        config = BenchmarkConfig(
            max_dimension=request.max_dimension,
            max_degree=request.max_degree,
            polys_per_cell=request.polys_per_cell,
            coefficient_trials=request.trials,
            master_seed=request.seed,
        )
        records = sweep(config)
        return BenchResponse(
            csv=records_to_csv(records),
            summary=format_summary(summarize(records)),
            num_records=len(records),
        )

    return app


app = create_app()
