"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..canonical import CanonicalPolynomial, polynomial_from_dict


class PolynomialPayload(BaseModel):
    """Wire form of a polynomial; mirrors the JSON file format."""

    dimension: int = Field(ge=1)
    coefficients: list[float] = Field(min_length=1)
    exponents: list[list[int]]
    name: str | None = None

    def to_polynomial(self) -> CanonicalPolynomial:
        return polynomial_from_dict(self.model_dump(exclude_none=True))

    @classmethod
    def from_polynomial(cls, poly: CanonicalPolynomial, name: str | None = None) -> "PolynomialPayload":
        return cls(
            dimension=poly.dimension,
            coefficients=list(poly.coefficients),
            exponents=[list(row) for row in poly.exponents],
            name=name,
        )


class FactorizeRequest(BaseModel):
    polynomial: PolynomialPayload
    optimal: bool = False
    budget: int = Field(default=1_000_000, ge=1)
    dump_recipe: bool = False


class FactorizeResponse(BaseModel):
    rendering: str
    ops_horner: int
    ops_canonical: int
    optimal: bool
    exhausted: bool = False
    recipe_dump: str | None = None


class EvaluateRequest(BaseModel):
    polynomial: PolynomialPayload
    point: list[float]
    method: Literal["horner", "canonical"] = "horner"


class EvaluateResponse(BaseModel):
    value: float


class DifferentiateRequest(BaseModel):
    polynomial: PolynomialPayload
    var: int = Field(ge=1)


class DifferentiateResponse(BaseModel):
    polynomial: PolynomialPayload


class CountResponse(BaseModel):
    dimension: int
    degree: int
    kind: Literal["total", "euclidean", "maximal"]
    count: int


class BenchRequest(BaseModel):
    max_dimension: int = Field(default=7, ge=1)
    max_degree: int = Field(default=7, ge=1)
    polys_per_cell: int = Field(default=5, ge=1)
    trials: int = Field(default=100, ge=1)
    seed: int = 1


class BenchResponse(BaseModel):
    csv: str
    summary: str
    num_records: int
