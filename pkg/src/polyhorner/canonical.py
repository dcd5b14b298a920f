"""Sparse multivariate polynomials in canonical (sum-of-monomials) form.

A polynomial in ``m`` variables is stored as ``N`` coefficients plus an
``N x m`` matrix of nonnegative integer exponents, one row per monomial:

    p(x) = sum_i  c_i * x_1^e_i1 * ... * x_m^e_im

Exponent rows are pairwise distinct after construction.  ``make_polynomial``
can optionally rectify raw input first: duplicate rows are merged by summing
their coefficients and rows are sorted into ascending graded-lexicographic
order.  Zero coefficients are never dropped, so the exponent structure stays
usable when coefficients are replaced later (``with_coefficients``).

Instances are immutable and safe to share between threads; everything in this
module is a pure function of its inputs.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from functools import cache


class DegreeKind(enum.Enum):
    """Degree notion for multivariate polynomials.

    The degree of a polynomial is the maximal norm over the exponent vectors
    of its monomials; the three values select which norm:

    * ``TOTAL``     -- l1 norm (maximal sum of exponents)
    * ``EUCLIDEAN`` -- l2 norm
    * ``MAXIMAL``   -- l-infinity norm (maximal single exponent)
    """

    TOTAL = "total"
    EUCLIDEAN = "euclidean"
    MAXIMAL = "maximal"


def graded_lex_key(row: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key for ascending graded-lexicographic monomial order."""
    row = tuple(row)
    return (sum(row), row)


def _normalize_coefficients(coefficients: Sequence[float]) -> tuple[float, ...]:
    try:
        coeffs = tuple(float(c) for c in coefficients)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"coefficients must be real numbers: {exc}") from None
    if not coeffs:
        raise ValueError("coefficients must not be empty")
    return coeffs


def _normalize_rows(exponents: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    rows = []
    for r, raw in enumerate(exponents):
        row = []
        for value in raw:
            try:
                as_int = int(value)
            except (TypeError, ValueError):
                raise ValueError(f"exponents row {r}: {value!r} is not an integer") from None
            if as_int != value:
                raise ValueError(f"exponents row {r}: {value!r} is not an integer")
            if as_int < 0:
                raise ValueError(f"exponents row {r}: negative exponent {as_int}")
            row.append(as_int)
        rows.append(tuple(row))
    if not rows:
        raise ValueError("exponents must not be empty")
    width = len(rows[0])
    if width < 1:
        raise ValueError("dimension must be at least 1")
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"exponents must be rectangular: row {r} has length {len(row)}, expected {width}")
    return tuple(rows)


@dataclass(frozen=True)
class CanonicalPolynomial:
    """Immutable sum-of-monomials polynomial: coefficients + exponent matrix."""

    coefficients: tuple[float, ...]
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        coeffs = _normalize_coefficients(self.coefficients)
        rows = _normalize_rows(self.exponents)
        if len(coeffs) != len(rows):
            raise ValueError(
                f"coefficients and exponents disagree: {len(coeffs)} coefficients, {len(rows)} exponent rows"
            )
        if len(set(rows)) != len(rows):
            raise ValueError("exponents contain duplicate rows (construct with rectify=True to merge them)")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "exponents", rows)

    @property
    def dimension(self) -> int:
        return len(self.exponents[0])

    @property
    def num_monomials(self) -> int:
        return len(self.coefficients)

    def with_coefficients(self, coefficients: Sequence[float]) -> "CanonicalPolynomial":
        """Same exponent structure, new coefficient values."""
        coeffs = _normalize_coefficients(coefficients)
        if len(coeffs) != self.num_monomials:
            raise ValueError(f"expected {self.num_monomials} coefficients, got {len(coeffs)}")
        return replace(self, coefficients=coeffs)

    def evaluate(self, x: Sequence[float]) -> float:
        """Direct evaluation: sum of monomials, left to right in row order.

        ``0**0`` counts as 1, i.e. zero exponents act as absent factors.  The
        accumulation order is fixed so repeated calls are bit-identical.
        """
        if len(x) != self.dimension:
            raise ValueError(f"point has length {len(x)}, polynomial dimension is {self.dimension}")
        xs = [float(v) for v in x]
        total = 0.0
        for coeff, row in zip(self.coefficients, self.exponents):
            term = coeff
            for value, exponent in zip(xs, row):
                if exponent:
                    term *= value**exponent
            total += term
        return total

    def canonical_op_count(self) -> int:
        """Operations needed to evaluate the unfactorised form.

        Convention: one exponentiation and one multiplication per
        (monomial, dimension) pair -- zero exponents included -- plus N-1
        additions, i.e. ``2*N*m + (N - 1)``.
        """
        n, m = self.num_monomials, self.dimension
        return 2 * n * m + (n - 1)

    def degree(self, kind: DegreeKind) -> float:
        """Maximal norm of the exponent rows; an int except for EUCLIDEAN."""
        if kind is DegreeKind.TOTAL:
            return max(sum(row) for row in self.exponents)
        if kind is DegreeKind.MAXIMAL:
            return max(max(row) for row in self.exponents)
        return math.sqrt(max(sum(e * e for e in row) for row in self.exponents))

    def occupancy(self, kind: DegreeKind) -> float:
        """Fraction of the monomials a fully occupied polynomial of this
        degree would have.  For EUCLIDEAN the reference degree is the ceiling
        of the real-valued degree."""
        if kind is DegreeKind.EUCLIDEAN:
            norm_sq = max(sum(e * e for e in row) for row in self.exponents)
            degree = math.isqrt(norm_sq)
            if degree * degree < norm_sq:
                degree += 1
        else:
            degree = int(self.degree(kind))
        return self.num_monomials / count_fully_occupied(self.dimension, degree, kind)

    def partial_derivative(self, var: int) -> "CanonicalPolynomial":
        """Symbolic partial derivative with respect to variable ``var`` (1-based).

        Monomials without the variable vanish; if everything vanishes the
        result is the zero polynomial (one all-zero monomial, coefficient 0.0).
        """
        if not 1 <= var <= self.dimension:
            raise ValueError(f"var must be in 1..{self.dimension}, got {var}")
        j = var - 1
        coeffs = []
        rows = []
        for coeff, row in zip(self.coefficients, self.exponents):
            if row[j] >= 1:
                coeffs.append(coeff * row[j])
                rows.append(row[:j] + (row[j] - 1,) + row[j + 1 :])
        if not rows:
            return CanonicalPolynomial((0.0,), ((0,) * self.dimension,))
        return CanonicalPolynomial(tuple(coeffs), tuple(rows))

    def to_dict(self, name: str | None = None) -> dict:
        """Plain-JSON form of the polynomial file format."""
        obj: dict = {
            "dimension": self.dimension,
            "coefficients": list(self.coefficients),
            "exponents": [list(row) for row in self.exponents],
        }
        if name is not None:
            obj["name"] = name
        return obj


def make_polynomial(
    coefficients: Sequence[float],
    exponents: Sequence[Sequence[int]],
    rectify: bool = False,
) -> CanonicalPolynomial:
    """Construct a canonical polynomial, optionally sanitising the input.

    With ``rectify`` set, duplicate exponent rows are merged by summing their
    coefficients and rows are sorted into ascending graded-lexicographic
    order.  Without it duplicate rows are an error.  Zero coefficients are
    kept in both modes.
    """
    coeffs = _normalize_coefficients(coefficients)
    rows = _normalize_rows(exponents)
    if len(coeffs) != len(rows):
        raise ValueError(
            f"coefficients and exponents disagree: {len(coeffs)} coefficients, {len(rows)} exponent rows"
        )
    if rectify:
        merged: dict[tuple[int, ...], float] = {}
        for coeff, row in zip(coeffs, rows):
            merged[row] = merged.get(row, 0.0) + coeff
        ordered = sorted(merged, key=graded_lex_key)
        coeffs = tuple(merged[row] for row in ordered)
        rows = tuple(ordered)
    return CanonicalPolynomial(coeffs, rows)


def count_fully_occupied(dimension: int, degree: int, kind: DegreeKind) -> int:
    """Number of exponent vectors in N^dimension with norm <= degree.

    MAXIMAL uses the closed form ``(degree+1)**dimension``, TOTAL the binomial
    identity ``C(degree+dimension, dimension)``, EUCLIDEAN counts lattice
    points of the l2 ball by enumeration.  Results are exact arbitrary-size
    integers.
    """
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if kind is DegreeKind.MAXIMAL:
        return (degree + 1) ** dimension
    if kind is DegreeKind.TOTAL:
        return math.comb(degree + dimension, dimension)
    return _l2_ball_count(dimension, degree * degree)


@cache
def _l2_ball_count(dimension: int, budget: int) -> int:
    # lattice points e >= 0 with sum(e_i^2) <= budget
    if dimension == 0:
        return 1
    total = 0
    k = 0
    while k * k <= budget:
        total += _l2_ball_count(dimension - 1, budget - k * k)
        k += 1
    return total


def polynomial_from_dict(obj: object) -> CanonicalPolynomial:
    """Parse the polynomial file format (strict: no merging, no reordering)."""
    if not isinstance(obj, dict):
        raise ValueError("polynomial file must be a JSON object")
    for field in ("dimension", "coefficients", "exponents"):
        if field not in obj:
            raise ValueError(f'polynomial file is missing field "{field}"')
    dimension = obj["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise ValueError(f'field "dimension" must be a positive integer, got {dimension!r}')
    if not isinstance(obj["coefficients"], (list, tuple)):
        raise ValueError('field "coefficients" must be an array of numbers')
    if not isinstance(obj["exponents"], (list, tuple)) or not all(
        isinstance(row, (list, tuple)) for row in obj["exponents"]
    ):
        raise ValueError('field "exponents" must be an array of integer arrays')
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise ValueError('field "name" must be a string')
    poly = make_polynomial(obj["coefficients"], obj["exponents"], rectify=False)
    if poly.dimension != dimension:
        raise ValueError(
            f'field "dimension" is {dimension} but "exponents" rows have length {poly.dimension}'
        )
    return poly
