"""Benchmark harness: random polynomials, numerical-error trials, sweeps.

Protocol
--------
For every grid cell (dimension m, maximal degree n) a number of polynomials
is drawn with uniformly random occupancy: an inclusion probability q is drawn
from (0, 1], then each of the (n+1)^m candidate exponent vectors (iterated in
ascending graded-lexicographic order) is kept independently with probability
q.  Draws with fewer than two monomials are rejected and q is redrawn.

The numerical error of one polynomial is measured at the all-ones point,
where the true value is exactly the sum of the coefficients: per trial, fresh
coefficients are drawn uniformly from the configured range, the exact
reference is their compensated exact sum (``math.fsum``), and the error is
the absolute deviation of (a) direct canonical evaluation and (b) the
compiled greedy-factorisation recipe (compiled once, coefficients swapped
per trial).

Reproducibility
---------------
All randomness comes from SplitMix64, a 64-bit generator with the golden
gamma increment and the finalizer (z ^= z>>30; z *= 0xBF58476D1CE4E5B9;
z ^= z>>27; z *= 0x94D049BB133111EB; z ^= z>>31).  Uniform doubles take the
top 53 bits divided by 2^53.  Every (m, n, poly_index) slot derives its own
seed from the master seed via ``mix_seed``, so cells can run in any order,
or concurrently, with byte-identical output.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Iterator
from dataclasses import dataclass
from itertools import product

from .canonical import CanonicalPolynomial, graded_lex_key
from .factorize import factorize_greedy
from .recipe import RecipeEvaluator, compile_recipe

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 pseudo-random generator (stable across versions)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _finalize(self._state)

    def uniform01(self) -> float:
        """Uniform double in [0, 1): top 53 bits over 2^53."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def uniform_open01(self) -> float:
        """Uniform double in (0, 1]."""
        return ((self.next_uint64() >> 11) + 1) * 2.0**-53

    def uniform(self, low: float, high: float) -> float:
        return low + self.uniform01() * (high - low)


def mix_seed(master_seed: int, *parts: int) -> int:
    """Derive a sub-stream seed by folding integers into the master seed
    with the SplitMix64 finalizer; deterministic and order-sensitive."""
    h = master_seed & _MASK64
    for part in parts:
        h = (h + _GAMMA + (part & _MASK64)) & _MASK64
        h = _finalize(h)
    return h


@dataclass(frozen=True)
class BenchmarkConfig:
    max_dimension: int = 7
    max_degree: int = 7
    polys_per_cell: int = 5
    coefficient_trials: int = 100
    master_seed: int = 1
    coefficient_range: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self) -> None:
        for field in ("max_dimension", "max_degree", "polys_per_cell", "coefficient_trials"):
            if getattr(self, field) < 1:
                raise ValueError(f"{field} must be >= 1, got {getattr(self, field)}")
        low, high = self.coefficient_range
        if not low < high:
            raise ValueError(f"coefficient_range must be a non-empty interval, got {self.coefficient_range}")


@dataclass(frozen=True)
class TrialRecord:
    """One benchmark data point: a single random polynomial and its errors."""

    dimension: int
    degree: int
    poly_index: int
    occupancy_probability: float
    num_monomials: int
    ops_canonical: int
    ops_horner: int
    mean_abs_error_canonical: float
    mean_abs_error_horner: float
    eval_seconds_canonical: float | None = None
    eval_seconds_horner: float | None = None


def draw_random_polynomial(
    dimension: int,
    degree: int,
    rng: SplitMix64,
    coefficient_range: tuple[float, float] = (-1.0, 1.0),
) -> tuple[CanonicalPolynomial, float]:
    """Draw a random-occupancy polynomial; returns (polynomial, q).

    Degree is the maximal (l-infinity) kind, so there are (degree+1)^dimension
    candidate monomials.  At least two monomials are required; smaller draws
    redraw q.  Coefficients are drawn uniformly from ``coefficient_range``.
    """
    if dimension < 1 or degree < 0:
        raise ValueError(f"need dimension >= 1 and degree >= 0, got ({dimension}, {degree})")
    candidates = sorted(product(range(degree + 1), repeat=dimension), key=graded_lex_key)
    if len(candidates) < 2:
        raise ValueError(f"cell ({dimension}, {degree}) has fewer than 2 candidate monomials")
    low, high = coefficient_range
    while True:
        q = rng.uniform_open01()
        rows = [row for row in candidates if rng.uniform01() < q]
        if len(rows) >= 2:
            break
    coefficients = tuple(rng.uniform(low, high) for _ in rows)
    return CanonicalPolynomial(coefficients, tuple(rows)), q


def random_polynomial(
    dimension: int,
    degree: int,
    rng: SplitMix64,
    coefficient_range: tuple[float, float] = (-1.0, 1.0),
) -> CanonicalPolynomial:
    return draw_random_polynomial(dimension, degree, rng, coefficient_range)[0]


def error_trial(
    poly: CanonicalPolynomial,
    trials: int,
    rng: SplitMix64,
    coefficient_range: tuple[float, float] = (-1.0, 1.0),
) -> tuple[float, float]:
    """Mean absolute numerical error at the all-ones point over coefficient
    trials; returns (canonical error, factorised-recipe error)."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    evaluator = RecipeEvaluator(compile_recipe(factorize_greedy(poly)))
    ones = [1.0] * poly.dimension
    low, high = coefficient_range
    errors_canonical = []
    errors_horner = []
    for _ in range(trials):
        coefficients = [rng.uniform(low, high) for _ in range(poly.num_monomials)]
        exact = math.fsum(coefficients)
        errors_canonical.append(abs(poly.with_coefficients(coefficients).evaluate(ones) - exact))
        errors_horner.append(abs(evaluator.evaluate(coefficients, ones) - exact))
    return math.fsum(errors_canonical) / trials, math.fsum(errors_horner) / trials


def cell_plan(config: BenchmarkConfig) -> Iterator[tuple[int, int, int]]:
    """The (dimension, degree, poly_index) slots a sweep will fill, in
    output order."""
    for m in range(1, config.max_dimension + 1):
        for n in range(1, config.max_degree + 1):
            for i in range(config.polys_per_cell):
                yield m, n, i


def sweep(config: BenchmarkConfig, include_timings: bool = False) -> list[TrialRecord]:
    """Run the full benchmark grid; one record per generated polynomial.

    Each slot is seeded independently via ``mix_seed(master_seed, m, n, i)``,
    so results do not depend on execution order.  A slot that runs out of
    resources is skipped with a warning, never silently.
    """
    records: list[TrialRecord] = []
    for m, n, i in cell_plan(config):
        rng = SplitMix64(mix_seed(config.master_seed, m, n, i))
        try:
            poly, q = draw_random_polynomial(m, n, rng, config.coefficient_range)
            factorisation = factorize_greedy(poly)
            mean_canonical, mean_horner = error_trial(
                poly, config.coefficient_trials, rng, config.coefficient_range
            )
            seconds_canonical = seconds_horner = None
            if include_timings:
                seconds_canonical, seconds_horner = _time_evaluations(poly, factorisation)
            records.append(
                TrialRecord(
                    dimension=m,
                    degree=n,
                    poly_index=i,
                    occupancy_probability=q,
                    num_monomials=poly.num_monomials,
                    ops_canonical=poly.canonical_op_count(),
                    ops_horner=factorisation.op_count,
                    mean_abs_error_canonical=mean_canonical,
                    mean_abs_error_horner=mean_horner,
                    eval_seconds_canonical=seconds_canonical,
                    eval_seconds_horner=seconds_horner,
                )
            )
        except (MemoryError, RecursionError) as exc:
            logger.warning("skipping cell (%d, %d) polynomial %d: %s", m, n, i, exc)
    return records


def _time_evaluations(poly: CanonicalPolynomial, factorisation, repetitions: int = 10) -> tuple[float, float]:
    # wall-clock per-evaluation cost; informational only, never asserted on
    evaluator = RecipeEvaluator(compile_recipe(factorisation))
    ones = [1.0] * poly.dimension
    start = time.perf_counter()
    for _ in range(repetitions):
        poly.evaluate(ones)
    seconds_canonical = (time.perf_counter() - start) / repetitions
    start = time.perf_counter()
    for _ in range(repetitions):
        evaluator.evaluate(poly.coefficients, ones)
    seconds_horner = (time.perf_counter() - start) / repetitions
    return seconds_canonical, seconds_horner


_CSV_HEADER = (
    "m,n,poly_index,occupancy_probability,num_monomials,"
    "ops_canonical,ops_horner,mean_abs_error_canonical,mean_abs_error_horner"
)


def records_to_csv(records: list[TrialRecord]) -> str:
    """CSV text for a sweep: pinned header, floats in shortest round-trip
    decimal, rows sorted by (m, n, poly_index).  Timing columns are appended
    only when every record carries timings."""
    with_timings = bool(records) and all(r.eval_seconds_canonical is not None for r in records)
    header = _CSV_HEADER + (",eval_seconds_canonical,eval_seconds_horner" if with_timings else "")
    lines = [header]
    for r in sorted(records, key=lambda r: (r.dimension, r.degree, r.poly_index)):
        fields = [
            str(r.dimension),
            str(r.degree),
            str(r.poly_index),
            repr(r.occupancy_probability),
            str(r.num_monomials),
            str(r.ops_canonical),
            str(r.ops_horner),
            repr(r.mean_abs_error_canonical),
            repr(r.mean_abs_error_horner),
        ]
        if with_timings:
            fields += [repr(r.eval_seconds_canonical), repr(r.eval_seconds_horner)]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CellSummary:
    dimension: int
    degree: int
    num_records: int
    mean_ops_canonical: float
    mean_ops_horner: float
    op_ratio: float
    mean_error_canonical: float
    mean_error_horner: float
    error_ratio: float


def summarize(records: list[TrialRecord]) -> list[CellSummary]:
    """Per-cell means and canonical/horner ratios, sorted by (m, n).

    A zero horner denominator reports the ratio as infinity.
    """
    if not records:
        raise ValueError("no records to summarize")
    cells: dict[tuple[int, int], list[TrialRecord]] = {}
    for r in records:
        cells.setdefault((r.dimension, r.degree), []).append(r)
    summaries = []
    for (m, n), rs in sorted(cells.items()):
        count = len(rs)
        ops_canonical = math.fsum(r.ops_canonical for r in rs) / count
        ops_horner = math.fsum(r.ops_horner for r in rs) / count
        err_canonical = math.fsum(r.mean_abs_error_canonical for r in rs) / count
        err_horner = math.fsum(r.mean_abs_error_horner for r in rs) / count
        summaries.append(
            CellSummary(
                dimension=m,
                degree=n,
                num_records=count,
                mean_ops_canonical=ops_canonical,
                mean_ops_horner=ops_horner,
                op_ratio=(ops_canonical / ops_horner) if ops_horner else math.inf,
                mean_error_canonical=err_canonical,
                mean_error_horner=err_horner,
                error_ratio=(err_canonical / err_horner) if err_horner else math.inf,
            )
        )
    return summaries


def format_summary(summaries: list[CellSummary]) -> str:
    """Fixed-width text table of a summarised sweep."""
    header = (
        f"{'m':>3} {'n':>3} {'polys':>5} {'ops_canon':>10} {'ops_horner':>10} "
        f"{'op_ratio':>9} {'err_canon':>12} {'err_horner':>12} {'err_ratio':>9}"
    )
    lines = [header]
    for s in summaries:
        lines.append(
            f"{s.dimension:>3} {s.degree:>3} {s.num_records:>5} "
            f"{s.mean_ops_canonical:>10.1f} {s.mean_ops_horner:>10.1f} "
            f"{s.op_ratio:>9.3f} "
            f"{s.mean_error_canonical:>12.3e} {s.mean_error_horner:>12.3e} "
            f"{s.error_ratio:>9.3f}"
        )
    return "\n".join(lines)
