"""Independent reference implementations used to check the package.

Everything here is deliberately naive: exact rational arithmetic, explicit
lattice enumeration, exhaustive search.  None of it shares code with the
paths it verifies.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product


def rational_eval(coefficients, exponents, point) -> Fraction:
    """Exact sum-of-monomials evaluation over the rationals."""
    total = Fraction(0)
    for coeff, row in zip(coefficients, exponents):
        term = Fraction(coeff)
        for value, exponent in zip(point, row):
            if exponent:
                term *= Fraction(value) ** exponent
        total += term
    return total


def lattice_count(dimension: int, degree: int, kind: str) -> int:
    """Count exponent vectors with norm <= degree by full enumeration."""
    if kind == "total":
        keep = lambda row: sum(row) <= degree
    elif kind == "euclidean":
        keep = lambda row: sum(e * e for e in row) <= degree * degree
    elif kind == "maximal":
        keep = lambda row: max(row) <= degree
    else:
        raise ValueError(kind)
    return sum(1 for row in product(range(degree + 1), repeat=dimension) if keep(row))


def leaf_cost(row) -> int:
    return sum(1 for e in row if e >= 1) + sum(1 for e in row if e >= 2)


@lru_cache(maxsize=None)
def min_ops_exhaustive(rows: tuple) -> int:
    """True minimum operation count over the whole factorisation space.

    A group of one monomial may close as a leaf; any group may split on any
    variable present in at least one of its monomials (one power per split,
    1 op for the factor multiplication plus 1 for the addition if a remainder
    is left).  Exhaustive recursion with memoisation on the monomial set.
    """
    best = leaf_cost(rows[0]) if len(rows) == 1 else None
    dimension = len(rows[0])
    for v in range(dimension):
        if not any(row[v] for row in rows):
            continue
        factored = tuple(sorted(row[:v] + (row[v] - 1,) + row[v + 1 :] for row in rows if row[v] >= 1))
        remainder = tuple(sorted(row for row in rows if row[v] == 0))
        cost = 1 + min_ops_exhaustive(factored)
        if remainder:
            cost += 1 + min_ops_exhaustive(remainder)
        if best is None or cost < best:
            best = cost
    return best


def central_difference(fn, x, var_index: int, step: float = 1e-5) -> float:
    """Central finite difference of fn along coordinate var_index (0-based)."""
    forward = list(x)
    backward = list(x)
    forward[var_index] += step
    backward[var_index] -= step
    return (fn(forward) - fn(backward)) / (2 * step)
