"""Horner factorisation trees for sparse multivariate polynomials.

A factorisation is a binary tree: each ``Branch`` pulls exactly one power of
one variable out of a group of monomials (``factor * factored + remainder``),
each ``Leaf`` holds a single monomial and references its coefficient by index
only.  The tree therefore depends on the exponent structure alone, never on
coefficient values, so coefficients can be swapped without refactorising.

Two strategies are provided:

* ``factorize_greedy`` recursively factors out the variable that occurs in
  the most monomials of the current group (ties to the lowest variable
  index).  A group with a single monomial becomes a leaf.
* ``factorize_optimal`` runs a best-first (A*) search over partial
  factorisations and returns a tree with the minimal operation count, using
  the greedy result as incumbent and an admissible lower bound for pruning.

Operation counting charges 1 per multiplication, addition and
exponentiation.  Multiplying by a coefficient of value 1.0 still costs a
multiplication: constant folding would break coefficient swapping.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass
from math import inf
from typing import Optional, Union

from .canonical import CanonicalPolynomial, make_polynomial


@dataclass(frozen=True)
class Leaf:
    """Single monomial; the coefficient is looked up by index at evaluation."""

    coeff_index: int
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class Branch:
    """One power of variable ``factor_var`` (1-based) times ``factored``,
    plus an optional ``remainder`` of monomials without that variable."""

    factor_var: int
    factored: "HornerNode"
    remainder: Optional["HornerNode"] = None


HornerNode = Union[Leaf, Branch]


@dataclass(frozen=True)
class SearchInfo:
    """Diagnostics of an optimal-factorisation search."""

    expansions: int
    exhausted: bool


@dataclass(frozen=True)
class HornerFactorisation:
    root: HornerNode
    dimension: int
    num_coefficients: int
    op_count: int
    search_info: SearchInfo | None = None


def num_ops(node: HornerNode) -> int:
    """Evaluation cost of a subtree.

    Leaf: one multiplication per exponent >= 1 plus one exponentiation per
    exponent >= 2 (the coefficient multiplications against those factors).
    Branch: one multiplication by the factor variable, plus one addition if a
    remainder is attached.
    """
    if isinstance(node, Leaf):
        return sum(1 for e in node.exponents if e >= 1) + sum(1 for e in node.exponents if e >= 2)
    total = 1 + num_ops(node.factored)
    if node.remainder is not None:
        total += 1 + num_ops(node.remainder)
    return total


Monomial = tuple[tuple[int, ...], int]  # (exponent row, coefficient index)


def _decremented(row: tuple[int, ...], j: int) -> tuple[int, ...]:
    return row[:j] + (row[j] - 1,) + row[j + 1 :]


def factorize_greedy(poly: CanonicalPolynomial) -> HornerFactorisation:
    """Greedy Horner factorisation: always factor out the variable used in
    the greatest number of the group's monomials; ties break to the lowest
    variable index.  Deterministic for identical exponent matrices."""
    m = poly.dimension

    def build(group: list[Monomial]) -> HornerNode:
        if len(group) == 1:
            row, index = group[0]
            return Leaf(index, row)
        usage = [0] * m
        for row, _ in group:
            for j, e in enumerate(row):
                if e >= 1:
                    usage[j] += 1
        j = usage.index(max(usage))
        factored = [(_decremented(row, j), i) for row, i in group if row[j] >= 1]
        remainder = [(row, i) for row, i in group if row[j] == 0]
        return Branch(j + 1, build(factored), build(remainder) if remainder else None)

    root = build([(row, i) for i, row in enumerate(poly.exponents)])
    return HornerFactorisation(root, m, poly.num_monomials, num_ops(root))


def render(factorisation: HornerFactorisation, coefficients: Sequence[float]) -> str:
    """Human-readable factorisation string.

    Coefficients print with their shortest round-trip decimal (``1.0`` style),
    variables as ``x_i`` (1-based) with ``^e`` for exponents >= 2; a branch
    prints as ``x_i (FACTORED)`` followed by `` + REMAINDER`` when present.
    """
    if len(coefficients) != factorisation.num_coefficients:
        raise ValueError(
            f"expected {factorisation.num_coefficients} coefficients, got {len(coefficients)}"
        )

    def fmt(node: HornerNode) -> str:
        if isinstance(node, Leaf):
            parts = [repr(float(coefficients[node.coeff_index]))]
            for j, e in enumerate(node.exponents):
                if e == 1:
                    parts.append(f"x_{j + 1}")
                elif e >= 2:
                    parts.append(f"x_{j + 1}^{e}")
            return " ".join(parts)
        text = f"x_{node.factor_var} ({fmt(node.factored)})"
        if node.remainder is not None:
            text += f" + {fmt(node.remainder)}"
        return text

    return fmt(factorisation.root)


def expand(factorisation: HornerFactorisation, coefficients: Sequence[float]) -> CanonicalPolynomial:
    """Multiply the tree back out into canonical form (exact integer
    exponent arithmetic); the inverse of factorising."""
    if len(coefficients) != factorisation.num_coefficients:
        raise ValueError(
            f"expected {factorisation.num_coefficients} coefficients, got {len(coefficients)}"
        )

    def collect(node: HornerNode) -> list[Monomial]:
        if isinstance(node, Leaf):
            return [(node.exponents, node.coeff_index)]
        j = node.factor_var - 1
        out = [(row[:j] + (row[j] + 1,) + row[j + 1 :], i) for row, i in collect(node.factored)]
        if node.remainder is not None:
            out.extend(collect(node.remainder))
        return out

    pairs = collect(factorisation.root)
    rows: list[tuple[int, ...] | None] = [None] * factorisation.num_coefficients
    for row, index in pairs:
        if not 0 <= index < len(rows) or rows[index] is not None:
            raise ValueError(f"malformed tree: coefficient index {index} is not used exactly once")
        rows[index] = row
    if any(row is None for row in rows):
        raise ValueError("malformed tree: not every coefficient index is used")
    return make_polynomial(coefficients, rows)


# --- optimal search -------------------------------------------------------
#
# A search state is the set of monomial groups not yet factorised plus the
# committed cost g.  Successors either close a single-monomial group as a
# leaf or pick a variable occurring in at least one monomial of the group
# and split it into factored/remainder.  Decisions on different groups
# commute, so each state only expands its canonically-first group; every
# complete factorisation is still reachable, just without permuted decision
# orders.  The lower bound
#
#     h = sum over open groups of (k - 1) + (1 if the group is non-constant)
#
# is admissible and consistent: a k-monomial group always needs exactly k-1
# additions, and at least one multiplicative op if any exponent is nonzero.

Group = tuple[Monomial, ...]
_Action = tuple  # ("leaf", group) | ("split", group, var, factored, remainder|None)


def _leaf_cost(row: tuple[int, ...]) -> int:
    return sum(1 for e in row if e >= 1) + sum(1 for e in row if e >= 2)


def _group_term(group: Group) -> int:
    # contribution of one open group to the lower bound h
    nonzero = 1 if any(e for row, _ in group for e in row) else 0
    return len(group) - 1 + nonzero


def _heuristic(groups: tuple[Group, ...]) -> int:
    return sum(_group_term(group) for group in groups)


def _successors(groups: tuple[Group, ...]):
    """Yield (delta_g, delta_h, new_state, action) for the first group."""
    group = groups[0]
    rest = groups[1:]
    term = _group_term(group)
    if len(group) == 1:
        yield _leaf_cost(group[0][0]), -term, rest, ("leaf", group)
    present = set()
    for row, _ in group:
        for j, e in enumerate(row):
            if e >= 1:
                present.add(j)
    for j in sorted(present):
        factored = tuple(sorted((_decremented(row, j), i) for row, i in group if row[j] >= 1))
        remainder = tuple(sorted((row, i) for row, i in group if row[j] == 0))
        cost = 1 + (1 if remainder else 0)
        new_term = _group_term(factored)
        new_groups = rest + (factored,)
        if remainder:
            new_groups += (remainder,)
            new_term += _group_term(remainder)
        yield cost, new_term - term, tuple(sorted(new_groups)), ("split", group, j + 1, factored, remainder or None)


def _rebuild(init: Group, goal: tuple[Group, ...], came_from: dict) -> HornerNode:
    decisions: dict[Group, _Action] = {}
    state = goal
    while state is not None:
        parent_and_action = came_from[state]
        if parent_and_action is None:
            break
        state, action = parent_and_action
        decisions[action[1]] = action

    def build(group: Group) -> HornerNode:
        action = decisions[group]
        if action[0] == "leaf":
            row, index = group[0]
            return Leaf(index, row)
        _, _, var, factored, remainder = action
        return Branch(var, build(factored), build(remainder) if remainder is not None else None)

    return build(init)


def factorize_optimal(poly: CanonicalPolynomial, node_budget: int = 1_000_000) -> HornerFactorisation:
    """Minimal-operation-count factorisation via best-first search.

    States are ranked by f = g + h with ties preferring greater g (deeper
    states finish sooner).  The greedy factorisation is computed first and
    used both as the incumbent result and as an upper bound for pruning, so
    a complete factorisation is always available: if ``node_budget`` state
    expansions are spent before the search concludes, the best complete
    factorisation found so far is returned with ``search_info.exhausted``
    set.  Within budget the result is a true minimum over all factorisation
    trees (one variable power per branch).
    """
    if node_budget < 1:
        raise ValueError(f"node_budget must be >= 1, got {node_budget}")
    greedy = factorize_greedy(poly)
    bound = greedy.op_count

    init_group: Group = tuple(sorted((row, i) for i, row in enumerate(poly.exponents)))
    init_state = (init_group,)
    came_from: dict[tuple[Group, ...], tuple | None] = {init_state: None}
    best_g: dict[tuple[Group, ...], int] = {init_state: 0}

    counter = 0
    heap: list[tuple[int, int, int, tuple[Group, ...]]] = [(_heuristic(init_state), 0, counter, init_state)]
    expansions = 0
    exhausted = False
    goal: tuple[Group, ...] | None = None
    goal_cost = bound

    while heap:
        f, neg_g, _, state = heapq.heappop(heap)
        g = -neg_g
        if g > best_g.get(state, inf):
            continue  # stale entry
        if f >= bound:
            break  # nothing left can improve on the incumbent
        if not state:
            goal, goal_cost = state, g
            break
        if expansions >= node_budget:
            exhausted = True
            break
        expansions += 1
        for step_cost, h_delta, new_state, action in _successors(state):
            new_g = g + step_cost
            if new_g >= best_g.get(new_state, inf):
                continue
            best_g[new_state] = new_g
            came_from[new_state] = (state, action)
            counter += 1
            # h is carried implicitly: h(state) = f - g
            heapq.heappush(heap, (f + step_cost + h_delta, -new_g, counter, new_state))

    info = SearchInfo(expansions=expansions, exhausted=exhausted)
    if goal is None:
        return HornerFactorisation(
            greedy.root, greedy.dimension, greedy.num_coefficients, greedy.op_count, info
        )
    root = _rebuild(init_group, goal, came_from)
    return HornerFactorisation(root, poly.dimension, poly.num_monomials, goal_cost, info)
