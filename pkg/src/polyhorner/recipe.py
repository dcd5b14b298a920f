"""Compile factorisation trees into flat instruction streams ("recipes").

A recipe is a three-address program over a value array.  Slots ``0..m-1``
hold the evaluation point; further slots hold intermediates and are reused
with a stack discipline (a slot returns to a free list when its value has
been consumed for the last time).  Coefficients are fetched by index at
evaluation time, so the same recipe evaluates the polynomial for any
coefficient values -- compile once, swap coefficients at will.

Evaluation executes the instructions in order with no reassociation, so
results are bit-for-bit reproducible across calls.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from .factorize import Branch, HornerFactorisation, HornerNode, Leaf


class Opcode(enum.Enum):
    LOAD_COEFF = "LC"
    MUL = "MUL"
    ADD = "ADD"
    POW = "POW"


@dataclass(frozen=True)
class Instruction:
    """One recipe step.

    Field use by opcode:
      LOAD_COEFF dst, a=coefficient index
      MUL/ADD    dst, a=left slot, b=right slot
      POW        dst, a=base slot, b=exponent (>= 2)
    """

    opcode: Opcode
    dst: int
    a: int
    b: int = 0


@dataclass(frozen=True)
class Recipe:
    instructions: tuple[Instruction, ...]
    dimension: int
    num_coefficients: int
    slot_count: int
    result_slot: int


def compile_recipe(factorisation: HornerFactorisation) -> Recipe:
    """Post-order compilation of a factorisation tree.

    A leaf loads its coefficient and multiplies in each variable factor (a
    POW into a scratch slot first for exponents >= 2); a branch multiplies
    the factor-variable slot into the factored result and adds the remainder
    result when present.
    """
    m = factorisation.dimension
    instructions: list[Instruction] = []
    free: list[int] = []
    high_water = m

    def alloc() -> int:
        nonlocal high_water
        if free:
            return free.pop()
        slot = high_water
        high_water += 1
        return slot

    def walk(node: HornerNode) -> int:
        if isinstance(node, Leaf):
            target = alloc()
            instructions.append(Instruction(Opcode.LOAD_COEFF, target, node.coeff_index))
            for j, e in enumerate(node.exponents):
                if e == 1:
                    instructions.append(Instruction(Opcode.MUL, target, target, j))
                elif e >= 2:
                    power = alloc()
                    instructions.append(Instruction(Opcode.POW, power, j, e))
                    instructions.append(Instruction(Opcode.MUL, target, target, power))
                    free.append(power)
            return target
        target = walk(node.factored)
        instructions.append(Instruction(Opcode.MUL, target, node.factor_var - 1, target))
        if node.remainder is not None:
            other = walk(node.remainder)
            instructions.append(Instruction(Opcode.ADD, target, target, other))
            free.append(other)
        return target

    result_slot = walk(factorisation.root)
    return Recipe(
        instructions=tuple(instructions),
        dimension=m,
        num_coefficients=factorisation.num_coefficients,
        slot_count=high_water,
        result_slot=result_slot,
    )


def _ipow(base: float, exponent: int) -> float:
    # exponentiation by squaring; fixed operation order
    result = 1.0
    b = base
    e = exponent
    while e:
        if e & 1:
            result *= b
        e >>= 1
        if e:
            b *= b
    return result


def eval_recipe(recipe: Recipe, coefficients: Sequence[float], x: Sequence[float]) -> float:
    """Run the instruction stream over a fresh scratch array."""
    if len(coefficients) != recipe.num_coefficients:
        raise ValueError(f"expected {recipe.num_coefficients} coefficients, got {len(coefficients)}")
    if len(x) != recipe.dimension:
        raise ValueError(f"point has length {len(x)}, recipe dimension is {recipe.dimension}")
    slots = [0.0] * recipe.slot_count
    for j, value in enumerate(x):
        slots[j] = float(value)
    for ins in recipe.instructions:
        op = ins.opcode
        if op is Opcode.MUL:
            slots[ins.dst] = slots[ins.a] * slots[ins.b]
        elif op is Opcode.ADD:
            slots[ins.dst] = slots[ins.a] + slots[ins.b]
        elif op is Opcode.LOAD_COEFF:
            slots[ins.dst] = float(coefficients[ins.a])
        else:
            slots[ins.dst] = _ipow(slots[ins.a], ins.b)
    return slots[recipe.result_slot]


class RecipeEvaluator:
    """Reusable evaluation context with a pre-allocated scratch array.

    Not thread-safe: each concurrent evaluator needs its own instance.
    """

    def __init__(self, recipe: Recipe):
        self.recipe = recipe
        self._slots = [0.0] * recipe.slot_count

    def evaluate(self, coefficients: Sequence[float], x: Sequence[float]) -> float:
        recipe = self.recipe
        if len(coefficients) != recipe.num_coefficients:
            raise ValueError(f"expected {recipe.num_coefficients} coefficients, got {len(coefficients)}")
        if len(x) != recipe.dimension:
            raise ValueError(f"point has length {len(x)}, recipe dimension is {recipe.dimension}")
        slots = self._slots
        for j, value in enumerate(x):
            slots[j] = float(value)
        for ins in recipe.instructions:
            op = ins.opcode
            if op is Opcode.MUL:
                slots[ins.dst] = slots[ins.a] * slots[ins.b]
            elif op is Opcode.ADD:
                slots[ins.dst] = slots[ins.a] + slots[ins.b]
            elif op is Opcode.LOAD_COEFF:
                slots[ins.dst] = float(coefficients[ins.a])
            else:
                slots[ins.dst] = _ipow(slots[ins.a], ins.b)
        return slots[recipe.result_slot]


def op_count(recipe: Recipe) -> int:
    """Counted operations: MUL + ADD + POW (coefficient loads are free)."""
    return sum(1 for ins in recipe.instructions if ins.opcode is not Opcode.LOAD_COEFF)


def validate_recipe(recipe: Recipe) -> list[str]:
    """Static checks; returns a list of violations (empty means valid).

    Checks write-before-read (slots 0..m-1 count as pre-written, the result
    slot as read at the end), slot bounds, POW exponents >= 2, and that the
    number of coefficient loads equals the coefficient count.
    """
    issues: list[str] = []
    written = set(range(recipe.dimension))
    loads = 0

    def check_read(i: int, slot: int) -> None:
        if not 0 <= slot < recipe.slot_count:
            issues.append(f"instruction {i}: read of slot {slot} out of bounds 0..{recipe.slot_count - 1}")
        elif slot not in written:
            issues.append(f"instruction {i}: slot {slot} read before written")

    for i, ins in enumerate(recipe.instructions):
        if ins.opcode in (Opcode.MUL, Opcode.ADD):
            check_read(i, ins.a)
            check_read(i, ins.b)
        elif ins.opcode is Opcode.POW:
            check_read(i, ins.a)
            if ins.b < 2:
                issues.append(f"instruction {i}: POW exponent must be >= 2, got {ins.b}")
        else:
            loads += 1
        if not 0 <= ins.dst < recipe.slot_count:
            issues.append(f"instruction {i}: write to slot {ins.dst} out of bounds 0..{recipe.slot_count - 1}")
        else:
            written.add(ins.dst)

    if loads != recipe.num_coefficients:
        issues.append(f"{loads} coefficient loads for {recipe.num_coefficients} coefficients")
    if not 0 <= recipe.result_slot < recipe.slot_count:
        issues.append(f"result slot {recipe.result_slot} out of bounds 0..{recipe.slot_count - 1}")
    elif recipe.result_slot not in written:
        issues.append(f"result slot {recipe.result_slot} is never written")
    return issues


def dump_recipe(recipe: Recipe) -> str:
    """Line-oriented listing, one instruction per line:
    ``LC dst k | MUL dst a b | ADD dst a b | POW dst base e``."""
    lines = []
    for ins in recipe.instructions:
        if ins.opcode is Opcode.LOAD_COEFF:
            lines.append(f"LC {ins.dst} {ins.a}")
        else:
            lines.append(f"{ins.opcode.value} {ins.dst} {ins.a} {ins.b}")
    return "\n".join(lines)
