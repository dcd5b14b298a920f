from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhorner import (
    Instruction,
    Opcode,
    Recipe,
    RecipeEvaluator,
    compile_recipe,
    dump_recipe,
    eval_recipe,
    factorize_greedy,
    make_polynomial,
    num_ops,
    op_count,
    validate_recipe,
)

from oracles import rational_eval


@st.composite
def polynomials(draw, max_dim=4, max_exp=3, max_monomials=7):
    m = draw(st.integers(1, max_dim))
    rows = draw(
        st.lists(
            st.tuples(*[st.integers(0, max_exp)] * m),
            min_size=1,
            max_size=max_monomials,
            unique=True,
        )
    )
    coeffs = draw(
        st.lists(
            st.floats(-2, 2, allow_nan=False, allow_infinity=False),
            min_size=len(rows),
            max_size=len(rows),
        )
    )
    return make_polynomial(coeffs, rows)


def opcode_counts(recipe):
    return Counter(ins.opcode for ins in recipe.instructions)


class TestCompile:
    def test_worked_example_instruction_mix(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        counts = opcode_counts(recipe)
        assert counts[Opcode.LOAD_COEFF] == 4
        assert counts[Opcode.MUL] == 7
        assert counts[Opcode.ADD] == 3
        assert counts[Opcode.POW] == 0
        assert op_count(recipe) == 10

    def test_constant_leaf(self):
        p = make_polynomial([7.0], [[0, 0, 0]])
        recipe = compile_recipe(factorize_greedy(p))
        assert opcode_counts(recipe) == {Opcode.LOAD_COEFF: 1}
        assert op_count(recipe) == 0
        assert eval_recipe(recipe, p.coefficients, [9.0, 9.0, 9.0]) == 7.0

    def test_power_leaf(self):
        p = make_polynomial([2.0], [[0, 0, 3]])
        recipe = compile_recipe(factorize_greedy(p))
        counts = opcode_counts(recipe)
        assert counts[Opcode.POW] == 1
        assert counts[Opcode.MUL] == 1
        assert op_count(recipe) == 2
        assert eval_recipe(recipe, p.coefficients, [0.0, 0.0, 3.0]) == 54.0

    def test_univariate_recipe_op_count(self):
        p = make_polynomial([0.5, 1.5, 2.5], [[0], [1], [2]])
        recipe = compile_recipe(factorize_greedy(p))
        assert op_count(recipe) == 4

    def test_slot_count_is_dimension_plus_live_depth(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        assert recipe.slot_count == 5  # 3 coordinates + 2 concurrently live values

    @given(polynomials())
    @settings(max_examples=100)
    def test_preserves_counting_convention(self, p):
        f = factorize_greedy(p)
        recipe = compile_recipe(f)
        assert op_count(recipe) == num_ops(f.root) == f.op_count
        assert opcode_counts(recipe)[Opcode.LOAD_COEFF] == p.num_monomials

    @given(polynomials())
    @settings(max_examples=100)
    def test_compiled_recipes_validate_clean(self, p):
        assert validate_recipe(compile_recipe(factorize_greedy(p))) == []


class TestEval:
    def test_worked_example(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        assert eval_recipe(recipe, poly_p.coefficients, [-2.0, 3.0, 1.0]) == -29.0

    def test_all_ones(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        assert eval_recipe(recipe, poly_p.coefficients, [1.0, 1.0, 1.0]) == 11.0

    def test_swapped_coefficients(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        assert eval_recipe(recipe, [1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0]) == 4.0

    def test_length_validation(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        with pytest.raises(ValueError):
            eval_recipe(recipe, [1.0], [1.0, 1.0, 1.0])
        with pytest.raises(ValueError):
            eval_recipe(recipe, poly_p.coefficients, [1.0])

    def test_repeated_evaluation_bitwise_identical(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        x = [0.123, -4.56, 7.89]
        assert eval_recipe(recipe, poly_p.coefficients, x) == eval_recipe(recipe, poly_p.coefficients, x)

    def test_evaluator_context_matches_function(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        evaluator = RecipeEvaluator(recipe)
        for x in ([0.5, 0.25, -1.5], [1.0, 1.0, 1.0], [-2.0, 3.0, 1.0]):
            assert evaluator.evaluate(poly_p.coefficients, x) == eval_recipe(recipe, poly_p.coefficients, x)

    def test_exact_on_small_integers(self):
        # with small integer inputs every intermediate is an exact double
        p = make_polynomial([3.0, -2.0, 5.0], [[2, 1], [0, 3], [1, 0]])
        recipe = compile_recipe(factorize_greedy(p))
        for x in ([2.0, 3.0], [-1.0, 4.0], [0.0, 7.0], [5.0, -6.0]):
            exact = rational_eval(p.coefficients, p.exponents, x)
            assert eval_recipe(recipe, p.coefficients, x) == float(exact)

    @given(polynomials())
    @settings(max_examples=100, deadline=None)
    def test_matches_rational_oracle(self, p):
        recipe = compile_recipe(factorize_greedy(p))
        x = [0.5, -1.25, 0.75, -0.375][: p.dimension]
        value = eval_recipe(recipe, p.coefficients, x)
        exact = rational_eval(p.coefficients, p.exponents, x)
        assert abs(Fraction(value) - exact) <= Fraction(1, 10**9) * max(1, abs(exact))

    @given(polynomials(), st.lists(st.floats(-2, 2, allow_nan=False), min_size=7, max_size=7))
    @settings(max_examples=60, deadline=None)
    def test_coefficient_swap_consistency(self, p, extra):
        # identical exponent matrices force identical recipes and results
        other = p.with_coefficients(extra[: p.num_monomials])
        recipe_p = compile_recipe(factorize_greedy(p))
        recipe_other = compile_recipe(factorize_greedy(other))
        assert recipe_p == recipe_other
        x = [0.5] * p.dimension
        assert eval_recipe(recipe_p, other.coefficients, x) == eval_recipe(
            recipe_other, other.coefficients, x
        )


class TestValidate:
    def test_read_before_write(self):
        recipe = Recipe(
            instructions=(Instruction(Opcode.MUL, 4, 8, 0),),
            dimension=3,
            num_coefficients=0,
            slot_count=9,
            result_slot=4,
        )
        issues = validate_recipe(recipe)
        assert any("read before written" in issue for issue in issues)

    def test_pow_exponent_rule(self):
        recipe = Recipe(
            instructions=(
                Instruction(Opcode.LOAD_COEFF, 1, 0),
                Instruction(Opcode.POW, 2, 0, 1),
            ),
            dimension=1,
            num_coefficients=1,
            slot_count=3,
            result_slot=2,
        )
        issues = validate_recipe(recipe)
        assert any("POW exponent" in issue for issue in issues)

    def test_load_count_mismatch(self):
        recipe = Recipe(
            instructions=(Instruction(Opcode.LOAD_COEFF, 1, 0),),
            dimension=1,
            num_coefficients=2,
            slot_count=2,
            result_slot=1,
        )
        issues = validate_recipe(recipe)
        assert any("coefficient loads" in issue for issue in issues)

    def test_slot_bounds(self):
        recipe = Recipe(
            instructions=(Instruction(Opcode.LOAD_COEFF, 99, 0),),
            dimension=1,
            num_coefficients=1,
            slot_count=2,
            result_slot=0,
        )
        issues = validate_recipe(recipe)
        assert any("out of bounds" in issue for issue in issues)

    def test_clean_recipe(self, poly_p):
        assert validate_recipe(compile_recipe(factorize_greedy(poly_p))) == []


class TestDump:
    def test_line_format(self, poly_p):
        recipe = compile_recipe(factorize_greedy(poly_p))
        lines = dump_recipe(recipe).splitlines()
        assert len(lines) == len(recipe.instructions)
        assert lines[0].startswith("LC ")
        for line in lines:
            parts = line.split()
            assert parts[0] in {"LC", "MUL", "ADD", "POW"}
            assert all(part.lstrip("-").isdigit() for part in parts[1:])

    def test_pow_line(self):
        recipe = compile_recipe(factorize_greedy(make_polynomial([2.0], [[3]])))
        assert "POW" in dump_recipe(recipe)
