"""Tests for Laurent polynomial arithmetic and the cube recurrence."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grove_moves.config import Settings
from grove_moves.enumeration import enumerate_groves
from grove_moves.exceptions import (
    BudgetExceededError,
    DivisionByZeroError,
    InexactDivisionError,
    RecurrenceError,
)
from grove_moves.recurrence import (
    CubeRecurrence,
    LaurentPoly,
    VarId,
    balanced_cell,
    cube_f,
    level_summary,
    poly_arith,
)

X = LaurentPoly.variable((0, 0, 0))
Y = LaurentPoly.variable((1, 0, 0))
Z = LaurentPoly.variable((0, 1, 0))


def mono(coeff, **exps):
    names = {"x": (0, 0, 0), "y": (1, 0, 0), "z": (0, 1, 0)}
    return LaurentPoly.from_terms([({names[k]: e for k, e in exps.items()}, coeff)])


class TestLaurentPoly:
    def test_canonical_form_merges_terms(self):
        p = LaurentPoly.from_terms([({(0, 0, 0): 1}, 2), ({(0, 0, 0): 1}, -2), ({}, 3)])
        assert p == LaurentPoly.constant(3)

    def test_zero(self):
        assert LaurentPoly.constant(0).is_zero
        assert str(LaurentPoly()) == "0"

    def test_str(self):
        p = X * X + LaurentPoly.constant(-1) * Y
        assert str(p) == "x[0,0,0]^2 - x[1,0,0]"

    def test_variables(self):
        assert (X * Y + Z).variables == [VarId(0, 0, 0), VarId(0, 1, 0), VarId(1, 0, 0)]

    def test_shift(self):
        assert X.shift((1, 0, 0)) == Y


class TestArithmetic:
    def test_exact_division(self):
        numerator = X * X + LaurentPoly.constant(-1) * Y * Y
        assert numerator.div_exact(X + Y) == X + LaurentPoly.constant(-1) * Y

    def test_monomials_are_units(self):
        assert X.div_exact(X * Y) == mono(1, y=-1)
        assert (X + Y).div_exact(X) == LaurentPoly.constant(1) + mono(1, x=-1, y=1)

    def test_negative_exponents_multiply(self):
        assert mono(1, x=-2) * mono(3, x=2, z=1) == mono(3, z=1)

    def test_inexact_division(self):
        with pytest.raises(InexactDivisionError) as exc:
            X.div_exact(X + Y)
        assert exc.value.witness

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            X.div_exact(LaurentPoly())

    def test_zero_dividend(self):
        assert LaurentPoly().div_exact(X + Y).is_zero

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            poly_arith(X, Y, "pow")


exponents = st.integers(min_value=-2, max_value=2)
monomials = st.fixed_dictionaries({"x": exponents, "y": exponents, "z": exponents})
polys = st.lists(
    st.tuples(monomials, st.integers(min_value=-3, max_value=3)), min_size=0, max_size=4
).map(lambda terms: LaurentPoly.from_terms(
    ({(0, 0, 0): e["x"], (1, 0, 0): e["y"], (0, 1, 0): e["z"]}, c) for e, c in terms
))


@settings(max_examples=50, deadline=None)
@given(polys, polys)
def test_product_divides_back(p, q):
    if q.is_zero:
        return
    assert (p * q).div_exact(q) == p


@settings(max_examples=50, deadline=None)
@given(polys, polys, polys)
def test_multiplication_distributes(p, q, r):
    assert p * (q + r) == p * q + p * r


@settings(max_examples=50, deadline=None)
@given(polys, polys)
def test_addition_commutes(p, q):
    assert p + q == q + p


class TestCubeRecurrence:
    def test_initial_cells_are_variables(self):
        assert cube_f((0, 0, 0)) == X
        assert cube_f((1, 0, 0)) == Y
        assert cube_f((0, 0, -1)) == LaurentPoly.variable((0, 0, -1))

    def test_below_initial_slices(self):
        with pytest.raises(RecurrenceError):
            cube_f((-1, -1, 0))

    def test_first_computed_cell(self):
        value = cube_f((1, 1, 0))
        assert value.term_count == 3
        assert value.coefficients() == [1, 1, 1]
        # every term divides by the cell below the cube
        assert all(
            dict(exps).get(VarId(0, 0, -1)) == -1 for exps, _ in value.terms
        )

    def test_level_translation(self):
        engine = CubeRecurrence()
        assert engine.f((2, 1, 0)) == engine.f((1, 2, 0)).shift((1, -1, 0))

    def test_custom_base_level(self):
        engine = CubeRecurrence(base_level=0)
        assert engine.f((1, 1, 0)) == LaurentPoly.variable((1, 1, 0))
        assert engine.f((1, 1, 1)).term_count == 3

    def test_raised_base_matches_shift(self):
        raised = CubeRecurrence(base_level=2)
        assert raised.f((2, 2, 1)) == CubeRecurrence().f((1, 1, 0)).shift((1, 1, 1))

    @pytest.mark.parametrize("cell", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
    def test_raised_base_translates_deeper_cells(self, cell):
        raised = CubeRecurrence(base_level=2)
        moved = tuple(c + 1 for c in cell)
        assert raised.f(moved) == CubeRecurrence().f(cell).shift((1, 1, 1))


class TestLevelSummary:
    @pytest.mark.parametrize(
        "m,cell", [(1, (1, 0, 0)), (2, (1, 1, 0)), (3, (1, 1, 1)), (4, (2, 1, 1)), (5, (2, 2, 1))]
    )
    def test_balanced_cell(self, m, cell):
        assert balanced_cell(m) == VarId(*cell)
        assert balanced_cell(m).level == m

    @pytest.mark.parametrize("m,count", [(1, 1), (2, 3), (3, 9)])
    def test_term_counts(self, m, count):
        summary = level_summary(m)
        assert summary.term_count == count
        assert summary.all_coefficients_one
        assert summary.max_abs_coefficient == 1

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_terms_match_grove_counts(self, m):
        assert level_summary(m).term_count == len(enumerate_groves(m))

    @pytest.mark.slow
    def test_level_five(self):
        summary = level_summary(5)
        assert summary.all_coefficients_one
        assert summary.term_count == len(enumerate_groves(5))

    def test_to_dict(self):
        data = level_summary(2).to_dict()
        assert data["cell"] == [1, 1, 0]
        assert len(data["exponent_patterns"]) == 3
        assert "exponent_patterns" not in level_summary(2).to_dict(include_patterns=False)

    @pytest.mark.parametrize("m", [0, -1, True, 2.0])
    def test_bad_level(self, m):
        with pytest.raises(RecurrenceError):
            level_summary(m)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            level_summary(4, Settings(recurrence_budget=3))
