from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import canonical_from_ratios, stratified_corpus
from trivol import formula
from trivol.boxdom import BoxDomain3, Interval, normalize
from trivol.formula import (
    PreconditionError,
    case_conditions,
    case_formula,
    classify,
    hull_volume,
    hull_volume_any,
    hull_volume_nonneg,
    table1_subcases,
)
from trivol.oracle import oracle_volume_quadrature

UNIT = BoxDomain3.from_centers([0, 0, 0], [1, 1, 1])
WORKED = BoxDomain3.from_centers([1, 2, 5], [3, 1, 2])

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=8)
positive = st.fractions(min_value=Fraction(1, 8), max_value=10, max_denominator=8)
raw_domains = st.builds(
    lambda cs, ls: BoxDomain3(tuple(Interval(c, l) for c, l in zip(cs, ls))),
    st.tuples(rationals, rationals, rationals),
    st.tuples(positive, positive, positive),
)
# ratios on a coarse grid, so 0, 1 and ratio-sum 1 come up often
grid_ratio = st.sampled_from([Fraction(k, 4) for k in range(0, 13)])


class TestClassify:
    @pytest.mark.parametrize(
        "domain, case",
        [(WORKED, 2), (UNIT, 6), (BoxDomain3.from_centers([2, 3, 4], [1, 1, 1]), 1)],
    )
    def test_examples(self, domain, case):
        assert classify(domain) == case

    @given(st.tuples(grid_ratio, grid_ratio, grid_ratio))
    def test_partition_is_total_and_exclusive(self, r):
        d = canonical_from_ratios(sorted(r), (1, 2, 3))
        assert sum(case_conditions(d)) == 1

    def test_boundary_configurations(self):
        for r in [(0, 0, 0), (0, 0, 1), (1, 1, 1), (0, Fraction(1, 2), Fraction(1, 2)),
                  (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)), (0, 1, 1), (1, 2, 3)]:
            assert sum(case_conditions(canonical_from_ratios(r, (1, 1, 1)))) == 1


class TestClosedForm:
    def test_examples(self):
        assert hull_volume(WORKED) == 960
        assert hull_volume(UNIT) == Fraction(32, 3)
        assert hull_volume(BoxDomain3.from_centers([2, 3, 4], [1, 1, 1])) == Fraction(128, 3)

    def test_unknown_case(self):
        with pytest.raises(ValueError):
            case_formula(7, UNIT)

    @pytest.mark.parametrize(
        "bounds, volume",
        [([[3, 7], [-2, 4], [-3, -1]], 960), ([[-1, 1]] * 3, Fraction(32, 3))],
    )
    def test_any_domain(self, bounds, volume):
        rep = hull_volume_any(BoxDomain3.from_bounds(bounds))
        assert rep.volume == rep.closed_form == rep.assembled == volume

    def test_nonneg_box_agrees(self):
        d = BoxDomain3.from_bounds([[1, 3], [2, 4], [3, 5]])
        rep = hull_volume_any(d)
        assert rep.volume == hull_volume_nonneg(rep.canonical) == oracle_volume_quadrature(d)

    @given(raw_domains)
    def test_pipeline_equality(self, d):
        rep = hull_volume_any(d)
        assert rep.closed_form == rep.assembled
        assert rep.subcases == table1_subcases(rep.case)

    @given(raw_domains, st.integers(0, 2), st.fractions(min_value=Fraction(1, 5), max_value=7, max_denominator=5))
    def test_scaling_one_variable(self, d, i, s):
        ivs = list(d.intervals)
        ivs[i] = Interval(s * ivs[i].center, s * ivs[i].half_length)
        scaled = BoxDomain3(tuple(ivs))
        assert hull_volume_any(scaled).volume == s**2 * hull_volume_any(d).volume

    def test_case5_constant_against_oracle(self):
        for case, raw in stratified_corpus(15, seed=55):
            if case == 5:
                assert hull_volume(normalize(raw)[0]) == oracle_volume_quadrature(raw)

    def test_perturbed_case5_constant_is_caught(self, monkeypatch):
        monkeypatch.setattr(formula, "CASE5_LEAD", Fraction(4, 3) + Fraction(1, 100))
        raw = next(d for case, d in stratified_corpus(3, seed=1) if case == 5)
        assert hull_volume(normalize(raw)[0]) != oracle_volume_quadrature(raw)


class TestNonneg:
    def test_examples(self):
        assert hull_volume_nonneg(BoxDomain3.from_centers([2, 3, 4], [1, 1, 1])) == Fraction(128, 3)
        assert hull_volume_nonneg(BoxDomain3.from_centers([1, 1, 1], [1, 1, 1])) == Fraction(40, 3)
        assert hull_volume(BoxDomain3.from_centers([1, 1, 1], [1, 1, 1])) == Fraction(40, 3)

    def test_rejects_negative_lower_bound(self):
        with pytest.raises(PreconditionError):
            hull_volume_nonneg(WORKED)

    def test_rejects_unordered(self):
        with pytest.raises(PreconditionError):
            hull_volume_nonneg(BoxDomain3.from_centers([4, 3, 2], [1, 1, 1]))


class TestTable1:
    @pytest.mark.parametrize(
        "case, row",
        [(1, (1, 1, 1)), (2, (2, 2, 1)), (3, (2, 3, 1)), (4, (2, 3, 2)), (5, (3, 3, 2)), (6, (4, 3, 2))],
    )
    def test_rows(self, case, row):
        assert table1_subcases(case) == row
