from fractions import Fraction
from itertools import product
from math import gcd

from loguru import logger

from floerhp.errors import CoefficientMismatch, NonAdmissible, PreconditionError, UnsupportedDegree, \
    ZeroSurgeryCoefficient
from floerhp.models.casson import casson_invariant
from floerhp.models.census import ComponentCensus, ComponentType, Family
from floerhp.models.floer import CLOSED_FORMS, DEFAULT_CONTRIBUTIONS, AbelianCensus, ClosedFormCase, \
    ContributionTable, abelian_census, closed_form_case, consecutive_triangle_sweep, expected_discrepancy, \
    family_apoly, hp_closed_form, hp_consistency, hp_from_census, hp_granny, hp_sharp, hp_sharp_defined, hp_square, \
    limit_intercept, limit_rank, limit_rank_sharp, surface_slope, triangle_check
from floerhp.models.graded import Coefficients, GradedGroup
from floerhp.models.knot import KnotRecord, SeminormSpec
from floerhp.models.slope import Slope
from tests import TestWithKnots

F2 = Coefficients.F2
SURFACE_GROUP = {1: 4, 0: 4, -2: 1}


def slopes(max_p: int, max_q: int):
    for q in range(1, max_q + 1):
        for p in range(-max_p, max_p + 1):
            if gcd(abs(p), q) == 1:
                yield Slope(p, q)


class TestContributionTable(TestWithKnots):

    def test_rows(self):
        self.assertTrue(self.is_group(DEFAULT_CONTRIBUTIONS[ComponentType.POINT], F2, {0: 1}))
        self.assertTrue(self.is_group(DEFAULT_CONTRIBUTIONS[ComponentType.CSTAR], F2, {0: 1, -1: 1}))
        self.assertTrue(self.is_group(DEFAULT_CONTRIBUTIONS[ComponentType.CSTAR_MINUS_POINT], F2, {0: 1, -1: 2}))
        self.assertTrue(self.is_group(DEFAULT_CONTRIBUTIONS[ComponentType.SURFACE_S], F2, {1: 4, 0: 2, -2: 1}))

    def test_euler_characteristics(self):
        expected = {
            ComponentType.POINT: 1, ComponentType.CSTAR: 0,
            ComponentType.CSTAR_MINUS_POINT: -1, ComponentType.SURFACE_S: -1,
        }
        self.assertTrue(DEFAULT_CONTRIBUTIONS.euler_characteristics() == expected)

    def test_immutable(self):
        with self.assertRaises(TypeError):
            DEFAULT_CONTRIBUTIONS.rows[ComponentType.POINT] = GradedGroup(F2, {0: 2})
        tampered = DEFAULT_CONTRIBUTIONS.with_row(ComponentType.POINT, GradedGroup(F2, {0: 2}))
        self.assertTrue(tampered[ComponentType.POINT].rank_at(0) == 2)
        self.assertTrue(DEFAULT_CONTRIBUTIONS[ComponentType.POINT].rank_at(0) == 1)

    def test_validation(self):
        rows = dict(DEFAULT_CONTRIBUTIONS.rows)
        del rows[ComponentType.CSTAR]
        self.assertRaises(ValueError, ContributionTable, rows)
        rows[ComponentType.CSTAR] = GradedGroup(Coefficients.INTEGERS, {0: 1})
        self.assertRaises(ValueError, ContributionTable, rows)


class TestHPFromCensus(TestWithKnots):

    def test_examples(self):
        self.assertTrue(self.is_group(hp_from_census(ComponentCensus({ComponentType.POINT: 4})), F2, {0: 4}))
        census = ComponentCensus({ComponentType.POINT: 4, ComponentType.CSTAR: 5})
        self.assertTrue(self.is_group(hp_from_census(census), F2, {0: 9, -1: 5}))
        census = ComponentCensus({ComponentType.POINT: 2, ComponentType.SURFACE_S: 1})
        self.assertTrue(self.is_group(hp_from_census(census), F2, SURFACE_GROUP))
        census = ComponentCensus({ComponentType.POINT: 14, ComponentType.CSTAR: 3, ComponentType.CSTAR_MINUS_POINT: 2})
        self.assertTrue(self.is_group(hp_from_census(census), F2, {0: 19, -1: 7}))

    def test_empty(self):
        self.assertTrue(hp_from_census(ComponentCensus()) == GradedGroup.zero(F2))

    def test_euler_characteristic_is_additive(self):
        tampered = DEFAULT_CONTRIBUTIONS.with_row(ComponentType.CSTAR, GradedGroup(F2, {1: 1, 0: 3}))
        censuses = [
            ComponentCensus({ComponentType.POINT: a, ComponentType.CSTAR: b, ComponentType.CSTAR_MINUS_POINT: c})
            for a, b, c in product(range(5), repeat=3)
        ]
        censuses += [ComponentCensus({ComponentType.POINT: a, ComponentType.SURFACE_S: 1}) for a in range(5)]
        for table in (DEFAULT_CONTRIBUTIONS, tampered):
            chi = table.euler_characteristics()
            for census in censuses:
                expected = sum(count * chi[component] for component, count in census.counts.items())
                self.assertTrue(hp_from_census(census, table).euler_characteristic() == expected, f"{census}")


class TestClosedForms(TestWithKnots):

    def test_granny(self):
        self.assertTrue(self.is_group(hp_granny(Slope(12, 1)), F2, SURFACE_GROUP))
        self.assertTrue(self.is_group(hp_granny(Slope(1, 1)), F2, {0: 9, -1: 5}))
        self.assertTrue(self.is_group(hp_granny(Slope(2, 1)), F2, {0: 8, -1: 4}))
        self.assertTrue(self.is_group(hp_granny(Slope(24, 1)), F2, {0: 19, -1: 7}))

    def test_square(self):
        self.assertTrue(self.is_group(hp_square(Slope(0, 1)), F2, SURFACE_GROUP))
        self.assertTrue(self.is_group(hp_square(Slope(1, 1)), F2, {0: 5}))
        self.assertTrue(self.is_group(hp_square(Slope(12, 1)), F2, {0: 13, -1: 9}))

    def test_dispatch(self):
        self.assertTrue(hp_closed_form("granny", Slope(7, 3)) == hp_granny(Slope(7, 3)))
        self.assertTrue(hp_closed_form(Family.SQUARE, Slope(-5, 2)) == hp_square(Slope(-5, 2)))

    def test_cases(self):
        self.assertTrue(closed_form_case(Family.GRANNY, Slope(12)) == ClosedFormCase.SURFACE)
        self.assertTrue(closed_form_case(Family.SQUARE, Slope(12)) == ClosedFormCase.MULTIPLE_OF_12)
        self.assertTrue(closed_form_case(Family.SQUARE, Slope(0)) == ClosedFormCase.SURFACE)
        self.assertTrue(closed_form_case(Family.GRANNY, Slope(0)) == ClosedFormCase.MULTIPLE_OF_12)
        self.assertTrue(closed_form_case(Family.GRANNY, Slope(3, 4)) == ClosedFormCase.ODD)
        self.assertTrue(closed_form_case(Family.GRANNY, Slope(-10, 3)) == ClosedFormCase.EVEN)
        self.assertTrue(set(CLOSED_FORMS[Family.GRANNY]) == {ClosedFormCase.ODD, ClosedFormCase.EVEN,
                                                             ClosedFormCase.MULTIPLE_OF_12})

    def test_ranks_are_integers_over_a_sweep(self):
        for s in slopes(80, 8):
            for family in Family:
                group = hp_closed_form(family, s)
                self.assertTrue(group.coeff == F2)


class TestConsistency(TestWithKnots):

    def test_examples(self):
        report = hp_consistency(Family.GRANNY, Slope(24, 1))
        self.assertTrue(report.is_consistent())
        report = hp_consistency(Family.GRANNY, Slope(1, 1))
        self.assertTrue(report.is_consistent())
        report = hp_consistency(Family.SQUARE, Slope(12, 1))
        self.assertTrue(report.nonzero_delta() == {-1: -2})
        self.assertTrue(self.is_group(report.assembled, F2, {0: 13, -1: 7}))
        self.assertTrue(report.matches_expectation())

    def test_sweep(self):
        for s in slopes(200, 12):
            granny = hp_consistency(Family.GRANNY, s)
            self.assertTrue(granny.is_consistent(), f"granny {s}: {granny.nonzero_delta()}")
            square = hp_consistency(Family.SQUARE, s)
            expected = {-1: -2} if s.p != 0 and s.p % 12 == 0 else {}
            self.assertTrue(square.nonzero_delta() == expected, f"square {s}: {square.nonzero_delta()}")

    def test_expected_discrepancy(self):
        self.assertTrue(expected_discrepancy(Family.SQUARE, Slope(-24)) == {-1: -2})
        self.assertTrue(expected_discrepancy(Family.SQUARE, Slope(0)) == {})
        self.assertTrue(expected_discrepancy(Family.GRANNY, Slope(24)) == {})

    def test_tampered_table(self):
        tampered = DEFAULT_CONTRIBUTIONS.with_row(ComponentType.CSTAR, GradedGroup(F2, {0: 2}))
        report = hp_consistency(Family.GRANNY, Slope(1, 1), tampered)
        self.assertFalse(report.is_consistent())
        self.assertTrue(report.nonzero_delta() == {0: 5, -1: -5})

    def test_to_dict(self):
        data = hp_consistency(Family.SQUARE, Slope(12, 1)).to_dict()
        self.assertTrue(data["family"] == "square")
        self.assertTrue(data["slope"] == "12/1")
        self.assertTrue(data["delta"] == {"0": 0, "-1": -2})
        self.assertTrue(data["closed"]["entries"]["-1"] == {"rank": 9})


class TestAbelianCensus(TestWithKnots):

    def test_examples(self):
        self.assertTrue(abelian_census(Slope(2, 1)) == AbelianCensus(2, 0))
        self.assertTrue(abelian_census(Slope(3, 1)) == AbelianCensus(1, 1))
        self.assertTrue(abelian_census(Slope(7, 3)) == AbelianCensus(1, 3))
        self.assertTrue(abelian_census(Slope(-8, 5)) == AbelianCensus(2, 3))

    def test_zero_surgery(self):
        self.assertRaises(ZeroSurgeryCoefficient, abelian_census, Slope(0, 1))

    def test_counts_p_roots(self):
        # central points plus two per orbit recover the |p| abelian characters
        for p in range(1, 50):
            census = abelian_census(Slope(p))
            self.assertTrue(census.central + 2 * census.noncentral_orbits == p)


class TestHPSharp(TestWithKnots):

    def test_trefoil_examples(self):
        self.assertTrue(self.is_group(hp_sharp(self.trefoil, Slope(2, 1)), "Z", {0: 4, -1: (0, [2, 2]), -3: 2}))
        self.assertTrue(self.is_group(hp_sharp(self.trefoil, Slope(3, 1)), "Z",
                                      {0: 3, -1: (0, [2]), -2: 1, -3: 1}))
        self.assertTrue(self.is_group(hp_sharp(self.trefoil, Slope(5, 1)), "Z", {0: 3, -2: 2}))

    def test_non_admissible(self):
        self.assertRaises(NonAdmissible, hp_sharp, self.trefoil, Slope(12, 1))
        self.assertRaises(NonAdmissible, hp_sharp, self.trefoil, Slope(6, 1))

    def test_figure_eight(self):
        group = hp_sharp(self.figure_eight, Slope(1, 1))
        self.assertTrue(group.rank_at(0) == 1 + 7)
        self.assertTrue(group.rank_at(-3) == 7)
        self.assertTrue(group.torsion_at(-1) == (2,) * 7)

    def test_multiplicity_is_the_casson_invariant(self):
        for knot in (self.trefoil, self.left_trefoil, self.figure_eight):
            for s in slopes(30, 4):
                if hp_sharp_defined(knot, s):
                    self.assertTrue(hp_sharp(knot, s).rank_at(-3) == casson_invariant(knot, s), f"{knot.name} {s}")

    def test_defined(self):
        self.assertTrue(hp_sharp_defined(self.trefoil, Slope(2, 1)))
        for p in (0, 6, 12, -24):
            self.assertFalse(hp_sharp_defined(self.trefoil, Slope(p, 1)))
        for p in range(-40, 41):
            s = Slope(p, 1)
            if hp_sharp_defined(self.trefoil, s):
                hp_sharp(self.trefoil, s)
            else:
                self.assertRaises(PreconditionError, hp_sharp, self.trefoil, s)

    def test_defined_skips_irregular_check_for_two_bridge_knots(self):
        data = ("irregular", [1, -1, 1], ["0/1", "6/1"], SeminormSpec([(1, "6/1")]), 0, "1/2", True)
        two_bridge = KnotRecord(*data, two_bridge=(3, 1), irregular_slopes=["5/1"])
        self.assertTrue(hp_sharp_defined(two_bridge, Slope(5, 1)))
        self.assertTrue(hp_sharp(two_bridge, Slope(5, 1)).rank_at(-3) == 0)
        self.assertFalse(hp_sharp_defined(KnotRecord(*data, irregular_slopes=["5/1"]), Slope(5, 1)))


class TestTriangle(TestWithKnots):

    def setUp(self) -> None:
        super().setUp()
        self.low = hp_sharp(self.trefoil, Slope(2, 1))
        self.high = hp_sharp(self.trefoil, Slope(3, 1))

    def test_counterexample(self):
        verdict = triangle_check(self.low, self.high)
        self.assertFalse(verdict.compatible)
        self.assertTrue(verdict.obstruction_degrees == {-2, -3})
        self.assertTrue(verdict.to_dict() == {"compatible": False, "obstruction_degrees": [-2, -3]})

    def test_symmetric(self):
        for protected in ((), (0,), (-1, 0, 1), (-3,)):
            self.assertTrue(triangle_check(self.low, self.high, protected) ==
                            triangle_check(self.high, self.low, protected))

    def test_window(self):
        verdict = triangle_check(self.low, self.high, protected=())
        self.assertTrue(verdict.obstruction_degrees == {0, -2, -3})
        verdict = triangle_check(self.low, self.high, protected=(0, -2, -3))
        self.assertTrue(verdict.compatible)

    def test_identical_groups(self):
        self.assertTrue(triangle_check(self.low, self.low).compatible)

    def test_coefficient_mismatch(self):
        self.assertRaises(CoefficientMismatch, triangle_check, self.low, GradedGroup(F2, {0: 4}))

    def test_sweep(self):
        verdicts = dict(consecutive_triangle_sweep(self.trefoil, range(1, 30)))
        # pairs touching a boundary slope or a multiple of 12 are skipped
        self.assertTrue(set(verdicts) == set(range(1, 30)) - {5, 6, 11, 12, 23, 24})
        self.assertTrue(not verdicts[2].compatible)
        for p, verdict in verdicts.items():
            if p % 2 == 0:
                self.assertFalse(verdict.compatible, f"{p}")

    def test_sweep_skips_without_errors(self):
        messages = []
        handler_id = logger.add(messages.append, level="ERROR")
        try:
            verdicts = consecutive_triangle_sweep(self.trefoil, range(-30, 30))
        finally:
            logger.remove(handler_id)
        self.assertTrue(messages == [], f"{messages}")
        self.assertTrue(0 not in dict(verdicts) and -1 not in dict(verdicts))
        self.assertTrue(len(verdicts) > 0)


class TestLimits(TestWithKnots):

    def test_family_limits(self):
        self.assertTrue(limit_rank(Family.GRANNY, 0, 1) == 12)
        self.assertTrue(limit_rank(Family.GRANNY, -1, 1) == 6)
        self.assertTrue(limit_rank(Family.SQUARE, 0, 5) == 6)
        self.assertTrue(limit_rank(Family.SQUARE, -1, 5) == 0)

    def test_limit_independent_of_p(self):
        for p in (1, 2, 12, -7, -24, 35):
            self.assertTrue(limit_rank("granny", 0, p) == 12)
            self.assertTrue(limit_rank("square", 0, p) == 6)

    def test_deviation(self):
        self.assertTrue(hp_granny(Slope(1, 101)).rank_at(0) == 1209)
        self.assertTrue(limit_intercept(Family.GRANNY, 0, 1) == -3)
        for q in (101, 103):
            for p in (1, 2, 5, 12, -7, -24):
                if gcd(abs(p), q) != 1:
                    continue
                for family in Family:
                    for degree in (0, -1):
                        rank = hp_closed_form(family, Slope(p, q)).rank_at(degree)
                        deviation = abs(Fraction(rank, q) - limit_rank(family, degree, p))
                        self.assertTrue(deviation == abs(limit_intercept(family, degree, p)) / q)

    def test_errors(self):
        self.assertRaises(UnsupportedDegree, limit_rank, Family.GRANNY, -2, 1)
        self.assertRaises(ZeroSurgeryCoefficient, limit_rank, Family.GRANNY, 0, 0)
        self.assertRaises(UnsupportedDegree, limit_rank_sharp, self.trefoil, 1, 1)
        self.assertRaises(ZeroSurgeryCoefficient, limit_rank_sharp, self.trefoil, 0, 0)

    def test_sharp_limits(self):
        self.assertTrue(limit_rank_sharp(self.trefoil, 0, 1) == 3)
        self.assertTrue(limit_rank_sharp(self.trefoil, -3, 1) == 3)
        self.assertTrue(limit_rank_sharp(self.trefoil, -2, 1) == 0)
        self.assertTrue(limit_rank_sharp(self.figure_eight, 0, 2) == 8)


class TestFamilyAPoly(TestWithKnots):

    def test_surface_slopes(self):
        self.assertTrue(surface_slope(Family.GRANNY) == Slope(12, 1))
        self.assertTrue(surface_slope("square") == Slope(0, 1))

    def test_expanded_terms(self):
        for family in Family:
            self.assertTrue(len(family_apoly(family).expand().terms) == 8)
