import time
from fractions import Fraction
from math import gcd

from loguru import logger

from floerhp.errors import NonAdmissible, NotSmallKnot, NotTwoBridge, ZeroSurgeryCoefficient
from floerhp.models.casson import admissibility_failure, casson_invariant, casson_knot_invariant, check_admissible, \
    hp_small_knot, hp_two_bridge, seminorm_unverified, total_seminorm, two_bridge_rank
from floerhp.models.graded import Coefficients
from floerhp.models.knot import KnotRecord, SeminormSpec
from floerhp.models.roots import Chirality, trefoil_surgery_count
from floerhp.models.slope import Slope
from tests import TestWithKnots


class TestCassonInvariant(TestWithKnots):

    def test_trefoil_values(self):
        self.assertTrue(casson_invariant(self.trefoil, Slope(2, 1)) == 2)
        self.assertTrue(casson_invariant(self.trefoil, Slope(3, 1)) == 1)
        self.assertTrue(casson_invariant(self.trefoil, Slope(7, 1)) == 0)
        self.assertTrue(casson_invariant(self.trefoil, Slope(1, 1)) == 2)
        self.assertTrue(casson_invariant(self.left_trefoil, Slope(-2, 1)) == 2)

    def test_non_admissible_reasons(self):
        with self.assertRaises(NonAdmissible) as context:
            casson_invariant(self.trefoil, Slope(12, 1))
        self.assertTrue(context.exception.reason == "AlexanderRoot")
        with self.assertRaises(NonAdmissible) as context:
            casson_invariant(self.trefoil, Slope(6, 1))
        self.assertTrue(context.exception.reason == "BoundarySlope")
        with self.assertRaises(NonAdmissible) as context:
            casson_invariant(self.trefoil, Slope(0, 1))
        self.assertTrue(context.exception.reason == "BoundarySlope")
        self.assertTrue(context.exception.exit_code == 2)

    def test_irregular_slopes(self):
        record = KnotRecord("irregular", [1, -1, 1], ["0/1", "6/1"], SeminormSpec([(1, "6/1")]), 0, "1/2", True,
                            irregular_slopes=["5/1"])
        with self.assertRaises(NonAdmissible) as context:
            check_admissible(record, Slope(5, 1))
        self.assertTrue(context.exception.reason == "IrregularSlope")
        check_admissible(record, Slope(5, 1), check_irregular=False)

    def test_zero_surgery_without_boundary_slope(self):
        record = KnotRecord("no-zero", [1], ["6/1"], SeminormSpec([(1, "6/1")]), 0, 0, True)
        self.assertRaises(ZeroSurgeryCoefficient, casson_invariant, record, Slope(0, 1))

    def test_figure_eight(self):
        self.assertTrue(total_seminorm(self.figure_eight.seminorm, Slope(1, 1)) == 16)
        self.assertTrue(casson_invariant(self.figure_eight, Slope(1, 1)) == 7)
        self.assertTrue(casson_invariant(self.figure_eight, Slope(2, 1)) == 8)

    def test_knot_invariant(self):
        self.assertTrue(casson_knot_invariant(self.trefoil) == 3)
        self.assertTrue(casson_knot_invariant(self.left_trefoil) == 3)
        self.assertTrue(casson_knot_invariant(self.figure_eight) == 8)
        self.assertTrue(isinstance(casson_knot_invariant(self.trefoil), Fraction))

    def test_knot_invariant_is_the_limit(self):
        for p in (1, 2, 5):
            q = 1001 if p % 2 else 1003
            rank = casson_invariant(self.figure_eight, Slope(p, q))
            self.assertTrue(abs(Fraction(rank, q) - casson_knot_invariant(self.figure_eight)) < Fraction(1, 100))

    def test_agrees_with_root_oracle(self):
        for q in range(1, 11):
            for p in range(-50, 51):
                if gcd(abs(p), q) != 1 or p == 6 * q or p % 12 == 0:
                    continue
                expected = trefoil_surgery_count(p, q, Chirality.RIGHT)
                self.assertTrue(casson_invariant(self.trefoil, Slope(p, q)) == expected, f"{p}/{q}")

    def test_seminorm_unverified(self):
        self.assertFalse(seminorm_unverified(self.trefoil))
        self.assertTrue(seminorm_unverified(self.figure_eight))


class TestHP(TestWithKnots):

    def test_small_knot(self):
        self.assertTrue(self.is_group(hp_small_knot(self.trefoil, Slope(2, 1)), Coefficients.INTEGERS, {0: 2}))
        self.assertTrue(self.is_group(hp_small_knot(self.figure_eight, Slope(1, 1)), "Z", {0: 7}))
        self.assertTrue(hp_small_knot(self.trefoil, Slope(7, 1)).is_zero())

    def test_not_small(self):
        record = KnotRecord("large", [1, -1, 1], ["0/1"], SeminormSpec([(2, "0/1")]), 0, 1, False)
        self.assertRaises(NotSmallKnot, hp_small_knot, record, Slope(1, 1))

    def test_two_bridge(self):
        self.assertTrue(two_bridge_rank(self.trefoil, Slope(2, 1)) == 2)
        self.assertTrue(two_bridge_rank(self.trefoil, Slope(3, 1)) == 1)
        self.assertTrue(two_bridge_rank(self.figure_eight, Slope(1, 1)) == 7)
        self.assertTrue(self.is_group(hp_two_bridge(self.figure_eight, Slope(2, 1)), "Z", {0: 8}))
        self.assertRaises(NonAdmissible, two_bridge_rank, self.trefoil, Slope(12, 1))

    def test_not_two_bridge(self):
        record = KnotRecord("no-two-bridge", [1, -3, 1], ["0/1"], SeminormSpec([(2, "4/1")]), 0, 1, True)
        self.assertRaises(NotTwoBridge, two_bridge_rank, record, Slope(1, 1))

    def test_two_bridge_matches_casson(self):
        for p in range(-30, 31):
            if p in (0, 4, -4):
                continue
            s = Slope(p, 1)
            self.assertTrue(two_bridge_rank(self.figure_eight, s) == casson_invariant(self.figure_eight, s))

    def test_two_bridge_matches_small_knot(self):
        for knot in (self.trefoil, self.left_trefoil, self.figure_eight):
            for s in slopes(40, 8):
                if admissibility_failure(knot, s) is not None:
                    continue
                self.assertTrue(hp_two_bridge(knot, s) == hp_small_knot(knot, s), f"{knot.name} {s}")


def slopes(max_p: int, max_q: int):
    for q in range(1, max_q + 1):
        for p in range(-max_p, max_p + 1):
            if gcd(abs(p), q) == 1:
                yield Slope(p, q)


def mirror(k: KnotRecord) -> KnotRecord:
    return KnotRecord(f"{k.name}-mirror", k.alexander, [-s for s in k.boundary_slopes], k.seminorm.mirrored(),
                      k.E0, k.E1, k.small, irregular_slopes=[-s for s in k.irregular_slopes])


class TestAdmissibility(TestWithKnots):

    def test_failure_reasons(self):
        self.assertTrue(admissibility_failure(self.trefoil, Slope(2, 1)) is None)
        self.assertTrue(admissibility_failure(self.trefoil, Slope(6, 1)) == NonAdmissible.BOUNDARY_SLOPE)
        self.assertTrue(admissibility_failure(self.trefoil, Slope(0, 1)) == NonAdmissible.BOUNDARY_SLOPE)
        self.assertTrue(admissibility_failure(self.trefoil, Slope(12, 1)) == NonAdmissible.ALEXANDER_ROOT)
        self.assertTrue(admissibility_failure(self.trefoil, Slope(-24, 5)) == NonAdmissible.ALEXANDER_ROOT)

    def test_agrees_with_check(self):
        for s in slopes(30, 4):
            reason = admissibility_failure(self.trefoil, s)
            if reason is None:
                check_admissible(self.trefoil, s)
                continue
            with self.assertRaises(NonAdmissible) as context:
                check_admissible(self.trefoil, s)
            self.assertTrue(context.exception.reason == reason)

    def test_oracle_sweep_runtime(self):
        logger.disable("floerhp")
        try:
            start = time.perf_counter()
            checked, mismatches = 0, 0
            for s in slopes(99, 20):
                if admissibility_failure(self.trefoil, s) is not None:
                    continue
                checked += 1
                if casson_invariant(self.trefoil, s) != trefoil_surgery_count(s.p, s.q, Chirality.RIGHT):
                    mismatches += 1
            elapsed = time.perf_counter() - start
        finally:
            logger.enable("floerhp")
        self.assertTrue(checked == 2373)
        self.assertTrue(mismatches == 0)
        self.assertTrue(elapsed < 1.0, f"{elapsed:.2f} s")


class TestSeminormSymmetries(TestWithKnots):

    def test_mirror_negates_slopes(self):
        for knot in (self.trefoil, self.figure_eight):
            mirrored = mirror(knot)
            for s in slopes(60, 10):
                image = Slope(-s.p, s.q)
                self.assertTrue(total_seminorm(mirrored.seminorm, image) == total_seminorm(knot.seminorm, s))
                reason = admissibility_failure(knot, s)
                self.assertTrue(admissibility_failure(mirrored, image) == reason, f"{knot.name} {s}")
                if reason is None:
                    self.assertTrue(casson_invariant(mirrored, image) == casson_invariant(knot, s), f"{knot.name} {s}")

    def test_builtin_trefoils_are_mirrors(self):
        for s in slopes(60, 10):
            image = Slope(-s.p, s.q)
            if admissibility_failure(self.trefoil, s) is None:
                self.assertTrue(casson_invariant(self.left_trefoil, image) == casson_invariant(self.trefoil, s))
            else:
                self.assertTrue(admissibility_failure(self.left_trefoil, image) is not None)

    def test_vanishes_exactly_on_entry_slopes(self):
        specs = [self.trefoil.seminorm, self.figure_eight.seminorm, SeminormSpec([(1, "1/2"), ("1/2", "-3/5")])]
        for spec in specs:
            for s in slopes(20, 10):
                vanishes = total_seminorm(spec, s) == 0
                self.assertTrue(vanishes == (s.as_fraction() in spec.kernel_slopes), f"{s}")
        spec = specs[2]
        self.assertTrue(total_seminorm(spec, Slope(1, 2)) == 0)
        self.assertTrue(total_seminorm(spec, Slope(-3, 5)) == 0)
        self.assertTrue(total_seminorm(spec, Slope(0, 1)) == Fraction(1) + Fraction(3, 2))
