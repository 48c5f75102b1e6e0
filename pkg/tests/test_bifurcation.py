import math
import unittest
from fractions import Fraction

from betahole.core.errors import BetaDomainError
from betahole.core.expansion import greedy_expand
from betahole.core.field import TWO, make_beta
from betahole.core.primitives import EstimateMethod, Verdict
from betahole.dynamics.bifurcation import (
    AboveThreshold,
    Found,
    NotCoveredAtDepth,
    approach_words,
    dimension,
    in_B,
    in_B_prime,
    in_E,
    in_E_prime,
    local_dimension_profile,
    locate_interval,
    staircase,
    sup_E,
    tail_dimension,
)
from betahole.lyndon.intervals import make_interval

PLASTIC = 1.3247179572447460
GOLDEN = (1 + math.sqrt(5)) / 2
PLATEAU_001 = math.log(PLASTIC) / math.log(GOLDEN)


class TestMembership(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(1)
        self.b = self.beta.gen
        self.quarter = self.beta.scalar(Fraction(1, 4))
        self.t_right = (self.b - 1) / 2

    def test_in_E_examples(self):
        self.assertIs(in_E(self.beta.zero, self.beta).verdict, Verdict.MEMBER)
        self.assertIs(in_E(self.t_right, self.beta).verdict, Verdict.MEMBER)
        quarter = in_E(self.quarter, self.beta)
        self.assertIs(quarter.verdict, Verdict.NONMEMBER)
        self.assertEqual(quarter.witness, 3)

    def test_threshold_drops_after_m_plus_one_steps(self):
        for m in (1, 2, 3):
            beta = make_beta(m)
            result = in_E(beta.threshold, beta)
            self.assertIs(result.verdict, Verdict.NONMEMBER)
            self.assertEqual(result.witness, m + 1)

    def test_unknown_at_short_horizon(self):
        t = self.beta.scalar(Fraction(1, 7))
        with self.assertLogs("betahole.core.expansion", level="WARNING"):
            result = in_E(t, self.beta, horizon=2)
        self.assertIs(result.verdict, Verdict.UNKNOWN)
        self.assertEqual(result.horizon, 2)
        self.assertFalse(result.is_decided)

    def test_drop_on_last_followed_step(self):
        """An open orbit is followed exactly, so a drop at the horizon itself counts."""
        with self.assertLogs("betahole.core.expansion", level="WARNING"):
            result = in_E(self.quarter, self.beta, horizon=3)
        self.assertIs(result.verdict, Verdict.NONMEMBER)
        self.assertEqual(result.witness, 3)
        with self.assertLogs("betahole.core.expansion", level="WARNING"):
            self.assertEqual(in_B(self.quarter, self.beta, depth=6, horizon=3).word, "001")

    def test_in_B_examples(self):
        self.assertTrue(in_B(self.beta.zero, self.beta, depth=6).is_member)
        quarter = in_B(self.quarter, self.beta, depth=6)
        self.assertIs(quarter.verdict, Verdict.NONMEMBER)
        self.assertEqual(quarter.word, "001")
        above = in_B(self.beta.scalar(Fraction(2, 5)), self.beta, depth=6)
        self.assertIs(above.verdict, Verdict.NONMEMBER)

    def test_routes_agree_on_rationals(self):
        """in_B raises if the orbit and the interval lookup ever disagree."""
        for q in range(2, 12):
            for p in range(q):
                t = self.beta.scalar(Fraction(p, q))
                result = in_B(t, self.beta, depth=8)
                self.assertEqual(result.verdict, in_E(t, self.beta).verdict)

    def test_two_sided_sets(self):
        self.assertTrue(in_E(self.t_right, self.beta).is_member)
        prime = in_E_prime(self.t_right, self.beta)
        self.assertIs(prime.verdict, Verdict.NONMEMBER)
        self.assertEqual(prime.word, "001")
        self.assertIs(in_B_prime(self.t_right, self.beta, depth=6).verdict, Verdict.NONMEMBER)

        self.assertTrue(in_E_prime(self.beta.zero, self.beta).is_member)
        self.assertTrue(in_B_prime(self.beta.zero, self.beta, depth=6).is_member)
        self.assertIs(in_E_prime(self.quarter, self.beta).verdict, Verdict.NONMEMBER)
        self.assertIs(in_B_prime(self.quarter, self.beta, depth=6).verdict, Verdict.NONMEMBER)

    def test_domain(self):
        with self.assertRaises(BetaDomainError):
            in_E(self.beta.one, self.beta)
        with self.assertRaises(BetaDomainError):
            in_E(make_beta(2).zero, self.beta)


class TestLocateInterval(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(1)

    def test_examples(self):
        found = locate_interval(self.beta.scalar(Fraction(1, 4)), self.beta, depth=3)
        self.assertIsInstance(found, Found)
        self.assertEqual(found.interval.word, "001")
        above = locate_interval(self.beta.scalar(Fraction(39, 100)), self.beta, depth=3)
        self.assertIsInstance(above, AboveThreshold)
        self.assertEqual(above.threshold, self.beta.threshold)
        self.assertEqual(locate_interval(self.beta.zero, self.beta, depth=9), NotCoveredAtDepth(9))

    def test_right_endpoint_only_in_closed_form(self):
        iv = make_interval("001", self.beta)
        self.assertIsInstance(locate_interval(iv.t_right, self.beta, depth=6), NotCoveredAtDepth)
        closed = locate_interval(iv.t_right, self.beta, depth=6, closed=True)
        self.assertEqual(closed, Found(iv))


class TestDimension(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(1)

    def test_full_at_zero(self):
        est = dimension(self.beta.zero, self.beta, depth=6)
        self.assertEqual((est.lo, est.hi), (1.0, 1.0))
        self.assertIs(est.method, EstimateMethod.EXACT_SFT)

    def test_plateau(self):
        est = dimension(self.beta.scalar(Fraction(1, 4)), self.beta, depth=8)
        self.assertIs(est.method, EstimateMethod.EXACT_SFT)
        self.assertEqual(est.word, "001")
        self.assertLessEqual(est.lo, PLATEAU_001 + 1e-12)
        self.assertGreaterEqual(est.hi, PLATEAU_001 - 1e-12)
        self.assertLess(est.width, 1e-9)
        self.assertAlmostEqual(est.value, 0.584357, places=5)

    def test_plateau_is_constant(self):
        iv = make_interval("001", self.beta)
        mid = (iv.t_left + iv.t_right) / 2
        values = [dimension(t, self.beta, depth=6) for t in (iv.t_left, mid, iv.t_right)]
        self.assertEqual(values[0], values[1])
        self.assertEqual((values[0].lo, values[0].hi), (values[2].lo, values[2].hi))

    def test_zero_from_threshold_on(self):
        for text in (Fraction(383, 1000), Fraction(1, 2)):
            est = dimension(self.beta.scalar(text), self.beta, depth=6)
            self.assertIs(est.method, EstimateMethod.ZERO_TAIL)
            self.assertEqual(est.hi, 0.0)
        self.assertEqual(dimension(self.beta.threshold, self.beta, depth=6).hi, 0.0)

    def test_deep_witness_names_plateau(self):
        """A point inside a long-word interval is still exact at shallow depth."""
        iv = make_interval("000000101", self.beta)
        t = (iv.t_left + iv.t_right) / 2
        est = dimension(t, self.beta, depth=5)
        self.assertIs(est.method, EstimateMethod.EXACT_SFT)
        self.assertEqual(est.word, "000000101")

    def test_periodic_nonmember_is_bracketed(self):
        """A purely periodic orbit that drops late is not a right endpoint."""
        t = self.beta.scalar(Fraction(1, 30))
        self.assertTrue(greedy_expand(t).is_purely_periodic)
        member = in_E(t, self.beta)
        self.assertIs(member.verdict, Verdict.NONMEMBER)
        self.assertGreater(member.witness, 12)
        est = dimension(t, self.beta, depth=6)
        self.assertIs(est.method, EstimateMethod.BRACKETED)
        self.assertIsNone(est.word)
        self.assertGreater(est.lo, 0.0)

    def test_late_witness_is_bracketed(self):
        for q in (Fraction(1, 20), Fraction(1, 10)):
            t = self.beta.scalar(q)
            self.assertGreater(in_E(t, self.beta).witness, 12)
            est = dimension(t, self.beta, depth=6)
            self.assertIs(est.method, EstimateMethod.BRACKETED)
            self.assertIsNone(est.word)

    def test_long_periodic_member(self):
        """A right endpoint is exact only while its word fits in twice the depth."""
        word = "0000000001"
        t = make_interval(word, self.beta).t_right
        self.assertIs(in_E(t, self.beta).verdict, Verdict.MEMBER)
        exact = dimension(t, self.beta, depth=5)
        self.assertIs(exact.method, EstimateMethod.EXACT_SFT)
        self.assertEqual(exact.word, word)
        est = dimension(t, self.beta, depth=4)
        self.assertIs(est.method, EstimateMethod.BRACKETED)
        self.assertIsNone(est.word)
        self.assertLessEqual(est.lo, exact.hi + 1e-9)
        self.assertGreaterEqual(est.hi, exact.lo - 1e-9)

    def test_positive_below_threshold(self):
        for p in range(1, 12):
            t = self.beta.scalar(Fraction(p, 30))
            if t < self.beta.threshold:
                self.assertGreater(dimension(t, self.beta, depth=6).lo, 0.0)

    def test_approach_words(self):
        words = list(approach_words("0000000", self.beta, max_len=5))
        self.assertEqual(words, ["001", "0001", "00001"])
        self.assertEqual(list(approach_words("0000000", self.beta, max_len=5, min_len=4)), ["0001", "00001"])


class TestExperiments(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(1)

    def test_staircase_is_monotone(self):
        grid = [self.beta.scalar(q) for q in (Fraction(1, 2), Fraction(1, 4), Fraction(0), Fraction(3, 10),
                                              Fraction(1, 10), Fraction(7, 20))]
        rows = staircase(self.beta, grid, depth=6)
        self.assertEqual([row.t for row in rows], sorted(grid, key=float))
        self.assertEqual(rows[0].estimate.lo, 1.0)
        self.assertIs(rows[-1].estimate.method, EstimateMethod.ZERO_TAIL)
        for left, right in zip(rows, rows[1:]):
            self.assertGreaterEqual(left.estimate.lo, right.estimate.lo)
            self.assertGreaterEqual(left.estimate.hi, right.estimate.hi)
        by_t = {float(row.t): row.estimate for row in rows}
        self.assertEqual(by_t[0.25].value, by_t[0.3].value)

    def test_staircase_keeps_raw(self):
        rows = staircase(self.beta, [self.beta.zero], depth=6, jobs=2)
        self.assertEqual(rows[0].raw, rows[0].estimate)

    def test_sup_gap_shrinks(self):
        gaps = [sup_E(self.beta, depth).gap for depth in (4, 6, 8)]
        for wide, narrow in zip(gaps, gaps[1:]):
            self.assertGreater(wide, narrow)
        report = sup_E(self.beta, 8)
        self.assertLess(report.value, self.beta.threshold)
        self.assertEqual(report.value + report.gap, self.beta.threshold)
        self.assertEqual(report.word, "0010101")

    def test_sup_for_base_two(self):
        beta = make_beta(TWO)
        report = sup_E(beta, 6)
        self.assertEqual(report.value + report.gap, Fraction(1, 2))
        self.assertLess(report.value, beta.threshold)

    def test_local_profile_at_zero(self):
        radii = [Fraction(1, 10), Fraction(1, 100), Fraction(1, 10 ** 6)]
        profile = local_dimension_profile(self.beta.zero, self.beta, radii, depth=6)
        self.assertEqual([r for r, _ in profile], radii)
        wide, narrow, tiny = (est for _, est in profile)
        self.assertIs(wide.method, EstimateMethod.EXACT_SFT)
        self.assertEqual(wide, narrow)
        self.assertGreater(narrow.lo, 0.95)
        self.assertIs(tiny.method, EstimateMethod.BRACKETED)
        self.assertEqual((tiny.lo, tiny.hi), (0.0, 1.0))

    def test_local_profile_uses_closest_endpoint(self):
        profile = local_dimension_profile(self.beta.zero, self.beta, [Fraction(1, 100)], depth=6)
        self.assertEqual(profile[0][1].word, "0" * 11 + "1")

    def test_local_profile_at_right_endpoint(self):
        t = make_interval("001", self.beta).t_right
        profile = local_dimension_profile(t, self.beta, [Fraction(1, 10), Fraction(1, 50)], depth=8)
        for _, est in profile:
            self.assertLessEqual(est.lo, PLATEAU_001 + 1e-9)
        self.assertGreater(profile[0][1].lo, 0.4)

    def test_local_profile_needs_member(self):
        with self.assertRaises(BetaDomainError):
            local_dimension_profile(self.beta.scalar(Fraction(1, 4)), self.beta, [Fraction(1, 10)], depth=6)
        with self.assertRaises(BetaDomainError):
            local_dimension_profile(self.beta.zero, self.beta, [0], depth=6)

    def test_tail_dimension(self):
        zero = tail_dimension(self.beta.zero, self.beta, depth=6)
        self.assertEqual(zero.hi, 1.0)
        quarter = tail_dimension(self.beta.scalar(Fraction(1, 4)), self.beta, depth=6)
        self.assertAlmostEqual(quarter.value, PLATEAU_001, places=6)
        above = tail_dimension(self.beta.scalar(Fraction(1, 2)), self.beta, depth=6)
        self.assertEqual(above.hi, 0.0)


if __name__ == "__main__":
    unittest.main()
