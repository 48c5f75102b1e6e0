"""
End-to-end checks at full depth.

These take minutes; set BETAHOLE_SLOW=1 to run them.
"""

import math
import os
import random
import unittest
from fractions import Fraction

import pytest

from betahole.core.expansion import is_delta_valid
from betahole.core.field import TWO, make_beta
from betahole.core.primitives import EstimateMethod
from betahole.core.symbolic import EPSequence
from betahole.dynamics.bifurcation import dimension, in_B, in_E, local_dimension_profile, sup_E
from betahole.dynamics.sft import build_survivor_sft, count_blocks, sft_equal
from betahole.dynamics.spectral import entropy_spectral
from betahole.lyndon.intervals import coverage_measure, enumerate_lyndon, make_interval, verify_disjoint
from betahole.lyndon.words import check_suffix_inequality
from betahole.oracle import brute_count

SLOW = bool(os.environ.get("BETAHOLE_SLOW"))
PLASTIC = 1.3247179572447460


@unittest.skipUnless(SLOW, "set BETAHOLE_SLOW=1 for full-depth runs")
@pytest.mark.timeout(3600)
class TestAcceptance(unittest.TestCase):

    def test_delta(self):
        for order, expected in ((1, "(10)"), (2, "(110)"), (3, "(1110)"), (TWO, "(1)")):
            delta = make_beta(order).delta
            self.assertEqual(str(delta), expected)
            self.assertTrue(is_delta_valid(delta))

    def test_golden_interval(self):
        beta = make_beta(1)
        b = beta.gen
        iv = make_interval("001", beta)
        self.assertEqual(iv.t_left.coeffs, (2 * b - 3).coeffs)
        self.assertEqual(iv.t_right.coeffs, ((b - 1) / 2).coeffs)
        self.assertEqual(iv.t_left.to_decimal(12), "0.236067977499")
        self.assertEqual(iv.t_right.to_decimal(12), "0.309016994374")

    def test_plateau_dimension(self):
        beta = make_beta(1)
        est = dimension(beta.scalar(Fraction(1, 4)), beta)
        self.assertIs(est.method, EstimateMethod.EXACT_SFT)
        self.assertLessEqual(est.width, 1e-9)
        log_beta = math.log(float(beta))
        self.assertAlmostEqual(est.value, math.log(PLASTIC) / log_beta, places=9)
        # growth between lengths 40 and 80 cancels the prefactor of the count
        sft = build_survivor_sft(EPSequence.finite("001"), beta)
        slope = math.log(count_blocks(sft, 80) / count_blocks(sft, 40)) / 40
        self.assertLess(abs(est.value - slope / log_beta), 0.01)

    def test_disjoint_at_depth_16(self):
        """Depth 16 holds every shorter word, so this covers all L <= 16."""
        for m in (1, 2, 3):
            intervals = enumerate_lyndon(make_beta(m), 16, jobs=4)
            self.assertTrue(verify_disjoint(intervals))
            self.assertTrue(verify_disjoint(intervals, closed=True))

    def test_coverage_trend(self):
        beta = make_beta(1)
        self.assertEqual(beta.threshold, 2 - beta.gen)
        previous = beta.zero
        for depth in (4, 8, 12, 16):
            total = coverage_measure(enumerate_lyndon(beta, depth, jobs=4), beta)
            self.assertGreater(total, previous)
            self.assertLess(total, beta.threshold)
            previous = total

    def test_sup_trend(self):
        beta = make_beta(1)
        gaps = [sup_E(beta, depth).gap for depth in (8, 12, 16, 20)]
        for wide, narrow in zip(gaps, gaps[1:]):
            self.assertGreater(wide, narrow)
        self.assertLess(gaps[-1], Fraction(1, 1000))

    def test_membership_routes_and_dimension(self):
        beta = make_beta(1)
        rng = random.Random(2024)
        for _ in range(200):
            q = rng.randint(2, 60)
            t = beta.scalar(Fraction(rng.randrange(q), q))
            orbit = in_E(t, beta)
            combined = in_B(t, beta)
            if orbit.is_decided and combined.is_decided:
                self.assertEqual(orbit.verdict, combined.verdict)
            if combined.is_member:
                self.assertEqual(dimension(t, beta).lo > 0, t < beta.threshold)

    def test_strict_entropy_drop(self):
        beta = make_beta(1)
        intervals = enumerate_lyndon(beta, 10)
        bounds = [entropy_spectral(build_survivor_sft(iv.periodic_sequence(), beta)) for iv in intervals[:51]]
        for left, right in zip(bounds, bounds[1:]):
            self.assertGreater(left.lo, right.hi)

    def test_plateau_constancy(self):
        beta = make_beta(1)
        for iv in enumerate_lyndon(beta, 12)[:50]:
            self.assertTrue(sft_equal(build_survivor_sft(iv.floor_sequence(), beta),
                                      build_survivor_sft(iv.periodic_sequence(), beta)))
            left, right = dimension(iv.t_left, beta), dimension(iv.t_right, beta)
            self.assertEqual((left.lo, left.hi), (right.lo, right.hi))

    def test_oracle_equality(self):
        rng = random.Random(7)
        for _ in range(10):
            beta = make_beta(rng.choice((1, 2)))
            iv = rng.choice(enumerate_lyndon(beta, 8))
            lower = iv.floor_sequence()
            sft = build_survivor_sft(lower, beta)
            for n in range(1, 19):
                self.assertEqual(brute_count(lower, beta, n), count_blocks(sft, n))

    def test_suffix_inequality_fuzz(self):
        rng = random.Random(99)
        checked = 0
        while checked < 10_000:
            word = "".join(rng.choice("01") for _ in range(rng.randint(2, 24)))
            least = min(word[i:] + word[:i] for i in range(len(word)))
            s = EPSequence.periodic(least)
            if len(s.period) < 2:
                continue
            self.assertTrue(check_suffix_inequality(s))
            checked += 1

    def test_local_dimension_trend(self):
        beta = make_beta(1)
        radii = [Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10_000)]
        for t in (beta.zero, (beta.gen - 1) / 2):
            profile = local_dimension_profile(t, beta, radii, depth=16)
            smallest = profile[-1][1]
            self.assertIs(smallest.method, EstimateMethod.EXACT_SFT)
            self.assertLess(abs(smallest.value - dimension(t, beta, depth=16).value), 0.05)


if __name__ == "__main__":
    unittest.main()
