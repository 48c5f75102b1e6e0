import unittest
from fractions import Fraction

from betahole.core.errors import BetaDomainError
from betahole.core.field import TWO, make_beta
from betahole.core.primitives import TruncatedWord
from betahole.core.symbolic import EPSequence
from betahole.dynamics.sft import build_survivor_sft, count_blocks
from betahole.lyndon.intervals import enumerate_lyndon
from betahole.oracle import MAX_BRUTE_LENGTH, brute_count, orbit_survives


class TestBruteCount(unittest.TestCase):

    def test_golden_mean(self):
        beta = make_beta(1)
        self.assertEqual([brute_count(EPSequence.periodic("0"), beta, n) for n in range(1, 6)], [2, 3, 5, 8, 13])

    def test_matches_graph_counts(self):
        cases = [
            (EPSequence.periodic("001"), make_beta(1)),
            (EPSequence.finite("001"), make_beta(1)),
            (EPSequence.periodic("01"), make_beta(2)),
            (EPSequence.periodic("01"), make_beta(TWO)),
        ]
        for lower, beta in cases:
            sft = build_survivor_sft(lower, beta)
            for n in range(1, 11):
                self.assertEqual(brute_count(lower, beta, n), count_blocks(sft, n), (str(lower), beta.label, n))

    def test_enumerated_floors(self):
        beta = make_beta(2)
        for iv in enumerate_lyndon(beta, 5):
            lower = iv.floor_sequence()
            sft = build_survivor_sft(lower, beta)
            for n in range(1, sft.block_len + 4):
                self.assertEqual(brute_count(lower, beta, n), count_blocks(sft, n))

    def test_limits(self):
        beta = make_beta(1)
        with self.assertRaises(BetaDomainError):
            brute_count(EPSequence.periodic("0"), beta, MAX_BRUTE_LENGTH + 1)
        with self.assertRaises(BetaDomainError):
            brute_count(EPSequence.periodic("0"), beta, 0)
        with self.assertRaises(BetaDomainError):
            brute_count(TruncatedWord("001", 3), beta, 4)


class TestOrbitSurvives(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(1)
        self.b = self.beta.gen
        self.quarter = self.beta.scalar(Fraction(1, 4))

    def test_examples(self):
        # orbit of (b-1)/2 cycles through 0.309, 0.5, 0.809
        self.assertTrue(orbit_survives((self.b - 1) / 2, self.quarter, self.beta, 30))
        self.assertFalse(orbit_survives(2 * self.b - 3, self.quarter, self.beta, 30))
        self.assertTrue(orbit_survives(self.quarter, self.quarter, self.beta, 0))

    def test_drop_is_found_at_witness(self):
        """1/4 survives two steps of its own hole and falls at the third."""
        self.assertTrue(orbit_survives(self.quarter, self.quarter, self.beta, 2))
        self.assertFalse(orbit_survives(self.quarter, self.quarter, self.beta, 3))

    def test_domain(self):
        with self.assertRaises(BetaDomainError):
            orbit_survives(self.beta.one, self.quarter, self.beta, 3)
        with self.assertRaises(BetaDomainError):
            orbit_survives(self.quarter, self.quarter, self.beta, -1)
        with self.assertRaises(BetaDomainError):
            orbit_survives(make_beta(2).zero, self.quarter, self.beta, 3)


if __name__ == "__main__":
    unittest.main()
