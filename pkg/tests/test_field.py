import random
import threading
import unittest
from fractions import Fraction

from betahole.core.errors import BetaDomainError
from betahole.core.field import SPARSE, TWO, fe_arith, fe_sign, make_beta
from betahole.core.primitives import Sign


class TestMultinacciBase(unittest.TestCase):

    def test_golden_enclosure(self):
        """m=1 is the golden ratio, enclosed to 2**-64."""
        beta = make_beta(1)
        lo, hi = beta.enclosure()
        self.assertEqual(hi - lo, Fraction(1, 2 ** 64))
        self.assertLess(abs(float(lo) - 1.6180339887), 1e-10)
        self.assertEqual(beta.min_poly, (-1, -1, 1))

    def test_tribonacci_enclosure(self):
        beta = make_beta(2)
        lo, _ = beta.enclosure()
        self.assertLess(abs(float(lo) - 1.8392867552), 1e-10)
        self.assertEqual(str(beta.delta), "(110)")

    def test_two_is_exact(self):
        beta = make_beta(TWO)
        self.assertTrue(beta.is_two)
        self.assertEqual(beta.enclosure(), (Fraction(2), Fraction(2)))
        self.assertEqual(str(beta.delta), "(1)")
        self.assertEqual(beta.threshold, Fraction(1, 2))

    def test_order_parsing(self):
        """Orders arrive as ints or strings; 'two' is case-insensitive."""
        self.assertIs(make_beta("3"), make_beta(3))
        self.assertIs(make_beta("TWO"), make_beta(TWO))
        for bad in (0, -2, "x", "1.5", True):
            with self.assertRaises(BetaDomainError):
                make_beta(bad)

    def test_sparse_family_flagged(self):
        with self.assertLogs("betahole.core.field", level="WARNING"):
            beta = make_beta(2, family=SPARSE)
        self.assertTrue(beta.experimental)
        self.assertEqual(str(beta.delta), "(100)")
        with self.assertRaises(BetaDomainError):
            make_beta(2, family="lucas")

    def test_enclosures_shrink_around_root(self):
        beta = make_beta(3)
        previous = None
        for bits in (8, 16, 32, 64, 128):
            lo, hi = beta.enclosure(bits)
            self.assertEqual(hi - lo, Fraction(1, 2 ** bits))
            if previous is not None:
                self.assertGreaterEqual(lo, previous[0])
                self.assertLessEqual(hi, previous[1])
            previous = (lo, hi)


class TestFieldArithmetic(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(1)
        self.b = self.beta.gen

    def test_square_reduces(self):
        """beta^2 = beta + 1."""
        self.assertEqual(fe_arith(self.b, self.b, "mul"), self.beta.element([1, 1]))

    def test_inverse_cube(self):
        self.assertEqual(fe_arith(self.beta.one, self.b ** 3, "div"), self.beta.element([-3, 2]))
        self.assertEqual(self.b ** -3, 2 * self.b - 3)

    def test_one_minus_inverse(self):
        self.assertEqual(fe_arith(self.beta.one, 1 / self.b, "sub"), 2 - self.b)
        self.assertEqual(self.beta.threshold, 2 - self.b)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            fe_arith(self.beta.one, self.beta.zero, "div")

    def test_mixed_bases_rejected(self):
        other = make_beta(2)
        with self.assertRaises(BetaDomainError):
            fe_arith(self.b, other.gen, "add")
        with self.assertRaises(BetaDomainError):
            fe_arith(self.b, self.b, "pow")

    def test_signs(self):
        self.assertIs(fe_sign(self.beta.zero), Sign.ZERO)
        self.assertIs(fe_sign(2 * self.b - 3), Sign.POSITIVE)
        self.assertIs(fe_sign(2 - self.b ** 3), Sign.NEGATIVE)

    def test_rational_signs_match(self):
        rng = random.Random(11)
        for _ in range(200):
            q = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
            expected = (q > 0) - (q < 0)
            self.assertEqual(int(fe_sign(self.beta.scalar(q))), expected)

    def test_division_round_trip(self):
        """(a * b) / b == a on random elements of Q(tribonacci)."""
        beta = make_beta(2)
        rng = random.Random(3)

        def sample():
            return beta.element([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)])

        checked = 0
        while checked < 300:
            a, b = sample(), sample()
            if b.is_zero:
                continue
            self.assertEqual((a * b) / b, a)
            checked += 1

    def test_near_cancellation_sign(self):
        """beta^n differs from the Lucas number L_n by about 4e-9 here."""
        self.assertIs((self.b ** 40 - 228826127).sign(), Sign.NEGATIVE)
        self.assertIs((self.b ** 41 - 370248451).sign(), Sign.POSITIVE)

    def test_decimal_rendering(self):
        self.assertEqual((2 * self.b - 3).to_decimal(7), "0.2360679")
        self.assertEqual(self.beta.threshold.to_decimal(6), "0.381966")
        self.assertEqual((-self.b).to_decimal(3), "-1.619")

    def test_text_form(self):
        self.assertEqual(str(2 * self.b - 3), "2*b - 3")
        self.assertEqual(str(self.beta.zero), "0")
        self.assertEqual(self.beta.element([0, 1]).coefficient_strings(), ["0", "1"])

    def test_hash_matches_rationals(self):
        self.assertEqual(hash(self.beta.scalar(Fraction(1, 4))), hash(Fraction(1, 4)))
        self.assertEqual({self.b + 1, self.b * self.b}, {self.b + 1})


class TestConcurrentSigns(unittest.TestCase):

    def test_shared_base_across_threads(self):
        """Concurrent sign decisions on one base agree with the serial ones."""
        beta = make_beta(4)
        elements = [beta.gen ** k - Fraction(round(float(beta.gen ** k) * 1000), 1000) for k in range(1, 30)]
        expected = [e.sign() for e in elements]
        results = {}

        def worker(index):
            results[index] = [e.sign() for e in elements]

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        for signs in results.values():
            self.assertEqual(signs, expected)


if __name__ == "__main__":
    unittest.main()
