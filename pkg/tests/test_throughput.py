import time
import unittest

from betahole.core.field import make_beta
from betahole.dynamics.sft import build_survivor_sft
from betahole.dynamics.spectral import entropy_spectral
from betahole.lyndon.intervals import enumerate_lyndon


class TestThroughput(unittest.TestCase):

    def setUp(self):
        self.beta = make_beta(2)

    def test_enumeration_rate(self):
        """Lyndon enumeration at depth 12 on the tribonacci base."""
        start = time.perf_counter()
        intervals = enumerate_lyndon(self.beta, 12)
        elapsed = time.perf_counter() - start

        rate = len(intervals) / elapsed
        print(f"Enumeration: {len(intervals)} intervals, {rate:,.0f} intervals/sec")
        self.assertGreater(len(intervals), 100)
        self.assertGreater(rate, 20, "Enumeration fell below minimum acceptable rate")

    def test_threads_do_not_change_output(self):
        start = time.perf_counter()
        serial = enumerate_lyndon(self.beta, 11)
        serial_time = time.perf_counter() - start

        start = time.perf_counter()
        threaded = enumerate_lyndon(self.beta, 11, jobs=4)
        threaded_time = time.perf_counter() - start

        print(f"Serial: {serial_time:.3f}s, 4 threads: {threaded_time:.3f}s")
        self.assertEqual([iv.word for iv in serial], [iv.word for iv in threaded])

    def test_entropy_rate(self):
        intervals = enumerate_lyndon(self.beta, 8)
        start = time.perf_counter()
        for iv in intervals:
            entropy_spectral(build_survivor_sft(iv.floor_sequence(), self.beta))
        elapsed = time.perf_counter() - start

        print(f"Entropy: {len(intervals) / elapsed:,.0f} graphs/sec")
        self.assertLess(elapsed, 60.0)


if __name__ == "__main__":
    unittest.main()
