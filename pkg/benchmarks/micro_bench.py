import statistics
import time
import tracemalloc
from fractions import Fraction
from typing import Any, Callable, Dict, Sequence

from betahole.core.field import MultinacciBeta, make_beta
from betahole.dynamics.bifurcation import staircase
from betahole.dynamics.sft import build_survivor_sft
from betahole.dynamics.spectral import entropy_spectral
from betahole.lyndon.intervals import enumerate_lyndon


class BetaholeBenchmark:
    """
    Micro-benchmark suite for the exact kernels.

    Measures wall time, per-item rate and peak traced memory for Lyndon
    enumeration, survivor-graph entropy and staircase sweeps on a set of bases.
    """

    def __init__(self, orders: Sequence[Any] = (1, 2, 3), depth: int = 12):
        self.betas: Dict[str, MultinacciBeta] = {f"m={order}": make_beta(order) for order in orders}
        self.depth = depth
        self.results: Dict[str, Any] = {}

    def run_benchmarks(self, iterations: int = 3) -> Dict:
        """Execute the full suite on every base."""
        for name, beta in self.betas.items():
            self.results[name] = {
                "enumerate": self._measure(lambda: enumerate_lyndon(beta, self.depth), iterations),
                "entropy": self._measure(lambda: self._entropies(beta), iterations),
                "staircase": self._measure(lambda: self._sweep(beta), iterations),
            }
        return self.results

    def _entropies(self, beta: MultinacciBeta) -> list:
        return [entropy_spectral(build_survivor_sft(iv.floor_sequence(), beta))
                for iv in enumerate_lyndon(beta, min(self.depth, 9))]

    def _sweep(self, beta: MultinacciBeta) -> list:
        grid = [beta.scalar(Fraction(i, 40)) for i in range(20)]
        return staircase(beta, grid, depth=min(self.depth, 10))

    @staticmethod
    def _measure(run: Callable[[], Sequence[Any]], iterations: int) -> Dict:
        times = []
        peak_mem = []
        items = 0

        for _ in range(iterations):
            tracemalloc.start()
            start = time.perf_counter()

            items = len(run())

            end = time.perf_counter()
            _, peak = tracemalloc.get_traced_memory()
            tracemalloc.stop()

            times.append(end - start)
            peak_mem.append(peak / 1024 / 1024)  # MB

        return {
            "items": items,
            "mean_s": statistics.mean(times),
            "std_dev": statistics.stdev(times) if len(times) > 1 else 0,
            "items_per_s": items / statistics.mean(times),
            "memory_peak_mb": statistics.mean(peak_mem),
        }

    def run_threads_comparison(self, order: Any = 2, jobs: int = 4, iterations: int = 3) -> Dict:
        """Serial against threaded enumeration on one base."""
        beta = make_beta(order)
        # enumerate_lyndon, not the cached catalog
        return {
            "serial": self._measure(lambda: enumerate_lyndon(beta, self.depth), iterations),
            f"threads_{jobs}": self._measure(lambda: enumerate_lyndon(beta, self.depth, jobs), iterations),
        }
