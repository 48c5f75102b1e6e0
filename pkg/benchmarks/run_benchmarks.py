import json
import os
import sys

# Ensure benchmarks directory is in path for micro_bench import
script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, script_dir)

from micro_bench import BetaholeBenchmark


def main():
    depth = int(sys.argv[1]) if len(sys.argv) > 1 else 12

    print("=" * 60)
    print("betahole Benchmark Suite")
    print("=" * 60)

    print(f"\n[1] Running kernel benchmarks at depth {depth}...")
    bench = BetaholeBenchmark(orders=(1, 2, 3), depth=depth)
    results = bench.run_benchmarks(iterations=3)

    print("\n" + "=" * 60)
    print("BENCHMARK RESULTS")
    print("=" * 60)
    print(json.dumps(results, indent=2))

    print("\n[2] Running serial vs threaded enumeration...")
    comparison = bench.run_threads_comparison(order=2, jobs=4)
    print(json.dumps(comparison, indent=2))

    speedup = comparison["serial"]["mean_s"] / comparison["threads_4"]["mean_s"]
    print(f"\n>>> Threaded speedup: {speedup:.2f}x")

    print("\n[Done] Benchmark complete.")


if __name__ == "__main__":
    main()
