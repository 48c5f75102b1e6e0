"""
betahole Demo Script.

Demonstrates the core functionality including:
1. Exact arithmetic and expansions in Q(beta)
2. Lyndon intervals and membership
3. Dimension plateaus and a threaded staircase sweep
"""

import time
from fractions import Fraction

from betahole import (
    check_numpy,
    dimension,
    enumerate_lyndon,
    greedy_expand,
    in_B,
    make_beta,
    make_interval,
    parse_value,
    staircase,
    sup_E,
)


def main():
    print("=" * 60)
    print("betahole Demo")
    print("=" * 60)

    # 1. Backend status
    print("\n[1] System Status")
    backend = check_numpy()
    print(f"    numpy: {'[OK] ' + backend['numpy'] if backend['available'] else '[--] Not installed'}")

    # 2. Base and expansions
    beta = make_beta(1)
    b = beta.gen
    print(f"\n[2] Base {beta.label}: delta = {beta.delta}, threshold = {beta.threshold.to_decimal(12)}")
    for text in ("2*b - 3", "(b - 1)/2", "1/4"):
        t = parse_value(text, beta)
        print(f"    b({text}) = {greedy_expand(t)}")

    # 3. Lyndon intervals
    iv = make_interval("001", beta)
    print(f"\n[3] Interval of 001: [{iv.t_left}, {iv.t_right}) ~ "
          f"[{iv.t_left.to_decimal(8)}, {iv.t_right.to_decimal(8)})")
    start = time.perf_counter()
    intervals = enumerate_lyndon(beta, 14, jobs=4)
    elapsed = (time.perf_counter() - start) * 1000
    print(f"    Depth 14: {len(intervals)} intervals in {elapsed:.1f}ms")

    # 4. Membership and dimension
    print("\n[4] Membership and dimension")
    for q in (Fraction(0), Fraction(1, 4), Fraction(3, 10), Fraction(7, 20), Fraction(2, 5)):
        t = beta.scalar(q)
        member = in_B(t, beta)
        est = dimension(t, beta)
        print(f"    t = {str(q):>5}: {member.verdict.value:<9} dim in [{est.lo:.6f}, {est.hi:.6f}] ({est.method.value})")

    # 5. Staircase sweep
    print("\n[5] Staircase (threaded)...")
    grid = [beta.scalar(Fraction(i, 50)) for i in range(21)]
    start = time.perf_counter()
    rows = staircase(beta, grid, depth=10, jobs=4)
    elapsed = time.perf_counter() - start
    for row in rows[::4]:
        print(f"    t = {row.t.to_decimal(2)}: [{row.estimate.lo:.4f}, {row.estimate.hi:.4f}]")
    print(f"    {len(rows)} points in {elapsed:.3f}s")

    report = sup_E(beta, 16)
    print(f"\n    sup E at depth 16: gap {float(report.gap):.3e} (word {report.word})")

    print("\n" + "=" * 60)
    print("Demo Complete!")
    print("=" * 60)


if __name__ == "__main__":
    main()
