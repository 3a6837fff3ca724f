"""Feedback loop closed form versus truncated geometric series.

Draws random gate pairs, resolves the single-anbit feedback loop exactly,
and tracks how many series terms a plain geometric expansion needs to match
it, bucketed by the loop's spectral radius. Divergent draws (radius >= 1)
never converge; the closed form still resolves them.
"""

import argparse

import numpy as np

from anbit import GateMatrix, LoopSingularError, loop_equivalent


def terms_to_converge(m1, m2, target, tol, cap):
    prod = m1 @ m2
    acc = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, cap + 1):
        term = term @ prod
        acc = acc + term
        if np.max(np.abs(acc @ m1 - target)) < tol:
            return k
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--draws", type=int, default=200)
    ap.add_argument("--tol", type=float, default=1e-10)
    ap.add_argument("--cap", type=int, default=2000)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    buckets = {}
    diverged = 0
    singular = 0
    for _ in range(args.draws):
        scale = rng.uniform(0.1, 0.8)
        m1 = GateMatrix(scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))))
        m2 = GateMatrix(scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))))
        try:
            eq = loop_equivalent(m1, m2).entries
        except LoopSingularError:
            singular += 1
            continue
        rho = max(np.abs(np.linalg.eigvals(m1.entries @ m2.entries)))
        if rho >= 1.0:
            diverged += 1
            continue
        k = terms_to_converge(m1.entries, m2.entries, eq, args.tol, args.cap)
        key = round(rho, 1)
        buckets.setdefault(key, []).append(k)

    print(f"{'spectral radius':>15} {'draws':>6} {'median terms':>13} {'max terms':>10} {'capped':>7}")
    for key in sorted(buckets):
        done = sorted(k for k in buckets[key] if k is not None)
        capped = sum(1 for k in buckets[key] if k is None)
        median = done[len(done) // 2] if done else "-"
        peak = max(done) if done else "-"
        print(f"{key:>15.1f} {len(buckets[key]):>6} {median:>13} {peak:>10} {capped:>7}")
    print()
    print(f"divergent draws (radius >= 1, closed form only): {diverged}")
    print(f"singular draws (loop not resolvable): {singular}")


if __name__ == "__main__":
    main()
