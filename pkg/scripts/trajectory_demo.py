"""Sweep a rotation gate over a random state and print the sphere trajectory.

The radius column should be constant to machine precision: rotations move
states along the sphere surface without changing the norm-derived radius.
"""

import argparse

import numpy as np

from anbit import AnbitState, to_bloch
from anbit.cli import emit_trajectory


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--steps", type=int, default=24)
    ap.add_argument("--axis", type=float, nargs=3, default=None,
                    help="rotation axis (default: random unit vector)")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    if args.axis is None:
        axis = rng.normal(size=3)
    else:
        axis = np.asarray(args.axis, dtype=float)
    axis /= np.linalg.norm(axis)

    vec = rng.normal(size=2) + 1j * rng.normal(size=2)
    state = AnbitState(vec)
    start = to_bloch(state)

    print(f"axis = ({axis[0]:+.4f}, {axis[1]:+.4f}, {axis[2]:+.4f})")
    print(f"start: radius={start.radius:.6f} theta={start.theta:.6f} phi={start.phi:.6f}")
    print()
    print(f"{'step':>4}  {'angle':>8}  {'radius':>18}  {'theta':>8}  {'phi':>8}")
    rows = emit_trajectory(tuple(axis), 0.0, 2.0 * np.pi, state, args.steps)
    for step, radius, theta, phi in rows:
        angle = 2.0 * np.pi * step / args.steps
        print(f"{step:>4}  {angle:8.4f}  {radius:18.15f}  {theta:8.4f}  {phi:8.4f}")

    drift = max(abs(r[1] - start.radius) for r in rows)
    print()
    print(f"max radius drift over sweep: {drift:.3e}")


if __name__ == "__main__":
    main()
