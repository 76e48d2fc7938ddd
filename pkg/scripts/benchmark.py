"""Wall time of the full pipeline against p, d_x and d_y.

Three sweeps on random curves y^d = f(x):
  p    genus-2 hyperelliptic curves over F_p for growing p
  dx   superelliptic curves y^d = f with deg f fixed, growing d
  dy   hyperelliptic curves with growing deg f

Prints CSV (sweep, p, d_x, d_y, genus, N, seconds, per-stage timings) to stdout.
The numbers are for documentation; nothing here is asserted.
"""

import argparse
import csv
import random
import sys
import time

from rigidzeta import RunConfig, builtin_hyperelliptic, builtin_superelliptic, run
from rigidzeta.errors import RigidZetaError

STAGES = ["setup", "II_lift", "I_basis", "II_push", "III_reduce", "IV_zeta"]


def random_curve(rng, make, p, deg, tries=200):
    for _ in range(tries):
        f = [rng.randint(1 - p, p - 1) for _ in range(deg)] + [1]
        try:
            return f, make(f)
        except RigidZetaError:
            continue
    raise RuntimeError(f"no admissible curve of degree {deg} over F_{p}")


def measure(rng, sweep, p, d, deg, writer, threads):
    if d == 2:
        make = lambda f: builtin_hyperelliptic(f, p)  # noqa: E731
    else:
        make = lambda f: builtin_superelliptic(f, d, p)  # noqa: E731
    f, inp = random_curve(rng, make, p, deg)
    t = time.perf_counter()
    try:
        res = run(inp, RunConfig(threads=threads))
    except RigidZetaError as exc:
        print(f"# {sweep} p={p} d={d} deg={deg}: {type(exc).__name__}", file=sys.stderr)
        return
    total = time.perf_counter() - t
    writer.writerow([sweep, p, res.cd.d_x, deg, res.cd.genus, res.plan.N, f"{total:.3f}"]
                    + [f"{res.timings.get(s, 0.0):.3f}" for s in STAGES])
    sys.stdout.flush()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sweep", choices=["p", "dx", "dy", "all"], default="all")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--full", action="store_true", help="larger parameter ranges (minutes)")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    writer = csv.writer(sys.stdout)
    writer.writerow(["sweep", "p", "d_x", "d_y", "genus", "N", "seconds"] + STAGES)
    if args.sweep in ("p", "all"):
        primes = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] if args.full else [5, 7, 11, 13, 17]
        for p in primes:
            measure(rng, "p", p, 2, 5, writer, args.threads)
    if args.sweep in ("dx", "all"):
        for d in ([2, 3, 4, 5, 6] if args.full else [2, 3, 4]):
            measure(rng, "dx", 7, d, 4, writer, args.threads)
    if args.sweep in ("dy", "all"):
        for deg in ([3, 5, 7, 9, 11] if args.full else [3, 5, 7]):
            measure(rng, "dy", 7, 2, deg, writer, args.threads)


if __name__ == "__main__":
    main()
