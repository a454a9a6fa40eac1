"""Compare the compiled convolution kernel against the pure-Python fallback.

Times the truncated polynomial convolution that underlies all cyclotomic
ring multiplication, both directly and through a realistic workload
(products in Z[zeta_{p^d}] / p^N).  Run the pure path with WITTLAB_PURE=1
set in a subprocess so both variants use identical code paths otherwise.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))


def bench_once(repeat):
    from wittlab import rings as R
    from wittlab.kernels import BACKEND, poly_mul_trunc

    rnd = random.Random(7)
    results = {"backend": BACKEND, "cases": []}

    # raw convolution at cyclotomic sizes: phi(p^d) coefficients, mod p^N
    for p, depth, prec in ((3, 4, 6), (3, 5, 6), (5, 4, 6)):
        n = R._phi_len(p, depth)
        mod = p**prec
        a = [rnd.randrange(mod) for _ in range(n)]
        b = [rnd.randrange(mod) for _ in range(n)]
        best = min(
            _time(lambda: poly_mul_trunc(a, b, mod, 2 * n - 1)) for _ in range(repeat)
        )
        results["cases"].append(
            {"case": f"conv phi({p}^{depth})={n} mod {p}^{prec}", "seconds": best}
        )

    # end-to-end: ring products as the Witt backends issue them
    for p, depth, prec in ((3, 4, 6), (5, 3, 6)):
        mod, n = p**prec, R._phi_len(p, depth)
        xs = [
            R.CycElt(p, depth, prec, tuple(rnd.randrange(mod) for _ in range(n)))
            for _ in range(20)
        ]
        def work():
            acc = xs[0]
            for x in xs[1:]:
                acc = acc * x
            return acc
        best = min(_time(work) for _ in range(repeat))
        results["cases"].append(
            {"case": f"20 products in Z[zeta_{p}^{depth}]/{p}^{prec}", "seconds": best}
        )
    return results


def _time(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="emit machine-readable output")
    args = ap.parse_args()

    mine = bench_once(args.repeat)
    if os.environ.get("WITTLAB_PURE") == "1":
        # subprocess leg: print JSON for the parent
        print(json.dumps(mine))
        return

    env = dict(os.environ, WITTLAB_PURE="1")
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--repeat", str(args.repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    other = json.loads(out.stdout)

    if args.json:
        print(json.dumps({"compiled": mine, "pure": other}, indent=2))
        return

    print(f"{'case':45s} {mine['backend']:>10s} {other['backend']:>10s}  speedup")
    for c_m, c_p in zip(mine["cases"], other["cases"]):
        ratio = c_p["seconds"] / c_m["seconds"] if c_m["seconds"] else float("inf")
        print(
            f"{c_m['case']:45s} {c_m['seconds']*1e3:8.2f}ms {c_p['seconds']*1e3:8.2f}ms  {ratio:6.2f}x"
        )
    if mine["backend"] == other["backend"]:
        print("note: extension not built; both runs used the pure kernel")


if __name__ == "__main__":
    main()
