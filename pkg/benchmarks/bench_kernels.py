"""Compare the compiled and pure-Python Laurent kernels.

Two levels: the raw kernels on fixed inputs, called from both modules
directly, and end-to-end exploration in a subprocess per backend (the
backend is chosen at import, so CLUSTERVERIFY_PURE must be set before it).

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

from clusterverify import _kernels_py
from clusterverify.laurent import WIDTH, _bias, variables

try:
    from clusterverify import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

EXPLORE_CASES = {
    "D4 closed": ([[0, 1, 1, 1], [-1, 0, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0]], {}),
    "Kronecker depth 8": ([[0, 2], [-2, 0]], {"max_depth": 8}),
    "affine A2 depth 6": ([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]], {"max_depth": 6}),
    "wild rank 3, depth 6": ([[0, 2, 0], [-2, 0, 2], [0, -2, 0]], {"max_depth": 6, "max_terms": 5000}),
}

CHILD = """
import json, sys, time
from clusterverify import kernels
from clusterverify.quiver import ExchangeMatrix
from clusterverify.seeds import explore
rows, opts, repeat = json.loads(sys.argv[1])
b = ExchangeMatrix(rows)
best = None
for _ in range(repeat):
    t = time.perf_counter()
    g = explore(b, **opts)
    dt = time.perf_counter() - t
    best = dt if best is None else min(best, dt)
print(json.dumps({"backend": kernels.BACKEND, "seconds": best, "seeds": len(g.records)}))
"""


def kernel_inputs():
    x1, x2, x3 = variables(3)
    a = (1 + x1 + x2 * x3**-1 + x3) ** 6
    b = (2 + x1 * x2 + x3**-1) ** 5
    return a._t, b._t, (a * b)._t


def bench_kernels(repeat: int) -> list[tuple[str, float, float | None]]:
    a, b, ab = kernel_inputs()
    bias = _bias(3)
    ops = {
        "mul": lambda m: m.mul(a, b, bias),
        "add": lambda m: m.add(a, ab),
        "divexact": lambda m: m.divexact(ab, b, 3, WIDTH, bias),
    }
    rows = []
    for name, op in ops.items():
        py = min(timeit.repeat(lambda: op(_kernels_py), number=3, repeat=repeat)) / 3
        c = None
        if _kernels_c is not None:
            assert op(_kernels_c) == op(_kernels_py)
            c = min(timeit.repeat(lambda: op(_kernels_c), number=3, repeat=repeat)) / 3
        rows.append((name, py, c))
    return rows


def bench_explore(repeat: int, pure: bool, rows, opts) -> dict:
    env = dict(os.environ)
    env.pop("CLUSTERVERIFY_PURE", None)
    if pure:
        env["CLUSTERVERIFY_PURE"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", CHILD, json.dumps([rows, opts, repeat])],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def fmt(seconds):
    return "n/a" if seconds is None else f"{seconds * 1000:9.2f} ms"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    a, b, ab = kernel_inputs()
    print(f"kernel inputs: {len(a)} x {len(b)} terms, product {len(ab)} terms")
    print(f"{'kernel':<12}{'python':>14}{'cython':>14}{'speedup':>10}")
    for name, py, c in bench_kernels(args.repeat):
        speed = f"{py / c:8.1f}x" if c else "n/a"
        print(f"{name:<12}{fmt(py):>14}{fmt(c):>14}{speed:>10}")

    print()
    print(f"{'explore':<24}{'seeds':>7}{'python':>14}{'cython':>14}{'speedup':>10}")
    for label, (rows, opts) in EXPLORE_CASES.items():
        py = bench_explore(args.repeat, True, rows, opts)
        c = bench_explore(args.repeat, False, rows, opts)
        cs = c["seconds"] if c["backend"] == "cython" else None
        speed = f"{py['seconds'] / cs:8.1f}x" if cs else "n/a"
        print(f"{label:<24}{py['seeds']:>7}{fmt(py['seconds']):>14}{fmt(cs):>14}{speed:>10}")


if __name__ == "__main__":
    main()
