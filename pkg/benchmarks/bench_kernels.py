"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on both backends; results are checked for equality before
timings are reported (best of ``--repeat`` runs).
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from rigidcert import kernels
from rigidcert.rigidity import build_dual
from rigidcert.supertensor import SuperSpace, algebra_action
from rigidcert.symgroup import _integerize, antisymmetrizer, check_recursion, symmetrizer


def _int_matrix(rng, rows, cols, density=0.3, span=20):
    out = np.zeros((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                out[i, j] = rng.randint(-span, span)
    return out


def workloads(rng):
    a, b = _int_matrix(rng, 256, 256), _int_matrix(rng, 256, 256)
    wedge = algebra_action(antisymmetrizer(4), SuperSpace.of(4)).matrix.num
    pa, ca, _ = _integerize(antisymmetrizer(6))
    pb, cb, _ = _integerize(symmetrizer(6))
    return [
        ("matmul 256x256 (30% dense)", lambda: kernels.matmul(a, b)),
        ("rref e_4 on (4|0)^4, 256x256", lambda: kernels.rref(wedge)),
        ("convolve e_6 * h_6 (720 terms)", lambda: kernels.convolve(pa, ca, pb, cb, 720)),
        ("check_recursion n=6, both modes", lambda: [check_recursion(6, m).holds for m in ("bosonic", "fermionic")]),
        ("build_dual (4|0), n=4", lambda: build_dual(SuperSpace.of(4), 4, "bosonic").dimension),
    ]


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(u, v) for u, v in zip(x, y))
    if isinstance(x, np.ndarray):
        return x.shape == y.shape and (x == y).all()
    return x == y


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if not kernels.HAVE_COMPILED:
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
    rng = random.Random(args.seed)
    print(f"{'workload':40s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, fn in workloads(rng):
        with kernels.using("python"):
            t_py, r_py = best_of(fn, args.repeat)
        with kernels.using("compiled"):
            t_c, r_c = best_of(fn, args.repeat)
        if not _same(r_py, r_c):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:40s} {t_py * 1e3:9.1f}ms {t_c * 1e3:9.1f}ms {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
