"""Numba vs numpy kernel benchmark.

Times the GF(p) row reduction on random matrices and one full
tangent-space computation under each backend.  The first numba call is
excluded (JIT compile).

    python3 benchmarks/bench_kernels.py [--sizes 100 200 400] [--repeat 3]
"""
import argparse
import random
import time

import numpy as np

from apolar import _kernels
from apolar.apolar import tangent_space_dimension
from apolar.field import Field
from apolar.repro import random_form

P = 65537


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_rref(sizes, repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        # rank-deficient so pivot search does real work
        A = rng.integers(0, P, size=(n, n // 2), dtype=np.int64)
        B = rng.integers(0, P, size=(n // 2, n), dtype=np.int64)
        M = _kernels.matmul_mod(A, B, P)
        _kernels.rref_modp_numba(M.copy(), P)  # compile
        t_nb, r_nb = best_of(lambda: _kernels.rref_modp_numba(M.copy(), P), repeat)
        t_np, r_np = best_of(lambda: _kernels.rref_modp_numpy(M.copy(), P), repeat)
        assert r_nb[0] == r_np[0] and list(r_nb[1]) == list(r_np[1])
        rows.append((f"rref {n}x{n}", t_nb, t_np))
    return rows


def bench_tangent(repeat):
    F = Field(P)
    f = random_form(5, 3, F, random.Random(1))
    out = []
    res = {}
    for name in ("numba", "numpy"):
        with _kernels.use_backend(name):
            tangent_space_dimension(f)  # warm caches and JIT
            t, res[name] = best_of(lambda: tangent_space_dimension(f), repeat)
        out.append(t)
    assert res["numba"] == res["numpy"]
    return [("tangent dim, cubic in 5 vars", out[0], out[1])]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = bench_rref(args.sizes, args.repeat) + bench_tangent(args.repeat)
    print(f"{'case':<32}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for name, a, b in rows:
        print(f"{name:<32}{a:>10.4f}{b:>10.4f}{b / a:>9.1f}")


if __name__ == "__main__":
    main()
