"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 3] [--length 18] [--repeat 3]

Both backends run the same workload (every KL column of the W' ball, then a
batch of C-basis products) and the results are compared for equality.
"""

from __future__ import annotations

import argparse
import random
import time

from affine_cells import _pykernels, kernels
from affine_cells.affine_weyl import AffinePerm
from affine_cells.cells import ball
from affine_cells.hecke import KLStore, c_product

try:
    from affine_cells import _ckernels
except ImportError:
    _ckernels = None


def use(mod) -> None:
    kernels.t_right_mul_simple = mod.t_right_mul_simple
    kernels.t_accumulate = mod.t_accumulate
    kernels.kl_column = mod.kl_column


def workload(n: int, length: int, pairs: list[tuple[AffinePerm, AffinePerm]]):
    store = KLStore(n, max_length=length)
    cols = {w: store.column(w) for w in ball(n, length)}
    prods = [c_product(a, b, store, length) for a, b in pairs]
    return cols, prods


def best_of(repeat: int, fn):
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--length", type=int, default=18)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(0)
    elems = [AffinePerm(w) for w in ball(args.n, args.length // 2)]
    pairs = [(rng.choice(elems), rng.choice(elems)) for _ in range(args.pairs)]

    use(_pykernels)
    t_py, res_py = best_of(args.repeat, lambda: workload(args.n, args.length, pairs))
    print(f"python    {t_py:8.3f} s")
    if _ckernels is None:
        print("compiled  not built")
        return
    use(_ckernels)
    t_c, res_c = best_of(args.repeat, lambda: workload(args.n, args.length, pairs))
    print(f"compiled  {t_c:8.3f} s   speedup {t_py / t_c:.2f}x")
    print("results identical:", res_py == res_c)


if __name__ == "__main__":
    main()
