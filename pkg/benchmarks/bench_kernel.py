"""Compare the compiled and pure-Python word rewriting kernels.

Usage: python3 benchmarks/bench_kernel.py [--words N] [--length L]
"""

import argparse
import random
import timeit

from kgcoh import _kernel_py, catalog, kernel
from kgcoh.sampling import random_edge_word

try:
    from kgcoh import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def workload(graph, n_words, length, seed):
    rng = random.Random(seed)
    return [random_edge_word(graph, rng, length) for _ in range(n_words)]


def bench(impl, graph, words, repeat):
    def sort_all():
        for w in words:
            impl.sort_word(w, graph.colour, graph.rl_next, graph.rl_sq, graph.n_edges)

    return min(timeit.repeat(sort_all, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--length", type=int, default=24)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {kernel.BACKEND}")
    print(f"{'graph':<12}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name in ("T2", "TWIST2", "B2^3", "TWIST2xB2"):
        g = catalog.get(name)
        words = workload(g, args.words, args.length, seed=1)
        t_py = bench(_kernel_py, g, words, args.repeat)
        if _kernel_c is None:
            print(f"{name:<12}{t_py:>12.4f}{'n/a':>12}{'':>10}")
            continue
        t_c = bench(_kernel_c, g, words, args.repeat)
        print(f"{name:<12}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
