"""Compare the compiled and pure-Python term-arithmetic kernels.

The workload is the dominant real computation: build every motivic Chern
class of a rank-2 flag manifold by the operator recursion and expand it in
the structure-sheaf basis, then re-derive the same coefficients through the
Hecke-algebra straightening oracle.

Run:  python benchmarks/bench_backends.py [--type B2] [--repeat 3]
"""

import argparse
import sys
import time

from schubmc import laurent
from schubmc.roots import parse_type, root_system


def _fresh_context(lie_type, rank):
    # bypass the memo layers so each timing run does full work
    from schubmc.kclasses import KTheory
    from schubmc import hecke

    rs = root_system(lie_type, rank)
    hecke._hecke_cache.pop(rs, None)
    return rs, KTheory(rs)


def workload(lie_type, rank):
    from schubmc.hecke import mc_coefficients_oracle
    from schubmc.mc import motivic_chern

    rs, kt = _fresh_context(lie_type, rank)
    total_terms = 0
    for w in rs.weyl_group():
        exp = kt.expand(motivic_chern(kt, w), "O")
        oracle = mc_coefficients_oracle(rs, w)
        for u, c in exp.coeffs.items():
            assert oracle.get(u, c) == c
            total_terms += len(c.terms)
    return total_terms


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", default="B2")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    lie_type, rank = parse_type(args.type)

    results = {}
    for backend in laurent.available_backends():
        laurent.use_backend(backend)
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            n = workload(lie_type, rank)
            times.append(time.perf_counter() - t0)
        results[backend] = (min(times), n)
        print(f"{backend:>7}: best {min(times):8.3f}s over {args.repeat} runs ({n} terms)")
    if "cython" in results and "pure" in results:
        speedup = results["pure"][0] / results["cython"][0]
        print(f"speedup: {speedup:.2f}x (pure/cython)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
