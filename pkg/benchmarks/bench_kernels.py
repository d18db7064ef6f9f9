"""Compiled vs pure-Python kernels on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints the best wall time per backend and the speed-up of the compiled one.
"""
import argparse
import timeit

import numpy as np

from coxgal import kernels
from coxgal.liealg import ad_matrix_int, principal_nilpotent, highest_root_vector
from coxgal.rootsys import build

P = 2_147_483_629


def workloads():
    e8 = build("E", 8)
    ad = ad_matrix_int(principal_nilpotent(e8) + highest_root_vector(e8))
    e6 = build("E", 6)
    f4 = build("F", 4)
    rng = np.random.default_rng(0)
    dense = rng.integers(-1000, 1000, size=(60, 60), dtype=np.int64)
    return [
        ("rank_mod_p, ad(N+E) of E8 (248x248)", "rank_mod_p", (ad, P)),
        ("charpoly_mod_p, dense 60x60", "charpoly_mod_p", (dense, P)),
        ("weyl_orbit, regular E6 point (51840)", "weyl_orbit",
         (np.arange(1, 7, dtype=np.int64).reshape(6, 1), np.array(e6.cartan_matrix, dtype=np.int64), 10**6)),
        ("weyl_orbit, regular F4 point (1152)", "weyl_orbit",
         (np.arange(1, 5, dtype=np.int64).reshape(4, 1), np.array(f4.cartan_matrix, dtype=np.int64), 10**6)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    print(f"backends: {', '.join(backends)}")
    for title, fn, argv in workloads():
        times = {}
        for name, mod in backends.items():
            f = getattr(mod, fn)
            times[name] = min(timeit.repeat(lambda: f(*argv), number=1, repeat=args.repeat))
        cells = "  ".join(f"{n}={t * 1e3:9.1f} ms" for n, t in times.items())
        ratio = ""
        if "cython" in times and "python" in times:
            ratio = f"  speed-up x{times['python'] / times['cython']:.1f}"
        print(f"{title:<42} {cells}{ratio}")


if __name__ == "__main__":
    main()
