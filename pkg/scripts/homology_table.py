"""Integral homology of F(n) and of the orbit complexes D_k({0..s})."""

import argparse
import time

from doubleloop import chains


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5, help="largest F(n); 6 takes ~15 s")
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--max-s", type=int, default=3)
    args = ap.parse_args()
    print("space            ranks                     betti               torsion")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        cx = chains.build_F_complex(n)
        h = chains.homology(cx)
        print(f"F({n})".ljust(16), str([len(b) for b in cx.basis]).ljust(25), str(h.betti).ljust(19),
              h.torsion, f"{time.perf_counter() - t0:.1f}s")
    for k in range(1, args.max_k + 1):
        for s in range(1, args.max_s + 1):
            cx = chains.build_D_complex(k, s)
            h = chains.homology(cx)
            print(cx.name.ljust(16), str([len(b) for b in cx.basis]).ljust(25), str(h.betti).ljust(19), h.torsion)


if __name__ == "__main__":
    main()
