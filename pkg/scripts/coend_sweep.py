"""Exactness of the f / q sequence and class counts over a grid of (s, k)."""

import argparse

from doubleloop import coend


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-s", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=4)
    args = ap.parse_args()
    print(" s  k  orbits(k-1)  orbits(k)  classes  components  exact")
    for s in range(args.max_s + 1):
        for k in range(1, args.max_k + 1):
            r = coend.verify_exactness(s, k).to_json()
            print(f"{s:2d} {k:2d} {r['orbits_source']:12d} {r['orbits_target']:10d} {r['classes']:8d} "
                  f"{r['components']:11d}  {r['ok']}")


if __name__ == "__main__":
    main()
