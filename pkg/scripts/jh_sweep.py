"""James-Hopf identities on tensor-word instances of growing word length."""

import argparse
import random
import time

from doubleloop import bidelta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--fuzz", type=int, default=200)
    args = ap.parse_args()
    for max_len, levels in ((1, 7), (2, 6), (3, 5)):
        inst = bidelta.AbelianInstance(max_len)
        t0 = time.perf_counter()
        rep = bidelta.verify_jh_identities(inst, levels, random.Random(args.seed), args.fuzz)
        print(f"max_len={max_len} levels<={levels}: {'ok' if rep.ok else 'FAILED'} ({time.perf_counter() - t0:.1f}s)")
        for law in rep.laws:
            print(f"    {law.name}: {law.checked - law.failed}/{law.checked}")
        for row in bidelta.cohen_summary(inst, levels):
            print(f"    level {row['level']}: rank G={row['rank_G']} h={row['rank_h']} Z={row['rank_Z']}")


if __name__ == "__main__":
    main()
