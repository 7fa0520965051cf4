"""Where the insertion commutation families break: tally failures by parameter shape."""

import argparse
from collections import Counter

from doubleloop import poset, preoperad


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=4)
    args = ap.parse_args()
    shape = Counter()
    tuples = {1: set(), 2: set()}
    bad_tuples = {1: set(), 2: set()}
    for k in range(1, args.max_k + 1):
        cells = poset.enumerate_cells(k)
        for fam, params, (l_in, l_out), (r_in, r_out) in preoperad.insertion_relation_pairs(k):
            tuples[fam].add((k,) + params)
            for b in cells:
                left = preoperad.insert(l_out, preoperad.insert(l_in, b))
                right = preoperad.insert(r_out, preoperad.insert(r_in, b))
                if left != right:
                    bad_tuples[fam].add((k,) + params)
                    i, j, e, i2, j2, e2 = params
                    shape[(fam, "j == j'" if j == j2 else "j != j'", e, e2)] += 1
    for fam in (1, 2):
        print(f"family {fam}: {len(bad_tuples[fam])} of {len(tuples[fam])} parameter tuples fail")
    print("failures by (family, slot relation, eps, eps'):")
    for key, count in sorted(shape.items()):
        print(f"    {key}: {count}")


if __name__ == "__main__":
    main()
