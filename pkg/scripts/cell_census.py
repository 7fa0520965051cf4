"""Print the dimension census of L(n) next to n! C(n-1, i)."""

import argparse

from doubleloop import poset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        census = poset.cell_census(n)
        row = [census[i] for i in range(n)]
        flag = "ok" if row == [poset.expected_cell_count(n, i) for i in range(n)] else "MISMATCH"
        print(f"n={n}: {row} total={sum(row)} {flag}")


if __name__ == "__main__":
    main()
