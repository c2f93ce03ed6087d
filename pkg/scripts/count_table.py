"""Print bipartition counts D, the permuted-vector budget and the quoted
concurrence counts Q for a range of qubit numbers."""
import argparse

from qsplit.cli import CONCURRENCE_COUNTS
from qsplit.permutations import enumerate_bipartitions, permutation_budget


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=10)
    args = p.parse_args()
    print(f"{'n':>3} {'D':>6} {'budget':>7} {'Q':>9} {'distinct movers':>16}")
    for n in range(2, args.n_max + 1):
        bps = enumerate_bipartitions(n)
        movers = len({b.mover for b in bps})
        q = CONCURRENCE_COUNTS.get(n, "")
        print(f"{n:>3} {len(bps):>6} {permutation_budget(n):>7} {q:>9} {movers:>16}")


if __name__ == "__main__":
    main()
