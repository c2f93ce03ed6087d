"""Wall time of a full genuine-entanglement scan on ghz(n)."""
import argparse
import json
import time

from qsplit.factorize import is_genuinely_entangled
from qsplit.permutations import bipartition_count
from qsplit.states import ghz


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", help="also dump rows as JSON here")
    args = p.parse_args()

    rows = []
    for n in range(args.n_min, args.n_max + 1):
        s = ghz(n)
        t0 = time.perf_counter()
        entangled, cert = is_genuinely_entangled(s, parallel=args.parallel)
        dt = time.perf_counter() - t0
        assert entangled and len(cert) == bipartition_count(n)
        rows.append({"n": n, "bipartitions": len(cert), "seconds": dt})
        print(f"n={n:>2}  bipartitions={len(cert):>6}  {dt:9.4f} s  ({1e6 * dt / len(cert):8.1f} us/cut)")
    if args.out:
        with open(args.out, "w") as f:
            json.dump(rows, f, indent=2)


if __name__ == "__main__":
    main()
