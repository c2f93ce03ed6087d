"""How the block test and the minor oracle behave on states eps-close to a
product: s = normalize(product + eps * noise). Reports the fraction called
'product' (at least one separable cut) by each method, and how often they
disagree."""
import argparse

import numpy as np

from qsplit.factorize import is_genuinely_entangled, random_product
from qsplit.oracle import oracle_verdict
from qsplit.states import PureState, random_state


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    n = args.n
    print(f"n={n} tol={args.tol:g} trials={args.trials}")
    print(f"{'eps':>9} {'block: product':>15} {'oracle: product':>16} {'disagree':>9}")
    for eps in np.logspace(-14, -4, 11):
        ours = theirs = differ = 0
        for _ in range(args.trials):
            labels = list(rng.permutation(n) + 1)
            k = int(rng.integers(1, n))
            base = random_product([labels[:k], labels[k:]], rng).amplitudes
            noise = random_state(n, rng).amplitudes
            amps = base + eps * noise
            s = PureState(n, amps / np.linalg.norm(amps))
            a = not is_genuinely_entangled(s, args.tol)[0]
            b = not oracle_verdict(s, args.tol)
            ours += a
            theirs += b
            differ += a != b
        t = args.trials
        print(f"{eps:9.1e} {ours / t:15.3f} {theirs / t:16.3f} {differ / t:9.3f}")


if __name__ == "__main__":
    main()
