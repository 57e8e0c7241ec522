"""Run the N2red certificate over several primes and seeds and tabulate the smooth-sample counts."""

import argparse

from nilcommute.exactfield import FieldSpec
from nilcommute.witnesses import n2red_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="101,1009,10007")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--trials", type=int, default=100)
    args = ap.parse_args()

    print(f"{'p':>6} {'seed':>5} {'in N2':>6} {'rank 2':>7}  verdict")
    for p in map(int, args.primes.split(",")):
        f = FieldSpec.prime(p)
        for seed in range(args.seeds):
            c = n2red_certificate(f, args.trials, seed)
            print(f"{p:>6} {seed:>5} {c.get('samples_in_N2(A)'):>6} "
                  f"{c.get('samples_with_jacobian_rank_2'):>7}  {c.verdict}")


if __name__ == "__main__":
    main()
