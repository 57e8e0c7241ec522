"""Print closure dimensions next to the nilpotent-cone and centralizer numbers they are compared with."""

import argparse

from nilcommute.closure import d2_closure_dim, r1_closure_dim
from nilcommute.jordan import nilpotent_centralizer_dim, partitions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-d", type=int, default=4)
    args = ap.parse_args()

    print("n  " + "  ".join(f"r1(d={d})" for d in range(1, args.max_d + 1)))
    for n in range(1, args.max_n + 1):
        print(f"{n:<3}" + "  ".join(f"{r1_closure_dim(d, n):>7}" for d in range(1, args.max_d + 1)))
    print()
    print(f"{'partition':<18}{'d2':>5}{'nil C':>7}")
    for n in range(1, args.max_n + 1):
        for lam in partitions(n):
            print(f"{str(lam):<18}{d2_closure_dim(lam):>5}{nilpotent_centralizer_dim(lam):>7}")


if __name__ == "__main__":
    main()
