"""Enumerate the (alpha, beta, gamma, delta) fibre over small primes and compare with the generic family."""

import argparse

from nilcommute.exactfield import FieldSpec, find_omega
from nilcommute.witnesses import prop321_fiber_bruteforce


def generic_points(p):
    # (beta w, beta, -3/2 beta w^2, beta) for every root w and every beta
    f = FieldSpec.prime(p)
    pts = set()
    for w in find_omega(f):
        w = w.value
        for b in range(p):
            pts.add((f.mul(b, w), b, f.mul(f.div(f(-3), f(2)), f.mul(b, f.mul(w, w))), b))
    return pts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3,5,7,11")
    args = ap.parse_args()

    for p in map(int, args.primes.split(",")):
        sols = prop321_fiber_bruteforce(p)
        line = f"F_{p}: {len(sols)} solutions"
        if p > 3:
            line += f", generic family gives {len(generic_points(p))}, equal: {set(sols) == generic_points(p)}"
        print(line)
        if len(sols) <= 12:
            for s in sols:
                print("   ", s)


if __name__ == "__main__":
    main()
