"""Supersingular j-invariants modulo every monic prime of a given degree.

For each prime p of degree d and each j in A/p the multinomial criterion is
compared with the direct test on phi_p; the supersingular j are listed.
"""

import argparse
import time

from drinfeld.algebra import make_K, ResidueField, monic_irreducibles
from drinfeld.multinomial import j_representative, supersingular_test, supersingular_direct


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument('--q', type=int, default=3)
    ap.add_argument('--degree', type=int, default=2)
    args = ap.parse_args()
    K = make_K(args.q)
    t = time.perf_counter()
    disagreements = 0
    for prime in monic_irreducibles(K, args.degree):
        R = ResidueField(prime)
        ss = []
        for j in R.elements():
            phi = j_representative(R, j)
            a, b = supersingular_test(phi), supersingular_direct(phi)
            disagreements += a != b
            if a:
                ss.append(R.format(j))
        print(f'{prime}: {len(ss)} supersingular j: {", ".join(ss)}')
    print(f'disagreements between the two tests: {disagreements}  ({time.perf_counter() - t:.1f}s)')


if __name__ == '__main__':
    main()
