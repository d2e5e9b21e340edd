"""Table of |P_r(n)| next to the r-step Fibonacci numbers and 2^n, with enumeration timings."""

import argparse
import time

from drinfeld.partitions import enumerate_partitions, rfib


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument('--max-r', type=int, default=4)
    ap.add_argument('--max-n', type=int, default=16)
    args = ap.parse_args()
    print(f'{"r":>2} {"n":>3} {"count":>8} {"r-fib":>8} {"2^n":>8} {"secs":>7}')
    for r in range(1, args.max_r + 1):
        for n in range(args.max_n + 1):
            t = time.perf_counter()
            c = sum(1 for S in enumerate_partitions(r, n) if S.is_valid())
            secs = time.perf_counter() - t
            print(f'{r:>2} {n:>3} {c:>8} {rfib(r, n):>8} {2 ** n:>8} {secs:>7.3f}')


if __name__ == '__main__':
    main()
