#!/usr/bin/env python3
"""Compare the compiled and pure-Python state-sum kernels.

Usage: python benchmarks/bench_statesum.py [max_crossings]

Generates a reproducible random diagram per crossing count, evaluates the
bracket with each backend, checks the results agree, and reports timings.
"""
import sys
import time

from weldskein import statesum
from weldskein.diagram import parse
from weldskein.moves import MoveKind, apply_move, enumerate_sites
from weldskein.skein import CoefficientSystem, bracket


def random_diagram(n_classical: int, seed: int = 7):
    import random
    rng = random.Random(seed)
    d = parse('X+ 1 2 3 4\nX+ 4 3 2 1\n')
    guard = 0
    while len(d.classical) < n_classical and guard < 10 * n_classical:
        guard += 1
        kind = rng.choice((MoveKind.R1A_PLUS, MoveKind.R1B_PLUS,
                           MoveKind.R2_PLUS, MoveKind.V1_PLUS))
        sites = enumerate_sites(d, kind)
        d = apply_move(d, sites[rng.randrange(len(sites))])
    return d


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    cs = CoefficientSystem.extended()
    print(f'compiled kernel available: {statesum.HAVE_COMPILED}')
    print(f'{"n":>3} {"states":>9} {"pure s":>10} {"compiled s":>10} {"speedup":>8}')
    for n in range(6, max_n + 1, 2):
        d = random_diagram(n)
        t0 = time.perf_counter()
        b_py = bracket(d, cs, backend='py')
        t_py = time.perf_counter() - t0
        if statesum.HAVE_COMPILED:
            t0 = time.perf_counter()
            b_c = bracket(d, cs, backend='c')
            t_c = time.perf_counter() - t0
            assert b_c == b_py, 'backends disagree'
            print(f'{len(d.classical):>3} {3 ** len(d.classical):>9} '
                  f'{t_py:>10.3f} {t_c:>10.3f} {t_py / t_c:>7.1f}x')
        else:
            print(f'{len(d.classical):>3} {3 ** len(d.classical):>9} '
                  f'{t_py:>10.3f} {"-":>10} {"-":>8}')


if __name__ == '__main__':
    main()
