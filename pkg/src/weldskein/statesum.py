"""Backend selection for the smoothing-state kernel.

The compiled extension is used when present; the pure-Python twin is the
fallback and the reference oracle.  ``benchmarks/bench_statesum.py`` compares
the two.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from weldskein._statesum_py import smoothing_histogram as _histogram_py

try:
    from weldskein._statesum_c import smoothing_histogram as _histogram_c
except ImportError:                                    # pragma: no cover
    _histogram_c = None

HAVE_COMPILED = _histogram_c is not None
DEFAULT_BACKEND = 'c' if HAVE_COMPILED else 'py'


def get_backend(name: Optional[str] = None):
    """Return the histogram function for ``name`` ('c', 'py' or None=auto)."""
    if name in (None, 'auto'):
        name = DEFAULT_BACKEND
    if name == 'py':
        return _histogram_py
    if name == 'c':
        if _histogram_c is None:
            raise RuntimeError('compiled state-sum kernel is not available')
        return _histogram_c
    raise ValueError(f'unknown backend {name!r}')


def merge_histograms(parts) -> dict:
    total: dict = {}
    for part in parts:
        for key, count in part.items():
            total[key] = total.get(key, 0) + count
    return total


def smoothing_histogram(n_nodes: int,
                        crossing_nodes: Sequence[int],
                        signs: Sequence[int],
                        threads: int = 1,
                        backend: Optional[str] = None) -> dict:
    """Histogram of all 3^n smoothing states, optionally sharded by prefix.

    The shards partition the state space, so any thread schedule yields the
    same histogram.
    """
    fn = get_backend(backend)
    n = len(signs)
    if threads <= 1 or n < 2:
        return fn(n_nodes, list(crossing_nodes), list(signs), ())
    # pin enough leading crossings that each thread sees several shards
    k = 1
    while 3 ** k < 2 * threads and k < n:
        k += 1
    prefixes = list(itertools.product((0, 1, 2), repeat=k))
    nodes = list(crossing_nodes)
    sgn = list(signs)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda p: fn(n_nodes, nodes, sgn, p), prefixes)
        return merge_histograms(parts)
