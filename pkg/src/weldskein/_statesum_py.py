"""Pure-Python smoothing-state enumerator.

Reference implementation of the hot kernel; the compiled twin in
``_statesum_c`` must produce identical histograms.  Enumeration is a
depth-first walk over per-crossing smoothing choices with a union-find
snapshot per level, so leaves only pay for the unions of their own branch.
"""
from __future__ import annotations

from typing import Sequence


def smoothing_histogram(n_nodes: int,
                        crossing_nodes: Sequence[int],
                        signs: Sequence[int],
                        prefix: Sequence[int] = ()) -> dict[tuple[int, int, int, int, int], int]:
    """Count the 3^n smoothing states, grouped by coefficient shape.

    ``crossing_nodes`` holds 4 union-find node ids per classical crossing
    (over_in, over_out, under_in, under_out).  ``prefix`` pins the smoothing
    digit (0 virtualize, 1 parallel, 2 cup-cap) of the leading crossings,
    which is how the state space is sharded for parallel evaluation.

    Returns a map (n_virtualized_pos, n_parallel_pos, n_virtualized_neg,
    n_parallel_neg, loops) -> number of states.  ``loops`` counts the closed
    components formed among the ``n_nodes`` nodes.
    """
    n = len(signs)
    if len(crossing_nodes) != 4 * n:
        raise ValueError('need 4 node ids per crossing')
    if len(prefix) > n:
        raise ValueError('prefix longer than crossing count')
    hist: dict[tuple[int, int, int, int, int], int] = {}
    prefix = tuple(prefix)
    np = len(prefix)

    def find(parent: list[int], i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # stack entries: (depth, parent snapshot, merges, vp, ip, vn, inn)
    stack = [(0, list(range(n_nodes)), 0, 0, 0, 0, 0)]
    while stack:
        depth, parent, merges, vp, ip, vn, inn = stack.pop()
        if depth == n:
            key = (vp, ip, vn, inn, n_nodes - merges)
            hist[key] = hist.get(key, 0) + 1
            continue
        base = 4 * depth
        oi = crossing_nodes[base]
        oo = crossing_nodes[base + 1]
        ui = crossing_nodes[base + 2]
        uo = crossing_nodes[base + 3]
        positive = signs[depth] > 0
        digits = (prefix[depth],) if depth < np else (0, 1, 2)
        for k in digits:
            if k == 0:
                pairs = ((oi, oo), (ui, uo))
            elif k == 1:
                pairs = ((oi, uo), (ui, oo))
            else:
                pairs = ((oi, ui), (oo, uo))
            p2 = parent[:]
            m2 = merges
            for u, v in pairs:
                ru = find(p2, u)
                rv = find(p2, v)
                if ru != rv:
                    p2[ru] = rv
                    m2 += 1
            stack.append((
                depth + 1, p2, m2,
                vp + (1 if k == 0 and positive else 0),
                ip + (1 if k == 1 and positive else 0),
                vn + (1 if k == 0 and not positive else 0),
                inn + (1 if k == 1 and not positive else 0),
            ))
    return hist
