# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled smoothing-state enumerator.

Same contract as ``_statesum_py.smoothing_histogram``; the inner loop runs
without the GIL so sharded evaluation scales across threads.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef inline int _find(int* parent, int i) noexcept nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def smoothing_histogram(int n_nodes, crossing_nodes, signs, prefix=()):
    """Count smoothing states grouped by coefficient shape and loop count."""
    cdef int n = len(signs)
    if len(crossing_nodes) != 4 * n:
        raise ValueError('need 4 node ids per crossing')
    if len(prefix) > n:
        raise ValueError('prefix longer than crossing count')

    cdef int np_ = len(prefix)
    cdef int m = n_nodes
    cdef int i, j

    cdef int* nodes = <int*> malloc(4 * n * sizeof(int))
    cdef signed char* sgn = <signed char*> malloc(n * sizeof(signed char) if n else 1)
    cdef signed char* pref = <signed char*> malloc(n * sizeof(signed char) if n else 1)
    # DFS snapshots: one parent array per depth level, plus counters.
    cdef int* parents = <int*> malloc((n + 1) * (m if m else 1) * sizeof(int))
    cdef long long* hist = NULL
    cdef int* merges_at = <int*> malloc((n + 1) * sizeof(int))
    cdef signed char* digit_at = <signed char*> malloc((n + 1) * sizeof(signed char))
    cdef int* vp_at = <int*> malloc((n + 1) * sizeof(int))
    cdef int* ip_at = <int*> malloc((n + 1) * sizeof(int))
    cdef int* vn_at = <int*> malloc((n + 1) * sizeof(int))
    cdef int* in_at = <int*> malloc((n + 1) * sizeof(int))

    cdef int npos = 0
    for i in range(n):
        nodes[4 * i] = crossing_nodes[4 * i]
        nodes[4 * i + 1] = crossing_nodes[4 * i + 1]
        nodes[4 * i + 2] = crossing_nodes[4 * i + 2]
        nodes[4 * i + 3] = crossing_nodes[4 * i + 3]
        sgn[i] = 1 if signs[i] > 0 else -1
        if sgn[i] > 0:
            npos += 1
        pref[i] = prefix[i] if i < np_ else -1

    # histogram indexed by (((vp*(npos+1)+ip)*(nneg+1)+vn)*(nneg+1)+inn)*(m+1)+loops
    cdef int nneg = n - npos
    cdef long hsize = (npos + 1) * (npos + 1) * (nneg + 1) * (nneg + 1) * (m + 1)
    if hsize <= 0:
        hsize = 1
    hist = <long long*> malloc(hsize * sizeof(long long))

    cdef int depth, k, oi, oo, ui, uo, ru, rv, mg, u, base
    cdef int* par
    cdef int* child
    cdef long idx

    with nogil:
        for idx in range(hsize):
            hist[idx] = 0
        for i in range(m):
            parents[i] = i
        merges_at[0] = 0
        vp_at[0] = 0; ip_at[0] = 0; vn_at[0] = 0; in_at[0] = 0
        digit_at[0] = pref[0] if (n > 0 and pref[0] >= 0) else 0
        depth = 0
        while depth >= 0:
            if depth == n:
                idx = (((<long>vp_at[n] * (npos + 1) + ip_at[n]) * (nneg + 1)
                        + vn_at[n]) * (nneg + 1) + in_at[n]) * (m + 1) + (m - merges_at[n])
                hist[idx] += 1
                depth -= 1
                # advance digit at this level (or pop further in the loop below)
                while depth >= 0:
                    if pref[depth] >= 0 or digit_at[depth] >= 2:
                        depth -= 1
                    else:
                        digit_at[depth] += 1
                        break
                continue
            # expand: apply digit_at[depth] on a fresh snapshot
            k = digit_at[depth]
            par = parents + depth * m
            child = parents + (depth + 1) * m
            memcpy(child, par, m * sizeof(int))
            base = 4 * depth
            oi = nodes[base]; oo = nodes[base + 1]
            ui = nodes[base + 2]; uo = nodes[base + 3]
            mg = merges_at[depth]
            if k == 0:
                ru = _find(child, oi); rv = _find(child, oo)
                if ru != rv:
                    child[ru] = rv; mg += 1
                ru = _find(child, ui); rv = _find(child, uo)
            elif k == 1:
                ru = _find(child, oi); rv = _find(child, uo)
                if ru != rv:
                    child[ru] = rv; mg += 1
                ru = _find(child, ui); rv = _find(child, oo)
            else:
                ru = _find(child, oi); rv = _find(child, ui)
                if ru != rv:
                    child[ru] = rv; mg += 1
                ru = _find(child, oo); rv = _find(child, uo)
            if ru != rv:
                child[ru] = rv; mg += 1
            merges_at[depth + 1] = mg
            vp_at[depth + 1] = vp_at[depth] + (1 if (k == 0 and sgn[depth] > 0) else 0)
            ip_at[depth + 1] = ip_at[depth] + (1 if (k == 1 and sgn[depth] > 0) else 0)
            vn_at[depth + 1] = vn_at[depth] + (1 if (k == 0 and sgn[depth] < 0) else 0)
            in_at[depth + 1] = in_at[depth] + (1 if (k == 1 and sgn[depth] < 0) else 0)
            depth += 1
            if depth < n:
                digit_at[depth] = pref[depth] if pref[depth] >= 0 else 0

    out = {}
    cdef int vp, ipc, vnc, inc, loops
    for vp in range(npos + 1):
        for ipc in range(npos + 1):
            for vnc in range(nneg + 1):
                for inc in range(nneg + 1):
                    for loops in range(m + 1):
                        idx = (((<long>vp * (npos + 1) + ipc) * (nneg + 1)
                                + vnc) * (nneg + 1) + inc) * (m + 1) + loops
                        if hist[idx]:
                            out[(vp, ipc, vnc, inc, loops)] = hist[idx]
    free(nodes); free(sgn); free(pref); free(parents); free(hist)
    free(merges_at); free(digit_at); free(vp_at); free(ip_at); free(vn_at); free(in_at)
    return out
