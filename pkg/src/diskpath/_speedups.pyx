# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the pure kernels in kernels.py.

Same names, same argument and result conventions; kernels.py selects these
at import time when the extension built.  Any semantic change must be made
in both places, and tests/test_kernels.py compares the two backends.
"""

from libc.math cimport floor
from libc.stdlib cimport free, malloc
from libc.string cimport memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


_FORWARD_OFFSETS = (
    (0, 1), (0, 2),
    (1, -2), (1, -1), (1, 0), (1, 1), (1, 2),
    (2, -2), (2, -1), (2, 0), (2, 1), (2, 2),
)


def udg_edges(points):
    """Bucketed all-near-pairs scan; see kernels.udg_edges_py."""
    cdef Py_ssize_t n = len(points)
    cdef Py_ssize_t idx, a, b, cnt, ocnt, i, j
    cdef long bx, by, ox, oy
    cdef double x, y, dx, dy
    cdef double* xs = <double*> malloc(n * sizeof(double))
    cdef double* ys = <double*> malloc(n * sizeof(double))
    if xs == NULL or ys == NULL:
        free(xs); free(ys)
        raise MemoryError()
    buckets = {}
    try:
        for idx in range(n):
            x = points[idx][0]
            y = points[idx][1]
            xs[idx] = x
            ys[idx] = y
            key = (<long> floor(x * 0.5), <long> floor(y * 0.5))
            entry = buckets.get(key)
            if entry is None:
                buckets[key] = [idx]
            else:
                entry.append(idx)
        edges = []
        for (bx, by), members in buckets.items():
            cnt = len(members)
            for a in range(cnt):
                i = members[a]
                for b in range(a + 1, cnt):
                    j = members[b]
                    dx = xs[i] - xs[j]
                    dy = ys[i] - ys[j]
                    if dx * dx + dy * dy <= 4.0:
                        edges.append((i, j) if i < j else (j, i))
            for ox, oy in _FORWARD_OFFSETS:
                other = buckets.get((bx + ox, by + oy))
                if other is None:
                    continue
                ocnt = len(other)
                for a in range(cnt):
                    i = members[a]
                    x = xs[i]
                    y = ys[i]
                    for b in range(ocnt):
                        j = other[b]
                        dx = x - xs[j]
                        dy = y - ys[j]
                        if dx * dx + dy * dy <= 4.0:
                            edges.append((i, j) if i < j else (j, i))
        return edges
    finally:
        free(xs)
        free(ys)


def hk_longest(adjmasks, weights):
    """Subset DP for max-weight paths/cycles; see kernels.hk_longest_py."""
    cdef int n = len(adjmasks)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef long long* P = <long long*> malloc(size * n * sizeof(long long))
    cdef long long* R = <long long*> malloc(size * n * sizeof(long long))
    cdef unsigned long long* adj = <unsigned long long*> malloc(n * sizeof(unsigned long long))
    cdef long long* wts = <long long*> malloc(n * sizeof(long long))
    if P == NULL or R == NULL or adj == NULL or wts == NULL:
        free(P); free(R); free(adj); free(wts)
        raise MemoryError()
    cdef Py_ssize_t mask, base, nidx, i
    cdef int v, w, low
    cdef unsigned long long ext, wbit
    cdef long long pv, rv, cand
    cdef long long best_p = 0, best_c = 0
    cdef Py_ssize_t best_p_mask = 0, best_c_mask = 0
    cdef int best_p_v = -1, best_c_v = -1
    try:
        for v in range(n):
            adj[v] = adjmasks[v]
            wts[v] = weights[v]
        for i in range(size * n):
            P[i] = -1
            R[i] = -1
        for v in range(n):
            i = ((<Py_ssize_t> 1) << v) * n + v
            P[i] = wts[v]
            R[i] = wts[v]
        for mask in range(1, size):
            base = mask * n
            low = __builtin_popcountll((mask & (-mask)) - 1)
            for v in range(n):
                pv = P[base + v]
                if pv < 0:
                    continue
                if pv > best_p:
                    best_p = pv
                    best_p_mask = mask
                    best_p_v = v
                rv = R[base + v]
                ext = adj[v] & ~(<unsigned long long> mask)
                while ext:
                    wbit = ext & (~ext + 1)
                    ext ^= wbit
                    w = __builtin_popcountll(wbit - 1)
                    nidx = (mask | <Py_ssize_t> wbit) * n + w
                    cand = pv + wts[w]
                    if cand > P[nidx]:
                        P[nidx] = cand
                    if rv >= 0 and w > low:
                        cand = rv + wts[w]
                        if cand > R[nidx]:
                            R[nidx] = cand
                if (rv >= 0 and __builtin_popcountll(mask) >= 3 and v != low
                        and (adj[v] >> low) & 1 and rv > best_c):
                    best_c = rv
                    best_c_mask = mask
                    best_c_v = v
        path_witness = _backtrack(P, adj, wts, n, best_p_mask, best_p_v)
        if best_c > 0:
            cycle_witness = _backtrack(R, adj, wts, n, best_c_mask, best_c_v)
        else:
            cycle_witness = None
        return best_p, path_witness, best_c, cycle_witness
    finally:
        free(P); free(R); free(adj); free(wts)


cdef _backtrack(long long* table, unsigned long long* adj, long long* wts,
                int n, Py_ssize_t mask, int v):
    if v < 0:
        return []
    seq = [v]
    cdef Py_ssize_t rest
    cdef long long target
    cdef unsigned long long cand, ubit
    cdef int nxt, u
    while True:
        rest = mask & ~((<Py_ssize_t> 1) << v)
        if rest == 0:
            break
        target = table[mask * n + v] - wts[v]
        nxt = -1
        cand = adj[v] & <unsigned long long> rest
        while cand:
            ubit = cand & (~cand + 1)
            cand ^= ubit
            u = __builtin_popcountll(ubit - 1)
            if table[rest * n + u] == target:
                nxt = u
                break
        if nxt < 0:
            raise AssertionError("subset-DP backtrack failed")
        mask = rest
        v = nxt
        seq.append(v)
    seq.reverse()
    return seq


def dfs_longest_path(adjmasks):
    """Memoized DFS longest path; see kernels.dfs_longest_path_py."""
    cdef int n = len(adjmasks)
    cdef Py_ssize_t total = (<Py_ssize_t> n) << n
    cdef unsigned char* seen = <unsigned char*> malloc(total)
    cdef unsigned long long* adj = <unsigned long long*> malloc(n * sizeof(unsigned long long))
    cdef int* stack = <int*> malloc((n + 1) * sizeof(int))
    cdef unsigned long long* rem = <unsigned long long*> malloc((n + 1) * sizeof(unsigned long long))
    cdef int* bestbuf = <int*> malloc(n * sizeof(int))
    if seen == NULL or adj == NULL or stack == NULL or rem == NULL or bestbuf == NULL:
        free(seen); free(adj); free(stack); free(rem); free(bestbuf)
        raise MemoryError()
    cdef int best = 0, depth, root, v, w, i
    cdef unsigned long long mask, cand, wbit
    cdef Py_ssize_t key
    try:
        memset(seen, 0, total)
        for v in range(n):
            adj[v] = adjmasks[v]
        for root in range(n):
            depth = 0
            stack[0] = root
            rem[0] = adj[root]
            mask = (<unsigned long long> 1) << root
            seen[(<Py_ssize_t> root << n) | <Py_ssize_t> mask] = 1
            if best < 1:
                best = 1
                bestbuf[0] = root
            while depth >= 0:
                cand = rem[depth] & ~mask
                if cand:
                    wbit = cand & (~cand + 1)
                    rem[depth] ^= wbit
                    w = __builtin_popcountll(wbit - 1)
                    key = (<Py_ssize_t> w << n) | <Py_ssize_t> (mask | wbit)
                    if seen[key]:
                        continue
                    seen[key] = 1
                    depth += 1
                    stack[depth] = w
                    mask |= wbit
                    rem[depth] = adj[w]
                    if depth + 1 > best:
                        best = depth + 1
                        for i in range(best):
                            bestbuf[i] = stack[i]
                else:
                    mask ^= (<unsigned long long> 1) << stack[depth]
                    depth -= 1
        return best, [bestbuf[i] for i in range(best)]
    finally:
        free(seen); free(adj); free(stack); free(rem); free(bestbuf)


def dfs_longest_cycle(adjmasks):
    """Min-rooted DFS longest cycle; see kernels.dfs_longest_cycle_py."""
    cdef int n = len(adjmasks)
    cdef Py_ssize_t total = (<Py_ssize_t> n) << n
    cdef int* seen = <int*> malloc(total * sizeof(int))
    cdef unsigned long long* adj = <unsigned long long*> malloc(n * sizeof(unsigned long long))
    cdef int* stack = <int*> malloc((n + 1) * sizeof(int))
    cdef unsigned long long* rem = <unsigned long long*> malloc((n + 1) * sizeof(unsigned long long))
    cdef int* bestbuf = <int*> malloc(n * sizeof(int))
    if seen == NULL or adj == NULL or stack == NULL or rem == NULL or bestbuf == NULL:
        free(seen); free(adj); free(stack); free(rem); free(bestbuf)
        raise MemoryError()
    cdef int best = 0, depth, root, v, w, i, stamp
    cdef unsigned long long mask, cand, wbit, above
    cdef Py_ssize_t key
    try:
        memset(seen, 0, total * sizeof(int))
        for v in range(n):
            adj[v] = adjmasks[v]
        for root in range(n):
            stamp = root + 1
            above = ~(((<unsigned long long> 1) << (root + 1)) - 1)
            depth = 0
            stack[0] = root
            rem[0] = adj[root] & above
            mask = (<unsigned long long> 1) << root
            seen[(<Py_ssize_t> root << n) | <Py_ssize_t> mask] = stamp
            while depth >= 0:
                cand = rem[depth] & ~mask
                if cand:
                    wbit = cand & (~cand + 1)
                    rem[depth] ^= wbit
                    w = __builtin_popcountll(wbit - 1)
                    key = (<Py_ssize_t> w << n) | <Py_ssize_t> (mask | wbit)
                    if seen[key] == stamp:
                        continue
                    seen[key] = stamp
                    depth += 1
                    stack[depth] = w
                    mask |= wbit
                    rem[depth] = adj[w] & above
                    if depth + 1 >= 3 and (adj[w] >> root) & 1 and depth + 1 > best:
                        best = depth + 1
                        for i in range(best):
                            bestbuf[i] = stack[i]
                else:
                    mask ^= (<unsigned long long> 1) << stack[depth]
                    depth -= 1
        if best == 0:
            return 0, None
        return best, [bestbuf[i] for i in range(best)]
    finally:
        free(seen); free(adj); free(stack); free(rem); free(bestbuf)


def good_solution_search(adjmasks, cell_ids, marked, ucount, k, is_cycle, node_cap):
    """Pruned DFS for an all-good-cells solution; see kernels.good_solution_search_py
    for the pruning-rule derivation."""
    cdef int n = len(adjmasks)
    cdef int ncells = len(ucount)
    cdef unsigned long long* adj = <unsigned long long*> malloc(n * sizeof(unsigned long long))
    cdef int* cells = <int*> malloc(n * sizeof(int))
    cdef unsigned char* mk = <unsigned char*> malloc(n)
    cdef int* ucnt = <int*> malloc(ncells * sizeof(int))
    cdef int* uvis = <int*> malloc(ncells * sizeof(int))
    cdef unsigned char* run_done = <unsigned char*> malloc(ncells)
    cdef int* path = <int*> malloc((n + 1) * sizeof(int))
    cdef unsigned long long* rem = <unsigned long long*> malloc((n + 1) * sizeof(unsigned long long))
    cdef int* closed = <int*> malloc((n + 1) * sizeof(int))
    if (adj == NULL or cells == NULL or mk == NULL or ucnt == NULL or uvis == NULL
            or run_done == NULL or path == NULL or rem == NULL or closed == NULL):
        free(adj); free(cells); free(mk); free(ucnt); free(uvis)
        free(run_done); free(path); free(rem); free(closed)
        raise MemoryError()
    cdef int k_eff = max(k, 3) if is_cycle else max(k, 1)
    cdef bint cyc = bool(is_cycle)
    cdef long long nodes = 0, cap = node_cap
    cdef int root, rc, depth, incomplete, v, w, u, cu, cw, c, cv, before, closes
    cdef unsigned long long mask, cand, wbit
    cdef bint mu, mw
    try:
        for v in range(n):
            adj[v] = adjmasks[v]
            cells[v] = cell_ids[v]
            mk[v] = 1 if marked[v] else 0
        for c in range(ncells):
            ucnt[c] = ucount[c]
            uvis[c] = 0
            run_done[c] = 0
        for root in range(n):
            if cyc and not mk[root]:
                continue
            rc = cells[root]
            depth = 0
            path[0] = root
            mask = (<unsigned long long> 1) << root
            incomplete = 0
            if not mk[root]:
                uvis[rc] = 1
                if ucnt[rc] > 1:
                    incomplete = 1
            if not cyc and 1 >= k_eff and incomplete == 0:
                return 1, [root]
            rem[0] = adj[root]
            closed[0] = -1
            while depth >= 0:
                cand = rem[depth] & ~mask
                if cand:
                    wbit = cand & (~cand + 1)
                    rem[depth] ^= wbit
                    w = __builtin_popcountll(wbit - 1)
                    u = path[depth]
                    cu = cells[u]
                    cw = cells[w]
                    mu = mk[u]
                    mw = mk[w]
                    if not mu:
                        if cw != cu:
                            continue  # rule A
                    elif not mw and cw != cu:
                        continue  # rule C
                    if not mw and mu and run_done[cw]:
                        continue  # rule B
                    if cyc and mw and w <= root:
                        continue
                    nodes += 1
                    if nodes > cap:
                        return -1, None
                    closes = -1
                    if not mu and mw:
                        run_done[cu] = 1
                        closes = cu
                    if not mw:
                        before = uvis[cw]
                        uvis[cw] = before + 1
                        if before + 1 == ucnt[cw]:
                            if before > 0:
                                incomplete -= 1
                        elif before == 0:
                            incomplete += 1
                    depth += 1
                    path[depth] = w
                    mask |= wbit
                    rem[depth] = adj[w]
                    closed[depth] = closes
                    if incomplete == 0 and depth + 1 >= k_eff:
                        if not cyc:
                            return 1, [path[v] for v in range(depth + 1)]
                        if (adj[w] >> root) & 1 and (mw or cw == rc):
                            return 1, [path[v] for v in range(depth + 1)]
                else:
                    v = path[depth]
                    mask ^= (<unsigned long long> 1) << v
                    c = closed[depth]
                    depth -= 1
                    if c >= 0:
                        run_done[c] = 0
                    if not mk[v]:
                        cv = cells[v]
                        before = uvis[cv]
                        uvis[cv] = before - 1
                        if before == ucnt[cv]:
                            if before > 1:
                                incomplete += 1
                        elif before == 1:
                            incomplete -= 1
        return 0, None
    finally:
        free(adj); free(cells); free(mk); free(ucnt); free(uvis)
        free(run_done); free(path); free(rem); free(closed)
