# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled HLT coset enumeration kernel (same algorithm as decide._tc_python)."""

from libc.stdlib cimport malloc, realloc, free


cdef struct Table:
    int *cells
    int *fwd
    int *queue
    int ncols
    int size       # rows in use
    int cap        # rows allocated
    int maxrows


cdef int grow(Table *t) except -1:
    cdef int newcap = t.cap * 2
    if newcap > t.maxrows:
        newcap = t.maxrows
    cdef int *cells = <int *> realloc(t.cells, <size_t> newcap * t.ncols * sizeof(int))
    if cells == NULL:
        raise MemoryError()
    t.cells = cells
    cdef int *fwd = <int *> realloc(t.fwd, <size_t> newcap * sizeof(int))
    if fwd == NULL:
        raise MemoryError()
    t.fwd = fwd
    cdef int *queue = <int *> realloc(t.queue, <size_t> newcap * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    t.queue = queue
    t.cap = newcap
    return 0


cdef inline int rep(Table *t, int c) nogil:
    cdef int root = c
    cdef int nxt
    while t.fwd[root] != root:
        root = t.fwd[root]
    while t.fwd[c] != root:
        nxt = t.fwd[c]
        t.fwd[c] = root
        c = nxt
    return root


cdef inline void merge(Table *t, int k, int l, int *qlen) nogil:
    k = rep(t, k)
    l = rep(t, l)
    if k == l:
        return
    if k > l:
        k, l = l, k
    t.fwd[l] = k
    t.queue[qlen[0]] = l
    qlen[0] += 1


cdef void coincidence(Table *t, int a, int b) nogil:
    cdef int qlen = 0
    cdef int qi = 0
    cdef int e, f, x, xi, e1, f1, tv, tv2
    cdef int nc = t.ncols
    merge(t, a, b, &qlen)
    while qi < qlen:
        e = t.queue[qi]
        qi += 1
        for x in range(nc):
            f = t.cells[e * nc + x]
            if f < 0:
                continue
            xi = x ^ 1
            if t.cells[f * nc + xi] == e:
                t.cells[f * nc + xi] = -1
            e1 = rep(t, e)
            f1 = rep(t, f)
            tv = t.cells[e1 * nc + x]
            if tv >= 0:
                merge(t, f1, tv, &qlen)
            else:
                tv2 = t.cells[f1 * nc + xi]
                if tv2 >= 0:
                    merge(t, e1, tv2, &qlen)
                else:
                    t.cells[e1 * nc + x] = f1
                    t.cells[f1 * nc + xi] = e1


cdef int define(Table *t, int c, int x) except -2:
    cdef int d, k
    if t.size >= t.maxrows:
        return 0
    if t.size >= t.cap:
        grow(t)
    d = t.size
    t.size += 1
    for k in range(t.ncols):
        t.cells[d * t.ncols + k] = -1
    t.fwd[d] = d
    t.cells[c * t.ncols + x] = d
    t.cells[d * t.ncols + (x ^ 1)] = c
    return 1


cdef int scan(Table *t, int c, int *w, int n, bint fill) except -2:
    cdef int f, b, i, j, tv
    cdef int nc = t.ncols
    f = c
    i = 0
    while True:
        while i < n:
            tv = t.cells[f * nc + w[i]]
            if tv < 0:
                break
            f = tv
            i += 1
        if i >= n:
            if f != c:
                coincidence(t, f, c)
            return 1
        b = c
        j = n - 1
        while j >= i:
            tv = t.cells[b * nc + (w[j] ^ 1)]
            if tv < 0:
                break
            b = tv
            j -= 1
        if j < i:
            coincidence(t, f, b)
            return 1
        if i == j:
            t.cells[f * nc + w[i]] = b
            t.cells[b * nc + (w[i] ^ 1)] = f
            return 1
        if not fill:
            return 1
        if not define(t, f, w[i]):
            return 0
        # continue forward from the newly defined coset
        f = t.cells[f * nc + w[i]]
        i += 1


cdef int compact(Table *t):
    cdef int c, k, n = 0, tv
    cdef int nc = t.ncols
    # new index of each live coset, stored in queue as scratch
    for c in range(t.size):
        if t.fwd[c] == c:
            t.queue[c] = n
            n += 1
        else:
            t.queue[c] = -1
    for c in range(t.size):
        if t.fwd[c] != c:
            continue
        for k in range(nc):
            tv = t.cells[c * nc + k]
            if tv >= 0:
                tv = t.queue[rep(t, tv)]
            t.cells[t.queue[c] * nc + k] = tv
    for c in range(n):
        t.fwd[c] = c
    t.size = n
    return n


def enumerate_cosets(int ncols, list relators, list subgroup, int max_cosets):
    """Returns ``("complete", rows)`` or ``("exhausted", None)``."""
    cdef Table t
    cdef int nrel = len(relators)
    cdef int nsub = len(subgroup)
    cdef int i, k, c, x, before, ok, alive_c, total
    cdef int **rw = <int **> malloc(max(nrel + nsub, 1) * sizeof(int *))
    cdef int *rl = <int *> malloc(max(nrel + nsub, 1) * sizeof(int))
    words = list(relators) + list(subgroup)
    for i in range(nrel + nsub):
        rl[i] = len(words[i])
        rw[i] = <int *> malloc(max(rl[i], 1) * sizeof(int))
        for k in range(rl[i]):
            rw[i][k] = words[i][k]
    t.ncols = ncols
    t.maxrows = max_cosets
    t.cap = 64 if max_cosets > 64 else max_cosets
    t.cells = <int *> malloc(<size_t> t.cap * ncols * sizeof(int))
    t.fwd = <int *> malloc(<size_t> t.cap * sizeof(int))
    t.queue = <int *> malloc(<size_t> t.cap * sizeof(int))
    t.size = 1
    for k in range(ncols):
        t.cells[k] = -1
    t.fwd[0] = 0
    status = "complete"
    try:
        for i in range(nrel, nrel + nsub):
            if not scan(&t, 0, rw[i], rl[i], True):
                status = "exhausted"
                break
        c = 0
        while status == "complete" and c < t.size:
            if t.fwd[c] == c:
                ok = 1
                for i in range(nrel):
                    if t.fwd[c] != c:
                        break
                    if not scan(&t, c, rw[i], rl[i], True):
                        ok = 0
                        break
                if ok and t.fwd[c] == c:
                    for x in range(ncols):
                        if t.cells[c * ncols + x] < 0 and not define(&t, c, x):
                            ok = 0
                            break
                if not ok:
                    for k in range(t.size):
                        if t.fwd[k] != k:
                            continue
                        for i in range(nrel):
                            if t.fwd[k] != k:
                                break
                            scan(&t, k, rw[i], rl[i], False)
                    before = 0
                    for k in range(c):
                        if t.fwd[k] == k:
                            before += 1
                    total = compact(&t)
                    if total >= max_cosets:
                        status = "exhausted"
                        break
                    c = before
                    continue
            c += 1
        if status == "complete":
            compact(&t)
            rows = []
            for c in range(t.size):
                row = [t.cells[c * ncols + k] for k in range(ncols)]
                if min(row) < 0:
                    status = "exhausted"
                    break
                rows.append(row)
        if status != "complete":
            return "exhausted", None
        return "complete", rows
    finally:
        for i in range(nrel + nsub):
            free(rw[i])
        free(rw)
        free(rl)
        free(t.cells)
        free(t.fwd)
        free(t.queue)
