# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: matrix-free Laplacian products, the batched momentum
ascent loop and the Gray-code MaxCut enumeration.

Callers pass state blocks of shape ``(k, n)``: one row per column vector.
Each thread takes a contiguous run of columns and transposes it to a
node-major buffer so the neighbour loop streams all of its columns at once.
Columns are independent under the Laplacian and each one is summed in the
same order however the columns are grouped, so results do not depend on the
thread count.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


cdef inline void _lap_block(const i64* indptr, const i32* indices, const double* deg,
                            const double* y, double* out, double* acc,
                            Py_ssize_t n, Py_ssize_t K) noexcept nogil:
    # y and out are node-major (n, K): one row per node, one lane per column.
    # Each lane sums its neighbours in CSR index order, as the per-column
    # loop and scipy's csr product do, so every column is bitwise the same
    # whatever K is.
    cdef Py_ssize_t v, e, j
    cdef const double* src
    cdef double d
    for v in range(n):
        for j in range(K):
            acc[j] = 0.0
        for e in range(indptr[v], indptr[v + 1]):
            src = y + <Py_ssize_t> indices[e] * K
            for j in range(K):
                acc[j] = acc[j] + src[j]
        d = deg[v]
        for j in range(K):
            out[v * K + j] = d * y[v * K + j] - acc[j]


cdef inline void _gather(const double[:, ::1] cols, Py_ssize_t c0, Py_ssize_t K,
                         Py_ssize_t n, double* buf) noexcept nogil:
    cdef Py_ssize_t j, v
    for j in range(K):
        for v in range(n):
            buf[v * K + j] = cols[c0 + j, v]


def laplacian_columns(const i64[::1] indptr, const i32[::1] indices,
                      const double[::1] deg, const double[:, ::1] cols,
                      double[:, ::1] out, int nthreads=1):
    """Write ``L @ cols[c]`` into ``out[c]`` for every column ``c``."""
    cdef Py_ssize_t ncols = cols.shape[0]
    cdef Py_ssize_t n = cols.shape[1]
    if ncols == 0 or n == 0:
        return
    cdef int nchunks = <int> min(max(nthreads, 1), ncols)
    cdef Py_ssize_t per = (ncols + nchunks - 1) // nchunks
    cdef Py_ssize_t p, c0, K, j, v
    cdef double* y
    cdef double* o
    cdef double* acc
    for p in prange(nchunks, nogil=True, num_threads=nthreads, schedule="static"):
        c0 = p * per
        K = min(per, ncols - c0)
        if K > 0:
            y = <double*> malloc(n * K * sizeof(double))
            o = <double*> malloc(n * K * sizeof(double))
            acc = <double*> malloc(K * sizeof(double))
            _gather(cols, c0, K, n, y)
            _lap_block(&indptr[0], &indices[0] if indices.shape[0] else NULL, &deg[0],
                       y, o, acc, n, K)
            for j in range(K):
                for v in range(n):
                    out[c0 + j, v] = o[v * K + j]
            free(y)
            free(o)
            free(acc)


cdef void _ascend_chunk(const i64* indptr, const i32* indices, const double* deg,
                        double[:, ::1] cols, double[:, ::1] vel, Py_ssize_t c0,
                        Py_ssize_t K, Py_ssize_t n, double alpha, double mu,
                        Py_ssize_t iterations, bint early_exit,
                        i64* used, i64* bad) noexcept nogil:
    cdef double* x = <double*> malloc(n * K * sizeof(double))
    cdef double* w = <double*> malloc(n * K * sizeof(double))
    cdef double* g = <double*> malloc(n * K * sizeof(double))
    cdef double* acc = <double*> malloc(K * sizeof(double))
    cdef char* live = <char*> malloc(K * sizeof(char))
    cdef char* finite = <char*> malloc(K * sizeof(char))
    cdef Py_ssize_t* ids = <Py_ssize_t*> malloc(K * sizeof(Py_ssize_t))
    cdef Py_ssize_t t, v, j, i, k, c, nk, r
    cdef double xn, wn, xo
    _gather(cols, c0, K, n, x)
    _gather(vel, c0, K, n, w)
    for j in range(K):
        ids[j] = c0 + j
    k = K
    for t in range(iterations):
        _lap_block(indptr, indices, deg, x, g, acc, n, k)
        for j in range(k):
            live[j] = not early_exit
            finite[j] = 1
        for v in range(n):
            r = v * k
            for j in range(k):
                wn = mu * w[r + j] + g[r + j]
                xo = x[r + j]
                xn = xo + alpha * wn
                if xn > 1.0:
                    xn = 1.0
                elif xn < -1.0:
                    xn = -1.0
                elif xn != xn:
                    finite[j] = 0
                # a lane stays absorbable while every entry is unchanged and
                # either saturated with outward velocity or frozen at zero force
                if not live[j]:
                    if xn != xo:
                        live[j] = 1
                    elif xn == 1.0:
                        live[j] = wn < 0.0
                    elif xn == -1.0:
                        live[j] = wn > 0.0
                    else:
                        live[j] = wn != 0.0 or g[r + j] != 0.0
                w[r + j] = wn
                x[r + j] = xn
        nk = 0
        for j in range(k):
            c = ids[j]
            used[c] = t + 1
            if not finite[j]:
                bad[c] = t + 1
            if finite[j] and live[j]:
                nk += 1
                continue
            for v in range(n):
                cols[c, v] = x[v * k + j]
                vel[c, v] = w[v * k + j]
        if nk < k:
            # compact the surviving lanes to the front of each node row
            for v in range(n):
                i = 0
                for j in range(k):
                    if finite[j] and live[j]:
                        x[v * nk + i] = x[v * k + j]
                        w[v * nk + i] = w[v * k + j]
                        i += 1
            i = 0
            for j in range(k):
                if finite[j] and live[j]:
                    ids[i] = ids[j]
                    i += 1
            k = nk
            if k == 0:
                break
    for j in range(k):
        c = ids[j]
        for v in range(n):
            cols[c, v] = x[v * k + j]
            vel[c, v] = w[v * k + j]
    free(x)
    free(w)
    free(g)
    free(acc)
    free(live)
    free(finite)
    free(ids)


def ascend_columns(const i64[::1] indptr, const i32[::1] indices,
                   const double[::1] deg, double[:, ::1] cols,
                   double[:, ::1] vel, double alpha, double mu,
                   Py_ssize_t iterations, bint early_exit=True,
                   int nthreads=1):
    """Heavy-ball projected ascent, in place on ``cols`` and ``vel``.

    Returns ``(used, bad)``: per-column iteration counts actually executed
    (smaller than ``iterations`` when a column reached an absorbing state)
    and, per column, the 1-based iteration at which a non-finite value
    appeared (0 when none did).
    """
    cdef Py_ssize_t ncols = cols.shape[0]
    cdef Py_ssize_t n = cols.shape[1]
    used_arr = np.zeros(ncols, dtype=np.int64)
    bad_arr = np.zeros(ncols, dtype=np.int64)
    if ncols == 0 or n == 0 or iterations <= 0:
        return used_arr, bad_arr
    cdef i64[::1] used = used_arr
    cdef i64[::1] bad = bad_arr
    cdef int nchunks = <int> min(max(nthreads, 1), ncols)
    cdef Py_ssize_t per = (ncols + nchunks - 1) // nchunks
    cdef Py_ssize_t p, c0
    cdef const i32* idx = &indices[0] if indices.shape[0] else NULL
    for p in prange(nchunks, nogil=True, num_threads=nthreads, schedule="static"):
        c0 = p * per
        if c0 < ncols:
            _ascend_chunk(&indptr[0], idx, &deg[0], cols, vel, c0, min(per, ncols - c0), n,
                          alpha, mu, iterations, early_exit, &used[0], &bad[0])
    return used_arr, bad_arr


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef void _gray_block(const i64[::1] indptr, const i32[::1] indices,
                      Py_ssize_t n, Py_ssize_t nfree, i64 prefix,
                      i64* best, i64* witness, i64* count) noexcept nogil:
    # nodes 1..nfree follow the Gray code, nodes nfree+1..n-1 are fixed by
    # prefix, node 0 stays on side 0. Spins s = 1 - 2z and local fields
    # h[v] = sum of neighbour spins give the flip gain s[v] * h[v] without
    # branching on sides.
    cdef int* s = <int*> malloc(n * sizeof(int))
    cdef int* h = <int*> malloc(n * sizeof(int))
    cdef Py_ssize_t v, k
    cdef i64 code = prefix << (nfree + 1)
    cdef i64 cut = 0
    cdef i64 step, total
    cdef i64 b = -1
    cdef i64 wit = 0
    cdef i64 cnt = 0
    cdef int sv
    for v in range(n):
        s[v] = 1 - 2 * <int> ((code >> v) & 1)
    for v in range(n):
        h[v] = 0
        for k in range(indptr[v], indptr[v + 1]):
            h[v] += s[indices[k]]
            if indices[k] > v and s[indices[k]] != s[v]:
                cut += 1
    total = (<i64> 1) << nfree
    step = 0
    while True:
        if cut > b:
            b = cut
            wit = code
            cnt = 1
        elif cut == b:
            cnt += 1
            if code < wit:
                wit = code
        step += 1
        if step >= total:
            break
        # flip the node given by the lowest set bit of the step counter
        v = 1 + __builtin_ctzll(<unsigned long long> step)
        sv = s[v]
        cut += sv * h[v]
        for k in range(indptr[v], indptr[v + 1]):
            h[indices[k]] -= 2 * sv
        s[v] = -sv
        code ^= (<i64> 1) << v
    free(s)
    free(h)
    best[0] = b
    witness[0] = wit
    count[0] = cnt


def gray_maxcut(const i64[::1] indptr, const i32[::1] indices,
                Py_ssize_t n, int split_bits=0, int nthreads=1):
    """Exhaustive MaxCut with node 0 pinned to side 0.

    Returns ``(optimum, witness_code, count)`` where ``witness_code`` is the
    smallest optimal assignment read as an integer (bit ``v`` = node ``v``)
    and ``count`` counts optimal assignments with node 0 on side 0.
    """
    cdef Py_ssize_t free_nodes = n - 1
    if split_bits > free_nodes:
        split_bits = <int> free_nodes
    cdef Py_ssize_t nfree = free_nodes - split_bits
    cdef Py_ssize_t nblocks = (<Py_ssize_t> 1) << split_bits
    bests = np.zeros(nblocks, dtype=np.int64)
    wits = np.zeros(nblocks, dtype=np.int64)
    cnts = np.zeros(nblocks, dtype=np.int64)
    cdef i64[::1] bv = bests
    cdef i64[::1] wv = wits
    cdef i64[::1] cv = cnts
    cdef Py_ssize_t p
    for p in prange(nblocks, nogil=True, num_threads=nthreads, schedule="static"):
        _gray_block(indptr, indices, n, nfree, p, &bv[p], &wv[p], &cv[p])
    opt = int(bests.max())
    mask = bests == opt
    return opt, int(wits[mask].min()), int(cnts[mask].sum())
