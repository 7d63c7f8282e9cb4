"""Numpy/scipy versions of the compiled kernels.

Same signatures and, for the ascent loop, the same floating point operation
order as ``_kernels.pyx`` (neighbour sums accumulate in CSR index order), so
both paths give bitwise equal states.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def _adjacency(indptr, indices, n):
    data = np.ones(len(indices), dtype=np.float64)
    return sp.csr_matrix((data, indices, indptr), shape=(n, n))


def laplacian_columns(indptr, indices, deg, cols, out, nthreads=1):
    n = cols.shape[1]
    adj = _adjacency(indptr, indices, n)
    rows = np.ascontiguousarray(cols.T)
    out[...] = (deg[:, None] * rows - adj @ rows).T


def ascend_columns(indptr, indices, deg, cols, vel, alpha, mu, iterations,
                   early_exit=True, nthreads=1):
    ncols, n = cols.shape
    used = np.zeros(ncols, dtype=np.int64)
    bad = np.zeros(ncols, dtype=np.int64)
    if ncols == 0 or iterations <= 0:
        return used, bad
    adj = _adjacency(indptr, indices, n)
    d = deg[:, None]
    active = np.arange(ncols)
    x = np.ascontiguousarray(cols.T)
    w = np.ascontiguousarray(vel.T)
    for t in range(iterations):
        g = d * x - adj @ x
        w *= mu
        w += g
        xn = x + alpha * w
        np.clip(xn, -1.0, 1.0, out=xn)
        used[active] = t + 1
        finite = ~np.isnan(xn).any(axis=0)
        done = ~finite
        bad[active[done]] = t + 1
        if early_exit:
            still = xn == x
            frozen = still & (
                ((xn == 1.0) & (w >= 0.0))
                | ((xn == -1.0) & (w <= 0.0))
                | ((w == 0.0) & (g == 0.0))
            )
            done |= frozen.all(axis=0)
        x = xn
        if done.any():
            cols[active[done]] = x[:, done].T
            vel[active[done]] = w[:, done].T
            keep = ~done
            active = active[keep]
            x = np.ascontiguousarray(x[:, keep])
            w = np.ascontiguousarray(w[:, keep])
            if active.size == 0:
                break
    if active.size:
        cols[active] = x.T
        vel[active] = w.T
    return used, bad


def _codes(bits):
    k = np.arange(1 << bits, dtype=np.int64)
    return ((k[:, None] >> np.arange(bits)) & 1).astype(np.float64)


def gray_maxcut(indptr, indices, n, split_bits=0, nthreads=1, chunk=1 << 10):
    """Exhaustive MaxCut by splitting the free nodes into two halves.

    Node 0 is pinned to side 0. With ``z`` the side indicator,
    ``cut = sum_v d_v z_v - 2 * sum_{uv in E} z_u z_v``; the cross term
    between the halves is a single matrix product per chunk.
    """
    if n == 1:
        return 0, 0, 1
    adj = _adjacency(indptr, indices, n).toarray()
    deg = adj.sum(axis=1)
    free = n - 1
    lo_bits = free // 2
    hi_bits = free - lo_bits
    lo = np.arange(1, 1 + lo_bits)
    hi = np.arange(1 + lo_bits, n)
    zl = _codes(lo_bits)
    zh = _codes(hi_bits)
    a_ll = adj[np.ix_(lo, lo)]
    a_hh = adj[np.ix_(hi, hi)]
    a_lh = adj[np.ix_(lo, hi)]
    lin_l = zl @ deg[lo] - ((zl @ a_ll) * zl).sum(axis=1)
    lin_h = zh @ deg[hi] - ((zh @ a_hh) * zh).sum(axis=1)
    left = zl @ a_lh
    lo_code = np.arange(1 << lo_bits, dtype=np.int64) << 1
    best, wit, count = -1, 0, 0
    for start in range(0, 1 << hi_bits, chunk):
        stop = min(start + chunk, 1 << hi_bits)
        cut = lin_l[:, None] + lin_h[None, start:stop] - 2.0 * (left @ zh[start:stop].T)
        cut = np.rint(cut).astype(np.int64)
        top = int(cut.max())
        if top < best:
            continue
        ia, ib = np.nonzero(cut == top)
        codes = lo_code[ia] | ((ib + start).astype(np.int64) << (lo_bits + 1))
        if top > best:
            best, wit, count = top, int(codes.min()), len(codes)
        else:
            wit = min(wit, int(codes.min()))
            count += len(codes)
    return best, wit, count
