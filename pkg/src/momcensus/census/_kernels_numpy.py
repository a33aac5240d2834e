"""Pure-Python/numpy gluing search kernel.

Reference implementation of the matching enumeration: depth-first over
perfect matchings of the faces (always extending the lowest unmatched
face), with the pole-to-pole rotation pinned, an optional vertex-link
Euler filter at the leaves, and in-kernel canonicalization of surviving
matchings under the inventory symmetry group.

Keep in sync with _kernels_numba.py, which is the same algorithm under
@njit.  The cross-backend equality test in the suite guards the pair.
"""

from __future__ import annotations

import numpy as np


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra


def _leaf_passes(match, slot_vertex, slot_edge, end_id, end_vertex, corner_count,
                 pv, pe, pn, fcnt, ecnt, vcnt):
    F = match.shape[0]
    nv = pv.shape[0]
    ne = pe.shape[0]
    nn = pn.shape[0]
    for i in range(nv):
        pv[i] = i
    for i in range(ne):
        pe[i] = i
    for i in range(nn):
        pn[i] = i
    for a in range(F):
        b = match[a]
        if b < a:
            continue
        for s in range(3):
            t = (3 - s) % 3
            _union(pv, slot_vertex[a, s], slot_vertex[b, t])
            te = (2 - s) % 3
            _union(pe, slot_edge[a, s], slot_edge[b, te])
            _union(pn, end_id[a, 2 * s], end_id[b, 2 * te + 1])
            _union(pn, end_id[a, 2 * s + 1], end_id[b, 2 * te])
    for i in range(nv):
        fcnt[i] = 0
        ecnt[i] = 0
        vcnt[i] = 0
    for v in range(nv):
        r = _find(pv, v)
        fcnt[r] += 1
        ecnt[r] += corner_count[v]
    for n in range(nn):
        if _find(pn, n) == n:
            r = _find(pv, end_vertex[n])
            vcnt[r] += 1
    for v in range(nv):
        if _find(pv, v) == v:
            # chi of the link: V - E + F with E = corners/2; require 0
            if 2 * vcnt[v] - ecnt[v] + 2 * fcnt[v] != 0:
                return False
    return True


def _canonicalize(match, sym, sym_inv, best, tmp):
    F = match.shape[0]
    G = sym.shape[0]
    for x in range(F):
        best[x] = match[x]
    for g in range(G):
        smaller = False
        for x in range(F):
            v = sym[g, match[sym_inv[g, x]]]
            if v < best[x]:
                smaller = True
                break
            elif v > best[x]:
                break
        if smaller:
            for x in range(F):
                tmp[x] = sym[g, match[sym_inv[g, x]]]
            for x in range(F):
                best[x] = tmp[x]


def search(slot_vertex, slot_edge, end_id, end_vertex, corner_count,
           n_vertices, n_edges, sym, sym_inv, euler_only, first_partner, out):
    """Enumerate matchings; write canonical forms of surviving leaves
    into ``out``.  Returns (rows_written, raw_leaf_count); rows_written
    is -1 when ``out`` overflowed and the caller must retry bigger."""
    F = slot_vertex.shape[0]
    half = F // 2
    match = np.full(F, -1, dtype=np.int64)
    stack_a = np.zeros(half, dtype=np.int64)
    stack_b = np.zeros(half, dtype=np.int64)
    pv = np.zeros(n_vertices, dtype=np.int64)
    pe = np.zeros(n_edges, dtype=np.int64)
    pn = np.zeros(2 * n_edges, dtype=np.int64)
    fcnt = np.zeros(n_vertices, dtype=np.int64)
    ecnt = np.zeros(n_vertices, dtype=np.int64)
    vcnt = np.zeros(n_vertices, dtype=np.int64)
    best = np.zeros(F, dtype=np.int64)
    tmp = np.zeros(F, dtype=np.int64)
    cap = out.shape[0]
    n_out = 0
    raw = 0
    overflow = False

    d = 0
    a = 0
    b_try = 0
    while d >= 0:
        b = -1
        for c in range(b_try + 1, F):
            if match[c] < 0 and c != a:
                b = c
                break
        if b < 0:
            d -= 1
            if d < 0:
                break
            a = stack_a[d]
            prev = stack_b[d]
            match[a] = -1
            match[prev] = -1
            b_try = prev
            continue
        if d == 0 and first_partner >= 0 and b != first_partner:
            b_try = b
            continue
        match[a] = b
        match[b] = a
        stack_a[d] = a
        stack_b[d] = b
        if d + 1 == half:
            raw += 1
            keep = True
            if euler_only:
                keep = _leaf_passes(match, slot_vertex, slot_edge, end_id,
                                    end_vertex, corner_count,
                                    pv, pe, pn, fcnt, ecnt, vcnt)
            if keep:
                if n_out >= cap:
                    overflow = True
                    break
                _canonicalize(match, sym, sym_inv, best, tmp)
                for x in range(F):
                    out[n_out, x] = best[x]
                n_out += 1
            match[a] = -1
            match[b] = -1
            b_try = b
            continue
        d += 1
        na = 0
        while match[na] >= 0:
            na += 1
        a = na
        b_try = na

    if overflow:
        return -1, raw
    return n_out, raw
