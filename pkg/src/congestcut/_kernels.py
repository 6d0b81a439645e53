"""Jitted inner loops for greedy packing and 1-respecting cut scans.

Pure integer array code; all rational threshold logic stays outside.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BIG = np.int64(1) << 62


@njit(cache=True)
def greedy_pack_kernel(eu, ev, ew, contracted, n, k, trees, loads):
    """Pack k MSTs greedily under the key (min parallel-copy load, edge index).

    Contracted edges get key -1 so every tree absorbs a spanning forest of
    them first. trees (k, n-1) and loads (m,) are filled in place. Returns 0
    on success, -1 if some tree could not span (disconnected input).
    """
    m = eu.shape[0]
    keys = np.empty(m, np.int64)
    parent = np.empty(n, np.int64)
    for t in range(k):
        for i in range(m):
            if contracted[i]:
                keys[i] = 0
            else:
                keys[i] = (loads[i] // ew[i]) + 1
        order = np.argsort(keys * m + np.arange(m))
        for i in range(n):
            parent[i] = i
        cnt = 0
        for oi in range(m):
            e = order[oi]
            a = eu[e]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = ev[e]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a == b:
                continue
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
            trees[t, cnt] = e
            cnt += 1
            loads[e] += 1
            if cnt == n - 1:
                break
        if cnt != n - 1:
            return -1
    return 0


@njit(cache=True)
def one_respect_scan(eu, ev, ew, n, trees, edge_valid, root):
    """Minimum 1-respecting cut over all trees via w(C_v) = dd(v) - 2*rd(v).

    edge_valid marks tree edges whose child-side subtree is a legal cut of
    the (possibly contracted) graph. Returns (weight, tree index, node) of
    the lexicographically least minimizer, or (BIG, -1, -1) if no candidate.
    """
    T = trees.shape[0]
    m = eu.shape[0]
    deg = np.zeros(n, np.int64)
    for i in range(m):
        deg[eu[i]] += ew[i]
        deg[ev[i]] += ew[i]

    head = np.empty(n, np.int64)
    nxt = np.empty(2 * (n - 1), np.int64)
    dest = np.empty(2 * (n - 1), np.int64)
    aeidx = np.empty(2 * (n - 1), np.int64)
    par = np.empty(n, np.int64)
    pedge = np.empty(n, np.int64)
    depth = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    dd = np.empty(n, np.int64)
    rd = np.empty(n, np.int64)

    best_w = BIG
    best_t = np.int64(-1)
    best_v = np.int64(-1)

    for t in range(T):
        for v in range(n):
            head[v] = -1
        for j in range(n - 1):
            e = trees[t, j]
            u = eu[e]
            v = ev[e]
            s = 2 * j
            dest[s] = v
            aeidx[s] = e
            nxt[s] = head[u]
            head[u] = s
            s = 2 * j + 1
            dest[s] = u
            aeidx[s] = e
            nxt[s] = head[v]
            head[v] = s
        # BFS from root; par == -2 marks unvisited
        for v in range(n):
            par[v] = -2
        par[root] = -1
        pedge[root] = -1
        depth[root] = 0
        order[0] = root
        size = 1
        idx = 0
        while idx < size:
            u = order[idx]
            idx += 1
            s = head[u]
            while s != -1:
                v = dest[s]
                if par[v] == -2:
                    par[v] = u
                    pedge[v] = aeidx[s]
                    depth[v] = depth[u] + 1
                    order[size] = v
                    size += 1
                s = nxt[s]
        # subtree degree sums
        for v in range(n):
            dd[v] = deg[v]
            rd[v] = 0
        # rho at LCAs
        for i in range(m):
            a = eu[i]
            b = ev[i]
            while depth[a] > depth[b]:
                a = par[a]
            while depth[b] > depth[a]:
                b = par[b]
            while a != b:
                a = par[a]
                b = par[b]
            rd[a] += ew[i]
        for oi in range(n - 1, 0, -1):
            v = order[oi]
            dd[par[v]] += dd[v]
            rd[par[v]] += rd[v]
        for oi in range(n - 1, 0, -1):
            v = order[oi]
            if not edge_valid[pedge[v]]:
                continue
            w = dd[v] - 2 * rd[v]
            if w < best_w or (w == best_w and (t < best_t or (t == best_t and v < best_v))):
                best_w = w
                best_t = t
                best_v = v
    return best_w, best_t, best_v
