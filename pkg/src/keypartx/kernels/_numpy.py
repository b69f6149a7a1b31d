"""Pure-numpy fallbacks for the kernels in ``_numba``.

Each function matches its numba twin exactly (same visiting order, same tie
rules, same accumulation order), so either backend gives identical output.
"""
import numpy as np


def osa_distances(query, words, lengths, max_dist):
    n, width = words.shape
    lq = len(query)
    out = np.full(n, max_dist + 1, dtype=np.int32)
    sel = np.flatnonzero(np.abs(lengths - lq) <= max_dist)
    if len(sel) == 0:
        return out
    W = words[sel]
    L = lengths[sel]
    m = int(L.max())
    cols = np.arange(m + 1, dtype=np.int32)
    prev = np.broadcast_to(cols, (len(sel), m + 1)).copy()
    prev2 = prev.copy()
    for i in range(1, lq + 1):
        qi = query[i - 1]
        cur = np.empty_like(prev)
        cur[:, 0] = i
        for j in range(1, m + 1):
            cost = (W[:, j - 1] != qi).astype(np.int32)
            d = np.minimum(prev[:, j] + 1, cur[:, j - 1] + 1)
            d = np.minimum(d, prev[:, j - 1] + cost)
            if i > 1 and j > 1:
                tr = (W[:, j - 2] == qi) & (W[:, j - 1] == query[i - 2])
                d = np.where(tr, np.minimum(d, prev2[:, j - 2] + 1), d)
            cur[:, j] = d
        prev2, prev = prev, cur
    d = prev[np.arange(len(sel)), L]
    out[sel] = np.where(d <= max_dist, d, max_dist + 1)
    return out


def core_mask(indptr, indices, k):
    n = len(indptr) - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    alive = np.ones(n, dtype=bool)
    while True:
        live = alive[rows] & alive[indices]
        deg = np.bincount(rows[live], minlength=n)
        drop = alive & (deg < k)
        if not drop.any():
            return alive
        alive &= ~drop


def _neighbour_weights(indptr, indices, weights, v, label):
    """Summed edge weight from ``v`` to each neighbouring label, labels ascending."""
    s, e = indptr[v], indptr[v + 1]
    nb = indices[s:e]
    keep = nb != v
    labs, inv = np.unique(label[nb[keep]], return_inverse=True)
    return labs, np.bincount(inv, weights=weights[s:e][keep], minlength=len(labs))


def move_nodes(indptr, indices, weights, k_out, k_in, m, gamma, membership, order, tol):
    n = len(k_out)
    scale = gamma / m
    c_out = np.bincount(membership, weights=k_out, minlength=n)
    c_in = np.bincount(membership, weights=k_in, minlength=n)
    c_size = np.bincount(membership, minlength=n)
    queue = list(order)
    in_queue = np.ones(n, dtype=bool)
    head = 0
    moves = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        in_queue[v] = False
        old = membership[v]
        c_out[old] -= k_out[v]
        c_in[old] -= k_in[v]
        c_size[old] -= 1

        labs, w = _neighbour_weights(indptr, indices, weights, v, membership)
        w_to = dict(zip(labs.tolist(), w.tolist()))
        cand = set(w_to) | {old}
        if c_size[old] > 0:
            free = np.flatnonzero(c_size == 0)
            if len(free):
                cand.add(int(free[0]))

        def gain(c):
            return w_to.get(c, 0.0) - scale * (k_out[v] * c_in[c] + k_in[v] * c_out[c])

        best, best_gain = old, gain(old)
        for c in sorted(cand):
            if c == old:
                continue
            g = gain(c)
            if g > best_gain + tol:
                best, best_gain = c, g

        membership[v] = best
        c_out[best] += k_out[v]
        c_in[best] += k_in[v]
        c_size[best] += 1
        if best != old:
            moves += 1
            nb = indices[indptr[v]:indptr[v + 1]]
            for u in nb[(nb != v) & ~in_queue[nb] & (membership[nb] != best)]:
                if not in_queue[u]:
                    queue.append(int(u))
                    in_queue[u] = True
    return moves


def refine_nodes(indptr, indices, weights, k_out, k_in, m, gamma, membership, order, tol):
    n = len(k_out)
    scale = gamma / m
    S_out = np.bincount(membership, weights=k_out, minlength=n)
    S_in = np.bincount(membership, weights=k_in, minlength=n)
    refined = np.arange(n)
    r_out = k_out.astype(float).copy()
    r_in = k_in.astype(float).copy()
    r_size = np.ones(n, dtype=np.int64)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    same = (membership[rows] == membership[indices]) & (rows != indices)
    ext = np.zeros(n)
    np.add.at(ext, rows[same], weights[same])

    for v in order:
        r = refined[v]
        if r_size[r] != 1:
            continue
        s = membership[v]
        need = scale * (k_out[v] * (S_in[s] - k_in[v]) + k_in[v] * (S_out[s] - k_out[v]))
        if ext[r] < need - tol:
            continue
        st, en = indptr[v], indptr[v + 1]
        nb = indices[st:en]
        keep = (nb != v) & (membership[nb] == s)
        if not keep.any():
            continue
        labs, inv = np.unique(refined[nb[keep]], return_inverse=True)
        w = np.bincount(inv, weights=weights[st:en][keep], minlength=len(labs))
        best, best_gain, best_w = r, 0.0, 0.0
        for c, wc in zip(labs, w):
            need_c = scale * (r_out[c] * (S_in[s] - r_in[c]) + r_in[c] * (S_out[s] - r_out[c]))
            if ext[c] < need_c - tol:
                continue
            g = wc - scale * (k_out[v] * r_in[c] + k_in[v] * r_out[c])
            if g > best_gain + tol:
                best, best_gain, best_w = c, g, wc
        if best != r:
            ext[best] = ext[best] + ext[r] - 2.0 * best_w
            refined[v] = best
            r_out[best] += k_out[v]
            r_in[best] += k_in[v]
            r_size[best] += 1
            r_size[r] = 0
    return refined
