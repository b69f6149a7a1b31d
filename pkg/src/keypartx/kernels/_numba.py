"""numba-compiled kernels. Same signatures and results as ``_numpy``."""
import numpy as np
from numba import njit


@njit(cache=True)
def osa_distances(query, words, lengths, max_dist):
    """Optimal-string-alignment distance from ``query`` to each padded row of ``words``.

    Distances above ``max_dist`` are reported as ``max_dist + 1``.
    """
    n = words.shape[0]
    lq = query.shape[0]
    out = np.empty(n, dtype=np.int32)
    width = words.shape[1] + 1
    prev2 = np.empty(width, dtype=np.int32)
    prev = np.empty(width, dtype=np.int32)
    cur = np.empty(width, dtype=np.int32)
    for k in range(n):
        lw = lengths[k]
        if abs(lw - lq) > max_dist:
            out[k] = max_dist + 1
            continue
        for j in range(lw + 1):
            prev[j] = j
        too_far = False
        for i in range(1, lq + 1):
            cur[0] = i
            row_min = i
            qi = query[i - 1]
            for j in range(1, lw + 1):
                cost = 0 if words[k, j - 1] == qi else 1
                d = prev[j] + 1
                if cur[j - 1] + 1 < d:
                    d = cur[j - 1] + 1
                if prev[j - 1] + cost < d:
                    d = prev[j - 1] + cost
                if i > 1 and j > 1 and qi == words[k, j - 2] and query[i - 2] == words[k, j - 1]:
                    if prev2[j - 2] + 1 < d:
                        d = prev2[j - 2] + 1
                cur[j] = d
                if d < row_min:
                    row_min = d
            if row_min > max_dist:
                too_far = True
                break
            for j in range(lw + 1):
                prev2[j] = prev[j]
                prev[j] = cur[j]
        if too_far:
            out[k] = max_dist + 1
        else:
            d = prev[lw]
            out[k] = d if d <= max_dist else max_dist + 1
    return out


@njit(cache=True)
def core_mask(indptr, indices, k):
    """Nodes surviving iterative removal of nodes with fewer than ``k`` neighbours."""
    n = indptr.shape[0] - 1
    deg = np.empty(n, dtype=np.int64)
    alive = np.ones(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] < k:
            alive[v] = False
            queue[tail] = v
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if alive[u]:
                deg[u] -= 1
                if deg[u] < k:
                    alive[u] = False
                    queue[tail] = u
                    tail += 1
    return alive


@njit(cache=True)
def move_nodes(indptr, indices, weights, k_out, k_in, m, gamma, membership, order, tol):
    """Queue-based local moving for directed modularity.

    ``weights`` are symmetrised (A_ij + A_ji); self-loops are skipped. Community
    ids live in [0, n). Returns the number of node moves made; ``membership``
    is updated in place.
    """
    n = k_out.shape[0]
    scale = gamma / m
    c_out = np.zeros(n)
    c_in = np.zeros(n)
    c_size = np.zeros(n, dtype=np.int64)
    for v in range(n):
        c = membership[v]
        c_out[c] += k_out[v]
        c_in[c] += k_in[v]
        c_size[c] += 1
    empty = np.empty(n, dtype=np.int64)
    n_empty = 0
    for c in range(n - 1, -1, -1):
        if c_size[c] == 0:
            empty[n_empty] = c
            n_empty += 1

    queue = np.empty(n, dtype=np.int64)
    in_queue = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        queue[i] = order[i]
        in_queue[order[i]] = True
    head = 0
    count = n

    w_to = np.zeros(n)
    touched = np.empty(n + 1, dtype=np.int64)
    moves = 0
    while count > 0:
        v = queue[head]
        head = (head + 1) % n
        count -= 1
        in_queue[v] = False

        old = membership[v]
        c_out[old] -= k_out[v]
        c_in[old] -= k_in[v]
        c_size[old] -= 1

        n_touched = 0
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if u == v:
                continue
            c = membership[u]
            if w_to[c] == 0.0:
                touched[n_touched] = c
                n_touched += 1
            w_to[c] += weights[e]
        has_old = False
        for t in range(n_touched):
            if touched[t] == old:
                has_old = True
        if not has_old:
            touched[n_touched] = old
            n_touched += 1
        if c_size[old] > 0 and n_empty > 0:
            touched[n_touched] = empty[n_empty - 1]
            n_touched += 1
        cand = np.sort(touched[:n_touched])

        best = old
        best_gain = w_to[old] - scale * (k_out[v] * c_in[old] + k_in[v] * c_out[old])
        for t in range(n_touched):
            c = cand[t]
            if c == old:
                continue
            g = w_to[c] - scale * (k_out[v] * c_in[c] + k_in[v] * c_out[c])
            if g > best_gain + tol:
                best = c
                best_gain = g
        for t in range(n_touched):
            w_to[cand[t]] = 0.0

        if best != old and c_size[best] == 0:
            n_empty -= 1
        membership[v] = best
        c_out[best] += k_out[v]
        c_in[best] += k_in[v]
        c_size[best] += 1
        if c_size[old] == 0:
            empty[n_empty] = old
            n_empty += 1
            # keep the stack's top as the lowest free id
            j = n_empty - 1
            while j > 0 and empty[j] > empty[j - 1]:
                tmp = empty[j]
                empty[j] = empty[j - 1]
                empty[j - 1] = tmp
                j -= 1

        if best != old:
            moves += 1
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if u != v and not in_queue[u] and membership[u] != best:
                    queue[(head + count) % n] = u
                    count += 1
                    in_queue[u] = True
    return moves


@njit(cache=True)
def refine_nodes(indptr, indices, weights, k_out, k_in, m, gamma, membership, order, tol):
    """Greedy refinement inside each community of ``membership``.

    Starts from singletons; a singleton node that is well connected to its
    community merges into the well-connected sub-community with the largest
    strictly positive gain. Returns the refined membership.
    """
    n = k_out.shape[0]
    scale = gamma / m
    S_out = np.zeros(n)
    S_in = np.zeros(n)
    for v in range(n):
        S_out[membership[v]] += k_out[v]
        S_in[membership[v]] += k_in[v]
    refined = np.arange(n)
    r_out = k_out.copy()
    r_in = k_in.copy()
    r_size = np.ones(n, dtype=np.int64)
    # weight between sub-community r and the rest of its community
    ext = np.zeros(n)
    for v in range(n):
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if u != v and membership[u] == membership[v]:
                ext[v] += weights[e]

    w_to = np.zeros(n)
    touched = np.empty(n, dtype=np.int64)
    for idx in range(n):
        v = order[idx]
        r = refined[v]
        if r_size[r] != 1:
            continue
        s = membership[v]
        need = scale * (k_out[v] * (S_in[s] - k_in[v]) + k_in[v] * (S_out[s] - k_out[v]))
        if ext[r] < need - tol:
            continue
        n_touched = 0
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if u == v or membership[u] != s:
                continue
            c = refined[u]
            if w_to[c] == 0.0:
                touched[n_touched] = c
                n_touched += 1
            w_to[c] += weights[e]
        cand = np.sort(touched[:n_touched])
        best = r
        best_gain = 0.0
        for t in range(n_touched):
            c = cand[t]
            need_c = scale * (r_out[c] * (S_in[s] - r_in[c]) + r_in[c] * (S_out[s] - r_out[c]))
            if ext[c] < need_c - tol:
                continue
            g = w_to[c] - scale * (k_out[v] * r_in[c] + k_in[v] * r_out[c])
            if g > best_gain + tol:
                best = c
                best_gain = g
        if best != r:
            ext[best] = ext[best] + ext[r] - 2.0 * w_to[best]
            refined[v] = best
            r_out[best] += k_out[v]
            r_in[best] += k_in[v]
            r_size[best] += 1
            r_size[r] = 0
        for t in range(n_touched):
            w_to[cand[t]] = 0.0
    return refined
