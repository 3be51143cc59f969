# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the functions in ``curvecx._kernels``.

Signatures and return values match the pure-Python module exactly.
"""
from libc.stdlib cimport malloc, free


cdef inline int pmod(int a, int n) nogil:
    cdef int r = a % n
    return r + n if r < 0 else r


def enumerate_weights(faces, int n_edges, int bound):
    from curvecx._kernels import edge_order
    order = edge_order(faces, n_edges)
    rank = {e: i for i, e in enumerate(order)}
    cdef int n_faces = len(faces)
    # per position: up to n_faces closing pairs, stored flat
    cdef int *n_close = <int *> malloc(n_edges * sizeof(int))
    cdef int *close_a = <int *> malloc((n_faces + 1) * sizeof(int))
    cdef int *close_b = <int *> malloc((n_faces + 1) * sizeof(int))
    cdef int *close_start = <int *> malloc((n_edges + 1) * sizeof(int))
    cdef int *order_c = <int *> malloc(n_edges * sizeof(int))
    cdef int *w = <int *> malloc(n_edges * sizeof(int))
    cdef int *val = <int *> malloc((n_edges + 1) * sizeof(int))
    cdef int *hi_s = <int *> malloc((n_edges + 1) * sizeof(int))
    cdef int *step_s = <int *> malloc((n_edges + 1) * sizeof(int))
    cdef int *rem = <int *> malloc((n_edges + 1) * sizeof(int))
    cdef int i, k, pos, a, b, x, y, lo, hi, parity, p, e, start, m
    out = []
    try:
        buckets = [[] for _ in range(n_edges)]
        for face in faces:
            es = [face[0], face[2], face[4]]
            last = max(es, key=rank.__getitem__)
            others = [q for q in es if q != last]
            if len(others) != 2:
                raise ValueError("face repeats an edge")
            buckets[rank[last]].append(others)
        m = 0
        for i in range(n_edges):
            close_start[i] = m
            n_close[i] = len(buckets[i])
            for pair in buckets[i]:
                close_a[m] = pair[0]
                close_b[m] = pair[1]
                m += 1
            order_c[i] = order[i]
            w[i] = 0
        close_start[n_edges] = m
        # iterative depth-first search; val[pos] is the value tried at pos
        pos = 0
        rem[0] = bound
        val[0] = -1
        while pos >= 0:
            if pos == n_edges:
                out.append(tuple([w[i] for i in range(n_edges)]))
                pos -= 1
                if pos >= 0:
                    val[pos] += step_s[pos]
                continue
            if val[pos] == -1:
                # first visit: compute the admissible range
                lo = 0
                hi = rem[pos]
                parity = -1
                ok = True
                for k in range(close_start[pos], close_start[pos] + n_close[pos]):
                    x = w[close_a[k]]
                    y = w[close_b[k]]
                    if x - y > lo:
                        lo = x - y
                    if y - x > lo:
                        lo = y - x
                    if x + y < hi:
                        hi = x + y
                    p = (x + y) & 1
                    if parity == -1:
                        parity = p
                    elif parity != p:
                        ok = False
                        break
                if not ok or lo > hi:
                    w[order_c[pos]] = 0
                    val[pos] = -1
                    pos -= 1
                    if pos >= 0:
                        val[pos] += step_s[pos]
                    continue
                if parity == -1:
                    start = lo
                    step_s[pos] = 1
                else:
                    start = lo if (lo & 1) == parity else lo + 1
                    step_s[pos] = 2
                hi_s[pos] = hi
                val[pos] = start
            if val[pos] > hi_s[pos]:
                w[order_c[pos]] = 0
                val[pos] = -1
                pos -= 1
                if pos >= 0:
                    val[pos] += step_s[pos]
                continue
            w[order_c[pos]] = val[pos]
            rem[pos + 1] = rem[pos] - val[pos]
            pos += 1
            if pos < n_edges:
                val[pos] = -1
        out.sort()
        return out
    finally:
        free(n_close); free(close_a); free(close_b); free(close_start)
        free(order_c); free(w); free(val); free(hi_s); free(step_s); free(rem)


def corner_counts(faces, weights):
    from curvecx._kernels import corner_counts as cc
    return cc(faces, weights)


def trace_components(faces, weights):
    cdef int n_faces = len(faces)
    cdef int n_edges = len(weights)
    cdef int *fe = <int *> malloc(3 * n_faces * sizeof(int))
    cdef int *fd = <int *> malloc(3 * n_faces * sizeof(int))
    cdef int *cnt = <int *> malloc(3 * n_faces * sizeof(int))
    cdef int *wt = <int *> malloc(n_edges * sizeof(int))
    cdef int *plus_f = <int *> malloc(n_edges * sizeof(int))
    cdef int *plus_k = <int *> malloc(n_edges * sizeof(int))
    cdef int *minus_f = <int *> malloc(n_edges * sizeof(int))
    cdef int *minus_k = <int *> malloc(n_edges * sizeof(int))
    cdef int *offset = <int *> malloc((n_edges + 1) * sizeof(int))
    cdef char *seen = NULL
    cdef int f, k, e, d, i0, e0, t, we, idx, km1, corner, k2, t2, sense, e2, d2, idx2, nf, nk, nd
    cdef int a, b, c, total
    try:
        for f in range(n_faces):
            face = faces[f]
            for k in range(3):
                fe[3 * f + k] = face[2 * k]
                fd[3 * f + k] = face[2 * k + 1]
        total = 0
        for e in range(n_edges):
            wt[e] = weights[e]
            offset[e] = total
            total += wt[e]
        offset[n_edges] = total
        for f in range(n_faces):
            a = wt[fe[3 * f]]
            b = wt[fe[3 * f + 1]]
            c = wt[fe[3 * f + 2]]
            if (a + b + c) & 1 or a + b < c or b + c < a or c + a < b:
                raise ValueError("weights violate the matching conditions")
            cnt[3 * f] = (a + b - c) // 2
            cnt[3 * f + 1] = (b + c - a) // 2
            cnt[3 * f + 2] = (c + a - b) // 2
            for k in range(3):
                e = fe[3 * f + k]
                if fd[3 * f + k] == 1:
                    plus_f[e] = f
                    plus_k[e] = k
                else:
                    minus_f[e] = f
                    minus_k[e] = k
        seen = <char *> malloc(total + 1)
        for i0 in range(total):
            seen[i0] = 0
        comps = []
        for e0 in range(n_edges):
            for i0 in range(wt[e0]):
                if seen[offset[e0] + i0]:
                    continue
                f = plus_f[e0]
                k = plus_k[e0]
                t = i0
                steps = []
                while True:
                    e = fe[3 * f + k]
                    d = fd[3 * f + k]
                    we = wt[e]
                    idx = t if d == 1 else we - 1 - t
                    if seen[offset[e] + idx]:
                        break
                    seen[offset[e] + idx] = 1
                    km1 = (k + 2) % 3
                    if t < cnt[3 * f + km1]:
                        corner = km1
                        k2 = km1
                        t2 = wt[fe[3 * f + k2]] - 1 - t
                        sense = -1
                    else:
                        corner = k
                        k2 = (k + 1) % 3
                        t2 = we - 1 - t
                        sense = 1
                    steps.append((f, corner, sense, k, t, k2, t2))
                    e2 = fe[3 * f + k2]
                    d2 = fd[3 * f + k2]
                    idx2 = t2 if d2 == 1 else wt[e2] - 1 - t2
                    if d2 == 1:
                        nf = minus_f[e2]
                        nk = minus_k[e2]
                    else:
                        nf = plus_f[e2]
                        nk = plus_k[e2]
                    nd = fd[3 * nf + nk]
                    f = nf
                    k = nk
                    t = idx2 if nd == 1 else wt[e2] - 1 - idx2
                comps.append(steps)
        return comps
    finally:
        free(fe); free(fd); free(cnt); free(wt); free(plus_f); free(plus_k)
        free(minus_f); free(minus_k); free(offset)
        if seen != NULL:
            free(seen)


def chord_crossings(int P, us, ws, fams):
    cdef int n = len(us)
    cdef int i, j, ua, wa, ub, wb, span, spanb, du, dw, dua, x
    cdef bint in_u, in_w
    cdef int *cu = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cw = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cf = <int *> malloc((n + 1) * sizeof(int))
    crossings = []
    keyed = [[] for _ in range(n)]
    try:
        for i in range(n):
            cu[i] = us[i]
            cw[i] = ws[i]
            cf[i] = fams[i]
        for i in range(n):
            if cf[i] != 0:
                continue
            ua = cu[i]
            wa = cw[i]
            span = pmod(wa - ua, P)
            for j in range(n):
                if cf[j] != 1:
                    continue
                ub = cu[j]
                wb = cw[j]
                du = pmod(ub - ua, P)
                dw = pmod(wb - ua, P)
                in_u = 0 < du < span
                in_w = 0 < dw < span
                if in_u == in_w:
                    continue
                x = len(crossings)
                crossings.append((i, j, 1 if in_u else -1))
                keyed[i].append((du if in_u else dw, x))
                spanb = pmod(wb - ub, P)
                dua = pmod(ua - ub, P)
                keyed[j].append((dua if 0 < dua < spanb else pmod(wa - ub, P), x))
        along = [[x for _, x in sorted(k)] for k in keyed]
        return crossings, along
    finally:
        free(cu); free(cw); free(cf)


def face_cycles(int P, corners, us, ws, along, crossings):
    cdef int n = len(us)
    cdef int X = len(crossings)
    cdef int N = P + X
    cdef int *deg = <int *> malloc(N * sizeof(int))
    cdef int *nb = <int *> malloc(4 * N * sizeof(int))
    cdef int *lab_c = <int *> malloc(4 * N * sizeof(int))
    cdef int *lab_r = <int *> malloc(4 * N * sizeof(int))
    cdef int *lab_s = <int *> malloc(4 * N * sizeof(int))
    cdef char *visited = <char *> malloc(4 * N + 1)
    cdef int *pc = <int *> malloc((P + 1) * sizeof(int))
    cdef int i, c, r, x, k, node, u, v, w, idx, kk, a0, b0, start_u, start_k, dv, pos
    cdef int c0 = corners[0], c1 = corners[1], c2 = corners[2]
    cdef bint is_outer
    try:
        seqs = []
        for c in range(n):
            seqs.append([us[c]] + [P + x for x in along[c]] + [ws[c]])
        for i in range(P):
            pc[i] = -1
        for c in range(n):
            pc[<int> us[c]] = c
            pc[<int> ws[c]] = c
        for i in range(4 * N):
            lab_c[i] = -1
            visited[i] = 0
        for i in range(P):
            node = i
            if i == c0 or i == c1 or i == c2:
                deg[i] = 2
                nb[4 * i] = (i + 1) % P
                nb[4 * i + 1] = pmod(i - 1, P)
            else:
                s = seqs[pc[i]]
                deg[i] = 3
                nb[4 * i] = (i + 1) % P
                nb[4 * i + 1] = s[1] if s[0] == i else s[len(s) - 2]
                nb[4 * i + 2] = pmod(i - 1, P)
        for x in range(X):
            i_ch, j_ch, _ = crossings[x]
            node = P + x
            ends = []
            for c in (i_ch, j_ch):
                s = seqs[c]
                pos = s.index(node)
                ends.append((us[c], s[pos - 1]))
                ends.append((ws[c], s[pos + 1]))
            ends.sort()
            deg[node] = 4
            for k in range(4):
                nb[4 * node + k] = ends[k][1]
        # label chord half-edges
        for c in range(n):
            s = seqs[c]
            for r in range(len(s) - 1):
                a0 = s[r]
                b0 = s[r + 1]
                for k in range(deg[a0]):
                    if nb[4 * a0 + k] == b0:
                        lab_c[4 * a0 + k] = c
                        lab_r[4 * a0 + k] = r
                        lab_s[4 * a0 + k] = 1
                for k in range(deg[b0]):
                    if nb[4 * b0 + k] == a0:
                        lab_c[4 * b0 + k] = c
                        lab_r[4 * b0 + k] = r
                        lab_s[4 * b0 + k] = -1
        faces = []
        for start_u in range(N):
            for start_k in range(deg[start_u]):
                if visited[4 * start_u + start_k]:
                    continue
                perim = []
                sides = []
                is_outer = False
                u = start_u
                k = start_k
                while not visited[4 * u + k]:
                    visited[4 * u + k] = 1
                    v = nb[4 * u + k]
                    if u == 1 % P and v == 0:
                        is_outer = True
                    if u < P and v == (u + 1) % P:
                        perim.append(u)
                    elif lab_c[4 * u + k] >= 0:
                        sides.append((lab_c[4 * u + k], lab_r[4 * u + k], lab_s[4 * u + k]))
                    dv = deg[v]
                    idx = 0
                    for kk in range(dv):
                        if nb[4 * v + kk] == u:
                            idx = kk
                            break
                    u = v
                    k = pmod(idx - 1, dv)
                if not is_outer:
                    faces.append((perim, sides))
        return faces
    finally:
        free(deg); free(nb); free(lab_c); free(lab_r); free(lab_s); free(visited); free(pc)
