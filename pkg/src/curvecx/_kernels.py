"""Pure-Python versions of the inner loops.

``curvecx.kernels`` re-exports either these or the compiled equivalents from
``curvecx._ckernels``; both must return identical values.

Faces are passed as flat sequences ``(e0, d0, e1, d1, e2, d2)``.
"""


def edge_order(faces, n_edges):
    """Visit order for the edges that closes faces as early as possible."""
    order = []
    seen = set()
    for face in faces:
        for k in range(3):
            e = face[2 * k]
            if e not in seen:
                seen.add(e)
                order.append(e)
    for e in range(n_edges):
        if e not in seen:
            order.append(e)
    return order


def enumerate_weights(faces, n_edges, bound):
    """All non-negative weight vectors with total at most ``bound`` satisfying the
    matching conditions in every face. Sorted lexicographically."""
    order = edge_order(faces, n_edges)
    rank = {e: i for i, e in enumerate(order)}
    # for each position in the order: faces completed there, given as the two
    # already-assigned edges
    closing = [[] for _ in range(n_edges)]
    for face in faces:
        es = [face[0], face[2], face[4]]
        last = max(es, key=rank.__getitem__)
        others = [e for e in es if e != last]
        if len(others) != 2:
            raise ValueError("face repeats an edge")
        closing[rank[last]].append(others)
    w = [0] * n_edges
    out = []

    def rec(pos, remaining):
        if pos == n_edges:
            out.append(tuple(w))
            return
        lo, hi, parity = 0, remaining, -1
        for a, b in closing[pos]:
            x, y = w[a], w[b]
            lo = max(lo, abs(x - y))
            hi = min(hi, x + y)
            p = (x + y) & 1
            if parity == -1:
                parity = p
            elif parity != p:
                return
        if lo > hi:
            return
        e = order[pos]
        if parity == -1:
            values = range(lo, hi + 1)
        else:
            start = lo if (lo & 1) == parity else lo + 1
            values = range(start, hi + 1, 2)
        for v in values:
            w[e] = v
            rec(pos + 1, remaining - v)
        w[e] = 0

    rec(0, bound)
    out.sort()
    return out


def corner_counts(faces, weights):
    """Per face, the three corner-arc counts ``n_k = (w_k + w_{k+1} - w_{k+2}) / 2``.

    Corner ``k`` joins slot ``k`` to slot ``k + 1``. Returns ``None`` if a
    matching condition fails.
    """
    out = []
    for face in faces:
        a, b, c = weights[face[0]], weights[face[2]], weights[face[4]]
        if (a + b + c) & 1:
            return None
        n0 = (a + b - c) // 2
        n1 = (b + c - a) // 2
        n2 = (c + a - b) // 2
        if n0 < 0 or n1 < 0 or n2 < 0:
            return None
        out.append((n0, n1, n2))
    return out


def trace_components(faces, weights):
    """Follow every strand of a valid normal curve.

    Returns one list per component; each entry describes one passage through a
    face as ``(face, corner, sense, slot_in, pos_in, slot_out, pos_out)`` where
    positions count along the slot in the face's traversal direction and
    ``sense`` is ``+1`` when the arc is run from slot ``corner`` to slot
    ``corner + 1``. Each component starts at its smallest ``(edge, index)``
    point, entering the face where that edge has direction ``+1``.
    """
    counts = corner_counts(faces, weights)
    if counts is None:
        raise ValueError("weights violate the matching conditions")
    n_faces = len(faces)
    n_edges = len(weights)
    plus = [None] * n_edges
    minus = [None] * n_edges
    for f in range(n_faces):
        for k in range(3):
            e, d = faces[f][2 * k], faces[f][2 * k + 1]
            if d == 1:
                plus[e] = (f, k)
            else:
                minus[e] = (f, k)
    seen = [bytearray(weights[e]) for e in range(n_edges)]
    comps = []
    for e0 in range(n_edges):
        for i0 in range(weights[e0]):
            if seen[e0][i0]:
                continue
            f, k = plus[e0]
            t = i0
            steps = []
            while True:
                face = faces[f]
                e, d = face[2 * k], face[2 * k + 1]
                we = weights[e]
                idx = t if d == 1 else we - 1 - t
                if seen[e][idx]:
                    break
                seen[e][idx] = 1
                n = counts[f]
                km1 = (k + 2) % 3
                if t < n[km1]:
                    corner = km1
                    depth = t
                    k2 = km1
                    t2 = weights[face[2 * k2]] - 1 - depth
                    sense = -1
                else:
                    corner = k
                    depth = we - 1 - t
                    k2 = (k + 1) % 3
                    t2 = depth
                    sense = 1
                steps.append((f, corner, sense, k, t, k2, t2))
                e2, d2 = face[2 * k2], face[2 * k2 + 1]
                idx2 = t2 if d2 == 1 else weights[e2] - 1 - t2
                nf, nk = minus[e2] if d2 == 1 else plus[e2]
                nd = faces[nf][2 * nk + 1]
                f, k = nf, nk
                t = idx2 if nd == 1 else weights[e2] - 1 - idx2
            comps.append(steps)
    return comps


def chord_crossings(P, us, ws, fams):
    """Crossings between family-0 and family-1 chords of one triangle.

    Chord ``c`` joins perimeter nodes ``us[c] -> ws[c]`` (nodes numbered
    counterclockwise, ``P`` of them). Returns ``(crossings, along)`` where
    ``crossings[x] = (a_chord, b_chord, sign)`` and ``along[c]`` lists the
    crossings met by chord ``c`` in its direction. ``sign`` is ``+1`` when the
    ``b`` chord runs from the right of the ``a`` chord to its left.
    """
    n = len(us)
    crossings = []
    keyed = [[] for _ in range(n)]
    for i in range(n):
        if fams[i] != 0:
            continue
        ua = us[i]
        wa = ws[i]
        span = (wa - ua) % P
        for j in range(n):
            if fams[j] != 1:
                continue
            ub = us[j]
            wb = ws[j]
            du = (ub - ua) % P
            dw = (wb - ua) % P
            in_u = 0 < du < span
            in_w = 0 < dw < span
            if in_u == in_w:
                continue
            x = len(crossings)
            crossings.append((i, j, 1 if in_u else -1))
            keyed[i].append((du if in_u else dw, x))
            spanb = (wb - ub) % P
            dua = (ua - ub) % P
            keyed[j].append((dua if 0 < dua < spanb else (wa - ub) % P, x))
    along = [[x for _, x in sorted(k)] for k in keyed]
    return crossings, along


def face_cycles(P, corners, us, ws, along, crossings):
    """Faces of the chord arrangement inside one triangle, outer face excluded.

    Crossing ``x`` is node ``P + x``. Each face is returned as
    ``(perimeter_starts, chord_sides)``: the perimeter nodes ``u`` whose
    segment ``u -> u + 1`` bounds the face, and ``(chord, piece, side)`` for
    every chord piece on its boundary, ``side`` being ``+1`` for the left.
    """
    n = len(us)
    seqs = []
    point_chord = {}
    for c in range(n):
        seqs.append([us[c]] + [P + x for x in along[c]] + [ws[c]])
        point_chord[us[c]] = c
        point_chord[ws[c]] = c
    rot = {}
    for i in range(P):
        nxt_i = (i + 1) % P
        prv_i = (i - 1) % P
        if i in corners:
            rot[i] = [nxt_i, prv_i]
        else:
            s = seqs[point_chord[i]]
            rot[i] = [nxt_i, s[1] if s[0] == i else s[-2], prv_i]
    for x, (i, j, _) in enumerate(crossings):
        node = P + x
        ends = []
        for c in (i, j):
            s = seqs[c]
            pos = s.index(node)
            ends.append((us[c], s[pos - 1]))
            ends.append((ws[c], s[pos + 1]))
        ends.sort()
        rot[node] = [e[1] for e in ends]
    where = {v: {m: k for k, m in enumerate(ns)} for v, ns in rot.items()}
    half = {}
    for c in range(n):
        s = seqs[c]
        for r in range(len(s) - 1):
            half[(s[r], s[r + 1])] = (c, r, 1)
            half[(s[r + 1], s[r])] = (c, r, -1)
    visited = set()
    outer = (1 % P, 0)
    faces = []
    for start_u in rot:
        for start_v in rot[start_u]:
            if (start_u, start_v) in visited:
                continue
            perim = []
            sides = []
            is_outer = False
            u, v = start_u, start_v
            while (u, v) not in visited:
                visited.add((u, v))
                if (u, v) == outer:
                    is_outer = True
                if u < P and v == (u + 1) % P:
                    perim.append(u)
                else:
                    h = half.get((u, v))
                    if h is not None:
                        sides.append(h)
                ns = rot[v]
                w = ns[(where[v][u] - 1) % len(ns)]
                u, v = v, w
            if not is_outer:
                faces.append((perim, sides))
    return faces
