"""Pure-Python hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Both operate on the line-incidence tables of a geometry: ``pair_line[a][b]``
is the id of the line through points a != b and ``line_pts[lid]`` lists its
q + 1 points in increasing order.
"""

from __future__ import annotations

NAME = "python"


def first_rainbow_triangle(colours, pair_line, line_pts, n_points):
    for a in range(n_points):
        ca = colours[a]
        row = pair_line[a]
        for b in range(a + 1, n_points):
            cb = colours[b]
            if cb == ca:
                continue
            for c in line_pts[row[b]]:
                if c > b:
                    cc = colours[c]
                    if cc != ca and cc != cb:
                        return (a, b, c)
    return None


def is_decomposer(colours, in_flat, flat_pts, pair_line, line_pts, n_points):
    for e in range(n_points):
        if in_flat[e]:
            continue
        ce = colours[e]
        row = pair_line[e]
        for f in flat_pts:
            for x in line_pts[row[f]]:
                if not in_flat[x] and colours[x] != ce:
                    return False
    return True


def closure(points, pair_line, line_pts, n_points):
    in_flat = bytearray(n_points)
    flat: list[int] = []
    rank = 0
    for p in points:
        if in_flat[p]:
            continue
        rank += 1
        in_flat[p] = 1
        new = [p]
        row = pair_line[p]
        for f in flat:
            for x in line_pts[row[f]]:
                if not in_flat[x]:
                    in_flat[x] = 1
                    new.append(x)
        flat.extend(new)
    flat.sort()
    return flat, rank


def _max_rank(k, m, q):
    # largest d with (q^d - q^k) / (q - 1) <= m
    d = k
    qd = q**k
    limit = m * (q - 1) + qd
    while qd * q <= limit:
        qd *= q
        d += 1
    return d


def omega(member, pair_line, line_pts, n_points, q):
    """Rank of the largest flat inside ``{p : member[p]}`` and one such flat.

    Branch and bound over flats: extending a flat S by a candidate v is
    allowed only if cl(S + v) stays inside the set, and only if v is the
    smallest point of cl(S + v) - S, so every flat is generated once (from its
    greedy basis). Candidates already tried at a node are dropped from later
    siblings.
    """
    cand = [p for p in range(n_points) if member[p]]
    if not cand:
        return 0, []
    stop_at = _max_rank(0, len(cand), q)
    in_flat = bytearray(n_points)
    flat: list[int] = []
    best = [0, []]

    def rec(k, cand):
        if k > best[0]:
            best[0] = k
            best[1] = list(flat)
        ncand = len(cand)
        for i in range(ncand):
            if best[0] >= stop_at or _max_rank(k, ncand - i, q) <= best[0]:
                return
            v = cand[i]
            start = len(flat)
            in_flat[v] = 1
            flat.append(v)
            row = pair_line[v]
            canonical = True
            for j in range(start):
                for x in line_pts[row[flat[j]]]:
                    if not in_flat[x]:
                        in_flat[x] = 1
                        flat.append(x)
                        if x < v:
                            canonical = False
            layer = flat[start:]
            if not canonical:
                # this flat is generated from its smallest new point instead
                for x in layer:
                    in_flat[x] = 0
                del flat[start:]
                continue
            nxt = []
            for w in cand[i + 1:]:
                if in_flat[w]:
                    continue
                roww = pair_line[w]
                ok = True
                for u in layer:
                    for x in line_pts[roww[u]]:
                        if not member[x]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    nxt.append(w)
            rec(k + 1, nxt)
            for x in layer:
                in_flat[x] = 0
            del flat[start:]

    rec(0, cand)
    return best[0], sorted(best[1])


def lift_project(targets, f1_pts, in_f2, pair_line, line_pts):
    """For each target e, the unique point of F2 on cl(F1 + e), or -1."""
    out = []
    for e in targets:
        if in_f2[e]:
            out.append(e)
            continue
        row = pair_line[e]
        found = -1
        for f in f1_pts:
            for x in line_pts[row[f]]:
                if in_f2[x]:
                    found = x
                    break
            if found >= 0:
                break
        out.append(found)
    return out
