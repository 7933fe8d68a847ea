# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures and results."""

from libc.stdlib cimport malloc, free

NAME = "cython"


def first_rainbow_triangle(const int[::1] colours, const int[:, ::1] pair_line,
                           const int[:, ::1] line_pts, int n_points):
    cdef int a, b, c, t, ca, cb, cc, lid
    cdef int L = line_pts.shape[1]
    for a in range(n_points):
        ca = colours[a]
        for b in range(a + 1, n_points):
            cb = colours[b]
            if cb == ca:
                continue
            lid = pair_line[a, b]
            for t in range(L):
                c = line_pts[lid, t]
                if c > b:
                    cc = colours[c]
                    if cc != ca and cc != cb:
                        return (a, b, c)
    return None


def is_decomposer(const int[::1] colours, const unsigned char[::1] in_flat,
                  const int[::1] flat_pts, const int[:, ::1] pair_line,
                  const int[:, ::1] line_pts, int n_points):
    cdef int e, i, t, x, ce, lid
    cdef int L = line_pts.shape[1]
    cdef int nf = flat_pts.shape[0]
    for e in range(n_points):
        if in_flat[e]:
            continue
        ce = colours[e]
        for i in range(nf):
            lid = pair_line[e, flat_pts[i]]
            for t in range(L):
                x = line_pts[lid, t]
                if not in_flat[x] and colours[x] != ce:
                    return False
    return True


def closure(const int[::1] points, const int[:, ::1] pair_line,
            const int[:, ::1] line_pts, int n_points):
    cdef int L = line_pts.shape[1]
    cdef int np_ = points.shape[0]
    cdef unsigned char *in_flat = <unsigned char *> malloc(n_points)
    cdef int *flat = <int *> malloc((n_points + 1) * sizeof(int))
    cdef int size = 0, rank = 0, i, j, t, p, x, old, lid
    if in_flat == NULL or flat == NULL:
        free(in_flat)
        free(flat)
        raise MemoryError()
    try:
        for i in range(n_points):
            in_flat[i] = 0
        for i in range(np_):
            p = points[i]
            if in_flat[p]:
                continue
            rank += 1
            old = size
            in_flat[p] = 1
            flat[size] = p
            size += 1
            for j in range(old):
                lid = pair_line[p, flat[j]]
                for t in range(L):
                    x = line_pts[lid, t]
                    if not in_flat[x]:
                        in_flat[x] = 1
                        flat[size] = x
                        size += 1
        out = [i for i in range(n_points) if in_flat[i]]
    finally:
        free(in_flat)
        free(flat)
    return out, rank


cdef inline int _max_rank(int k, long long m, int q):
    cdef int d = k
    cdef long long qd = 1
    cdef int i
    for i in range(k):
        qd *= q
    cdef long long limit = m * (q - 1) + qd
    while qd * q <= limit:
        qd *= q
        d += 1
    return d


cdef class _OmegaSearch:
    cdef const int[:, ::1] pair_line
    cdef const int[:, ::1] line_pts
    cdef const unsigned char[::1] member
    cdef int n_points, q, L, best, best_len, flat_len, stop_at
    cdef int *flat
    cdef int *best_flat
    cdef unsigned char *in_flat

    def __cinit__(self, const unsigned char[::1] member, const int[:, ::1] pair_line,
                  const int[:, ::1] line_pts, int n_points, int q):
        self.member = member
        self.pair_line = pair_line
        self.line_pts = line_pts
        self.n_points = n_points
        self.q = q
        self.L = line_pts.shape[1]
        self.best = 0
        self.best_len = 0
        self.flat_len = 0
        self.flat = <int *> malloc((n_points + 1) * sizeof(int))
        self.best_flat = <int *> malloc((n_points + 1) * sizeof(int))
        self.in_flat = <unsigned char *> malloc(n_points + 1)
        if self.flat == NULL or self.best_flat == NULL or self.in_flat == NULL:
            raise MemoryError()
        cdef int i
        for i in range(n_points):
            self.in_flat[i] = 0

    def __dealloc__(self):
        free(self.flat)
        free(self.best_flat)
        free(self.in_flat)

    cdef void rec(self, int k, int *cand, int ncand) noexcept:
        cdef int i, i2, j, t, v, w, u, x, start, m, ok, lid, canonical
        cdef int *nxt
        if k > self.best:
            self.best = k
            self.best_len = self.flat_len
            for j in range(self.flat_len):
                self.best_flat[j] = self.flat[j]
        if ncand == 0:
            return
        nxt = <int *> malloc(ncand * sizeof(int))
        if nxt == NULL:
            return
        for i in range(ncand):
            if self.best >= self.stop_at or _max_rank(k, ncand - i, self.q) <= self.best:
                break
            v = cand[i]
            start = self.flat_len
            self.in_flat[v] = 1
            self.flat[self.flat_len] = v
            self.flat_len += 1
            canonical = 1
            for j in range(start):
                lid = self.pair_line[v, self.flat[j]]
                for t in range(self.L):
                    x = self.line_pts[lid, t]
                    if not self.in_flat[x]:
                        self.in_flat[x] = 1
                        self.flat[self.flat_len] = x
                        self.flat_len += 1
                        if x < v:
                            canonical = 0
            if not canonical:
                for j in range(start, self.flat_len):
                    self.in_flat[self.flat[j]] = 0
                self.flat_len = start
                continue
            m = 0
            for i2 in range(i + 1, ncand):
                w = cand[i2]
                if self.in_flat[w]:
                    continue
                ok = 1
                for j in range(start, self.flat_len):
                    u = self.flat[j]
                    lid = self.pair_line[w, u]
                    for t in range(self.L):
                        if not self.member[self.line_pts[lid, t]]:
                            ok = 0
                            break
                    if not ok:
                        break
                if ok:
                    nxt[m] = w
                    m += 1
            self.rec(k + 1, nxt, m)
            for j in range(start, self.flat_len):
                self.in_flat[self.flat[j]] = 0
            self.flat_len = start
        free(nxt)

    def run(self):
        cdef int i, n = 0
        cdef int *cand = <int *> malloc((self.n_points + 1) * sizeof(int))
        if cand == NULL:
            raise MemoryError()
        try:
            for i in range(self.n_points):
                if self.member[i]:
                    cand[n] = i
                    n += 1
            if n == 0:
                return 0, []
            self.stop_at = _max_rank(0, n, self.q)
            self.rec(0, cand, n)
        finally:
            free(cand)
        return self.best, sorted([self.best_flat[i] for i in range(self.best_len)])


def omega(const unsigned char[::1] member, const int[:, ::1] pair_line,
          const int[:, ::1] line_pts, int n_points, int q):
    return _OmegaSearch(member, pair_line, line_pts, n_points, q).run()


def lift_project(const int[::1] targets, const int[::1] f1_pts,
                 const unsigned char[::1] in_f2, const int[:, ::1] pair_line,
                 const int[:, ::1] line_pts):
    cdef int i, j, t, e, x, found, lid
    cdef int L = line_pts.shape[1]
    cdef int nt = targets.shape[0]
    cdef int nf = f1_pts.shape[0]
    out = []
    for i in range(nt):
        e = targets[i]
        if in_f2[e]:
            out.append(e)
            continue
        found = -1
        for j in range(nf):
            lid = pair_line[e, f1_pts[j]]
            for t in range(L):
                x = line_pts[lid, t]
                if in_f2[x]:
                    found = x
                    break
            if found >= 0:
                break
        out.append(found)
    return out
