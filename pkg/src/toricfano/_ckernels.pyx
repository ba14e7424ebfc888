# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``.

Coordinates are held in C ``long long``; the dispatcher in ``kernels`` only
routes inputs here when they are small enough that no intermediate minor can
overflow.
"""

from libc.stdlib cimport malloc, free

DEF MAXD = 8
DEF MAXN = 64


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef long long _det(long long* m, int n) nogil:
    # Bareiss on a row-major n x n scratch buffer (destroyed)
    cdef long long prev = 1, p, arc, tmp
    cdef int sign = 1, c, r, j
    if n == 0:
        return 1
    for c in range(n - 1):
        if m[c * n + c] == 0:
            r = c + 1
            while r < n and m[r * n + c] == 0:
                r += 1
            if r == n:
                return 0
            for j in range(n):
                tmp = m[c * n + j]
                m[c * n + j] = m[r * n + j]
                m[r * n + j] = tmp
            sign = -sign
        p = m[c * n + c]
        for r in range(c + 1, n):
            arc = m[r * n + c]
            for j in range(c + 1, n):
                m[r * n + j] = (m[r * n + j] * p - arc * m[c * n + j]) // prev
        prev = p
    return sign * m[n * n - 1]


cdef long long _det_rows(long long* pts, int d, int* idx) nogil:
    cdef long long buf[MAXD * MAXD]
    cdef int i, j
    for i in range(d):
        for j in range(d):
            buf[i * d + j] = pts[idx[i] * d + j]
    return _det(buf, d)


cdef int _normal(long long* pts, int d, int* idx, long long* out) nogil:
    # generalized cross product of the d-1 edge vectors; returns 0 if degenerate
    cdef long long diffs[MAXD * MAXD]
    cdef long long buf[MAXD * MAXD]
    cdef int i, j, k, col
    cdef long long g = 0
    for i in range(d - 1):
        for j in range(d):
            diffs[i * d + j] = pts[idx[i + 1] * d + j] - pts[idx[0] * d + j]
    for j in range(d):
        for i in range(d - 1):
            col = 0
            for k in range(d):
                if k != j:
                    buf[i * (d - 1) + col] = diffs[i * d + k]
                    col += 1
        out[j] = _det(buf, d - 1)
        if j % 2 == 1:
            out[j] = -out[j]
        g = _gcd(g, out[j])
    if g == 0:
        return 0
    for j in range(d):
        out[j] //= g
    return 1


cdef inline long long _dot(long long* a, long long* b, int d) nogil:
    cdef long long s = 0
    cdef int j
    for j in range(d):
        s += a[j] * b[j]
    return s


cdef bint _next_combo(int* c, int k, int n) nogil:
    cdef int i = k - 1
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for i in range(i + 1, k):
        c[i] = c[i - 1] + 1
    return True


cdef long long* _copy_points(object points, int d, int* n_out) except NULL:
    cdef int n = len(points), i, j
    cdef long long* pts = <long long*> malloc(max(n, 1) * d * sizeof(long long))
    if pts == NULL:
        raise MemoryError()
    for i in range(n):
        p = points[i]
        for j in range(d):
            pts[i * d + j] = p[j]
    n_out[0] = n
    return pts


def facet_data(points, int d):
    cdef int n, i, j, t
    cdef long long* pts = _copy_points(points, d, &n)
    cdef int idx[MAXD]
    cdef long long nrm[MAXD]
    cdef long long c, s
    cdef bint lo, hi, dup
    found_normals = []
    out = []
    try:
        if n < d or d < 1:
            return out
        for i in range(d):
            idx[i] = i
        while True:
            if _normal(pts, d, idx, nrm):
                c = _dot(nrm, pts + idx[0] * d, d)
                lo = False
                hi = False
                for i in range(n):
                    s = _dot(nrm, pts + i * d, d)
                    if s < c:
                        lo = True
                    elif s > c:
                        hi = True
                    if lo and hi:
                        break
                if lo != hi:
                    if lo:
                        for j in range(d):
                            nrm[j] = -nrm[j]
                        c = -c
                    key = tuple([nrm[j] for j in range(d)])
                    if key not in found_normals:
                        found_normals.append(key)
                        inc = tuple([i for i in range(n) if _dot(nrm, pts + i * d, d) == c])
                        out.append((key, c, inc))
            if not _next_combo(idx, d, n):
                break
        return out
    finally:
        free(pts)


def lattice_points(normals, offsets, lo, hi):
    cdef int d = len(lo), m = len(normals), i, j, k
    cdef long long* nm = <long long*> malloc(max(m, 1) * d * sizeof(long long))
    cdef long long* off = <long long*> malloc(max(m, 1) * sizeof(long long))
    cdef long long x[MAXD]
    cdef long long lo_[MAXD]
    cdef long long hi_[MAXD]
    cdef bint ok
    out = []
    try:
        for i in range(m):
            off[i] = offsets[i]
            for j in range(d):
                nm[i * d + j] = normals[i][j]
        for j in range(d):
            lo_[j] = lo[j]
            hi_[j] = hi[j]
            x[j] = lo_[j]
            if lo_[j] > hi_[j]:
                return out
        while True:
            ok = True
            for i in range(m):
                if _dot(nm + i * d, x, d) < off[i]:
                    ok = False
                    break
            if ok:
                out.append(tuple([x[j] for j in range(d)]))
            # odometer, last coordinate fastest (lexicographic order)
            k = d - 1
            while k >= 0 and x[k] == hi_[k]:
                x[k] = lo_[k]
                k -= 1
            if k < 0:
                break
            x[k] += 1
        return out
    finally:
        free(nm)
        free(off)


def fano_hull(points, int d):
    facets = facet_data(points, d)
    if not facets:
        return False
    cdef int n, i
    cdef int idx[MAXD]
    cdef long long* pts = _copy_points(points, d, &n)
    try:
        for _, c, inc in facets:
            if c != -1 or len(inc) != d:
                return False
            for i in range(d):
                idx[i] = inc[i]
            if _det_rows(pts, d, idx) not in (1, -1):
                return False
        return True
    finally:
        free(pts)


cdef long long _binom(int n, int k) nogil:
    cdef long long r = 1
    cdef int i
    if k < 0 or k > n:
        return 0
    for i in range(k):
        r = r * (n - i) // (i + 1)
    return r


def fano_vertex_subsets(points, int d, int kmin, int kmax):
    cdef int n, i, j, t, k, size, nvalid, r
    cdef long long* pts = _copy_points(points, d, &n)
    if n > MAXN:
        free(pts)
        raise ValueError("at most 64 points supported")
    cdef long long ntab = _binom(n, d)
    cdef long long* blockers = <long long*> malloc(max(ntab, 1) * sizeof(long long))
    cdef char* unimod = <char*> malloc(max(ntab, 1))
    cdef long long binom[MAXN + 1][MAXD + 1]
    cdef int idx[MAXD]
    cdef int sub[MAXD]
    cdef int S[MAXN]
    cdef long long eta[MAXD]
    cdef long long buf[MAXD * MAXD]
    cdef long long vmask[MAXN * MAXN]
    cdef long long mask, covered, rmask, fullmask
    cdef long long rk, det, blk, s
    cdef int cnt, a, b
    cdef bint ok
    out = []
    try:
        for i in range(n + 1):
            for j in range(d + 1):
                binom[i][j] = _binom(i, j)
        # table of unimodular d-subsets, indexed by combinatorial rank
        for i in range(d):
            idx[i] = i
        while True:
            rk = 0
            for i in range(d):
                rk += binom[idx[i]][i + 1]
            det = _det_rows(pts, d, idx)
            unimod[rk] = det == 1 or det == -1
            if unimod[rk]:
                # eta_j = -sum_i (B^{-1})_{j i}; B^{-1} via cofactors since det = +-1
                for j in range(d):
                    s = 0
                    for i in range(d):
                        # cofactor C_{i j} of B (rows = points) -> (B^{-1})_{j i} = C_{i j} / det
                        a = 0
                        for t in range(d):
                            if t == i:
                                continue
                            b = 0
                            for k in range(d):
                                if k == j:
                                    continue
                                buf[a * (d - 1) + b] = pts[idx[t] * d + k]
                                b += 1
                            a += 1
                        if (i + j) % 2 == 0:
                            s += _det(buf, d - 1) * det
                        else:
                            s -= _det(buf, d - 1) * det
                    eta[j] = -s
                blk = 0
                for t in range(n):
                    ok = True
                    for i in range(d):
                        if idx[i] == t:
                            ok = False
                    if ok and _dot(eta, pts + t * d, d) <= -1:
                        blk |= (<long long> 1) << t
                blockers[rk] = blk
            if not _next_combo(idx, d, n):
                break

        for size in range(max(kmin, d), min(kmax, n) + 1):
            for i in range(size):
                S[i] = i
            while True:
                mask = 0
                for i in range(size):
                    mask |= (<long long> 1) << S[i]
                nvalid = 0
                covered = 0
                for i in range(d):
                    sub[i] = i
                while True:
                    rk = 0
                    for i in range(d):
                        rk += binom[S[sub[i]]][i + 1]
                    if unimod[rk] and not (blockers[rk] & mask):
                        rmask = 0
                        for i in range(d):
                            rmask |= (<long long> 1) << S[sub[i]]
                        vmask[nvalid] = rmask
                        nvalid += 1
                        covered |= rmask
                    if not _next_combo(sub, d, size):
                        break
                ok = nvalid > 0 and covered == mask
                if ok:
                    for a in range(nvalid):
                        for i in range(n):
                            if not (vmask[a] >> i) & 1:
                                continue
                            rmask = vmask[a] & ~((<long long> 1) << i)
                            cnt = 0
                            for b in range(nvalid):
                                if (vmask[b] & rmask) == rmask:
                                    cnt += 1
                            if cnt != 2:
                                ok = False
                                break
                        if not ok:
                            break
                if ok:
                    out.append(tuple([S[i] for i in range(size)]))
                if not _next_combo(S, size, n):
                    break
        return out
    finally:
        free(pts)
        free(blockers)
        free(unimod)
