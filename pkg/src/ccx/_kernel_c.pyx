# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elimination kernel: dense Gauss-Jordan over machine integers.

Same contract as ``ccx._kernel_py``.  Arithmetic runs on ``long long`` with
hardware overflow checks; any overflow raises ``OverflowError`` and the caller
falls back to the bigint kernel, so results are always exact.
"""

from libc.stdlib cimport malloc, calloc, free

BACKEND = "cython"

cdef extern from *:
    bint _add_ovf "__builtin_saddll_overflow"(long long a, long long b, long long *res) nogil
    bint _sub_ovf "__builtin_ssubll_overflow"(long long a, long long b, long long *res) nogil
    bint _mul_ovf "__builtin_smulll_overflow"(long long a, long long b, long long *res) nogil


cdef inline long long _llabs(long long a) nogil:
    return -a if a < 0 else a


cdef inline long long _gcd(long long a, long long b) nogil:
    a = _llabs(a)
    b = _llabs(b)
    cdef long long t
    while b:
        t = a % b
        a = b
        b = t
    return a


# ------------------------------------------------------------ integer path

cdef int _int_elim(long long *m, Py_ssize_t nr, Py_ssize_t nc, bint reduced,
                   Py_ssize_t *piv) nogil:
    """In-place Gauss-Jordan; returns rank, or -1 on overflow."""
    cdef Py_ssize_t r = 0, c, i, j, best, start
    cdef long long a, b, g, fa, fb, x, y, bestv, v
    cdef long long *row
    cdef long long *prow
    for c in range(nc):
        if r == nr:
            break
        best = -1
        bestv = 0
        for i in range(r, nr):
            v = _llabs(m[i * nc + c])
            if v and (best < 0 or v < bestv):
                best = i
                bestv = v
                if v == 1:
                    break
        if best < 0:
            continue
        if best != r:
            for j in range(nc):
                x = m[r * nc + j]
                m[r * nc + j] = m[best * nc + j]
                m[best * nc + j] = x
        prow = m + r * nc
        if prow[c] < 0:
            for j in range(c, nc):
                prow[j] = -prow[j]
        b = prow[c]
        for i in range(nr):
            if i == r:
                continue
            if i < r and not reduced:
                continue
            row = m + i * nc
            a = row[c]
            if a == 0:
                continue
            g = _gcd(a, b)
            fa = b // g
            fb = a // g
            start = c if i > r else 0
            g = 0
            for j in range(start, nc):
                if _mul_ovf(fa, row[j], &x):
                    return -1
                if prow[j]:
                    if _mul_ovf(fb, prow[j], &y):
                        return -1
                    if _sub_ovf(x, y, &x):
                        return -1
                row[j] = x
                if x:
                    g = _gcd(g, x)
            if g > 1:
                for j in range(start, nc):
                    row[j] = row[j] // g
        piv[r] = c
        r += 1
    return <int>r


# ----------------------------------------------------------- Gaussian path

cdef inline bint _gmul(long long a0, long long a1, long long b0, long long b1,
                       long long *r0, long long *r1) nogil:
    cdef long long p, q, s, t
    if _mul_ovf(a0, b0, &p) or _mul_ovf(a1, b1, &q) or _sub_ovf(p, q, r0):
        return True
    if _mul_ovf(a0, b1, &s) or _mul_ovf(a1, b0, &t) or _add_ovf(s, t, r1):
        return True
    return False


cdef inline long long _floordiv(long long a, long long b) nogil:
    cdef long long q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef bint _gdiv_round(long long a0, long long a1, long long b0, long long b1,
                      long long *q0, long long *q1) nogil:
    cdef long long n, n0, n1, t0, t1
    if _gmul(b0, b1, b0, -b1, &n, &t0):
        return True
    if _gmul(a0, a1, b0, -b1, &n0, &n1):
        return True
    if _mul_ovf(2, n0, &t0) or _add_ovf(t0, n, &t0):
        return True
    if _mul_ovf(2, n1, &t1) or _add_ovf(t1, n, &t1):
        return True
    q0[0] = _floordiv(t0, 2 * n)
    q1[0] = _floordiv(t1, 2 * n)
    return False


cdef bint _ggcd(long long a0, long long a1, long long b0, long long b1,
                long long *g0, long long *g1) nogil:
    cdef long long q0, q1, p0, p1
    while b0 or b1:
        if _gdiv_round(a0, a1, b0, b1, &q0, &q1):
            return True
        if _gmul(q0, q1, b0, b1, &p0, &p1):
            return True
        p0 = a0 - p0
        p1 = a1 - p1
        a0 = b0
        a1 = b1
        b0 = p0
        b1 = p1
    g0[0] = a0
    g1[0] = a1
    return False


cdef bint _gexact(long long a0, long long a1, long long b0, long long b1,
                  long long *q0, long long *q1) nogil:
    cdef long long n, t, n0, n1
    if _gmul(b0, b1, b0, -b1, &n, &t):
        return True
    if _gmul(a0, a1, b0, -b1, &n0, &n1):
        return True
    q0[0] = n0 // n
    q1[0] = n1 // n
    return False


cdef int _gauss_elim(long long *re, long long *im, Py_ssize_t nr, Py_ssize_t nc,
                     bint reduced, Py_ssize_t *piv) nogil:
    cdef Py_ssize_t r = 0, c, i, j, best, start, k
    cdef long long bestv, v, x0, x1, y0, y1, g0, g1, fa0, fa1, fb0, fb1, b0, b1, g
    for c in range(nc):
        if r == nr:
            break
        best = -1
        bestv = 0
        for i in range(r, nr):
            k = i * nc + c
            if re[k] or im[k]:
                v = _llabs(re[k]) + _llabs(im[k])
                if best < 0 or v < bestv:
                    best = i
                    bestv = v
                    if v == 1:
                        break
        if best < 0:
            continue
        if best != r:
            for j in range(nc):
                x0 = re[r * nc + j]
                re[r * nc + j] = re[best * nc + j]
                re[best * nc + j] = x0
                x1 = im[r * nc + j]
                im[r * nc + j] = im[best * nc + j]
                im[best * nc + j] = x1
        b0 = re[r * nc + c]
        b1 = im[r * nc + c]
        for i in range(nr):
            if i == r:
                continue
            if i < r and not reduced:
                continue
            k = i * nc + c
            if not (re[k] or im[k]):
                continue
            if _ggcd(b0, b1, re[k], im[k], &g0, &g1):
                return -1
            if _gexact(b0, b1, g0, g1, &fa0, &fa1):
                return -1
            if _gexact(re[k], im[k], g0, g1, &fb0, &fb1):
                return -1
            start = c if i > r else 0
            g = 0
            for j in range(start, nc):
                k = i * nc + j
                if _gmul(fa0, fa1, re[k], im[k], &x0, &x1):
                    return -1
                if re[r * nc + j] or im[r * nc + j]:
                    if _gmul(fb0, fb1, re[r * nc + j], im[r * nc + j], &y0, &y1):
                        return -1
                    if _sub_ovf(x0, y0, &x0) or _sub_ovf(x1, y1, &x1):
                        return -1
                re[k] = x0
                im[k] = x1
                if x0:
                    g = _gcd(g, x0)
                if x1:
                    g = _gcd(g, x1)
            if g > 1:
                for j in range(start, nc):
                    k = i * nc + j
                    re[k] = re[k] // g
                    im[k] = im[k] // g
        piv[r] = c
        r += 1
    return <int>r


# ------------------------------------------------------------------ public

cdef object _run(rows, Py_ssize_t ncols, bint reduced, bint want_rows):
    cdef Py_ssize_t nr = len(rows), i, j, rk, c
    cdef bint real = True
    for row in rows:
        for v in (<dict>row).values():
            if v[1]:
                real = False
                break
        if not real:
            break
    if nr == 0 or ncols == 0:
        return [] if want_rows else 0
    cdef long long *re = <long long *>calloc(nr * ncols, sizeof(long long))
    cdef long long *im = NULL
    cdef Py_ssize_t *piv = <Py_ssize_t *>malloc(nr * sizeof(Py_ssize_t))
    if not real:
        im = <long long *>calloc(nr * ncols, sizeof(long long))
    try:
        for i in range(nr):
            for col, v in (<dict>rows[i]).items():
                re[i * ncols + <Py_ssize_t>col] = v[0]
                if not real:
                    im[i * ncols + <Py_ssize_t>col] = v[1]
        with nogil:
            if real:
                rk = _int_elim(re, nr, ncols, reduced, piv)
            else:
                rk = _gauss_elim(re, im, nr, ncols, reduced, piv)
        if rk < 0:
            raise OverflowError("machine-integer overflow in elimination")
        if not want_rows:
            return rk
        out = []
        for i in range(rk):
            d = {}
            for j in range(piv[i], ncols):
                if real:
                    if re[i * ncols + j]:
                        d[j] = (re[i * ncols + j], 0)
                elif re[i * ncols + j] or im[i * ncols + j]:
                    d[j] = (re[i * ncols + j], im[i * ncols + j])
            out.append((piv[i], d))
        return out
    finally:
        free(re)
        if im != NULL:
            free(im)
        free(piv)


def echelon(rows, ncols, reduced=True):
    """Echelon form of the span of ``rows``; see ``ccx._kernel_py.echelon``."""
    return _run([r for r in rows if r], ncols, reduced, True)


def rank(rows, ncols):
    return _run([r for r in rows if r], ncols, False, False)
