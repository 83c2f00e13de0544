# cython: language_level=3
"""Compiled integer kernels: row HNF and all-integer LLL.

Twin of _core_py.  Same algorithms, same arbitrary-precision Python int
entries; only the loop indices and list accesses are C-typed.  Output
must stay bit-identical to the pure twin, so any algorithmic change has
to land in both files.
"""


cdef tuple _xgcd(object a, object b):
    cdef object old_r, r, old_s, s, old_t, t, q
    old_r = a; r = b
    old_s = 1; s = 0
    old_t = 0; t = 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return (-old_r, -old_s, -old_t)
    return (old_r, old_s, old_t)


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    return _xgcd(a, b)


def hnf_rows(rows, Py_ssize_t ncols):
    """Row-style Hermite normal form.

    Returns the nonzero rows: echelon shape, positive pivots, entries
    above each pivot reduced into [0, pivot).  Zero rows are dropped, so
    the result is the canonical basis of the row lattice.
    """
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t r = 0
    cdef Py_ssize_t c, i, piv, t
    cdef list ri, rj, rr
    cdef object a, b, g, x, y, u, v, p, q, rt, it
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if (<list>m[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            rj = <list>m[i]
            if not rj[c]:
                continue
            ri = <list>m[r]
            a = ri[c]
            b = rj[c]
            g, x, y = _xgcd(a, b)
            u = -(b // g)
            v = a // g
            for t in range(c, ncols):
                rt = ri[t]
                it = rj[t]
                ri[t] = x * rt + y * it
                rj[t] = u * rt + v * it
        rr = <list>m[r]
        if rr[c] < 0:
            m[r] = rr = [-e for e in rr]
        p = rr[c]
        for i in range(r):
            ri = <list>m[i]
            q = ri[c] // p
            if q:
                for t in range(c, ncols):
                    ri[t] = ri[t] - q * rr[t]
        r += 1
        if r == nrows:
            break
    return m[:r]


cdef object _dot(list u, list v, Py_ssize_t ncols):
    cdef Py_ssize_t t
    cdef object s = 0
    for t in range(ncols):
        s = s + u[t] * v[t]
    return s


cdef int _gram_row(list b, list lam, list d, Py_ssize_t i, Py_ssize_t ncols) except -1:
    cdef Py_ssize_t j, t
    cdef object u
    cdef list lam_i = <list>lam[i]
    cdef list lam_j
    for j in range(i + 1):
        u = _dot(<list>b[i], <list>b[j], ncols)
        lam_j = <list>lam[j]
        for t in range(j):
            u = (d[t + 1] * u - lam_i[t] * lam_j[t]) // d[t]
        if j < i:
            lam_i[j] = u
        else:
            if u <= 0:
                raise ValueError("dependent rows")
            d[i + 1] = u
    return 0


cdef int _reduce_row(list b, list lam, list d, Py_ssize_t k, Py_ssize_t j,
                     Py_ssize_t ncols) except -1:
    cdef list lk = <list>lam[k]
    cdef object lkj = lk[j]
    cdef object djj = d[j + 1]
    cdef object q
    cdef Py_ssize_t t
    cdef list bk, bj, lj
    if 2 * lkj > djj or 2 * lkj < -djj:
        q = (2 * lkj + djj) // (2 * djj)
        bk = <list>b[k]
        bj = <list>b[j]
        for t in range(ncols):
            bk[t] = bk[t] - q * bj[t]
        lk[j] = lk[j] - q * djj
        lj = <list>lam[j]
        for t in range(j):
            lk[t] = lk[t] - q * lj[t]
    return 0


cdef int _swap_rows(list b, list lam, list d, Py_ssize_t k, Py_ssize_t kmax) except -1:
    cdef Py_ssize_t t, i
    cdef object l, bb, u
    cdef list lk, lk1, lam_i
    b[k], b[k - 1] = b[k - 1], b[k]
    lk = <list>lam[k]
    lk1 = <list>lam[k - 1]
    for t in range(k - 1):
        lk[t], lk1[t] = lk1[t], lk[t]
    l = lk[k - 1]
    bb = (d[k - 1] * d[k + 1] + l * l) // d[k]
    for i in range(k + 1, kmax + 1):
        lam_i = <list>lam[i]
        u = lam_i[k]
        lam_i[k] = (d[k + 1] * lam_i[k - 1] - l * u) // d[k]
        lam_i[k - 1] = (bb * u + l * lam_i[k]) // d[k + 1]
    d[k] = bb
    return 0


def lll_rows(rows, delta_num, delta_den):
    """All-integer LLL reduction of a full-rank integer basis.

    Gram-Schmidt data is kept as the integers d[i] (leading principal
    Gram determinants) and lam[i][j] = mu[i][j] * d[j+1], so every
    division below is exact.  delta = delta_num/delta_den is the Lovász
    constant, 1/4 < delta <= 1.  Raises ValueError on dependent rows.
    """
    cdef list b = [list(row) for row in rows]
    cdef Py_ssize_t n = len(b)
    if n == 0:
        return b
    cdef Py_ssize_t ncols = len(<list>b[0])
    cdef list d = [0] * (n + 1)
    d[0] = 1
    d[1] = _dot(<list>b[0], <list>b[0], ncols)
    if d[1] <= 0:
        raise ValueError("dependent rows")
    cdef list lam = [[0] * n for _ in range(n)]
    cdef Py_ssize_t kmax = 0
    cdef Py_ssize_t k = 1
    cdef Py_ssize_t j
    cdef object l
    while k < n:
        if k > kmax:
            kmax = k
            _gram_row(b, lam, d, k, ncols)
        _reduce_row(b, lam, d, k, k - 1, ncols)
        l = (<list>lam[k])[k - 1]
        if delta_den * (d[k + 1] * d[k - 1] + l * l) < delta_num * d[k] * d[k]:
            _swap_rows(b, lam, d, k, kmax)
            k = k - 1
            if k < 1:
                k = 1
        else:
            for j in range(k - 2, -1, -1):
                _reduce_row(b, lam, d, k, j, ncols)
            k += 1
    return b
