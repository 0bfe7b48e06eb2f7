# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_purekernels``.

Same signatures, same traversal order, same results. Row bitmasks must fit
in 64 bits; the dispatcher in ``unitdist.kernels`` routes wider matrices to
the Python versions.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

BACKEND = "cython"
MAX_COLS = 64


cdef inline bint _next_comb(int* idx, int k, int n):
    cdef int i = k - 1
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    i += 1
    while i < k:
        idx[i] = idx[i - 1] + 1
        i += 1
    return True


cdef inline void _need_masks(const uint64_t* pat, int prows, int pcols,
                             const int* idx, uint64_t* need) noexcept:
    cdef int u, v
    cdef uint64_t m
    for u in range(prows):
        m = 0
        for v in range(pcols):
            if (pat[u] >> v) & 1:
                m |= (<uint64_t>1) << idx[v]
        need[u] = m


def contains(host, int ncols, pat, int pcols):
    cdef int nrows = len(host)
    cdef int prows = len(pat)
    if prows > nrows or pcols > ncols:
        return None
    if ncols > MAX_COLS:
        raise ValueError("too many columns for the compiled kernel")
    cdef uint64_t* h = <uint64_t*>malloc(nrows * sizeof(uint64_t))
    cdef uint64_t* p = <uint64_t*>malloc((prows + 1) * sizeof(uint64_t))
    cdef uint64_t* need = <uint64_t*>malloc((prows + 1) * sizeof(uint64_t))
    cdef int* idx = <int*>malloc((pcols + 1) * sizeof(int))
    cdef int* rsel = <int*>malloc((prows + 1) * sizeof(int))
    cdef int i, u, row
    cdef bint found = False
    try:
        for i in range(nrows):
            h[i] = <uint64_t>host[i]
        for i in range(prows):
            p[i] = <uint64_t>pat[i]
        for i in range(pcols):
            idx[i] = i
        while True:
            _need_masks(p, prows, pcols, idx, need)
            row = 0
            u = 0
            while u < prows:
                while row < nrows and (h[row] & need[u]) != need[u]:
                    row += 1
                if row == nrows:
                    break
                rsel[u] = row
                row += 1
                u += 1
            if u == prows:
                found = True
                break
            if pcols == 0 or not _next_comb(idx, pcols, ncols):
                break
        if not found:
            return None
        return (tuple(rsel[u] for u in range(prows)),
                tuple(idx[v] for v in range(pcols)))
    finally:
        free(h)
        free(p)
        free(need)
        free(idx)
        free(rsel)


cdef struct Search:
    int a
    int b
    int ncells
    int prows
    int pcols
    uint64_t* host
    uint64_t* best_rows
    uint64_t* pat
    uint64_t* need
    int* idx
    int best
    int64_t nodes
    int64_t budget
    bint out_of_budget


cdef bint _uses_column(Search* s, int col) noexcept:
    cdef int i, u, row
    cdef bint hit
    for i in range(s.pcols):
        s.idx[i] = i
    while True:
        hit = False
        for i in range(s.pcols):
            if s.idx[i] == col:
                hit = True
                break
        if hit:
            _need_masks(s.pat, s.prows, s.pcols, s.idx, s.need)
            row = 0
            u = 0
            while u < s.prows and row < s.a:
                if (s.host[row] & s.need[u]) == s.need[u]:
                    u += 1
                row += 1
            if u == s.prows:
                return True
        if not _next_comb(s.idx, s.pcols, s.b):
            return False


cdef void _rec(Search* s, int t, int ones) noexcept:
    cdef int r, c, i
    cdef uint64_t bit
    s.nodes += 1
    if s.nodes > s.budget:
        s.out_of_budget = True
        return
    if ones + (s.ncells - t) <= s.best:
        return
    if t == s.ncells:
        s.best = ones
        for i in range(s.a):
            s.best_rows[i] = s.host[i]
        return
    r = t // s.b
    c = t % s.b
    bit = (<uint64_t>1) << c
    s.host[r] |= bit
    if not _uses_column(s, c):
        _rec(s, t + 1, ones + 1)
        if s.out_of_budget:
            s.host[r] &= ~bit
            return
    s.host[r] &= ~bit
    _rec(s, t + 1, ones)


def ex_search(int a, int b, pat, int pcols, long long budget):
    cdef int prows = len(pat)
    cdef int i
    if prows > a or pcols > b:
        return a * b, [(1 << b) - 1] * a, 1, True
    if b > MAX_COLS:
        raise ValueError("too many columns for the compiled kernel")
    cdef Search s
    s.a = a
    s.b = b
    s.ncells = a * b
    s.prows = prows
    s.pcols = pcols
    s.best = -1
    s.nodes = 0
    s.budget = budget
    s.out_of_budget = False
    s.host = <uint64_t*>malloc(a * sizeof(uint64_t))
    s.best_rows = <uint64_t*>malloc(a * sizeof(uint64_t))
    s.pat = <uint64_t*>malloc((prows + 1) * sizeof(uint64_t))
    s.need = <uint64_t*>malloc((prows + 1) * sizeof(uint64_t))
    s.idx = <int*>malloc((pcols + 1) * sizeof(int))
    try:
        for i in range(a):
            s.host[i] = 0
            s.best_rows[i] = 0
        for i in range(prows):
            s.pat[i] = <uint64_t>pat[i]
        _rec(&s, 0, 0)
        rows = [int(s.best_rows[i]) for i in range(a)]
        if s.out_of_budget:
            return max(s.best, 0), rows, s.nodes - 1, False
        return s.best, rows, s.nodes, True
    finally:
        free(s.host)
        free(s.best_rows)
        free(s.pat)
        free(s.need)
        free(s.idx)


def obtuse_scan(rank):
    cdef int r = len(rank)
    cdef int c = len(rank[0])
    if r < 2 or c < 2:
        return None
    cdef int64_t* M = <int64_t*>malloc(r * c * sizeof(int64_t))
    cdef short* P1 = <short*>malloc(r * c * sizeof(short))
    cdef short* Q1 = <short*>malloc(r * c * sizeof(short))
    cdef short* T = <short*>malloc(r * c * r * sizeof(short))
    cdef int i, j, k, p1, q1, p2, q2, m1, n1, m2, n2
    cdef int64_t v
    cdef short val, cur
    if M == NULL or P1 == NULL or Q1 == NULL or T == NULL:
        free(M); free(P1); free(Q1); free(T)
        raise MemoryError()
    try:
        for i in range(r):
            row = rank[i]
            for j in range(c):
                M[i * c + j] = row[j]
        for p2 in range(r):
            for q2 in range(c):
                v = M[p2 * c + q2]
                P1[p2 * c + q2] = -1
                Q1[p2 * c + q2] = -1
                p1 = p2 - 1
                while p1 >= 0:
                    if M[p1 * c + q2] <= v:
                        P1[p2 * c + q2] = p1
                        break
                    p1 -= 1
                q1 = q2 - 1
                while q1 >= 0:
                    if M[p2 * c + q1] <= v:
                        Q1[p2 * c + q2] = q1
                        break
                    q1 -= 1
        # T[(a*c + b)*r + m] = max Q1 over p2 >= a, q2 >= b with P1 >= m
        for i in range(r - 1, -1, -1):
            for j in range(c - 1, -1, -1):
                for k in range(r):
                    val = -1
                    if Q1[i * c + j] >= 0 and k <= P1[i * c + j]:
                        val = Q1[i * c + j]
                    if i + 1 < r:
                        cur = T[((i + 1) * c + j) * r + k]
                        if cur > val:
                            val = cur
                    if j + 1 < c:
                        cur = T[(i * c + j + 1) * r + k]
                        if cur > val:
                            val = cur
                    T[(i * c + j) * r + k] = val
        for m1 in range(r - 1):
            for n1 in range(c - 1):
                v = M[m1 * c + n1]
                m2 = -1
                for k in range(m1 + 1, r):
                    if M[k * c + n1] <= v:
                        m2 = k
                        break
                if m2 < 0:
                    continue
                n2 = -1
                for k in range(n1 + 1, c):
                    if M[m1 * c + k] <= v:
                        n2 = k
                        break
                if n2 < 0:
                    continue
                if T[(m2 * c + n2) * r + m1] >= n1:
                    for p1 in range(m1, r):
                        for q1 in range(n1, c):
                            for p2 in range(max(m2, p1 + 1), r):
                                for q2 in range(max(n2, q1 + 1), c):
                                    v = M[p2 * c + q2]
                                    if v >= M[p2 * c + q1] and v >= M[p1 * c + q2]:
                                        return (m1, n1, m2, n2, p1, q1, p2, q2)
                    raise AssertionError("suffix table promised a bottom-right corner")
        return None
    finally:
        free(M)
        free(P1)
        free(Q1)
        free(T)
