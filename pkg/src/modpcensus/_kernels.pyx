# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: characteristic polynomials and resultants over F_q.

Same interface as ``modpcensus._pykernels``. Moduli must be below 2**63;
products are formed in 128-bit arithmetic.
"""

from libc.stdlib cimport calloc, malloc, free
from libc.stdint cimport uint64_t

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) nogil:
    return <uint64_t>((<u128>a * b) % q)


cdef inline uint64_t submod(uint64_t a, uint64_t b, uint64_t q) nogil:
    return a - b if a >= b else a + (q - b)


cdef inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t q) nogil:
    cdef uint64_t s = a + b
    return s - q if s >= q else s


cdef uint64_t powmod(uint64_t a, uint64_t e, uint64_t q) nogil:
    cdef uint64_t r = 1 % q
    a %= q
    while e:
        if e & 1:
            r = mulmod(r, a, q)
        a = mulmod(a, a, q)
        e >>= 1
    return r


cdef void hessenberg(uint64_t* h, Py_ssize_t n, uint64_t q) nogil:
    cdef Py_ssize_t m, i, j, piv
    cdef uint64_t inv, u, tmp
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i * n + m - 1]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            for j in range(n):
                tmp = h[piv * n + j]
                h[piv * n + j] = h[m * n + j]
                h[m * n + j] = tmp
            for j in range(n):
                tmp = h[j * n + piv]
                h[j * n + piv] = h[j * n + m]
                h[j * n + m] = tmp
        inv = powmod(h[m * n + m - 1], q - 2, q)
        for i in range(m + 1, n):
            u = mulmod(h[i * n + m - 1], inv, q)
            if not u:
                continue
            for j in range(m - 1, n):
                h[i * n + j] = submod(h[i * n + j], mulmod(u, h[m * n + j], q), q)
            for j in range(n):
                h[j * n + m] = addmod(h[j * n + m], mulmod(u, h[j * n + i], q), q)


def charpoly_mod(rows, q_):
    cdef uint64_t q = q_
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, m, t_i, deg
    cdef uint64_t hmm, t, coef
    cdef uint64_t* h
    cdef uint64_t* polys
    if n == 0:
        return [1]
    h = <uint64_t*> malloc(n * n * sizeof(uint64_t))
    # polys is (n+1) x (n+1); row t holds the charpoly of the leading t x t block.
    polys = <uint64_t*> malloc((n + 1) * (n + 1) * sizeof(uint64_t))
    if h == NULL or polys == NULL:
        free(h)
        free(polys)
        raise MemoryError()
    try:
        for i in range(n):
            row = rows[i]
            for j in range(n):
                h[i * n + j] = <uint64_t>(row[j] % q_)
        with nogil:
            hessenberg(h, n, q)
            for i in range((n + 1) * (n + 1)):
                polys[i] = 0
            polys[0] = 1 % q
            for m in range(1, n + 1):
                hmm = h[(m - 1) * n + m - 1]
                # cur = x * prev - hmm * prev
                for j in range(m, 0, -1):
                    polys[m * (n + 1) + j] = polys[(m - 1) * (n + 1) + j - 1]
                polys[m * (n + 1)] = 0
                for j in range(m):
                    polys[m * (n + 1) + j] = submod(
                        polys[m * (n + 1) + j], mulmod(hmm, polys[(m - 1) * (n + 1) + j], q), q)
                t = 1 % q
                for t_i in range(1, m):
                    t = mulmod(t, h[(m - t_i) * n + m - t_i - 1], q)
                    coef = mulmod(h[(m - t_i - 1) * n + m - 1], t, q)
                    if coef:
                        deg = m - t_i - 1
                        for j in range(deg + 1):
                            polys[m * (n + 1) + j] = submod(
                                polys[m * (n + 1) + j],
                                mulmod(coef, polys[deg * (n + 1) + j], q), q)
        return [polys[n * (n + 1) + j] for j in range(n + 1)]
    finally:
        free(h)
        free(polys)


def resultant_mod(f_, g_, q_):
    cdef uint64_t q = q_
    cdef Py_ssize_t n, m, s, j, lr, cap
    cdef uint64_t inv, c, acc
    cdef int negate = 0
    cdef uint64_t* f = NULL
    cdef uint64_t* g = NULL
    cdef uint64_t* tmp
    fl = [x % q_ for x in f_]
    gl = [x % q_ for x in g_]
    while fl and fl[len(fl) - 1] == 0:
        fl.pop()
    while gl and gl[len(gl) - 1] == 0:
        gl.pop()
    if not fl or not gl:
        return 0
    n = len(fl) - 1
    m = len(gl) - 1
    cap = (n if n > m else m) + 1
    f = <uint64_t*> calloc(cap, sizeof(uint64_t))
    g = <uint64_t*> calloc(cap, sizeof(uint64_t))
    if f == NULL or g == NULL:
        free(f)
        free(g)
        raise MemoryError()
    for j in range(n + 1):
        f[j] = fl[j]
    for j in range(m + 1):
        g[j] = gl[j]
    acc = 1 % q
    with nogil:
        while True:
            if m == 0:
                acc = mulmod(acc, powmod(g[0], n, q), q)
                break
            if n == 0:
                acc = mulmod(acc, powmod(f[0], m, q), q)
                break
            inv = powmod(g[m], q - 2, q)
            s = n - m
            while s >= 0:
                c = mulmod(f[s + m], inv, q)
                if c:
                    for j in range(m + 1):
                        f[s + j] = submod(f[s + j], mulmod(c, g[j], q), q)
                s -= 1
            # remainder: f itself when deg f < deg g, else degree < m
            lr = n if n < m else m - 1
            while lr >= 0 and f[lr] == 0:
                lr -= 1
            if lr < 0:
                acc = 0
                break
            if (n * m) % 2:
                negate ^= 1
            acc = mulmod(acc, powmod(g[m], n - lr, q), q)
            for j in range(lr + 1, n + 1):
                f[j] = 0
            tmp = f
            f = g
            g = tmp
            n = m
            m = lr
    free(f)
    free(g)
    if negate and acc:
        acc = q - acc
    return acc
