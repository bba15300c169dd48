"""Pure-Python kernels: characteristic polynomials and resultants over F_q.

These are the fallback for ``modpcensus._kernels`` and share its interface.
All inputs are residues in ``[0, q)``; outputs are residues as well.
"""


def charpoly_mod(rows, q):
    """Characteristic polynomial of a square matrix over F_q.

    ``rows`` is a list of lists of residues. Returns the coefficient list
    from the constant term up (length ``d + 1``, monic). Uses reduction to
    upper Hessenberg form followed by the standard recurrence.
    """
    n = len(rows)
    h = [list(r) for r in rows]
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i][m - 1]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for r in h:
                r[piv], r[m] = r[m], r[piv]
        inv = pow(h[m][m - 1], q - 2, q)
        row_m = h[m]
        for i in range(m + 1, n):
            u = h[i][m - 1] * inv % q
            if not u:
                continue
            row_i = h[i]
            for j in range(m - 1, n):
                row_i[j] = (row_i[j] - u * row_m[j]) % q
            for r in h:
                r[m] = (r[m] + u * r[i]) % q

    # polys[t] is the charpoly of the leading t x t block, low degree first.
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        hmm = h[m - 1][m - 1]
        cur = [0] + prev[:]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hmm * c) % q
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % q
            coef = h[m - i - 1][m - 1] * t % q
            if coef:
                for j, c in enumerate(polys[m - i - 1]):
                    cur[j] = (cur[j] - coef * c) % q
        polys.append(cur)
    return polys[n]


def _strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def resultant_mod(f, g, q):
    """Resultant of ``f`` and ``g`` over F_q with their actual degrees.

    Coefficient lists are given from the constant term up; trailing zeros
    are ignored. Either polynomial being zero gives 0.
    """
    f = _strip([c % q for c in f])
    g = _strip([c % q for c in g])
    if not f or not g:
        return 0
    acc = 1
    while True:
        n = len(f) - 1
        m = len(g) - 1
        if m == 0:
            return acc * pow(g[0], n, q) % q
        if n == 0:
            return acc * pow(f[0], m, q) % q
        # r = f mod g
        r = f[:]
        inv = pow(g[-1], q - 2, q)
        for s in range(n - m, -1, -1):
            c = r[s + m] * inv % q
            if c:
                for j in range(m + 1):
                    r[s + j] = (r[s + j] - c * g[j]) % q
        _strip(r)
        if not r:
            return 0
        if (n * m) % 2:
            acc = -acc
        acc = acc * pow(g[-1], n - (len(r) - 1), q) % q
        f, g = g, r
