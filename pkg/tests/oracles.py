"""Reference implementations used only by the tests.

They are deliberately naive and share no code with the package.
"""

from math import comb


def naive_snf(rows, ncols=None):
    """Invariant factors of an integer matrix by textbook row/column reduction."""
    A = [list(r) for r in rows]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for r in A:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    for r in A:
                        r[t], r[j] = r[j], r[t]
                    changed = True
                    break
            if changed:
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
            if bad:
                i, _ = bad[0]
                A[t] = [a + b for a, b in zip(A[t], A[i])]
                continue
            break
        out.append(abs(A[t][t]))
        t += 1
    return out


def gauss_at(m, i, q):
    """Gaussian binomial evaluated at an integer q != 1 via the product formula."""
    num = den = 1
    for k in range(i):
        num *= 1 - q ** (m - k)
        den *= 1 - q ** (k + 1)
    assert num % den == 0
    return num // den


def gauss_minus_one_closed(m, i):
    """Known closed form of the Gaussian binomial at q = -1."""
    if m % 2 == 0 and i % 2 == 1:
        return 0
    return comb(m // 2, i // 2)


def rank_mod_p(rows, p):
    """Rank of an integer matrix mod p by dense Gaussian elimination."""
    A = [[x % p for x in r] for r in rows]
    rk = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = pow(A[rk][c], -1, p)
        A[rk] = [x * inv % p for x in A[rk]]
        for i in range(len(A)):
            if i != rk and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rk])]
        rk += 1
    return rk
