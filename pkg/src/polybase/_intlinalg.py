# Exact integer linear algebra: fraction-free elimination, kernels, HNF.
from fractions import Fraction
from math import gcd


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v):
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _reduce_into(basis, v):
    """Reduce v against a pivot->row echelon dict; return the leftover row."""
    v = list(v)
    for col in sorted(basis):
        if v[col]:
            row = basis[col]
            a, b = row[col], v[col]
            g = gcd(a, b)
            v = [(a // g) * x - (b // g) * y for x, y in zip(v, row)]
            c = content(v)
            if c > 1:
                v = [x // c for x in v]
    return v


def rank(vectors, stop_at=None):
    """Rank over Q.  Stops early once ``stop_at`` is reached."""
    basis = {}
    for v in vectors:
        w = _reduce_into(basis, v)
        for col, x in enumerate(w):
            if x:
                basis[col] = w
                break
        if stop_at is not None and len(basis) >= stop_at:
            break
    return len(basis)


def kernel(rows, n):
    """Primitive integer basis of {x in Q^n : <r, x> = 0 for all rows}."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row_idx, c in enumerate(pivots):
            x[c] = -m[row_idx][f]
        den = 1
        for q in x:
            den = den * q.denominator // gcd(den, q.denominator)
        out.append(primitive([int(q * den) for q in x]))
    return out


def det(matrix):
    """Determinant by Bareiss fraction-free elimination."""
    a = [list(r) for r in matrix]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(vectors, n):
    """Row-style Hermite normal form of the Z-span of ``vectors``.

    Rows are returned top to bottom with strictly increasing pivot columns,
    positive pivots, and entries above each pivot reduced into [0, pivot).
    """
    basis = {}
    for v in vectors:
        v = list(v)
        for col in range(n):
            if not v[col]:
                continue
            if col not in basis:
                if v[col] < 0:
                    v = [-x for x in v]
                basis[col] = v
                v = None
                break
            row = basis[col]
            a, b = row[col], v[col]
            g, x, y = _xgcd(a, b)
            if g < 0:
                g, x, y = -g, -x, -y
            new = [x * p + y * q for p, q in zip(row, v)]
            v = [(a // g) * q - (b // g) * p for p, q in zip(row, v)]
            basis[col] = new
        _hnf_reduce(basis)
    return [tuple(basis[c]) for c in sorted(basis)]


def _hnf_reduce(basis):
    cols = sorted(basis)
    for idx, c in enumerate(cols):
        piv_row = basis[c]
        for upper in cols[:idx]:
            row = basis[upper]
            q = row[c] // piv_row[c]
            if q:
                basis[upper] = [x - q * y for x, y in zip(row, piv_row)]
