"""Integer combinatorics shared by the rest of the package.

Everything here returns Python ints, so values never overflow.
"""

from functools import lru_cache
from math import comb


def binomial(a, b):
    """C(a, b), zero when b < 0 or b > a >= 0.

    Negative ``a`` uses the generalised definition a(a-1)...(a-b+1)/b!, which
    is what the alternating sums need.
    """
    if b < 0:
        return 0
    if a >= 0:
        return comb(a, b) if b <= a else 0
    # C(-x, b) = (-1)^b C(x+b-1, b)
    return (-1) ** b * comb(-a + b - 1, b)


@lru_cache(maxsize=None)
def _eulerian_row(m):
    if m == 1:
        return (1,)
    prev = _eulerian_row(m - 1)
    row = []
    for k in range(1, m + 1):
        left = k * prev[k - 1] if k <= m - 1 else 0
        right = (m - k + 1) * prev[k - 2] if k >= 2 else 0
        row.append(left + right)
    return tuple(row)


def eulerian(m, k):
    """Eulerian number A(m, k) from A(m,k) = k A(m-1,k) + (m-k+1) A(m-1,k-1)."""
    if m < 1:
        raise ValueError(f"eulerian: need m >= 1, got {m}")
    if k < 1 or k > m:
        return 0
    return _eulerian_row(m)[k - 1]


def eulerian_row(m):
    """[A(m,1), ..., A(m,m)]."""
    if m < 1:
        raise ValueError(f"eulerian_row: need m >= 1, got {m}")
    return list(_eulerian_row(m))


def worpitzky_check(m, k):
    """True iff k^m = sum_s A(m,s) C(k+s-1, m)."""
    rhs = sum(eulerian(m, s) * binomial(k + s - 1, m) for s in range(1, m + 1))
    return k**m == rhs


def numerator_from_hilbert(values, denom_power):
    """Coefficients h_0..h_L of (1-t)^d * sum values[k] t^k, truncated at L.

    h_j = sum_{s=0}^{j} (-1)^s values[j-s] C(d, s).  The caller strips trailing
    zeros once enough values have been supplied.
    """
    d = denom_power
    out = []
    for jj in range(len(values)):
        out.append(sum((-1) ** s * values[jj - s] * binomial(d, s) for s in range(jj + 1)))
    return out


def expand_series(numerator, denom_power, length):
    """First ``length`` coefficients of numerator(t) / (1-t)^d."""
    d = denom_power
    out = []
    for k in range(length):
        if d == 0:
            out.append(numerator[k] if k < len(numerator) else 0)
            continue
        out.append(
            sum(numerator[j] * binomial(d - 1 + k - j, k - j) for j in range(min(k, len(numerator) - 1) + 1))
        )
    return out


def trim(seq):
    """Drop trailing zeros (keeps at least nothing for the zero sequence)."""
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return seq
