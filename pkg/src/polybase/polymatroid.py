"""Discrete polymatroids and their transversal presentations.

Conventions
-----------
* The ground set is ``[n] = {1..n}``.  Subsets are stored as bitmasks
  internally (bit ``k-1`` stands for element ``k``) and shown to callers as
  sorted tuples of 1-based integers.
* An exponent set is a lexicographically sorted list of distinct tuples.
* A ``RankFunction`` is total on all ``2^n`` subsets and is indexed by mask.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import NamedTuple


class SearchSpaceExceeded(ValueError):
    """Raised when an exhaustive search is asked to run beyond its scale."""


# -- subsets -----------------------------------------------------------------

def mask_of(subset):
    if isinstance(subset, int):
        return subset
    m = 0
    for k in subset:
        m |= 1 << (k - 1)
    return m


def subset_of(mask):
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def _popcount(mask):
    return bin(mask).count("1")


def _subset_order(masks):
    # size first, then lexicographic on the element tuple
    return sorted(masks, key=lambda m: (_popcount(m), subset_of(m)))


def exponent_set(vectors):
    return sorted({tuple(v) for v in vectors})


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    n: int
    sets: tuple

    def __post_init__(self):
        if self.n < 1 or self.n > 64:
            raise ValueError(f"ground set size must be in 1..64, got {self.n}")
        norm = []
        for s in self.sets:
            s = frozenset(s)
            if not s:
                raise ValueError("presentation sets must be nonempty")
            if min(s) < 1 or max(s) > self.n:
                raise ValueError(f"set {sorted(s)} is not inside [{self.n}]")
            norm.append(s)
        if not norm:
            raise ValueError("a presentation needs at least one set")
        object.__setattr__(self, "sets", tuple(norm))

    @property
    def m(self):
        return len(self.sets)

    def canonical(self):
        """Same multiset of sets, in a fixed order."""
        return Presentation(self.n, tuple(sorted(self.sets, key=lambda s: (len(s), sorted(s)))))

    def as_lists(self):
        return [sorted(s) for s in self.sets]

    def to_dict(self):
        return {"n": self.n, "sets": self.as_lists()}


def transversal_bases(pres):
    """All sums e_{i_1} + ... + e_{i_m} with i_k in A_k."""
    n, m = pres.n, pres.m
    radix = m + 1
    unit = [radix**k for k in range(n)]
    codes = {0}
    for s in pres.sets:
        steps = [unit[k - 1] for k in s]
        codes = {c + u for c in codes for u in steps}
    out = []
    for c in codes:
        v = []
        for _ in range(n):
            c, r = divmod(c, radix)
            v.append(r)
        out.append(tuple(v))
    out.sort()
    return out


def transversal_rank(pres, X):
    xm = mask_of(X)
    return sum(1 for s in pres.sets if mask_of(s) & xm)


def has_presentation_cycles(pres):
    """Cycle test on the bipartite incidence graph (sets vs. elements)."""
    parent = list(range(pres.m + pres.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, s in enumerate(pres.sets):
        for x in s:
            a, b = find(k), find(pres.m + x - 1)
            if a == b:
                return True
            parent[a] = b
    return False


# -- rank functions ----------------------------------------------------------

class RankFunction:
    """Integer-valued map on all subsets of [n]."""

    __slots__ = ("n", "values")

    def __init__(self, n, values):
        values = tuple(int(v) for v in values)
        if len(values) != 1 << n:
            raise ValueError(f"need {1 << n} values, got {len(values)}")
        if values[0] != 0:
            raise ValueError("rank of the empty set must be 0")
        self.n = n
        self.values = values

    @classmethod
    def from_callable(cls, n, f):
        return cls(n, [f(subset_of(m)) for m in range(1 << n)])

    def __call__(self, X):
        return self.values[mask_of(X)]

    def __eq__(self, other):
        return isinstance(other, RankFunction) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return f"RankFunction(n={self.n}, values={self.values})"


def transversal_rank_function(pres):
    masks = [mask_of(s) for s in pres.sets]
    return RankFunction(pres.n, [sum(1 for a in masks if a & x) for x in range(1 << pres.n)])


def rank_function_violation(rho):
    """Return a witness pair (F1, F2) if rho is not nondecreasing and submodular.

    Monotonicity failures come back as (F, F+x).  Submodularity is tested in
    its local form rho(F+x) + rho(F+y) >= rho(F+x+y) + rho(F), which is
    equivalent to the global one; the witness is then (F+x, F+y).
    """
    n, v = rho.n, rho.values
    for f in range(1 << n):
        for x in range(n):
            bx = 1 << x
            if f & bx:
                continue
            if v[f] > v[f | bx]:
                return subset_of(f), subset_of(f | bx)
            for y in range(x + 1, n):
                by = 1 << y
                if f & by:
                    continue
                if v[f | bx] + v[f | by] < v[f | bx | by] + v[f]:
                    return subset_of(f | bx), subset_of(f | by)
    return None


def _points_under(rho):
    n, v = rho.n, rho.values
    bounds = [v[1 << k] for k in range(n)]
    out = []
    masks = range(1, 1 << n)
    for u in product(*(range(b + 1) for b in bounds)):
        sums = [0] * (1 << n)
        ok = True
        for mk in masks:
            low = mk & -mk
            sums[mk] = sums[mk ^ low] + u[low.bit_length() - 1]
            if sums[mk] > v[mk]:
                ok = False
                break
        if ok:
            out.append(u)
    return out


def polymatroid_points(rho):
    """All u >= 0 with u(F) <= rho(F) for every F."""
    bad = rank_function_violation(rho)
    if bad is not None:
        raise ValueError(f"rank function is not nondecreasing submodular; witness {bad}")
    return _points_under(rho)


def rank_function_of(P):
    """rho_P(F) = max over u in P of u(F)."""
    P = list(P)
    n = len(P[0])
    vals = [0] * (1 << n)
    for u in P:
        sums = [0] * (1 << n)
        for mk in range(1, 1 << n):
            low = mk & -mk
            sums[mk] = sums[mk ^ low] + u[low.bit_length() - 1]
            if sums[mk] > vals[mk]:
                vals[mk] = sums[mk]
    return RankFunction(n, vals)


def rho_closed_sets(rho, include_ground=True):
    """Nonempty F with rho(F) < rho(G) for every G properly containing F.

    The ground set has no proper superset, so it is closed by definition;
    ``include_ground=False`` lists only the proper closed subsets.
    """
    n, v = rho.n, rho.values
    full = (1 << n) - 1
    out = []
    for f in range(1, 1 << n):
        if f == full and not include_ground:
            continue
        rest = full ^ f
        closed = True
        g = rest
        while g:
            if v[f | g] <= v[f]:
                closed = False
                break
            g = (g - 1) & rest
        if closed:
            out.append(f)
    return [subset_of(m) for m in _subset_order(out)]


def rho_inseparable_sets(rho):
    """Nonempty F with no partition F = F1 + F2 (both nonempty) that splits rho."""
    v = rho.values
    out = []
    for f in range(1, 1 << rho.n):
        sep = False
        g = (f - 1) & f
        while g:
            if v[g] + v[f ^ g] == v[f]:
                sep = True
                break
            g = (g - 1) & f
        if not sep:
            out.append(f)
    return [subset_of(m) for m in _subset_order(out)]


# -- axioms and criteria -----------------------------------------------------

def is_matroid(family):
    """Check the independence axioms on a family of subsets of [n]."""
    fam = {frozenset(s) for s in family}
    if not fam:
        raise ValueError("is_matroid: the family must be nonempty")
    for f in fam:
        for x in f:
            if f - {x} not in fam:
                return False
    for f1 in fam:
        for f2 in fam:
            if len(f1) > len(f2) and not any(f2 | {x} in fam for x in f1 - f2):
                return False
    return True


def _moduli(B):
    return {sum(u) for u in B}


def bases_exchange_check(B, symmetric=False):
    B = [tuple(u) for u in B]
    if len(_moduli(B)) > 1:
        raise ValueError("bases_exchange_check: vectors have unequal moduli")
    members = set(B)
    n = len(B[0]) if B else 0
    for u in B:
        for v in B:
            for i in range(n):
                if u[i] <= v[i]:
                    continue
                found = False
                for j in range(n):
                    if u[j] >= v[j]:
                        continue
                    w = list(u)
                    w[i] -= 1
                    w[j] += 1
                    if tuple(w) not in members:
                        continue
                    if symmetric:
                        z = list(v)
                        z[j] -= 1
                        z[i] += 1
                        if tuple(z) not in members:
                            continue
                    found = True
                    break
                if not found:
                    return False
    return True


def subvector_closure(B):
    out = set()
    for u in B:
        out.update(product(*(range(x + 1) for x in u)))
    return sorted(out)


def _subvector_closed(members):
    for u in members:
        for k, x in enumerate(u):
            if x:
                w = list(u)
                w[k] -= 1
                if tuple(w) not in members:
                    return False
    return True


def maximal_elements(P):
    members = set(map(tuple, P))
    out = []
    for u in members:
        up = False
        for k in range(len(u)):
            w = list(u)
            w[k] += 1
            if tuple(w) in members:
                up = True
                break
        if not up:
            out.append(u)
    return sorted(out)


def is_discrete_polymatroid(P, method="bases"):
    """Discrete polymatroid test.

    ``method="bases"``: subvector-closed, and the maximal elements share a
    modulus and satisfy the exchange property.
    ``method="augmentation"``: subvector-closed, and whenever |u| < |v| some
    i with u_i < v_i has u + e_i in P.
    """
    members = set(map(tuple, P))
    if not members or not _subvector_closed(members):
        return False
    if method == "bases":
        top = maximal_elements(members)
        if len(_moduli(top)) != 1:
            return False
        return bases_exchange_check(top, symmetric=False)
    if method == "augmentation":
        for u in members:
            for v in members:
                if sum(u) >= sum(v):
                    continue
                ok = False
                for i in range(len(u)):
                    if u[i] < v[i]:
                        w = list(u)
                        w[i] += 1
                        if tuple(w) in members:
                            ok = True
                            break
                if not ok:
                    return False
        return True
    raise ValueError(f"unknown method {method!r}")


def conv_lattice_check(P):
    """Integer points cut out by the rank inequalities of P are exactly P."""
    return set(_points_under(rank_function_of(P))) == set(map(tuple, P))


class GorensteinWitness(NamedTuple):
    gorenstein: bool
    delta: int | None


def ehrhart_gorenstein_check(P):
    """Gorenstein test for the Ehrhart ring of an integral polymatroid.

    Needs every unit vector in P.  Gorenstein iff an integer delta >= 1 has
    rho(F) * delta = |F| + 1 for all F that are rho-closed and rho-inseparable.
    """
    P = [tuple(u) for u in P]
    n = len(P[0])
    members = set(P)
    for k in range(n):
        e = tuple(1 if x == k else 0 for x in range(n))
        if e not in members:
            raise ValueError(f"ehrhart_gorenstein_check: e_{k + 1} is not in P")
    rho = rank_function_of(P)
    tests = set(rho_closed_sets(rho)) & set(rho_inseparable_sets(rho))
    delta = None
    for F in sorted(tests):
        r, size = rho(F), len(F) + 1
        if size % r:
            return GorensteinWitness(False, None)
        d = size // r
        if delta is None:
            delta = d
        elif d != delta:
            return GorensteinWitness(False, None)
    return GorensteinWitness(True, delta)


def chain_polymatroid(a):
    """{u >= 0 : sum_{k>=i} u_k <= sum_{k>=i} a_k for every i}."""
    n = len(a)
    tails = [sum(a[i:]) for i in range(n)]
    out = []
    for u in product(*(range(tails[k] + 1) for k in range(n))):
        if all(sum(u[i:]) <= tails[i] for i in range(n)):
            out.append(u)
    return out


# -- presentation search -----------------------------------------------------

def find_transversal_presentation(B, max_m, max_n=5):
    """Exhaustive search for a presentation whose base set is B.

    Candidates are multisets of ``max_m`` nonempty subsets of [n].  A partial
    multiset is dropped as soon as some X meets more sets than rho_B(X)
    allows, or too few slots remain to reach rho_B(X).
    """
    B = exponent_set(B)
    if not B:
        raise ValueError("empty base set")
    n = len(B[0])
    if _moduli(B) != {max_m}:
        raise ValueError(f"all vectors must have modulus {max_m}")
    if n > max_n:
        raise SearchSpaceExceeded(f"n={n} exceeds the exhaustive limit {max_n}")
    target = set(B)
    rho = rank_function_of(B).values
    subsets = list(range(1, 1 << n))
    # hits[s][X] = 1 when subset s meets X
    meets = [[1 if s & x else 0 for x in range(1 << n)] for s in subsets]
    xs = range(1, 1 << n)

    def rec(start, chosen, counts):
        left = max_m - len(chosen)
        if left == 0:
            if all(counts[x] == rho[x] for x in xs):
                pres = Presentation(n, tuple(frozenset(subset_of(s)) for s in chosen))
                if set(transversal_bases(pres)) == target:
                    return pres
            return None
        for idx in range(start, len(subsets)):
            row = meets[idx]
            new = [c + h for c, h in zip(counts, row)]
            if any(new[x] > rho[x] or rho[x] - new[x] > left - 1 for x in xs):
                continue
            hit = rec(idx, chosen + [subsets[idx]], new)
            if hit is not None:
                return hit
        return None

    return rec(0, [], [0] * (1 << n))


def enumerate_presentations(n, m):
    """All multisets of m nonempty subsets of [n], as canonical presentations."""
    subsets = [frozenset(subset_of(s)) for s in range(1, 1 << n)]
    for combo in combinations_with_replacement(subsets, m):
        yield Presentation(n, combo)
