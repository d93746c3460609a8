"""Intersections of Gorenstein window families.

The Gorenstein member of the window family with window sigma^t[i] has
j = n-1-i, so its exponent set is {alpha : |alpha| = n, window sum <= i+1}.
This module intersects r such sets, checks that the result is again
Gorenstein with a-invariant -1, and decides (for two sets, the first at
shift 0) when the intersection is itself a transversal base set.
"""

from dataclasses import dataclass, field
from typing import NamedTuple
import warnings

from ._enum import compositions, rows_to_tuples
from .canonical import canonical_generators_bruteforce
from .cone import ConeRep, FamilyParams, cyclic_window, nu_vector, unit_vector
from .polymatroid import Presentation, SearchSpaceExceeded, find_transversal_presentation, transversal_bases

INTERSECTION_CUTOFF = 3


@dataclass(frozen=True)
class IntersectionSpec:
    n: int
    pairs: tuple  # ((i_1, t_1), ..., (i_r, t_r)), t_1 = 0

    def __post_init__(self):
        n = self.n
        pairs = tuple((int(i), int(t)) for i, t in self.pairs)
        if not pairs:
            raise ValueError("need at least one (i, t) pair")
        if n < 3:
            raise ValueError(f"need n >= 3, got {n}")
        for i, t in pairs:
            if not 1 <= i <= n - 2 or not 0 <= t <= n - 1:
                raise ValueError(f"pair ({i},{t}) out of range for n={n}")
        if pairs[0][1] != 0:
            raise ValueError("the first pair must have shift 0")
        object.__setattr__(self, "pairs", pairs)

    @property
    def r(self):
        return len(self.pairs)

    def family(self, s):
        i, t = self.pairs[s]
        return FamilyParams(self.n, i, self.n - 1 - i, t)


def window_exponents(n, i, t):
    """{alpha : |alpha| = n, sum over the cyclic window sigma^t[i] <= i+1}."""
    pts = compositions(n, n)
    idx = [k - 1 for k in cyclic_window(n, i, t)]
    return rows_to_tuples(pts[pts[:, idx].sum(axis=1) <= i + 1])


def intersection_exponents(spec):
    pts = compositions(spec.n, spec.n)
    keep = None
    for i, t in spec.pairs:
        idx = [k - 1 for k in cyclic_window(spec.n, i, t)]
        ok = pts[:, idx].sum(axis=1) <= i + 1
        keep = ok if keep is None else keep & ok
    return rows_to_tuples(pts[keep])


def intersection_cone_rep(spec):
    """The nu normals of every member together with e_1..e_n (primitive)."""
    n = spec.n
    normals = [nu_vector(spec.family(s)).normal for s in range(spec.r)]
    normals += [unit_vector(n, k) for k in range(1, n + 1)]
    rep = ConeRep(n, tuple(normals))
    if rep.had_duplicates:
        warnings.warn(f"{spec}: duplicate normals were merged", stacklevel=2)
    return rep


class GorensteinCheck(NamedTuple):
    gorenstein: bool
    inconclusive: bool
    generators: tuple
    a_invariant: int | None


def intersection_gorenstein_check(spec, max_degree=INTERSECTION_CUTOFF):
    """Oracle: canonical generators of the intersection are exactly (1,...,1)."""
    gens = canonical_generators_bruteforce(intersection_exponents(spec), intersection_cone_rep(spec), max_degree)
    ok = gens.generators == ((1,) * spec.n,)
    return GorensteinCheck(ok, gens.inconclusive, gens.generators, gens.a_invariant)


def intersection_a_invariant(spec):
    return -1


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ClassificationVerdict:
    is_base_ring: bool
    condition: str | None  # one of "a".."e" when true
    case: str | None  # which construction was used
    presentation: Presentation | None = None
    verified: bool | None = None
    witness: str | None = None
    params: tuple = field(default=())


def _condition(n, i1, t2, i2):
    if i1 == 1:
        return "a"
    if t2 == 0:
        return "b"
    if t2 == i1:
        return "c"
    if 1 <= t2 <= i1 - 1:
        if 1 <= i2 <= i1 - t2 or n - t2 <= i2 <= n - 2:
            return "d"
        return None
    # i1 + 1 <= t2 <= n - 1
    if 1 <= i2 <= n - t2 or n - t2 + i1 <= i2 <= n - 2:
        return "e"
    return None


def _check_params(n, i1, t2, i2):
    if n < 3 or not 1 <= i1 <= n - 2 or not 1 <= i2 <= n - 2 or not 0 <= t2 <= n - 1:
        raise ValueError(f"parameters out of range: n={n}, i1={i1}, t2={t2}, i2={i2}")


def _layout(n, blocks):
    # blocks: list of (first, last, set) with 1-based inclusive slot ranges
    sets = [None] * (n + 1)
    for lo, hi, s in blocks:
        for k in range(lo, hi + 1):
            sets[k] = frozenset(s)
    missing = [k for k in range(1, n + 1) if sets[k] is None]
    if missing:
        raise AssertionError(f"layout leaves slots {missing} empty")
    return Presentation(n, tuple(sets[1:]))


def _construct(n, i1, t2, i2):
    full = set(range(1, n + 1))
    W = set(cyclic_window(n, i2, t2))
    I1 = set(range(1, i1 + 1))
    no_w, no_i1 = full - W, full - I1
    cond = _condition(n, i1, t2, i2)
    if cond is None:
        raise ValueError(f"({n},{i1},{t2},{i2}) is not a base-ring instance")

    def case3():
        if i2 <= i1:
            return "3.a", [(1, i2, full), (n, n, full), (i2 + 1, i1, full - set(range(1, i2 + 1))),
                           (i1 + 1, n - 1, no_i1)]
        return "3.b", [(1, i1, full), (n, n, full), (i1 + 1, i2, no_i1),
                       (i2 + 1, n - 1, full - set(range(1, i2 + 1)))]

    def wrap_case():
        # C_1..C_{n-i2-1} drop W, C_{n-i2}..C_{i1} = C_n = [n], rest drop [i1]
        return [(1, n - i2 - 1, no_w), (n - i2, i1, full), (n, n, full), (i1 + 1, n - 1, no_i1)]

    if cond == "a":
        if t2 == 0:
            label, blocks = case3()
            return "1.a/" + label, blocks
        if t2 + i2 > n:
            return "1.e", [(1, 1, full), (n, n, full), (2, n - i2, no_w), (n - i2 + 1, n - 1, no_i1)]
        if i2 == n - 2:
            return "1.c", [(1, 1, no_w), (n, n, full), (2, n - 1, no_i1)]
        if i2 == n - 3:
            return "1.d", [(1, 1, no_w), (n, n, no_w), (2, n - 1, no_i1)]
        return "1.b", [(1, 1, no_w), (n, n, no_w), (2, i2 + 2, no_i1), (i2 + 3, n - 1, no_i1 - W)]
    if cond == "b":
        return case3()
    if cond == "c":
        if i2 + t2 < n - 1:
            return "2.a", [(1, i1, no_w), (n, n, no_w), (i1 + 1, i1 + i2 + 1, no_i1),
                           (i1 + i2 + 2, n - 1, full - set(range(1, i1 + i2 + 1)))]
        if i2 + t2 == n - 1:
            return "2.b", [(1, i1, no_w), (i1 + 1, n - 1, no_i1), (n, n, full)]
        return "2.c", wrap_case()
    if cond == "d":
        if i2 + t2 <= i1:
            return "L2.1", [(1, i2, full), (n, n, full), (i2 + 1, i1, no_w), (i1 + 1, n - 1, no_i1)]
        return "L2.2", wrap_case()
    # cond == "e"
    if i2 + t2 <= n and i1 + 1 + i2 != n:
        return "L3.1", [(1, i1, no_w), (n, n, no_w), (i1 + 1, i1 + i2 + 1, no_i1),
                        (i1 + i2 + 2, n - 1, no_i1 - W)]
    if i2 + t2 <= n:
        return "L3.2", [(1, i1, no_w), (i1 + 1, n - 1, no_i1), (n, n, full)]
    return "L3.3", [(1, i1, full), (n, n, full), (i1 + 1, i1 + n - i2 - 1, no_w),
                    (i1 + n - i2, n - 1, no_i1)]


def construct_presentation(n, i1, t2, i2, with_case=False):
    """The explicit presentation C with transversal_bases(C) = A intersect B.

    Case labels: "1.a".."1.e", "2.a".."2.c", "3.a", "3.b" for the three
    situations i1 = 1, t2 = i1 and t2 = 0; "L2.k" for 1 <= t2 <= i1-1;
    "L3.k" for t2 >= i1+1.
    """
    _check_params(n, i1, t2, i2)
    label, blocks = _construct(n, i1, t2, i2)
    pres = _layout(n, blocks)
    return (pres, label) if with_case else pres


def classify(n, i1, t2, i2, attach_witness=False, verify=True):
    """Is K[A intersect B] a transversal base ring?  (A at shift 0.)"""
    _check_params(n, i1, t2, i2)
    cond = _condition(n, i1, t2, i2)
    if cond is None:
        witness = None
        if attach_witness and n <= 4:
            target = intersection_exponents(IntersectionSpec(n, ((i1, 0), (i2, t2))))
            if bruteforce_is_base_ring(n, target) is None:
                witness = "exhaustive search over all presentations found none"
        return ClassificationVerdict(False, None, None, witness=witness, params=(n, i1, t2, i2))
    pres, label = construct_presentation(n, i1, t2, i2, with_case=True)
    verified = None
    if verify:
        target = intersection_exponents(IntersectionSpec(n, ((i1, 0), (i2, t2))))
        verified = transversal_bases(pres) == target
    return ClassificationVerdict(True, cond, label, pres, verified, params=(n, i1, t2, i2))


def bruteforce_is_base_ring(n, target):
    """Search every multiset of n nonempty subsets of [n] (n <= 4)."""
    if n > 4:
        raise SearchSpaceExceeded(f"n={n}: exhaustive search is limited to n <= 4")
    return find_transversal_presentation(target, n, max_n=4)


def classification_grid(n):
    return [(n, i1, t2, i2) for i1 in range(1, n - 1) for t2 in range(n) for i2 in range(1, n - 1)]
