"""Canonical-module generators, type, Gorenstein property and a-invariant.

For a normal semigroup ring K[NA] the canonical module is spanned by the
monomials whose exponents lie in NA intersected with the relative interior
of R_+A.  ``canonical_generators_bruteforce`` walks that set degree by
degree; ``canonical_generators_closed`` and ``type_formula`` give the window
family in closed form.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from ._enum import compositions, rows_to_tuples
from .combinatorics import binomial
from .cone import FamilyParams, cone_membership_many, family_cone_rep, family_exponents, lattice_of, unit_vector


@dataclass(frozen=True)
class CanonicalGenerators:
    generators: tuple
    degrees: tuple
    inconclusive: bool = False
    cutoff: int | None = None

    @property
    def type(self):
        return len(self.generators)

    @property
    def min_degree(self):
        return min(self.degrees) if self.degrees else None

    @property
    def a_invariant(self):
        return -self.min_degree if self.degrees else None

    def by_degree(self):
        out = {}
        for g, d in zip(self.generators, self.degrees):
            out.setdefault(d, []).append(g)
        return out


@dataclass(frozen=True)
class RingInvariants:
    type: int
    a_invariant: int
    gorenstein: bool
    r: int


def type_formula(p):
    """Type of the family ring, by the two binomial sums."""
    if not isinstance(p, FamilyParams):
        p = FamilyParams(*p)
    n, i, j = p.n, p.i, p.j
    if p.case == "a":
        return 1 + sum(
            binomial(n + i - j + t - 1, i - 1) * binomial(n - i + j - t - 1, n - i - 1)
            for t in range(1, n - i - j)
        )
    r = p.r
    return sum(
        binomial(r * (n - j) - t - 1, i - 1) * binomial(r * j + t - 1, n - i - 1)
        for t in range(1, r * (n - j) - i + 1)
    )


def gorenstein_family(p):
    return p.i + p.j == p.n - 1


def a_invariant(p):
    return -1 if p.i + p.j <= p.n - 1 else -p.r


def ring_invariants(p):
    return RingInvariants(type_formula(p), a_invariant(p), gorenstein_family(p), p.r)


def _split_vectors(p, first_sum, rest_sum):
    # alpha >= 1 with the given sums on the window and off it
    n, win = p.n, p.window
    off = [k for k in range(1, n + 1) if k not in win]
    heads = compositions(first_sum, len(win), [1] * len(win))
    tails = compositions(rest_sum, len(off), [1] * len(off))
    out = []
    for h, tl in product(heads.tolist(), tails.tolist()):
        v = [0] * n
        for k, x in zip(win, h):
            v[k - 1] = x
        for k, x in zip(off, tl):
            v[k - 1] = x
        out.append(tuple(v))
    return out


def canonical_generators_closed(p):
    """Generators from the closed description.

    Case a: (1,...,1) together with alpha >= 1 whose window sum is
    n+i-j+t and off-window sum n-i+j-t, t = 1..n-i-j-1 (degree 2).
    Case b: alpha >= 1 with window sum r(n-j)-t and off-window sum rj+t,
    t = 1..r(n-j)-i (degree r).
    """
    n, i, j = p.n, p.i, p.j
    gens = []
    if p.case == "a":
        gens.append((1,) * n)
        for t in range(1, n - i - j):
            gens.extend(_split_vectors(p, n + i - j + t, n - i + j - t))
    else:
        r = p.r
        for t in range(1, r * (n - j) - i + 1):
            gens.extend(_split_vectors(p, r * (n - j) - t, r * j + t))
    gens = sorted(set(gens))
    return CanonicalGenerators(tuple(gens), tuple(sum(g) // n for g in gens))


def default_cutoff(p=None, n=None):
    if p is not None:
        return max(p.r, 2) + 1
    return n


def canonical_generators_bruteforce(A, rep, max_degree=None, lattice=None):
    """Minimal generators of the canonical ideal, found degree by degree.

    W_d collects the lattice points of degree d strictly inside the cone.
    A point of W_d is a minimal generator unless subtracting some element of
    A lands back in the interior (the lattice condition is then automatic).
    """
    A = sorted({tuple(a) for a in A})
    n = len(A[0])
    moduli = {sum(a) for a in A}
    if len(moduli) != 1:
        raise ValueError("exponent set must have a common modulus")
    m = moduli.pop()
    if max_degree is None:
        max_degree = n
    if max_degree < 1:
        raise ValueError(f"max_degree must be >= 1, got {max_degree}")
    lat = lattice if lattice is not None else lattice_of(A)
    lower = [1 if unit_vector(n, k) in rep.normals else 0 for k in range(1, n + 1)]
    A_arr = np.array(A, dtype=np.int64)

    gens, degs = [], []
    last_found = False
    for d in range(1, max_degree + 1):
        pts = compositions(d * m, n, lower)
        if len(pts):
            pts = pts[cone_membership_many(rep, pts, strict=True)]
        if len(pts):
            pts = pts[lat.contains_many(pts)]
        alive = np.ones(len(pts), dtype=bool)
        for g in A_arr:
            if not alive.any():
                break
            idx = np.nonzero(alive)[0]
            hit = cone_membership_many(rep, pts[idx] - g, strict=True)
            alive[idx[hit]] = False
        found = rows_to_tuples(pts[alive])
        gens.extend(found)
        degs.extend([d] * len(found))
        last_found = bool(found)

    order = sorted(range(len(gens)), key=lambda k: gens[k])
    return CanonicalGenerators(
        tuple(gens[k] for k in order),
        tuple(degs[k] for k in order),
        inconclusive=last_found,
        cutoff=max_degree,
    )


def family_bruteforce(p, max_degree=None):
    cutoff = default_cutoff(p) if max_degree is None else max_degree
    return canonical_generators_bruteforce(family_exponents(p), family_cone_rep(p), cutoff)
