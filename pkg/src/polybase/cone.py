"""Polyhedral cones over exponent sets and the integer lattice they span.

The cones studied here are generated by a finite set A of nonnegative
integer vectors of equal modulus.  Two descriptions are used side by side:

* a *halfspace representation* (``ConeRep``): primitive integer normals
  a_1..a_r with cone = {x : <x, a_k> >= 0};
* the *generators* A themselves.

Closed forms describe the representation of the window family directly
(``family_cone_rep``); ``cone_facets_bruteforce`` recovers the facets of
R_+A from A alone, and ``irreducible_rep_check`` certifies that a proposed
representation is the irredundant one.

Everything is exact.  Kernels and ranks go through fraction-free or
rational elimination in ``_intlinalg``; nothing touches floating point.
"""

from dataclasses import dataclass
from itertools import combinations
import warnings

import numpy as np

from ._enum import compositions, rows_to_tuples
from ._intlinalg import content, det, hnf, kernel, primitive, rank
from .polymatroid import Presentation


# -- family parameters -------------------------------------------------------

def cyclic_window(n, i, t):
    """sigma^t[i] = {t+1, ..., t+i} read cyclically in [n], 1-based, sorted."""
    return tuple(sorted(((t + k - 1) % n) + 1 for k in range(1, i + 1)))


@dataclass(frozen=True)
class FamilyParams:
    """Parameters (n, i, j, t) of the window family.

    The exponent set consists of all alpha with |alpha| = n whose sum over the
    cyclic window sigma^t[i] is at most n - j.
    """

    n: int
    i: int
    j: int
    t: int = 0

    def __post_init__(self):
        n, i, j, t = self.n, self.i, self.j, self.t
        if n < 3:
            raise ValueError(f"need n >= 3, got n={n}")
        if not 1 <= i <= n - 2:
            raise ValueError(f"need 1 <= i <= n-2, got i={i} for n={n}")
        if not 1 <= j <= n - 1:
            raise ValueError(f"need 1 <= j <= n-1, got j={j} for n={n}")
        if not 0 <= t <= n - 1:
            raise ValueError(f"need 0 <= t <= n-1, got t={t} for n={n}")

    @property
    def case(self):
        return "a" if self.i + self.j <= self.n - 1 else "b"

    @property
    def r(self):
        return -(-(self.i + 1) // (self.n - self.j))

    @property
    def window(self):
        return cyclic_window(self.n, self.i, self.t)

    def as_tuple(self):
        return (self.n, self.i, self.j, self.t)


def family_grid(n_values, shifts=False):
    """All valid FamilyParams for the given n values (t = 0 unless ``shifts``)."""
    out = []
    for n in n_values:
        for i in range(1, n - 1):
            for j in range(1, n):
                for t in range(n) if shifts else (0,):
                    out.append(FamilyParams(n, i, j, t))
    return out


# -- hyperplanes and representations ----------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """Linear form H_a(x) = <x, a>; ``normal`` is kept exactly as given."""

    normal: tuple

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(x) for x in self.normal))
        if not any(self.normal):
            raise ValueError("zero normal")

    def __call__(self, x):
        return sum(a * b for a, b in zip(self.normal, x))

    def primitive(self):
        return Hyperplane(primitive(self.normal))

    @property
    def content(self):
        return content(self.normal)


@dataclass(frozen=True)
class ConeRep:
    """Halfspace representation with primitive, deduplicated, sorted normals."""

    n: int
    normals: tuple

    def __post_init__(self):
        seen = []
        dup = False
        for a in self.normals:
            a = a.normal if isinstance(a, Hyperplane) else a
            if len(a) != self.n:
                raise ValueError("normal has the wrong length")
            p = primitive(tuple(int(x) for x in a))
            if not any(p):
                raise ValueError("zero normal")
            if p in seen:
                dup = True
                continue
            seen.append(p)
        object.__setattr__(self, "normals", tuple(sorted(seen)))
        object.__setattr__(self, "_had_duplicates", dup)

    @property
    def had_duplicates(self):
        return self._had_duplicates

    def without(self, normal):
        p = primitive(tuple(normal))
        return ConeRep(self.n, tuple(a for a in self.normals if a != p))

    def matrix(self):
        return np.array(self.normals, dtype=np.int64).reshape(len(self.normals), self.n)


def unit_vector(n, k):
    """e_k, 1-based."""
    return tuple(1 if x == k - 1 else 0 for x in range(n))


def nu_vector(p):
    """nu^j_{sigma^t[i]}: -j on the window, n - j elsewhere (unreduced)."""
    win = set(p.window)
    return Hyperplane(tuple(-p.j if k in win else p.n - p.j for k in range(1, p.n + 1)))


def family_exponents(p):
    """alpha with |alpha| = n and window sum at most n - j, lex sorted."""
    pts = compositions(p.n, p.n)
    idx = [k - 1 for k in p.window]
    keep = pts[:, idx].sum(axis=1) <= p.n - p.j
    return rows_to_tuples(pts[keep])


def family_presentation(p):
    """n - j copies of [n] and j copies of [n] minus the window, slot by slot.

    Case a (i + j <= n-1): slots sigma^t(i+1..i+j) drop the window.
    Case b (i + j >= n):  slots sigma^t(1..i+j-n) and sigma^t(i+1..n) drop it.
    """
    n, i, j, t = p.n, p.i, p.j, p.t
    full = frozenset(range(1, n + 1))
    cut = full - set(p.window)
    if p.case == "a":
        cut_slots = set(range(i + 1, i + j + 1))
    else:
        cut_slots = set(range(1, i + j - n + 1)) | set(range(i + 1, n + 1))
    sets = [None] * n
    for k in range(1, n + 1):
        pos = (k - 1 + t) % n  # sigma^t(k), 0-based
        sets[pos] = cut if k in cut_slots else full
    return Presentation(n, tuple(sets))


def family_cone_rep(p):
    return ConeRep(p.n, (nu_vector(p).normal,) + tuple(unit_vector(p.n, k) for k in range(1, p.n + 1)))


def orthant_rep(n):
    return ConeRep(n, tuple(unit_vector(n, k) for k in range(1, n + 1)))


# -- membership --------------------------------------------------------------

def cone_membership(rep, x, strict=False):
    for a in rep.normals:
        v = sum(p * q for p, q in zip(a, x))
        if v < 0 or (strict and v == 0):
            return False
    return True


def cone_membership_many(rep, X, strict=False):
    """Vectorised ``cone_membership`` over the rows of an integer array."""
    vals = np.asarray(X, dtype=np.int64) @ rep.matrix().T
    return (vals > 0).all(axis=1) if strict else (vals >= 0).all(axis=1)


# -- rays and facets ---------------------------------------------------------

class NotPointedError(ValueError):
    pass


def extremal_rays(rep):
    """Primitive generators of the one-dimensional faces."""
    n = rep.n
    N = list(rep.normals)
    if rank(N) < n:
        raise NotPointedError("cone contains a line (normals do not span)")
    rays = set()
    for sub in combinations(N, n - 1):
        ker = kernel(sub, n)
        if len(ker) != 1:
            continue
        v = ker[0]
        up = all(sum(a * b for a, b in zip(v, w)) >= 0 for w in N)
        down = all(sum(a * b for a, b in zip(v, w)) <= 0 for w in N)
        if up and down:
            raise NotPointedError(f"kernel vector {v} and its negation both lie in the cone")
        if up:
            rays.add(v)
        elif down:
            rays.add(tuple(-x for x in v))
    return sorted(rays)


def _incident_rank(A, a, n):
    return rank((alpha for alpha in A if sum(p * q for p, q in zip(alpha, a)) == 0), stop_at=n - 1)


def irreducible_rep_check(A, rep):
    """True iff ``rep`` is the irredundant halfspace description of R_+A."""
    A = [tuple(a) for a in A]
    n = rep.n
    if rank(A) < n:
        raise ValueError("not full-dimensional: A does not span R^n")
    if not all(cone_membership(rep, a) for a in A):
        return False
    for a in rep.normals:
        if _incident_rank(A, a, n) != n - 1:
            return False
    try:
        rays = extremal_rays(rep)
    except NotPointedError:
        return False
    prim = {primitive(a) for a in A}
    return all(r in prim for r in rays)


def cone_facets_bruteforce(A):
    """Facets of R_+A computed from A alone.

    Generators are inserted one at a time into a simplicial start cone.
    Every new normal is the kernel of a rank-(n-1) incidence group: it is
    built from two adjacent facets, one seeing the new point on each side,
    and adjacency is decided combinatorially from the sets of inserted
    generators lying on each facet.  The result is finally re-checked
    against A (one-sided, incident rank n-1).
    """
    A = sorted({tuple(a) for a in A})
    if not A:
        raise ValueError("empty exponent set")
    n = len(A[0])
    if rank(A) < n:
        raise ValueError("not full-dimensional: A does not span R^n")

    # simplicial start
    start, basis_rank = [], 0
    for idx, a in enumerate(A):
        if rank([A[s] for s in start] + [a]) > basis_rank:
            start.append(idx)
            basis_rank += 1
            if basis_rank == n:
                break
    facets = []  # (normal, incidence bitmask over indices of A)
    for k in start:
        others = [A[s] for s in start if s != k]
        v = kernel(others, n)[0]
        if sum(p * q for p, q in zip(v, A[k])) < 0:
            v = tuple(-x for x in v)
        inc = 0
        for s in start:
            if s != k:
                inc |= 1 << s
        facets.append((v, inc))

    in_start = set(start)
    for idx, g in enumerate(A):
        if idx in in_start:
            continue
        vals = [sum(p * q for p, q in zip(a, g)) for a, _ in facets]
        bit = 1 << idx
        if min(vals) >= 0:
            facets = [(a, inc | bit) if v == 0 else (a, inc) for (a, inc), v in zip(facets, vals)]
            continue
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new = []
        for kp in pos:
            ap, ip = facets[kp]
            for kq in neg:
                aq, iq = facets[kq]
                common = ip & iq
                if bin(common).count("1") < n - 2:
                    continue
                if any(
                    (facets[r][1] & common) == common
                    for r in range(len(facets))
                    if r != kp and r != kq
                ):
                    continue
                vp, vq = vals[kp], vals[kq]
                w = primitive(tuple(vp * y - vq * x for x, y in zip(ap, aq)))
                new.append((w, common | bit))
        kept = [(a, inc | bit) if v == 0 else (a, inc) for (a, inc), v in zip(facets, vals) if v >= 0]
        facets = kept + new

    normals = []
    for a, _ in facets:
        if _incident_rank(A, a, n) == n - 1 and all(sum(p * q for p, q in zip(a, x)) >= 0 for x in A):
            normals.append(a)
        else:  # pragma: no cover - would signal a bug in the insertion loop
            raise AssertionError(f"spurious facet {a}")
    return ConeRep(n, tuple(normals))


def det_check(p):
    """|det| of the matrix with rows J_1..J_i, J_{i+2}..J_n, J.

    J_k = (n-j)e_k + j e_{i+1} for k <= i, J_k = (n-j)e_1 + j e_k for
    k >= i+2, and J = n e_n.  Expected value n (n-j)^i j^(n-i-1).
    """
    if p.t != 0:
        raise ValueError("det_check is defined for shift t = 0")
    n, i, j = p.n, p.i, p.j

    def e(k):
        return [1 if x == k - 1 else 0 for x in range(n)]

    rows = []
    for k in range(1, i + 1):
        rows.append([(n - j) * a + j * b for a, b in zip(e(k), e(i + 1))])
    for k in range(i + 2, n + 1):
        rows.append([(n - j) * a + j * b for a, b in zip(e(1), e(k))])
    rows.append([n * a for a in e(n)])
    return abs(det(rows))


# -- lattice -----------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Z-span of a set of integer vectors, held as an HNF basis."""

    n: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    def _pivots(self):
        return [next(c for c, x in enumerate(row) if x) for row in self.basis]

    def contains(self, z):
        z = list(z)
        for row, c in zip(self.basis, self._pivots()):
            if any(z[:c]):
                return False
            q, rem = divmod(z[c], row[c])
            if rem:
                return False
            if q:
                z = [x - q * y for x, y in zip(z, row)]
        return not any(z)

    def contains_many(self, Z):
        Z = np.array(Z, dtype=np.int64, copy=True)
        ok = np.ones(Z.shape[0], dtype=bool)
        done = 0
        for row, c in zip(self.basis, self._pivots()):
            ok &= ~(Z[:, done:c] != 0).any(axis=1)
            q, rem = np.divmod(Z[:, c], row[c])
            ok &= rem == 0
            Z -= np.outer(q, np.array(row, dtype=np.int64))
            done = c + 1
        ok &= ~(Z != 0).any(axis=1)
        return ok


def lattice_of(A):
    A = [tuple(a) for a in A]
    if not A:
        raise ValueError("lattice_of: empty set")
    n = len(A[0])
    return Lattice(n, tuple(hnf(A, n)))


def semigroup_membership_normal(A, rep, z, lattice=None):
    """z in N A, decided as z in Z A and z in R_+ A (valid for normal N A)."""
    lat = lattice if lattice is not None else lattice_of(A)
    return lat.contains(z) and cone_membership(rep, z)


def warn_duplicates(rep, what):
    if rep.had_duplicates:
        warnings.warn(f"{what}: duplicate normals were merged", stacklevel=3)
    return rep
