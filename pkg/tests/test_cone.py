import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polybase._enum import compositions, rows_to_tuples
from polybase._intlinalg import det, hnf, kernel, primitive, rank
from polybase.cone import (
    ConeRep,
    FamilyParams,
    Hyperplane,
    Lattice,
    NotPointedError,
    cone_facets_bruteforce,
    cone_membership,
    cyclic_window,
    det_check,
    extremal_rays,
    family_cone_rep,
    family_exponents,
    family_grid,
    family_presentation,
    irreducible_rep_check,
    lattice_of,
    nu_vector,
    orthant_rep,
    semigroup_membership_normal,
    unit_vector,
)
from polybase.intersect import IntersectionSpec, intersection_exponents
from polybase.polymatroid import transversal_bases

P732 = FamilyParams(7, 3, 2)


# -- exact integer linear algebra ------------------------------------------

def test_intlinalg_basics():
    assert primitive((4, -6, 8)) == (2, -3, 4)
    assert rank([(1, 2), (2, 4)]) == 1
    assert rank([(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
    assert det([[2, 1], [1, 3]]) == 5
    assert det([[1, 2], [2, 4]]) == 0
    assert kernel([(1, 1, 1)], 3) == [(-1, 1, 0), (-1, 0, 1)]
    # (6,8) - 2(2,4) = (2,0); the index is |2*8 - 4*6| = 8
    assert hnf([(2, 4), (6, 8)], 2) == [(2, 0), (0, 4)]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_agrees_with_float(m):
    assert det(m) == round(np.linalg.det(np.array(m, dtype=float)))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=3))
def test_kernel_is_orthogonal(rows):
    ker = kernel(rows, 4)
    assert len(ker) == 4 - rank(rows)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


# -- family data -----------------------------------------------------------

def test_family_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(3, 2, 1)
    with pytest.raises(ValueError):
        FamilyParams(4, 1, 4)
    p = FamilyParams(7, 4, 5)
    assert (p.case, p.r) == ("b", 3)
    assert (P732.case, P732.r) == ("a", 1)


def test_cyclic_window():
    assert cyclic_window(5, 3, 0) == (1, 2, 3)
    assert cyclic_window(5, 3, 4) == (1, 2, 5)


def test_nu_vector():
    assert nu_vector(FamilyParams(4, 1, 1)).normal == (-1, 3, 3, 3)
    assert nu_vector(FamilyParams(4, 1, 2)).normal == (-2, 2, 2, 2)
    assert nu_vector(FamilyParams(4, 1, 2)).primitive().normal == (-1, 1, 1, 1)
    assert nu_vector(FamilyParams(4, 1, 1, 1)).normal == (3, -1, 3, 3)


def test_family_exponents():
    A = family_exponents(FamilyParams(3, 1, 1))
    assert len(A) == 9 and (3, 0, 0) not in A
    assert len(family_exponents(P732)) == 1568
    for a in family_exponents(FamilyParams(5, 2, 4, 1)):
        assert a[1] + a[2] <= 1


@pytest.mark.parametrize("p", family_grid(range(3, 7), shifts=True), ids=lambda p: str(p.as_tuple()))
def test_family_presentation_bases(p):
    assert transversal_bases(family_presentation(p)) == family_exponents(p)


def test_family_cone_rep():
    rep = family_cone_rep(P732)
    assert set(rep.normals) == {(-2, -2, -2, 5, 5, 5, 5)} | {unit_vector(7, k) for k in range(1, 8)}
    assert (3, -1, 3, 3) in family_cone_rep(FamilyParams(4, 1, 1, 1)).normals


def test_membership():
    rep = family_cone_rep(P732)
    assert cone_membership(rep, (1,) * 7, strict=True)
    assert not cone_membership(family_cone_rep(FamilyParams(7, 4, 5)), (1,) * 7, strict=True)
    assert cone_membership(rep, (0,) * 7)
    assert Hyperplane((-2, -2, -2, 5, 5, 5, 5))((1,) * 7) == 14


def test_extremal_rays():
    rays = set(extremal_rays(family_cone_rep(P732)))
    want = {unit_vector(7, k) for k in range(4, 8)}
    want |= {tuple(5 if x == r else 2 if x == s else 0 for x in range(1, 8)) for r in range(1, 4) for s in range(4, 8)}
    assert rays == want
    assert set(extremal_rays(orthant_rep(3))) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert len(extremal_rays(family_cone_rep(FamilyParams(4, 2, 1)))) == 6
    with pytest.raises(NotPointedError):
        extremal_rays(ConeRep(2, ((1, 0),)))


def test_irreducible_rep():
    A = family_exponents(P732)
    rep = family_cone_rep(P732)
    assert irreducible_rep_check(A, rep)
    assert not irreducible_rep_check(A, rep.without(unit_vector(7, 1)))
    assert not irreducible_rep_check(A, rep.without((-2, -2, -2, 5, 5, 5, 5)))
    with pytest.raises(ValueError):
        irreducible_rep_check([(1, 0, 0), (0, 1, 0)], orthant_rep(3))


def test_facets_bruteforce():
    assert cone_facets_bruteforce(family_exponents(P732)) == family_cone_rep(P732)
    veronese = rows_to_tuples(compositions(3, 3))
    assert cone_facets_bruteforce(veronese) == orthant_rep(3)
    ex1 = intersection_exponents(IntersectionSpec(4, ((1, 0), (1, 1))))
    want = ConeRep(4, ((-1, 1, 1, 1), (1, -1, 1, 1)) + tuple(unit_vector(4, k) for k in range(1, 5)))
    assert cone_facets_bruteforce(ex1) == want
    with pytest.raises(ValueError):
        cone_facets_bruteforce([(1, 0, 0), (0, 1, 0)])


def test_det_check():
    assert det_check(P732) == 7000 == 7 * 5**3 * 2**3
    assert det_check(FamilyParams(3, 1, 1)) == 6
    assert det_check(FamilyParams(4, 2, 1)) == 36


def test_lattice():
    L = lattice_of(family_exponents(FamilyParams(3, 1, 1)))
    assert L.basis == ((1, 0, 2), (0, 1, 2), (0, 0, 3))
    assert L.contains((1, 1, 1)) and not L.contains((1, 0, 0))
    assert L.contains((0, 0, 0))
    e1 = lattice_of([(1, 0)])
    assert e1.rank == 1 and e1.contains((5, 0)) and not e1.contains((0, 1))
    assert isinstance(L, Lattice)


def test_semigroup_membership():
    A = family_exponents(P732)
    rep = family_cone_rep(P732)
    assert semigroup_membership_normal(A, rep, (2,) * 7)
    assert not semigroup_membership_normal(A, rep, (1,) * 6 + (2,))
    assert semigroup_membership_normal(A, rep, (0,) * 7)


# -- sum identities along the nu hyperplane ---------------------------------

def _betas(n, total):
    return rows_to_tuples(compositions(total, n))


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("s", [2, 3])
def test_window_sum_case_a(n, s):
    for p in family_grid([n]):
        if p.case != "a":
            continue
        nu = nu_vector(p)
        for t in range(1, n - p.i - p.j):
            for b in _betas(n, s * n):
                if nu(b) == n * (n - p.i - p.j - t):
                    assert sum(b[: p.i]) == (n - p.j) * (s - 1) + p.i + t
                    assert sum(b[p.i:]) == n + p.j * (s - 1) - p.i - t


@pytest.mark.parametrize("n", [4, 5])
def test_window_sum_case_b(n):
    for p in family_grid([n]):
        if p.case != "b":
            continue
        nu = nu_vector(p)
        for s in range(p.r, p.r + 2):
            for t in range(1, p.r * (n - p.j) - p.i + 1):
                for b in _betas(n, s * n):
                    if nu(b) == n * t:
                        assert sum(b[: p.i]) == (n - p.j) * s - t
                        assert sum(b[p.i:]) == p.j * s + t
