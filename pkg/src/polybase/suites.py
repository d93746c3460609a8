"""Formula-versus-oracle verification suites and experiment runners.

Each suite expands a grid into independent tasks.  A task returns a plain
dict with a ``status`` of "ok", "mismatch" or "inconclusive"; the CLI turns
those into JSON lines and an exit code.
"""

import random
import time
from itertools import combinations

from .canonical import (
    a_invariant,
    canonical_generators_bruteforce,
    canonical_generators_closed,
    default_cutoff,
    gorenstein_family,
    type_formula,
)
from .combinatorics import worpitzky_check
from .cone import (
    FamilyParams,
    cone_facets_bruteforce,
    det_check,
    extremal_rays,
    family_cone_rep,
    family_exponents,
    family_grid,
    irreducible_rep_check,
)
from .hilbert import (
    HilbertSeries,
    derivative_recurrence_check,
    ehrhart_bruteforce,
    ehrhart_formula,
    h_vector,
    hadamard,
    hibi_count_formula,
    hibi_relations,
    open_problem_report,
    segre_h_vector,
    segre_h_vector_from_values,
    series_coefficient,
    shape_checks,
)
from .intersect import (
    IntersectionSpec,
    bruteforce_is_base_ring,
    classification_grid,
    classify,
    intersection_exponents,
    intersection_gorenstein_check,
)
from .polymatroid import (
    Presentation,
    RankFunction,
    bases_exchange_check,
    enumerate_presentations,
    find_transversal_presentation,
    polymatroid_points,
    rank_function_violation,
    rho_closed_sets,
    rho_inseparable_sets,
    subvector_closure,
    transversal_bases,
    transversal_rank_function,
)

SUITES = ("type", "hilbert", "facets", "intersection", "segre", "chapter1")


def _status(ok, inconclusive=False):
    if not ok:
        return "mismatch"
    return "inconclusive" if inconclusive else "ok"


# -- per-task checks ---------------------------------------------------------

def check_type(params, cutoff=None):
    p = FamilyParams(*params)
    formula = type_formula(p)
    closed = canonical_generators_closed(p)
    cut = default_cutoff(p) if cutoff is None else cutoff
    brute = canonical_generators_bruteforce(family_exponents(p), family_cone_rep(p), cut)
    b, c = set(brute.generators), set(closed.generators)
    # generators found below the cutoff are final; extra ones settle a mismatch
    definite_mismatch = bool(b - c) or formula != closed.type
    agree = b == c and formula == brute.type
    detail = {
        "type_formula": formula,
        "type_closed": closed.type,
        "type_bruteforce": brute.type,
        "extra_in_bruteforce": len(b - c),
        "missing_in_bruteforce": len(c - b),
        "a_invariant": a_invariant(p),
        "a_invariant_bruteforce": brute.a_invariant,
        "gorenstein_criterion": (formula == 1) == gorenstein_family(p),
        "cutoff": cut,
        "inconclusive": brute.inconclusive,
    }
    ok = agree and brute.a_invariant == a_invariant(p) and detail["gorenstein_criterion"]
    if definite_mismatch:
        ok = False
    return {"check": "type", "input": list(p.as_tuple()), "status": _status(ok, brute.inconclusive), "detail": detail}


def check_hilbert(params, t_max=3):
    p = FamilyParams(*params)
    n = p.n
    bad = [t for t in range(t_max + 1) if ehrhart_formula(p, t) != ehrhart_bruteforce(p, n, t)]
    hs = h_vector(p)
    round_trip = all(series_coefficient(hs, t) == ehrhart_formula(p, t) for t in range(n + 1))
    sym = shape_checks(hs.numerator)["symmetric"]
    ok = not bad and round_trip and hs.degree == n - p.r and sym == gorenstein_family(p)
    return {
        "check": "hilbert",
        "input": list(p.as_tuple()),
        "status": _status(ok),
        "detail": {
            "h_vector": list(hs.numerator),
            "ehrhart_mismatch_at": bad,
            "round_trip": round_trip,
            "numerator_degree": hs.degree,
            "symmetric": sym,
        },
    }


def check_facets(params):
    p = FamilyParams(*params)
    A = family_exponents(p)
    rep = family_cone_rep(p)
    irr = irreducible_rep_check(A, rep)
    brute = cone_facets_bruteforce(A)
    rays = extremal_rays(rep)
    detail = {
        "irreducible": irr,
        "bruteforce_matches": brute == rep,
        "rays": len(rays),
        "rays_expected": (p.i + 1) * (p.n - p.i),
    }
    ok = irr and brute == rep and len(rays) == detail["rays_expected"]
    if p.t == 0:
        d = det_check(p)
        detail["det"] = d
        detail["det_expected"] = p.n * (p.n - p.j) ** p.i * p.j ** (p.n - p.i - 1)
        ok = ok and d == detail["det_expected"]
    return {"check": "facets", "input": list(p.as_tuple()), "status": _status(ok), "detail": detail}


def check_det(params):
    p = FamilyParams(*params)
    d = det_check(p)
    want = p.n * (p.n - p.j) ** p.i * p.j ** (p.n - p.i - 1)
    return {"check": "det", "input": list(p.as_tuple()), "status": _status(d == want), "detail": {"det": d, "expected": want}}


def check_classification(cell):
    n, i1, t2, i2 = cell
    v = classify(n, i1, t2, i2)
    detail = {"is_base_ring": v.is_base_ring, "condition": v.condition, "case": v.case}
    ok = True
    if v.is_base_ring:
        detail["construction_verified"] = v.verified
        ok = bool(v.verified)
    if n <= 4:
        target = intersection_exponents(IntersectionSpec(n, ((i1, 0), (i2, t2))))
        found = bruteforce_is_base_ring(n, target)
        detail["bruteforce_is_base_ring"] = found is not None
        ok = ok and (found is not None) == v.is_base_ring
    return {"check": "classification", "input": list(cell), "status": _status(ok), "detail": detail}


def check_intersection_gorenstein(spec_tuple):
    n, pairs = spec_tuple
    g = intersection_gorenstein_check(IntersectionSpec(n, tuple(map(tuple, pairs))))
    ok = g.gorenstein and g.a_invariant == -1
    return {
        "check": "intersection_gorenstein",
        "input": {"n": n, "pairs": [list(x) for x in pairs]},
        "status": _status(ok, g.inconclusive),
        "detail": {"generators": [list(x) for x in g.generators], "a_invariant": g.a_invariant},
    }


def check_segre(m):
    row = segre_h_vector(m)
    shapes = shape_checks(row)
    h_m = HilbertSeries(tuple(row), m + 1)
    had = hadamard(h_m, HilbertSeries((1,), 2)) == HilbertSeries(tuple(segre_h_vector(m + 1)), m + 2)
    detail = {
        "eulerian_row": row,
        "values_match": row == segre_h_vector_from_values(m),
        "shapes": shapes,
        "hadamard_step": had,
        "worpitzky": all(worpitzky_check(m, k) for k in range(1, 11)),
        "hibi_count": hibi_relations(m).count == hibi_count_formula(m) if m <= 10 else None,
        "derivative_recurrence": derivative_recurrence_check(m, 2, m + 8),
    }
    ok = (
        detail["values_match"]
        and all(shapes.values())
        and had
        and detail["worpitzky"]
        and detail["hibi_count"] is not False
        and detail["derivative_recurrence"]
    )
    return {"check": "segre", "input": {"m": m}, "status": _status(ok), "detail": detail}


RANK_TABLE = {(): 0, (1,): 1, (2,): 2, (3,): 2, (1, 2): 3, (1, 3): 2, (2, 3): 4, (1, 2, 3): 4}


def check_polymatroid(item):
    kind, arg = item
    if kind == "rank_table":
        rho = RankFunction.from_callable(3, lambda s: RANK_TABLE[s])
        P = polymatroid_points(rho)
        closed = rho_closed_sets(rho, include_ground=False)
        insep = rho_inseparable_sets(rho)
        ok = (
            len(P) == 15
            and closed == [(1,), (2,), (1, 2), (1, 3)]
            and insep == [(1,), (2,), (3,), (1, 3)]
            and (1, 2, 3) in rho_closed_sets(rho)
        )
        detail = {"points": len(P), "closed_proper": closed, "inseparable": insep}
    elif kind == "non_transversal":
        B = [u for u in enumerate_points(4, 3) if max(u) <= 2]
        pruned = find_transversal_presentation(B, 3)
        exhaustive = [pr for pr in enumerate_presentations(4, 3) if transversal_bases(pr) == B]
        ok = pruned is None and not exhaustive
        detail = {"bases": len(B), "pruned_search": pruned is not None, "exhaustive_hits": len(exhaustive)}
    elif kind == "random":
        seed, n = arg
        rng = random.Random(seed)
        pres = random_presentation(rng, n, rng.randint(1, n))
        rho = transversal_rank_function(pres)
        B = transversal_bases(pres)
        sub_ok = rank_function_violation(rho) is None
        exch = bases_exchange_check(B, symmetric=True)
        closure = True
        if n <= 4:
            closure = subvector_closure(B) == sorted(polymatroid_points(rho))
        ok = sub_ok and exch and closure
        detail = {"presentation": pres.to_dict(), "submodular": sub_ok, "exchange": exch, "closure": closure}
    else:
        raise ValueError(kind)
    return {"check": f"polymatroid:{kind}", "input": arg, "status": _status(ok), "detail": detail}


def enumerate_points(n, modulus):
    from ._enum import compositions, rows_to_tuples

    return rows_to_tuples(compositions(modulus, n))


def random_presentation(rng, n, m):
    """m slots, each a uniformly random nonempty subset of [n]; canonicalised."""
    sets = []
    for _ in range(m):
        mask = rng.randrange(1, 1 << n)
        sets.append(frozenset(k + 1 for k in range(n) if mask >> k & 1))
    return Presentation(n, tuple(sets)).canonical()


# -- suites as task lists ----------------------------------------------------

def suite_tasks(name, grid, seed=0, samples=20, cutoff=None):
    """Expand a suite over a grid of n values into (function, argument) tasks."""
    if name == "type":
        return [(check_type, (p.as_tuple(), cutoff)) for p in family_grid(grid)]
    if name == "hilbert":
        return [(check_hilbert, (p.as_tuple(),)) for p in family_grid(grid)]
    if name == "facets":
        tasks = [(check_facets, (p.as_tuple(),)) for p in family_grid(grid)]
        det_grid = range(3, max(max(grid), 8) + 1)
        tasks += [(check_det, (p.as_tuple(),)) for p in family_grid(det_grid)]
        return tasks
    if name == "intersection":
        tasks = [(check_classification, (c,)) for n in grid for c in classification_grid(n)]
        tasks += [(check_intersection_gorenstein, (s,)) for s in intersection_sample(grid)]
        return tasks
    if name == "segre":
        return [(check_segre, (m,)) for m in grid]
    if name == "chapter1":
        tasks = [(check_polymatroid, (("rank_table", None),)), (check_polymatroid, (("non_transversal", None),))]
        for k in range(samples):
            tasks.append((check_polymatroid, (("random", [seed * 1000003 + k, 2 + k % 5]),)))
        return tasks
    raise KeyError(name)


def intersection_sample(grid, r_max=3):
    """A fixed sample of specs with distinct members: every r=2 pair plus
    the r=3 triples with i1 <= 2 whose second member has an even shift."""
    out = []
    for n in grid:
        if n < 4 or n > 6:
            continue
        pairs = [(i, t) for i in range(1, n - 1) for t in range(n)]
        for i1 in range(1, n - 1):
            out.append((n, ((i1, 0),)))
            rest = [q for q in pairs if q != (i1, 0)]
            for q in rest:
                out.append((n, ((i1, 0), q)))
            if i1 <= 2 and r_max >= 3:
                for q1, q2 in combinations(rest, 2):
                    if q1[1] % 2 == 0:
                        out.append((n, ((i1, 0), q1, q2)))
    return out


def task_for(record):
    """Rebuild the task behind a parsed verify record (for offline replay)."""
    check, inp = record["check"], record["input"]
    if check == "type":
        return check_type, (tuple(inp), int(record["detail"]["cutoff"]))
    simple = {"hilbert": check_hilbert, "facets": check_facets, "det": check_det, "classification": check_classification}
    if check in simple:
        return simple[check], (tuple(inp),)
    if check == "intersection_gorenstein":
        return check_intersection_gorenstein, ((inp["n"], tuple(map(tuple, inp["pairs"]))),)
    if check == "segre":
        return check_segre, (inp["m"],)
    if check.startswith("polymatroid:"):
        return check_polymatroid, ((check.split(":", 1)[1], inp),)
    return None


def run_task(task):
    fn, args = task
    start = time.perf_counter()
    rec = fn(*args)
    rec["timing_s"] = round(time.perf_counter() - start, 6)
    return rec


# -- experiments -------------------------------------------------------------

def openproblem_family_tasks(grid, cutoff=None, extra=()):
    items = [p.as_tuple() for p in family_grid(grid)] + [tuple(x) for x in extra]
    return [(openproblem_family, (it, cutoff)) for it in items]


def openproblem_family(params, cutoff=None):
    p = FamilyParams(*params)
    return open_problem_report(p, cutoff=cutoff)


def openproblem_random_tasks(seed, samples, n=4, cutoff=None):
    """Seeded samples; identical canonical presentations are computed once.

    Returns the task list (unique presentations) and, per sample, the index
    of the task that answers it.
    """
    rng = random.Random(seed)
    index, tasks, owner = {}, [], []
    for k in range(samples):
        pres = random_presentation(rng, n, n)
        key = tuple(tuple(s) for s in pres.as_lists())
        if key not in index:
            index[key] = len(tasks)
            tasks.append((openproblem_presentation, (pres.as_lists(), n, cutoff)))
        owner.append(index[key])
    return tasks, owner


def openproblem_presentation(sets, n, cutoff=None):
    return open_problem_report(Presentation(n, tuple(map(frozenset, sets))), cutoff=cutoff)

