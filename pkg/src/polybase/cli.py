"""Command-line entry point: ``polybase <command> [options]``.

Every command writes JSON lines (one record per line, UTF-8, LF).  Integer
invariants are written as decimal strings; parameters, subsets, exponent
vectors and presentations stay as JSON integer arrays.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 inconclusive (an oracle reached its cutoff).
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import json
import os
import sys
import time

from . import suites
from .canonical import (
    canonical_generators_bruteforce,
    canonical_generators_closed,
    default_cutoff,
    ring_invariants,
)
from .cone import (
    FamilyParams,
    cone_facets_bruteforce,
    det_check,
    extremal_rays,
    family_cone_rep,
    family_exponents,
    irreducible_rep_check,
)
from .hilbert import ehrhart_ring_hvector, h_vector, segre_h_vector, shape_checks
from .intersect import (
    IntersectionSpec,
    bruteforce_is_base_ring,
    classification_grid,
    classify,
    construct_presentation,
    intersection_exponents,
)
from .polymatroid import (
    Presentation,
    SearchSpaceExceeded,
    ehrhart_gorenstein_check,
    subvector_closure,
    transversal_bases,
)

SCHEMA = "polybase/1"
EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# values under these keys are structural (indices, coordinates, subsets)
STRUCTURAL = {
    "input", "params", "presentation", "generators", "closed_proper", "inseparable", "pairs", "sample", "mismatches",
}


class InputError(ValueError):
    pass


# -- serialisation -----------------------------------------------------------

def encode(obj, structural=False):
    """JSON-ready copy: ints become decimal strings outside structural keys."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if structural else str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): encode(v, structural or k in STRUCTURAL) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v, structural) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def make_record(command, payload):
    rec = {"schema": SCHEMA, "command": command}
    rec.update(payload)
    return rec


def dumps(record):
    timing = record.pop("timing_s", None)
    out = encode(record)
    if timing is not None:
        out["timing_s"] = timing
    return json.dumps(out, sort_keys=True, ensure_ascii=False)


def load_records(path):
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def strip_timing(record):
    return {k: v for k, v in record.items() if k != "timing_s"}


def _recompute(rec):
    cmd, inp = rec["command"], rec.get("input", {})
    if cmd == "invariants":
        return cmd_invariants(inp["n"], inp["i"], inp["j"])
    if cmd == "hvector":
        return cmd_hvector(FamilyParams(inp["n"], inp["i"], inp["j"]))
    if cmd == "cone":
        return cmd_cone(FamilyParams(*inp["params"]))
    if cmd == "canonical":
        return cmd_canonical(FamilyParams(*inp["params"]), inp["cutoff"])
    if cmd == "segre":
        return cmd_segre(*inp["params"])
    if cmd == "intersect-classify":
        return cmd_classify(*inp["params"])
    if cmd == "intersect-construct":
        return cmd_construct(*inp["params"])
    if cmd == "openproblem":
        cut = int(rec["cutoff"]) if "cutoff" in rec else None
        if rec["kind"] == "family":
            out = suites.openproblem_family(rec["params"], cut)
        else:
            pres = rec["presentation"]
            out = suites.openproblem_presentation(pres["sets"], pres["n"], cut)
        for key in ("sample", "seed"):
            if key in rec:
                out[key] = int(rec[key]) if key == "seed" else rec[key]
        return make_record("openproblem", out)
    if cmd == "verify":
        task = suites.task_for(rec)
        return make_record("verify", {"suite": rec["suite"], **suites.run_task(task)}) if task else None
    return None


def reverify(rec):
    """Recompute a parsed record from its input echo; None if not replayable."""
    fresh = _recompute(rec)
    if fresh is None:
        return None
    return strip_timing(json.loads(dumps(fresh))) == strip_timing(rec)


# -- argument helpers ---------------------------------------------------------

def parse_grid(text):
    """"3-6" -> [3,4,5,6]; "3,5,7" -> [3,5,7]; pieces may be mixed."""
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "-" in piece:
            lo, hi = piece.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(piece))
    if not out:
        raise InputError(f"empty grid {text!r}")
    return sorted(set(out))


def parse_pairs(text):
    """"1:0,2:3" -> ((1,0),(2,3))."""
    pairs = []
    for piece in text.split(","):
        i, t = piece.split(":")
        pairs.append((int(i), int(t)))
    return tuple(pairs)


def default_workers():
    try:
        return max(1, int(os.environ.get("POLYBASE_WORKERS", "1")))
    except ValueError:
        return 1


def run_tasks(tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [suites.run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(suites.run_task, tasks, chunksize=1))


def family_from(args):
    for name in ("n", "i", "j"):
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required")
    return FamilyParams(args.n, args.i, args.j, args.t or 0)


def _timed(fn):
    start = time.perf_counter()
    payload = fn()
    payload["timing_s"] = round(time.perf_counter() - start, 6)
    return payload


# -- commands -----------------------------------------------------------------

def cmd_invariants(n, i, j):
    """Closed-form invariants of the family ring (n, i, j) as one record."""
    p = FamilyParams(n, i, j)

    def body():
        inv = ring_invariants(p)
        h = list(h_vector(p).numerator)
        r = -inv.a_invariant
        if r == 1:
            name, rhs = "1 + h_{n-2} - h_1", 1 + h[n - 2] - h[1]
        else:
            name, rhs = "h_{n-r}", h[n - r]
        return {
            "input": {"n": n, "i": i, "j": j},
            "result": {
                "type": inv.type,
                "a_invariant": inv.a_invariant,
                "gorenstein": inv.gorenstein,
                "r": inv.r,
                "h_vector": h,
                "denom_power": n,
                "identity": name,
                "identity_value": rhs,
                "identity_matches_type": rhs == inv.type,
            },
        }

    return make_record("invariants", _timed(body))


def cmd_hvector(p):
    def body():
        hs = h_vector(p)
        return {
            "input": {"n": p.n, "i": p.i, "j": p.j},
            "result": {"h_vector": list(hs.numerator), "denom_power": hs.denom_power, "shape": shape_checks(hs.numerator)},
        }

    return make_record("hvector", _timed(body))


def cmd_cone(p):
    def body():
        A = family_exponents(p)
        rep = family_cone_rep(p)
        brute = cone_facets_bruteforce(A)
        res = {
            "normals": [list(a) for a in rep.normals],
            "extremal_rays": [list(r) for r in extremal_rays(rep)],
            "irreducible": irreducible_rep_check(A, rep),
            "bruteforce_matches": brute == rep,
            "exponents": len(A),
        }
        if p.t == 0:
            res["det"] = det_check(p)
        return {"input": {"params": list(p.as_tuple())}, "result": res}

    return make_record("cone", _timed(body))


def cmd_canonical(p, cutoff=None):
    def body():
        cut = default_cutoff(p) if cutoff is None else cutoff
        brute = canonical_generators_bruteforce(family_exponents(p), family_cone_rep(p), cut)
        closed = canonical_generators_closed(p)
        return {
            "input": {"params": list(p.as_tuple()), "cutoff": cut},
            "result": {
                "type_bruteforce": brute.type,
                "type_closed": closed.type,
                "by_degree": {str(d): len(v) for d, v in sorted(brute.by_degree().items())},
                "sets_equal": brute.generators == closed.generators,
                "inconclusive": brute.inconclusive,
                "generators": [list(g) for g in brute.generators],
            },
        }

    return make_record("canonical", _timed(body))


def _verdict_payload(v):
    out = {"is_base_ring": v.is_base_ring, "condition": v.condition, "case": v.case, "verified": v.verified}
    if v.presentation is not None:
        out["presentation"] = v.presentation.to_dict()
    if v.witness:
        out["witness"] = v.witness
    return out


def cmd_classify(n, i1, t2, i2):
    return make_record(
        "intersect-classify",
        _timed(lambda: {"input": {"params": [n, i1, t2, i2]}, "result": _verdict_payload(classify(n, i1, t2, i2, attach_witness=True))}),
    )


def cmd_construct(n, i1, t2, i2):
    def body():
        pres, label = construct_presentation(n, i1, t2, i2, with_case=True)
        target = intersection_exponents(IntersectionSpec(n, ((i1, 0), (i2, t2))))
        return {
            "input": {"params": [n, i1, t2, i2]},
            "result": {"presentation": pres.to_dict(), "case": label, "verified": transversal_bases(pres) == target},
        }

    return make_record("intersect-construct", _timed(body))


def cmd_search(spec):
    def body():
        target = intersection_exponents(spec)
        found = bruteforce_is_base_ring(spec.n, target)
        res = {"found": found is not None, "exponents": len(target)}
        if found is not None:
            res["presentation"] = found.canonical().to_dict()
        return {"input": {"n": spec.n, "pairs": [list(x) for x in spec.pairs]}, "result": res}

    return make_record("intersect-search", _timed(body))


def cmd_segre(m):
    def body():
        row = segre_h_vector(m)
        return {"input": {"params": [m]}, "result": {"h_vector": row, "denom_power": m + 1, "shape": shape_checks(row)}}

    return make_record("segre", _timed(body))


def parse_polymatroid(text):
    """"simplex:N:D" is {u in Z_+^N : |u| <= D}; "pres:N:1,2;2,3" is the
    subvector closure of the bases of that presentation."""
    kind, _, rest = text.partition(":")
    if kind == "simplex":
        n, d = map(int, rest.split(":"))
        from ._enum import compositions, rows_to_tuples

        pts = []
        for s in range(d + 1):
            pts.extend(rows_to_tuples(compositions(s, n)))
        return sorted(pts)
    if kind == "pres":
        n, _, body = rest.partition(":")
        sets = [frozenset(int(x) for x in part.split(",")) for part in body.split(";")]
        return subvector_closure(transversal_bases(Presentation(int(n), tuple(sets))))
    raise InputError(f"unknown polymatroid spec {text!r}")


def cmd_ehrhart_ring(spec_text):
    def body():
        P = parse_polymatroid(spec_text)
        hs = ehrhart_ring_hvector(P)
        gor = ehrhart_gorenstein_check(P)
        return {
            "input": {"spec": spec_text},
            "result": {
                "h_vector": list(hs.numerator),
                "denom_power": hs.denom_power,
                "points": len(P),
                "gorenstein": gor.gorenstein,
                "delta": gor.delta,
            },
        }

    return make_record("ehrhart-ring", _timed(body))


def cmd_verify(suite, grid, workers=1, seed=0, samples=20, cutoff=None):
    """Run one suite; returns (records, exit code)."""
    if suite not in suites.SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(suites.SUITES)}")
    tasks = suites.suite_tasks(suite, grid, seed=seed, samples=samples, cutoff=cutoff)
    results = run_tasks(tasks, workers)
    records = [make_record("verify", {"suite": suite, **r}) for r in results]
    counts = {s: sum(1 for r in results if r["status"] == s) for s in ("ok", "mismatch", "inconclusive")}
    mismatches = [r["input"] for r in results if r["status"] == "mismatch"]
    summary = make_record(
        "verify-summary",
        {"suite": suite, "input": {"grid": list(grid)}, "result": {"counts": counts, "mismatches": mismatches}},
    )
    records.append(summary)
    if counts["mismatch"]:
        code = EXIT_MISMATCH
    elif counts["inconclusive"]:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    return records, code


def cmd_openproblem(grid=None, seed=None, samples=0, workers=1, cutoff=None, n=4, extra=()):
    """Per-instance verdicts; exit 3 when any instance is inconclusive."""
    records = []
    if grid or extra:
        tasks = suites.openproblem_family_tasks(grid or [], cutoff=cutoff, extra=extra)
        for rec in run_tasks(tasks, workers):
            records.append(make_record("openproblem", rec))
    if seed is not None and samples:
        tasks, owner = suites.openproblem_random_tasks(seed, samples, n=n, cutoff=cutoff)
        done = run_tasks(tasks, workers)
        for k, idx in enumerate(owner):
            rec = dict(done[idx])
            rec["sample"] = k
            rec["seed"] = seed
            rec.pop("timing_s", None)
            records.append(make_record("openproblem", rec))
    verdicts = {}
    for r in records:
        verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
    records.append(make_record("openproblem-summary", {"result": {"verdicts": verdicts}}))
    code = EXIT_INCONCLUSIVE if verdicts.get("inconclusive") else EXIT_OK
    return records, code


# -- argparse -----------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="polybase", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int)
        p.add_argument("--i", type=int)
        p.add_argument("--j", type=int)
        p.add_argument("--t", type=int, default=0)
        p.add_argument("--spec")
        p.add_argument("--grid")
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int, default=0)
        p.add_argument("--cutoff", type=int)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--out")
        p.add_argument("--format", choices=["json"], default="json")
        return p

    for name in ("invariants", "hvector", "cone", "canonical", "segre", "ehrhart-ring", "openproblem"):
        common(sub.add_parser(name))
    inter = common(sub.add_parser("intersect"))
    inter.add_argument("action", choices=["classify", "construct", "search"])
    ver = common(sub.add_parser("verify"))
    ver.add_argument("suite")
    return ap


DEFAULT_GRIDS = {
    "type": "3-6",
    "hilbert": "3-6",
    "facets": "3-6",
    "intersection": "4",
    "segre": "1-10",
    "chapter1": "4",
}


def _intersection_cells(args):
    if args.spec:
        pairs = parse_pairs(args.spec)
        if len(pairs) != 2 or pairs[0][1] != 0:
            raise InputError("--spec must be 'i1:0,i2:t2'")
        (i1, _), (i2, t2) = pairs
        return [(args.n, i1, t2, i2)]
    if args.n is None:
        raise InputError("--n is required")
    return classification_grid(args.n)


def dispatch(args):
    workers = args.workers if args.workers is not None else default_workers()
    cmd = args.command
    if cmd == "invariants":
        p = family_from(args)
        return [cmd_invariants(p.n, p.i, p.j)], EXIT_OK
    if cmd == "hvector":
        return [cmd_hvector(family_from(args))], EXIT_OK
    if cmd == "cone":
        rec = cmd_cone(family_from(args))
        ok = rec["result"]["irreducible"] and rec["result"]["bruteforce_matches"]
        return [rec], EXIT_OK if ok else EXIT_MISMATCH
    if cmd == "canonical":
        rec = cmd_canonical(family_from(args), args.cutoff)
        res = rec["result"]
        if not res["sets_equal"]:
            code = EXIT_MISMATCH
        elif res["inconclusive"]:
            code = EXIT_INCONCLUSIVE
        else:
            code = EXIT_OK
        return [rec], code
    if cmd == "segre":
        ms = parse_grid(args.grid) if args.grid else [args.n if args.n else 1]
        return [cmd_segre(m) for m in ms], EXIT_OK
    if cmd == "ehrhart-ring":
        if not args.spec:
            raise InputError("--spec is required (simplex:N:D or pres:N:1,2;2,3)")
        return [cmd_ehrhart_ring(args.spec)], EXIT_OK
    if cmd == "intersect":
        if args.action == "search":
            if not args.spec or args.n is None:
                raise InputError("search needs --n and --spec 'i1:0,i2:t2,...'")
            return [cmd_search(IntersectionSpec(args.n, parse_pairs(args.spec)))], EXIT_OK
        cells = _intersection_cells(args)
        if args.action == "classify":
            return [cmd_classify(*c) for c in cells], EXIT_OK
        if not args.spec:
            cells = [c for c in cells if classify(*c, verify=False).is_base_ring]
        recs = [cmd_construct(*c) for c in cells]
        ok = all(r["result"]["verified"] for r in recs)
        return recs, EXIT_OK if ok else EXIT_MISMATCH
    if cmd == "verify":
        grid = parse_grid(args.grid or DEFAULT_GRIDS.get(args.suite, "4"))
        return cmd_verify(args.suite, grid, workers, seed=args.seed or 0, samples=args.samples or 20, cutoff=args.cutoff)
    if cmd == "openproblem":
        grid = parse_grid(args.grid) if args.grid else []
        if grid and min(grid) < 4:
            raise InputError("open-problem instances need n >= 4")
        if not grid and args.seed is None:
            raise InputError("give --grid and/or --seed with --samples")
        return cmd_openproblem(grid, args.seed, args.samples, workers, args.cutoff, n=args.n or 4)
    raise InputError(f"unknown command {cmd}")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        records, code = dispatch(args)
    except (InputError, SearchSpaceExceeded) as exc:
        print(f"polybase: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"polybase: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    lines = "".join(dumps(r) + "\n" for r in records)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
