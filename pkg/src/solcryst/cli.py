"""Command-line front end: ``python -m solcryst {classify,enumerate,verify,conjugacy}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .affine import verify_presentation
from .cohomology import h1_classes
from .crystal import (CrystGroupSpec, InflationRequired, enumerate_class, inflated,
                      is_torsion_free, quotient_is_torsion_free, required_q, sol3_relations,
                      topology, torsion_verdict)
from .holonomy import TYPE_TAGS, UnknownType, compatible, compatible_types, normalize_tag
from .lattice import LatticeSpec, solve_c1c2
from .matz import Mat2Z, NotAdmissible, Verdict, enumerate_weak_classes, require_admissible, weakly_conjugate

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_INFLATE = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_matrix(text: str) -> Mat2Z:
    try:
        S = Mat2Z.parse(text)
    except (ValueError, TypeError) as exc:
        raise InputError(f"cannot read matrix {text!r}: expected four integers") from exc
    try:
        require_admissible(S)
    except NotAdmissible as exc:
        raise InputError(str(exc)) from exc
    return S


def parse_types(values: Optional[Sequence[str]]) -> Optional[list[str]]:
    if not values:
        return None
    out = []
    for v in values:
        for part in v.replace(",", " ").split():
            try:
                out.append(normalize_tag(part))
            except UnknownType as exc:
                raise InputError(str(exc)) from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solcryst", description="Crystallographic groups of Sol1^4 and Sol^3.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="all crystallographic groups over one lattice")
    c.add_argument("--s", help='matrix "a b c d"')
    c.add_argument("--q", type=int, default=1)
    c.add_argument("--m", type=int, nargs=2, default=(0, 0), metavar=("M1", "M2"))
    c.add_argument("--type", nargs="+", help=f"restrict to these types ({', '.join(TYPE_TAGS)})")
    c.add_argument("--bound", type=int, default=6, help="torsion search box")
    c.add_argument("--auto-inflate", action="store_true", help="raise q to the minimum each class needs")
    c.add_argument("--batch", metavar="FILE", help='one "a b c d [q m1 m2]" per line')
    c.add_argument("--json", action="store_true")

    e = sub.add_parser("enumerate", help="weak conjugacy classes up to a trace bound")
    e.add_argument("--trace-max", type=int, required=True)
    e.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="closed forms against brute force on a grid")
    v.add_argument("--trace-max", type=int, default=12)
    v.add_argument("--entries", type=int, default=8, help="entry bound for the matrix grid")
    v.add_argument("--q", type=int, default=4, help="largest q")
    v.add_argument("--type", nargs="+")
    v.add_argument("--bound", type=int, default=6)
    v.add_argument("--json", action="store_true")

    k = sub.add_parser("conjugacy", help="weak conjugacy of two matrices")
    k.add_argument("--s", required=True)
    k.add_argument("--s2", required=True)
    k.add_argument("--json", action="store_true")
    return p


# ---------------------------------------------------------------------------
# classify

def group_report(g: CrystGroupSpec, bound: int) -> dict:
    checks = verify_presentation(g)
    failed = [str(c.relation) for c in checks if not c.ok]
    if failed:
        raise RuntimeError(f"presentation failed matrix verification: {failed}")
    rels = [c.relation for c in checks]
    pi = is_torsion_free(g)
    quo = quotient_is_torsion_free(g)
    out = g.to_json()
    out["presentation"] = [str(r) for r in rels]
    out["sol3_presentation"] = [str(r) for r in sol3_relations(rels)]
    out["torsion"] = pi.to_json()
    out["quotient_torsion"] = quo.to_json()
    out["orientable"] = g.holonomy.orientable
    if quo.torsion_free:
        out["topology"] = topology(g).to_json()
    return out


def classify_lattice(S: Mat2Z, q: int, m, types, auto_inflate: bool, bound: int) -> tuple[dict, bool]:
    """Report for one lattice; the flag says whether some class needed inflation."""
    lattice = LatticeSpec(S, q, m)
    c1, c2 = solve_c1c2(lattice)
    report = {"S": S.flat(), "q": q, "m": list(lattice.m), "c1": str(c1), "c2": str(c2), "types": []}
    needs_inflation = False
    holos = compatible_types(S)
    if types is not None:
        holos = [h for h in holos if h.tag in types]
    for hol in holos:
        section = {"type": hol.tag, "holonomy": hol.to_json(), "classes": []}
        classes = h1_classes(hol)
        section["h1_count"] = len(classes)
        for cls in classes:
            need = required_q(lattice, hol, cls)
            entry = {"class": cls.to_json(), "min_q": need}
            if need != q and not auto_inflate:
                entry["inflation_required"] = need
                needs_inflation = True
                section["classes"].append(entry)
                continue
            lat = inflated(lattice, need) if need != q else lattice
            groups = enumerate_class(lat, hol, cls)
            entry["groups"] = [group_report(g, bound) for g in groups]
            section["classes"].append(entry)
        section["group_count"] = sum(len(c.get("groups", ())) for c in section["classes"])
        report["types"].append(section)
    return report, needs_inflation


def _print_classify(rep: dict, out) -> None:
    S = rep["S"]
    print(f"S = [{S[0]} {S[1]}; {S[2]} {S[3]}]  q={rep['q']}  m={tuple(rep['m'])}", file=out)
    print(f"  c1 = {rep['c1']}   c2 = {rep['c2']}", file=out)
    for sec in rep["types"]:
        print(f"\nT{sec['type']}: {sec['h1_count']} cohomology classes, {sec['group_count']} groups", file=out)
        for entry in sec["classes"]:
            cls = entry["class"]
            label = f"a=({', '.join(cls['a'])})" + (f" b=({', '.join(cls['b'])})" if cls["b"] else "")
            if "inflation_required" in entry:
                print(f"  {label}: needs q={entry['inflation_required']} (use --auto-inflate)", file=out)
                continue
            print(f"  {label}: minimal q={entry['min_q']}", file=out)
            for g in entry["groups"]:
                lat = g["lattice"]
                params = f"q={lat['q']} c3={lat['c3']} a4={g['a4']} b4={g['b4']}"
                pi = "torsion free" if g["torsion"]["torsion_free"] else f"torsion {g['torsion']['witness']['text']}"
                quo = "torsion free" if g["quotient_torsion"]["torsion_free"] else "torsion"
                print(f"    [{params}]  Pi: {pi};  Q: {quo};  orientable={g['orientable']}", file=out)
                for r in g["presentation"]:
                    print(f"        {r}", file=out)
                if "topology" in g:
                    print(f"        topology: {g['topology']}", file=out)


def _batch_lines(path: str):
    with open(path) as fh:
        for line in fh:
            line = line.split("#")[0].strip()
            if not line:
                continue
            nums = line.split()
            if len(nums) not in (4, 7):
                raise InputError(f"bad batch line {line!r}")
            q, m = (int(nums[4]), (int(nums[5]), int(nums[6]))) if len(nums) == 7 else (None, None)
            yield " ".join(nums[:4]), q, m


def run_classify(args, out=sys.stdout) -> int:
    types = parse_types(args.type)
    if args.q < 1:
        raise InputError("q must be positive")
    jobs = []
    if args.batch:
        for s, q, m in _batch_lines(args.batch):
            jobs.append((parse_matrix(s), q or args.q, m or tuple(args.m)))
    elif args.s:
        jobs.append((parse_matrix(args.s), args.q, tuple(args.m)))
    else:
        raise InputError("classify needs --s or --batch")
    code = EXIT_OK
    reports = []
    for S, q, m in jobs:
        rep, needs = classify_lattice(S, q, m, types, args.auto_inflate, args.bound)
        reports.append(rep)
        if needs:
            code = EXIT_INFLATE
    if args.json:
        json.dump(reports if args.batch else reports[0], out, indent=2)
        out.write("\n")
    else:
        for rep in reports:
            _print_classify(rep, out)
    return code


# ---------------------------------------------------------------------------
# enumerate / conjugacy

def run_enumerate(args, out=sys.stdout) -> int:
    if args.trace_max < 3:
        print("warning: no hyperbolic matrices with trace below 3", file=sys.stderr)
        classes = {}
    else:
        classes = enumerate_weak_classes(args.trace_max)
    if args.json:
        json.dump({str(t): [M.flat() for M in reps] for t, reps in classes.items()}, out, indent=2)
        out.write("\n")
    else:
        for t, reps in classes.items():
            print(f"trace {t}: {len(reps)} classes", file=out)
            for M in reps:
                print(f"  [{M}]", file=out)
    return EXIT_OK


def run_conjugacy(args, out=sys.stdout) -> int:
    S1, S2 = parse_matrix(args.s), parse_matrix(args.s2)
    res = weakly_conjugate(S1, S2)
    payload = {"verdict": res.verdict.value,
               "witness": None if res.witness is None else res.witness.flat()}
    if args.json:
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        print(res.verdict.value, file=out)
        if res.witness is not None:
            target = "S2" if res.verdict is not Verdict.CONJUGATE_TO_INVERSE else "S2^-1"
            print(f"B = [{res.witness}] with B S1 B^-1 = {target}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def run_verify(args, out=sys.stdout) -> int:
    from .oracle import admissible_matrices, certify, h1_bruteforce, torsion_search

    types = parse_types(args.type)
    disagreements = 0
    total = 0
    for S in admissible_matrices(args.trace_max, args.entries):
        for hol in compatible_types(S):
            if types is not None and hol.tag not in types:
                continue
            classes = h1_classes(hol)
            n_brute, _ = h1_bruteforce(hol)
            if n_brute != len(classes):
                disagreements += 1
                print(json.dumps({"S": S.flat(), "type": hol.tag, "check": "h1",
                                  "closed": len(classes), "brute": n_brute}), file=out)
            for q in range(1, args.q + 1):
                lattice = LatticeSpec(S, q)
                for cls in classes:
                    if required_q(lattice, hol, cls) != q:
                        continue
                    for g in enumerate_class(lattice, hol, cls):
                        total += 1
                        row = _verify_group(g, args.bound, torsion_search, certify)
                        if not row["ok"]:
                            disagreements += 1
                            print(json.dumps(row), file=out)
                        elif args.json:
                            print(json.dumps(row), file=out)
    print(json.dumps({"groups": total, "disagreements": disagreements}), file=out)
    return EXIT_OK if disagreements == 0 else EXIT_DISAGREE


def _verify_group(g: CrystGroupSpec, bound: int, torsion_search, certify) -> dict:
    pres_ok = all(c.ok for c in verify_presentation(g))
    free_pi, free_q, _ = torsion_verdict(g)
    w = torsion_search(g, bound)
    wq = torsion_search(g, bound, quotient=True)
    pi_ok = (w is None) == free_pi and (w is None or certify(g, w))
    q_ok = (wq is None) == free_q and (wq is None or certify(g, wq))
    return {"S": g.S.flat(), "type": g.tag, "q": g.q, "class": g.cls.to_json(),
            "a4": str(g.a4), "b4": str(g.b4), "c3": str(g.lattice.c3),
            "presentation": pres_ok, "torsion_pi": pi_ok, "torsion_q": q_ok,
            "ok": pres_ok and pi_ok and q_ok}


COMMANDS = {"classify": run_classify, "enumerate": run_enumerate,
            "verify": run_verify, "conjugacy": run_conjugacy}


def main(argv: Optional[Sequence[str]] = None, out=sys.stdout) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InflationRequired as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFLATE


if __name__ == "__main__":
    sys.exit(main())
