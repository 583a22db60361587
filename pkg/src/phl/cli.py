"""Command-line front door: parse documents, dispatch, emit canonical reports.

Exit codes: 0 verified/true, 1 false/counterexample, 2 usage or resource
error.  Reports are canonical JSON (sorted keys) so identical invocations
produce byte-identical output; timing is printed only when asked for and
never lands in reports or golden files.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import equivalence, fixtures, homotopy, lifting, simplicial, witnesses
from .core import Error, GuardExceeded, ValidationError
from .cylinder import corner_endpoint, get_instance, verify_ehd
from .documents import (
    canonical_json,
    family_to_document,
    map_to_document,
    object_to_document,
    parse_document,
)
from .monads import FiniteCategory, FiniteMonoid, FreeCategoryMonad, FreeMonoidMonad


def _instance(args):
    return get_instance(args.instance, cap=args.cap)


def _monad_for(instance, cap):
    if instance.base == "set":
        return FreeMonoidMonad(cap)
    if instance.base == "graph":
        return FreeCategoryMonad(cap)
    raise ValidationError("monad commands support the set and graph instances")


def _write_out(args, document):
    if getattr(args, "out", None):
        Path(args.out).write_text(canonical_json(document), encoding="utf-8")


def cmd_classes(args):
    instance = _instance(args)
    x = parse_document(Path(args.x))
    y = parse_document(Path(args.y))
    classes = homotopy.homotopy_classes(instance, x, y, guard=args.guard)
    report = {
        "class_count": classes.class_count,
        "hom_count": len(classes.homs),
        "representatives": [
            {sort: dict(rep.on[sort]) for sort in rep.domain.signature.sorts}
            for rep in classes.representatives()
        ],
    }
    return 0, report, None


def cmd_homotopy(args):
    instance = _instance(args)
    f = parse_document(Path(args.f))
    g = parse_document(Path(args.g))
    found = homotopy.find_homotopy(instance, f, g, guard=args.guard)
    if found is None:
        return 1, {"homotopic": False}, None
    return 0, {"homotopic": True, "witness": map_to_document(found.theta)}, None


def cmd_lift(args):
    square = parse_document(Path(args.square))
    problem = lifting.LiftingProblem(
        square["left"], square["right"], square["top"], square["bottom"]
    )
    if args.explicit:
        corner_info = square.get("corner")
        if not corner_info:
            raise ValidationError("explicit lifts need corner provenance in the square document")
        instance = get_instance(corner_info["instance"], cap=args.cap)
        j = parse_document(corner_info["j"])
        endpoint = corner_info.get("endpoint", args.endpoint)
        corner = corner_endpoint(instance, j, endpoint)
        if corner.arrow != square["left"]:
            raise witnesses.ProvenanceError(
                "the square's left map is not the stated endpoint corner"
            )
        if args.explicit == "monoid":
            diagonal = witnesses.explicit_lift_monoid(corner, square["top"])
        else:
            algebra = parse_document(Path(args.algebra))
            if not isinstance(algebra, FiniteCategory):
                raise ValidationError("category lifts need a category document")
            diagonal = witnesses.explicit_lift_category(corner, square["top"], algebra)
    else:
        diagonal = lifting.solve_lift(problem, guard=args.guard)
    if diagonal is None:
        return 1, {"lift": False}, None
    return 0, {"lift": True, "diagonal": map_to_document(diagonal)}, None


def cmd_fibrant(args):
    a = parse_document(Path(args.object))
    if isinstance(a, (FiniteMonoid, FiniteCategory)):
        from .monads import algebra_carrier

        a = algebra_carrier(a)
    family = parse_document(Path(args.family))
    verdict = lifting.is_naively_fibrant_upto(a, family, guard=args.guard)
    report = {
        "fibrant_upto_depth": verdict.ok,
        "depth": verdict.depth,
        "caveat": verdict.caveat,
        "squares_checked": verdict.squares_checked,
    }
    counterexample = None
    if not verdict.ok:
        provenance, top, bottom = verdict.counterexample
        counterexample = {
            "entry": provenance,
            "top": map_to_document(top),
            "bottom": map_to_document(bottom),
        }
        report["counterexample"] = counterexample
    return (0 if verdict.ok else 1), report, None


def cmd_anodyne(args):
    instance = _instance(args)
    seeds, generators = [], None
    if args.seeds:
        seed_doc = parse_document(Path(args.seeds))
        seeds = seed_doc["seeds"]
        generators = seed_doc["generators"]
    family = lifting.generate_anodyne(
        instance, seeds, generators, depth=args.depth, guard=args.guard
    )
    document = family_to_document(family)
    _write_out(args, document)
    report = {
        "entries": len(family.entries),
        "depth": family.depth,
        "pre_dedup_counts": {str(k): v for k, v in family.pre_dedup_counts.items()},
    }
    return 0, report, None


def cmd_tweq(args):
    instance = _instance(args)
    f = parse_document(Path(args.f))
    algebras = []
    for path in sorted(Path(args.algebras).glob("*.json")):
        parsed = parse_document(path)
        if isinstance(parsed, (FiniteMonoid, FiniteCategory)):
            algebras.append(parsed)
    verdict = equivalence.is_t_weak_equivalence(instance, f, algebras, guard=args.guard)
    report = {
        "t_weak_equivalence": verdict.ok,
        "caveat": verdict.caveat,
        "per_algebra": [
            {
                "algebra": r.name,
                "well_defined": r.well_defined,
                "injective": r.injective,
                "surjective": r.surjective,
            }
            for r in verdict.records
        ],
    }
    return (0 if verdict.ok else 1), report, None


def cmd_witness_m2(args):
    x = parse_document(Path(args.object))
    if args.monad == "monoid":
        witness = witnesses.m2_retract_set(x, cap=args.cap or 2)
        document = {
            "kind": "retract-witness",
            "eta": map_to_document(witness.eta),
            "middle": map_to_document(witness.middle),
            "s": map_to_document(witness.s),
            "r": map_to_document(witness.r),
            "u": map_to_document(witness.u),
            "v": map_to_document(witness.v),
            "steps": [
                {"rule": s.rule, "description": s.description} for s in witness.steps
            ],
        }
    else:
        witness = witnesses.m2_tower_graph(
            x, n_max=args.nmax, cap=args.cap or max(args.nmax, 1)
        )
        document = {
            "kind": "tower-witness",
            "stages": [object_to_document(s) for s in witness.stages],
            "h": [map_to_document(h) for h in witness.h_maps],
            "k": [map_to_document(k) for k in witness.k_maps],
            "section": map_to_document(witness.section),
            "probed_bound": witness.probed_bound,
            "shortfall": witness.shortfall,
            "steps": [
                {"rule": s.rule, "description": s.description} for s in witness.steps
            ],
        }
    _write_out(args, document)
    return 0, {"witness": document["kind"], "verified": True}, None


def cmd_check_ehd(args):
    instance = _instance(args)
    if instance.base == "set":
        monos = fixtures.corpus_monos_set()
        spans = fixtures.corpus_spans_set()
    elif instance.base == "graph":
        monos = fixtures.corpus_monos_graph()
        spans = fixtures.corpus_spans_graph()
    else:
        cap = args.cap
        monos = [simplicial.boundary_inclusion(n, cap) for n in range(min(cap, 2) + 1)]
        spans = []
    report_obj = verify_ehd(instance, monos, spans)
    report = {
        "instance": report_obj.instance_name,
        "ok": report_obj.ok,
        "checks": [
            {"kind": c.kind, "subject": c.subject, "ok": c.ok, "detail": c.detail}
            for c in report_obj.checks
        ],
    }
    return (0 if report_obj.ok else 1), report, None


def cmd_horn_fill(args):
    x = parse_document(Path(args.object))
    report_obj = simplicial.horn_filler(x, args.n, args.k, guard=args.guard)
    report = {
        "n": args.n,
        "k": args.k,
        "instances": len(report_obj.instances),
        "all_fill": report_obj.all_fill,
        "caveat": report_obj.caveat,
    }
    if not report_obj.all_fill:
        report["counterexample"] = map_to_document(report_obj.first_failure)
    return (0 if report_obj.all_fill else 1), report, None


def cmd_nerve(args):
    category = parse_document(Path(args.category))
    if not isinstance(category, FiniteCategory):
        raise ValidationError("nerve needs a category document")
    obj = simplicial.nerve(category, args.cap)
    document = object_to_document(obj)
    _write_out(args, document)
    return 0, {"cells": {sort: len(obj.cells[sort]) for sort in obj.signature.sorts}}, None


def cmd_tau0(args):
    x = parse_document(Path(args.x))
    a = parse_document(Path(args.a))
    classes = simplicial.tau0_classes(x, a, cap=args.cap, guard=args.guard)
    return 0, {"class_count": classes.class_count, "caveat": classes.caveat}, None


def cmd_verify(args):
    checks = []
    if args.suite != "core":
        raise ValidationError(f"unknown suite {args.suite!r}")
    for name in ("set2", "graphI"):
        instance = get_instance(name)
        if instance.base == "set":
            monos, spans = fixtures.corpus_monos_set(), fixtures.corpus_spans_set()
        else:
            monos, spans = fixtures.corpus_monos_graph(), fixtures.corpus_spans_graph()
        report = verify_ehd(instance, monos, spans)
        checks.append({"check": f"ehd[{name}]", "ok": report.ok})
    family = lifting.generate_anodyne(get_instance("graphI"), [], depth=0)
    expected = 2 * family.generator_count
    checks.append(
        {"check": "anodyne depth-0 count", "ok": family.pre_dedup_counts[0] == expected}
    )
    from .monads import check_monad_laws
    from .core import fin_set, fin_graph

    checks.append(
        {
            "check": "monoid monad laws",
            "ok": check_monad_laws(FreeMonoidMonad(3), fin_set(["a"])).ok,
        }
    )
    checks.append(
        {
            "check": "category monad laws",
            "ok": check_monad_laws(
                FreeCategoryMonad(2), fin_graph(["a"], [("l", "a", "a")])
            ).ok,
        }
    )
    ok = all(c["ok"] for c in checks)
    return (0 if ok else 1), {"suite": args.suite, "ok": ok, "checks": checks}, None


def cmd_fixtures(args):
    written = fixtures.emit_fixture_corpus(args.out or "fixtures")
    return 0, {"written": [p.name for p in sorted(written)]}, None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="phl",
        description="Homotopy laboratory for finite presheaf-like structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=False):
        p.add_argument("--instance", default="graphI")
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--depth", type=int, default=0)
        p.add_argument("--guard", type=int, default=None)
        p.add_argument("--timing", action="store_true")
        if out:
            p.add_argument("--out", default=None)

    p = sub.add_parser("classes", help="homotopy classes of Hom(X, Y)")
    p.add_argument("x")
    p.add_argument("y")
    common(p)
    p.set_defaults(handler=cmd_classes)

    p = sub.add_parser("homotopy", help="search a one-step homotopy between two maps")
    p.add_argument("f")
    p.add_argument("g")
    common(p)
    p.set_defaults(handler=cmd_homotopy)

    p = sub.add_parser("lift", help="solve a lifting square")
    p.add_argument("--square", required=True)
    p.add_argument("--explicit", choices=["monoid", "category"], default=None)
    p.add_argument("--endpoint", type=int, default=0)
    p.add_argument("--algebra", default=None)
    common(p)
    p.set_defaults(handler=cmd_lift)

    p = sub.add_parser("fibrant", help="RLP of A -> 1 against a family")
    p.add_argument("object")
    p.add_argument("--family", required=True)
    common(p)
    p.set_defaults(handler=cmd_fibrant)

    p = sub.add_parser("anodyne", help="generate the depth-bounded family")
    p.add_argument("--seeds", default=None)
    common(p, out=True)
    p.set_defaults(handler=cmd_anodyne)

    p = sub.add_parser("tweq", help="weak-equivalence verdict against an algebra directory")
    p.add_argument("f")
    p.add_argument("--algebras", required=True)
    common(p)
    p.set_defaults(handler=cmd_tweq)

    p = sub.add_parser("witness-m2", help="build and verify a unit witness")
    p.add_argument("object")
    p.add_argument("--monad", choices=["monoid", "category"], required=True)
    p.add_argument("--nmax", type=int, default=2)
    common(p, out=True)
    p.set_defaults(handler=cmd_witness_m2)

    p = sub.add_parser("check-ehd", help="verify the homotopy-data axioms on the corpus")
    common(p)
    p.set_defaults(handler=cmd_check_ehd)

    p = sub.add_parser("horn-fill", help="horn filling verdicts")
    p.add_argument("object")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_horn_fill)

    p = sub.add_parser("nerve", help="nerve of a category, truncated")
    p.add_argument("category")
    common(p, out=True)
    p.set_defaults(handler=cmd_nerve)

    p = sub.add_parser("tau0", help="interval-quotient classes of Hom(X, A)")
    p.add_argument("x")
    p.add_argument("a")
    common(p)
    p.set_defaults(handler=cmd_tau0)

    p = sub.add_parser("verify", help="run a built-in invariant suite")
    p.add_argument("--suite", default="core")
    common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fixtures", help="write the fixture corpus")
    common(p, out=True)
    p.set_defaults(handler=cmd_fixtures)

    return parser


def run_command(argv):
    """Dispatch; returns (exit code, report dict)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is None and args.instance.startswith("sset"):
        args.cap = 2
    started = time.monotonic()
    code, body, extra = args.handler(args)
    report = {
        "command": args.command,
        "parameters": {
            "instance": args.instance,
            "cap": args.cap,
            "depth": args.depth,
            "guard": args.guard,
        },
        "report": body,
    }
    if args.timing:
        print(f"timing_ms={int((time.monotonic() - started) * 1000)}", file=sys.stderr)
    return code, report


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, report = run_command(argv)
    except GuardExceeded as exc:
        print(canonical_json({"error": str(exc), "kind": "resource"}), end="")
        return 2
    except Error as exc:
        print(canonical_json({"error": str(exc), "kind": "validation"}), end="")
        return 2
    print(canonical_json(report), end="")
    return code


if __name__ == "__main__":
    sys.exit(main())
