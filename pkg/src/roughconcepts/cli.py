"""Command-line front end.

Every subcommand prints a short human-readable report and exits nonzero when
a checked property fails. Randomized subcommands insist on ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import bits
from .dempster_shafer import (
    belief_plausibility,
    canonical_relation_classical,
    canonical_relation_conceptual,
    inner_outer,
    s5_law_check,
)
from .errors import RoughConceptError
from .generate import ContextParams, exhaustive_contexts, random_enriched_context
from .io import (
    dumps,
    enriched_to_dict,
    lattice_to_dot,
    read_algebra,
    read_conceptual_space,
    read_cxt,
    read_document,
    read_enriched,
    read_frame,
    read_mv_context,
    read_mv_frame,
    read_polarity,
    read_space,
)
from .io.dot import concept_label
from .formula import parse_sequent
from .lattice import enumerate_concepts
from .lifting import lift_kripke, verify_lifting_iso, verify_property_lifting
from .logic import CORRESPONDENCE, Model, correspondence_check, frame_valid_report, sequent_holds
from .manyvalued import mv_reflex_correspondence, mv_verify_preservation, random_mv_context
from .relations import classify_context


@dataclass
class RunReport:
    command: str
    seed: int | None = None
    checked: int = 0
    passed: int = 0
    failed: int = 0
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    def record(self, ok: bool, witness: dict | None = None) -> None:
        self.checked += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = witness

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _finish(args, report: RunReport) -> int:
    if getattr(args, "report", None):
        Path(args.report).write_text(dumps(asdict(report)), encoding="utf-8")
    print(f"checked={report.checked} passed={report.passed} failed={report.failed}")
    return report.exit_code


def _load_polarity(path: str):
    text = _read_text(path)
    if path.endswith(".cxt"):
        return read_cxt(text)
    doc = json.loads(text)
    if "box" in doc:
        return read_document(doc).polarity
    return read_polarity(doc)


def cmd_lattice(args) -> int:
    P = _load_polarity(args.input)
    L = enumerate_concepts(P)
    print(f"{len(L)} concepts")
    for i in range(len(L)):
        print(f"  {i}: {concept_label(L, i)}")
    if args.dot:
        Path(args.dot).write_text(lattice_to_dot(L), encoding="utf-8")
    return 0


def cmd_classify(args) -> int:
    F = read_enriched(_read_text(args.input), permissive=args.permissive or None)
    if not F.verified:
        print(f"warning: not I-compatible: {', '.join(F.incompatible)}")
    for name, value in classify_context(F).as_dict().items():
        print(f"{name}: {str(value).lower()}")
    return 0


def _valuation_names(F, val) -> dict:
    return {p: [str(o) for o in F.base.object_names(F.lattice[i].extent)] for p, i in val.items()}


def cmd_valid(args) -> int:
    doc = json.loads(_read_text(args.input))
    F = read_enriched(doc, permissive=args.permissive or None)
    res = frame_valid_report(F, args.sequent)
    report = RunReport("valid", checked=res.checked, passed=res.checked - (not res.valid), failed=int(not res.valid))
    if res.valid:
        print(f"valid: {args.sequent}")
    else:
        names = _valuation_names(F, res.counterexample)
        print(f"not valid: {args.sequent}")
        for p, ext in names.items():
            print(f"  {p} = {{{', '.join(ext)}}}")
        ctx = enriched_to_dict(F)
        ctx["valuation"] = names
        report.counterexample = {"context": ctx, "sequent": args.sequent}
    return _finish(args, report)


def _check_item(F, item: str, report: RunReport) -> None:
    r = correspondence_check(F, item)
    report.record(r.agree, None if r.agree else {"context": enriched_to_dict(F), "item": item})


def cmd_correspond(args) -> int:
    item = args.item.upper()
    if item not in CORRESPONDENCE:
        raise SystemExit(f"error: unknown item {args.item!r}; choose from {', '.join(CORRESPONDENCE)}")
    tri = item.startswith("T")
    report = RunReport("correspond", seed=args.seed)
    if args.input:
        _check_item(read_enriched(_read_text(args.input)), item, report)
    if args.exhaustive:
        for F in exhaustive_contexts(2, 2, triangles=tri):
            _check_item(F, item, report)
    if args.random:
        rng = np.random.default_rng(args.seed)
        params = ContextParams(max_objects=args.max, max_features=args.max, triangles=tri)
        for _ in range(args.random):
            _check_item(random_enriched_context(params, rng), item, report)
    sequent, condition, _ = CORRESPONDENCE[item]
    print(f"item {item}: {sequent}  <=>  {condition}")
    print(f"agree={report.passed}/{report.checked}")
    return _finish(args, report)


def cmd_lift_kripke(args) -> int:
    X = read_frame(_read_text(args.input))
    F = lift_kripke(X, triangles=args.triangles)
    flags = classify_context(F)
    print(f"lifted: {F.base.n_objects} objects, {F.base.n_features} features, {len(F.lattice)} concepts")
    print(f"approximation space: {str(flags.is_approx).lower()}")
    report = RunReport("lift-kripke")
    if args.verify:
        iso = verify_lifting_iso(X)
        props = verify_property_lifting(X.states, X.rel)
        print(f"iso: {'pass' if iso else 'FAIL ' + str(iso.counterexample)}")
        print(f"properties: {'pass' if props else 'FAIL ' + str(props.counterexample)}")
        report.record(iso.passed, {"iso": iso.counterexample})
        report.record(props.passed, {"properties": props.counterexample})
    if args.out:
        Path(args.out).write_text(dumps(enriched_to_dict(F)), encoding="utf-8")
    return _finish(args, report)


def cmd_random(args) -> int:
    params = ContextParams(
        max_objects=args.objects,
        max_features=args.features,
        min_objects=args.objects,
        min_features=args.features,
        density=args.density,
        relation_density=args.relation_density,
        triangles=args.triangles,
        reflexive=args.reflexive,
    )
    F = random_enriched_context(params, args.seed)
    text = dumps(enriched_to_dict(F))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_belief(args) -> int:
    doc = json.loads(_read_text(args.input))
    report = RunReport("belief")
    if "carrier" in doc:
        P = read_space(doc)
        subsets = [P.mask(c for c in P.carrier if str(c) in args.subset)] if args.subset else range(1 << P.size)
        for Z in subsets:
            lo, hi = inner_outer(P, Z)
            print(f"{{{', '.join(str(P.carrier[i]) for i in bits.iter_bits(Z))}}}: belief={lo} plausibility={hi}")
        R, rep = canonical_relation_classical(P)
        print("canonical relation: " + "; ".join(" ".join(str(int(v)) for v in row) for row in R))
        report.record(rep.passed, {"canonical": rep.counterexample})
    else:
        C = read_conceptual_space(doc)
        for i, c in enumerate(C.lattice):
            lo, hi = belief_plausibility(C, c)
            print(f"{i} {concept_label(C.lattice, i)}: belief={lo} plausibility={hi}")
        _, rep = canonical_relation_conceptual(C)
        s5 = s5_law_check(C)
        print(f"canonical relation: {'pass' if rep else 'FAIL ' + str(rep.counterexample)}")
        print(f"S5 laws: {'pass' if s5 else 'FAIL ' + str(s5.counterexample)}")
        report.record(rep.passed, {"canonical": rep.counterexample})
        report.record(s5.passed, {"s5": s5.counterexample})
    return _finish(args, report)


def cmd_mv_check(args) -> int:
    report = RunReport("mv-check", seed=args.seed)
    if args.input:
        doc = json.loads(_read_text(args.input))
        if "states" in doc:
            rep = mv_verify_preservation(read_mv_frame(doc))
            print(f"preservation: {'pass' if rep else 'FAIL ' + str(rep.counterexample)} ({rep.checked} maps)")
            report.record(rep.passed, {"preservation": rep.counterexample})
        else:
            r = mv_reflex_correspondence(read_mv_context(doc))
            print(f"axiom valid: {r.axiom_valid}; R_box <= I: {r.pointwise_cond}; agree: {r.agree}")
            report.record(r.agree, {"context": doc})
    if args.random:
        H = read_algebra(args.algebra)
        rng = np.random.default_rng(args.seed)
        for _ in range(args.random):
            r = mv_reflex_correspondence(random_mv_context(H, args.objects, args.features, rng))
            report.record(r.agree)
        print(f"reflexivity agree={report.passed}/{report.checked}")
    return _finish(args, report)


def cmd_replay(args) -> int:
    doc = json.loads(_read_text(args.input))
    cx = doc.get("counterexample")
    if not cx or "context" not in cx:
        print("report has no replayable counterexample")
        return 2
    D = read_document(cx["context"])
    F = D.enriched()
    if doc["command"] == "valid":
        M = Model(F, D.valuation)
        reproduced = not sequent_holds(M, *parse_sequent(cx["sequent"]))
    elif doc["command"] == "correspond":
        reproduced = not correspondence_check(F, cx["item"]).agree
    else:
        print(f"cannot replay {doc['command']!r} reports")
        return 2
    print("reproduced" if reproduced else "NOT reproduced")
    return 0 if reproduced else 1


def _seed_required(parser: argparse.ArgumentParser, args) -> None:
    if args.seed is None:
        parser.error(f"{args.command} with random generation requires --seed")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="roughconcepts", description="Concept lattices with modal operators.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", help="enumerate concepts of a .cxt or JSON context")
    s.add_argument("input")
    s.add_argument("--dot", help="write the Hasse diagram here")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("classify", help="relation properties of an enriched context")
    s.add_argument("input")
    s.add_argument("--permissive", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("valid", help="frame validity of a sequent")
    s.add_argument("input")
    s.add_argument("sequent", help='e.g. "box p |- p"')
    s.add_argument("--permissive", action="store_true")
    s.add_argument("--report")
    s.set_defaults(func=cmd_valid)

    s = sub.add_parser("correspond", help="axiom validity against its first-order condition")
    s.add_argument("input", nargs="?")
    s.add_argument("--item", required=True)
    s.add_argument("--random", type=int, default=0, metavar="N")
    s.add_argument("--max", type=int, default=4)
    s.add_argument("--exhaustive", action="store_true", help="all 2×2 contexts")
    s.add_argument("--seed", type=int)
    s.add_argument("--report")
    s.set_defaults(func=cmd_correspond)

    s = sub.add_parser("lift-kripke", help="lift a Kripke frame to an enriched context")
    s.add_argument("input")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--triangles", action="store_true")
    s.add_argument("--out")
    s.add_argument("--report")
    s.set_defaults(func=cmd_lift_kripke)

    s = sub.add_parser("random", help="write a random I-compatible enriched context")
    s.add_argument("--seed", type=int)
    s.add_argument("--objects", type=int, default=3)
    s.add_argument("--features", type=int, default=3)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--relation-density", type=float, default=0.3)
    s.add_argument("--triangles", action="store_true")
    s.add_argument("--reflexive", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("belief", help="belief and plausibility on a probability space")
    s.add_argument("input")
    s.add_argument("--subset", nargs="*")
    s.add_argument("--report")
    s.set_defaults(func=cmd_belief)

    s = sub.add_parser("mv-check", help="many-valued preservation and reflexivity checks")
    s.add_argument("input", nargs="?")
    s.add_argument("--algebra", default="goedel3")
    s.add_argument("--random", type=int, default=0, metavar="N")
    s.add_argument("--objects", type=int, default=2)
    s.add_argument("--features", type=int, default=2)
    s.add_argument("--seed", type=int)
    s.add_argument("--report")
    s.set_defaults(func=cmd_mv_check)

    s = sub.add_parser("replay", help="re-run the counterexample stored in a report")
    s.add_argument("input")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "random" or getattr(args, "random", 0):
        _seed_required(parser, args)
    if args.command in ("correspond", "mv-check") and not (args.input or args.random or getattr(args, "exhaustive", False)):
        parser.error(f"{args.command} needs an input file or --random")
    try:
        return args.func(args)
    except (RoughConceptError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
