"""``gmlkit`` command line.

Every subcommand prints one JSON document on stdout. Exit status is 0 for
an affirmative verdict, 1 for a negative one or a witness, 2 for bad input
or an exhausted budget.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any

from . import bisim, fixtures, neighbourhood, semantics, serialize, suites
from .formula import Formula, ParseError, SchemaError, parse, print_formula
from .graded import GradedModel, graded_to_kripke
from .kripke import KripkeModel, kripke_to_graded
from .neighbourhood import CoreModel, GradeError, NeighbourhoodModel, WorldMap
from .semantics import BudgetExceeded, Verdict

log = logging.getLogger("gmlkit")


class UsageError(ValueError):
    pass


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (KripkeModel, GradedModel, CoreModel, NeighbourhoodModel)):
        return serialize.model_to_json(obj)
    if isinstance(obj, WorldMap):
        return serialize.map_to_json(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(v) for v in obj)
    if isinstance(obj, Formula):
        return print_formula(obj)
    return obj


def _load_model(path: str):
    return serialize.model_from_json(serialize.load(path))


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


# -- subcommands ------------------------------------------------------------

def cmd_eval(args) -> Verdict:
    _need(args, "model", "world", "formula")
    m = _load_model(args.model)
    f = parse(args.formula)
    truth = semantics.evaluate(m, args.world, f)
    return Verdict("true" if truth else "false", {"truth": truth})


def _model_kind(m) -> str:
    if isinstance(m, KripkeModel):
        return "kripke"
    if isinstance(m, GradedModel):
        return "graded"
    return "nbhd"


def cmd_translate(args) -> Any:
    _need(args, "model", "from_", "to")
    m = _load_model(args.model)
    if _model_kind(m) != args.from_:
        raise UsageError(f"model file is {_model_kind(m)}, not {args.from_}")
    direction = (args.from_, args.to)
    if direction == ("kripke", "graded"):
        return kripke_to_graded(m)
    if direction == ("graded", "kripke"):
        _need(args, "cap")
        return graded_to_kripke(m, args.cap)
    if direction == ("kripke", "nbhd"):
        return neighbourhood.bullet(m)
    if direction == ("nbhd", "kripke"):
        if isinstance(m, NeighbourhoodModel):
            verdict = neighbourhood.is_graded_frame(m)
            if not verdict:
                return Verdict("error", {"message": "frame is not graded", "witness": verdict.detail})
            m = CoreModel(m.worlds, verdict.detail["core"], m.val)
        return neighbourhood.unbullet(m)
    if direction == ("nbhd", "nbhd") and isinstance(m, CoreModel):
        return neighbourhood.materialize(m)
    raise UsageError(f"no translation from {args.from_} to {args.to}")


def cmd_check(args) -> Verdict:
    kind = args.what
    if kind in ("stars", "graded-frame", "monotonic", "ax5", "ax6"):
        _need(args, "model")
        m = _load_model(args.model)
        if not isinstance(m, (NeighbourhoodModel, CoreModel)):
            raise UsageError("a neighbourhood model is required")
        if kind == "stars":
            report = neighbourhood.check_stars(m)
            failed = [k for k, v in report.items() if not v]
            return Verdict("pass" if not failed else "violation",
                           {"failed": failed, "conditions": {k: v.to_json() for k, v in report.items()}})
        return {"graded-frame": neighbourhood.is_graded_frame, "monotonic": neighbourhood.is_monotonic,
                "ax5": neighbourhood.check_ax5_property, "ax6": neighbourhood.check_ax6_property}[kind](m)
    _need(args, "left", "right")
    left, right = _load_model(args.left), _load_model(args.right)
    if kind == "morphism":
        _need(args, "map")
        return neighbourhood.is_bounded_morphism(serialize.map_from_json(serialize.load(args.map)), left, right)
    _need(args, "relation")
    doc = serialize.load(args.relation)
    if kind == "bisim":
        Z = serialize.relation_from_json(doc)
        if isinstance(left, KripkeModel) and isinstance(right, KripkeModel):
            return bisim.check_graded_bisim(Z, left, right)
        return bisim.check_monotonic_bisim(Z, left, right)
    if kind == "tuple-bisim":
        return bisim.check_tuple_bisim(serialize.family_from_json(doc), left, right)
    raise UsageError(f"unknown check {kind!r}")


def cmd_valid(args) -> Verdict:
    _need(args, "model", "formula")
    m = _load_model(args.model)
    f = parse(args.formula)
    if isinstance(m, NeighbourhoodModel):
        return neighbourhood.frame_validity_nbhd(m, f)
    return semantics.frame_validity(m, f)


def cmd_axioms(args) -> Verdict:
    report = suites.axiom_soundness(args.semantics, args.trials, args.seed, instances=args.instances)
    return Verdict("pass" if not report["failures"] else "violation", report)


def cmd_search(args) -> Verdict:
    _need(args, "formula")
    f = parse(args.formula)
    return neighbourhood.counterexample_search(f, args.max_worlds, args.candidates, args.seed,
                                               frame_class=args.frame_class)


FIXTURES = {
    "figure1-kripke": lambda: {"figure1-kripke.json": fixtures.figure1_kripke()},
    "figure1-graded": lambda: {"figure1-graded.json": fixtures.figure1_graded()},
    "figure1-nbhd": lambda: {"figure1-nbhd.json": fixtures.figure1_nbhd()},
    "section6": lambda: dict(zip(["section6-F.json", "section6-F2.json", "section6-map.json"],
                                 fixtures.section6())),
}


def cmd_fixture(args) -> Any:
    files = {name: _jsonable(obj) for name, obj in FIXTURES[args.name]().items()}
    if args.out is None:
        if len(files) == 1:
            return next(iter(files.values()))
        return {"files": files}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in files.items():
        (out / name).write_text(serialize.dumps(doc))
    return Verdict("pass", {"written": sorted(str(out / n) for n in files)})


def cmd_fuzz(args) -> Verdict:
    if args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(suites.SUITES)}")
    report = suites.run_suite(args.suite, args.iters, args.seed, args.jobs)
    if "witness" in report:
        witness = _jsonable(report["witness"])
        report["witness"] = witness
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            for key, doc in witness.items():
                if isinstance(doc, dict):
                    (out / f"{key}.json").write_text(serialize.dumps(doc))
    return Verdict("pass" if not report["failures"] else "violation", report)


def cmd_largest(args) -> Any:
    _need(args, "left", "right")
    Z = bisim.largest_graded_bisim(_load_model(args.left), _load_model(args.right))
    return serialize.relation_to_json(Z)


def cmd_equiv(args) -> Verdict:
    _need(args, "left", "right", "world", "world2")
    return bisim.equiv_sample(_load_model(args.left), args.world, _load_model(args.right), args.world2,
                              trials=args.trials, depth=args.depth, max_grade=args.max_grade, seed=args.seed)


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gmlkit", description="Graded modal logic toolkit")
    p.add_argument("--budget", type=int, help="enumeration ceiling (overrides GMLKIT_BUDGET)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *flags):
        for flag in flags:
            if flag == "seed":
                sp.add_argument("--seed", type=int, default=0)
            else:
                sp.add_argument(f"--{flag}")
        return sp

    common(sub.add_parser("eval", help="truth of a formula at a world"), "model", "world", "formula") \
        .set_defaults(func=cmd_eval)
    sp = common(sub.add_parser("translate", help="convert between semantics"), "model", "to")
    sp.add_argument("--from", dest="from_")
    sp.add_argument("--cap", type=int)
    sp.set_defaults(func=cmd_translate)
    sp = common(sub.add_parser("check", help="structural checks"), "model", "left", "right", "relation", "map")
    sp.add_argument("what", choices=["stars", "graded-frame", "monotonic", "morphism", "bisim",
                                     "tuple-bisim", "ax5", "ax6"])
    sp.set_defaults(func=cmd_check)
    common(sub.add_parser("valid", help="frame validity"), "model", "formula").set_defaults(func=cmd_valid)
    sp = common(sub.add_parser("axioms", help="axiom soundness sampling"), "seed")
    sp.add_argument("--semantics", choices=["kripke", "graded", "nbhd-core"], default="kripke")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--instances", type=int, default=5)
    sp.set_defaults(func=cmd_axioms)
    sp = common(sub.add_parser("search", help="countermodel search"), "formula", "seed")
    sp.add_argument("--max-worlds", type=int, default=4)
    sp.add_argument("--candidates", type=int, default=10**5)
    sp.add_argument("--class", dest="frame_class", choices=["monotonic", "graded"], default="monotonic")
    sp.set_defaults(func=cmd_search)
    sp = sub.add_parser("fixture", help="canonical example models")
    sp.add_argument("name", choices=sorted(FIXTURES))
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fixture)
    sp = common(sub.add_parser("fuzz", help="randomized property suites"), "suite", "seed", "out")
    sp.add_argument("--iters", type=int, default=100)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_fuzz)
    common(sub.add_parser("largest", help="largest graded bisimulation"), "left", "right") \
        .set_defaults(func=cmd_largest)
    sp = common(sub.add_parser("equiv", help="sample formulas at two pointed models"),
                "left", "right", "world", "world2", "seed")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--max-grade", type=int, default=3)
    sp.set_defaults(func=cmd_equiv)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    saved = os.environ.get("GMLKIT_BUDGET")
    if args.budget is not None:
        os.environ["GMLKIT_BUDGET"] = str(args.budget)
    try:
        result = args.func(args)
    except (ParseError, SchemaError, serialize.FormatError, GradeError, BudgetExceeded,
            semantics.UnknownWorld, UsageError, ValueError, OSError) as exc:
        log.error("%s", exc)
        result = Verdict("error", {"message": str(exc)})
    finally:
        # in-process callers must not inherit the override
        if saved is None:
            os.environ.pop("GMLKIT_BUDGET", None)
        else:
            os.environ["GMLKIT_BUDGET"] = saved
    if isinstance(result, Verdict):
        doc = _jsonable(result.to_json())
        code = 0 if result else (2 if result.status == "error" else 1)
    else:
        doc, code = _jsonable(result), 0
    sys.stdout.write(serialize.dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
