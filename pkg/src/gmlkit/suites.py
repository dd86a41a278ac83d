"""Randomized property suites behind ``gmlkit fuzz``.

A suite draws one case per seed and decides whether the case breaks the
property. Failing cases are shrunk greedily (delete worlds, then lower
grades) while they keep failing.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

from . import bisim, oracles, semantics
from .formula import Dia, Formula, Neg, Or, atoms, max_grade, random_formula
from .graded import GradedModel, copy_name, graded_to_kripke, random_graded
from .kripke import KripkeModel, kripke_to_graded, random_kripke
from .neighbourhood import (CoreModel, NeighbourhoodModel, bullet, is_graded_frame, random_core,
                            random_explicit, check_stars, stars_hold, unbullet)

Case = dict[str, Any]


@dataclass(frozen=True)
class Suite:
    name: str
    draw: Callable[[int], Case]
    fails: Callable[[Case], bool]


# -- restriction helpers for shrinking --------------------------------------

def restrict(m, keep: set[str]):
    """Submodel on the worlds in ``keep``."""
    ws = [w for w in m.worlds if w in keep]
    val = {p: [w for w in s if w in keep] for p, s in m.val.items()}
    if isinstance(m, KripkeModel):
        return KripkeModel(ws, [(a, b) for a, b in m.rel if a in keep and b in keep], val)
    if isinstance(m, GradedModel):
        return GradedModel(ws, {k: v for k, v in m.sigma.items() if k[0] in keep and k[1] in keep}, val)
    if isinstance(m, CoreModel):
        return CoreModel(ws, {w: [u for u in c if u in keep] for w, c in m.core.items() if w in keep}, val)
    if isinstance(m, NeighbourhoodModel):
        nu = {}
        for w in ws:
            for n in range(1, m.max_grade + 1):
                sets = {frozenset(u for u in s if u in keep) for s in m.collection(w, n)}
                nu[(w, n)] = [sorted(s) for s in sets]
        nu0 = {w: [sorted(set(s) & keep) for s in m.collection(w, 0)]
               for i, w in enumerate(m.worlds) if w in keep and m.has_nu0_override(i)}
        return NeighbourhoodModel(ws, m.max_grade, nu, nu0, val)
    raise TypeError(m)


def lower_grades(f: Formula) -> list[Formula]:
    """Formulas obtained from ``f`` by decreasing one diamond grade by one."""
    if isinstance(f, Neg):
        return [Neg(g) for g in lower_grades(f.child)]
    if isinstance(f, Or):
        return [Or(g, f.right) for g in lower_grades(f.left)] + [Or(f.left, g) for g in lower_grades(f.right)]
    if isinstance(f, Dia):
        out = [Dia(f.grade - 1, f.child)] if f.grade > 0 else []
        return out + [Dia(f.grade, g) for g in lower_grades(f.child)]
    return []


def _safe_fails(suite: Suite, case: Case) -> bool:
    try:
        return suite.fails(case)
    except (KeyError, ValueError, semantics.UnknownWorld):
        return False


def minimize(suite: Suite, case: Case) -> Case:
    """Greedy world deletion then grade reduction, keeping the failure."""
    changed = True
    while changed:
        changed = False
        for key in [k for k in case if k.startswith("model")]:
            m = case[key]
            pinned = {case.get("world"), case.get("world2")}
            for w in m.worlds:
                if w in pinned or len(m.worlds) == 1:
                    continue
                trial = dict(case, **{key: restrict(m, set(m.worlds) - {w})})
                if _safe_fails(suite, trial):
                    case, changed = trial, True
                    break
            if changed:
                break
    if "formula" in case:
        changed = True
        while changed:
            changed = False
            for g in lower_grades(case["formula"]):
                trial = dict(case, formula=g)
                if _safe_fails(suite, trial):
                    case, changed = trial, True
                    break
    return case


# -- suites -----------------------------------------------------------------

def _truth_preservation_draw(seed: int) -> Case:
    rng = random.Random(seed)
    m = random_kripke(rng, rng.randint(1, 6), atoms=("p", "q"))
    f = random_formula(rng, 4, 4, ["p", "q"])
    return {"model": m, "world": rng.choice(m.worlds), "formula": f}


def _truth_preservation_fails(c: Case) -> bool:
    return semantics.evaluate(c["model"], c["world"], c["formula"]) != \
        semantics.evaluate(bullet(c["model"]), c["world"], c["formula"])


def _kripke_graded_fails(c: Case) -> bool:
    return semantics.evaluate(c["model"], c["world"], c["formula"]) != \
        semantics.evaluate(kripke_to_graded(c["model"]), c["world"], c["formula"])


def _graded_draw(seed: int) -> Case:
    rng = random.Random(seed)
    m = random_graded(rng, rng.randint(1, 5), atoms=("p", "q"))
    f = random_formula(rng, 3, 4, ["p", "q"])
    return {"model": m, "world": rng.choice(m.worlds), "formula": f}


def _graded_clause_fails(c: Case) -> bool:
    return semantics.evaluate(c["model"], c["world"], c["formula"]) != \
        oracles.graded_literal(c["model"], c["world"], c["formula"])


def _truncation_draw(seed: int) -> Case:
    c = _graded_draw(seed)
    c["cap"] = max(1, max_grade(c["formula"]))
    return c


def _truncation_fails(c: Case) -> bool:
    m, w, f = c["model"], c["world"], c["formula"]
    cap = max(c["cap"], max_grade(f), 1)
    k = graded_to_kripke(m, cap)
    expected = semantics.evaluate(m, w, f)
    return any(semantics.evaluate(k, copy_name(w, i), f) != expected for i in range(cap + 1))


def _star_draw(seed: int) -> Case:
    rng = random.Random(seed)
    return {"model": random_explicit(rng, rng.randint(1, 4), rng.randint(1, 3))}


def _star_fails(c: Case) -> bool:
    return stars_hold(check_stars(c["model"])) != bool(is_graded_frame(c["model"]))


def _pair_draw(seed: int) -> Case:
    rng = random.Random(seed)
    m1 = random_kripke(rng, rng.randint(1, 4), max_out=3, prefix="a")
    if rng.random() < 0.5:
        m2 = random_kripke(rng, rng.randint(1, 4), max_out=3, prefix="b")
    else:
        # relabelled copy with one extra random world, to get non-trivial bisimulations
        ren = {w: "b" + w[1:] for w in m1.worlds}
        extra = f"b{len(m1.worlds)}"
        rel = [(ren[a], ren[b]) for a, b in m1.rel]
        if rng.random() < 0.5:
            rel.append((rng.choice(list(ren.values())), extra))
        worlds = list(ren.values()) + [extra]
        if max(sum(1 for a, _ in rel if a == w) for w in worlds) > 3:
            rel = rel[:-1]
        val = {p: [ren[w] for w in s] for p, s in m1.val.items()}
        m2 = KripkeModel(worlds, rel, val)
    return {"model": m1, "model2": m2}


def _conversions_fails(c: Case) -> bool:
    m1, m2 = c["model"], c["model2"]
    Z = bisim.largest_graded_bisim(m1, m2)
    if not Z:
        return False
    T = bisim.graded_to_tuple(Z, m1, m2)
    if not bisim.check_tuple_bisim(T, m1, m2):
        return True
    Z2 = bisim.tuple_to_graded(T)
    if Z2 != Z or not bisim.check_graded_bisim(Z2, m1, m2):
        return True
    return not bisim.check_monotonic_bisim(Z, bullet(m1), bullet(m2))


def _equivalence_fails(c: Case) -> bool:
    m1, m2 = c["model"], c["model2"]
    for a, b in sorted(bisim.largest_graded_bisim(m1, m2)):
        if not bisim.equiv_sample(m1, a, m2, b, trials=200, depth=3, max_grade=3, seed=len(a) + len(b)):
            return True
    return False


def _identities_draw(seed: int) -> Case:
    rng = random.Random(seed)
    if rng.random() < 0.5:
        return {"model": random_kripke(rng, rng.randint(1, 5), atoms=())}
    return {"model": random_core(rng, rng.randint(1, 5), atoms=())}


def _identities_fails(c: Case) -> bool:
    m = c["model"]
    if isinstance(m, KripkeModel):
        return unbullet(bullet(m)) != m
    return bullet(unbullet(m)) != m


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("truth-preservation", _truth_preservation_draw, _truth_preservation_fails),
    Suite("kripke-graded", _truth_preservation_draw, _kripke_graded_fails),
    Suite("graded-clause", _graded_draw, _graded_clause_fails),
    Suite("truncation", _truncation_draw, _truncation_fails),
    Suite("star-equiv", _star_draw, _star_fails),
    Suite("bisim-conversions", _pair_draw, _conversions_fails),
    Suite("bisim-equivalence", _pair_draw, _equivalence_fails),
    Suite("translation-identities", _identities_draw, _identities_fails),
]}


def _run_one(args: tuple[str, int]) -> tuple[int, bool]:
    name, seed = args
    suite = SUITES[name]
    return seed, suite.fails(suite.draw(seed))


def run_suite(name: str, iters: int, seed: int = 0, jobs: int = 1,
              fails: Callable[[Case], bool] | None = None) -> dict[str, Any]:
    """Run ``iters`` cases with seeds ``seed, seed+1, ...``.

    Returns a report naming the lowest failing seed, with its shrunk case.
    ``fails`` overrides the suite's own property (used to exercise shrinking).
    """
    suite = SUITES[name]
    if fails is not None:
        suite = Suite(suite.name, suite.draw, fails)
    seeds = [seed + i for i in range(iters)]
    if jobs > 1 and fails is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, [(name, s) for s in seeds], chunksize=16))
    else:
        results = [(s, suite.fails(suite.draw(s))) for s in seeds]
    failing = sorted(s for s, bad in results if bad)
    report: dict[str, Any] = {"suite": name, "iters": iters, "seed": seed, "failures": len(failing)}
    if failing:
        first = failing[0]
        report["first_failing_seed"] = first
        report["witness"] = minimize(suite, suite.draw(first))
    return report


# -- axiom soundness sampling -----------------------------------------------

def random_frame(rng: random.Random, semantics_name: str, max_worlds: int = 3):
    k = rng.randint(1, max_worlds)
    if semantics_name == "kripke":
        return random_kripke(rng, k, atoms=())
    if semantics_name == "graded":
        return random_graded(rng, k, atoms=())
    if semantics_name == "nbhd-core":
        return random_core(rng, k, atoms=())
    raise ValueError(f"unknown semantics {semantics_name!r}")


def random_instance(rng: random.Random, schema, depth: int = 2, grade: int = 3,
                    letters=("p", "q")) -> Formula:
    from .formula import instantiate

    formulas = {v: random_formula(rng, depth, grade, list(letters)) for v in schema.metavariables}
    grades = {v: rng.randint(schema.min_grades.get(v, 0), grade) for v in schema.grade_variables}
    return instantiate(schema, formulas, grades)


def axiom_soundness(semantics_name: str, trials: int, seed: int = 0, instances: int = 5,
                    include_separation: bool = True) -> dict[str, Any]:
    """Frame-validity of random axiom instances on random frames.

    Trial ``t`` uses seed ``seed + t`` for both the frame and the instances,
    so each failure can be replayed alone.
    """
    from .formula import AXIOMS, SEPARATION, print_formula

    schemas = list(AXIOMS.values()) + ([SEPARATION] if include_separation else [])
    failures = []
    checked = 0
    for t in range(trials):
        rng = random.Random(seed + t)
        frame = random_frame(rng, semantics_name)
        for schema in schemas:
            for _ in range(instances):
                f = random_instance(rng, schema)
                checked += 1
                verdict = semantics.frame_validity(frame, f)
                if not verdict:
                    failures.append({"axiom": schema.name, "seed": seed + t,
                                     "formula": print_formula(f), **verdict.detail})
    return {"semantics": semantics_name, "trials": trials, "instances_checked": checked,
            "failures": failures}
