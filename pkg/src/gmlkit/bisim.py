"""Monotonic, graded and graded-tuple bisimulations.

Relations are sets of ``(left world, right world)`` pairs. A tuple
bisimulation is a mapping ``grade -> set of (frozenset, frozenset)``.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterable, Mapping

from . import semantics
from .formula import Formula, print_formula, random_formula
from .kripke import KripkeModel
from .semantics import BudgetExceeded, Verdict, bits

Relation = frozenset[tuple[str, str]]
TupleBisim = Mapping[int, Iterable[tuple[frozenset[str], frozenset[str]]]]

WITNESS_BUDGET = 10


def _atoms(m1, m2) -> list[str]:
    return sorted(set(m1.val) | set(m2.val))


def _same_props(m1, w1: str, m2, w2: str, names: list[str]) -> bool:
    return all((w1 in m1.val.get(p, ())) == (w2 in m2.val.get(p, ())) for p in names)


def _check_pairs(Z, m1, m2) -> None:
    if not Z:
        raise ValueError("a bisimulation must be non-empty")
    for a, b in Z:
        if a not in m1.index or b not in m2.index:
            raise ValueError(f"pair ({a}, {b}) mentions an undeclared world")


def _image_masks(Z, m1, m2) -> list[int]:
    """For each left world index, the bitmask of right worlds it is related to."""
    out = [0] * len(m1.worlds)
    for a, b in Z:
        out[m1.index[a]] |= 1 << m2.index[b]
    return out


def _mask_image(x: int, img: list[int]) -> int:
    out = 0
    for b in bits(x):
        out |= img[b]
    return out


# -- monotonic bisimulation -------------------------------------------------

def check_monotonic_bisim(Z: Iterable[tuple[str, str]], m1, m2) -> Verdict:
    """Literal Prop/Forth/Back check between two neighbourhood models.

    Forth at ``(w, w')`` and grade ``n``: each ``X`` in ``nu_n(w)`` needs some
    ``X'`` in ``nu'_n(w')`` inside the Z-image of ``X``. Back is symmetric.
    """
    Z = frozenset(Z)
    _check_pairs(Z, m1, m2)
    names = _atoms(m1, m2)
    fwd = _image_masks(Z, m1, m2)
    bwd = _image_masks({(b, a) for a, b in Z}, m2, m1)
    top = max(m1.grade_bound, m2.grade_bound)
    for a, b in sorted(Z):
        if not _same_props(m1, a, m2, b, names):
            return Verdict("violation", {"clause": "Prop", "pair": [a, b]})
        i, j = m1.index[a], m2.index[b]
        for n in range(top + 1):
            left, right = sorted(m1.neighbourhoods(i, n)), sorted(m2.neighbourhoods(j, n))
            for x in left:
                cover = _mask_image(x, fwd)
                if not any(y & ~cover == 0 for y in right):
                    return Verdict("violation", {"clause": "Forth", "pair": [a, b], "grade": n,
                                                 "X": m1.set_of(x)})
            for y in right:
                cover = _mask_image(y, bwd)
                if not any(x & ~cover == 0 for x in left):
                    return Verdict("violation", {"clause": "Back", "pair": [a, b], "grade": n,
                                                 "X'": m2.set_of(y)})
    return Verdict("pass")


# -- graded bisimulation ----------------------------------------------------

def _forth_fails(succ1: int, succ2: int, img: list[int]) -> tuple[int, int] | None:
    """First (n, X) with X an n-subset of succ1 whose Z-image meets succ2 in fewer than n worlds.

    A set X' of size n inside succ2 and covered by the image of X exists
    iff the image meets succ2 in at least n worlds.
    """
    members = bits(succ1)
    for n in range(1, len(members) + 1):
        for combo in itertools.combinations(members, n):
            x = sum(1 << b for b in combo)
            if (_mask_image(x, img) & succ2).bit_count() < n:
                return n, x
    return None


def _local_ok(succ1: int, succ2: int, fwd: list[int], bwd: list[int]) -> tuple[str, int, int] | None:
    bad = _forth_fails(succ1, succ2, fwd)
    if bad:
        return ("Forth",) + bad
    bad = _forth_fails(succ2, succ1, bwd)
    if bad:
        return ("Back",) + bad
    return None


def _degree_guard(m1: KripkeModel, m2: KripkeModel, limit: int | None) -> None:
    limit = WITNESS_BUDGET if limit is None else limit
    deg = max(m1.out_degree(), m2.out_degree())
    if deg > limit:
        raise BudgetExceeded(f"out-degree {deg} exceeds witness budget {limit}")


def check_graded_bisim(Z: Iterable[tuple[str, str]], m1: KripkeModel, m2: KripkeModel,
                       max_degree: int | None = None) -> Verdict:
    """Prop, Forth and Back over the up-sets of successor sets.

    Only the minimal members of each up-set (the ``n``-subsets of the
    successor set) are tried as ``X``; larger ``X`` have larger images, and
    the witness ``X'`` may always be shrunk to exactly ``n`` elements.
    """
    Z = frozenset(Z)
    _check_pairs(Z, m1, m2)
    _degree_guard(m1, m2, max_degree)
    names = _atoms(m1, m2)
    fwd = _image_masks(Z, m1, m2)
    bwd = _image_masks({(b, a) for a, b in Z}, m2, m1)
    for a, b in sorted(Z):
        if not _same_props(m1, a, m2, b, names):
            return Verdict("violation", {"clause": "Prop", "pair": [a, b]})
        bad = _local_ok(m1.succ_mask(a), m2.succ_mask(b), fwd, bwd)
        if bad:
            clause, n, x = bad
            owner = m1 if clause == "Forth" else m2
            return Verdict("violation", {"clause": clause, "pair": [a, b], "grade": n,
                                         "X": semantics.sorted_worlds(owner, x)})
    return Verdict("pass")


def largest_graded_bisim(m1: KripkeModel, m2: KripkeModel, max_degree: int | None = None) -> Relation:
    """Greatest graded bisimulation between the two models (empty if none).

    Start from all pairs agreeing on proposition letters and delete pairs
    failing Forth or Back against the current relation until nothing changes.
    """
    _degree_guard(m1, m2, max_degree)
    names = _atoms(m1, m2)
    Z = {(a, b) for a in m1.worlds for b in m2.worlds if _same_props(m1, a, m2, b, names)}
    while True:
        fwd = _image_masks(Z, m1, m2)
        bwd = _image_masks({(b, a) for a, b in Z}, m2, m1)
        dead = {(a, b) for a, b in Z if _local_ok(m1.succ_mask(a), m2.succ_mask(b), fwd, bwd)}
        if not dead:
            return frozenset(Z)
        Z -= dead


# -- graded tuple bisimulation ----------------------------------------------

def _normalize_family(T: TupleBisim) -> dict[int, frozenset[tuple[frozenset[str], frozenset[str]]]]:
    return {int(k): frozenset((frozenset(x), frozenset(y)) for x, y in v) for k, v in T.items()}


def check_tuple_bisim(T: TupleBisim, m1: KripkeModel, m2: KripkeModel) -> Verdict:
    """Items (1)-(7) of a graded tuple bisimulation, for grades up to max(T)."""
    fam = _normalize_family(T)
    K = max(fam, default=0)
    z1 = fam.get(1, frozenset())
    if not z1:
        return Verdict("violation", {"item": 1, "reason": "Z_1 is empty"})
    for i, pairs in sorted(fam.items()):
        for x, y in pairs:
            if not (x <= set(m1.worlds) and y <= set(m2.worlds)):
                return Verdict("violation", {"item": 2, "grade": i, "pair": [sorted(x), sorted(y)]})
            if not len(x) == len(y) == i:
                return Verdict("violation", {"item": 3, "grade": i, "pair": [sorted(x), sorted(y)]})
    names = _atoms(m1, m2)
    singles = sorted((next(iter(x)), next(iter(y))) for x, y in z1)
    rel1 = set(singles)
    for a, b in singles:
        if not _same_props(m1, a, m2, b, names):
            return Verdict("violation", {"item": 4, "pair": [a, b]})
    for a, b in singles:
        r1, r2 = m1.successors(a), m2.successors(b)
        for i in range(1, K + 1):
            zi = fam.get(i, frozenset())
            for combo in itertools.combinations(sorted(r1), i):
                x = frozenset(combo)
                if not any(xx == x and y <= r2 for xx, y in zi):
                    return Verdict("violation", {"item": 5, "pair": [a, b], "grade": i, "X": sorted(x)})
            for combo in itertools.combinations(sorted(r2), i):
                y = frozenset(combo)
                if not any(yy == y and x <= r1 for x, yy in zi):
                    return Verdict("violation", {"item": 6, "pair": [a, b], "grade": i, "X'": sorted(y)})
    for i, pairs in sorted(fam.items()):
        for x, y in sorted(pairs, key=lambda p: (sorted(p[0]), sorted(p[1]))):
            if not all(any((u, v) in rel1 for v in y) for u in x):
                return Verdict("violation", {"item": "7a", "grade": i, "pair": [sorted(x), sorted(y)]})
            if not all(any((u, v) in rel1 for u in x) for v in y):
                return Verdict("violation", {"item": "7b", "grade": i, "pair": [sorted(x), sorted(y)]})
    return Verdict("pass")


def tuple_to_graded(T: TupleBisim) -> Relation:
    """The world relation read off the singleton pairs of grade 1."""
    fam = _normalize_family(T)
    return frozenset((next(iter(x)), next(iter(y))) for x, y in fam.get(1, ()) if len(x) == len(y) == 1)


def is_z_pair(x: Iterable[str], y: Iterable[str], Z: Iterable[tuple[str, str]]) -> bool:
    Z = set(Z)
    x, y = list(x), list(y)
    return (all(any((u, v) in Z for v in y) for u in x)
            and all(any((u, v) in Z for u in x) for v in y))


def graded_to_tuple(Z: Iterable[tuple[str, str]], m1: KripkeModel, m2: KripkeModel,
                    K: int | None = None, max_degree: int | None = None) -> dict[int, frozenset]:
    """Z_1 from the singleton pairs of Z; Z_n for 2 <= n <= K all equal-size Z-pairs.

    ``K`` defaults to the larger out-degree of the two models (at least 1);
    beyond it no successor subsets of size n exist to be matched.
    """
    Z = frozenset(Z)
    limit = WITNESS_BUDGET if max_degree is None else max_degree
    if K is None:
        K = max(1, m1.out_degree(), m2.out_degree())
    if K > limit:
        raise BudgetExceeded(f"K={K} exceeds witness budget {limit}")
    fam: dict[int, frozenset] = {1: frozenset((frozenset([a]), frozenset([b])) for a, b in Z)}
    dom = sorted({a for a, _ in Z})
    ran = sorted({b for _, b in Z})
    for n in range(2, K + 1):
        pairs = set()
        for xs in itertools.combinations(dom, n):
            for ys in itertools.combinations(ran, n):
                if is_z_pair(xs, ys, Z):
                    pairs.add((frozenset(xs), frozenset(ys)))
        fam[n] = frozenset(pairs)
    return fam


# -- equivalence sampling ---------------------------------------------------

def equiv_sample(m1, w1: str, m2, w2: str, trials: int = 1000, depth: int = 3,
                 max_grade: int = 3, seed: int = 0, atoms: list[str] | None = None) -> Verdict:
    """Evaluate random formulas at both pointed models; report the first disagreement.

    ``agree`` is evidence, not proof.
    """
    rng = random.Random(seed)
    names = atoms if atoms is not None else (_atoms(m1, m2) or ["p"])
    for t in range(trials):
        f = random_formula(rng, depth, max_grade, names)
        left, right = semantics.evaluate(m1, w1, f), semantics.evaluate(m2, w2, f)
        if left != right:
            return Verdict("distinguished", {"formula": print_formula(f), "trial": t,
                                             "left": left, "right": right})
    return Verdict("agree", {"trials": trials})


def distinguishes(f: Formula, m1, w1: str, m2, w2: str) -> bool:
    return semantics.evaluate(m1, w1, f) != semantics.evaluate(m2, w2, f)
