"""Slow reference implementations that follow the definitions literally.

Nothing here shares code with the bitmask evaluators; sets are plain
frozensets and quantifiers are spelled out as enumerations.
"""
from __future__ import annotations

import itertools
from typing import Iterable

from .formula import Atom, Bot, Dia, Formula, Neg, Or, Top
from .graded import OMEGA


def powerset(xs: Iterable[str]) -> list[frozenset[str]]:
    xs = sorted(xs)
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


def upset_of_min_size(A: Iterable[str], n: int, W: Iterable[str]) -> set[frozenset[str]]:
    """Materialize the up-set (within W) of all subsets of A with at least n elements."""
    gens = [x for x in powerset(A) if len(x) >= n]
    return {y for y in powerset(W) if any(g <= y for g in gens)}


def graded_literal(m, w: str, f: Formula) -> bool:
    """Graded truth with the diamond clause read as: some finite X inside the
    truth set has total multiplicity at least n."""
    def ts(g: Formula) -> frozenset[str]:
        return frozenset(u for u in m.worlds if ev(u, g))

    def mass(u: str, X) -> object:
        total = 0
        for x in X:
            k = m.sigma.get((u, x), 0)
            if k is OMEGA:
                return OMEGA
            total += k
        return total

    def ev(u: str, g: Formula) -> bool:
        if isinstance(g, Atom):
            return u in m.val.get(g.name, ())
        if isinstance(g, Top):
            return True
        if isinstance(g, Bot):
            return False
        if isinstance(g, Neg):
            return not ev(u, g.child)
        if isinstance(g, Or):
            return ev(u, g.left) or ev(u, g.right)
        if isinstance(g, Dia):
            return any(mass(u, X) >= g.grade for X in powerset(ts(g.child)))
        raise TypeError(g)

    return ev(w, f)


def kripke_literal(m, w: str, f: Formula) -> bool:
    """Counting clause evaluated by walking successor lists."""
    succ = {u: [v for (a, v) in m.rel if a == u] for u in m.worlds}

    def ev(u: str, g: Formula) -> bool:
        if isinstance(g, Atom):
            return u in m.val.get(g.name, ())
        if isinstance(g, Top):
            return True
        if isinstance(g, Bot):
            return False
        if isinstance(g, Neg):
            return not ev(u, g.child)
        if isinstance(g, Or):
            return ev(u, g.left) or ev(u, g.right)
        if isinstance(g, Dia):
            return sum(1 for v in succ[u] if ev(v, g.child)) >= g.grade
        raise TypeError(g)

    return ev(w, f)


def graded_bisim_literal(Z, succ1: frozenset[str], succ2: frozenset[str],
                         W1: Iterable[str], W2: Iterable[str]) -> bool:
    """Forth and Back at one pair, quantifying over the full up-sets of the
    successor sets for every grade 0..max(|W1|, |W2|) + 1."""
    W1, W2 = sorted(W1), sorted(W2)
    Z = set(Z)
    top = max(len(W1), len(W2)) + 1
    for n in range(top + 1):
        up1 = upset_of_min_size(succ1, n, W1)
        up2 = upset_of_min_size(succ2, n, W2)
        for X in up1:
            if not any(all(any((x, y) in Z for x in X) for y in Y) for Y in up2):
                return False
        for Y in up2:
            if not any(all(any((x, y) in Z for y in Y) for x in X) for X in up1):
                return False
    return True
