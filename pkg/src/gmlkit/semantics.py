"""Machinery shared by the three semantics.

Every model class exposes ``worlds`` (a sorted tuple), ``index`` (world to
bit position), ``val`` (atom to frozenset of worlds) and ``diamond(n, mask)``,
which returns the bitmask of worlds where a grade-``n`` diamond holds given
the bitmask truth set of its argument. Truth sets are computed bottom-up
over those bitmasks.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping

from .formula import Atom, Bot, Dia, Formula, Meta, Neg, Or, Top, atoms, subformulas

DEFAULT_BUDGET = 1 << 22


class BudgetExceeded(RuntimeError):
    pass


class UnknownWorld(KeyError):
    pass


def budget(value: int | None = None) -> int:
    """Enumeration ceiling: explicit value, else ``GMLKIT_BUDGET``, else the default."""
    if value is not None:
        return value
    env = os.environ.get("GMLKIT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def require_budget(cost: int, limit: int | None, what: str) -> None:
    limit = budget(limit)
    if cost > limit:
        raise BudgetExceeded(f"{what}: {cost} exceeds enumeration budget {limit}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check. Truthy exactly when the status is affirmative."""

    status: str
    detail: dict[str, Any] = field(default_factory=dict)

    AFFIRMATIVE = frozenset({"true", "valid", "pass", "yes", "agree", "not_found"})

    def __bool__(self) -> bool:
        return self.status in self.AFFIRMATIVE

    def to_json(self) -> dict[str, Any]:
        return {"status": self.status, **self.detail}


# -- bitmask helpers --------------------------------------------------------

def mask_of(model, worlds: Iterable[str]) -> int:
    m = 0
    for w in worlds:
        try:
            m |= 1 << model.index[w]
        except KeyError:
            raise UnknownWorld(w) from None
    return m


def worlds_of(model, mask: int) -> frozenset[str]:
    return frozenset(w for i, w in enumerate(model.worlds) if mask >> i & 1)


def sorted_worlds(model, mask: int) -> list[str]:
    return [w for i, w in enumerate(model.worlds) if mask >> i & 1]


def all_masks(n: int) -> range:
    return range(1 << n)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- evaluation -------------------------------------------------------------

def truth_masks(model, f: Formula, val: Mapping[str, int] | None = None) -> dict[Formula, int]:
    """Truth set of every subformula of ``f`` as a bitmask.

    ``val`` maps atoms to bitmasks and overrides the model's own valuation;
    atoms missing from both denote the empty set.
    """
    full = (1 << len(model.worlds)) - 1
    if val is None:
        val = {p: mask_of(model, ws) for p, ws in model.val.items()}
    out: dict[Formula, int] = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            out[g] = val.get(g.name, 0)
        elif isinstance(g, Top):
            out[g] = full
        elif isinstance(g, Bot):
            out[g] = 0
        elif isinstance(g, Neg):
            out[g] = full & ~out[g.child]
        elif isinstance(g, Or):
            out[g] = out[g.left] | out[g.right]
        elif isinstance(g, Dia):
            if not isinstance(g.grade, int):
                raise TypeError("cannot evaluate a formula with symbolic grades")
            out[g] = model.diamond(g.grade, out[g.child])
        elif isinstance(g, Meta):
            raise TypeError("cannot evaluate a formula with metavariables")
        else:
            raise TypeError(f"not a formula: {g!r}")
    return out


def truth_mask(model, f: Formula, val: Mapping[str, int] | None = None) -> int:
    return truth_masks(model, f, val)[f]


def evaluate(model, w: str, f: Formula) -> bool:
    if w not in model.index:
        raise UnknownWorld(w)
    return bool(truth_mask(model, f) >> model.index[w] & 1)


def truth_set(model, f: Formula) -> frozenset[str]:
    return worlds_of(model, truth_mask(model, f))


def valuations(names: list[str], n_worlds: int) -> Iterator[dict[str, int]]:
    """Every assignment of a subset of the worlds (as a bitmask) to each atom."""
    for combo in itertools.product(all_masks(n_worlds), repeat=len(names)):
        yield dict(zip(names, combo))


def frame_validity(frame, f: Formula, limit: int | None = None) -> Verdict:
    """Exhaustive validity of ``f`` on the frame underlying ``frame``.

    Only atoms occurring in ``f`` are varied. The first falsifying
    valuation (in enumeration order) is returned as the countermodel.
    """
    names = atoms(f)
    n = len(frame.worlds)
    require_budget(1 << (n * len(names)), limit, "valuation enumeration")
    full = (1 << n) - 1
    for val in valuations(names, n):
        holds = truth_mask(frame, f, val)
        if holds != full:
            bad = full & ~holds
            world = frame.worlds[(bad & -bad).bit_length() - 1]
            return Verdict("countermodel", {
                "world": world,
                "valuation": {p: sorted_worlds(frame, m) for p, m in val.items()},
            })
    return Verdict("valid")
