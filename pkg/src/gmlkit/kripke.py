"""Kripke models and the counting truth clause."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import semantics
from .formula import Formula
from .semantics import Verdict, mask_of


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """Worlds, a binary relation and a valuation.

    Worlds are kept sorted. A model with an empty valuation doubles as a
    frame wherever frame validity is asked for.
    """

    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]
    val: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __init__(self, worlds: Iterable[str], rel: Iterable[tuple[str, str]] = (),
                 val: Mapping[str, Iterable[str]] | None = None):
        ws = tuple(sorted(worlds))
        if len(set(ws)) != len(ws):
            raise ValueError("duplicate world identifiers")
        declared = set(ws)
        pairs = frozenset((a, b) for a, b in rel)
        for a, b in pairs:
            if a not in declared or b not in declared:
                raise ValueError(f"edge ({a}, {b}) mentions an undeclared world")
        v = {p: frozenset(s) for p, s in (val or {}).items()}
        for p, s in v.items():
            if not s <= declared:
                raise ValueError(f"valuation of {p} mentions undeclared worlds {sorted(s - declared)}")
        object.__setattr__(self, "worlds", ws)
        object.__setattr__(self, "rel", pairs)
        object.__setattr__(self, "val", v)
        index = {w: i for i, w in enumerate(ws)}
        succ = [0] * len(ws)
        for a, b in pairs:
            succ[index[a]] |= 1 << index[b]
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "_succ", tuple(succ))

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return (self.worlds, self.rel, self.val) == (other.worlds, other.rel, other.val)

    def __hash__(self):
        return hash((self.worlds, self.rel))

    def successors(self, w: str) -> frozenset[str]:
        """R[w]."""
        return semantics.worlds_of(self, self._succ[self.index[w]])

    def succ_mask(self, w: str) -> int:
        return self._succ[self.index[w]]

    def out_degree(self) -> int:
        return max((s.bit_count() for s in self._succ), default=0)

    def frame(self) -> KripkeModel:
        return KripkeModel(self.worlds, self.rel)

    def with_val(self, val: Mapping[str, Iterable[str]]) -> KripkeModel:
        return KripkeModel(self.worlds, self.rel, val)

    def diamond(self, n: int, mask: int) -> int:
        out = 0
        for i, s in enumerate(self._succ):
            if (s & mask).bit_count() >= n:
                out |= 1 << i
        return out


def eval_kripke(m: KripkeModel, w: str, f: Formula) -> bool:
    """``Dia(n, psi)`` holds at ``w`` iff at least ``n`` successors satisfy ``psi``."""
    return semantics.evaluate(m, w, f)


def truth_set(m: KripkeModel, f: Formula) -> frozenset[str]:
    return semantics.truth_set(m, f)


def frame_validity_kripke(frame: KripkeModel, f: Formula, budget: int | None = None) -> Verdict:
    return semantics.frame_validity(frame, f, budget)


def kripke_to_graded(m: KripkeModel):
    """Multiplicity 1 on every edge, 0 elsewhere; the valuation is kept."""
    from .graded import GradedModel

    return GradedModel(m.worlds, {(a, b): 1 for a, b in m.rel}, m.val)


def random_kripke(rng, n_worlds: int, *, atoms=("p",), edge_prob: float = 0.4,
                  max_out: int | None = None, prefix: str = "w") -> KripkeModel:
    worlds = [f"{prefix}{i}" for i in range(n_worlds)]
    rel = []
    for a in worlds:
        targets = [b for b in worlds if rng.random() < edge_prob]
        if max_out is not None and len(targets) > max_out:
            targets = rng.sample(targets, max_out)
        rel.extend((a, b) for b in targets)
    val = {p: [w for w in worlds if rng.random() < 0.5] for p in atoms}
    return KripkeModel(worlds, rel, val)


def all_frames(n_worlds: int, prefix: str = "w"):
    """Every Kripke frame on ``n_worlds`` worlds."""
    worlds = [f"{prefix}{i}" for i in range(n_worlds)]
    pairs = [(a, b) for a in worlds for b in worlds]
    for code in range(1 << len(pairs)):
        yield KripkeModel(worlds, [pr for k, pr in enumerate(pairs) if code >> k & 1])


__all__ = [
    "KripkeModel", "eval_kripke", "truth_set", "frame_validity_kripke",
    "kripke_to_graded", "random_kripke", "all_frames", "mask_of",
]
