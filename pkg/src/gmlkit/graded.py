"""Graded models: edge multiplicities in the naturals extended with omega."""
from __future__ import annotations

import functools
import itertools
from typing import Iterable, Mapping, Union

from . import semantics
from .formula import Formula
from .kripke import KripkeModel
from .semantics import Verdict, mask_of


@functools.total_ordering
class _Omega:
    """The first infinite ordinal. Absorbs addition, exceeds every natural."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "omega"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("omega")

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()
ExtNat = Union[int, _Omega]


def ext_min(a: ExtNat, b: ExtNat) -> ExtNat:
    return b if a is OMEGA else (a if b is OMEGA else min(a, b))


def parse_extnat(value) -> ExtNat:
    if value == "omega" or value is OMEGA:
        return OMEGA
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(f"not an extended natural: {value!r}")
    return value


class GradedModel:
    """Worlds, a sparse multiplicity function ``sigma`` and a valuation.

    Zero entries are dropped on construction; a missing pair means 0.
    """

    def __init__(self, worlds: Iterable[str], sigma: Mapping[tuple[str, str], ExtNat] | None = None,
                 val: Mapping[str, Iterable[str]] | None = None):
        ws = tuple(sorted(worlds))
        if len(set(ws)) != len(ws):
            raise ValueError("duplicate world identifiers")
        self.worlds = ws
        self.index = {w: i for i, w in enumerate(ws)}
        self.sigma: dict[tuple[str, str], ExtNat] = {}
        for (a, b), k in (sigma or {}).items():
            if a not in self.index or b not in self.index:
                raise ValueError(f"sigma entry ({a}, {b}) mentions an undeclared world")
            k = parse_extnat(k)
            if k != 0:
                self.sigma[(a, b)] = k
        self.val = {p: frozenset(s) for p, s in (val or {}).items()}
        for p, s in self.val.items():
            if not s <= set(ws):
                raise ValueError(f"valuation of {p} mentions undeclared worlds")
        # per source world: (target bit, multiplicity)
        self._out: list[list[tuple[int, ExtNat]]] = [[] for _ in ws]
        for (a, b), k in sorted(self.sigma.items()):
            self._out[self.index[a]].append((self.index[b], k))

    def __eq__(self, other):
        if not isinstance(other, GradedModel):
            return NotImplemented
        return (self.worlds, self.sigma, self.val) == (other.worlds, other.sigma, other.val)

    def __repr__(self):
        return f"GradedModel({list(self.worlds)!r}, {self.sigma!r}, {dict(self.val)!r})"

    def s(self, w: str, u: str) -> ExtNat:
        return self.sigma.get((w, u), 0)

    def frame(self) -> GradedModel:
        return GradedModel(self.worlds, self.sigma)

    def with_val(self, val) -> GradedModel:
        return GradedModel(self.worlds, self.sigma, val)

    def _mass(self, i: int, mask: int) -> ExtNat:
        total: ExtNat = 0
        for j, k in self._out[i]:
            if mask >> j & 1:
                total = total + k
                if total is OMEGA:
                    break
        return total

    def diamond(self, n: int, mask: int) -> int:
        out = 0
        for i in range(len(self.worlds)):
            if self._mass(i, mask) >= n:
                out |= 1 << i
        return out


def sigma_mass(m: GradedModel, w: str, X: Iterable[str]) -> ExtNat:
    """Sum of ``sigma(w, u)`` over ``u`` in ``X``; 0 for the empty set."""
    return m._mass(m.index[w], mask_of(m, X))


def eval_graded(m: GradedModel, w: str, f: Formula) -> bool:
    """Evaluate ``f`` at ``w``.

    A grade-``n`` diamond is decided by the mass of the whole truth set of
    its argument, which is finite here, instead of searching its finite
    subsets: the full set has the largest mass of all of them.
    """
    return semantics.evaluate(m, w, f)


def truth_set(m: GradedModel, f: Formula) -> frozenset[str]:
    return semantics.truth_set(m, f)


def eval_frame_validity_graded(frame: GradedModel, f: Formula, budget: int | None = None) -> Verdict:
    return semantics.frame_validity(frame, f, budget)


def copy_name(w: str, i: int) -> str:
    return f"{w}@{i}"


def graded_to_kripke(m: GradedModel, cap: int) -> KripkeModel:
    """Truncated unravelling into a Kripke model.

    World ``w`` becomes copies ``w@0 .. w@cap``; ``w@i -> u@j`` iff
    ``1 <= j <= min(sigma(w, u), cap)``. Every copy carries the valuation
    of its original. Agrees with ``m`` on formulas of grade at most ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    names = {copy_name(w, i) for w in m.worlds for i in range(cap + 1)}
    if len(names) != len(m.worlds) * (cap + 1):
        raise ValueError("world names collide with copy names")
    rel = []
    for (w, u), k in m.sigma.items():
        top = ext_min(k, cap)
        for i in range(cap + 1):
            rel.extend((copy_name(w, i), copy_name(u, j)) for j in range(1, top + 1))
    val = {p: [copy_name(w, i) for w in s for i in range(cap + 1)] for p, s in m.val.items()}
    return KripkeModel(names, rel, val)


def random_graded(rng, n_worlds: int, *, atoms=("p",), max_mult: int = 4,
                  omega_prob: float = 0.1, zero_prob: float = 0.5, prefix: str = "w") -> GradedModel:
    worlds = [f"{prefix}{i}" for i in range(n_worlds)]
    sigma: dict[tuple[str, str], ExtNat] = {}
    for a, b in itertools.product(worlds, repeat=2):
        r = rng.random()
        if r < zero_prob:
            continue
        sigma[(a, b)] = OMEGA if r < zero_prob + omega_prob else rng.randint(1, max_mult)
    val = {p: [w for w in worlds if rng.random() < 0.5] for p in atoms}
    return GradedModel(worlds, sigma, val)
