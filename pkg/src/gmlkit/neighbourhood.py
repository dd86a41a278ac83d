"""Neighbourhood models, gradedness and the star conditions, bounded morphisms.

Two representations share one interface:

``NeighbourhoodModel``
    explicit collections ``nu[(w, n)]`` for grades ``1..max_grade``;
    grade 0 is the full powerset unless overridden, grades above
    ``max_grade`` are empty.
``CoreModel``
    one core set per world; grade ``n`` neighbourhoods of ``w`` are the
    sets meeting ``core[w]`` in at least ``n`` worlds.

Both expose ``contains(i, n, mask)``, ``neighbourhoods(i, n)`` and
``grade_bound`` over world indices and bitmask subsets, plus the public
``worlds``/``index``/``val`` attributes used by the evaluator.
"""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import semantics
from .formula import Formula, atoms, max_grade
from .kripke import KripkeModel
from .semantics import BudgetExceeded, Verdict, bits, mask_of, require_budget, sorted_worlds

MAX_EXPLICIT_WORLDS = 16


class GradeError(ValueError):
    """A formula grade exceeds what an explicit model represents."""


def _check_worlds(worlds: Iterable[str]) -> tuple[str, ...]:
    ws = tuple(sorted(worlds))
    if len(set(ws)) != len(ws):
        raise ValueError("duplicate world identifiers")
    return ws


def _check_val(ws, val) -> dict[str, frozenset[str]]:
    out = {p: frozenset(s) for p, s in (val or {}).items()}
    for p, s in out.items():
        if not s <= set(ws):
            raise ValueError(f"valuation of {p} mentions undeclared worlds")
    return out


class _Nbhd:
    worlds: tuple[str, ...]
    index: dict[str, int]
    val: dict[str, frozenset[str]]
    explicit: bool

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1

    def set_of(self, mask: int) -> list[str]:
        return sorted_worlds(self, mask)

    def collection(self, w: str, n: int) -> list[list[str]]:
        """``nu_n(w)`` as sorted world lists, ordered by bitmask."""
        return [self.set_of(x) for x in sorted(self.neighbourhoods(self.index[w], n))]

    def diamond(self, n: int, mask: int) -> int:
        out = 0
        for i in range(len(self.worlds)):
            if self.contains(i, n, mask):
                out |= 1 << i
        return out


class NeighbourhoodModel(_Nbhd):
    explicit = True

    def __init__(self, worlds: Iterable[str], max_grade: int,
                 nu: Mapping[tuple[str, int], Iterable[Iterable[str]]] | None = None,
                 nu0: Mapping[str, Iterable[Iterable[str]]] | None = None,
                 val: Mapping[str, Iterable[str]] | None = None):
        self.worlds = _check_worlds(worlds)
        if len(self.worlds) > MAX_EXPLICIT_WORLDS:
            raise BudgetExceeded(f"explicit neighbourhood models are capped at {MAX_EXPLICIT_WORLDS} worlds")
        if max_grade < 0:
            raise ValueError("max_grade is a natural number")
        self.index = {w: i for i, w in enumerate(self.worlds)}
        self.max_grade = max_grade
        self._nu: dict[tuple[int, int], frozenset[int]] = {}
        for (w, n), sets in (nu or {}).items():
            if w not in self.index:
                raise ValueError(f"neighbourhoods given for undeclared world {w}")
            if not 1 <= n <= max_grade:
                raise ValueError(f"grade {n} outside 1..{max_grade}")
            masks = frozenset(mask_of(self, s) for s in sets)
            if masks:
                self._nu[(self.index[w], n)] = masks
        self._nu0: dict[int, frozenset[int]] = {}
        for w, sets in (nu0 or {}).items():
            if w not in self.index:
                raise ValueError(f"grade-0 neighbourhoods given for undeclared world {w}")
            self._nu0[self.index[w]] = frozenset(mask_of(self, s) for s in sets)
        self.val = _check_val(self.worlds, val)

    @classmethod
    def from_masks(cls, worlds, max_grade: int, nu: Mapping[tuple[int, int], Iterable[int]],
                   nu0: Mapping[int, Iterable[int]] | None = None, val=None) -> NeighbourhoodModel:
        m = cls(worlds, max_grade, val=val)
        m._nu = {k: frozenset(v) for k, v in nu.items() if v}
        m._nu0 = {k: frozenset(v) for k, v in (nu0 or {}).items()}
        return m

    @property
    def grade_bound(self) -> int:
        return self.max_grade

    def contains(self, i: int, n: int, mask: int) -> bool:
        if n == 0:
            return i not in self._nu0 or mask in self._nu0[i]
        if n > self.max_grade:
            return False
        return mask in self._nu.get((i, n), ())

    def neighbourhoods(self, i: int, n: int) -> frozenset[int]:
        if n == 0:
            return self._nu0.get(i, frozenset(range(self.full + 1)))
        return self._nu.get((i, n), frozenset())

    def has_nu0_override(self, i: int) -> bool:
        return i in self._nu0

    def diamond(self, n: int, mask: int) -> int:
        if n > self.max_grade:
            raise GradeError(f"grade {n} exceeds the model's max_grade {self.max_grade}")
        return super().diamond(n, mask)

    def frame(self) -> NeighbourhoodModel:
        return NeighbourhoodModel.from_masks(self.worlds, self.max_grade, self._nu, self._nu0)

    def with_val(self, val) -> NeighbourhoodModel:
        return NeighbourhoodModel.from_masks(self.worlds, self.max_grade, self._nu, self._nu0, val)

    def __eq__(self, other):
        if not isinstance(other, NeighbourhoodModel):
            return NotImplemented
        return ((self.worlds, self.max_grade, self._nu, self._nu0, self.val)
                == (other.worlds, other.max_grade, other._nu, other._nu0, other.val))

    def __repr__(self):
        return f"NeighbourhoodModel({list(self.worlds)!r}, max_grade={self.max_grade})"


class CoreModel(_Nbhd):
    """Graded neighbourhood model given by its core sets."""

    explicit = False

    def __init__(self, worlds: Iterable[str], core: Mapping[str, Iterable[str]] | None = None,
                 val: Mapping[str, Iterable[str]] | None = None):
        self.worlds = _check_worlds(worlds)
        self.index = {w: i for i, w in enumerate(self.worlds)}
        core = core or {}
        for w in core:
            if w not in self.index:
                raise ValueError(f"core given for undeclared world {w}")
        self._core = tuple(mask_of(self, core.get(w, ())) for w in self.worlds)
        self.val = _check_val(self.worlds, val)

    @property
    def core(self) -> dict[str, frozenset[str]]:
        return {w: semantics.worlds_of(self, c) for w, c in zip(self.worlds, self._core)}

    def core_mask(self, i: int) -> int:
        return self._core[i]

    @property
    def grade_bound(self) -> int:
        return max((c.bit_count() for c in self._core), default=0)

    def contains(self, i: int, n: int, mask: int) -> bool:
        return (mask & self._core[i]).bit_count() >= n

    def neighbourhoods(self, i: int, n: int) -> frozenset[int]:
        require_budget(1 << len(self.worlds), None, "neighbourhood materialization")
        c = self._core[i]
        return frozenset(x for x in range(self.full + 1) if (x & c).bit_count() >= n)

    def diamond(self, n: int, mask: int) -> int:
        out = 0
        for i, c in enumerate(self._core):
            if (mask & c).bit_count() >= n:
                out |= 1 << i
        return out

    def frame(self) -> CoreModel:
        return CoreModel(self.worlds, self.core)

    def with_val(self, val) -> CoreModel:
        return CoreModel(self.worlds, self.core, val)

    def __eq__(self, other):
        if not isinstance(other, CoreModel):
            return NotImplemented
        return (self.worlds, self._core, self.val) == (other.worlds, other._core, other.val)

    def __repr__(self):
        return f"CoreModel({list(self.worlds)!r}, {self.core!r})"


# -- evaluation -------------------------------------------------------------

def eval_nbhd(m: _Nbhd, w: str, f: Formula) -> bool:
    """``Dia(n, psi)`` holds at ``w`` iff the truth set of ``psi`` is in ``nu_n(w)``.

    Raises GradeError on explicit models when a grade exceeds ``max_grade``.
    """
    return semantics.evaluate(m, w, f)


def truth_set(m: _Nbhd, f: Formula) -> frozenset[str]:
    return semantics.truth_set(m, f)


def frame_validity_nbhd(frame: _Nbhd, f: Formula, budget: int | None = None) -> Verdict:
    if frame.explicit and max_grade(f) > frame.max_grade:
        raise GradeError(f"grade {max_grade(f)} exceeds the model's max_grade {frame.max_grade}")
    return semantics.frame_validity(frame, f, budget)


# -- translations -----------------------------------------------------------

def bullet(m: KripkeModel) -> CoreModel:
    """Neighbourhoods of ``w`` at grade ``n``: supersets of ``n``-subsets of R[w]."""
    return CoreModel(m.worlds, {w: m.successors(w) for w in m.worlds}, m.val)


def unbullet(m: CoreModel) -> KripkeModel:
    return KripkeModel(m.worlds, [(w, u) for w, c in m.core.items() for u in c], m.val)


def materialize(m: CoreModel, max_grade: int | None = None) -> NeighbourhoodModel:
    """Explicit copy of a core model; ``max_grade`` defaults to the largest core size."""
    require_budget(1 << len(m.worlds), None, "neighbourhood materialization")
    N = m.grade_bound if max_grade is None else max_grade
    nu = {}
    for i in range(len(m.worlds)):
        for n in range(1, N + 1):
            nu[(i, n)] = m.neighbourhoods(i, n)
    return NeighbourhoodModel.from_masks(m.worlds, N, nu, val=m.val)


def upset(generators: Iterable[int], n_worlds: int) -> frozenset[int]:
    gens = list(generators)
    return frozenset(x for x in range(1 << n_worlds) if any(g & ~x == 0 for g in gens))


# -- monotonicity and gradedness --------------------------------------------

def is_monotonic(m: _Nbhd) -> Verdict:
    """Closure of every ``nu_n(w)`` under supersets."""
    if not m.explicit:
        return Verdict("pass", {"note": "core representation is monotonic by construction"})
    n_w = len(m.worlds)
    for i, w in enumerate(m.worlds):
        grades = ([0] if m.has_nu0_override(i) else []) + list(range(1, m.max_grade + 1))
        for n in grades:
            coll = m.neighbourhoods(i, n)
            for x in sorted(coll):
                for b in range(n_w):
                    y = x | (1 << b)
                    if y not in coll:
                        return Verdict("violation", {
                            "world": w, "grade": n, "member": m.set_of(x), "missing_superset": m.set_of(y)})
    return Verdict("pass")


def extract_core(m: _Nbhd, w: str) -> frozenset[str]:
    """Worlds whose singleton is a grade-1 neighbourhood of ``w``."""
    i = m.index[w]
    return frozenset(u for b, u in enumerate(m.worlds) if m.contains(i, 1, 1 << b))


def _core_mask(m: _Nbhd, i: int) -> int:
    out = 0
    for b in range(len(m.worlds)):
        if m.contains(i, 1, 1 << b):
            out |= 1 << b
    return out


def is_graded_frame(m: _Nbhd) -> Verdict:
    """Whether each ``nu_n(w)`` is ``{X : |X & A_w| >= n}`` for one set ``A_w``.

    The only candidate for ``A_w`` is the extracted core. Grades above
    ``max_grade`` are empty, so the core must have at most ``max_grade``
    elements.
    """
    if not m.explicit:
        return Verdict("yes", {"core": {w: sorted(c) for w, c in m.core.items()}})
    full = m.full
    cores = {}
    for i, w in enumerate(m.worlds):
        if m.has_nu0_override(i):
            missing = sorted(set(range(full + 1)) - m.neighbourhoods(i, 0))
            if missing:
                return Verdict("no", {"world": w, "grade": 0, "witness": m.set_of(missing[0]),
                                      "reason": "grade-0 neighbourhoods are not the full powerset"})
        a = _core_mask(m, i)
        cores[w] = m.set_of(a)
        if a.bit_count() > m.max_grade:
            witness = 0
            for b in bits(a)[: m.max_grade + 1]:
                witness |= 1 << b
            return Verdict("no", {"world": w, "grade": m.max_grade + 1, "witness": m.set_of(witness),
                                  "reason": "core larger than max_grade, but higher grades are empty"})
        for n in range(1, m.max_grade + 1):
            expected = {x for x in range(full + 1) if (x & a).bit_count() >= n}
            diff = expected.symmetric_difference(m.neighbourhoods(i, n))
            if diff:
                x = min(diff)
                reason = ("missing from the collection" if x in expected
                          else "present in the collection but not generated by the core")
                return Verdict("no", {"world": w, "grade": n, "witness": m.set_of(x), "reason": reason})
    return Verdict("yes", {"core": cores})


def minimal_members(coll: Iterable[int]) -> list[int]:
    coll = frozenset(coll)
    out = []
    for y in sorted(coll):
        if not any(z != y and z & ~y == 0 for z in semantics.submasks(y) if z in coll):
            out.append(y)
    return out


STARS = ("star1", "star2", "star3", "star4", "star5", "star6")


def check_stars(m: _Nbhd) -> dict[str, Verdict]:
    """Check the six star conditions one by one on an explicit model.

    Grades 1..max_grade are inspected for stars 2-5; higher grades are
    empty and satisfy them vacuously. Star 6 ranges over every ``n`` up to
    the number of grade-1 singletons, since an ``n`` beyond max_grade still
    demands a minimal member of the (empty) grade-``n`` collection.
    """
    if not m.explicit:
        return {s: Verdict("pass", {"note": "core representation"}) for s in STARS}
    require_budget(3 ** len(m.worlds), None, "minimal-member enumeration")
    full = m.full
    n_w = len(m.worlds)
    found: dict[str, Verdict] = {}

    def fail(star, **detail):
        if star not in found:
            found[star] = Verdict("violation", detail)

    for i, w in enumerate(m.worlds):
        nu1 = m.neighbourhoods(i, 1)
        singles = [b for b in range(n_w) if (1 << b) in nu1]
        single_mask = sum(1 << b for b in singles)
        if m.has_nu0_override(i):
            missing = sorted(set(range(full + 1)) - m.neighbourhoods(i, 0))
            if missing:
                fail("star1", world=w, missing=m.set_of(missing[0]))
        for n in range(1, m.max_grade + 1):
            coll = m.neighbourhoods(i, n)
            if "star2" not in found:
                for x in sorted(coll):
                    ext = next((x | 1 << b for b in range(n_w) if x | 1 << b not in coll), None)
                    if ext is not None:
                        fail("star2", world=w, grade=n, member=m.set_of(x), missing_superset=m.set_of(ext))
                        break
            if 0 in coll:
                fail("star3", world=w, grade=n)
            minimal = minimal_members(coll)
            for x in sorted(coll):
                if not any(y & ~x == 0 for y in minimal):
                    fail("star4", world=w, grade=n, member=m.set_of(x))
                    break
            for y in minimal:
                if y.bit_count() != n:
                    fail("star5", world=w, grade=n, minimal=m.set_of(y),
                         reason=f"minimal member has {y.bit_count()} elements, not {n}")
                    break
                if y & ~single_mask:
                    fail("star5", world=w, grade=n, minimal=m.set_of(y),
                         reason="minimal member is not atomic at grade 1")
                    break
        for n in range(1, len(singles) + 1):
            coll = m.neighbourhoods(i, n) if n <= m.max_grade else frozenset()
            for combo in itertools.combinations(singles, n):
                y = sum(1 << b for b in combo)
                is_min = y in coll and all(z == y or z not in coll for z in semantics.submasks(y))
                if not is_min:
                    fail("star6", world=w, grade=n, union=m.set_of(y))
                    break
            if "star6" in found:
                break
    return {s: found.get(s, Verdict("pass")) for s in STARS}


def stars_hold(report: Mapping[str, Verdict]) -> bool:
    return all(report.values())


# -- correspondents of Ax5 and Ax6 ------------------------------------------

def _grades(m: _Nbhd) -> range:
    return range(0, m.grade_bound + 1)


def _members(m: _Nbhd, i: int, n: int) -> list[int]:
    return sorted(m.neighbourhoods(i, n)) if n <= m.grade_bound or not m.explicit else []


def check_ax5_property(m: _Nbhd) -> Verdict:
    """For all w, X, Y, n: X minus Y not in nu_1(w) and X in nu_n(w) imply Y in nu_n(w)."""
    require_budget(1 << (2 * len(m.worlds)), None, "Ax5 property enumeration")
    full = m.full
    for i, w in enumerate(m.worlds):
        for n in _grades(m):
            for x in _members(m, i, n):
                for y in range(full + 1):
                    if not m.contains(i, 1, x & ~y) and not m.contains(i, n, y):
                        return Verdict("violation", {"world": w, "grade": n, "X": m.set_of(x), "Y": m.set_of(y)})
    return Verdict("pass")


def check_ax6_property(m: _Nbhd) -> Verdict:
    """For all w, X, Y, m, n: if X and Y are disjoint up to nu_1(w), X has grade
    exactly m and Y exactly n, then their union has grade exactly m + n."""
    require_budget(1 << (2 * len(m.worlds)), None, "Ax6 property enumeration")
    for i, w in enumerate(m.worlds):
        exact = {}
        for n in _grades(m):
            exact[n] = [x for x in _members(m, i, n) if not m.contains(i, n + 1, x)]
        for a, b in itertools.product(_grades(m), repeat=2):
            for x in exact[a]:
                for y in exact[b]:
                    if m.contains(i, 1, x & y):
                        continue
                    u = x | y
                    if not m.contains(i, a + b, u) or m.contains(i, a + b + 1, u):
                        return Verdict("violation", {"world": w, "grades": [a, b],
                                                     "X": m.set_of(x), "Y": m.set_of(y)})
    return Verdict("pass")


# -- bounded morphisms ------------------------------------------------------

@dataclass(frozen=True)
class WorldMap:
    mapping: Mapping[str, str]

    def __call__(self, w: str) -> str:
        return self.mapping[w]


def is_bounded_morphism(f: WorldMap, src: _Nbhd, dst: _Nbhd) -> Verdict:
    """Check BM1 (images of neighbourhoods are neighbourhoods) and BM2
    (every neighbourhood of the image contains the image of a neighbourhood).

    Grades run from 0 to the larger of the two grade bounds; above its own
    bound a collection is empty. Surjectivity is reported, not required.
    """
    for w in src.worlds:
        if w not in f.mapping:
            return Verdict("violation", {"clause": "total", "world": w})
        if f.mapping[w] not in dst.index:
            return Verdict("violation", {"clause": "total", "world": w, "image": f.mapping[w]})
    target = [dst.index[f.mapping[w]] for w in src.worlds]

    @functools.lru_cache(maxsize=None)
    def image(x: int) -> int:
        out = 0
        for b in bits(x):
            out |= 1 << target[b]
        return out

    top = max(src.grade_bound, dst.grade_bound)
    for i, w in enumerate(src.worlds):
        j = target[i]
        for n in range(top + 1):
            mine = _members(src, i, n)
            for x in mine:
                if not dst.contains(j, n, image(x)):
                    return Verdict("violation", {"clause": "BM1", "world": w, "grade": n,
                                                 "X": src.set_of(x), "image": dst.set_of(image(x))})
            for x2 in _members(dst, j, n):
                if not any(image(x) & ~x2 == 0 for x in mine):
                    return Verdict("violation", {"clause": "BM2", "world": w, "grade": n,
                                                 "X'": dst.set_of(x2)})
    surjective = set(f.mapping[w] for w in src.worlds) == set(dst.worlds)
    return Verdict("pass", {"surjective": surjective})


# -- random models and countermodel search ----------------------------------

def random_core(rng: random.Random, n_worlds: int, *, atoms=("p",), prefix: str = "w") -> CoreModel:
    worlds = [f"{prefix}{i}" for i in range(n_worlds)]
    core = {w: [u for u in worlds if rng.random() < 0.5] for w in worlds}
    val = {p: [w for w in worlds if rng.random() < 0.5] for p in atoms}
    return CoreModel(worlds, core, val)


def random_explicit(rng: random.Random, n_worlds: int, max_grade: int, *, atoms=(),
                    prefix: str = "w") -> NeighbourhoodModel:
    """Random explicit frame from a mix of generators.

    Half the draws start from a graded frame (so both verdicts of the
    gradedness check are well represented), then are possibly perturbed.
    """
    worlds = [f"{prefix}{i}" for i in range(n_worlds)]
    full = (1 << n_worlds) - 1
    style = rng.randrange(4)
    nu: dict[tuple[int, int], frozenset[int]] = {}
    for i in range(n_worlds):
        if style <= 1:
            core = rng.randrange(full + 1)
            for n in range(1, max_grade + 1):
                nu[(i, n)] = frozenset(x for x in range(full + 1) if (x & core).bit_count() >= n)
        elif style == 2:
            for n in range(1, max_grade + 1):
                gens = [rng.randrange(full + 1) for _ in range(rng.randrange(3))]
                nu[(i, n)] = upset(gens, n_worlds)
        else:
            for n in range(1, max_grade + 1):
                nu[(i, n)] = frozenset(x for x in range(full + 1) if rng.random() < 0.3)
    if style == 1:
        i, n = rng.randrange(n_worlds), rng.randint(1, max_grade)
        nu[(i, n)] = nu.get((i, n), frozenset()) ^ {rng.randrange(full + 1)}
    nu0 = None
    if rng.random() < 0.05:
        i = rng.randrange(n_worlds)
        nu0 = {i: frozenset(range(full + 1)) - {rng.randrange(full + 1)}}
    val = {p: [w for w in worlds if rng.random() < 0.5] for p in atoms}
    return NeighbourhoodModel.from_masks(worlds, max_grade, nu, nu0, val)


@functools.lru_cache(maxsize=None)
def _all_upsets(n_worlds: int) -> tuple[frozenset[int], ...]:
    size = 1 << n_worlds
    require_budget(1 << size, None, "up-set enumeration")
    out = []
    for code in range(1 << size):
        coll = frozenset(x for x in range(size) if code >> x & 1)
        if all((x | 1 << b) in coll for x in coll for b in range(n_worlds)):
            out.append(coll)
    return tuple(out)


def _falsified(model, f: Formula) -> str | None:
    holds = semantics.truth_mask(model, f)
    bad = model.full & ~holds
    if bad:
        return model.worlds[(bad & -bad).bit_length() - 1]
    return None


def counterexample_search(f: Formula, max_worlds: int = 4, budget: int = 10**5, seed: int = 0,
                          frame_class: str = "monotonic") -> Verdict:
    """Search for a model of the given class where ``f`` fails somewhere.

    Small sizes are enumerated exhaustively while the space fits in the
    remaining budget; the rest of the budget goes to random sampling.
    ``frame_class`` is ``"monotonic"`` (explicit up-set models) or
    ``"graded"`` (core models). ``not_found`` is inconclusive.
    """
    if frame_class not in ("monotonic", "graded"):
        raise ValueError(f"unknown frame class {frame_class!r}")
    names = atoms(f)
    N = max_grade(f)
    rng = random.Random(seed)
    used = 0

    def build(k, choice, val):
        worlds = [f"w{i}" for i in range(k)]
        v = {p: sorted_worlds_list(worlds, m) for p, m in val.items()}
        if frame_class == "graded":
            return CoreModel(worlds, {worlds[i]: sorted_worlds_list(worlds, c) for i, c in enumerate(choice)}, v)
        nu = {(i, n): choice[i * N + n - 1] for i in range(k) for n in range(1, N + 1)}
        return NeighbourhoodModel.from_masks(worlds, N, nu, val=v)

    def found(model, world, how):
        return Verdict("countermodel", {"model": model, "world": world, "candidates": used, "phase": how})

    for k in range(1, max_worlds + 1):
        if frame_class == "graded":
            options, slots = list(range(1 << k)), k
        else:
            if k > 3:
                break
            options, slots = list(_all_upsets(k)), k * N
        space = len(options) ** slots * (1 << (k * len(names)))
        if used + space > budget // 2:
            break
        for choice in itertools.product(options, repeat=slots):
            for val in semantics.valuations(names, k):
                used += 1
                model = build(k, choice, val)
                w = _falsified(model, f)
                if w is not None:
                    return found(model, w, "exhaustive")
    while used < budget:
        used += 1
        k = rng.randint(1, max_worlds)
        size = 1 << k
        if frame_class == "graded":
            choice = [rng.randrange(size) for _ in range(k)]
        else:
            choice = [upset([rng.randrange(size) for _ in range(rng.randint(1, 3))], k)
                      for _ in range(k * N)]
        val = {p: rng.randrange(size) for p in names}
        model = build(k, choice, val)
        w = _falsified(model, f)
        if w is not None:
            return found(model, w, "random")
    return Verdict("not_found", {"candidates": used})


def sorted_worlds_list(worlds: list[str], mask: int) -> list[str]:
    return [w for b, w in enumerate(worlds) if mask >> b & 1]


# -- fixtures ---------------------------------------------------------------

def fixture_section6() -> tuple[CoreModel, NeighbourhoodModel, WorldMap]:
    """A graded frame on {a, b}, a non-graded one-world frame, and the map onto it.

    The map is a surjective bounded morphism, so gradedness is not preserved
    under bounded morphic images.
    """
    F = CoreModel(["a", "b"], {"a": ["a", "b"], "b": ["a", "b"]})
    F2 = NeighbourhoodModel(["c"], 2, {("c", 1): [["c"]], ("c", 2): [["c"]]}, nu0={"c": [[], ["c"]]})
    return F, F2, WorldMap({"a": "c", "b": "c"})
