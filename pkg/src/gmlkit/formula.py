"""Formulas of graded modal logic: AST, s-expression syntax, schemas.

Only ``Atom``, ``Top``, ``Bot``, ``Neg``, ``Or`` and ``Dia`` are stored.
``And``, ``Imp``, ``Iff``, ``Box`` and ``DiaExact`` are smart constructors
that build the desugared tree directly, so two formulas that mean the same
derived form are always structurally equal.

Schemas reuse the same node classes plus two extras: ``Meta`` for formula
metavariables (written ``?phi``) and ``GradeTerm`` for symbolic grades
(written ``?n``, ``?n+1``, ``?m+?n``).
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

MAX_GRADE_DEFAULT = 2**32 - 1


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class SchemaError(ValueError):
    pass


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Neg(Formula):
    child: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class GradeTerm:
    """Symbolic grade: sum of grade variables plus a constant offset."""

    variables: tuple[str, ...] = ()
    offset: int = 0

    def __add__(self, other: int) -> GradeTerm:
        return GradeTerm(self.variables, self.offset + other)

    def resolve(self, grades: Mapping[str, int]) -> int:
        total = self.offset
        for v in self.variables:
            if v not in grades:
                raise SchemaError(f"unbound grade variable ?{v}")
            total += grades[v]
        return total

    def __str__(self) -> str:
        parts = [f"?{v}" for v in self.variables]
        if self.offset or not parts:
            parts.append(str(self.offset))
        return "+".join(parts)


Grade = Union[int, GradeTerm]


@dataclass(frozen=True)
class Dia(Formula):
    grade: Grade
    child: Formula

    def __post_init__(self):
        if isinstance(self.grade, int) and self.grade < 0:
            raise ValueError("grades are natural numbers")


@dataclass(frozen=True)
class Meta(Formula):
    name: str


TOP = Top()
BOT = Bot()


def And(a: Formula, b: Formula) -> Formula:
    return Neg(Or(Neg(a), Neg(b)))


def Imp(a: Formula, b: Formula) -> Formula:
    return Or(Neg(a), b)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def Box(n: Grade, a: Formula) -> Formula:
    return Neg(Dia(n, Neg(a)))


def DiaExact(n: Grade, a: Formula) -> Formula:
    return And(Dia(n, a), Neg(Dia(n + 1, a)))


# -- printing ---------------------------------------------------------------

def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Meta):
        return f"?{f.name}"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Neg):
        return f"(not {print_formula(f.child)})"
    if isinstance(f, Or):
        return f"(or {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Dia):
        return f"(dia {f.grade} {print_formula(f.child)})"
    raise TypeError(f"not a formula: {f!r}")


# -- parsing ----------------------------------------------------------------

_ATOM = re.compile(r"[a-z][a-z0-9_]*\Z")
_META = re.compile(r"\?[a-z][a-z0-9_]*\Z")
_NAT = re.compile(r"[0-9]+\Z")
_GRADE_TERM = re.compile(r"(?:\?[a-z][a-z0-9_]*|[0-9]+)(?:\+(?:\?[a-z][a-z0-9_]*|[0-9]+))*\Z")

_BINARY = {"or": Or, "and": And, "imp": Imp, "iff": Iff}
_GRADED = {"dia": Dia, "box": Box, "dia!": DiaExact}
_KEYWORDS = {"top", "bot", "not", *_BINARY, *_GRADED}


def _tokenize(text: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start()) for m in re.finditer(r"[()]|[^\s()]+", text)]


class _Parser:
    def __init__(self, text: str, max_grade: int, schema: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.end = len(text)
        self.max_grade = max_grade
        self.schema = schema

    def peek(self) -> tuple[str, int]:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", self.end)
        return self.tokens[self.i]

    def take(self) -> tuple[str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect_close(self) -> None:
        tok, pos = self.take()
        if tok != ")":
            raise ParseError(f"expected ')' but found {tok!r}", pos)

    def grade(self) -> Grade:
        tok, pos = self.take()
        if _NAT.match(tok):
            n = int(tok)
            if n > self.max_grade:
                raise ParseError(f"grade {n} exceeds maximum {self.max_grade}", pos)
            return n
        if self.schema and _GRADE_TERM.match(tok):
            variables, offset = [], 0
            for part in tok.split("+"):
                if part.startswith("?"):
                    variables.append(part[1:])
                else:
                    offset += int(part)
            return GradeTerm(tuple(variables), offset)
        raise ParseError(f"expected a grade but found {tok!r}", pos)

    def formula(self) -> Formula:
        tok, pos = self.take()
        if tok == "(":
            op, op_pos = self.take()
            if op == "not":
                result = Neg(self.formula())
            elif op in _BINARY:
                left = self.formula()
                result = _BINARY[op](left, self.formula())
            elif op in _GRADED:
                n = self.grade()
                result = _GRADED[op](n, self.formula())
            else:
                raise ParseError(f"unknown operator {op!r}", op_pos)
            self.expect_close()
            return result
        if tok == ")":
            raise ParseError("unexpected ')'", pos)
        if tok == "top":
            return TOP
        if tok == "bot":
            return BOT
        if tok in _KEYWORDS:
            raise ParseError(f"keyword {tok!r} used as an atom", pos)
        if _ATOM.match(tok):
            return Atom(tok)
        if self.schema and _META.match(tok):
            return Meta(tok[1:])
        raise ParseError(f"bad token {tok!r}", pos)


def parse(text: str, *, max_grade: int = MAX_GRADE_DEFAULT, schema: bool = False) -> Formula:
    """Parse s-expression syntax into a desugared formula.

    With ``schema=True`` metavariables (``?phi``) and symbolic grades
    (``?n+1``) are accepted as well.
    """
    p = _Parser(text, max_grade, schema)
    result = p.formula()
    if p.i != len(p.tokens):
        tok, pos = p.tokens[p.i]
        raise ParseError(f"trailing input {tok!r}", pos)
    return result


# -- measures ---------------------------------------------------------------

def complexity(f: Formula) -> int:
    if isinstance(f, Neg):
        return 1 + complexity(f.child)
    if isinstance(f, Or):
        return 1 + complexity(f.left) + complexity(f.right)
    if isinstance(f, Dia):
        return 1 + complexity(f.child)
    return 0


def depth(f: Formula) -> int:
    if isinstance(f, Neg) or isinstance(f, Dia):
        return 1 + depth(f.child)
    if isinstance(f, Or):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def max_grade(f: Formula) -> int:
    if isinstance(f, Neg):
        return max_grade(f.child)
    if isinstance(f, Or):
        return max(max_grade(f.left), max_grade(f.right))
    if isinstance(f, Dia):
        if not isinstance(f.grade, int):
            raise SchemaError("max_grade of an uninstantiated schema")
        return max(f.grade, max_grade(f.child))
    return 0


def atoms(f: Formula) -> list[str]:
    """Proposition letters of ``f`` in sorted order."""
    found: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            found.add(g.name)
        elif isinstance(g, (Neg, Dia)):
            stack.append(g.child)
        elif isinstance(g, Or):
            stack.extend((g.left, g.right))
    return sorted(found)


def subformulas(f: Formula) -> list[Formula]:
    """Distinct subformulas, children before parents."""
    seen: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        if g in seen:
            return
        if isinstance(g, (Neg, Dia)):
            walk(g.child)
        elif isinstance(g, Or):
            walk(g.left)
            walk(g.right)
        seen[g] = None

    walk(f)
    return list(seen)


# -- schemas ----------------------------------------------------------------

@dataclass(frozen=True)
class Schema:
    """A formula with metavariables and grade variables.

    ``min_grades`` records side conditions such as ``n > 0`` for Ax3.
    """

    name: str
    body: Formula
    min_grades: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_text(cls, name: str, text: str, **min_grades: int) -> Schema:
        return cls(name, parse(text, schema=True), dict(min_grades))

    @property
    def metavariables(self) -> list[str]:
        names: set[str] = set()
        for g in subformulas(self.body):
            if isinstance(g, Meta):
                names.add(g.name)
        return sorted(names)

    @property
    def grade_variables(self) -> list[str]:
        names: set[str] = set()
        for g in subformulas(self.body):
            if isinstance(g, Dia) and isinstance(g.grade, GradeTerm):
                names.update(g.grade.variables)
        return sorted(names)


def instantiate(schema: Schema | Formula,
                formulas: Mapping[str, Formula] | None = None,
                grades: Mapping[str, int] | None = None) -> Formula:
    """Uniformly substitute formulas for metavariables and naturals for grade variables."""
    formulas = formulas or {}
    grades = grades or {}
    body = schema.body if isinstance(schema, Schema) else schema
    if isinstance(schema, Schema):
        for var, least in schema.min_grades.items():
            if var in grades and grades[var] < least:
                raise SchemaError(f"?{var} must be at least {least} in {schema.name}")
    cache: dict[Formula, Formula] = {}

    def sub(g: Formula) -> Formula:
        if g in cache:
            return cache[g]
        if isinstance(g, Meta):
            if g.name not in formulas:
                raise SchemaError(f"unbound metavariable ?{g.name}")
            out = formulas[g.name]
        elif isinstance(g, Neg):
            out = Neg(sub(g.child))
        elif isinstance(g, Or):
            out = Or(sub(g.left), sub(g.right))
        elif isinstance(g, Dia):
            n = g.grade.resolve(grades) if isinstance(g.grade, GradeTerm) else g.grade
            out = Dia(n, sub(g.child))
        else:
            out = g
        cache[g] = out
        return out

    return sub(body)


AXIOMS: dict[str, Schema] = {
    s.name: s for s in [
        Schema.from_text("Ax2", "(iff (dia 0 ?phi) top)"),
        Schema.from_text("Ax3", "(iff (dia ?n bot) bot)", n=1),
        Schema.from_text("Ax4", "(imp (dia ?n+1 ?phi) (dia ?n ?phi))"),
        Schema.from_text("Ax5", "(imp (box 1 (imp ?phi ?psi)) (imp (dia ?n ?phi) (dia ?n ?psi)))"),
        Schema.from_text(
            "Ax6",
            "(imp (and (not (dia 1 (and ?phi ?psi))) (and (dia! ?m ?phi) (dia! ?n ?psi)))"
            " (dia! ?m+?n (or ?phi ?psi)))"),
        Schema.from_text("Ax7", "(iff (dia 1 (or ?phi ?psi)) (or (dia 1 ?phi) (dia 1 ?psi)))"),
    ]
}

# Valid over Kripke frames, falsifiable over monotonic neighbourhood frames.
SEPARATION = Schema.from_text(
    "Sep",
    "(imp (and (dia ?n ?phi) (dia ?n (not ?phi))) (or (dia ?n ?psi) (dia ?n (not ?psi))))")


# -- random generation ------------------------------------------------------

def random_formula(seed: int | random.Random, depth: int, max_grade: int,
                   atoms: Sequence[str]) -> Formula:
    """Random core-syntax formula of AST depth at most ``depth``."""
    if depth == 0 and not atoms:
        raise ValueError("depth-0 formula requested with no atoms")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    atoms = list(atoms)

    def leaf() -> Formula:
        # atoms weighted above the constants
        choice = rng.randrange(len(atoms) * 2 + 2) if atoms else rng.randrange(2)
        if choice == 0:
            return TOP
        if choice == 1:
            return BOT
        return Atom(atoms[(choice - 2) // 2])

    def gen(d: int) -> Formula:
        if d == 0 or rng.random() < 0.25:
            return leaf()
        kind = rng.randrange(3)
        if kind == 0:
            return Neg(gen(d - 1))
        if kind == 1:
            return Or(gen(d - 1), gen(d - 1))
        return Dia(rng.randint(0, max_grade), gen(d - 1))

    return gen(depth)
