"""Graded modal logic under Kripke, graded and neighbourhood semantics."""
from .formula import (AXIOMS, BOT, SEPARATION, TOP, And, Atom, Box, Dia, DiaExact, Formula, Iff, Imp,
                      Neg, Or, ParseError, Schema, SchemaError, complexity, instantiate, max_grade, parse,
                      print_formula, random_formula)
from .graded import OMEGA, GradedModel, eval_graded, graded_to_kripke, sigma_mass
from .kripke import KripkeModel, eval_kripke, frame_validity_kripke, kripke_to_graded
from .neighbourhood import (CoreModel, NeighbourhoodModel, WorldMap, bullet, check_stars, eval_nbhd,
                            is_bounded_morphism, is_graded_frame, unbullet)
from .semantics import BudgetExceeded, Verdict

__version__ = "0.1.0"
