"""Canonical example models."""
from __future__ import annotations

from .graded import GradedModel
from .kripke import KripkeModel
from .neighbourhood import CoreModel, bullet, fixture_section6


def figure1_kripke() -> KripkeModel:
    """Root ``w`` with four successors, three of them satisfying ``p``."""
    succ = ["u1", "u2", "u3", "u4"]
    return KripkeModel(["w", *succ], [("w", u) for u in succ], {"p": ["u2", "u3", "u4"]})


def figure1_graded() -> GradedModel:
    """Root ``w`` with an edge of weight 1 to ``u`` and weight 3 to the ``p``-world ``v``."""
    return GradedModel(["w", "u", "v"], {("w", "u"): 1, ("w", "v"): 3}, {"p": ["v"]})


def figure1_nbhd() -> CoreModel:
    return bullet(figure1_kripke())


def section6():
    return fixture_section6()
