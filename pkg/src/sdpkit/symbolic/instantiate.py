"""Numeric evaluation of symbolic words on a concrete total system."""

from __future__ import annotations

from typing import Mapping

from ..errors import LevelMismatch
from ..system import TotalSystem
from .engine import ConditionForm
from .terms import Base, Bracket, Word


def evaluate(w: Word, S: TotalSystem, assignment: Mapping[str, int]) -> int:
    """Value of the word in H_{level}."""
    if not 1 <= w.level <= S.r:
        raise LevelMismatch(f"level {w.level} outside 1..{S.r}")
    H = S.group(w.level)
    acc = H.identity
    for at in w.atoms:
        acc = H.mul[acc][_atom(at, S, assignment)]
    return acc


def _atom(at, S: TotalSystem, assignment) -> int:
    if isinstance(at, Base):
        try:
            x = assignment[at.symbol]
        except KeyError:
            raise LevelMismatch(f"no value assigned to {at.symbol}") from None
        if not 0 <= x < len(S.group(at.level)):
            raise LevelMismatch(f"{at.symbol}={x} is not an element of H_{at.level}")
        return x
    if isinstance(at, Bracket):
        p, q = at.left.level, at.right.level
        x, y = evaluate(at.left, S, assignment), evaluate(at.right, S, assignment)
        if at.level < q:
            return S.bracket[(p, q, at.level)][x][y]
        # [x, y]^q is the action value times y^-1
        Hq = S.group(q)
        return Hq.mul[S.phi[(p, q)][x][y]][Hq.inv[y]]
    v = evaluate(at.target, S, assignment)
    t = at.target.level
    for actor in reversed(at.actors):
        v = S.phi[(actor.level, t)][evaluate(actor, S, assignment)][v]
    return v


def instantiate(c: ConditionForm, S: TotalSystem, assignment: Mapping[str, int]) -> tuple[int, int]:
    """Both sides of the condition evaluated in H_l."""
    if c.k > S.r:
        raise LevelMismatch(f"{c.label()} needs at least {c.k} factors, system has {S.r}")
    return evaluate(c.lhs, S, assignment), evaluate(c.rhs, S, assignment)


def assignments(S: TotalSystem, k: int, j: int, i: int):
    """Every (a, b, c) in H_k x H_j x H_i, in lexicographic order."""
    for a in S.group(k).elements():
        for b in S.group(j).elements():
            for c in S.group(i).elements():
                yield {"a": a, "b": b, "c": c}


def holds_everywhere(c: ConditionForm, S: TotalSystem) -> bool:
    return all(x == y for x, y in (instantiate(c, S, asg) for asg in assignments(S, c.k, c.j, c.i)))


def first_counterexample(c: ConditionForm, S: TotalSystem):
    for asg in assignments(S, c.k, c.j, c.i):
        x, y = instantiate(c, S, asg)
        if x != y:
            return asg, (x, y)
    return None
