"""Symbolic evaluation of the magma law on generic elementary tuples.

A :class:`SymForm` is a tuple of words, one per level 1..r.  ``sym_mu``
mirrors the numeric rank recursion step for step; it never re-associates
products, so in ``literal`` mode each generated word evaluates, under any
normalized system, to exactly the corresponding numeric component.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional

from ..errors import InternalVacuousnessViolation, LevelError
from .terms import LITERAL, Rules, Word, letter, one


@dataclass(frozen=True)
class SymForm:
    words: tuple[Word, ...]

    @property
    def r(self) -> int:
        return len(self.words)

    def __getitem__(self, level: int) -> Word:
        return self.words[level - 1]

    def rank(self) -> int:
        for l in range(self.r, 0, -1):
            if self[l]:
                return l
        return 0

    def truncate(self, k: int) -> "SymForm":
        return SymForm(self.words[:k] + tuple(one(l) for l in range(k + 1, self.r + 1)))

    def replace(self, level: int, w: Word) -> "SymForm":
        ws = list(self.words)
        ws[level - 1] = w
        return SymForm(tuple(ws))


def unit_form(r: int) -> SymForm:
    return SymForm(tuple(one(l) for l in range(1, r + 1)))


def elementary_form(r: int, w: Word) -> SymForm:
    return unit_form(r).replace(w.level, w)


def sym_phi_elementary(x: Word, y: Word, r: int, rules: Rules = LITERAL) -> SymForm:
    """phi_x(y) for single-level words x (level k) and y (level j < k)."""
    if x and y and x.level <= y.level:
        raise LevelError(f"actor level {x.level} must exceed target level {y.level}")
    f = unit_form(r)
    for m in range(1, y.level):
        f = f.replace(m, rules.bracket(x, y, m))
    return f.replace(y.level, rules.action(x, y))


def sym_phi(x: Word, v: SymForm, rules: Rules = LITERAL) -> SymForm:
    """Extended operator: left fold under mu_{k-1} over every entry of v."""
    k = x.level
    if v.rank() >= k:
        raise LevelError(f"target rank {v.rank()} must be below actor level {k}")
    if k < 2:
        raise LevelError("an actor must have level at least 2")
    parts = [sym_phi_elementary(x, v[q], v.r, rules) for q in range(1, k)]
    return reduce(lambda p, q: sym_mu_level(p, q, k - 1, rules), parts)


def sym_mu_level(u: SymForm, v: SymForm, k: int, rules: Rules = LITERAL) -> SymForm:
    if k == 1:
        return u.truncate(0).replace(1, u[1] * v[1])
    a, b = u[k], v[k]
    w = sym_phi(a, v.truncate(k - 1), rules) if a else v.truncate(k - 1)
    out = sym_mu_level(u.truncate(k - 1), w, k - 1, rules)
    return out.replace(k, a * b)


def sym_mu(u: SymForm, v: SymForm, rules: Rules = LITERAL) -> SymForm:
    return sym_mu_level(u, v, u.r, rules)


# conditions ---------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionForm:
    k: int
    j: int
    i: int
    l: int
    lhs: Word
    rhs: Word

    @property
    def vacuous(self) -> bool:
        return self.lhs == self.rhs

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return (self.k, self.j, self.i, self.l)

    def label(self) -> str:
        return f"A[{self.k},{self.j},{self.i};{self.l}]"


def rules_for(k: int, mode: str) -> Rules:
    if mode == "literal":
        return LITERAL
    if mode == "reduced":
        return Rules(top=k)
    raise ValueError(f"unknown mode {mode!r}")


def evaluate_sides(k: int, j: int, i: int, mode: str = "reduced",
                   r: Optional[int] = None) -> tuple[SymForm, SymForm]:
    """Symbolic a.(b.c) and (a.b).c with a, b, c at levels k, j, i."""
    if not k >= j >= i >= 1:
        raise LevelError(f"need k >= j >= i >= 1, got {k},{j},{i}")
    r = k if r is None else r
    rules = rules_for(k, mode)
    a = elementary_form(r, letter("a", k))
    b = elementary_form(r, letter("b", j))
    c = elementary_form(r, letter("c", i))
    lhs = sym_mu(a, sym_mu(b, c, rules), rules)
    rhs = sym_mu(sym_mu(a, b, rules), c, rules)
    return lhs, rhs


def generate_conditions(k: int, j: int, i: int, mode: str = "reduced") -> list[ConditionForm]:
    """The equations A[k,j,i;l] for l = 1..i.

    Components above i must agree syntactically; anything else is an
    engine defect and raises.
    """
    lhs, rhs = evaluate_sides(k, j, i, mode)
    for l in range(i + 1, lhs.r + 1):
        if lhs[l] != rhs[l]:
            raise InternalVacuousnessViolation(
                f"A[{k},{j},{i};{l}] sides differ above level {i}", k=k, j=j, i=i, l=l)
    return [ConditionForm(k, j, i, l, lhs[l], rhs[l]) for l in range(1, i + 1)]


def condition(k: int, j: int, i: int, l: int, mode: str = "reduced") -> ConditionForm:
    if not 1 <= l <= i:
        raise LevelError(f"component {l} outside 1..{i}")
    return generate_conditions(k, j, i, mode)[l - 1]


def all_index_triples(max_k: int) -> list[tuple[int, int, int]]:
    return [(k, j, i) for k in range(2, max_k + 1) for j in range(1, k + 1) for i in range(1, j + 1)]
