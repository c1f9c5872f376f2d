"""Symbolic atoms and words for the componentwise axiom calculus.

A :class:`Word` is a product inside one factor group H_l, stored as a
sequence of atoms of level l (the empty word is 1).  Atoms are the three
generator symbols, brackets ``[x,y]^m`` and actions ``^{x.y}z``, where
the actor list denotes composition: ``^{x.y}z = ^x(^y z)``.

All atoms are built through a :class:`Rules` object, which applies the
unit laws and the composition convention.  With ``top`` set to the
largest index k of the condition being derived, it additionally rewrites
modulo associativity on R_{k-1}: actions by elements of level < k act as
endomorphisms and compose multiplicatively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from ..errors import LevelError


@dataclass(frozen=True)
class Base:
    symbol: str
    level: int


@dataclass(frozen=True)
class Bracket:
    left: "Word"
    right: "Word"
    level: int


@dataclass(frozen=True)
class Action:
    actors: tuple["Word", ...]
    target: "Word"

    @property
    def level(self) -> int:
        return self.target.level


Atom = Union[Base, Bracket, Action]


@dataclass(frozen=True)
class Word:
    level: int
    atoms: tuple = ()

    def __bool__(self) -> bool:
        return bool(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __mul__(self, other: "Word") -> "Word":
        if other.level != self.level:
            raise LevelError(f"cannot multiply words of levels {self.level} and {other.level}")
        return Word(self.level, self.atoms + other.atoms)


def one(level: int) -> Word:
    return Word(level, ())


def letter(symbol: str, level: int) -> Word:
    return Word(level, (Base(symbol, level),))


@dataclass(frozen=True)
class Rules:
    """Canonical constructors; ``top=None`` means no reduction modulo lower levels."""

    top: Optional[int] = None

    def lowered(self, level: int) -> bool:
        return self.top is not None and level < self.top

    def bracket(self, x: Word, y: Word, level: int) -> Word:
        if not x or not y:
            return one(level)
        if not x.level > y.level >= level:
            raise LevelError(f"bracket of levels {x.level},{y.level} into level {level}")
        return Word(level, (Bracket(x, y, level),))

    def action(self, actor: Word, target: Word) -> Word:
        if not actor or not target:
            return target
        return self.compose(self.split(actor), target)

    def split(self, actor: Word) -> tuple[Word, ...]:
        # a product acting is the composite of its letters once its level is below top
        if len(actor) > 1 and self.lowered(actor.level):
            return tuple(Word(actor.level, (at,)) for at in actor.atoms)
        return (actor,)

    def compose(self, actors: Sequence[Word], target: Word) -> Word:
        actors = tuple(w for w in actors if w)
        if not actors or not target:
            return target
        for w in actors:
            if w.level <= target.level:
                raise LevelError(f"actor of level {w.level} on target of level {target.level}")
        if len(target) == 1 and isinstance(target.atoms[0], Action):
            inner = target.atoms[0]
            return self.compose(actors + inner.actors, inner.target)
        if len(target) > 1 and all(self.lowered(w.level) for w in actors):
            atoms = []
            for at in target.atoms:
                atoms.extend(self.compose(actors, Word(target.level, (at,))).atoms)
            return Word(target.level, tuple(atoms))
        return Word(target.level, (Action(actors, target),))


LITERAL = Rules(None)


# structural helpers -------------------------------------------------------------

def atom_levels(w: Word):
    """Every level occurring in the word, its nested operands included."""
    yield w.level
    for at in w.atoms:
        if isinstance(at, Base):
            yield at.level
        elif isinstance(at, Bracket):
            yield at.level
            yield from atom_levels(at.left)
            yield from atom_levels(at.right)
        else:
            for x in at.actors:
                yield from atom_levels(x)
            yield from atom_levels(at.target)


def relevel(w: Word, f) -> Word:
    """Apply a level map everywhere, keeping the structure."""
    atoms = []
    for at in w.atoms:
        if isinstance(at, Base):
            atoms.append(Base(at.symbol, f(at.level)))
        elif isinstance(at, Bracket):
            atoms.append(Bracket(relevel(at.left, f), relevel(at.right, f), f(at.level)))
        else:
            atoms.append(Action(tuple(relevel(x, f) for x in at.actors), relevel(at.target, f)))
    return Word(f(w.level), tuple(atoms))


def size(w: Word) -> int:
    n = 0
    for at in w.atoms:
        if isinstance(at, Base):
            n += 1
        elif isinstance(at, Bracket):
            n += 1 + size(at.left) + size(at.right)
        else:
            n += 1 + sum(size(x) for x in at.actors) + size(at.target)
    return n
