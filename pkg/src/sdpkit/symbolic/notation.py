"""Compact text notation for words and conditions, with a parser.

Grammar (whitespace ignored)::

    side    := "1" | atom (("·" | "*") atom)*
    atom    := "a" | "b" | "c" | bracket | action
    bracket := "[" jword "," jword "]^" DIGITS
    action  := "^{" jword (("·" | "*") jword)* "}" target
    target  := atom | "(" jword ")"
    jword   := atom+                      (juxtaposition is the product)

Subscripts are suppressed: the letters a, b, c carry the levels k, j, i
of the condition being written, and every compound atom takes its level
from its superscript or its target.
"""

from __future__ import annotations

import json
from typing import Optional

from ..errors import LevelError, ParseError
from .engine import ConditionForm
from .terms import LITERAL, Action, Base, Bracket, Rules, Word, one

DOT = "·"


def render_atom(at) -> str:
    if isinstance(at, Base):
        return at.symbol
    if isinstance(at, Bracket):
        return f"[{render_juxt(at.left)},{render_juxt(at.right)}]^{at.level}"
    actors = DOT.join(render_juxt(x) for x in at.actors)
    t = at.target
    target = render_atom(t.atoms[0]) if len(t) == 1 else f"({render_juxt(t)})"
    return f"^{{{actors}}}{target}"


def render_juxt(w: Word) -> str:
    return "".join(render_atom(at) for at in w.atoms) if w else "1"


def render_word(w: Word) -> str:
    return DOT.join(render_atom(at) for at in w.atoms) if w else "1"


PROSE = {
    (2, 1, 1, 1): "Image(φ_2^1) ⊆ End(H_1)",
    (2, 2, 1, 1): "φ_2^1 is a homomorphism",
}


def render(c: ConditionForm, prose: bool = True) -> str:
    """Text of a condition; prose mode shortens vacuous and k=2 rows."""
    if prose and c.vacuous:
        return "1 = 1"
    if prose and c.indices in PROSE:
        return PROSE[c.indices]
    return f"{render_word(c.lhs)} = {render_word(c.rhs)}"


# parsing ----------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, levels: dict, rules: Rules):
        self.s = "".join(text.split()).replace("*", DOT)
        self.pos = 0
        self.levels = levels
        self.rules = rules

    def error(self, msg: str):
        raise ParseError(f"{msg} at position {self.pos} in {self.s!r}", position=self.pos)

    def peek(self) -> str:
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def expect(self, tok: str) -> None:
        if not self.s.startswith(tok, self.pos):
            self.error(f"expected {tok!r}")
        self.pos += len(tok)

    def at_atom_start(self) -> bool:
        ch = self.peek()
        return ch in ("[", "^") or ch in self.levels

    def product(self, atoms) -> Word:
        if not atoms:
            self.error("empty product")
        levels = {at.level for at in atoms}
        if len(levels) != 1:
            raise LevelError(f"mixed levels {sorted(levels)} in one product near position {self.pos}")
        return Word(levels.pop(), tuple(atoms))

    def atom_word(self) -> Word:
        ch = self.peek()
        if ch in self.levels:
            self.pos += 1
            lvl = self.levels[ch]
            return Word(lvl, (Base(ch, lvl),))
        if ch == "[":
            self.pos += 1
            x = self.jword()
            self.expect(",")
            y = self.jword()
            self.expect("]^")
            start = self.pos
            while self.peek().isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("missing bracket level")
            return self.rules.bracket(x, y, int(self.s[start:self.pos]))
        if ch == "^":
            self.expect("^{")
            actors = [self.jword()]
            while self.peek() == DOT:
                self.pos += 1
                actors.append(self.jword())
            self.expect("}")
            if self.peek() == "(":
                self.pos += 1
                target = self.jword()
                self.expect(")")
            else:
                target = self.atom_word()
            return self.rules.compose(actors, target)
        self.error("expected an atom")

    def jword(self) -> Word:
        atoms = []
        while self.at_atom_start():
            atoms.extend(self.atom_word().atoms)
        return self.product(atoms)

    def side(self, level: Optional[int]) -> Word:
        if self.peek() == "1" and self.pos + 1 == len(self.s):
            self.pos += 1
            if level is None:
                self.error("cannot infer the level of 1")
            return one(level)
        atoms = list(self.atom_word().atoms)
        while self.peek() == DOT:
            self.pos += 1
            atoms.extend(self.atom_word().atoms)
        w = self.product(atoms)
        if level is not None and w.level != level:
            raise LevelError(f"side has level {w.level}, expected {level}")
        return w

    def done(self) -> None:
        if self.pos != len(self.s):
            self.error("trailing input")


def letter_levels(k: int, j: int, i: int) -> dict:
    return {"a": k, "b": j, "c": i}


def parse_word(text: str, k: int, j: int, i: int, level: Optional[int] = None,
               rules: Rules = LITERAL) -> Word:
    p = _Parser(text, letter_levels(k, j, i), rules)
    w = p.side(level)
    p.done()
    return w


def parse_condition(text: str, k: int, j: int, i: int, l: int, rules: Rules = LITERAL) -> ConditionForm:
    if text.count("=") != 1:
        raise ParseError(f"expected exactly one '=' in {text!r}")
    left, right = text.split("=")
    return ConditionForm(k, j, i, l, parse_word(left, k, j, i, l, rules), parse_word(right, k, j, i, l, rules))


# structured form ------------------------------------------------------------------

def word_to_json(w: Word) -> dict:
    return {"level": w.level, "atoms": [atom_to_json(at) for at in w.atoms]}


def atom_to_json(at) -> dict:
    if isinstance(at, Base):
        return {"base": at.symbol, "level": at.level}
    if isinstance(at, Bracket):
        return {"bracket": [word_to_json(at.left), word_to_json(at.right)], "level": at.level}
    return {"action": [word_to_json(x) for x in at.actors], "target": word_to_json(at.target)}


def word_from_json(d: dict) -> Word:
    return Word(int(d["level"]), tuple(atom_from_json(a) for a in d["atoms"]))


def atom_from_json(d: dict):
    if "base" in d:
        return Base(d["base"], int(d["level"]))
    if "bracket" in d:
        left, right = d["bracket"]
        return Bracket(word_from_json(left), word_from_json(right), int(d["level"]))
    if "action" in d:
        return Action(tuple(word_from_json(x) for x in d["action"]), word_from_json(d["target"]))
    raise ParseError(f"unknown atom record {json.dumps(d)}")


def condition_to_json(c: ConditionForm) -> dict:
    return {"label": c.label(), "indices": list(c.indices), "vacuous": c.vacuous,
            "text": render(c, prose=False), "lhs": word_to_json(c.lhs), "rhs": word_to_json(c.rhs)}


def condition_from_json(d: dict) -> ConditionForm:
    k, j, i, l = (int(x) for x in d["indices"])
    return ConditionForm(k, j, i, l, word_from_json(d["lhs"]), word_from_json(d["rhs"]))
