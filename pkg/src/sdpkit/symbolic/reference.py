"""Bundled reference forms of the representative conditions for k <= 5.

Generated forms are compared with the reference structurally, with the
two sides of an equation taken as an unordered pair.  Rows that differ
are adjudicated numerically: on systems whose R_{k-1} is associative,
each side of each form is evaluated and compared with the matching
component of the actual products a.(b.c) and (a.b).c.
"""

from __future__ import annotations

import difflib
import random
from dataclasses import dataclass, field
from typing import Optional

from ..catalog import DECOMPOSITIONS, named_system
from ..groups import cyclic_group, symmetric_group
from ..magma import elementary, mu
from ..system import TotalSystem, extend_system, truncate_system
from .engine import ConditionForm, condition
from .instantiate import assignments, evaluate
from .notation import parse_condition, render, render_atom, render_word
from .similarity import canonical_indices

# (k, j, i, l) -> text, sides in the published orientation
REFERENCE_FORMS: dict[tuple[int, int, int, int], str] = {
    (2, 1, 1, 1): "^{a}(bc) = ^{a}b·^{a}c",
    (2, 2, 1, 1): "^{ab}c = ^{a·b}c",
    (3, 2, 1, 1): "[a,b]^1·^{^{a}b·a}c = ^{a·b}c·[a,b]^1",
    (3, 2, 2, 1): "[a,bc]^1 = [a,b]^1·^{^{a}b}[a,c]^1",
    (3, 3, 2, 1): "[ab,c]^1 = ^{a}[b,c]^1·[a,^{b}c]^1",
    (4, 3, 1, 1): "[a,b]^1·^{[a,b]^2·^{a}b·a}c = ^{a·b}c·[a,b]^1",
    (4, 3, 2, 1): "[a,b]^1·^{[a,b]^2·^{a}b}[a,c]^1·^{[a,b]^2}[^{a}b,^{a}c]^1"
                  " = ^{a}[b,c]^1·[a,^{b}c]^1·^{^{a·b}c}[a,b]^1",
    (4, 3, 3, 1): "[a,bc]^1 = [a,b]^1·^{[a,b]^2·^{a}b}[a,c]^1·^{[a,b]^2}[^{a}b,[a,c]^2]^1",
    (4, 4, 3, 1): "[ab,c]^1 = ^{a}[b,c]^1·[a,[b,c]^2]^1·^{^{a}[b,c]^2}[a,^{b}c]^1",
    (5, 4, 1, 1): "[a,b]^1·^{[a,b]^2·[a,b]^3·^{a}b·a}c = ^{a·b}c·[a,b]^1",
    (5, 4, 2, 1): "[a,b]^1·^{[a,b]^2·[a,b]^3·^{a}b}[a,c]^1·^{[a,b]^3}[^{a}b,^{a}c]^1"
                  "·[[a,b]^3,^{^{a}b·a}c]^1"
                  " = ^{a}[b,c]^1·[a,^{b}c]^1·^{^{a·b}c}[a,b]^1",
    (5, 4, 3, 1): "[a,b]^1·^{[a,b]^2·[a,b]^3·^{a}b}[a,c]^1·^{[a,b]^2·[a,b]^3}[^{a}b,[a,c]^2]^1"
                  "·^{[a,b]^3}[[a,b]^3,^{^{a}b}[a,c]^2]^1"
                  "·^{[a,b]^2·^{[a,b]^3·^{a}b}[a,c]^2·[a,b]^3}[^{a}b,^{a}c]^1"
                  "·^{[a,b]^2·^{[a,b]^3·^{a}b}[a,c]^2}[[a,b]^3,[^{a}b,^{a}c]^2]^1"
                  " = ^{a}[b,c]^1·[a,[b,c]^2]^1·^{^{a}[b,c]^2}[a,^{b}c]^1"
                  "·^{^{a}[b,c]^2·[a,^{b}c]^2·a·^{b}c}[a,b]^1"
                  "·^{^{a}[b,c]^2·[a,^{b}c]^2}[^{a·b}c,[a,b]^2]^1",
    (5, 4, 4, 1): "[a,bc]^1 = [a,b]^1·^{[a,b]^2·[a,b]^3·^{a}b}[a,c]^1·[^{a}b,[a,c]^2]^1"
                  "·^{[a,b]^2}[[a,b]^3,^{^{a}b}[a,c]^2]^1"
                  "·^{[a,b]^2·^{[a,b]^3·^{a}b}[a,c]^2·[a,b]^3}[^{a}b,[a,c]^3]^1"
                  "·^{[a,b]^2·^{[a,b]^3·^{a}b}[a,c]^2}[[a,b]^3,[^{a}b,[a,c]^3]^2]^1",
    (5, 5, 4, 1): "[ab,c]^1 = ^{a}[b,c]^1·[a,[b,c]^2]^1·^{^{a}[b,c]^2}[a,[b,c]^3]^1"
                  "·^{^{a}[b,c]^2·[a,[b,c]^3]^2·^{a}[b,c]^3}[a,^{b}c]^1"
                  "·^{^{a}[b,c]^2·[a,[b,c]^3]^2}[^{a}[b,c]^3,[a,^{b}c]^2]^1",
}

MAX_REFERENCE_K = 5


def reference_form(k: int, j: int, i: int, l: int) -> ConditionForm:
    return parse_condition(REFERENCE_FORMS[(k, j, i, l)], k, j, i, l)


def orientation(generated: ConditionForm, expected: ConditionForm) -> Optional[str]:
    """"same" or "swapped" when the two equations agree as unordered pairs."""
    if (generated.lhs, generated.rhs) == (expected.lhs, expected.rhs):
        return "same"
    if (generated.lhs, generated.rhs) == (expected.rhs, expected.lhs):
        return "swapped"
    return None


def word_diff(expected, generated) -> list[dict]:
    """Atom-level edit script turning the expected word into the generated one."""
    ea = [render_atom(a) for a in expected.atoms]
    ga = [render_atom(a) for a in generated.atoms]
    out = []
    for op, i1, i2, j1, j2 in difflib.SequenceMatcher(a=ea, b=ga, autojunk=False).get_opcodes():
        if op != "equal":
            out.append({"op": op, "expected": ea[i1:i2], "generated": ga[j1:j2]})
    return out


def _pairing(generated: ConditionForm, expected: ConditionForm) -> list[tuple[str, object, object]]:
    """Pair each expected side with the generated side it resembles most."""
    def score(x, y):
        return difflib.SequenceMatcher(a=[render_atom(a) for a in x.atoms],
                                       b=[render_atom(a) for a in y.atoms], autojunk=False).ratio()
    straight = score(expected.lhs, generated.lhs) + score(expected.rhs, generated.rhs)
    crossed = score(expected.lhs, generated.rhs) + score(expected.rhs, generated.lhs)
    if crossed > straight:
        return [("lhs", expected.lhs, generated.rhs), ("rhs", expected.rhs, generated.lhs)]
    return [("lhs", expected.lhs, generated.lhs), ("rhs", expected.rhs, generated.rhs)]


# numeric adjudication ----------------------------------------------------------

def adjudication_systems(k: int, seed: int = 0, per_base: int = 2) -> list[TotalSystem]:
    """k-systems whose law on R_{k-1} is associative.

    Lower levels come from the bundled concrete decompositions (truncated
    to k-1 levels); the top level is random over Z2, Z3 and S3.
    Decompositions with at least k levels also contribute their fully
    associative truncation.
    """
    rng = random.Random(seed)
    tops = [cyclic_group(2), cyclic_group(3), symmetric_group(3)]
    out = []
    for name in sorted(DECOMPOSITIONS):
        S = named_system(name)
        if S.r >= k:
            out.append(truncate_system(S, k))
        if S.r >= k - 1 and k >= 2:
            base = truncate_system(S, k - 1)
            for top in tops:
                for _ in range(per_base):
                    out.append(extend_system(base, top, rng))
    return out


@dataclass
class SideVerdict:
    text: str
    against: str                      # "a.(b.c)" or "(a.b).c"
    failures: int
    witness: Optional[dict] = None

    @property
    def correct(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {"text": self.text, "against": self.against, "failures": self.failures,
                "correct": self.correct, "witness": self.witness}


@dataclass
class Adjudication:
    systems: int
    assignments: int
    generated: list[SideVerdict]
    expected: list[SideVerdict]

    @property
    def generated_confirmed(self) -> bool:
        return all(v.correct for v in self.generated)

    @property
    def expected_confirmed(self) -> bool:
        return all(v.correct for v in self.expected)

    def to_dict(self) -> dict:
        return {"systems": self.systems, "assignments": self.assignments,
                "generated_confirmed": self.generated_confirmed,
                "expected_confirmed": self.expected_confirmed,
                "generated": [v.to_dict() for v in self.generated],
                "expected": [v.to_dict() for v in self.expected]}


def _true_components(S: TotalSystem, k, j, i, l, asg) -> tuple[int, int]:
    a, b, c = (elementary(S, lvl, asg[s]) for lvl, s in ((k, "a"), (j, "b"), (i, "c")))
    return mu(S, a, mu(S, b, c))[l - 1], mu(S, mu(S, a, b), c)[l - 1]


def adjudicate(generated: ConditionForm, expected: Optional[ConditionForm] = None,
               systems: Optional[list[TotalSystem]] = None, seed: int = 0) -> Adjudication:
    k, j, i, l = generated.indices
    systems = adjudication_systems(k, seed) if systems is None else systems
    words = [("generated", "lhs", generated.lhs), ("generated", "rhs", generated.rhs)]
    if expected is not None:
        words += [("expected", "lhs", expected.lhs), ("expected", "rhs", expected.rhs)]
    # failures of each word against each true side
    fails = {(who, side, t): 0 for who, side, _ in words for t in (0, 1)}
    witness: dict = {}
    total = 0
    for sn, S in enumerate(systems):
        for asg in assignments(S, k, j, i):
            total += 1
            truth = _true_components(S, k, j, i, l, asg)
            for who, side, w in words:
                v = evaluate(w, S, asg)
                for t in (0, 1):
                    if v != truth[t]:
                        fails[(who, side, t)] += 1
                        witness.setdefault((who, side, t), {"system": sn, "assignment": dict(asg),
                                                            "value": v, "expected_value": truth[t]})
    names = ("a.(b.c)", "(a.b).c")

    def verdicts(who: str, straight: bool) -> list[SideVerdict]:
        out = []
        for side, t in (("lhs", 0 if straight else 1), ("rhs", 1 if straight else 0)):
            w = dict(((x, s), ww) for x, s, ww in words)[(who, side)]
            out.append(SideVerdict(render_word(w), names[t], fails[(who, side, t)],
                                   witness.get((who, side, t))))
        return out

    gen = verdicts("generated", True)
    exp = []
    if expected is not None:
        straight = fails[("expected", "lhs", 0)] + fails[("expected", "rhs", 1)]
        crossed = fails[("expected", "lhs", 1)] + fails[("expected", "rhs", 0)]
        exp = verdicts("expected", straight <= crossed)
    return Adjudication(len(systems), total, gen, exp)


# row comparison ----------------------------------------------------------------

@dataclass
class RowCheck:
    indices: tuple[int, int, int, int]
    generated: ConditionForm
    expected: ConditionForm
    orientation: Optional[str]
    diff: list = field(default_factory=list)
    adjudication: Optional[Adjudication] = None

    @property
    def exact(self) -> bool:
        return self.orientation is not None

    @property
    def status(self) -> str:
        if self.exact:
            return "exact"
        if self.adjudication is None:
            return "mismatch"
        if not self.adjudication.generated_confirmed:
            return "generated-refuted"
        if self.adjudication.expected_confirmed:
            return "equivalent"
        return "reference-refuted"

    def label(self) -> str:
        return self.generated.label()

    def to_dict(self) -> dict:
        d = {"condition": self.label(), "status": self.status, "orientation": self.orientation,
             "generated": render(self.generated, prose=False),
             "reference": render(self.expected, prose=False)}
        if self.diff:
            d["diff"] = self.diff
        if self.adjudication is not None:
            d["adjudication"] = self.adjudication.to_dict()
        return d


def compare_row(k: int, j: int, i: int, l: int, mode: str = "reduced",
                adjudicate_mismatch: bool = True, seed: int = 0) -> RowCheck:
    gen = condition(k, j, i, l, mode)
    exp = reference_form(k, j, i, l)
    orient = orientation(gen, exp)
    if orient is not None:
        return RowCheck((k, j, i, l), gen, exp, orient)
    diff = [{"side": side, "edits": word_diff(e, g)} for side, e, g in _pairing(gen, exp)]
    adj = adjudicate(gen, exp, seed=seed) if adjudicate_mismatch else None
    return RowCheck((k, j, i, l), gen, exp, None, diff, adj)


def verify_reference(max_k: int = MAX_REFERENCE_K, mode: str = "reduced", seed: int = 0) -> list[RowCheck]:
    return [compare_row(*idx, mode=mode, seed=seed)
            for idx in canonical_indices(min(max_k, MAX_REFERENCE_K))]


def reference_ok(rows: list[RowCheck], exact_up_to: int = 4) -> bool:
    """Rows up to ``exact_up_to`` match exactly; later rows match or are numerically settled in favour of the generated form."""
    for row in rows:
        if row.indices[0] <= exact_up_to:
            if not row.exact:
                return False
        elif row.status not in ("exact", "equivalent", "reference-refuted"):
            return False
    return True
