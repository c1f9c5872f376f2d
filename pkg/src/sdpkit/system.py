"""r-total systems: the action and bracket tables that glue factor groups.

Factors are numbered 1..r.  ``phi[(k, j)][x][y]`` is the action of
``x`` in H_k on ``y`` in H_j (k > j), stored already evaluated, and
``bracket[(k, j, i)][x][y]`` is the H_i-valued bracket of ``x`` in H_k
with ``y`` in H_j (k > j > i).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import IndexOutOfRange, MalformedSystem, RankTooSmall
from .groups import FiniteGroup, group_from_dict, load_group

Table = tuple[tuple[int, ...], ...]


def phi_keys(r: int) -> list[tuple[int, int]]:
    return [(k, j) for k in range(2, r + 1) for j in range(1, k)]


def bracket_keys(r: int) -> list[tuple[int, int, int]]:
    return [(k, j, i) for k in range(3, r + 1) for j in range(2, k) for i in range(1, j)]


def _freeze(table) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True, eq=False)
class TotalSystem:
    factors: tuple[FiniteGroup, ...]
    phi: dict = field(repr=False)
    bracket: dict = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        r = len(self.factors)
        if r < 1:
            raise MalformedSystem("a total system needs at least one factor")
        phi = {tuple(key): _freeze(t) for key, t in self.phi.items()}
        bracket = {tuple(key): _freeze(t) for key, t in self.bracket.items()}
        if set(phi) != set(phi_keys(r)):
            raise MalformedSystem(f"phi keys {sorted(phi)} != {phi_keys(r)}")
        if set(bracket) != set(bracket_keys(r)):
            raise MalformedSystem(f"bracket keys {sorted(bracket)} != {bracket_keys(r)}")
        for (k, j), t in phi.items():
            self._check_shape(t, k, j, j, f"phi {k},{j}")
        for (k, j, i), t in bracket.items():
            self._check_shape(t, k, j, i, f"bracket {k},{j},{i}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "bracket", bracket)

    def _check_shape(self, t: Table, k: int, j: int, target: int, what: str) -> None:
        nk, nj, nt = (len(self.factors[x - 1]) for x in (k, j, target))
        if len(t) != nk or any(len(row) != nj for row in t):
            raise MalformedSystem(f"{what}: expected a {nk}x{nj} table")
        if any(not 0 <= v < nt for row in t for v in row):
            raise MalformedSystem(f"{what}: values must lie in H_{target} (order {nt})")

    @property
    def r(self) -> int:
        return len(self.factors)

    def group(self, i: int) -> FiniteGroup:
        return self.factors[i - 1]

    def orders(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.factors)

    def size(self) -> int:
        n = 1
        for g in self.factors:
            n *= len(g)
        return n

    def unit(self) -> tuple[int, ...]:
        return tuple(g.identity for g in self.factors)

    def act(self, k: int, j: int, x: int, y: int) -> int:
        return self.phi[(k, j)][x][y]

    def br(self, k: int, j: int, i: int, x: int, y: int) -> int:
        return self.bracket[(k, j, i)][x][y]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "groups": [g.to_dict() for g in self.factors],
            "phi": {f"{k},{j}": [list(row) for row in t] for (k, j), t in sorted(self.phi.items())},
            "bracket": {f"{k},{j},{i}": [list(row) for row in t]
                        for (k, j, i), t in sorted(self.bracket.items())},
        }


# normalization ----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    condition: str  # "i", "ii", "iii" or "iv"
    indices: tuple[int, ...]
    witness: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"condition": self.condition, "indices": list(self.indices), "witness": list(self.witness)}


@dataclass(frozen=True)
class NormalizationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def normalized(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.normalized

    def to_dict(self) -> dict:
        return {"normalized": self.normalized, "violations": [v.to_dict() for v in self.violations]}


def check_normalized(S: TotalSystem) -> NormalizationReport:
    """Report every violation of the four unit conditions.

    (i)   the identity of H_k acts as the identity map on H_j;
    (ii)  every action fixes the identity of H_j;
    (iii) [1, y] = 1;   (iv) [x, 1] = 1.
    Witnesses are the offending argument pairs.
    """
    out = []
    for (k, j), t in sorted(S.phi.items()):
        Hk, Hj = S.group(k), S.group(j)
        for y in Hj.elements():
            if t[Hk.identity][y] != y:
                out.append(Violation("i", (k, j), (Hk.identity, y)))
        for x in Hk.elements():
            if t[x][Hj.identity] != Hj.identity:
                out.append(Violation("ii", (k, j), (x, Hj.identity)))
    for (k, j, i), t in sorted(S.bracket.items()):
        Hk, Hj, Hi = S.group(k), S.group(j), S.group(i)
        for y in Hj.elements():
            if t[Hk.identity][y] != Hi.identity:
                out.append(Violation("iii", (k, j, i), (Hk.identity, y)))
        for x in Hk.elements():
            if t[x][Hj.identity] != Hi.identity:
                out.append(Violation("iv", (k, j, i), (x, Hj.identity)))
    return NormalizationReport(tuple(out))


# constructions ----------------------------------------------------------------

def trivial_system(groups: Sequence[FiniteGroup]) -> TotalSystem:
    """All actions identity maps, all brackets constantly 1: the direct product."""
    groups = tuple(groups)
    r = len(groups)
    phi = {(k, j): [[y for y in groups[j - 1].elements()] for _ in groups[k - 1].elements()]
           for k, j in phi_keys(r)}
    bracket = {(k, j, i): [[groups[i - 1].identity] * len(groups[j - 1]) for _ in groups[k - 1].elements()]
               for k, j, i in bracket_keys(r)}
    return TotalSystem(groups, phi, bracket)


def restrict_system(S: TotalSystem, j: int, k: int) -> TotalSystem:
    """The (j+1)-system on H_1, ..., H_j, H_k; H_k becomes factor j+1."""
    if not 1 <= j < k <= S.r:
        raise IndexOutOfRange(f"need 1 <= j < k <= {S.r}, got j={j}, k={k}")
    keep = list(range(1, j + 1)) + [k]
    old = {new: old for new, old in enumerate(keep, start=1)}
    r = len(keep)
    phi = {(a, b): S.phi[(old[a], old[b])] for a, b in phi_keys(r)}
    bracket = {(a, b, c): S.bracket[(old[a], old[b], old[c])] for a, b, c in bracket_keys(r)}
    return TotalSystem([S.group(x) for x in keep], phi, bracket)


def quotient_system(S: TotalSystem) -> TotalSystem:
    """Forget H_1: the (r-1)-system on H_2, ..., H_r."""
    if S.r < 2:
        raise RankTooSmall("quotient needs r >= 2")
    r = S.r - 1
    phi = {(k, j): S.phi[(k + 1, j + 1)] for k, j in phi_keys(r)}
    bracket = {(k, j, i): S.bracket[(k + 1, j + 1, i + 1)] for k, j, i in bracket_keys(r)}
    return TotalSystem(S.factors[1:], phi, bracket)


def random_system(groups: Sequence[FiniteGroup], rng: random.Random,
                  trivial_bias: float = 0.0) -> TotalSystem:
    """A uniformly random normalized system on the given factors.

    Only the normalization entries are pinned; every other table entry is
    uniform.  With probability ``trivial_bias`` a whole table is replaced by
    its trivial version (identity action or constant bracket), which makes
    associative systems common enough to exercise both verdicts.
    """
    groups = tuple(groups)
    r = len(groups)
    phi = {}
    for k, j in phi_keys(r):
        Hk, Hj = groups[k - 1], groups[j - 1]
        trivial = rng.random() < trivial_bias
        t = []
        for x in Hk.elements():
            row = []
            for y in Hj.elements():
                if trivial or x == Hk.identity:
                    row.append(y)
                elif y == Hj.identity:
                    row.append(Hj.identity)
                else:
                    row.append(rng.randrange(len(Hj)))
            t.append(row)
        phi[(k, j)] = t
    bracket = {}
    for k, j, i in bracket_keys(r):
        Hk, Hj, Hi = groups[k - 1], groups[j - 1], groups[i - 1]
        trivial = rng.random() < trivial_bias
        t = []
        for x in Hk.elements():
            row = []
            for y in Hj.elements():
                if trivial or x == Hk.identity or y == Hj.identity:
                    row.append(Hi.identity)
                else:
                    row.append(rng.randrange(len(Hi)))
            t.append(row)
        bracket[(k, j, i)] = t
    return TotalSystem(groups, phi, bracket)


def extend_system(S: TotalSystem, top: FiniteGroup, rng: random.Random) -> TotalSystem:
    """Append a factor H_{r+1} with random normalized action and bracket tables.

    The lower r levels are copied unchanged, so the multiplication on
    R_r is exactly that of ``S``.
    """
    groups = S.factors + (top,)
    fresh = random_system(groups, rng)
    r = len(groups)
    phi = {key: (S.phi[key] if key[0] < r else fresh.phi[key]) for key in phi_keys(r)}
    bracket = {key: (S.bracket[key] if key[0] < r else fresh.bracket[key]) for key in bracket_keys(r)}
    return TotalSystem(groups, phi, bracket)


def all_normalized_systems(groups: Sequence[FiniteGroup]):
    """Every normalized system on the factors (tiny factor groups only)."""
    groups = tuple(groups)
    r = len(groups)
    slots = []  # (kind, key, x, y, codomain order)
    for k, j in phi_keys(r):
        Hk, Hj = groups[k - 1], groups[j - 1]
        for x in Hk.elements():
            for y in Hj.elements():
                if x != Hk.identity and y != Hj.identity:
                    slots.append(("phi", (k, j), x, y, len(Hj)))
    for k, j, i in bracket_keys(r):
        Hk, Hj = groups[k - 1], groups[j - 1]
        for x in Hk.elements():
            for y in Hj.elements():
                if x != Hk.identity and y != Hj.identity:
                    slots.append(("bracket", (k, j, i), x, y, len(groups[i - 1])))
    base = trivial_system(groups)
    for values in itertools.product(*(range(s[4]) for s in slots)):
        phi = {key: [list(row) for row in t] for key, t in base.phi.items()}
        bracket = {key: [list(row) for row in t] for key, t in base.bracket.items()}
        for (kind, key, x, y, _), v in zip(slots, values):
            (phi if kind == "phi" else bracket)[key][x][y] = v
        yield TotalSystem(groups, phi, bracket)


# files ------------------------------------------------------------------------

def system_from_dict(d: dict, base: Optional[Path] = None) -> TotalSystem:
    groups = []
    for g in d["groups"]:
        if isinstance(g, str):
            p = Path(g)
            groups.append(load_group(p if p.is_absolute() or base is None else base / p))
        else:
            groups.append(group_from_dict(g))
    if "r" in d and int(d["r"]) != len(groups):
        raise MalformedSystem(f"r={d['r']} but {len(groups)} groups given")

    def keyed(entries, n):
        out = {}
        for key, t in (entries or {}).items():
            parts = tuple(int(p) for p in key.split(","))
            if len(parts) != n:
                raise MalformedSystem(f"bad key {key!r}")
            out[parts] = t
        return out

    return TotalSystem(groups, keyed(d.get("phi"), 2), keyed(d.get("bracket"), 3))


def load_system(path) -> TotalSystem:
    path = Path(path)
    return system_from_dict(json.loads(path.read_text()), base=path.parent)


def dump_system(S: TotalSystem, path) -> None:
    Path(path).write_text(json.dumps(S.to_dict()) + "\n")


def truncate_system(S: TotalSystem, m: int) -> TotalSystem:
    """The m-system on H_1, ..., H_m; its law is mu_m of ``S``."""
    if not 1 <= m <= S.r:
        raise IndexOutOfRange(f"need 1 <= m <= {S.r}, got {m}")
    return TotalSystem(S.factors[:m], {key: S.phi[key] for key in phi_keys(m)},
                       {key: S.bracket[key] for key in bracket_keys(m)})
