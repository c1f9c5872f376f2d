"""Finite groups as explicit Cayley tables over the indices 0..n-1.

Everything here is immutable after construction.  Elements are plain ints;
a :class:`FiniteGroup` carries its multiplication table together with the
derived identity and inverse tables.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import MalformedTable, NoIdentity, NoInverse, NotAssociative

GroupElem = int
Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    name: str = ""
    labels: Optional[tuple] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def elements(self) -> range:
        return range(len(self.mul))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.mul, dtype=np.int64)

    def op(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def prod(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inv[x], -n
        acc = self.identity
        for _ in range(n):
            acc = self.mul[acc][x]
        return acc

    def conj(self, k: int, h: int) -> int:
        """k h k^-1"""
        return self.mul[self.mul[k][h]][self.inv[k]]

    def commutator(self, k: int, h: int) -> int:
        """k h k^-1 h^-1"""
        return self.mul[self.conj(k, h)][self.inv[h]]

    def element_order(self, x: int) -> int:
        n, acc = 1, x
        while acc != self.identity:
            acc = self.mul[acc][x]
            n += 1
        return n

    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    def label(self, x: int):
        return self.labels[x] if self.labels is not None else x

    def index_of(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def to_dict(self) -> dict:
        d = {"order": self.order, "table": [list(row) for row in self.mul]}
        if self.name:
            d["name"] = self.name
        return d


def _first_assoc_failure(t: np.ndarray) -> Optional[tuple[int, int, int]]:
    n = len(t)
    ys = np.arange(n)
    for x in range(n):
        # (x*y)*z vs x*(y*z) for all y, z at once
        lhs = t[t[x, ys]][:, ys]
        rhs = t[x][t[ys][:, ys]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = bad[0]
            return x, int(y), int(z)
    return None


def validate_group(table: Sequence[Sequence[int]], name: str = "", labels=None) -> FiniteGroup:
    """Check the group axioms on a square table and return the group.

    Axioms are tested in the order associativity, identity, inverses; the
    first failure raises with a witness.
    """
    n = len(table)
    if n == 0:
        raise MalformedTable("empty table")
    rows = []
    for r, row in enumerate(table):
        row = tuple(int(v) for v in row)
        if len(row) != n:
            raise MalformedTable(f"row {r} has length {len(row)}, expected {n}", row=r)
        for c, v in enumerate(row):
            if not 0 <= v < n:
                raise MalformedTable(f"entry ({r},{c}) = {v} out of range", row=r, col=c)
        rows.append(row)
    t = np.asarray(rows, dtype=np.int64)

    bad = _first_assoc_failure(t)
    if bad is not None:
        raise NotAssociative(f"(x*y)*z != x*(y*z) at {bad}", witness=list(bad))

    ar = np.arange(n)
    e = next((x for x in range(n) if (t[x] == ar).all() and (t[:, x] == ar).all()), None)
    if e is None:
        raise NoIdentity("no two-sided identity")

    inv = []
    for x in range(n):
        ys = np.flatnonzero((t[x] == e) & (t[:, x] == e))
        if not len(ys):
            raise NoInverse(f"element {x} has no inverse", element=x)
        inv.append(int(ys[0]))
    return FiniteGroup(tuple(rows), e, tuple(inv), name=name,
                       labels=tuple(labels) if labels is not None else None)


# constructors ---------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def compose(p: Perm, q: Perm) -> Perm:
    """(p*q)(x) = p(q(x)): q acts first."""
    return tuple(p[x] for x in q)


def perm_from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Permutation of {0..n-1} from cycles written with 1-based points."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def permutation_group(gens: Iterable[Perm], name: str = "") -> FiniteGroup:
    """Closure of permutation generators, as a Cayley table.

    Elements are sorted so the identity permutation is index 0 and the
    labelling is deterministic.
    """
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator (degree is taken from it)")
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[compose(p, q)] for q in elems] for p in elems]
    return validate_group(table, name=name, labels=elems)


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return validate_group(table, name=f"S{n}", labels=perms)


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    elems = list(itertools.product(*(g.elements() for g in groups)))
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple(g.mul[a][b] for g, a, b in zip(groups, x, y))] for y in elems]
             for x in elems]
    return validate_group(table, name="x".join(g.name or "?" for g in groups), labels=elems)


def subgroup_as_group(G: FiniteGroup, members: Iterable[int], name: str = "") -> tuple[FiniteGroup, tuple[int, ...]]:
    """Re-index a subgroup as a standalone group; returns (group, embedding).

    The identity of G becomes index 0 and the rest keep their relative order.
    """
    members = sorted(set(members), key=lambda x: (x != G.identity, x))
    index = {x: i for i, x in enumerate(members)}
    table = [[index[G.mul[x][y]] for y in members] for x in members]
    labels = tuple(G.label(x) for x in members)
    return validate_group(table, name=name, labels=labels), tuple(members)


# subsets and subgroups --------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: frozenset

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def complex_product(G: FiniteGroup, subsets: Sequence[Iterable[int]]) -> frozenset:
    """The setwise product S_1 S_2 ... S_m (the empty list gives {e})."""
    acc = {G.identity}
    for s in subsets:
        s = set(s)
        acc = {G.mul[x][y] for x in acc for y in s}
    return frozenset(acc)


def conjugate_set(G: FiniteGroup, K: Iterable[int], H: Iterable[int]) -> frozenset:
    H = set(H)
    return frozenset(G.conj(k, h) for k in K for h in H)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    # finite group: closing under products alone already yields inverses
    gens = set(gens)
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul[x][g]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, frozenset(members))


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    members = set(members)
    if G.identity not in members:
        return False
    return all(G.mul[x][y] in members for x in members for y in members)


def subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    members = frozenset(members)
    if not is_subgroup(G, members):
        raise ValueError("element set is not closed under the group law")
    return Subgroup(G, members)


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements()))


def is_normal(G: FiniteGroup, H) -> bool:
    members = H.members if isinstance(H, Subgroup) else frozenset(H)
    return conjugate_set(G, G.elements(), members) <= members


def normality_witness(G: FiniteGroup, members: Iterable[int]) -> Optional[tuple[int, int]]:
    """First (g, h) in index order with g h g^-1 outside the set."""
    members = frozenset(members)
    for g in G.elements():
        for h in sorted(members):
            if G.conj(g, h) not in members:
                return g, h
    return None


def commutator_subgroup(G: FiniteGroup, K: Iterable[int], H: Iterable[int]) -> Subgroup:
    H = set(H)
    return generated_subgroup(G, {G.commutator(k, h) for k in K for h in H})


# monoids and homomorphisms ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """An associative table with a two-sided unit; inverses are not required."""

    mul: tuple[tuple[int, ...], ...]
    identity: int
    name: str = ""

    def __len__(self) -> int:
        return len(self.mul)

    def elements(self) -> range:
        return range(len(self.mul))

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.mul, dtype=np.int64)

    def prod(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mul[acc][x]
        return acc


def validate_monoid(table: Sequence[Sequence[int]], name: str = ""):
    """A group when every element is invertible, otherwise a :class:`FiniteMonoid`."""
    try:
        return validate_group(table, name=name)
    except NoInverse:
        pass
    rows = tuple(tuple(int(v) for v in row) for row in table)
    n = len(rows)
    t = np.asarray(rows, dtype=np.int64)
    ar = np.arange(n)
    e = next(x for x in range(n) if (t[x] == ar).all() and (t[:, x] == ar).all())
    return FiniteMonoid(rows, e, name=name)


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily in index order."""
    gens: list[int] = []
    span = frozenset({G.identity})
    for x in G.elements():
        if x not in span:
            gens.append(x)
            span = generated_subgroup(G, gens).members
            if len(span) == len(G):
                break
    return gens


def is_homomorphism(G: FiniteGroup, K, f: Sequence[int]) -> bool:
    F = np.asarray(f)
    return bool((K.array[F[:, None], F[None, :]] == F[G.array]).all())


def all_homomorphisms(G: FiniteGroup, K) -> list[tuple[int, ...]]:
    """Every homomorphism G -> K as an image table, by extending generator images."""
    gens = generating_set(G)
    out = []
    for images in itertools.product(K.elements(), repeat=len(gens)):
        f = {G.identity: K.identity}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    y, v = G.mul[x][g], K.mul[f[x]][img]
                    if y in f:
                        if f[y] != v:
                            ok = False
                            break
                    else:
                        f[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            table = tuple(f[x] for x in G.elements())
            if is_homomorphism(G, K, table):
                out.append(table)
    return out


# files ------------------------------------------------------------------------

def group_from_dict(d: dict) -> FiniteGroup:
    table = d["table"]
    if "order" in d and int(d["order"]) != len(table):
        raise MalformedTable(f"order {d['order']} does not match table size {len(table)}")
    return validate_group(table, name=d.get("name", ""))


def load_group(path) -> FiniteGroup:
    return group_from_dict(json.loads(Path(path).read_text()))


def dump_group(G: FiniteGroup, path) -> None:
    Path(path).write_text(json.dumps(G.to_dict()) + "\n")
