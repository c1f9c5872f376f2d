"""The unital magma law on H_1 x ... x H_r built from a total system.

Tuples are plain Python tuples of element indices, component i at
position i-1.  ``mu`` is the rank recursion taken literally: the product
of ``u'.a_k`` and ``v'.b_k`` is ``(u' . phi_{a_k}(v')) . (a_k b_k)``,
where the extended conjugation operator is the left fold of the
elementary ones.  No re-association is ever performed.

:class:`CayleyTable` evaluates the same recursion one level at a time
with numpy, producing the full table of every ``mu_k``.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .errors import Interfering, RankError, SizeCapExceeded
from .system import TotalSystem

Tup = tuple[int, ...]

DEFAULT_TABLE_CAP = 4096


def unit(S: TotalSystem) -> Tup:
    return S.unit()


def elementary(S: TotalSystem, i: int, h: int) -> Tup:
    t = list(S.unit())
    t[i - 1] = h
    return tuple(t)


def rank(S: TotalSystem, t: Sequence[int]) -> int:
    """Largest index with a nontrivial entry, 0 for the unit."""
    for i in range(S.r, 0, -1):
        if t[i - 1] != S.group(i).identity:
            return i
    return 0


def corank(S: TotalSystem, t: Sequence[int]) -> int:
    """Smallest index with a nontrivial entry, r+1 for the unit."""
    for i in range(1, S.r + 1):
        if t[i - 1] != S.group(i).identity:
            return i
    return S.r + 1


def mu_A(S: TotalSystem, u: Sequence[int], v: Sequence[int]) -> Tup:
    """Product of a noninterfering pair: concatenation, multiplying the overlap."""
    if rank(S, u) > corank(S, v):
        raise Interfering(f"rank({list(u)}) > corank({list(v)})", u=list(u), v=list(v))
    return tuple(g.mul[x][y] for g, x, y in zip(S.factors, u, v))


def phi_conj(S: TotalSystem, k: int, a: int, j: int, h: int) -> Tup:
    """phi_a(h) for a in H_k, h in H_j (k > j): brackets at 1..j-1, action at j."""
    if not 1 <= j < k <= S.r:
        raise IndexError(f"phi_conj needs 1 <= j < k <= r, got k={k}, j={j}")
    t = list(S.unit())
    for i in range(1, j):
        t[i - 1] = S.bracket[(k, j, i)][a][h]
    t[j - 1] = S.phi[(k, j)][a][h]
    return tuple(t)


def commutator_bracket(S: TotalSystem, k: int, a: int, j: int, h: int) -> Tup:
    """phi_a(h) . h^-1; the j-th entry is the action value times h^-1."""
    t = list(phi_conj(S, k, a, j, h))
    Hj = S.group(j)
    t[j - 1] = Hj.mul[t[j - 1]][Hj.inv[h]]
    return tuple(t)


def _truncate(S: TotalSystem, t: Sequence[int], k: int) -> Tup:
    return tuple(t[:k]) + S.unit()[k:]


def phi_ext(S: TotalSystem, k: int, a: int, v: Sequence[int]) -> Tup:
    """Extended conjugation operator of a in H_k on v of rank <= k-1.

    Left fold under mu_{k-1} of phi_a applied to each entry of v,
    trivial entries included.
    """
    if not 2 <= k <= S.r:
        raise RankError(f"phi_ext needs 2 <= k <= r, got k={k}")
    if rank(S, v) > k - 1:
        raise RankError(f"rank({list(v)}) exceeds {k - 1}")
    parts = [phi_conj(S, k, a, q, v[q - 1]) for q in range(1, k)]
    return reduce(lambda x, y: mu_level(S, k - 1, x, y), parts)


def mu_level(S: TotalSystem, k: int, u: Sequence[int], v: Sequence[int]) -> Tup:
    """mu_k on R_k; only entries 1..k of u and v are read."""
    if k == 1:
        H1 = S.group(1)
        return (H1.mul[u[0]][v[0]],) + S.unit()[1:]
    a, b = u[k - 1], v[k - 1]
    w = phi_ext(S, k, a, _truncate(S, v, k - 1))
    t = list(mu_level(S, k - 1, _truncate(S, u, k - 1), w))
    t[k - 1] = S.group(k).mul[a][b]
    return tuple(t)


def mu(S: TotalSystem, u: Sequence[int], v: Sequence[int]) -> Tup:
    return mu_level(S, S.r, u, v)


def mu_word(S: TotalSystem, tuples: Sequence[Sequence[int]]) -> Tup:
    """Left-parenthesized product ((w1 w2) w3) ...; a single tuple is returned as is."""
    if not tuples:
        raise ValueError("mu_word needs at least one tuple")
    return reduce(lambda x, y: mu(S, x, y), (tuple(t) for t in tuples))


# table layer ------------------------------------------------------------------

class CayleyTable:
    """Full tables of mu_1, ..., mu_r over lexicographic tuple indices.

    The index of a tuple in R_k is its mixed-radix value over entries
    1..k with entry 1 most significant, so index order is lexicographic.
    ``levels[k-1]`` is the table of mu_k on R_k and ``phis[k]`` holds, for
    each a in H_k, the extended operator phi_a on R_{k-1} as an index map.
    """

    def __init__(self, S: TotalSystem, cap: int = DEFAULT_TABLE_CAP):
        if S.size() > cap:
            raise SizeCapExceeded(f"|G| = {S.size()} exceeds table cap {cap}", size=S.size(), cap=cap)
        self.S = S
        self.orders = S.orders()
        self.levels: list[np.ndarray] = [S.group(1).array.copy()]
        self.phis: dict[int, np.ndarray] = {}
        for k in range(2, S.r + 1):
            self._add_level(k)
        self.table = self.levels[-1]

    @property
    def size(self) -> int:
        return len(self.table)

    def level_size(self, k: int) -> int:
        return len(self.levels[k - 1])

    def encode(self, t: Sequence[int], k: int | None = None) -> int:
        k = self.S.r if k is None else k
        idx = 0
        for i in range(k):
            idx = idx * self.orders[i] + t[i]
        return idx

    def decode(self, idx: int, k: int | None = None) -> Tup:
        k = self.S.r if k is None else k
        comps = []
        for i in range(k - 1, -1, -1):
            idx, c = divmod(int(idx), self.orders[i])
            comps.append(c)
        return tuple(reversed(comps)) + self.S.unit()[k:]

    def components(self, k: int) -> list[np.ndarray]:
        """Entry arrays of every element of R_k, in index order."""
        n = self.level_size(k)
        idx = np.arange(n)
        out = []
        for i in range(k - 1, -1, -1):
            idx, c = np.divmod(idx, self.orders[i])
            out.append(c)
        return list(reversed(out))

    def elementary_index(self, i: int, h, k: int | None = None):
        """Index (or index array) of the elementary tuple h_i inside R_k."""
        k = self.S.r if k is None else k
        idx = 0
        for q in range(1, k + 1):
            c = h if q == i else self.S.group(q).identity
            idx = idx * self.orders[q - 1] + c
        return idx

    def _add_level(self, k: int) -> None:
        S = self.S
        Hk = S.group(k)
        nk = len(Hk)
        prev = self.levels[-1]
        N = len(prev)
        comps = self.components(k - 1)
        # P[q][a, h] = index in R_{k-1} of phi_conj(a, h) for h in H_q
        acc = None
        for q in range(1, k):
            P = np.empty((nk, self.orders[q - 1]), dtype=np.int64)
            for a in Hk.elements():
                for h in S.group(q).elements():
                    P[a, h] = self.encode(phi_conj(S, k, a, q, h), k - 1)
            term = P[:, comps[q - 1]]  # (nk, N)
            acc = term if acc is None else prev[acc, term]
        self.phis[k] = acc
        inner = prev[np.arange(N)[:, None, None], acc[None, :, :]]  # [u', a, v']
        full = inner[:, :, :, None] * nk + Hk.array[None, :, None, :]
        self.levels.append(full.reshape(N * nk, N * nk))

    def mu(self, u: Sequence[int], v: Sequence[int]) -> Tup:
        return self.decode(self.table[self.encode(u), self.encode(v)])

    def phi_ext(self, k: int, a: int, v: Sequence[int]) -> Tup:
        return self.decode(self.phis[k][a, self.encode(v, k - 1)], k - 1)


def cayley_table(S: TotalSystem, cap: int = DEFAULT_TABLE_CAP) -> CayleyTable:
    return CayleyTable(S, cap)
