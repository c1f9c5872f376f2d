"""Exhaustive associativity checks for the magma of a total system.

Every check returns a :class:`CheckResult` whose witness is the first
failing argument triple in lexicographic order of element (or tuple)
indices, so diagnostics are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, SizeCapExceeded
from .magma import CayleyTable, Tup, elementary, mu
from .system import TotalSystem

BRUTE_FORCE_CAP = 512
PAIRWISE_CAP = 4096


@dataclass(frozen=True)
class AssocCondition:
    k: int
    j: int
    i: int
    l: Optional[int] = None

    def label(self) -> str:
        inner = f"{self.k},{self.j},{self.i}" + (f";{self.l}" if self.l is not None else "")
        return f"A[{inner}]"


@dataclass(frozen=True)
class Witness:
    args: tuple
    lhs: object
    rhs: object

    def to_dict(self) -> dict:
        return {"args": [list(a) if isinstance(a, tuple) else a for a in self.args],
                "lhs": list(self.lhs) if isinstance(self.lhs, tuple) else self.lhs,
                "rhs": list(self.rhs) if isinstance(self.rhs, tuple) else self.rhs}


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "witness": self.witness.to_dict() if self.witness else None}


OK = CheckResult(True)


def _table(S: TotalSystem, table: Optional[CayleyTable], cap: int) -> CayleyTable:
    if table is not None:
        return table
    return CayleyTable(S, cap=cap)


def _check_index(S: TotalSystem, *idx: int) -> None:
    for x in idx:
        if not 1 <= x <= S.r:
            raise IndexOutOfRange(f"index {x} outside 1..{S.r}")


def embed_level(T: CayleyTable, k: int) -> np.ndarray:
    """G-indices of the elements of R_k, in R_k index order."""
    S = T.S
    offset = 0
    mult = 1
    for q in range(S.r, k, -1):
        offset += S.group(q).identity * mult
        mult *= T.orders[q - 1]
    return np.arange(T.level_size(k)) * mult + offset


def elementary_indices(T: CayleyTable, i: int) -> np.ndarray:
    return np.asarray([T.elementary_index(i, h) for h in T.S.group(i).elements()])


def check_sets(T: CayleyTable, U: np.ndarray, V: np.ndarray, W: np.ndarray,
               component: Optional[int] = None, decode_args: bool = True) -> CheckResult:
    """A[U, V, W] over G-index arrays, optionally on one component only."""
    t = T.table
    lhs = t[U[:, None, None], t[V[:, None], W[None, :]][None, :, :]]   # u.(v.w)
    rhs = t[t[U[:, None], V[None, :]][:, :, None], W[None, None, :]]   # (u.v).w
    if component is None:
        bad = lhs != rhs
    else:
        S = T.S
        stride = 1
        for q in range(S.r, component, -1):
            stride *= T.orders[q - 1]
        n_l = T.orders[component - 1]
        bad = (lhs // stride) % n_l != (rhs // stride) % n_l
    hits = np.argwhere(bad)
    if not len(hits):
        return OK
    x, y, z = hits[0]
    args = (U[x], V[y], W[z])
    return CheckResult(False, Witness(tuple(T.decode(a) for a in args),
                                      T.decode(lhs[x, y, z]), T.decode(rhs[x, y, z])))


def check_elementary(S: TotalSystem, k: int, j: int, i: int,
                     table: Optional[CayleyTable] = None, cap: int = PAIRWISE_CAP) -> CheckResult:
    """A[k,j,i]: a.(b.c) = (a.b).c over H_k x H_j x H_i.

    Any index order is accepted; orders with k <= j <= i hold trivially.
    """
    _check_index(S, k, j, i)
    if table is None and S.size() > cap:
        return _check_elementary_direct(S, k, j, i)
    T = _table(S, table, cap)
    return check_sets(T, elementary_indices(T, k), elementary_indices(T, j), elementary_indices(T, i))


def _check_elementary_direct(S: TotalSystem, k: int, j: int, i: int) -> CheckResult:
    # groups too large for a table: the triple domain is still small
    for a in S.group(k).elements():
        ea = elementary(S, k, a)
        for b in S.group(j).elements():
            eb = elementary(S, j, b)
            ab = mu(S, ea, eb)
            for c in S.group(i).elements():
                ec = elementary(S, i, c)
                lhs, rhs = mu(S, ea, mu(S, eb, ec)), mu(S, ab, ec)
                if lhs != rhs:
                    return CheckResult(False, Witness((ea, eb, ec), lhs, rhs))
    return OK


def elementary_conditions(r: int) -> list[AssocCondition]:
    return [AssocCondition(k, j, i) for k in range(1, r + 1)
            for j in range(1, k + 1) for i in range(1, j + 1)]


def check_all_elementary(S: TotalSystem, table: Optional[CayleyTable] = None,
                         cap: int = PAIRWISE_CAP) -> list[tuple[AssocCondition, CheckResult]]:
    T = _table(S, table, cap)
    return [(c, check_elementary(S, c.k, c.j, c.i, table=T)) for c in elementary_conditions(S.r)]


def all_elementary_hold(S: TotalSystem, table: Optional[CayleyTable] = None) -> bool:
    return all(res.holds for _, res in check_all_elementary(S, table))


def _first_failure(t: np.ndarray) -> Optional[tuple[int, int, int]]:
    n = len(t)
    ar = np.arange(n)
    for x in range(n):
        lhs = t[x][t]            # x.(y.z)
        rhs = t[t[x]][:, ar]     # (x.y).z
        hits = np.argwhere(lhs != rhs)
        if len(hits):
            return x, int(hits[0][0]), int(hits[0][1])
    return None


def _brute(T: CayleyTable, t: np.ndarray, k: int) -> CheckResult:
    bad = _first_failure(t)
    if bad is None:
        return OK
    x, y, z = bad
    lhs, rhs = t[x, t[y, z]], t[t[x, y], z]
    return CheckResult(False, Witness(tuple(T.decode(a, k) for a in (x, y, z)),
                                      T.decode(lhs, k), T.decode(rhs, k)))


def brute_force_associative(S: TotalSystem, cap: int = BRUTE_FORCE_CAP,
                            table: Optional[CayleyTable] = None) -> CheckResult:
    """Associativity over all |G|^3 triples of tuples."""
    if S.size() > cap:
        raise SizeCapExceeded(f"|G| = {S.size()} exceeds brute-force cap {cap}", size=S.size(), cap=cap)
    T = _table(S, table, max(cap, S.size()))
    return _brute(T, T.table, S.r)


def check_rank_associative(S: TotalSystem, k: int, cap: int = BRUTE_FORCE_CAP,
                           table: Optional[CayleyTable] = None) -> CheckResult:
    """A[[k]]: associativity of mu_k on R_k (k = 0 holds vacuously)."""
    if k == 0:
        return OK
    _check_index(S, k)
    T = _table(S, table, PAIRWISE_CAP if S.size() <= PAIRWISE_CAP else S.size())
    if T.level_size(k) > cap:
        raise SizeCapExceeded(f"|R_{k}| = {T.level_size(k)} exceeds brute-force cap {cap}")
    return _brute(T, T.levels[k - 1], k)


def _pairwise_table(S: TotalSystem, table, cap) -> CayleyTable:
    if S.size() > cap:
        raise SizeCapExceeded(f"|G| = {S.size()} exceeds cap {cap}", size=S.size(), cap=cap)
    return _table(S, table, cap)


def check_phi_multiplicative(S: TotalSystem, k: int, cap: int = PAIRWISE_CAP,
                             table: Optional[CayleyTable] = None) -> CheckResult:
    """phi_a(v.w) = phi_a(v).phi_a(w) for a in H_k and v, w in R_{k-1}."""
    if not 1 < k <= S.r:
        raise IndexOutOfRange(f"need 1 < k <= {S.r}")
    T = _pairwise_table(S, table, cap)
    P = T.phis[k]
    t = T.levels[k - 2]
    N = len(t)
    ar = np.arange(N)
    for a in S.group(k).elements():
        lhs = P[a][t]                                 # phi_a(v.w)
        rhs = t[P[a][:, None], P[a][None, :]]         # phi_a(v).phi_a(w)
        hits = np.argwhere(lhs != rhs)
        if len(hits):
            v, w = (int(x) for x in hits[0])
            args = (T.decode(T.elementary_index(k, a)), T.decode(ar[v], k - 1), T.decode(ar[w], k - 1))
            return CheckResult(False, Witness(args, T.decode(lhs[v, w], k - 1), T.decode(rhs[v, w], k - 1)))
    return OK


def check_phi_composition(S: TotalSystem, k: int, cap: int = PAIRWISE_CAP,
                          table: Optional[CayleyTable] = None) -> CheckResult:
    """phi_{ab}(w) = phi_a(phi_b(w)) for a, b in H_k and w in R_{k-1}."""
    if not 1 < k <= S.r:
        raise IndexOutOfRange(f"need 1 < k <= {S.r}")
    T = _pairwise_table(S, table, cap)
    P = T.phis[k]
    Hk = S.group(k)
    for a in Hk.elements():
        for b in Hk.elements():
            lhs = P[Hk.mul[a][b]]
            rhs = P[a][P[b]]
            hits = np.flatnonzero(lhs != rhs)
            if len(hits):
                w = int(hits[0])
                args = (T.decode(T.elementary_index(k, a)), T.decode(T.elementary_index(k, b)),
                        T.decode(w, k - 1))
                return CheckResult(False, Witness(args, T.decode(lhs[w], k - 1), T.decode(rhs[w], k - 1)))
    return OK


def check_H_R_R(S: TotalSystem, k: int, table: Optional[CayleyTable] = None,
                cap: int = PAIRWISE_CAP) -> CheckResult:
    """A[H_k, R_{k-1}, R_{k-1}] evaluated directly with the full law."""
    T = _pairwise_table(S, table, cap)
    R = embed_level(T, k - 1)
    return check_sets(T, elementary_indices(T, k), R, R)


def check_H_H_R(S: TotalSystem, k: int, table: Optional[CayleyTable] = None,
                cap: int = PAIRWISE_CAP) -> CheckResult:
    """A[H_k, H_k, R_{k-1}] evaluated directly with the full law."""
    T = _pairwise_table(S, table, cap)
    E = elementary_indices(T, k)
    return check_sets(T, E, E, embed_level(T, k - 1))


def check_component(S: TotalSystem, k: int, j: int, i: int, l: int,
                    table: Optional[CayleyTable] = None, cap: int = PAIRWISE_CAP) -> CheckResult:
    """A[k,j,i;l]: equality of the l-th entries of a.(b.c) and (a.b).c."""
    _check_index(S, k, j, i, l)
    if not k > j > i:
        raise IndexOutOfRange(f"check_component needs k > j > i, got {k},{j},{i}")
    T = _table(S, table, cap)
    return check_sets(T, elementary_indices(T, k), elementary_indices(T, j),
                      elementary_indices(T, i), component=l)


def check_elementary_component(S: TotalSystem, k: int, j: int, i: int, l: int,
                               table: Optional[CayleyTable] = None, cap: int = PAIRWISE_CAP) -> CheckResult:
    """Component l of A[k,j,i] for any k >= j >= i (equal indices allowed)."""
    _check_index(S, k, j, i, l)
    if not k >= j >= i:
        raise IndexOutOfRange(f"need k >= j >= i, got {k},{j},{i}")
    T = _table(S, table, cap)
    return check_sets(T, elementary_indices(T, k), elementary_indices(T, j),
                      elementary_indices(T, i), component=l)


def verdict_report(results: Sequence[tuple[AssocCondition, CheckResult]]) -> list[dict]:
    return [{"condition": c.label(), **res.to_dict()} for c, res in results]


def as_tuple(x) -> Tup:
    return tuple(int(v) for v in x)
