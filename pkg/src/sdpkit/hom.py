"""Maps out of an SDP assembled from per-factor maps, and their hom checks.

``f(h_1 ... h_r) = f_1(h_1) ... f_r(h_r)`` in an associative target.
The pair conditions H[f;k,j] only look at products of two elementary
tuples; the brute-force check looks at every pair of tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .assoc import CheckResult, OK, Witness, all_elementary_hold, elementary_indices, embed_level
from .errors import ArityMismatch, ComponentNotHom, NotAnSdp, SizeCapExceeded
from .groups import FiniteGroup, is_homomorphism
from .magma import CayleyTable, commutator_bracket, elementary
from .system import TotalSystem

HOM_BRUTE_CAP = 1024


@dataclass(frozen=True, eq=False)
class AssembledMap:
    S: TotalSystem
    target: object            # FiniteGroup or FiniteMonoid
    components: tuple[tuple[int, ...], ...]
    _table: list = field(default_factory=list, repr=False)

    def __call__(self, t: Sequence[int]) -> int:
        return self.target.prod(self.components[i][x] for i, x in enumerate(t))

    def cayley(self) -> CayleyTable:
        if not self._table:
            self._table.append(CayleyTable(self.S, cap=max(4096, self.S.size())))
        return self._table[0]

    def images(self) -> np.ndarray:
        """f on every tuple, indexed like the Cayley table."""
        T = self.cayley()
        tgt = self.target.array
        F = None
        for i, comp in enumerate(T.components(self.S.r)):
            part = np.asarray(self.components[i])[comp]
            F = part if F is None else tgt[F, part]
        return F


def assemble(S: TotalSystem, target, components: Sequence[Sequence[int]]) -> AssembledMap:
    if len(components) != S.r:
        raise ArityMismatch(f"{len(components)} component maps for {S.r} factors",
                            expected=S.r, got=len(components))
    comps = []
    for i, f in enumerate(components, start=1):
        f = tuple(int(v) for v in f)
        if len(f) != len(S.group(i)):
            raise ArityMismatch(f"f_{i} has {len(f)} values, H_{i} has {len(S.group(i))} elements",
                                factor=i)
        if any(not 0 <= v < len(target) for v in f):
            raise ArityMismatch(f"f_{i} has values outside the target", factor=i)
        comps.append(f)
    return AssembledMap(S, target, tuple(comps))


def _witness(T: CayleyTable, x, y, lhs, rhs) -> Witness:
    return Witness((T.decode(x), T.decode(y)), int(lhs), int(rhs))


def _compare(m: AssembledMap, U: np.ndarray, V: np.ndarray) -> CheckResult:
    T = m.cayley()
    F = m.images()
    tgt = m.target.array
    lhs = F[T.table[U[:, None], V[None, :]]]
    rhs = tgt[F[U][:, None], F[V][None, :]]
    hits = np.argwhere(lhs != rhs)
    if not len(hits):
        return OK
    x, y = hits[0]
    return CheckResult(False, _witness(T, U[x], V[y], lhs[x, y], rhs[x, y]))


def check_hom_pair(m: AssembledMap, k: int, j: int) -> CheckResult:
    """H[f;k,j]: f(a.b) = f(a) f(b) for a in H_k, b in H_j."""
    if not 1 <= j <= k <= m.S.r:
        raise IndexError(f"need 1 <= j <= k <= {m.S.r}, got k={k}, j={j}")
    T = m.cayley()
    return _compare(m, elementary_indices(T, k), elementary_indices(T, j))


@dataclass
class HomReport:
    holds: bool
    pairs: list = field(default_factory=list)     # (k, j, CheckResult)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds,
                "pairs": [{"k": k, "j": j, **res.to_dict()} for k, j, res in self.pairs]}


def check_hom_all(m: AssembledMap) -> HomReport:
    pairs = [(k, j, check_hom_pair(m, k, j)) for k in range(1, m.S.r + 1) for j in range(1, k + 1)]
    return HomReport(all(res.holds for _, _, res in pairs), pairs)


def brute_force_hom(m: AssembledMap, cap: int = HOM_BRUTE_CAP) -> CheckResult:
    """f(u.v) = f(u) f(v) for every pair of tuples."""
    if m.S.size() > cap:
        raise SizeCapExceeded(f"|G| = {m.S.size()} exceeds cap {cap}", size=m.S.size(), cap=cap)
    everything = np.arange(m.cayley().size)
    return _compare(m, everything, everything)


def check_hom_rank(m: AssembledMap, k: int) -> CheckResult:
    """H[[f;k]]: f restricted to R_k is a homomorphism (k = 0 holds vacuously)."""
    if k == 0:
        return OK
    T = m.cayley()
    R = embed_level(T, k)
    return _compare(m, R, R)


def check_homspit(m: AssembledMap, k: int) -> CheckResult:
    """f(u.a) = f(u) f(a) for u in R_{k-1}, a in H_k: true by construction."""
    T = m.cayley()
    return _compare(m, embed_level(T, k - 1), elementary_indices(T, k))


def component_failures(m: AssembledMap) -> list[int]:
    """Indices i whose f_i is not a homomorphism H_i -> target."""
    return [i for i in range(1, m.S.r + 1)
            if not is_homomorphism(m.S.group(i), m.target, m.components[i - 1])]


@dataclass
class CommutatorReport:
    holds: bool
    pairs: list = field(default_factory=list)         # (k, j, CheckResult)
    simplified: dict = field(default_factory=dict)    # (k, j) -> bool, where the action stays in H_j

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds,
                "pairs": [{"k": k, "j": j, **res.to_dict()} for k, j, res in self.pairs],
                "simplified": [{"k": k, "j": j, "holds": v} for (k, j), v in sorted(self.simplified.items())]}


def closed_under_action(S: TotalSystem, k: int, j: int) -> bool:
    """Every bracket [a,b]^i with i < j is trivial, so H_k conjugates H_j into itself."""
    return all(v == S.group(i).identity
               for i in range(1, j) for row in S.bracket[(k, j, i)] for v in row)


def check_commutator_criterion(m: AssembledMap, check_associative: bool = True) -> CommutatorReport:
    """f([a,b]) = [f(a), f(b)] for a in H_k, b in H_j, k > j.

    Needs a group target, homomorphic components and an associative law.
    """
    tgt = m.target
    if not isinstance(tgt, FiniteGroup):
        raise ValueError("the commutator criterion needs a group target")
    bad = component_failures(m)
    if bad:
        raise ComponentNotHom(f"f_{bad[0]} is not a homomorphism", factor=bad[0])
    S = m.S
    if check_associative and not all_elementary_hold(S, m.cayley()):
        raise NotAnSdp("the system does not define an associative product")
    pairs = []
    simplified = {}
    for k in range(2, S.r + 1):
        for j in range(1, k):
            res = OK
            for a in S.group(k).elements():
                for b in S.group(j).elements():
                    fa, fb = m(elementary(S, k, a)), m(elementary(S, j, b))
                    lhs = m(commutator_bracket(S, k, a, j, b))
                    rhs = tgt.commutator(fa, fb)
                    if lhs != rhs and res.holds:
                        res = CheckResult(False, Witness((elementary(S, k, a), elementary(S, j, b)), lhs, rhs))
            pairs.append((k, j, res))
            if closed_under_action(S, k, j):
                simplified[(k, j)] = all(
                    m.components[j - 1][S.phi[(k, j)][a][b]]
                    == tgt.conj(m.components[k - 1][a], m.components[j - 1][b])
                    for a in S.group(k).elements() for b in S.group(j).elements())
    return CommutatorReport(all(r.holds for _, _, r in pairs), pairs, simplified)


# files ------------------------------------------------------------------------

def maps_from_dict(d: dict) -> list[list[int]]:
    maps = d["maps"] if isinstance(d, dict) else d
    return [[int(v) for v in f] for f in maps]


def load_maps(path) -> list[list[int]]:
    return maps_from_dict(json.loads(Path(path).read_text()))
