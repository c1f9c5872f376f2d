"""Internal r-fold semidirect products inside a concrete finite group.

Given subgroups H_1, ..., H_r of G, decide whether G is their r-SDP,
factor elements uniquely as h_1 h_2 ... h_r, read off the total system
and rebuild G from it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .assoc import brute_force_associative
from .errors import NotAnSdp, NotGenerating, ShapeViolation
from .groups import (FiniteGroup, Subgroup, complex_product, conjugate_set, commutator_subgroup,
                     generated_subgroup, is_subgroup, subgroup, subgroup_as_group)
from .magma import CayleyTable
from .system import TotalSystem, bracket_keys, phi_keys


@dataclass(frozen=True, eq=False)
class SdpCandidate:
    G: FiniteGroup
    factors: tuple[Subgroup, ...]

    @property
    def r(self) -> int:
        return len(self.factors)

    def partial(self, i: int) -> frozenset:
        """The setwise product H_1 ... H_i (i = 0 gives {e})."""
        return complex_product(self.G, [h.members for h in self.factors[:i]])

    @cached_property
    def local_groups(self) -> tuple[tuple[FiniteGroup, tuple[int, ...]], ...]:
        """Each factor re-indexed as a standalone group, with its embedding into G."""
        return tuple(subgroup_as_group(self.G, h.members, name=f"H{i}")
                     for i, h in enumerate(self.factors, start=1))


def candidate(G: FiniteGroup, factors: Sequence) -> SdpCandidate:
    subs = tuple(f if isinstance(f, Subgroup) else subgroup(G, f) for f in factors)
    return SdpCandidate(G, subs)


def candidate_from_generators(G: FiniteGroup, gens: Sequence[Sequence[int]]) -> SdpCandidate:
    return SdpCandidate(G, tuple(generated_subgroup(G, g) for g in gens))


@dataclass(frozen=True)
class SdpReport:
    is_sdp: bool
    failed: Optional[str] = None        # "normality(i)", "surjectivity" or "uniqueness(i)"
    witness: Optional[tuple] = None
    factorization: Optional[dict] = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.is_sdp

    def to_dict(self) -> dict:
        return {"is_sdp": self.is_sdp, "failed": self.failed,
                "witness": list(self.witness) if self.witness is not None else None}


def _product_map(cand: SdpCandidate) -> dict:
    """g -> list of factor tuples multiplying to g."""
    G = cand.G
    out: dict = {}
    for hs in itertools.product(*(sorted(h.members) for h in cand.factors)):
        out.setdefault(G.prod(hs), []).append(hs)
    return out


def check_internal_sdp(cand: SdpCandidate) -> SdpReport:
    """Conditions 1 (normal partial products), 2a (product is G), 2b (trivial intersections)."""
    G = cand.G
    for i in range(1, cand.r + 1):
        N = cand.partial(i)
        for g in G.elements():
            for h in sorted(N):
                if G.conj(g, h) not in N:
                    return SdpReport(False, f"normality({i})", (g, h))
    if cand.partial(cand.r) != frozenset(G.elements()):
        missing = min(set(G.elements()) - cand.partial(cand.r))
        return SdpReport(False, "surjectivity", (missing,))
    for i in range(1, cand.r):
        both = cand.partial(i) & cand.factors[i].members
        extra = sorted(both - {G.identity})
        if extra:
            return SdpReport(False, f"uniqueness({i + 1})", (extra[0],))
    pm = _product_map(cand)
    return SdpReport(True, factorization={g: hs[0] for g, hs in pm.items()})


def check_unique_factorization(cand: SdpCandidate) -> bool:
    """The product map H_1 x ... x H_r -> G is a bijection."""
    pm = _product_map(cand)
    return len(pm) == len(cand.G) and all(len(v) == 1 for v in pm.values())


def check_definition(cand: SdpCandidate) -> bool:
    """Normality of partial products plus unique factorization, checked by counting."""
    G = cand.G
    normal = all(conjugate_set(G, G.elements(), cand.partial(i)) <= cand.partial(i)
                 for i in range(1, cand.r + 1))
    return normal and check_unique_factorization(cand)


@dataclass(frozen=True)
class TermwiseReport:
    conjugates: bool      # ^{H_j}H_i inside H_1...H_i for i < j
    commutators: bool     # [H_j, H_i] inside H_1...H_i for i < j
    normal: bool          # condition 1 itself


def check_termwise(cand: SdpCandidate) -> TermwiseReport:
    G = cand.G
    every = set().union(*(h.members for h in cand.factors)) if cand.factors else set()
    if generated_subgroup(G, every).members != frozenset(G.elements()):
        raise NotGenerating("factors do not generate G")
    conj_ok = comm_ok = True
    for i in range(1, cand.r + 1):
        N = cand.partial(i)
        Hi = cand.factors[i - 1].members
        for j in range(i + 1, cand.r + 1):
            Hj = cand.factors[j - 1].members
            conj_ok &= conjugate_set(G, Hj, Hi) <= N
            comm_ok &= commutator_subgroup(G, Hj, Hi).members <= N
    normal = all(conjugate_set(G, G.elements(), cand.partial(i)) <= cand.partial(i)
                 for i in range(1, cand.r + 1))
    return TermwiseReport(conj_ok, comm_ok, normal)


def check_iterated_2sdp(cand: SdpCandidate) -> bool:
    """Each H_1...H_i is a subgroup normal in H_1...H_{i+1}, meeting H_{i+1} trivially, and the whole product is G."""
    G = cand.G
    for i in range(1, cand.r + 1):
        if not is_subgroup(G, cand.partial(i)):
            return False
    for i in range(1, cand.r):
        N, M = cand.partial(i), cand.partial(i + 1)
        if not conjugate_set(G, M, N) <= N:
            return False
        if N & cand.factors[i].members != {G.identity}:
            return False
    return cand.partial(cand.r) == frozenset(G.elements())


# factorization and extraction --------------------------------------------------

class Decomposition:
    """A verified internal SDP with its precomputed factorization table."""

    def __init__(self, cand: SdpCandidate):
        report = check_internal_sdp(cand)
        if not report:
            raise NotAnSdp(f"not an SDP: {report.failed} fails", failed=report.failed,
                           witness=list(report.witness))
        self.cand = cand
        self.table = report.factorization
        self.groups = [g for g, _ in cand.local_groups]
        self.embeddings = [emb for _, emb in cand.local_groups]
        self.local_index = [{x: n for n, x in enumerate(emb)} for emb in self.embeddings]

    @property
    def r(self) -> int:
        return self.cand.r

    def factorize(self, g: int) -> tuple[int, ...]:
        """Elements of G (as G-indices) with g = h_1 ... h_r."""
        return self.table[g]

    def local(self, g: int) -> tuple[int, ...]:
        """Factorization as local indices into the standalone factor groups."""
        return tuple(self.local_index[i][h] for i, h in enumerate(self.table[g]))

    def embed(self, t: Sequence[int]) -> int:
        G = self.cand.G
        return G.prod(self.embeddings[i][x] for i, x in enumerate(t))


def factorize(cand: SdpCandidate, g: int) -> tuple[int, ...]:
    return Decomposition(cand).factorize(g)


def extract_total_system(cand: SdpCandidate) -> TotalSystem:
    """Read actions and brackets off the factorization of h_k h_j."""
    D = Decomposition(cand)
    G, r = cand.G, cand.r
    groups = D.groups
    phi = {key: [[0] * len(groups[key[1] - 1]) for _ in groups[key[0] - 1].elements()]
           for key in phi_keys(r)}
    bracket = {key: [[0] * len(groups[key[1] - 1]) for _ in groups[key[0] - 1].elements()]
               for key in bracket_keys(r)}
    for k, j in phi_keys(r):
        for x in groups[k - 1].elements():
            for y in groups[j - 1].elements():
                g = G.mul[D.embeddings[k - 1][x]][D.embeddings[j - 1][y]]
                comps = D.local(g)
                for q in range(1, r + 1):
                    c = comps[q - 1]
                    if q == k and c != x:
                        raise ShapeViolation(f"h_{k} h_{j} has slot {k} != h_{k}", k=k, j=j)
                    if q not in range(1, j + 1) and q != k and c != groups[q - 1].identity:
                        raise ShapeViolation(f"h_{k} h_{j} has a nontrivial slot {q}", k=k, j=j, slot=q)
                phi[(k, j)][x][y] = comps[j - 1]
                for i in range(1, j):
                    bracket[(k, j, i)][x][y] = comps[i - 1]
    return TotalSystem(groups, phi, bracket)


def roundtrip_verify(cand: SdpCandidate, system: Optional[TotalSystem] = None) -> bool:
    """The product map from the rebuilt external SDP to G is a bijective homomorphism."""
    D = Decomposition(cand)
    S = system if system is not None else extract_total_system(cand)
    T = CayleyTable(S, cap=max(4096, S.size()))
    images = [D.embed(T.decode(n)) for n in range(T.size)]
    if sorted(images) != list(cand.G.elements()):
        return False
    img = np.asarray(images)
    if not (cand.G.array[img[:, None], img[None, :]] == img[T.table]).all():
        return False
    return brute_force_associative(S, cap=max(512, S.size()), table=T).holds


def is_direct_product(cand: SdpCandidate) -> bool:
    """Every ordering of the factors is an SDP decomposition of G."""
    return all(check_internal_sdp(SdpCandidate(cand.G, perm))
               for perm in itertools.permutations(cand.factors))
