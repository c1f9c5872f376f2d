"""Seeded experiments that test the sufficiency theorems on sampled systems.

Every experiment is a pure function of its arguments: the same seed gives
the same report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .assoc import (OK, CheckResult, Witness, all_elementary_hold, brute_force_associative, check_elementary,
                    check_elementary_component, check_H_H_R, check_H_R_R, check_phi_composition,
                    check_phi_multiplicative, check_rank_associative, check_sets, elementary_indices,
                    embed_level)
from .catalog import named_system
from .errors import SdpError
from .groups import (FiniteGroup, all_homomorphisms, cyclic_group, direct_product, perm_from_cycles,
                     permutation_group, symmetric_group)
from .hom import (assemble, brute_force_hom, check_commutator_criterion, check_hom_all, check_hom_pair,
                  check_hom_rank, component_failures)
from .magma import CayleyTable
from .system import TotalSystem, random_system, trivial_system, truncate_system

DEFAULT_SHAPE = "2|3,2|3,2|3"


# shapes -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def factor_group(token: str) -> FiniteGroup:
    """'n' is the cyclic group of order n; 'V4', 'S3' and 'D4' name the usual groups."""
    token = token.strip()
    if token == "V4":
        return direct_product(cyclic_group(2), cyclic_group(2))
    if token == "S3":
        return symmetric_group(3)
    if token == "D4":
        return permutation_group([perm_from_cycles(4, (1, 2, 3, 4)), perm_from_cycles(4, (1, 3))], name="D4")
    if token.startswith("Z"):
        token = token[1:]
    try:
        n = int(token)
    except ValueError:
        raise SdpError(f"unknown factor {token!r} in shape") from None
    if not 1 <= n <= 12:
        raise SdpError(f"factor order {n} outside 1..12")
    return cyclic_group(n)


def parse_shape(shape: str) -> list[list[str]]:
    """'2|3,2,S3' -> per-factor lists of alternatives."""
    out = [[t for t in part.split("|") if t.strip()] for part in shape.split(",")]
    if not out or any(not alts for alts in out):
        raise SdpError(f"malformed shape {shape!r}")
    for alts in out:
        for t in alts:
            factor_group(t)
    return out


def sample_groups(shape: Sequence[Sequence[str]], rng: random.Random) -> list[FiniteGroup]:
    return [factor_group(rng.choice(list(alts))) for alts in shape]


# associativity ------------------------------------------------------------------

@dataclass
class AssocSample:
    index: int
    orders: tuple
    elementary: bool
    brute: bool
    rank_premises: list          # k for which A[[k-1]] and every A[k,j,i] hold
    rank_failures: list          # such k where A[[k]] nonetheless fails
    lemma_disagreements: list    # (k, which) where a phi-form verdict differs from the direct check

    def to_dict(self) -> dict:
        return {"index": self.index, "orders": list(self.orders), "elementary": self.elementary,
                "brute": self.brute, "rank_premises": self.rank_premises,
                "rank_failures": self.rank_failures,
                "lemma_disagreements": [list(x) for x in self.lemma_disagreements]}


@dataclass
class AssocReport:
    seed: int
    count: int
    shape: str
    trivial_bias: float
    samples: list = field(default_factory=list)

    def matrix(self) -> dict:
        m = {"both_pass": 0, "both_fail": 0, "elementary_only": 0, "brute_only": 0}
        for s in self.samples:
            key = ("both_pass" if s.brute else "elementary_only") if s.elementary else \
                  ("brute_only" if s.brute else "both_fail")
            m[key] += 1
        return m

    @property
    def disagreements(self) -> list[int]:
        return [s.index for s in self.samples if s.elementary != s.brute]

    @property
    def rank_failures(self) -> list:
        return [(s.index, k) for s in self.samples for k in s.rank_failures]

    @property
    def lemma_disagreements(self) -> list:
        return [(s.index, *x) for s in self.samples for x in s.lemma_disagreements]

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.rank_failures or self.lemma_disagreements)

    def to_dict(self, samples: bool = False) -> dict:
        d = {"kind": "assoc", "seed": self.seed, "count": self.count, "shape": self.shape,
             "trivial_bias": self.trivial_bias, "agreement": self.matrix(),
             "disagreements": self.disagreements,
             "rank_implication_failures": [list(x) for x in self.rank_failures],
             "phi_form_disagreements": [list(x) for x in self.lemma_disagreements], "ok": self.ok}
        if samples:
            d["samples"] = [s.to_dict() for s in self.samples]
        return d


def assoc_sample(S: TotalSystem, index: int = 0) -> AssocSample:
    T = CayleyTable(S)
    elem = all_elementary_hold(S, T)
    brute = brute_force_associative(S, table=T).holds
    premises, failures = [], []
    for k in range(1, S.r + 1):
        lower = check_rank_associative(S, k - 1, table=T).holds
        local = all(check_elementary(S, k, j, i, table=T).holds
                    for j in range(1, k + 1) for i in range(1, j + 1))
        if lower and local:
            premises.append(k)
            if not check_rank_associative(S, k, table=T).holds:
                failures.append(k)
    lemma = []
    for k in range(2, S.r + 1):
        if check_phi_multiplicative(S, k, table=T).holds != check_H_R_R(S, k, table=T).holds:
            lemma.append((k, "multiplicative"))
        if check_phi_composition(S, k, table=T).holds != check_H_H_R(S, k, table=T).holds:
            lemma.append((k, "composition"))
    return AssocSample(index, S.orders(), elem, brute, premises, failures, lemma)


def assoc_experiment(seed: int, count: int, shape: str = DEFAULT_SHAPE,
                     trivial_bias: float = 0.5) -> AssocReport:
    """Elementary conditions versus brute force on sampled normalized systems."""
    rng = random.Random(seed)
    choices = parse_shape(shape)
    report = AssocReport(seed, count, shape, trivial_bias)
    for n in range(count):
        S = random_system(sample_groups(choices, rng), rng, trivial_bias=trivial_bias)
        report.samples.append(assoc_sample(S, n))
    return report


# componentwise conditions -------------------------------------------------------

def vacuous_components_hold(S: TotalSystem) -> list[tuple[int, int, int, int]]:
    """Every (k, j, i, l) with k > j > i and l > i whose component check fails (expected: none)."""
    T = CayleyTable(S)
    bad = []
    for k in range(3, S.r + 1):
        for j in range(2, k):
            for i in range(1, j):
                for l in range(i + 1, S.r + 1):
                    if not check_elementary_component(S, k, j, i, l, table=T).holds:
                        bad.append((k, j, i, l))
    return bad


def vacuous_experiment(seed: int, count: int, shape: str = "2|3,2|3,2|3") -> dict:
    rng = random.Random(seed)
    choices = parse_shape(shape)
    failures = []
    nonassoc = 0
    for n in range(count):
        S = random_system(sample_groups(choices, rng), rng)
        nonassoc += not all_elementary_hold(S)
        failures.extend([n, *x] for x in vacuous_components_hold(S))
    return {"kind": "vacuous", "seed": seed, "count": count, "shape": shape,
            "non_associative_samples": nonassoc, "failures": failures, "ok": not failures}


def soundness_failures(S: TotalSystem, mode: str = "literal") -> list[tuple[int, int, int, int]]:
    """Indices where the symbolic verdict and the numeric component check disagree."""
    from .symbolic.engine import generate_conditions
    from .symbolic.instantiate import holds_everywhere

    T = CayleyTable(S)
    bad = []
    for k in range(1, S.r + 1):
        for j in range(1, k + 1):
            for i in range(1, j + 1):
                for c in generate_conditions(k, j, i, mode):
                    numeric = check_elementary_component(S, k, j, i, c.l, table=T).holds
                    if holds_everywhere(c, S) != numeric:
                        bad.append(c.indices)
    return bad


def soundness_experiment(seed: int, count: int, shape: str = DEFAULT_SHAPE,
                         trivial_bias: float = 0.5) -> dict:
    rng = random.Random(seed)
    choices = parse_shape(shape)
    failures = []
    for n in range(count):
        S = random_system(sample_groups(choices, rng), rng, trivial_bias=trivial_bias)
        failures.extend([n, *x] for x in soundness_failures(S))
    return {"kind": "soundness", "seed": seed, "count": count, "shape": shape,
            "failures": failures, "ok": not failures}


# identities valid on every normalized system ------------------------------------

def _result(ok: np.ndarray, describe) -> CheckResult:
    hits = np.argwhere(~ok)
    if not len(hits):
        return OK
    return CheckResult(False, describe(*(int(x) for x in hits[0])))


def identity_checks(S: TotalSystem, table: Optional[CayleyTable] = None) -> dict[str, CheckResult]:
    """Identities of the construction that need no axioms on the system."""
    T = table if table is not None else CayleyTable(S)
    t = T.table
    out: dict[str, CheckResult] = {}
    N = T.size
    ar = np.arange(N)

    # a.v = phi_a(v).a for a in H_k, v in R_{k-1}
    res = OK
    for k in range(2, S.r + 1):
        E = elementary_indices(T, k)
        R = embed_level(T, k - 1)
        lhs = t[E[:, None], R[None, :]]
        rhs = t[R[T.phis[k]], E[:, None]]
        r_ = _result(lhs == rhs, lambda x, y: Witness((T.decode(E[x]), T.decode(R[y])),
                                                      T.decode(lhs[x, y]), T.decode(rhs[x, y])))
        res = res if not res.holds else r_
    out["pull_through"] = res

    # u.(v.c) = (u.v).c for u, v in R_{k-1}, c in H_k
    res = OK
    for k in range(2, S.r + 1):
        R = embed_level(T, k - 1)
        r_ = check_sets(T, R, R, elementary_indices(T, k))
        res = res if not res.holds else r_
    out["lower_lower_top"] = res

    # a.(v.c) = (a.v).c for a in H_k, v in R_i, c in H_j, i < j < k
    res = OK
    for k in range(3, S.r + 1):
        for j in range(2, k):
            for i in range(1, j):
                r_ = check_sets(T, elementary_indices(T, k), embed_level(T, i), elementary_indices(T, j))
                res = res if not res.holds else r_
    out["top_lower_middle"] = res

    # mu agrees with the componentwise product on noninterfering pairs
    comps = np.stack(T.components(S.r))            # (r, N)
    ident = np.asarray(S.unit())[:, None]
    nontriv = comps != ident
    levels = np.arange(1, S.r + 1)[:, None]
    rank = np.where(nontriv, levels, 0).max(axis=0)
    corank = np.where(nontriv, levels, S.r + 1).min(axis=0)
    mask = rank[:, None] <= corank[None, :]
    prod = np.zeros((N, N), dtype=np.int64)
    for q in range(S.r):
        prod = prod * T.orders[q] + S.group(q + 1).array[comps[q][:, None], comps[q][None, :]]
    out["noninterfering"] = _result(~mask | (t == prod), lambda x, y: Witness(
        (T.decode(x), T.decode(y)), T.decode(t[x, y]), T.decode(prod[x, y])))

    # mu_{k+1} extends mu_k
    res = OK
    for k in range(1, S.r):
        emb = np.arange(T.level_size(k)) * T.orders[k] + S.group(k + 1).identity
        big = T.levels[k][emb[:, None], emb[None, :]]
        r_ = _result(big == emb[T.levels[k - 1]], lambda x, y: Witness(
            (T.decode(x, k), T.decode(y, k)), T.decode(big[x, y], k + 1),
            T.decode(emb[T.levels[k - 1][x, y]], k + 1)))
        res = res if not res.holds else r_
    out["extension"] = res

    # the unit tuple is a two-sided unit
    e = T.encode(S.unit())
    out["unit"] = _result(np.concatenate([t[e] == ar, t[:, e] == ar])[:, None],
                          lambda x, _: Witness((T.decode(x % N),), T.decode(t[e, x % N]), T.decode(x % N)))

    # mu restricts to each factor's own law
    res = OK
    for i in range(1, S.r + 1):
        E = elementary_indices(T, i)
        lhs = t[E[:, None], E[None, :]]
        rhs = E[S.group(i).array]
        r_ = _result(lhs == rhs, lambda x, y: Witness((T.decode(E[x]), T.decode(E[y])),
                                                      T.decode(lhs[x, y]), T.decode(rhs[x, y])))
        res = res if not res.holds else r_
    out["factor_restriction"] = res
    return out


def identities_experiment(seed: int, count: int, shapes: Sequence[str] = ("2|3,2|3,2|3", "2,2,2,2", "3,2|3")) -> dict:
    rng = random.Random(seed)
    specs = [parse_shape(s) for s in shapes]
    failures = []
    nonassoc = 0
    for n in range(count):
        S = random_system(sample_groups(specs[n % len(specs)], rng), rng)
        T = CayleyTable(S)
        nonassoc += not all_elementary_hold(S, T)
        for name, res in identity_checks(S, T).items():
            if not res.holds:
                failures.append({"sample": n, "identity": name, "witness": res.witness.to_dict()})
    return {"kind": "identities", "seed": seed, "count": count, "shapes": list(shapes),
            "non_associative_samples": nonassoc, "failures": failures, "ok": not failures}


# homomorphisms ------------------------------------------------------------------

HOM_SOURCES = ("S3", "S4", "D4", "A4", "Z2xZ3", "Z2xZ2xZ2")
HOM_TARGETS = ("2", "3", "4", "V4", "6", "S3", "D4", "8")


@lru_cache(maxsize=None)
def hom_source(name: str) -> TotalSystem:
    if name == "D4":
        from .internal import candidate_from_generators, extract_total_system
        G = factor_group("D4")
        r4 = G.index_of(perm_from_cycles(4, (1, 2, 3, 4)))
        s = G.index_of(perm_from_cycles(4, (1, 3)))
        return extract_total_system(candidate_from_generators(G, [[r4], [s]]))
    if name == "A4":
        return truncate_system(named_system("B3"), 2)
    if name == "Z2xZ3":
        return trivial_system([cyclic_group(2), cyclic_group(3)])
    if name == "Z2xZ2xZ2":
        return trivial_system([cyclic_group(2)] * 3)
    return named_system(name)


@lru_cache(maxsize=None)
def _homs(source: FiniteGroup, target: FiniteGroup) -> list:
    return all_homomorphisms(source, target)


@dataclass
class HomSample:
    index: int
    source: str
    target: str
    kind: str
    pairs: bool
    brute: bool
    rank_failures: list
    commutator: Optional[bool]

    def to_dict(self) -> dict:
        return {"index": self.index, "source": self.source, "target": self.target, "kind": self.kind,
                "pairs": self.pairs, "brute": self.brute, "rank_failures": self.rank_failures,
                "commutator": self.commutator}


@dataclass
class HomReport:
    seed: int
    count: int
    samples: list = field(default_factory=list)

    @property
    def disagreements(self) -> list[int]:
        return [s.index for s in self.samples if s.pairs != s.brute]

    @property
    def commutator_disagreements(self) -> list[int]:
        return [s.index for s in self.samples if s.commutator is not None and s.commutator != s.pairs]

    @property
    def rank_failures(self) -> list:
        return [(s.index, k) for s in self.samples for k in s.rank_failures]

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.commutator_disagreements or self.rank_failures)

    def to_dict(self, samples: bool = False) -> dict:
        m = {"both_pass": 0, "both_fail": 0, "pairs_only": 0, "brute_only": 0}
        for s in self.samples:
            m[("both_pass" if s.brute else "pairs_only") if s.pairs else
              ("brute_only" if s.brute else "both_fail")] += 1
        d = {"kind": "hom", "seed": self.seed, "count": self.count, "agreement": m,
             "commutator_checked": sum(s.commutator is not None for s in self.samples),
             "disagreements": self.disagreements,
             "commutator_disagreements": self.commutator_disagreements,
             "rank_implication_failures": [list(x) for x in self.rank_failures], "ok": self.ok}
        if samples:
            d["samples"] = [s.to_dict() for s in self.samples]
        return d


def hom_sample(S: TotalSystem, target: FiniteGroup, components, index: int = 0,
               source: str = "", target_name: str = "", kind: str = "") -> HomSample:
    m = assemble(S, target, components)
    pairs = check_hom_all(m).holds
    brute = brute_force_hom(m).holds
    failures = []
    for k in range(1, S.r + 1):
        lower = check_hom_rank(m, k - 1).holds
        local = all(check_hom_pair(m, k, j).holds for j in range(1, k + 1))
        if lower and local and not check_hom_rank(m, k).holds:
            failures.append(k)
    commutator = None
    if not component_failures(m):
        commutator = check_commutator_criterion(m, check_associative=False).holds
    return HomSample(index, source, target_name, kind, pairs, brute, failures, commutator)


def hom_experiment(seed: int, count: int, hom_fraction: float = 0.7) -> HomReport:
    """Per-factor maps into small groups: pair conditions versus brute force.

    With probability ``hom_fraction`` every component is a uniformly chosen
    homomorphism; otherwise components are random unit-preserving maps.
    """
    rng = random.Random(seed)
    report = HomReport(seed, count)
    for n in range(count):
        src = rng.choice(HOM_SOURCES)
        tname = rng.choice(HOM_TARGETS)
        S, K = hom_source(src), factor_group(tname)
        if rng.random() < hom_fraction:
            kind = "homs"
            comps = [rng.choice(_homs(S.group(i), K)) for i in range(1, S.r + 1)]
        else:
            kind = "arbitrary"
            comps = [[K.identity if x == S.group(i).identity else rng.randrange(len(K))
                      for x in S.group(i).elements()] for i in range(1, S.r + 1)]
        report.samples.append(hom_sample(S, K, comps, n, src, tname, kind))
    return report
