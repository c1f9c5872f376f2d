"""Formal similarity of componentwise conditions.

Two conditions are similar when they agree after every level is replaced
by its rank among the distinct levels occurring in the condition (the
indices k, j, i, l and every atom level).
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import ConditionForm, condition
from .terms import Word, atom_levels, relevel


@dataclass(frozen=True)
class SimilarityKey:
    pattern: tuple[int, int, int, int]
    lhs: Word
    rhs: Word


def similarity_key(c: ConditionForm) -> SimilarityKey:
    levels = set(c.indices) | set(atom_levels(c.lhs)) | set(atom_levels(c.rhs))
    rank = {lvl: n for n, lvl in enumerate(sorted(levels), start=1)}
    f = rank.__getitem__
    return SimilarityKey(tuple(f(x) for x in c.indices), relevel(c.lhs, f), relevel(c.rhs, f))


def canonical_indices(max_k: int) -> list[tuple[int, int, int, int]]:
    """Representatives A[k,k-1,i;1] (1 <= i < k) and A[k,k,k-1;1] for 2 <= k <= max_k."""
    out = []
    for k in range(2, max_k + 1):
        out.extend((k, k - 1, i, 1) for i in range(1, k))
        out.append((k, k, k - 1, 1))
    return out


def canonical_representatives(max_k: int, mode: str = "reduced") -> list[ConditionForm]:
    if max_k < 2:
        raise ValueError("max_k must be at least 2")
    return [condition(k, j, i, l, mode) for k, j, i, l in canonical_indices(max_k)]


def class_ids(forms, mode: str = "reduced") -> list[str]:
    """Label each condition by the canonical representative it is similar to.

    The representative is found through the index reduction that the
    similarity relations allow; conditions whose key disagrees with that
    representative's key are labelled with their own indices.  Vacuous
    conditions (those of A[k,k,k], the factor's own associativity) form a
    class of their own.
    """
    out = []
    for c in forms:
        if c.vacuous:
            out.append("vacuous")
            continue
        k, j, i, l = c.indices
        rep = representative_indices(k, j, i, l)
        rc = condition(*rep, mode=mode)
        out.append(rc.label() if similarity_key(rc) == similarity_key(c) else c.label())
    return out


def representative_indices(k: int, j: int, i: int, l: int) -> tuple[int, int, int, int]:
    """Shift all indices down by l-1, then drop k to j+1 (or collapse k = j to i+1)."""
    s = l - 1
    k, j, i = k - s, j - s, i - s
    if k > j:
        return (j + 1, j, i, 1)
    return (i + 1, i + 1, i, 1)


def similarity_pairs(max_index: int) -> list[tuple[int, tuple, tuple]]:
    """Every instance (relation, left, right) of the four index-shift similarities.

    1: A[k+1,j,i;l] ~ A[k,j,i;l]      2: A[k,j,i;l] ~ A[k+1,j+1,i+1;l+1]
    3: A[k+1,k+1,i;l] ~ A[k,k,i;l]    4: A[k,k,i;l] ~ A[k+1,k+1,i+1;l+1]
    for k > j > i >= l, keeping every index at most ``max_index``.
    """
    out = []
    for k in range(3, max_index):
        for j in range(2, k):
            for i in range(1, j):
                for l in range(1, i + 1):
                    out.append((1, (k + 1, j, i, l), (k, j, i, l)))
                    out.append((2, (k, j, i, l), (k + 1, j + 1, i + 1, l + 1)))
    for k in range(2, max_index):
        for i in range(1, k):
            for l in range(1, i + 1):
                out.append((3, (k + 1, k + 1, i, l), (k, k, i, l)))
                out.append((4, (k, k, i, l), (k + 1, k + 1, i + 1, l + 1)))
    return out


def similarity_failures(max_index: int, mode: str = "reduced") -> list[tuple[int, tuple, tuple]]:
    return [(n, p, q) for n, p, q in similarity_pairs(max_index)
            if similarity_key(condition(*p, mode=mode)) != similarity_key(condition(*q, mode=mode))]
