"""Small concrete groups with known SDP decompositions.

Each entry yields a group and a candidate whose factors are generated by
permutations written in 1-based cycle notation.
"""

from __future__ import annotations

from functools import lru_cache

from .groups import FiniteGroup, perm_from_cycles, permutation_group, symmetric_group
from .internal import SdpCandidate, candidate_from_generators, extract_total_system
from .system import TotalSystem

# name -> (degree, group generators, factor generators per level)
DECOMPOSITIONS = {
    # A3 x| <(12)>
    "S3": (3, [[(1, 2)], [(1, 2, 3)]],
           [[[(1, 2, 3)]], [[(1, 2)]]]),
    # V4 x| <(123)> x| <(12)>
    "S4": (4, [[(1, 2)], [(1, 2, 3, 4)]],
           [[[(1, 2), (3, 4)], [(1, 3), (2, 4)]], [[(1, 2, 3)]], [[(1, 2)]]]),
    # signed permutations of three letters (points 2m-1, 2m are +m, -m):
    # even sign changes x| 3-cycle x| signed swap x| sign flip with a swap
    "B3": (6, [[(1, 2)], [(1, 3, 5), (2, 4, 6)], [(1, 3), (2, 4)]],
           [[[(1, 2), (5, 6)], [(1, 2), (3, 4)]], [[(1, 3, 5), (2, 4, 6)]],
            [[(1, 4), (2, 3)]], [[(1, 2), (3, 5), (4, 6)]]]),
    # S4 on 1..4 times <(56)>; the third factor mixes both parts
    "S4xZ2": (6, [[(1, 2)], [(1, 2, 3, 4)], [(5, 6)]],
              [[[(1, 2), (3, 4)], [(1, 4), (2, 3)]], [[(1, 3, 4)]], [[(2, 3), (5, 6)]], [[(3, 4)]]]),
    # Sylow 2-subgroup of S8 (iterated wreath product of Z2), order 128
    "P128": (8, [[(1, 2)], [(1, 3), (2, 4)], [(1, 5), (2, 6), (3, 7), (4, 8)]],
             [[[(1, 4, 2, 3), (5, 7, 6, 8)], [(1, 2), (3, 4)]], [[(1, 5), (2, 6), (3, 7, 4, 8)]],
              [[(5, 7), (6, 8)]], [[(1, 7), (2, 8), (3, 6), (4, 5)]]]),
}


def _perm(n: int, cycles) -> tuple[int, ...]:
    return perm_from_cycles(n, *cycles)


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    if name.startswith("S") and name[1:].isdigit() and name not in DECOMPOSITIONS:
        return symmetric_group(int(name[1:]))
    n, gens, _ = DECOMPOSITIONS[name]
    return permutation_group([_perm(n, g) for g in gens], name=name)


@lru_cache(maxsize=None)
def named_candidate(name: str) -> SdpCandidate:
    n, _, levels = DECOMPOSITIONS[name]
    G = named_group(name)
    return candidate_from_generators(G, [[G.index_of(_perm(n, g)) for g in level] for level in levels])


@lru_cache(maxsize=None)
def named_system(name: str) -> TotalSystem:
    return extract_total_system(named_candidate(name))
