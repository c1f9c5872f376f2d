import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdpkit.errors import MalformedTable, NoIdentity, NoInverse, NotAssociative
from sdpkit.groups import (FiniteGroup, FiniteMonoid, all_homomorphisms, complex_product, compose,
                           cyclic_group, direct_product, dump_group, generated_subgroup, generating_set,
                           is_homomorphism, is_normal, is_subgroup, load_group, normality_witness,
                           perm_from_cycles, permutation_group, subgroup_as_group, symmetric_group,
                           validate_group, validate_monoid)


def s3_elem(G, *cycles):
    return G.index_of(perm_from_cycles(3, *cycles))


def test_z2_table():
    G = validate_group([[0, 1], [1, 0]])
    assert G.identity == 0 and G.inv == (0, 1)


def test_identity_need_not_be_zero():
    # Z3 written with 2 as the identity
    relabel = {0: 2, 1: 0, 2: 1}
    n = 3
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            table[relabel[x]][relabel[y]] = relabel[(x + y) % n]
    G = validate_group(table)
    assert G.identity == 2
    assert all(G.mul[x][G.inv[x]] == 2 for x in G.elements())
    assert G.power(0, 3) == 2


def test_not_associative_has_witness():
    # a commutative loop-free table that is not associative
    t = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]
    with pytest.raises(NotAssociative) as e:
        validate_group(t)
    x, y, z = e.value.details["witness"]
    assert t[t[x][y]][z] != t[x][t[y][z]]


def test_no_identity():
    with pytest.raises(NoIdentity):
        validate_group([[0, 0], [0, 0]])


def test_no_inverse():
    # ({0,1}, max) is a monoid with identity 0; 1 has no inverse
    with pytest.raises(NoInverse):
        validate_group([[0, 1], [1, 1]])


@pytest.mark.parametrize("table", [[], [[0, 1], [1]], [[0, 2], [2, 0]]])
def test_malformed(table):
    with pytest.raises(MalformedTable):
        validate_group(table)


def test_monoid_target():
    M = validate_monoid([[0, 1], [1, 1]])
    assert isinstance(M, FiniteMonoid)
    assert M.identity == 0 and M.prod([1, 0, 1]) == 1
    assert isinstance(validate_monoid([[0, 1], [1, 0]]), FiniteGroup)


def test_perm_conventions():
    p = perm_from_cycles(3, (1, 2))
    q = perm_from_cycles(3, (2, 3))
    # q acts first
    assert compose(p, q) == tuple(p[x] for x in q)
    assert perm_from_cycles(3, (1, 2, 3)) == (1, 2, 0)


def test_symmetric_groups():
    S3 = symmetric_group(3)
    assert S3.order == 6 and not S3.is_abelian()
    assert symmetric_group(4).order == 24
    assert permutation_group([perm_from_cycles(4, (1, 2)), perm_from_cycles(4, (1, 2, 3, 4))]).order == 24


def test_s3_products_and_normality():
    G = symmetric_group(3)
    A3 = generated_subgroup(G, [s3_elem(G, (1, 2, 3))])
    T = generated_subgroup(G, [s3_elem(G, (1, 2))])
    assert A3.order == 3 and T.order == 2
    assert complex_product(G, [A3.members, T.members]) == frozenset(G.elements())
    assert is_normal(G, A3)
    assert not is_normal(G, T)
    g, h = normality_witness(G, T.members)
    assert G.conj(g, h) not in T.members


def test_subgroup_reindexing():
    G = symmetric_group(3)
    H, emb = subgroup_as_group(G, generated_subgroup(G, [s3_elem(G, (1, 2, 3))]).members)
    assert H.identity == 0 and emb[0] == G.identity
    for x in H.elements():
        for y in H.elements():
            assert emb[H.mul[x][y]] == G.mul[emb[x]][emb[y]]


def test_generating_set_generates():
    for G in (symmetric_group(4), direct_product(cyclic_group(2), cyclic_group(4))):
        assert generated_subgroup(G, generating_set(G)).order == G.order


@pytest.mark.parametrize("src,dst,count", [
    (cyclic_group(4), cyclic_group(2), 2),      # image of the generator: any x with 4x = 0
    (cyclic_group(3), symmetric_group(3), 3),   # elements of order dividing 3
    (symmetric_group(3), cyclic_group(2), 2),   # abelianization is Z2
    (symmetric_group(3), symmetric_group(3), 10),
])
def test_hom_counts(src, dst, count):
    homs = all_homomorphisms(src, dst)
    assert len(homs) == count
    assert all(is_homomorphism(src, dst, f) for f in homs)


def test_hom_count_brute_force_oracle():
    src, dst = cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))
    brute = [f for f in itertools.product(dst.elements(), repeat=4) if is_homomorphism(src, dst, f)]
    assert sorted(brute) == sorted(all_homomorphisms(src, dst))


def test_file_roundtrip(tmp_path):
    G = symmetric_group(3)
    dump_group(G, tmp_path / "g.json")
    H = load_group(tmp_path / "g.json")
    assert H.mul == G.mul and H.name == "S3"


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_group_laws_on_products(m, n, data):
    G = direct_product(cyclic_group(m), cyclic_group(n))
    x, y, z = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.op(G.op(x, y), z) == G.op(x, G.op(y, z))
    assert G.commutator(x, y) == G.identity
    assert G.op(G.conj(x, y), x) == G.op(x, y)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(4)), st.permutations(range(4)))
def test_commutator_identity_in_s4(p, q):
    G = symmetric_group(4)
    k, h = G.index_of(tuple(p)), G.index_of(tuple(q))
    assert G.commutator(k, h) == G.op(G.conj(k, h), G.inv[h])
    assert is_subgroup(G, generated_subgroup(G, [k, h]).members)
