import pytest

from abelian_cremona.extensions import enumerate_extensions, extension_exists, max_cyclic_split
from abelian_cremona.groups import (
    all_groups,
    cyclic,
    direct_product,
    elementary,
    from_cyclic_factors,
    groups_of_order,
    rank,
    trivial_group,
)
from abelian_cremona.partitions import lr_coefficient
from abelian_cremona.verify import oracle_extensions

Z = from_cyclic_factors


def two_group(*parts):
    return Z([2 ** p for p in parts])


def test_classical_extensions():
    assert extension_exists(cyclic(2), cyclic(2), cyclic(4))
    assert extension_exists(cyclic(2), cyclic(2), elementary(2, 2))
    assert not extension_exists(cyclic(2), cyclic(2), cyclic(8))


def test_no_extension_with_lr_zero():
    assert lr_coefficient([3, 1], [1, 1], [1, 1]) == 0
    assert not extension_exists(elementary(2, 2), elementary(2, 2), Z([8, 2]))


def test_case_two_shapes_at_k1():
    H, K = elementary(2, 2), elementary(2, 3)
    allowed = {(2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)}  # valid shapes of the k=1 list
    for G in groups_of_order(32):
        assert extension_exists(H, K, G) is (G.type_at(2) in allowed)


def test_enumerate_examples():
    r = enumerate_extensions(cyclic(2), cyclic(2))
    assert {(m.group, m.split) for m in r.middles} == {(cyclic(4), False), (elementary(2, 2), True)}

    r = enumerate_extensions(elementary(2, 2), elementary(3, 3))
    assert r.groups == {direct_product(elementary(2, 2), elementary(3, 3))}
    assert r.middles[0].split

    r = enumerate_extensions(elementary(2, 2), Z([4, 4, 2]))
    assert r.groups == {two_group(3, 3, 1), two_group(3, 2, 2), two_group(3, 2, 1, 1),
                        two_group(2, 2, 2, 1), two_group(2, 2, 1, 1, 1)}
    assert [m.group for m in r.middles if m.split] == [two_group(2, 2, 1, 1, 1)]


def test_cap_reports_truncation():
    r = enumerate_extensions(elementary(2, 2), Z([4, 4, 2]), cap=2)
    assert r.truncated and len(r.middles) == 2
    assert any(m.split for m in r.middles)
    assert not enumerate_extensions(elementary(2, 2), Z([4, 4, 2]), cap=5).truncated


def test_max_cyclic_split():
    assert max_cyclic_split(Z([4, 2])) == (4, cyclic(2))
    assert max_cyclic_split(cyclic(6)) == (6, trivial_group())
    assert max_cyclic_split(Z([2, 2, 4, 3])) == (12, elementary(2, 2))
    with pytest.raises(ValueError):
        max_cyclic_split(trivial_group())


def pairs(bound):
    for H in all_groups(bound):
        for K in all_groups(bound // H.order):
            yield H, K


def test_membership_and_symmetry():
    for H, K in pairs(256):
        middles = enumerate_extensions(H, K).groups
        for G in groups_of_order(H.order * K.order):
            exists = extension_exists(H, K, G)
            assert (G in middles) is exists
            assert extension_exists(K, H, G) is exists


def test_split_member_and_ranks():
    for H, K in pairs(256):
        r = enumerate_extensions(H, K)
        split = [m.group for m in r.middles if m.split]
        assert split == [direct_product(H, K)]
        for G in r.groups:
            assert G.order == H.order * K.order
            assert max(rank(H), rank(K)) <= rank(G) <= rank(H) + rank(K)


def test_matches_oracle_small():
    for H, K in pairs(32):
        assert enumerate_extensions(H, K).groups == oracle_extensions(H, K)


def test_oracle_examples():
    assert oracle_extensions(cyclic(2), cyclic(2)) == {cyclic(4), elementary(2, 2)}
    assert oracle_extensions(elementary(2, 2), cyclic(2)) == {elementary(2, 3), Z([4, 2])}
    assert oracle_extensions(cyclic(3), cyclic(2)) == {cyclic(6)}
