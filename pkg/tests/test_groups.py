import numpy as np
import pytest
from hypothesis import given, strategies as st

from eqtt.groups import (GroupError, NotASubgroupError, OrderCapExceeded, PermGroup,
                         UnknownClassError, compose, cyclic, direct_product, index, is_normal,
                         is_subconjugate, n_transporter_size, normalizer, perm_from_cycles,
                         perm_to_cycles, resolve_class, symmetric)

from conftest import CORPUS, elements_of, group
import oracles


def test_construct_orders():
    assert cyclic(1).order == 1
    assert symmetric(3).order == 6
    V = group("cyclic:2 x cyclic:2")
    assert V.order == 4 and V.exponent == 2
    assert group("dihedral:8").order == 8
    assert group("alt:5").order == 60
    assert group("sym:4").order == 24


def test_empty_generators_is_trivial():
    assert PermGroup(3, []).order == 1


def test_malformed_permutation():
    with pytest.raises(GroupError):
        PermGroup(3, [(0, 0, 1)])
    with pytest.raises(GroupError):
        PermGroup(3, [(0, 1)])


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        symmetric(5, cap=100)
    assert symmetric(5, cap=120).order == 120


def test_order_cap_env(monkeypatch):
    monkeypatch.setenv("EQTT_ORDER_CAP", "10")
    with pytest.raises(OrderCapExceeded):
        symmetric(4)


@pytest.mark.parametrize("spec", CORPUS + ["sym:4", "alt:4"])
def test_table_is_group_law(spec):
    G = group(spec)
    els = elements_of(G)
    assert els[0] == tuple(range(G.degree))
    assert len(set(els)) == G.order
    rng = np.random.default_rng(0)
    for _ in range(200):
        i, j = rng.integers(G.order, size=2)
        assert els[G.mul[i, j]] == oracles.pmul(els[i], els[j])
    assert all(G.mul[g, G.inv[g]] == 0 for g in range(G.order))
    for g in G.generators:
        assert G.index_of(g) >= 0


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:4", "sym:3", "dihedral:8",
                                  "cyclic:2 x cyclic:2", "cyclic:6", "sym:4", "cyclic:8",
                                  "cyclic:2 x cyclic:2 x cyclic:2", "alt:4"])
def test_subgroups_match_brute_force(spec):
    G = group(spec)
    got = {frozenset(elements_of(G, s.members)) for s in G.subgroups}
    assert len(got) == len(G.subgroups)
    assert got == oracles.brute_subgroups(elements_of(G))


def test_known_lattice_sizes():
    expected = {"sym:3": (6, 4), "cyclic:4": (3, 3), "dihedral:8": (10, 8), "sym:4": (30, 11),
                "alt:4": (10, 5), "cyclic:1": (1, 1), "alt:5": (59, 9)}
    for spec, (nsub, ncls) in expected.items():
        G = group(spec)
        assert (len(G.subgroups), len(G.classes)) == (nsub, ncls), spec


def test_subgroups_sorted_and_classes_ordered(small_group):
    G = small_group
    keys = [s.sort_key for s in G.subgroups]
    assert keys == sorted(keys)
    cls = G.classes
    assert cls[0].order == 1 and cls[-1].order == G.order
    assert [c.order for c in cls] == sorted(c.order for c in cls)


def test_s3_classes():
    G = group("sym:3")
    assert [c.order for c in G.classes] == [1, 2, 3, 6]
    assert [c.class_size for c in G.classes] == [1, 3, 1, 1]
    assert [c.name for c in G.classes] == ["C_1#0", "C_2#0", "C_3#0", "O6#0"]


def test_c4_classes_all_normal():
    G = group("cyclic:4")
    assert [c.class_size for c in G.classes] == [1, 1, 1]


def test_classes_partition_and_orbit_stabilizer(small_group):
    G = small_group
    seen = []
    for c in G.classes:
        for s in c.conjugates:
            seen.append(s.members)
        assert c.class_size * normalizer(G, c.representative).order == G.order
        assert c.normalizer_order == normalizer(G, c.representative).order
    assert sorted(seen) == sorted(s.members for s in G.subgroups)


def test_conjugacy_matches_naive(small_group):
    G = small_group
    els = elements_of(G)
    reps = [frozenset(elements_of(G, c.representative.members)) for c in G.classes]
    lookup = oracles.class_lookup(els, reps)
    for s in G.subgroups:
        assert lookup[frozenset(elements_of(G, s.members))] == G.class_of(s)


def test_transporter_examples():
    G = group("sym:3")
    one, c2, c3, s3 = (c.representative for c in G.classes)
    for K in (one, c2, c3, s3):
        assert n_transporter_size(G, one, K) == 6
    assert n_transporter_size(G, c2, c2) == 2
    assert n_transporter_size(G, c3, c2) == 0
    assert is_normal(G, c3) and not is_normal(G, c2)
    assert index(G, c2) == 3
    assert is_subconjugate(G, one, c2)


def test_subconjugacy_vs_transporter_vs_cosets(small_group):
    G = small_group
    els = elements_of(G)
    for a in G.classes:
        for b in G.classes:
            H, K = a.representative, b.representative
            t = n_transporter_size(G, H, K)
            fixed = oracles.fixed_cosets(els, elements_of(G, H.members), elements_of(G, K.members))
            assert is_subconjugate(G, H, K) == (t > 0) == (fixed > 0)


def test_non_subgroup_inputs():
    G, Gp = group("sym:3"), group("cyclic:3")
    with pytest.raises(NotASubgroupError):
        n_transporter_size(G, G.trivial, Gp.whole)
    with pytest.raises(NotASubgroupError):
        G.subgroup([0, 1, 2])
    with pytest.raises(NotASubgroupError):
        G.subgroup([1])


def test_resolve_class():
    G = group("sym:3")
    assert resolve_class(G, "1").order == 1
    assert resolve_class(G, "G").order == 6
    assert resolve_class(G, "C_3").order == 3
    assert resolve_class(G, "O6#0").order == 6
    with pytest.raises(UnknownClassError):
        resolve_class(G, "A_7")
    V = group("cyclic:2 x cyclic:2")
    with pytest.raises(UnknownClassError, match="ambiguous"):
        resolve_class(V, "C_2")


def test_cycles_round_trip():
    p = perm_from_cycles(5, [(0, 3), (1, 2, 4)])
    assert perm_to_cycles(p) == "(0 3)(1 2 4)"
    assert perm_to_cycles(tuple(range(4))) == "()"


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_compose_matches_oracle(a, b):
    assert compose(tuple(a), tuple(b)) == oracles.pmul(tuple(a), tuple(b))


def test_direct_product_structure():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6 and G.exponent == 6
    assert len(G.subgroups) == 4
