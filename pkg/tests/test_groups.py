import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nilpotentizer import catalog, groups
from nilpotentizer.bitsets import bits_from_indices, bits_to_indices, full_mask
from nilpotentizer.groups import (
    GroupBuildError,
    build_group,
    center,
    centralizer,
    centralizer_of_set,
    commutator,
    direct_product,
    element_order,
    generated_subgroup,
    is_closed_set,
    is_maximal_subgroup,
    is_normal,
    left_normed_commutator,
    pair_closure_bits,
    quotient,
    subgroup_from_bits,
)

import oracles
from conftest import label_index

# Latin square with identity and two-sided inverses that is not associative
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


# -- construction ---------------------------------------------------------------


def test_build_cyclic_order6_is_abelian():
    G = build_group(catalog.cyclic_description(6))
    assert G.order == 6
    assert (G.table == G.table.T).all()


def test_build_s4_matches_oracle_closure(s4):
    oracle = oracles.closure([oracles.cyc(4, (1, 2)), oracles.cyc(4, (1, 2, 3, 4))])
    assert s4.order == len(oracle) == 24
    # the full table agrees with tuple composition element by element
    perms = [oracles.cyc(4, *_cycles_of(s4.labels[i])) for i in range(24)]
    for a in range(24):
        for b in range(24):
            assert perms[s4.table[a, b]] == oracles.compose(perms[a], perms[b])


def _cycles_of(label):
    if label == "()":
        return []
    chunks = label.replace("(", " ").split(")")
    return [tuple(int(p) for p in c.split()) for c in chunks if c.strip()]


def test_identity_sits_at_zero(s4):
    assert s4.labels[0] == "()"
    n = s4.order
    assert (s4.table[0] == np.arange(n)).all()
    assert (s4.table[:, 0] == np.arange(n)).all()


def test_build_psl27_order():
    G = catalog.get_group("PSL(2,7)")
    assert G.order == 168


def test_cayley_build_roundtrip():
    c6 = build_group(catalog.cyclic_description(6))
    desc = {"type": "cayley", "order": 6, "identity": 0, "table": c6.table.tolist()}
    rebuilt = build_group(desc)
    assert rebuilt.fingerprint == c6.fingerprint


def test_cayley_rejects_latin_violation():
    bad = [[0, 1], [1, 1]]
    with pytest.raises(GroupBuildError):
        build_group({"type": "cayley", "order": 2, "identity": 0, "table": bad})


def test_cayley_rejects_nonassociative_loop():
    with pytest.raises(GroupBuildError, match="associativity"):
        build_group({"type": "cayley", "order": 5, "identity": 0, "table": NONASSOC_LOOP})


def test_rejects_non_permutation_generator():
    with pytest.raises(ValueError):
        build_group({"type": "permutation", "degree": 3, "generators": ["(1 1 2)"]})


def test_rejects_identity_not_zero():
    with pytest.raises(GroupBuildError):
        build_group({"type": "cayley", "order": 2, "identity": 1,
                     "table": [[0, 1], [1, 0]]})


def test_order_cap_enforced():
    desc = {"type": "permutation", "degree": 7, "generators": ["(1 2 3 4 5 6 7)"]}
    with pytest.raises(GroupBuildError, match="cap"):
        build_group(desc, max_order=5)


def test_unknown_description_type():
    with pytest.raises(GroupBuildError):
        build_group({"type": "mystery"})


def test_fingerprint_is_stable_and_distinct(s3, s4):
    again = catalog.get_group("S3")
    assert again.fingerprint == s3.fingerprint
    assert s3.fingerprint != s4.fingerprint


# -- element arithmetic ------------------------------------------------------------


def test_element_order_examples(s4):
    assert element_order(s4, 0) == 1
    assert element_order(s4, label_index(s4, "(1 2)(3 4)")) == 2
    assert element_order(s4, label_index(s4, "(1 2 3 4)")) == 4


def test_element_orders_divide_group_order(s4, a5):
    for G in (s4, a5):
        assert all(G.order % element_order(G, a) == 0 for a in range(G.order))


def test_commutator_examples(s3):
    a = label_index(s3, "(1 2)")
    b = label_index(s3, "(1 2 3)")
    assert s3.labels[commutator(s3, a, b)] == "(1 3 2)"
    assert commutator(s3, a, a) == 0
    # commuting pair
    assert commutator(s3, b, s3.mul(b, b)) == 0


def test_commutator_iff_commute(s4):
    for a in range(s4.order):
        for b in range(s4.order):
            assert (commutator(s4, a, b) == 0) == (s4.mul(a, b) == s4.mul(b, a))


def test_left_normed_base_case(s4):
    for a in range(s4.order):
        assert left_normed_commutator(s4, [a]) == a


def test_left_normed_length_two_agrees(s4):
    for a in range(0, s4.order, 3):
        for b in range(0, s4.order, 3):
            assert left_normed_commutator(s4, [a, b]) == commutator(s4, a, b)


def test_left_normed_abelian_vanishes():
    c12 = build_group(catalog.cyclic_description(12))
    assert left_normed_commutator(c12, [3, 5, 7]) == 0
    assert left_normed_commutator(c12, [1, 2]) == 0


def test_left_normed_matches_oracle(s4):
    perms = [oracles.cyc(4, *_cycles_of(s4.labels[i])) for i in range(24)]
    word = [1, 5, 9, 2]
    expected = oracles.left_normed([perms[i] for i in word])
    assert perms[left_normed_commutator(s4, word)] == expected


def test_left_normed_rejects_empty(s4):
    with pytest.raises(ValueError):
        left_normed_commutator(s4, [])


# -- subgroups ------------------------------------------------------------------------


def test_generated_subgroup_examples(s4):
    assert generated_subgroup(s4, []).size == 1
    H = generated_subgroup(s4, [label_index(s4, "(1 2 3)"), label_index(s4, "(1 2)")])
    assert H.size == 6


def test_generated_subgroup_idempotent(s4):
    H = generated_subgroup(s4, [label_index(s4, "(1 2 3 4)")])
    again = generated_subgroup(s4, list(H.members()))
    assert again.bits == H.bits


def test_subgroup_size_divides_order(s4):
    for g in range(s4.order):
        assert s4.order % generated_subgroup(s4, [g]).size == 0


def test_pair_closure_matches_generated(s4):
    for x in range(0, 24, 5):
        for y in range(0, 24, 7):
            assert pair_closure_bits(s4, x, y) == generated_subgroup(s4, [x, y]).bits


def test_subgroup_from_bits_validates(s4):
    v4 = [0] + [label_index(s4, lab) for lab in ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")]
    sub = subgroup_from_bits(s4, bits_from_indices(v4))
    assert sub.size == 4
    with pytest.raises(ValueError):
        subgroup_from_bits(s4, bits_from_indices([0, 1]) | bits_from_indices([5]))


def test_is_closed_set_matches_oracle(s4):
    nil16 = bits_from_indices([0, 1, 2, 3])
    assert is_closed_set(s4, generated_subgroup(s4, [1, 2]).bits)
    # a non-closed set: two elements whose product escapes
    a = label_index(s4, "(1 2)")
    b = label_index(s4, "(3 4)")
    raw = bits_from_indices([0, a, b])
    assert not is_closed_set(s4, raw)
    del nil16


def test_centralizer_examples(s4, a5):
    assert centralizer(s4, 0).size == s4.order
    x5 = next(i for i in range(60) if element_order(a5, i) == 5)
    assert centralizer(a5, x5).size == 5


def test_centralizer_matches_oracle(s4):
    perms = [oracles.cyc(4, *_cycles_of(s4.labels[i])) for i in range(24)]
    for x in range(0, 24, 4):
        expected = oracles.centralizer(perms, perms[x])
        got = {perms[i] for i in centralizer(s4, x).members()}
        assert got == expected


def test_centralizer_of_set(s4):
    whole = centralizer_of_set(s4, s4.whole_set())
    assert whole.size == 1  # trivial center
    empty = centralizer_of_set(s4, s4.element_set([]))
    assert empty.size == s4.order


def test_center_examples(a5, sl25):
    c12 = build_group(catalog.cyclic_description(12))
    assert center(c12).size == 12
    assert center(a5).size == 1
    assert center(sl25).size == 2


def test_owner_mismatch_rejected(s3, s4):
    H = generated_subgroup(s3, [1])
    with pytest.raises(groups.OwnerMismatchError):
        s4.check_owner(H)


# -- normality, quotients, maximality ---------------------------------------------------


def test_is_normal(s4):
    a4 = generated_subgroup(s4, [label_index(s4, "(1 2 3)"), label_index(s4, "(2 3 4)")])
    assert a4.size == 12 and is_normal(s4, a4)
    h2 = generated_subgroup(s4, [label_index(s4, "(1 2)")])
    assert not is_normal(s4, h2)


def test_quotient_by_trivial_is_same_table(s4):
    q = quotient(s4, generated_subgroup(s4, []))
    assert q.group.order == 24
    assert (q.group.table == s4.table).all()
    assert q.projection == tuple(range(24))


def test_quotient_by_whole_is_trivial(s4):
    whole = subgroup_from_bits(s4, full_mask(24), verify=False)
    q = quotient(s4, whole)
    assert q.group.order == 1


def test_quotient_s4_by_v4_is_nonabelian_order6(s4):
    v4_members = [0] + [label_index(s4, lab)
                        for lab in ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")]
    v4 = subgroup_from_bits(s4, bits_from_indices(v4_members))
    q = quotient(s4, v4)
    assert q.group.order == 6
    assert (q.group.table != q.group.table.T).any()
    # projection is a homomorphism
    for a in range(0, 24, 5):
        for b in range(0, 24, 5):
            assert q.projection[s4.mul(a, b)] == q.group.mul(q.projection[a], q.projection[b])


def test_quotient_rejects_non_normal(s4):
    h2 = generated_subgroup(s4, [label_index(s4, "(1 2)")])
    with pytest.raises(ValueError):
        quotient(s4, h2)


def test_maximality_examples(s4):
    a4 = generated_subgroup(s4, [label_index(s4, "(1 2 3)"), label_index(s4, "(2 3 4)")])
    assert is_maximal_subgroup(s4, a4)
    v4_members = [0] + [label_index(s4, lab)
                        for lab in ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")]
    v4 = subgroup_from_bits(s4, bits_from_indices(v4_members))
    assert not is_maximal_subgroup(s4, v4)


def test_maximality_rejects_whole_group(s4):
    whole = subgroup_from_bits(s4, full_mask(24), verify=False)
    with pytest.raises(ValueError):
        is_maximal_subgroup(s4, whole)


# -- direct products ---------------------------------------------------------------------


def test_direct_product_c2_c3():
    c2 = build_group(catalog.cyclic_description(2))
    c3 = build_group(catalog.cyclic_description(3))
    res = direct_product(c2, c3)
    assert res.group.order == 6
    assert (res.group.table == res.group.table.T).all()
    assert any(element_order(res.group, a) == 6 for a in range(6))


def test_direct_product_s3_c2(s3):
    c2 = build_group(catalog.cyclic_description(2))
    res = direct_product(s3, c2)
    assert res.group.order == 12
    assert res.left.size == 6 and res.right.size == 2


def test_direct_product_q8_s3(q8, s3):
    res = direct_product(q8, s3)
    assert res.group.order == 48
    # embeddings commute elementwise and cover the group
    G = res.group
    for h in res.left.members():
        for k in res.right.members():
            assert G.mul(h, k) == G.mul(k, h)
    prods = {G.mul(h, k) for h in res.left.members() for k in res.right.members()}
    assert len(prods) == 48


def test_direct_product_cap():
    c50 = build_group(catalog.cyclic_description(32))
    with pytest.raises(GroupBuildError):
        direct_product(c50, c50, max_order=100)


# -- registry sharing ----------------------------------------------------------------------


def test_identical_tables_share_instances(s4):
    q = quotient(s4, generated_subgroup(s4, []))
    assert q.group is s4


# -- property-based checks -------------------------------------------------------------------

SMALL_GROUPS = ["S3", "D8", "C12", "Q8", "A4"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_GROUPS), st.data())
def test_latin_square_and_inverse_laws(name, data):
    G = catalog.get_group(name)
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    assert G.mul(a, G.inv_of(a)) == 0
    assert G.mul(G.inv_of(a), a) == 0
    assert sorted(G.table[a].tolist()) == list(range(G.order))
    # associativity on sampled triples
    c = data.draw(st.integers(0, G.order - 1))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
