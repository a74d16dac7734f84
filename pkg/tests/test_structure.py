import numpy as np
import pytest

from nilpotentizer import catalog, structure
from nilpotentizer.bitsets import bits_from_indices, full_mask
from nilpotentizer.groups import (
    build_group,
    center,
    generated_subgroup,
    is_normal,
    subgroup_from_bits,
)
from nilpotentizer.structure import (
    class_representatives,
    conjugacy_classes,
    derived_length,
    derived_series,
    extend_to_maximal_nilpotent,
    extend_to_maximal_nilpotent_bits,
    factorize,
    fitting_subgroup,
    hypercenter,
    is_nilpotent,
    is_nilpotent_bits,
    is_nilpotent_by_sylow_bits,
    is_simple,
    is_solvable,
    is_solvable_bits,
    is_weakly_nilpotent,
    lower_central_series,
    nilpotency_class,
    nilpotency_class_bits,
    structure_profile,
    sylow_count,
    sylow_subgroup,
    upper_central_series,
)

import oracles
from conftest import label_index


def whole(G):
    return subgroup_from_bits(G, full_mask(G.order), verify=False)


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(17) == {17: 1}
    assert factorize(1) == {}


# -- lower central series -----------------------------------------------------------


def test_lcs_abelian():
    c6 = build_group(catalog.cyclic_description(6))
    report = lower_central_series(c6, whole(c6))
    assert report.kind == "lower-central"
    assert [t.size for t in report.terms] == [6, 1]
    assert report.terminated
    assert nilpotency_class(c6, whole(c6)) == 1


def test_lcs_trivial_subgroup(s4):
    triv = generated_subgroup(s4, [])
    report = lower_central_series(s4, triv)
    assert [t.size for t in report.terms] == [1]
    assert nilpotency_class(s4, triv) == 0


def test_lcs_dihedral8_class2(d8):
    assert nilpotency_class_bits(d8, full_mask(8)) == 2
    report = lower_central_series(d8, whole(d8))
    oracle_terms = oracles.lower_central(
        oracles.closure([oracles.cyc(4, (1, 2, 3, 4)), oracles.cyc(4, (1, 4), (2, 3))]))
    assert [t.size for t in report.terms] == [len(t) for t in oracle_terms]


def test_lcs_stabilizes_on_s3(s3):
    report = lower_central_series(s3, whole(s3))
    assert not report.terminated
    # final stabilized pair is kept
    assert report.terms[-1].bits == report.terms[-2].bits


def test_nilpotent_examples(s3, q8):
    psl = catalog.get_group("PSL(2,5)")
    assert is_nilpotent(q8, whole(q8))
    assert not is_nilpotent(s3, whole(s3))
    assert not is_nilpotent_bits(psl, full_mask(psl.order))


def test_series_terms_normal(d8, s4):
    for G in (d8, s4):
        w = whole(G)
        for term in lower_central_series(G, w).terms:
            assert is_normal(G, term)
        for term in derived_series(G, w).terms:
            assert is_normal(G, term)


# -- derived series -------------------------------------------------------------------


def test_derived_s4_matches_oracle(s4):
    report = derived_series(s4, whole(s4))
    oracle = oracles.derived(oracles.closure([oracles.cyc(4, (1, 2)), oracles.cyc(4, (1, 2, 3, 4))]))
    assert [t.size for t in report.terms] == [len(t) for t in oracle] == [24, 12, 4, 1]
    assert derived_length(s4) == 3
    assert is_solvable(s4)


def test_a5_not_solvable(a5):
    assert not is_solvable(a5)
    report = derived_series(a5, whole(a5))
    assert not report.terminated


def test_abelian_derived_length_one():
    c9 = build_group(catalog.cyclic_description(9))
    assert derived_length(c9) == 1


# -- upper central series ------------------------------------------------------------------


def test_ucs_nilpotent_reaches_whole(q8):
    report = upper_central_series(q8)
    assert report.terms[-1].size == 8
    assert hypercenter(q8).size == 8


def test_ucs_a5_trivial(a5):
    assert hypercenter(a5).size == 1


def test_ucs_sl25_two_routes(sl25):
    # direct membership route
    assert hypercenter(sl25).size == 2
    # quotient route oracle: Z2 is the preimage of the center of G/Z
    from nilpotentizer.groups import quotient

    z = center(sl25)
    assert z.size == 2
    q = quotient(sl25, z)
    assert center(q.group).size == 1  # so the series stabilizes at Z


def test_hypercenter_whole_iff_nilpotent(d8, s3, s4):
    for G in (d8, s3, s4):
        assert (hypercenter(G).size == G.order) == is_nilpotent(G, whole(G))


def test_class_matches_ucs_length_when_nilpotent(q8, d8):
    for G in (q8, d8):
        ucs = upper_central_series(G)
        assert nilpotency_class(G, whole(G)) == len(ucs.terms) - 1


# -- Sylow machinery ---------------------------------------------------------------------


def test_sylow_s4(s4):
    syl = sylow_subgroup(s4, 2)
    assert syl.size == 8
    assert sylow_count(s4, 2) == 3
    oracle_syl2 = oracles.subgroups_of_order(
        oracles.closure([oracles.cyc(4, (1, 2)), oracles.cyc(4, (1, 2, 3, 4))]), 8)
    assert len(oracle_syl2) == 3


def test_sylow_cyclic6():
    c6 = build_group(catalog.cyclic_description(6))
    syl = sylow_subgroup(c6, 3)
    assert syl.size == 3
    assert sylow_count(c6, 3) == 1


def test_sylow_rejects_non_divisor(s4):
    with pytest.raises(ValueError):
        sylow_subgroup(s4, 5)


def test_sylow_count_congruence(a5, s4):
    for G, ps in ((a5, (2, 3, 5)), (s4, (2, 3))):
        for p in ps:
            c = sylow_count(G, p)
            assert c % p == 1
            p_part = p ** factorize(G.order)[p]
            assert (G.order // p_part) % c == 0


def test_sylow_deterministic(s4):
    a = sylow_subgroup(s4, 2).bits
    s4._cache.pop("sylow_by_bits", None)
    assert sylow_subgroup(s4, 2).bits == a


# -- Fitting subgroup --------------------------------------------------------------------


def test_fitting_s4_is_v4(s4):
    fit = fitting_subgroup(s4)
    expected = {0} | {label_index(s4, lab)
                      for lab in ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")}
    assert set(fit.members()) == expected


def test_fitting_simple_trivial(a5):
    assert fitting_subgroup(a5).size == 1


def test_fitting_nilpotent_whole(q8):
    assert fitting_subgroup(q8).size == 8


def test_fitting_normal_and_nilpotent(s4, sl25):
    for G in (s4, sl25):
        fit = fitting_subgroup(G)
        assert is_normal(G, fit)
        assert is_nilpotent_bits(G, fit.bits)


# -- maximal nilpotent extension --------------------------------------------------------------


def test_extend_double_transposition_in_s4(s4):
    x = label_index(s4, "(1 2)(3 4)")
    H = generated_subgroup(s4, [x])
    M = extend_to_maximal_nilpotent(s4, H)
    assert M.size == 8
    assert is_nilpotent_bits(s4, M.bits)


def test_extend_trivial_in_abelian():
    c12 = build_group(catalog.cyclic_description(12))
    M = extend_to_maximal_nilpotent(c12, generated_subgroup(c12, []))
    assert M.size == 12


def test_extend_rejects_non_nilpotent(s4):
    a4 = generated_subgroup(s4, [label_index(s4, "(1 2 3)"), label_index(s4, "(2 3 4)")])
    with pytest.raises(ValueError):
        extend_to_maximal_nilpotent(s4, a4)


def test_extend_fixpoint_contract(s4, a5):
    # result is nilpotent and no single element extends it
    for G in (s4, a5):
        for seed in range(1, G.order, 7):
            M = extend_to_maximal_nilpotent(G, generated_subgroup(G, [seed]))
            assert is_nilpotent_bits(G, M.bits)
            gens = list(M.gens) or [next(iter(M.members()))]
            for z in range(G.order):
                if z in M:
                    continue
                from nilpotentizer.groups import closure_bits

                k = closure_bits(G, list(M.members())[:0] + gens + [z])
                assert not is_nilpotent_bits(G, k)


def test_extend_idempotent(s4):
    x = label_index(s4, "(1 2)(3 4)")
    M = extend_to_maximal_nilpotent_bits(s4, generated_subgroup(s4, [x]).bits)
    assert extend_to_maximal_nilpotent_bits(s4, M) == M


# -- weakly nilpotent / oracle agreement ----------------------------------------------------------


def test_weakly_nilpotent(q8, s3):
    c16 = build_group(catalog.cyclic_description(16))
    assert is_weakly_nilpotent(q8)
    assert is_weakly_nilpotent(c16)
    assert not is_weakly_nilpotent(s3)


def test_nilpotency_routes_agree_on_subgroups(s4, a5, sl25):
    for G in (s4, a5, sl25):
        for seed in range(0, G.order, 5):
            for seed2 in range(0, G.order, 7):
                bits = generated_subgroup(G, [seed, seed2]).bits
                assert is_nilpotent_bits(G, bits) == is_nilpotent_by_sylow_bits(G, bits)


def test_nilpotent_implies_solvable(q8, d8, s4):
    for G in (q8, d8, s4):
        w = full_mask(G.order)
        if is_nilpotent_bits(G, w):
            assert is_solvable_bits(G, w)


# -- conjugacy and simplicity -----------------------------------------------------------------------


def test_conjugacy_classes_partition(s4, a5):
    for G in (s4, a5):
        classes = conjugacy_classes(G)
        total = sum(c.size for c in classes)
        assert total == G.order
        assert classes[0].tolist() == [0]
    assert len(conjugacy_classes(s4)) == 5
    assert len(conjugacy_classes(a5)) == 5


def test_class_representatives_are_smallest(s4):
    reps = class_representatives(s4)
    classes = conjugacy_classes(s4)
    assert reps == [int(c[0]) for c in classes]


def test_is_simple(a5, s4):
    c5 = build_group(catalog.cyclic_description(5))
    c6 = build_group(catalog.cyclic_description(6))
    triv = build_group(catalog.cyclic_description(1))
    assert is_simple(a5)
    assert is_simple(c5)
    assert not is_simple(s4)
    assert not is_simple(c6)
    assert not is_simple(triv)


# -- profile ----------------------------------------------------------------------------------------


def test_structure_profile_consistency(s4, q8, a5):
    for G in (s4, q8, a5):
        prof = structure_profile(G)
        if prof.is_nilpotent:
            assert prof.is_solvable
            assert prof.hypercenter_size == G.order
            assert prof.nilpotency_class is not None
        else:
            assert prof.nilpotency_class is None
        for p, (syl, count) in prof.sylow.items():
            assert syl.size == p ** factorize(G.order)[p]
            assert count % p == 1


def test_structure_profile_trivial_group():
    triv = build_group(catalog.cyclic_description(1))
    prof = structure_profile(triv)
    assert prof.is_nilpotent and prof.is_solvable
    assert prof.sylow == {}
