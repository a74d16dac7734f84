"""Suite runner: every catalogued statement becomes an executable check.

Each suite sweeps the corpus and emits one verdict per checked instance.
Groups at or below the sweep cap are swept element by element; larger groups
are only included under ``deep`` and are swept by conjugacy-class
representatives, which covers every element because nilpotentizers are
conjugation-equivariant (a property the test suite verifies exhaustively on
the small corpus).
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .bitsets import bits_to_indices, full_mask
from .catalog import CorpusEntry, SCHEMA_VERSION, builtin_corpus, build_entry, corpus_manifest
from .groups import (
    Group,
    Subgroup,
    generated_subgroup,
    is_closed_set,
    is_maximal_subgroup,
    is_normal,
    pair_closure_bits,
    subgroup_from_bits,
)
from .nilset import (
    InfeasibleError,
    maximal_subgroup_cached,
    check_central_decomposition,
    check_commutator_condition_consequences,
    check_quotient_containment,
    check_quotient_equality,
    commutator_condition,
    nil_element_bits,
)
from .structure import (
    centralizer_row_bits,
    class_representatives,
    closure_of_set_bits,
    conjugacy_classes,
    extend_to_maximal_nilpotent_bits,
    factorize,
    fitting_subgroup,
    hypercenter_bits,
    is_nilpotent_bits,
    is_solvable_bits,
    nilpotency_class_bits,
    sylow_subgroup_bits,
)
from .verdicts import FAIL, INFEASIBLE, NOT_APPLICABLE, PASS, SuiteVerdict

DEFAULT_SWEEP_CAP = 360


@dataclass
class GroupContext:
    """One corpus group prepared for sweeping.

    ``mode`` is "full" (every element), "representatives" (one element per
    conjugacy class, used for groups above the sweep cap under deep runs), or
    "excluded" (no element sweep; only group-level suites such as the golden
    instance check and the conjecture search still run).
    """

    entry: CorpusEntry
    group: Group
    solvable: bool
    elements: list[int]
    mode: str

    @property
    def name(self) -> str:
        return self.entry.name


def _context(entry: CorpusEntry, *, deep: bool, max_order: int) -> GroupContext:
    G = build_entry(entry)
    solvable = is_solvable_bits(G, full_mask(G.order))
    if entry.order > max_order:
        if deep:
            elements = class_representatives(G)
            mode = "representatives"
        else:
            elements = []
            mode = "excluded"
    else:
        elements = list(range(G.order))
        mode = "full"
    return GroupContext(entry, G, solvable, elements, mode)


# -- per-element helpers -----------------------------------------------------------


def _cyclic_bits(G: Group, x: int) -> int:
    bits = 1
    cur = x
    while cur != 0:
        bits |= 1 << cur
        cur = G.rows[cur][x]
    return bits


def _nil_generated_bits(G: Group, x: int) -> int:
    cache = G._cache.setdefault("nil_generated_by_x", {})
    hit = cache.get(x)
    if hit is None:
        hit = closure_of_set_bits(G, nil_element_bits(G, x))
        cache[x] = hit
    return hit


def _prime_power(size: int) -> Optional[tuple[int, int]]:
    f = factorize(size)
    if len(f) == 1:
        p, e = next(iter(f.items()))
        return p, e
    return None


# -- suite implementations ------------------------------------------------------------


def suite_containment_chain(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.1.1: <x> and <x, Z(G)> sit inside C_G(x), which sits inside nil_G(x)."""
    G = ctx.group
    from .groups import center

    z_bits = center(G).bits
    out = []
    for x in ctx.elements:
        cyc = _cyclic_bits(G, x)
        central_join = closure_of_set_bits(G, cyc | z_bits)
        cent = centralizer_row_bits(G, x)
        nil = nil_element_bits(G, x)
        ok = (cyc | central_join == central_join
              and central_join | cent == cent
              and cent | nil == nil)
        witness = None
        if not ok:
            witness = {"cyc": cyc.bit_count(), "join": central_join.bit_count(),
                       "cent": cent.bit_count(), "nil": nil.bit_count()}
        out.append(SuiteVerdict("thm-1.1.1", ctx.name, {"x": x},
                                PASS if ok else FAIL, witness))
    return out


def suite_union_of_maximal_nilpotents(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.1.2: nil_G(x) is the union of the maximal nilpotent subgroups over x."""
    from .nilset import nil_as_union_of_maximal_nilpotents

    out = []
    for x in ctx.elements:
        ok, subs = nil_as_union_of_maximal_nilpotents(ctx.group, x)
        witness = None if ok else {"distinct_subgroups": len(subs)}
        out.append(SuiteVerdict("thm-1.1.2", ctx.name,
                                {"x": x, "count": len(subs)},
                                PASS if ok else FAIL, witness))
    return out


def suite_order_divides(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.1.3: the order of x divides |nil_G(x)|."""
    G = ctx.group
    orders = G.element_orders()
    out = []
    for x in ctx.elements:
        size = nil_element_bits(G, x).bit_count()
        o = int(orders[x])
        ok = size % o == 0
        out.append(SuiteVerdict("thm-1.1.3", ctx.name, {"x": x, "o": o, "nil": size},
                                PASS if ok else FAIL,
                                None if ok else {"o": o, "nil_size": size}))
    return out


def _normal_candidates(G: Group) -> list[Subgroup]:
    """Deduplicated {trivial, center, Fitting, derived subgroup, hypercenter, G}."""
    from .groups import center
    from .structure import derived_series_bits

    whole = full_mask(G.order)
    derived = derived_series_bits(G, whole)[0]
    cand_bits = {
        1, center(G).bits, fitting_subgroup(G).bits,
        derived[1] if len(derived) > 1 else 1,
        hypercenter_bits(G), whole,
    }
    return [subgroup_from_bits(G, b, verify=False) for b in sorted(cand_bits)]


def suite_quotient_containment(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.1.4a over the enumerated normal subgroups."""
    G = ctx.group
    out = []
    for N in _normal_candidates(G):
        if not is_normal(G, N):
            out.append(SuiteVerdict("thm-1.1.4a", ctx.name, {"N_size": N.size},
                                    NOT_APPLICABLE, {"reason": "candidate not normal"}))
            continue
        for x in ctx.elements:
            v = check_quotient_containment(G, N, x)
            v.group = ctx.name
            out.append(v)
    return out


def suite_quotient_equality(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.1.4b over normal subgroups inside the hypercenter."""
    G = ctx.group
    zstar = hypercenter_bits(G)
    out = []
    for K in _normal_candidates(G):
        if K.bits & ~zstar:
            continue
        for x in ctx.elements:
            v = check_quotient_equality(G, K, x)
            v.group = ctx.name
            out.append(v)
    return out


def suite_solvability_by_commutators(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.2: pairwise-commuting or weight-3 conditions on a maximal-generating
    nilpotentizer force solvability; checked contrapositively on non-solvable
    groups and as confirming instances on solvable ones."""
    G = ctx.group
    out = []
    for x in ctx.elements:
        params = {"x": x}
        gen = _nil_generated_bits(G, x)
        if not maximal_subgroup_cached(G, gen):
            out.append(SuiteVerdict("thm-1.2", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "nil does not generate a maximal subgroup"}))
            continue
        nil = nil_element_bits(G, x)
        try:
            commuting, pair_witness = commutator_condition(G, nil, 2)
            weight3, triple_witness = commutator_condition(G, nil, 3)
        except InfeasibleError as exc:
            out.append(SuiteVerdict("thm-1.2", ctx.name, params, INFEASIBLE,
                                    {"reason": str(exc)}))
            continue
        if ctx.solvable:
            if commuting or weight3:
                out.append(SuiteVerdict("thm-1.2", ctx.name,
                                        dict(params, mode="confirming",
                                             commuting=commuting, weight3=weight3), PASS))
            else:
                out.append(SuiteVerdict("thm-1.2", ctx.name, params, NOT_APPLICABLE,
                                        {"reason": "commutator hypotheses fail"}))
        else:
            if commuting or weight3:
                out.append(SuiteVerdict(
                    "thm-1.2", ctx.name, params, FAIL,
                    {"reason": "hypothesis holds on a non-solvable group",
                     "commuting": commuting, "weight3": weight3}))
            else:
                out.append(SuiteVerdict(
                    "thm-1.2", ctx.name,
                    dict(params, pair_witness=list(pair_witness),
                         triple_witness=list(triple_witness)), PASS))
    return out


def suite_size_not_small_prime_power(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-1.3: on a non-solvable group, a maximal-generating nilpotentizer
    never has size p or p^2."""
    G = ctx.group
    out = []
    if ctx.solvable:
        return out
    for x in ctx.elements:
        params = {"x": x}
        gen = _nil_generated_bits(G, x)
        if not maximal_subgroup_cached(G, gen):
            out.append(SuiteVerdict("thm-1.3", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "nil does not generate a maximal subgroup"}))
            continue
        size = nil_element_bits(G, x).bit_count()
        pp = _prime_power(size)
        bad = pp is not None and pp[1] <= 2
        out.append(SuiteVerdict("thm-1.3", ctx.name, dict(params, nil_size=size),
                                FAIL if bad else PASS,
                                {"nil_size": size} if bad else None))
    return out


def suite_maximal_not_odd_prime_power(ctx: GroupContext) -> list[SuiteVerdict]:
    """lem-2.12: when nil_G(x) is itself a maximal subgroup of a non-solvable
    group, its size is not an odd prime power."""
    G = ctx.group
    out = []
    if ctx.solvable:
        return out
    for x in ctx.elements:
        params = {"x": x}
        nil = nil_element_bits(G, x)
        if not is_closed_set(G, nil) or not maximal_subgroup_cached(G, nil):
            out.append(SuiteVerdict("lem-2.12", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "nil is not a maximal subgroup"}))
            continue
        size = nil.bit_count()
        pp = _prime_power(size)
        bad = pp is not None and pp[0] % 2 == 1
        out.append(SuiteVerdict("lem-2.12", ctx.name, dict(params, nil_size=size),
                                FAIL if bad else PASS,
                                {"nil_size": size} if bad else None))
    return out


def suite_small_nil_equals_centralizer(ctx: GroupContext) -> list[SuiteVerdict]:
    """lem-2.13: for x of prime order p with |nil_G(x)| <= p^2, the
    nilpotentizer equals the centralizer."""
    G = ctx.group
    orders = G.element_orders()
    out = []
    for x in ctx.elements:
        o = int(orders[x])
        params = {"x": x, "o": o}
        pp = _prime_power(o) if o > 1 else None
        if pp is None or pp[1] != 1:
            out.append(SuiteVerdict("lem-2.13", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "x not of prime order"}))
            continue
        p = pp[0]
        nil = nil_element_bits(G, x)
        if nil.bit_count() > p * p:
            out.append(SuiteVerdict("lem-2.13", ctx.name, dict(params, nil_size=nil.bit_count()),
                                    NOT_APPLICABLE, {"reason": "nil larger than p^2"}))
            continue
        cent = centralizer_row_bits(G, x)
        ok = nil == cent
        out.append(SuiteVerdict("lem-2.13", ctx.name, dict(params, nil_size=nil.bit_count()),
                                PASS if ok else FAIL,
                                None if ok else {
                                    "nil_only": list(bits_to_indices(nil & ~cent)),
                                    "cent_only": list(bits_to_indices(cent & ~nil))}))
    return out


def suite_proper_cyclic_containment(ctx: GroupContext) -> list[SuiteVerdict]:
    """cor-2.6: on a non-solvable group with maximal-generating nilpotentizer,
    <x> is proper in nil_G(x) and a nilpotent subgroup properly covers <x>."""
    G = ctx.group
    out = []
    if ctx.solvable:
        return out
    for x in ctx.elements:
        params = {"x": x}
        gen = _nil_generated_bits(G, x)
        if not maximal_subgroup_cached(G, gen):
            out.append(SuiteVerdict("cor-2.6", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "nil does not generate a maximal subgroup"}))
            continue
        nil = nil_element_bits(G, x)
        cyc = _cyclic_bits(G, x)
        extra = nil & ~cyc
        if not extra:
            out.append(SuiteVerdict("cor-2.6", ctx.name, params, FAIL,
                                    {"reason": "nil equals <x>"}))
            continue
        y = (extra & -extra).bit_length() - 1
        over = pair_closure_bits(G, x, y)
        ok = is_nilpotent_bits(G, over) and over != cyc and cyc & ~over == 0
        out.append(SuiteVerdict("cor-2.6", ctx.name, dict(params, witness_y=y),
                                PASS if ok else FAIL,
                                None if ok else {"y": y}))
    return out


def _hypercenter_hypothesis(ctx: GroupContext, x: int) -> Optional[int]:
    """Shared cor-2.14 / cor-2.16 hypothesis; returns nil size when it applies."""
    G = ctx.group
    zstar = hypercenter_bits(G)
    if zstar == 1:
        return None
    gen = _nil_generated_bits(G, x)
    if not maximal_subgroup_cached(G, gen):
        return None
    if zstar & ~gen:
        return None
    return nil_element_bits(G, x).bit_count()


def suite_size_constraints_with_hypercenter(ctx: GroupContext) -> list[SuiteVerdict]:
    """cor-2.14: |nil| is neither p^3 nor pq under the hypercenter hypothesis."""
    out = []
    if ctx.solvable or not ctx.elements:
        return out
    if hypercenter_bits(ctx.group) == 1:
        out.append(SuiteVerdict("cor-2.14", ctx.name, {}, NOT_APPLICABLE,
                                {"reason": "trivial hypercenter"}))
        return out
    for x in ctx.elements:
        size = _hypercenter_hypothesis(ctx, x)
        params = {"x": x}
        if size is None:
            out.append(SuiteVerdict("cor-2.14", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "hypothesis fails"}))
            continue
        f = factorize(size)
        exps = sorted(f.values())
        bad = (len(f) == 1 and exps == [3]) or (len(f) == 2 and exps == [1, 1])
        out.append(SuiteVerdict("cor-2.14", ctx.name, dict(params, nil_size=size),
                                FAIL if bad else PASS,
                                {"nil_size": size} if bad else None))
    return out


def suite_size_lower_bound_with_hypercenter(ctx: GroupContext) -> list[SuiteVerdict]:
    """cor-2.16: |nil| >= 12 under the hypercenter hypothesis."""
    out = []
    if ctx.solvable or not ctx.elements:
        return out
    if hypercenter_bits(ctx.group) == 1:
        out.append(SuiteVerdict("cor-2.16", ctx.name, {}, NOT_APPLICABLE,
                                {"reason": "trivial hypercenter"}))
        return out
    for x in ctx.elements:
        size = _hypercenter_hypothesis(ctx, x)
        params = {"x": x}
        if size is None:
            out.append(SuiteVerdict("cor-2.16", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "hypothesis fails"}))
            continue
        out.append(SuiteVerdict("cor-2.16", ctx.name, dict(params, nil_size=size),
                                PASS if size >= 12 else FAIL,
                                None if size >= 12 else {"nil_size": size}))
    return out


def suite_size_six_excluded(ctx: GroupContext) -> list[SuiteVerdict]:
    """prop-2.15: in a non-solvable group whose order-3 elements are all
    self-centralizing, no maximal-generating nilpotentizer has size 6.

    The universal reading is asserted; the existential reading's outcome is
    reported informationally without assertion.
    """
    G = ctx.group
    out = []
    if ctx.solvable or not ctx.elements:
        return out
    orders = G.element_orders()
    order3 = [i for i in range(G.order) if orders[i] == 3]
    self_flags = [centralizer_row_bits(G, t) == _cyclic_bits(G, t) for t in order3]
    universal = bool(order3) and all(self_flags)
    existential = any(self_flags)
    out.append(SuiteVerdict("prop-2.15", ctx.name,
                            {"universal_reading": universal,
                             "existential_reading": existential,
                             "order3_count": len(order3)},
                            NOT_APPLICABLE, {"reason": "informational"}))
    if not universal:
        return out
    for x in ctx.elements:
        params = {"x": x}
        gen = _nil_generated_bits(G, x)
        if not maximal_subgroup_cached(G, gen):
            out.append(SuiteVerdict("prop-2.15", ctx.name, params, NOT_APPLICABLE,
                                    {"reason": "nil does not generate a maximal subgroup"}))
            continue
        size = nil_element_bits(G, x).bit_count()
        out.append(SuiteVerdict("prop-2.15", ctx.name, dict(params, nil_size=size),
                                FAIL if size == 6 else PASS,
                                {"nil_size": size} if size == 6 else None))
    return out


def _factor_subgroups(ctx: GroupContext) -> Optional[dict[str, Subgroup]]:
    if ctx.entry.factors is None:
        return None
    G = ctx.group
    gen_perms = [_entry_generator_index(ctx, i)
                 for i in range(len(ctx.entry.construction["generators"]))]
    left_idx, right_idx = ctx.entry.factors
    return {
        "left": generated_subgroup(G, [gen_perms[i] for i in left_idx]),
        "right": generated_subgroup(G, [gen_perms[i] for i in right_idx]),
    }


def suite_decomposition(ctx: GroupContext) -> list[SuiteVerdict]:
    """lem-2.1: central product decomposition nil_G(x) = K nil_H(x)."""
    sides = _factor_subgroups(ctx)
    if sides is None or not ctx.elements:
        return []
    out = []
    G = ctx.group
    for h_name, k_name in (("left", "right"), ("right", "left")):
        H, K = sides[h_name], sides[k_name]
        for x in bits_to_indices(H.bits):
            v = check_central_decomposition(G, H, K, x)
            v.group = ctx.name
            v.params = dict(v.params, H=h_name)
            out.append(v)
    return out


def suite_nilpotent_factor(ctx: GroupContext) -> list[SuiteVerdict]:
    """cor-2.2: with a nilpotent factor H, every x in H has nil_G(x) = G.

    The decomposition preconditions (G = HK, [H, K] = 1) are verified before
    asserting the conclusion.
    """
    sides = _factor_subgroups(ctx)
    if sides is None or not ctx.elements:
        return []
    out = []
    G = ctx.group
    whole = full_mask(G.order)
    ct = G.commutator_table()
    for h_name, k_name in (("left", "right"), ("right", "left")):
        H, K = sides[h_name], sides[k_name]
        if not is_nilpotent_bits(G, H.bits):
            out.append(SuiteVerdict("cor-2.2", ctx.name, {"H": h_name}, NOT_APPLICABLE,
                                    {"reason": "factor not nilpotent"}))
            continue
        h_arr = H.member_array()
        k_arr = K.member_array()
        if ct[np.ix_(h_arr, k_arr)].any() or np.unique(
                G.table[np.ix_(h_arr, k_arr)]).size != G.order:
            out.append(SuiteVerdict("cor-2.2", ctx.name, {"H": h_name}, NOT_APPLICABLE,
                                    {"reason": "decomposition preconditions fail"}))
            continue
        for x in bits_to_indices(H.bits):
            nil = nil_element_bits(G, x)
            ok = nil == whole
            out.append(SuiteVerdict("cor-2.2", ctx.name, {"H": h_name, "x": x},
                                    PASS if ok else FAIL,
                                    None if ok else {"nil_size": nil.bit_count()}))
    return out


def _entry_generator_index(ctx: GroupContext, i: int) -> int:
    """Element index of the i-th construction generator."""
    from . import permutations as perms

    text = ctx.entry.construction["generators"][i]
    degree = ctx.entry.construction["degree"]
    label = perms.format_cycles(perms.parse_cycles(text, degree))
    cache = ctx.group._cache.setdefault("label_index", None)
    if cache is None:
        cache = {lab: i for i, lab in enumerate(ctx.group.labels or [])}
        ctx.group._cache["label_index"] = cache
    idx = cache.get(label)
    if idx is None:
        raise KeyError(f"generator {text!r} not found among element labels")
    return idx


def suite_commutator_condition_consequences(ctx: GroupContext) -> list[SuiteVerdict]:
    """lem-2.3 for n in {2, 3, 4}: a vanishing length-n commutator condition
    makes nil_G(x) a maximal nilpotent subgroup of class at most n-1."""
    G = ctx.group
    out = []
    for x in ctx.elements:
        for n in (2, 3, 4):
            try:
                v = check_commutator_condition_consequences(G, x, n)
            except InfeasibleError as exc:
                v = SuiteVerdict("lem-2.3", ctx.name, {"x": x, "n": n},
                                 INFEASIBLE, {"reason": str(exc)})
            v.group = ctx.name
            out.append(v)
    return out


def suite_nilpotent_maximal_spotcheck(ctx: GroupContext) -> list[SuiteVerdict]:
    """thm-2.5: a nilpotent maximal subgroup whose Sylow 2-subgroup has class
    at most 2 forces solvability; checked on every maximal nilpotent subgroup
    discovered by the seed sweep."""
    if not ctx.elements:
        return []
    G = ctx.group
    found: dict[int, None] = {}
    for x in ctx.elements:
        nil = nil_element_bits(G, x)
        seeds: dict[int, None] = {}
        for y in bits_to_indices(nil):
            seeds.setdefault(pair_closure_bits(G, x, y))
        for seed in seeds:
            found.setdefault(extend_to_maximal_nilpotent_bits(G, seed))
    out = []
    checked = 0
    for m_bits in sorted(found):
        if not maximal_subgroup_cached(G, m_bits):
            continue
        checked += 1
        size = m_bits.bit_count()
        params = {"M_size": size}
        if size % 2:
            klass = 0
        else:
            syl2 = sylow_subgroup_bits(G, m_bits, 2)
            klass = nilpotency_class_bits(G, syl2)
        if klass is None or klass > 2:
            out.append(SuiteVerdict("thm-2.5", ctx.name,
                                    dict(params, sylow2_class=klass), NOT_APPLICABLE,
                                    {"reason": "Sylow 2-subgroup class exceeds 2"}))
            continue
        ok = ctx.solvable
        out.append(SuiteVerdict("thm-2.5", ctx.name, dict(params, sylow2_class=klass),
                                PASS if ok else FAIL,
                                None if ok else {"reason": "non-solvable group"}))
    if not out:
        out.append(SuiteVerdict("thm-2.5", ctx.name, {"maximal_nilpotent_found": len(found)},
                                NOT_APPLICABLE,
                                {"reason": "no nilpotent maximal subgroup discovered"}))
    return out


def suite_golden_psl217(ctx: GroupContext) -> list[SuiteVerdict]:
    """remark-psl217: for one element x of order 8 in PSL(2,17), nil_G(x) is
    the Sylow 2-subgroup containing x, of nilpotency class exactly 3, and a
    maximal subgroup."""
    if ctx.name != "PSL(2,17)":
        return []
    G = ctx.group
    orders = G.element_orders()
    x = next(i for i in range(G.order) if orders[i] == 8)
    nil = nil_element_bits(G, x)
    problems = []
    if not is_closed_set(G, nil):
        problems.append("nil set is not a subgroup")
    two_part = 2 ** factorize(G.order).get(2, 0)
    if nil.bit_count() != two_part:
        problems.append(f"size {nil.bit_count()} != 2-part {two_part}")
    if not (nil >> x) & 1:
        problems.append("x not inside its nilpotentizer")
    if _prime_power(nil.bit_count()) is None or _prime_power(nil.bit_count())[0] != 2:
        problems.append("not a 2-subgroup order")
    klass = nilpotency_class_bits(G, nil)
    if klass != 3:
        problems.append(f"class {klass} != 3")
    if not maximal_subgroup_cached(G, nil):
        problems.append("not a maximal subgroup")
    status = PASS if not problems else FAIL
    return [SuiteVerdict("remark-psl217", ctx.name,
                         {"x": x, "nil_size": nil.bit_count(), "class": klass},
                         status, {"problems": problems} if problems else None)]


# -- conjecture search ------------------------------------------------------------------


def conjecture_search_group(ctx: GroupContext, size: int) -> SuiteVerdict:
    """Scan a non-solvable group for x with |nil_G(x)| = size generating a
    maximal subgroup.

    Class representatives cover all elements because size and maximality are
    conjugation-invariant. Sound pruning before the full sweep:

    - the order of x must divide size (divisibility law);
    - |C_G(x)| <= size, since the centralizer sits inside the nilpotentizer;
    - for x of prime-power order p^k, the p-part of |G| must be <= size,
      since x lies in some Sylow p-subgroup, which is nilpotent and contains x;
    - |extend(<x>)| <= size for the same reason applied to any maximal
      nilpotent overgroup of <x>.
    """
    G = ctx.group
    orders = G.element_orders()
    parts = factorize(G.order)
    classes = conjugacy_classes(G)
    skipped = {"order": 0, "centralizer": 0, "sylow_part": 0, "extension": 0}
    hits = []
    candidates = 0
    for cls in classes:
        x = int(cls[0])
        o = int(orders[x])
        if size % o != 0:
            skipped["order"] += 1
            continue
        if centralizer_row_bits(G, x).bit_count() > size:
            skipped["centralizer"] += 1
            continue
        pp = _prime_power(o) if o > 1 else None
        if pp is not None and parts.get(pp[0], 0) and pp[0] ** parts[pp[0]] > size:
            skipped["sylow_part"] += 1
            continue
        if extend_to_maximal_nilpotent_bits(G, _cyclic_bits(G, x)).bit_count() > size:
            skipped["extension"] += 1
            continue
        candidates += 1
        nil = nil_element_bits(G, x)
        if nil.bit_count() != size:
            continue
        if maximal_subgroup_cached(G, _nil_generated_bits(G, x)):
            hits.append({"x": x, "class_size": int(cls.size),
                         "members": list(bits_to_indices(nil))})
    params = {
        "size": size, "classes": len(classes), "candidates": candidates,
        "skipped": skipped, "hits": len(hits),
    }
    if hits:
        return SuiteVerdict("conjecture", ctx.name, params, FAIL,
                            {"kind": "counterexample", "hits": hits})
    return SuiteVerdict("conjecture", ctx.name, params, PASS)


def suite_conjecture(ctx: GroupContext, size: int = 8) -> list[SuiteVerdict]:
    if ctx.solvable:
        return []
    return [conjecture_search_group(ctx, size)]


# -- registry and runner ---------------------------------------------------------------

SUITES: dict[str, Callable[[GroupContext], list[SuiteVerdict]]] = {
    "thm-1.1.1": suite_containment_chain,
    "thm-1.1.2": suite_union_of_maximal_nilpotents,
    "thm-1.1.3": suite_order_divides,
    "thm-1.1.4a": suite_quotient_containment,
    "thm-1.1.4b": suite_quotient_equality,
    "thm-1.2": suite_solvability_by_commutators,
    "thm-1.3": suite_size_not_small_prime_power,
    "lem-2.1": suite_decomposition,
    "cor-2.2": suite_nilpotent_factor,
    "lem-2.3": suite_commutator_condition_consequences,
    "lem-2.12": suite_maximal_not_odd_prime_power,
    "lem-2.13": suite_small_nil_equals_centralizer,
    "cor-2.6": suite_proper_cyclic_containment,
    "cor-2.14": suite_size_constraints_with_hypercenter,
    "cor-2.16": suite_size_lower_bound_with_hypercenter,
    "prop-2.15": suite_size_six_excluded,
    "thm-2.5": suite_nilpotent_maximal_spotcheck,
    "remark-psl217": suite_golden_psl217,
    "conjecture": suite_conjecture,
}


def resolve_suite_ids(selector: str) -> list[str]:
    """Exact id, prefix family (e.g. "thm-1.1"), or "all"."""
    if selector == "all":
        return list(SUITES)
    if selector in SUITES:
        return [selector]
    family = [sid for sid in SUITES if sid.startswith(selector + ".")]
    if family:
        return family
    raise KeyError(f"unknown suite {selector!r}; known: {', '.join(SUITES)} or 'all'")


@dataclass
class SuiteResult:
    id: str
    verdicts: list[SuiteVerdict] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0, INFEASIBLE: 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out

    @property
    def applicable(self) -> int:
        c = self.counts()
        return c[PASS] + c[FAIL]

    @property
    def weak(self) -> bool:
        return self.applicable == 0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "applicable": self.applicable,
            "weak": self.weak,
            "counts": self.counts(),
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


@dataclass
class RunReport:
    version: str
    schema: int
    corpus_hash: str
    suites: list[SuiteResult]
    wall_ms: float

    def summary(self) -> dict:
        total = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0, INFEASIBLE: 0}
        for s in self.suites:
            for k, v in s.counts().items():
                total[k] += v
        return {
            "counts": total,
            "weak_suites": [s.id for s in self.suites if s.weak],
            "exit_code": self.exit_code(),
        }

    def exit_code(self) -> int:
        for s in self.suites:
            c = s.counts()
            if c[FAIL] or c[INFEASIBLE]:
                return 1
        return 0

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "schema": self.schema,
            "corpus_hash": self.corpus_hash,
            "suites": [s.to_dict() for s in self.suites],
            "summary": self.summary(),
            "wall_ms": round(self.wall_ms, 3),
        }


def corpus_hash(entries: Sequence[CorpusEntry]) -> str:
    blob = json.dumps(corpus_manifest(list(entries)), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _run_group(
    entry: CorpusEntry,
    suite_ids: Sequence[str],
    deep: bool,
    max_order: int,
    conjecture_size: int,
) -> dict[str, list[SuiteVerdict]]:
    ctx = _context(entry, deep=deep, max_order=max_order)
    out: dict[str, list[SuiteVerdict]] = {}
    for sid in suite_ids:
        t1 = time.perf_counter()
        if sid == "conjecture":
            verdicts = suite_conjecture(ctx, conjecture_size)
        else:
            verdicts = SUITES[sid](ctx)
        elapsed = (time.perf_counter() - t1) * 1000.0
        if verdicts:
            share = elapsed / len(verdicts)
            for v in verdicts:
                if not v.ms:
                    v.ms = share
        out[sid] = verdicts
    return out


def _run_group_star(args) -> dict[str, list[SuiteVerdict]]:
    return _run_group(*args)


def run_suites(
    suite_ids: Sequence[str],
    *,
    entries: Optional[Sequence[CorpusEntry]] = None,
    deep: bool = False,
    max_order: int = DEFAULT_SWEEP_CAP,
    conjecture_size: int = 8,
    jobs: int = 1,
) -> RunReport:
    """Run the selected suites over the corpus and assemble a report.

    Verdicts are ordered by suite registry order, then corpus order, then the
    per-suite element order, so reports are deterministic. With ``jobs > 1``
    the unit of parallelism is one corpus group (all its suites run in one
    worker so the per-group caches are shared); results merge in corpus
    order, so parallel runs produce the same report as sequential ones.
    """
    t0 = time.perf_counter()
    if entries is None:
        entries = builtin_corpus()
    tasks = [(e, tuple(suite_ids), deep, max_order, conjecture_size) for e in entries]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_group = list(pool.map(_run_group_star, tasks))
    else:
        per_group = [_run_group(*t) for t in tasks]
    results = {sid: SuiteResult(sid) for sid in suite_ids}
    for group_result in per_group:
        for sid in suite_ids:
            results[sid].verdicts.extend(group_result.get(sid, []))
    report = RunReport(
        version=__version__,
        schema=SCHEMA_VERSION,
        corpus_hash=corpus_hash(entries),
        suites=[results[sid] for sid in suite_ids],
        wall_ms=(time.perf_counter() - t0) * 1000.0,
    )
    return report


def report_to_json(report: RunReport, *, strip_timing: bool = False) -> str:
    data = report.to_dict()
    if strip_timing:
        data["wall_ms"] = 0.0
        for s in data["suites"]:
            for v in s["verdicts"]:
                v["ms"] = 0.0
    return json.dumps(data, indent=2, sort_keys=True)


def report_to_csv(report: RunReport) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["suite", "group", "params", "status", "witness", "ms"])
    for s in report.suites:
        for v in s.verdicts:
            writer.writerow([
                s.id, v.group, json.dumps(v.params, sort_keys=True), v.status,
                json.dumps(v.witness, sort_keys=True) if v.witness else "",
                round(v.ms, 3),
            ])
    return buf.getvalue()


def report_to_text(report: RunReport) -> str:
    lines = []
    for s in report.suites:
        c = s.counts()
        flag = "  WEAK" if s.weak else ""
        lines.append(
            f"{s.id:14s} pass={c[PASS]:<6d} fail={c[FAIL]:<4d} "
            f"n/a={c[NOT_APPLICABLE]:<6d} infeasible={c[INFEASIBLE]}{flag}"
        )
        for v in s.verdicts:
            if v.status == FAIL:
                lines.append(f"  FAIL {v.group} {json.dumps(v.params, sort_keys=True)}"
                             f" witness={json.dumps(v.witness, sort_keys=True)}")
    summary = report.summary()
    lines.append(
        "total: pass=%d fail=%d n/a=%d infeasible=%d"
        % (summary["counts"][PASS], summary["counts"][FAIL],
           summary["counts"][NOT_APPLICABLE], summary["counts"][INFEASIBLE])
    )
    if summary["weak_suites"]:
        lines.append("weak suites: " + ", ".join(summary["weak_suites"]))
    return "\n".join(lines) + "\n"
