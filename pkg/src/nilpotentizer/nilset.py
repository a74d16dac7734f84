"""Nilpotentizer computations.

nil_G(x) is the set of y whose two-generated subgroup with x is nilpotent; it
generalizes the centralizer and is not a subgroup in general. nil(G) collects
the x whose nilpotentizer is the whole group. The sweep exploits symmetry
(y in nil_G(x) iff x in nil_G(y)) and memoizes nilpotency per distinct
two-generated subgroup, so pairs generating the same subgroup cost one series
computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bitsets import bits_from_indices, bits_to_array, bits_to_indices, full_mask
from .groups import (
    ElementSet,
    Group,
    Subgroup,
    is_closed_set,
    is_maximal_subgroup,
    is_normal,
    pair_closure_bits,
    quotient,
    subgroup_from_bits,
)
from .structure import (
    centralizer_row_bits,
    closure_of_set_bits,
    extend_to_maximal_nilpotent_bits,
    hypercenter_bits,
    is_nilpotent_bits,
    nilpotency_class_bits,
)
from .verdicts import FAIL, NOT_APPLICABLE, PASS, SuiteVerdict

DEFAULT_WORK_CAP = 10 ** 9


class InfeasibleError(RuntimeError):
    """Raised when an exhaustive check would exceed its work cap.

    Universally quantified hypotheses are never sampled; an infeasible size
    is reported instead of a statistically accepted answer.
    """


# -- nil_G(x) and nil(G) -------------------------------------------------------


def nil_element_bits(G: Group, x: int) -> int:
    rows = G._cache.setdefault("nil_row", {})
    bits = rows.get(x)
    if bits is not None:
        return bits
    if not 0 <= x < G.order:
        raise ValueError(f"element index {x} out of range")
    bits = centralizer_row_bits(G, x)
    whole = full_mask(G.order)
    if bits != whole:
        for y in range(G.order):
            if (bits >> y) & 1:
                continue
            if is_nilpotent_bits(G, pair_closure_bits(G, x, y)):
                bits |= 1 << y
    rows[x] = bits
    return bits


def nil_element(G: Group, x: int) -> ElementSet:
    """The nilpotentizer of x: all y with ⟨x, y⟩ nilpotent."""
    return ElementSet(G.fingerprint, nil_element_bits(G, x), G.order)


def nil_all_bits(G: Group) -> list[int]:
    """Nilpotentizer rows for every element, one pair test per unordered pair."""
    matrix = G._cache.get("nil_matrix")
    if matrix is not None:
        return matrix
    n = G.order
    whole = full_mask(n)
    if is_nilpotent_bits(G, whole):
        matrix = [whole] * n
    else:
        matrix = [centralizer_row_bits(G, x) for x in range(n)]
        for x in range(n):
            bx = matrix[x]
            for y in range(x + 1, n):
                if (bx >> y) & 1:
                    continue
                if is_nilpotent_bits(G, pair_closure_bits(G, x, y)):
                    bx |= 1 << y
                    matrix[y] |= 1 << x
            matrix[x] = bx
    rows = G._cache.setdefault("nil_row", {})
    for x in range(n):
        rows[x] = matrix[x]
    G._cache["nil_matrix"] = matrix
    return matrix


def nil_group(G: Group) -> ElementSet:
    """Elements whose nilpotentizer is all of G; generalizes the center."""
    matrix = nil_all_bits(G)
    whole = full_mask(G.order)
    bits = bits_from_indices(x for x in range(G.order) if matrix[x] == whole)
    return ElementSet(G.fingerprint, bits, G.order)


def is_nil_subgroup(G: Group, x: int) -> bool:
    """Whether the raw set nil_G(x) is closed under product and inverse."""
    return is_closed_set(G, nil_element_bits(G, x))


def is_n_group(G: Group) -> bool:
    """Whether nil_G(x) is a subgroup for every x."""
    nil_all_bits(G)
    return all(is_nil_subgroup(G, x) for x in range(G.order))


def nil_generated(G: Group, x: int) -> Subgroup:
    """The subgroup generated by nil_G(x)."""
    bits = closure_of_set_bits(G, nil_element_bits(G, x))
    return subgroup_from_bits(G, bits, verify=False)


def maximal_subgroup_cached(G: Group, bits: int) -> bool:
    """is_maximal_subgroup memoized by member bits; the whole group is not maximal."""
    if bits == full_mask(G.order):
        return False
    cache = G._cache.setdefault("maximal_by_bits", {})
    hit = cache.get(bits)
    if hit is None:
        hit = is_maximal_subgroup(G, subgroup_from_bits(G, bits, verify=False))
        cache[bits] = hit
    return hit


def nil_as_union_of_maximal_nilpotents(G: Group, x: int) -> tuple[bool, list[Subgroup]]:
    """Decompose nil_G(x) as a union of maximal nilpotent subgroups.

    Extends ⟨x, y⟩ for each y in nil_G(x) to a maximal nilpotent subgroup and
    reports whether the union of the distinct extensions reproduces nil_G(x)
    exactly.
    """
    row = nil_element_bits(G, x)
    seeds: dict[int, None] = {}
    for y in bits_to_indices(row):
        seeds.setdefault(pair_closure_bits(G, x, y))
    union = 0
    found: dict[int, None] = {}
    for seed in seeds:
        m = extend_to_maximal_nilpotent_bits(G, seed)
        found.setdefault(m)
        union |= m
    subs = [subgroup_from_bits(G, b, verify=False) for b in sorted(found)]
    return union == row, subs


# -- commutator conditions -----------------------------------------------------


def commutator_condition(
    G: Group,
    S: ElementSet | int,
    n: int,
    *,
    work_cap: int = DEFAULT_WORK_CAP,
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether every length-n iterated commutator over S is the identity.

    Exhaustive in lexicographic index order with early exit at the first
    violation; subtrees whose accumulated prefix is already the identity
    cannot violate and are skipped. The search is exact and never samples:
    when the evaluated node count would exceed the work cap it raises
    InfeasibleError instead.
    """
    if n < 2:
        raise ValueError("the commutator condition needs n >= 2")
    bits = S if isinstance(S, int) else S.bits
    if not isinstance(S, int):
        G.check_owner(S)
    cache = G._cache.setdefault("comm_condition", {})
    key = (bits, n)
    hit = cache.get(key)
    if hit is not None:
        return hit
    arr = [int(v) for v in bits_to_indices(bits)]
    result = _commutator_condition_search(G, arr, n, work_cap)
    cache[key] = result
    return result


def _commutator_condition_search(
    G: Group, arr: Sequence[int], n: int, work_cap: int
) -> tuple[bool, Optional[tuple[int, ...]]]:
    ct = G.commutator_table()
    if n == 2:
        # pairwise-commuting test, vectorized; argwhere scans in lex order
        sub = ct[np.ix_(arr, arr)]
        bad = np.argwhere(sub != 0)
        if bad.size:
            i, j = bad[0]
            return False, (arr[int(i)], arr[int(j)])
        return True, None
    word: list[int] = []
    budget = [work_cap]

    def walk(val: int, depth: int) -> Optional[tuple[int, ...]]:
        if depth == n:
            return tuple(word) if val != 0 else None
        if depth >= 1 and val == 0:
            return None
        row = ct[val] if depth >= 1 else None
        budget[0] -= len(arr)
        if budget[0] < 0:
            raise InfeasibleError(
                f"commutator condition over {len(arr)} elements at depth {n} "
                f"exceeds the work cap {work_cap}"
            )
        for a in arr:
            word.append(a)
            nxt = int(row[a]) if row is not None else a
            hit = walk(nxt, depth + 1)
            if hit is not None:
                return hit
            word.pop()
        return None

    witness = walk(0, 0)
    return (witness is None, witness)


# -- profile --------------------------------------------------------------------


@dataclass(frozen=True)
class NilProfile:
    """Everything the harness reports about one nilpotentizer."""

    fingerprint: str
    group_name: Optional[str]
    x: int
    label: str
    members: tuple[int, ...]
    size: int
    is_subgroup: bool
    generated_size: int
    generated_is_maximal: bool
    equals_centralizer: bool
    nilpotent: Optional[bool]
    nilpotency_class: Optional[int]


def nil_profile(G: Group, x: int, *, check_maximal: bool = True) -> NilProfile:
    bits = nil_element_bits(G, x)
    closed = is_closed_set(G, bits)
    gen_bits = closure_of_set_bits(G, bits)
    maximal = False
    if check_maximal:
        maximal = maximal_subgroup_cached(G, gen_bits)
    nilpotent = klass = None
    if closed:
        nilpotent = is_nilpotent_bits(G, bits)
        klass = nilpotency_class_bits(G, bits)
    return NilProfile(
        fingerprint=G.fingerprint,
        group_name=G.name,
        x=x,
        label=G.label_of(x),
        members=tuple(bits_to_indices(bits)),
        size=bits.bit_count(),
        is_subgroup=closed,
        generated_size=gen_bits.bit_count(),
        generated_is_maximal=maximal,
        equals_centralizer=bits == centralizer_row_bits(G, x),
        nilpotent=nilpotent,
        nilpotency_class=klass,
    )


# -- statement checks -------------------------------------------------------------


def _group_tag(G: Group) -> str:
    return G.name or G.fingerprint[:12]


def check_commutator_condition_consequences(
    G: Group, x: int, n: int, *, work_cap: int = DEFAULT_WORK_CAP
) -> SuiteVerdict:
    """When every length-n commutator over nil_G(x) vanishes, nil_G(x) must be
    a maximal nilpotent subgroup of class at most n-1."""
    params = {"x": x, "n": n}
    bits = nil_element_bits(G, x)
    ok, witness = commutator_condition(G, bits, n, work_cap=work_cap)
    if not ok:
        return SuiteVerdict(
            "lem-2.3", _group_tag(G), params, NOT_APPLICABLE,
            {"reason": "commutator condition fails", "word": list(witness)},
        )
    if not is_closed_set(G, bits):
        return SuiteVerdict(
            "lem-2.3", _group_tag(G), params, FAIL,
            {"reason": "nil set not closed", "members": _members(bits)},
        )
    klass = nilpotency_class_bits(G, bits)
    if klass is None or klass > n - 1:
        return SuiteVerdict(
            "lem-2.3", _group_tag(G), params, FAIL,
            {"reason": "class exceeds n-1", "class": klass},
        )
    extended = extend_to_maximal_nilpotent_bits(G, bits)
    if extended != bits:
        return SuiteVerdict(
            "lem-2.3", _group_tag(G), params, FAIL,
            {"reason": "not maximal nilpotent", "extension": _members(extended)},
        )
    return SuiteVerdict("lem-2.3", _group_tag(G), dict(params, **{"class": klass}), PASS)


def check_central_decomposition(G: Group, H: Subgroup, K: Subgroup, x: int) -> SuiteVerdict:
    """When G = HK with [H, K] = 1 and x in H, nil_G(x) = K nil_H(x)."""
    G.check_owner(H)
    G.check_owner(K)
    params = {"x": x, "H_size": H.size, "K_size": K.size}
    if x not in H:
        return SuiteVerdict("lem-2.1", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "x not in H"})
    h_arr = H.member_array()
    k_arr = K.member_array()
    ct = G.commutator_table()
    if ct[np.ix_(h_arr, k_arr)].any():
        return SuiteVerdict("lem-2.1", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "[H, K] != 1"})
    products = np.unique(G.table[np.ix_(h_arr, k_arr)])
    if products.size != G.order:
        return SuiteVerdict("lem-2.1", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "G != HK"})
    nil_h = 0
    for h in h_arr.tolist():
        if is_nilpotent_bits(G, pair_closure_bits(G, x, h)):
            nil_h |= 1 << h
    rhs_arr = G.table[np.ix_(k_arr, bits_to_array(nil_h, G.order))]
    rhs = bits_from_indices(np.unique(rhs_arr).tolist())
    lhs = nil_element_bits(G, x)
    if lhs != rhs:
        return SuiteVerdict(
            "lem-2.1", _group_tag(G), params, FAIL,
            {"lhs_only": _members(lhs & ~rhs), "rhs_only": _members(rhs & ~lhs)},
        )
    return SuiteVerdict("lem-2.1", _group_tag(G), dict(params, nil_size=lhs.bit_count()), PASS)


def _quotient_for(G: Group, N: Subgroup):
    cache = G._cache.setdefault("quotient_by_bits", {})
    q = cache.get(N.bits)
    if q is None:
        q = quotient(G, N)
        cache[N.bits] = q
    return q


def check_quotient_containment(G: Group, N: Subgroup, x: int) -> SuiteVerdict:
    """The cosets met by nil_G(x) are contained in the quotient nilpotentizer."""
    params = {"x": x, "N_size": N.size}
    if not is_normal(G, N):
        return SuiteVerdict("thm-1.1.4a", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "N not normal"})
    q = _quotient_for(G, N)
    lhs = q.project_set(nil_element_bits(G, x))
    rhs = nil_element_bits(q.group, q.projection[x])
    if lhs & ~rhs:
        return SuiteVerdict(
            "thm-1.1.4a", _group_tag(G), params, FAIL,
            {"extra_cosets": _members(lhs & ~rhs)},
        )
    return SuiteVerdict("thm-1.1.4a", _group_tag(G), params, PASS)


def check_quotient_equality(G: Group, K: Subgroup, x: int) -> SuiteVerdict:
    """For normal K inside the hypercenter, nil_{G/K}(xK) = nil_G(x)/K.

    The division notation needs nil_G(x) to be a union of K-cosets; when the
    saturation fails the instance is reported not-applicable rather than
    guessing a reading.
    """
    params = {"x": x, "K_size": K.size}
    if not is_normal(G, K):
        return SuiteVerdict("thm-1.1.4b", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "K not normal"})
    if K.bits & ~hypercenter_bits(G):
        return SuiteVerdict("thm-1.1.4b", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "K not inside the hypercenter"})
    nil_bits = nil_element_bits(G, x)
    nil_arr = bits_to_array(nil_bits, G.order)
    k_arr = K.member_array()
    cosets = G.table[np.ix_(nil_arr, k_arr)]
    mask = np.zeros(G.order, dtype=bool)
    mask[nil_arr] = True
    if not mask[cosets].all():
        return SuiteVerdict("thm-1.1.4b", _group_tag(G), params, NOT_APPLICABLE,
                            {"reason": "nil set is not a union of K-cosets"})
    q = _quotient_for(G, K)
    lhs = nil_element_bits(q.group, q.projection[x])
    rhs = q.project_set(nil_bits)
    if lhs != rhs:
        return SuiteVerdict(
            "thm-1.1.4b", _group_tag(G), params, FAIL,
            {"lhs_only": _members(lhs & ~rhs), "rhs_only": _members(rhs & ~lhs)},
        )
    return SuiteVerdict("thm-1.1.4b", _group_tag(G), params, PASS)


def _members(bits: int) -> list[int]:
    return list(bits_to_indices(bits))
