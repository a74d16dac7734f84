"""Structural series and distinguished subgroups.

Lower central and derived series are computed on full element sets (every
commutator pair is enumerated, not just generator pairs), the upper central
series by the direct membership condition, Sylow subgroups by deterministic
greedy extension. Results are memoized on the owning group keyed by the
member bitmask, so repeated queries over pair sweeps cost one computation
per distinct subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bitsets import bits_from_bool_array, bits_to_array, full_mask
from .groups import (
    Group,
    Subgroup,
    closure_bits,
    conjugate_bits,
    is_normal,
    pair_closure_bits,
    reduce_generators,
    subgroup_from_bits,
)


@dataclass(frozen=True)
class SeriesReport:
    """A computed subgroup series.

    ``terms`` are nested (descending for lower-central and derived series,
    ascending for the upper central series). ``terminated`` means the series
    reached its goal: the trivial subgroup for descending kinds, stabilization
    for the upper central series. A stabilized-but-unterminated descending
    series keeps the final repeated pair so the stall is visible.
    """

    kind: str
    terms: tuple[Subgroup, ...]
    terminated: bool
    length: int


@dataclass(frozen=True)
class StructureProfile:
    """Cached per-group structural summary."""

    fingerprint: str
    order: int
    is_nilpotent: bool
    nilpotency_class: Optional[int]
    is_solvable: bool
    derived_length: Optional[int]
    center_size: int
    hypercenter_size: int
    fitting: Subgroup
    sylow: dict[int, tuple[Subgroup, int]]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _subgroup(G: Group, bits: int) -> Subgroup:
    return Subgroup(G.fingerprint, bits, G.order, ())


def closure_of_set_bits(G: Group, seed_bits: int) -> int:
    """Subgroup generated by an arbitrary member set.

    Walks the members in index order and only re-closes when a member falls
    outside the current partial closure, so large seed sets cost a handful of
    closures.
    """
    gens: list[int] = []
    bits = 1
    probe = seed_bits & ~bits
    while probe:
        low = probe & -probe
        m = low.bit_length() - 1
        gens.append(m)
        bits = closure_bits(G, gens)
        if bits == full_mask(G.order):
            return bits
        probe = seed_bits & ~bits
    return bits


def _commutator_values_bits(G: Group, a_bits: int, b_bits: int) -> int:
    """Bitmask of all commutators [a, b] with a in A, b in B."""
    ct = G.commutator_table()
    a_arr = bits_to_array(a_bits, G.order)
    b_arr = bits_to_array(b_bits, G.order)
    vals = np.unique(ct[np.ix_(a_arr, b_arr)])
    bits = 0
    for v in vals.tolist():
        bits |= 1 << v
    return bits


def lower_central_series_bits(G: Group, h_bits: int) -> tuple[tuple[int, ...], bool]:
    cache = G._cache.setdefault("lcs_by_bits", {})
    hit = cache.get(h_bits)
    if hit is not None:
        return hit
    terms = [h_bits]
    cur = h_bits
    while True:
        if cur == 1:
            result = (tuple(terms), True)
            break
        nxt = closure_of_set_bits(G, _commutator_values_bits(G, cur, h_bits))
        terms.append(nxt)
        if nxt == 1:
            result = (tuple(terms), True)
            break
        if nxt == cur:
            result = (tuple(terms), False)
            break
        cur = nxt
    cache[h_bits] = result
    return result


def derived_series_bits(G: Group, h_bits: int) -> tuple[tuple[int, ...], bool]:
    cache = G._cache.setdefault("derived_by_bits", {})
    hit = cache.get(h_bits)
    if hit is not None:
        return hit
    terms = [h_bits]
    cur = h_bits
    while True:
        if cur == 1:
            result = (tuple(terms), True)
            break
        nxt = closure_of_set_bits(G, _commutator_values_bits(G, cur, cur))
        terms.append(nxt)
        if nxt == 1:
            result = (tuple(terms), True)
            break
        if nxt == cur:
            result = (tuple(terms), False)
            break
        cur = nxt
    cache[h_bits] = result
    return result


def lower_central_series(G: Group, H: Subgroup) -> SeriesReport:
    G.check_owner(H)
    terms, done = lower_central_series_bits(G, H.bits)
    subs = tuple(_subgroup(G, b) for b in terms)
    return SeriesReport("lower-central", subs, done, len(subs))


def derived_series(G: Group, H: Subgroup) -> SeriesReport:
    G.check_owner(H)
    terms, done = derived_series_bits(G, H.bits)
    subs = tuple(_subgroup(G, b) for b in terms)
    return SeriesReport("derived", subs, done, len(subs))


def is_nilpotent_bits(G: Group, h_bits: int) -> bool:
    return lower_central_series_bits(G, h_bits)[1]


def is_nilpotent(G: Group, H: Subgroup) -> bool:
    G.check_owner(H)
    return is_nilpotent_bits(G, H.bits)


def nilpotency_class_bits(G: Group, h_bits: int) -> Optional[int]:
    terms, done = lower_central_series_bits(G, h_bits)
    return len(terms) - 1 if done else None


def nilpotency_class(G: Group, H: Subgroup) -> Optional[int]:
    G.check_owner(H)
    return nilpotency_class_bits(G, H.bits)


def is_solvable_bits(G: Group, h_bits: int) -> bool:
    return derived_series_bits(G, h_bits)[1]


def is_solvable(G: Group, H: Optional[Subgroup] = None) -> bool:
    bits = full_mask(G.order) if H is None else H.bits
    if H is not None:
        G.check_owner(H)
    return is_solvable_bits(G, bits)


def derived_length(G: Group, H: Optional[Subgroup] = None) -> Optional[int]:
    bits = full_mask(G.order) if H is None else H.bits
    terms, done = derived_series_bits(G, bits)
    return len(terms) - 1 if done else None


# -- Sylow machinery ----------------------------------------------------------


def _closure_capped(G: Group, gens: list[int], cap: int) -> Optional[int]:
    """Closure bits, or None as soon as the subgroup exceeds ``cap`` members."""
    n = G.order
    known = bytearray(n)
    known[0] = 1
    elems = [0]
    rows = G.rows
    count = 1
    i = 0
    while i < len(elems):
        re = rows[elems[i]]
        i += 1
        for g in gens:
            v = re[g]
            if not known[v]:
                known[v] = 1
                elems.append(v)
                count += 1
                if count > cap:
                    return None
    from .bitsets import bits_from_bytearray

    return bits_from_bytearray(known)


def sylow_subgroup_bits(G: Group, h_bits: int, p: int) -> int:
    """A Sylow p-subgroup of the subgroup given by ``h_bits``.

    Deterministic greedy growth: repeatedly adjoin the smallest p-power-order
    member whose closure with the current p-subgroup stays a p-group.
    """
    cache = G._cache.setdefault("sylow_by_bits", {})
    key = (h_bits, p)
    hit = cache.get(key)
    if hit is not None:
        return hit
    size = h_bits.bit_count()
    exp = factorize(size).get(p, 0)
    if exp == 0:
        raise ValueError(f"prime {p} does not divide the subgroup order {size}")
    p_part = p ** exp
    orders = G.element_orders()
    h_arr = bits_to_array(h_bits, G.order)
    candidates = [int(z) for z in h_arr if _is_p_power(int(orders[z]), p)]
    bits = 1
    gens: list[int] = []
    while bits.bit_count() < p_part:
        progressed = False
        for z in candidates:
            if (bits >> z) & 1:
                continue
            k = _closure_capped(G, gens + [z], p_part)
            if k is not None and _is_p_power(k.bit_count(), p):
                bits = k
                gens.append(z)
                progressed = True
                break
        if not progressed:
            raise RuntimeError("greedy Sylow construction stalled; table is inconsistent")
    cache[key] = bits
    return bits


def _is_p_power(m: int, p: int) -> bool:
    if m < 1:
        return False
    while m % p == 0:
        m //= p
    return m == 1


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    bits = sylow_subgroup_bits(G, full_mask(G.order), p)
    return subgroup_from_bits(G, bits, verify=False)


def sylow_conjugates(G: Group, p: int) -> list[int]:
    """Bitmasks of all Sylow p-subgroups (conjugates of the greedy one)."""
    cache = G._cache.setdefault("sylow_conjugates", {})
    hit = cache.get(p)
    if hit is None:
        base = sylow_subgroup_bits(G, full_mask(G.order), p)
        seen = {base}
        for g in range(1, G.order):
            seen.add(conjugate_bits(G, base, g))
        hit = sorted(seen)
        cache[p] = hit
    return hit


def sylow_count(G: Group, p: int) -> int:
    count = len(sylow_conjugates(G, p))
    if count % p != 1:
        raise RuntimeError(f"Sylow count {count} is not 1 mod {p}; table is inconsistent")
    return count


def p_core_bits(G: Group, p: int) -> int:
    bits = full_mask(G.order)
    for s in sylow_conjugates(G, p):
        bits &= s
    return bits


def fitting_subgroup(G: Group) -> Subgroup:
    """Product of the p-cores; checked nilpotent and normal."""
    sub = G._cache.get("fitting")
    if sub is None:
        union = 1
        for p in factorize(G.order):
            union |= p_core_bits(G, p)
        bits = closure_of_set_bits(G, union)
        sub = subgroup_from_bits(G, bits, verify=False)
        if not is_nilpotent_bits(G, bits) or not is_normal(G, sub):
            raise RuntimeError("Fitting construction produced a non-nilpotent or non-normal subgroup")
        G._cache["fitting"] = sub
    return sub


# -- upper central series ------------------------------------------------------


def upper_central_series(G: Group) -> SeriesReport:
    report = G._cache.get("ucs")
    if report is None:
        ct = G.commutator_table()
        terms = [1]
        cur = 1
        whole = full_mask(G.order)
        while True:
            in_z = bits_to_array(cur, G.order)
            member = np.zeros(G.order, dtype=bool)
            member[in_z] = True
            nxt = bits_from_bool_array(member[ct].all(axis=1))
            if nxt == cur:
                terms.append(nxt)
                break
            terms.append(nxt)
            cur = nxt
            if cur == whole:
                break
        subs = tuple(_subgroup(G, b) for b in terms)
        report = SeriesReport("upper-central", subs, True, len(subs))
        G._cache["ucs"] = report
    return report


def hypercenter(G: Group) -> Subgroup:
    return upper_central_series(G).terms[-1]


def hypercenter_bits(G: Group) -> int:
    return upper_central_series(G).terms[-1].bits


# -- independent nilpotency oracle ---------------------------------------------


def is_nilpotent_by_sylow_bits(G: Group, h_bits: int) -> bool:
    """True iff every Sylow subgroup of H is normal in H.

    Independent of the series route; the two must agree everywhere.
    """
    cache = G._cache.setdefault("nilpotent_sylow_by_bits", {})
    hit = cache.get(h_bits)
    if hit is not None:
        return hit
    size = h_bits.bit_count()
    result = True
    h_arr = bits_to_array(h_bits, G.order)
    for p in factorize(size):
        p_bits = sylow_subgroup_bits(G, h_bits, p)
        for h in h_arr.tolist():
            if conjugate_bits(G, p_bits, h) != p_bits:
                result = False
                break
        if not result:
            break
    cache[h_bits] = result
    return result


def is_nilpotent_by_sylow(G: Group, H: Subgroup) -> bool:
    G.check_owner(H)
    return is_nilpotent_by_sylow_bits(G, H.bits)


# -- maximal nilpotent extension -------------------------------------------------


def _nil_row_mask(G: Group, bits: int) -> Optional[int]:
    """Intersection of cached nilpotentizer rows over the members, if any."""
    rows = G._cache.get("nil_row")
    if not rows:
        return None
    mask = None
    probe = bits
    while probe:
        low = probe & -probe
        probe ^= low
        r = rows.get(low.bit_length() - 1)
        if r is not None:
            mask = r if mask is None else mask & r
    return mask


def extend_to_maximal_nilpotent_bits(G: Group, h_bits: int) -> int:
    if not is_nilpotent_bits(G, h_bits):
        raise ValueError("can only extend a nilpotent subgroup")
    memo = G._cache.setdefault("extend_by_bits", {})
    chain: list[int] = []
    bits = h_bits
    gens = list(reduce_generators(G, bits))
    while True:
        hit = memo.get(bits)
        if hit is not None:
            final = hit
            break
        chain.append(bits)
        found = None
        mask = _nil_row_mask(G, bits)
        scan = mask & ~bits if mask is not None else None
        if scan is not None:
            probe = scan
            while probe:
                low = probe & -probe
                probe ^= low
                z = low.bit_length() - 1
                k = closure_bits(G, gens + [z])
                if is_nilpotent_bits(G, k):
                    found = (z, k)
                    break
        else:
            for z in range(1, G.order):
                if (bits >> z) & 1:
                    continue
                k = closure_bits(G, gens + [z])
                if is_nilpotent_bits(G, k):
                    found = (z, k)
                    break
        if found is None:
            final = bits
            break
        gens.append(found[0])
        bits = found[1]
    for b in chain:
        memo[b] = final
    return final


def extend_to_maximal_nilpotent(G: Group, H: Subgroup) -> Subgroup:
    """Grow H to a maximal nilpotent subgroup, smallest eligible index first."""
    G.check_owner(H)
    return subgroup_from_bits(G, extend_to_maximal_nilpotent_bits(G, H.bits), verify=False)


# -- weak nilpotency --------------------------------------------------------------


def is_weakly_nilpotent(G: Group) -> bool:
    """True iff every two-generated subgroup is nilpotent."""
    hit = G._cache.get("weakly_nilpotent")
    if hit is None:
        hit = True
        n = G.order
        for x in range(1, n):
            row = centralizer_row_bits(G, x)
            for y in range(x + 1, n):
                if (row >> y) & 1:
                    continue
                if not is_nilpotent_bits(G, pair_closure_bits(G, x, y)):
                    hit = False
                    break
            if not hit:
                break
        G._cache["weakly_nilpotent"] = hit
    return hit


def centralizer_row_bits(G: Group, a: int) -> int:
    cache = G._cache.setdefault("centralizer_row", {})
    bits = cache.get(a)
    if bits is None:
        mask = G.table[a] == G.table[:, a]
        bits = bits_from_bool_array(mask)
        cache[a] = bits
    return bits


# -- conjugacy ----------------------------------------------------------------------


def conjugacy_classes(G: Group) -> list[np.ndarray]:
    """Conjugacy classes as sorted index arrays, ordered by smallest member."""
    classes = G._cache.get("conjugacy_classes")
    if classes is None:
        n = G.order
        t, inv = G.table, G.inv
        idx = np.arange(n)
        assigned = np.zeros(n, dtype=bool)
        classes = []
        for x in range(n):
            if assigned[x]:
                continue
            orbit = np.unique(t[t[inv, x], idx])
            assigned[orbit] = True
            classes.append(orbit)
        G._cache["conjugacy_classes"] = classes
    return classes


def class_representatives(G: Group) -> list[int]:
    return [int(c[0]) for c in conjugacy_classes(G)]


def is_simple(G: Group) -> bool:
    """No nontrivial proper normal subgroup; the trivial group is not simple.

    Every normal subgroup is a union of conjugacy classes, so it suffices
    that each nonidentity class generates the whole group.
    """
    hit = G._cache.get("is_simple")
    if hit is None:
        if G.order == 1:
            hit = False
        else:
            hit = True
            whole = full_mask(G.order)
            for cls in conjugacy_classes(G)[1:]:
                seed = 0
                for v in cls.tolist():
                    seed |= 1 << v
                if closure_of_set_bits(G, seed) != whole:
                    hit = False
                    break
        G._cache["is_simple"] = hit
    return hit


# -- profile -----------------------------------------------------------------------


def structure_profile(G: Group) -> StructureProfile:
    profile = G._cache.get("structure_profile")
    if profile is None:
        whole = full_mask(G.order)
        nil = is_nilpotent_bits(G, whole)
        solv = is_solvable_bits(G, whole)
        ucs = upper_central_series(G)
        from .groups import center

        sylow: dict[int, tuple[Subgroup, int]] = {}
        for p in sorted(factorize(G.order)):
            sylow[p] = (sylow_subgroup(G, p), sylow_count(G, p))
        profile = StructureProfile(
            fingerprint=G.fingerprint,
            order=G.order,
            is_nilpotent=nil,
            nilpotency_class=nilpotency_class_bits(G, whole),
            is_solvable=solv,
            derived_length=derived_length(G),
            center_size=center(G).size,
            hypercenter_size=ucs.terms[-1].size,
            fitting=fitting_subgroup(G),
            sylow=sylow,
        )
        G._cache["structure_profile"] = profile
    return profile
