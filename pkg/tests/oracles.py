"""Independent brute-force oracles used to pin expected values.

Everything here works directly on permutation tuples with plain set algebra
and knows nothing about the package's table, bitset, or memoization
machinery, so it can serve as the second route for every derived value.
Convention matches the package: compose(a, b) applies a first, then b.
"""

from __future__ import annotations

import itertools


def compose(a, b):
    return tuple(b[a[i]] for i in range(len(a)))


def inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def identity(n):
    return tuple(range(n))


def cyc(n, *cycles):
    """1-based disjoint cycles -> permutation tuple of degree n."""
    out = list(range(n))
    for c in cycles:
        for i in range(len(c)):
            out[c[i] - 1] = c[(i + 1) % len(c)] - 1
    return tuple(out)


def closure(gens):
    """BFS closure from the identity, multiplying by generators in order."""
    if not gens:
        return [()]
    start = identity(len(gens[0]))
    seen = {start}
    order = [start]
    i = 0
    while i < len(order):
        w = order[i]
        i += 1
        for g in gens:
            v = compose(w, g)
            if v not in seen:
                seen.add(v)
                order.append(v)
    return order


def subgroup_closure(elems):
    elems = [e for e in elems]
    if not elems:
        return []
    return closure(elems)


def comm(a, b):
    return compose(compose(compose(inverse(a), inverse(b)), a), b)


def left_normed(word):
    acc = word[0]
    for a in word[1:]:
        acc = comm(acc, a)
    return acc


def lower_central(H):
    """Full-set lower central series; returns the list of term sets."""
    Hs = list(H)
    terms = [set(Hs)]
    gamma = Hs
    while True:
        if len(gamma) == 1:
            break
        nxt = subgroup_closure({comm(a, b) for a in gamma for b in Hs})
        if set(nxt) == set(gamma):
            terms.append(set(nxt))
            break
        terms.append(set(nxt))
        if len(nxt) == 1:
            break
        gamma = nxt
    return terms


def is_nilpotent(H):
    return len(lower_central(H)[-1]) == 1


def nilpotency_class(H):
    terms = lower_central(H)
    return len(terms) - 1 if len(terms[-1]) == 1 else None


def derived(H):
    terms = [set(H)]
    cur = list(H)
    while True:
        if len(cur) == 1:
            break
        nxt = subgroup_closure({comm(a, b) for a in cur for b in cur})
        if set(nxt) == set(cur):
            terms.append(set(nxt))
            break
        terms.append(set(nxt))
        if len(nxt) == 1:
            break
        cur = nxt
    return terms


def is_solvable(H):
    return len(derived(H)[-1]) == 1


def nil_of(G, x):
    """The nilpotentizer of x computed by raw pair closures."""
    return {y for y in G if is_nilpotent(subgroup_closure({x, y}))}


def centralizer(G, x):
    return {g for g in G if compose(g, x) == compose(x, g)}


def perm_order(p):
    k, c = 1, p
    e = identity(len(p))
    while c != e:
        c = compose(c, p)
        k += 1
    return k


def subgroups_of_order(G, size):
    """All subgroups of the given order arising as two-generated closures."""
    found = set()
    for a, b in itertools.combinations_with_replacement(G, 2):
        H = subgroup_closure({a, b})
        if len(H) == size:
            found.add(frozenset(H))
    return found
