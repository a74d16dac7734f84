"""Finite groups as explicit multiplication tables, with exact set algebra.

A group of order n has elements 0..n-1, index 0 reserved for the identity.
``mul[a][b]`` is the product "apply a, then b"; for permutation-built groups
this is left-to-right composition of the underlying permutations. All derived
objects (subgroups, quotients, products) inherit that one convention.
"""

from __future__ import annotations

import hashlib
import weakref
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import permutations as perms
from .bitsets import (
    bits_from_bool_array,
    bits_from_bytearray,
    bits_from_indices,
    bits_to_array,
    bits_to_bool_array,
    bits_to_indices,
    full_mask,
    is_subset,
)

DEFAULT_ORDER_CAP = 5000
ASSOC_EXHAUSTIVE_LIMIT = 256
ASSOC_SAMPLE_TRIPLES = 1_000_000


class GroupBuildError(ValueError):
    """Raised when a group description fails validation or exceeds the cap."""


class OwnerMismatchError(ValueError):
    """Raised when an element set is used with a group it does not belong to."""


@dataclass(frozen=True)
class ElementSet:
    """A subset of a group's elements, stored as an int bitmask."""

    owner: str
    bits: int
    order: int

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def members(self) -> Iterator[int]:
        return bits_to_indices(self.bits)

    def member_array(self) -> np.ndarray:
        return bits_to_array(self.bits, self.order)

    def __contains__(self, idx: int) -> bool:
        return bool((self.bits >> idx) & 1)

    def issubset(self, other: "ElementSet") -> bool:
        self._check_owner(other)
        return is_subset(self.bits, other.bits)

    def union(self, other: "ElementSet") -> "ElementSet":
        self._check_owner(other)
        return ElementSet(self.owner, self.bits | other.bits, self.order)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._check_owner(other)
        return ElementSet(self.owner, self.bits & other.bits, self.order)

    def same_set(self, other: "ElementSet") -> bool:
        self._check_owner(other)
        return self.bits == other.bits

    def _check_owner(self, other: "ElementSet") -> None:
        if self.owner != other.owner:
            raise OwnerMismatchError(
                f"element sets belong to different groups: {self.owner[:12]} vs {other.owner[:12]}"
            )


@dataclass(frozen=True)
class Subgroup(ElementSet):
    """An ElementSet produced by closure, together with the generators used."""

    gens: tuple[int, ...] = ()

    def as_element_set(self) -> ElementSet:
        return ElementSet(self.owner, self.bits, self.order)


@dataclass(frozen=True)
class Quotient:
    """A quotient group G/N with its projection map."""

    base: str
    kernel: Subgroup
    group: "Group"
    projection: tuple[int, ...]

    def project_set(self, bits: int) -> int:
        out = 0
        for i in bits_to_indices(bits):
            out |= 1 << self.projection[i]
        return out


class Group:
    """An immutable finite group given by its full multiplication table.

    Instances are only created through :func:`build_group`, :func:`quotient`,
    :func:`direct_product`, or the internal ``_from_table``; all of those
    enforce the table invariants. The ``_cache`` dict holds memoized derived
    data (orders, series, nilpotency results); it is safe to share across
    threads under CPython's atomic dict operations since entries are only
    ever inserted, never mutated.
    """

    __slots__ = (
        "order", "table", "inv", "rows", "inv_list", "labels",
        "fingerprint", "name", "_cache", "__weakref__",
    )

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use build_group() or the construction helpers")

    @classmethod
    def _new(
        cls,
        table: np.ndarray,
        labels: Optional[list[str]],
        name: Optional[str],
    ) -> "Group":
        fingerprint = _fingerprint(table)
        existing = _REGISTRY.get(fingerprint)
        if existing is not None:
            # identical table, so all memoized results carry over
            return existing
        self = object.__new__(cls)
        n = table.shape[0]
        self.order = n
        self.table = table
        self.rows = [array("i", row.tolist()) for row in table]
        inv = np.argmax(table == 0, axis=1).astype(np.int64)
        self.inv = inv
        self.inv_list = array("i", inv.tolist())
        self.labels = labels
        self.name = name
        self.fingerprint = fingerprint
        self._cache = {}
        _REGISTRY[fingerprint] = self
        return self

    # -- element arithmetic ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv_of(self, a: int) -> int:
        return self.inv_list[a]

    def conjugate(self, x: int, g: int) -> int:
        """g^-1 x g."""
        r = self.rows
        return r[r[self.inv_list[g]][x]][g]

    def label_of(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def element_set(self, indices: Iterable[int]) -> ElementSet:
        bits = bits_from_indices(indices)
        if bits >> self.order:
            raise ValueError("element index out of range")
        return ElementSet(self.fingerprint, bits, self.order)

    def whole_set(self) -> ElementSet:
        return ElementSet(self.fingerprint, full_mask(self.order), self.order)

    def check_owner(self, s: ElementSet) -> None:
        if s.owner != self.fingerprint:
            raise OwnerMismatchError("element set does not belong to this group")

    def __repr__(self) -> str:
        tag = self.name or self.fingerprint[:12]
        return f"Group({tag}, order={self.order})"

    # -- cached element orders ----------------------------------------------

    def element_orders(self) -> np.ndarray:
        orders = self._cache.get("element_orders")
        if orders is None:
            n = self.order
            idx = np.arange(n)
            cur = idx.copy()
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            k = 1
            while (orders == 0).any():
                k += 1
                cur = self.table[cur, idx]
                hit = (cur == 0) & (orders == 0)
                orders[hit] = k
            self._cache["element_orders"] = orders
        return orders

    def commutator_table(self) -> np.ndarray:
        """Full n x n table of commutators [a, b]; cached."""
        ct = self._cache.get("commutator_table")
        if ct is None:
            t, inv = self.table, self.inv
            n = self.order
            ct = t[np.ix_(inv, inv)]
            ct = t[ct, np.arange(n)[:, None]]
            ct = t[ct, np.arange(n)[None, :]]
            self._cache["commutator_table"] = ct
        return ct


def _fingerprint(table: np.ndarray) -> str:
    h = hashlib.sha256()
    h.update(b"cayley-v1:")
    h.update(str(table.shape[0]).encode())
    h.update(b":")
    h.update(np.ascontiguousarray(table, dtype=np.int32).tobytes())
    return h.hexdigest()


# one Group instance per distinct table, so memoized results are shared
_REGISTRY: "weakref.WeakValueDictionary[str, Group]" = weakref.WeakValueDictionary()


# -- validation -------------------------------------------------------------


def _validate_table(table: np.ndarray, *, check_associativity: bool, seed: int) -> None:
    n = table.shape[0]
    if table.shape != (n, n):
        raise GroupBuildError("multiplication table is not square")
    if table.min() < 0 or table.max() >= n:
        raise GroupBuildError("table entry out of range")
    idx = np.arange(n)
    if not (table[0] == idx).all() or not (table[:, 0] == idx).all():
        raise GroupBuildError("element 0 is not a two-sided identity")
    if not (np.sort(table, axis=1) == idx).all() or not (np.sort(table, axis=0) == idx[:, None]).all():
        raise GroupBuildError("table is not a Latin square")
    inv = np.argmax(table == 0, axis=1)
    if not (table[idx, inv] == 0).all() or not (table[inv, idx] == 0).all():
        raise GroupBuildError("missing two-sided inverses")
    if not check_associativity:
        return
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        for a in range(n):
            if not (table[table[a]] == table[a][table]).all():
                raise GroupBuildError(f"associativity fails at element {a}")
    else:
        rng = np.random.default_rng(seed)
        remaining = ASSOC_SAMPLE_TRIPLES
        block = 250_000
        while remaining > 0:
            m = min(block, remaining)
            a = rng.integers(0, n, m)
            b = rng.integers(0, n, m)
            c = rng.integers(0, n, m)
            if not (table[table[a, b], c] == table[a, table[b, c]]).all():
                raise GroupBuildError("associativity fails on sampled triples")
            remaining -= m


# -- construction -----------------------------------------------------------


def _dtype_for_degree(degree: int):
    return np.uint8 if degree <= 255 else np.uint16


def _group_from_permutations(
    generators: list[tuple[int, ...]],
    degree: int,
    *,
    max_order: int,
    name: Optional[str],
) -> Group:
    for g in generators:
        if len(g) != degree or not perms.is_permutation(g):
            raise GroupBuildError(f"generator is not a permutation of degree {degree}")
    start = perms.identity(degree)
    seen = {start: 0}
    elems = [start]
    i = 0
    while i < len(elems):
        w = elems[i]
        i += 1
        for g in generators:
            v = perms.compose(w, g)
            if v not in seen:
                if len(elems) >= max_order:
                    raise GroupBuildError(f"closure exceeds order cap {max_order}")
                seen[v] = len(elems)
                elems.append(v)
    n = len(elems)
    dt = _dtype_for_degree(degree)
    pmat = np.array(elems, dtype=dt).reshape(n, degree)
    width = pmat.itemsize * degree
    buf = pmat.tobytes()
    index_of = {buf[k * width:(k + 1) * width]: k for k in range(n)}
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        composed = pmat[:, pmat[a]]  # row b = perm a followed by perm b
        cbuf = composed.tobytes()
        row = table[a]
        for b in range(n):
            row[b] = index_of[cbuf[b * width:(b + 1) * width]]
    # identity sits at index 0 by construction; associative by construction
    _validate_table(table, check_associativity=False, seed=0)
    labels = [perms.format_cycles(p) for p in elems]
    return Group._new(table, labels, name)


def build_group(
    description: dict,
    *,
    max_order: int = DEFAULT_ORDER_CAP,
    seed: int = 0,
    name: Optional[str] = None,
) -> Group:
    """Build a Group from a structured description.

    Two description forms are accepted:

    - ``{"type": "permutation", "degree": d, "generators": [cycle strings]}``
    - ``{"type": "cayley", "order": n, "identity": 0, "table": [[...]]}``
      with an optional ``"labels"`` list.

    Permutation closures are associative by construction; explicit Cayley
    tables are checked exhaustively up to order 256 and by seeded random
    sampling of at least 10^6 triples above that.
    """
    kind = description.get("type")
    if kind == "permutation":
        degree = description.get("degree")
        if not isinstance(degree, int) or degree < 1:
            raise GroupBuildError("permutation description needs a positive degree")
        gens = [perms.parse_cycles(s, degree) for s in description.get("generators", [])]
        return _group_from_permutations(gens, degree, max_order=max_order, name=name)
    if kind == "cayley":
        raw = description.get("table")
        if raw is None:
            raise GroupBuildError("cayley description needs a table")
        table = np.asarray(raw, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupBuildError("cayley table must be square")
        n = table.shape[0]
        if description.get("order") not in (None, n):
            raise GroupBuildError("declared order does not match table size")
        if description.get("identity", 0) != 0:
            raise GroupBuildError("identity must sit at index 0")
        if n > max_order:
            raise GroupBuildError(f"order {n} exceeds cap {max_order}")
        table = table.astype(np.int32)
        _validate_table(table, check_associativity=True, seed=seed)
        labels = description.get("labels")
        if labels is not None:
            labels = [str(x) for x in labels]
            if len(labels) != n:
                raise GroupBuildError("labels length does not match order")
        return Group._new(table, labels, name)
    raise GroupBuildError(f"unknown description type: {kind!r}")


# -- elementary operations ----------------------------------------------------


def element_order(G: Group, a: int) -> int:
    """Smallest k >= 1 with a^k = identity."""
    return int(G.element_orders()[a])


def commutator(G: Group, a: int, b: int) -> int:
    """a^-1 b^-1 a b."""
    r = G.rows
    inv = G.inv_list
    return r[r[r[inv[a]][inv[b]]][a]][b]


def left_normed_commutator(G: Group, word: Sequence[int]) -> int:
    """Iterated commutator over a nonempty word, folding left to right.

    A one-letter word is the letter itself; longer words repeatedly replace
    the accumulated prefix w and next letter a by w^-1 a^-1 w a.
    """
    if not word:
        raise ValueError("left-normed commutator of an empty word")
    acc = word[0]
    for a in word[1:]:
        acc = commutator(G, acc, a)
    return acc


def cyclic_subgroup_bits(G: Group, a: int) -> int:
    bits = 1
    cur = a
    row = G.rows
    while cur != 0:
        bits |= 1 << cur
        cur = row[cur][a]
    return bits


def closure_bits(G: Group, gens: Sequence[int], *, lagrange_shortcut: bool = True) -> int:
    """Bitmask of the subgroup generated by ``gens``.

    BFS from the identity, right-multiplying by generators in the given
    order. Once the partial closure passes order/2 the result must be the
    whole group, so it returns early (disable via ``lagrange_shortcut`` only
    for diagnostics).
    """
    n = G.order
    known = bytearray(n)
    known[0] = 1
    elems = [0]
    rows = G.rows
    half = n // 2
    count = 1
    i = 0
    while i < len(elems):
        e = elems[i]
        i += 1
        re = rows[e]
        for g in gens:
            v = re[g]
            if not known[v]:
                known[v] = 1
                elems.append(v)
                count += 1
                if lagrange_shortcut and count > half:
                    return full_mask(n)
    return bits_from_bytearray(known)


def generated_subgroup(G: Group, gens: Sequence[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (and the identity)."""
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"generator index {g} out of range")
    bits = closure_bits(G, tuple(gens))
    return Subgroup(G.fingerprint, bits, G.order, tuple(gens))


def pair_closure_bits(G: Group, x: int, y: int) -> int:
    """Closure of {x, y}; the hot path of nilpotentizer sweeps."""
    n = G.order
    known = bytearray(n)
    known[0] = 1
    elems = [0]
    rows = G.rows
    half = n // 2
    count = 1
    i = 0
    while i < len(elems):
        re = rows[elems[i]]
        i += 1
        v = re[x]
        if not known[v]:
            known[v] = 1
            elems.append(v)
            count += 1
        v = re[y]
        if not known[v]:
            known[v] = 1
            elems.append(v)
            count += 1
    if count > half:
        return full_mask(n)
    return bits_from_bytearray(known)


def subgroup_from_bits(G: Group, bits: int, *, verify: bool = True) -> Subgroup:
    """Wrap a bitmask known to be (or verified to be) a subgroup."""
    if bits & 1 == 0:
        raise ValueError("subgroup must contain the identity (index 0)")
    size = bits.bit_count()
    if G.order % size:
        raise ValueError("member count does not divide the group order")
    if verify and not is_closed_set(G, bits):
        raise ValueError("member set is not closed under product and inverse")
    return Subgroup(G.fingerprint, bits, G.order, tuple(reduce_generators(G, bits)))


def is_closed_set(G: Group, bits: int) -> bool:
    """Closure of a raw member set under product and inverse."""
    arr = bits_to_array(bits, G.order)
    mask = bits_to_bool_array(bits, G.order)
    if not mask[G.inv[arr]].all():
        return False
    prods = G.table[np.ix_(arr, arr)]
    return bool(mask[prods].all())


def reduce_generators(G: Group, bits: int) -> list[int]:
    """A short generator list for a subgroup given by its member bits."""
    gens: list[int] = []
    have = 1
    for m in bits_to_indices(bits):
        if (have >> m) & 1:
            continue
        gens.append(m)
        have = closure_bits(G, gens, lagrange_shortcut=False)
        if have == bits:
            break
    return gens


def centralizer_bits(G: Group, a: int) -> int:
    mask = G.table[a] == G.table[:, a]
    return bits_from_bool_array(mask)


def centralizer(G: Group, a: int) -> Subgroup:
    """Everything commuting with a."""
    return Subgroup(G.fingerprint, centralizer_bits(G, a), G.order, ())


def centralizer_of_set(G: Group, S: ElementSet) -> Subgroup:
    """Everything commuting with every member of S."""
    G.check_owner(S)
    arr = S.member_array()
    if arr.size == 0:
        return Subgroup(G.fingerprint, full_mask(G.order), G.order, ())
    mask = np.ones(G.order, dtype=bool)
    for a in arr:
        mask &= G.table[a] == G.table[:, a]
    return Subgroup(G.fingerprint, bits_from_bool_array(mask), G.order, ())


def center(G: Group) -> Subgroup:
    sub = G._cache.get("center")
    if sub is None:
        ct = G.commutator_table()
        mask = (ct == 0).all(axis=1)
        sub = Subgroup(G.fingerprint, bits_from_bool_array(mask), G.order, ())
        G._cache["center"] = sub
    return sub


def is_normal(G: Group, H: Subgroup | ElementSet) -> bool:
    G.check_owner(H)
    bits = H.bits
    if bits == full_mask(G.order) or bits == 1:
        return True
    arr = bits_to_array(bits, G.order)
    mask = bits_to_bool_array(bits, G.order)
    t, inv = G.table, G.inv
    for g in range(G.order):
        if not mask[t[t[inv[g], arr], g]].all():
            return False
    return True


def conjugate_bits(G: Group, bits: int, g: int) -> int:
    arr = bits_to_array(bits, G.order)
    conj = G.table[G.table[G.inv[g], arr], g]
    return int(bits_from_indices(conj.tolist()))


def quotient(G: Group, N: Subgroup) -> Quotient:
    """The coset group G/N for a normal subgroup N.

    Cosets are indexed by their minimal member, sorted; the identity coset
    therefore lands at index 0. The projection is checked exhaustively to be
    a homomorphism onto the constructed table.
    """
    G.check_owner(N)
    if not is_normal(G, N):
        raise ValueError("cannot form a quotient by a non-normal subgroup")
    n = G.order
    n_arr = N.member_array()
    rep = G.table[:, n_arr].min(axis=1)
    reps_sorted = np.unique(rep)
    q = reps_sorted.size
    index_of = {int(r): i for i, r in enumerate(reps_sorted)}
    proj = np.array([index_of[int(r)] for r in rep], dtype=np.int64)
    qtable = proj[G.table[np.ix_(reps_sorted, reps_sorted)]].astype(np.int32)
    if not (proj[G.table] == qtable[proj[:, None], proj[None, :]]).all():
        raise GroupBuildError("quotient projection is not a homomorphism")
    labels = None
    if G.labels is not None:
        labels = [G.labels[int(r)] for r in reps_sorted]
    qgroup = Group._new(qtable, labels, None)
    if qgroup.order * N.size != n:
        raise GroupBuildError("coset count does not match the index")
    return Quotient(G.fingerprint, N, qgroup, tuple(int(p) for p in proj))


def is_maximal_subgroup(G: Group, H: Subgroup | ElementSet) -> bool:
    """True when no subgroup sits strictly between H and G."""
    G.check_owner(H)
    if H.bits == full_mask(G.order):
        raise ValueError("H equals the whole group; maximality needs a proper subgroup")
    gens = list(reduce_generators(G, H.bits))
    for g in range(1, G.order):
        if (H.bits >> g) & 1:
            continue
        if closure_bits(G, gens + [g]) != full_mask(G.order):
            return False
    return True


@dataclass(frozen=True)
class DirectProductResult:
    """A product group with the two factor embeddings."""

    group: Group
    left: Subgroup
    right: Subgroup


def direct_product(G: Group, H: Group, *, max_order: int = DEFAULT_ORDER_CAP) -> DirectProductResult:
    """Componentwise product; element (a, b) is encoded as a*|H| + b."""
    n = G.order * H.order
    if n > max_order:
        raise GroupBuildError(f"product order {n} exceeds cap {max_order}")
    h = H.order
    big = (G.table.astype(np.int64)[:, None, :, None] * h
           + H.table.astype(np.int64)[None, :, None, :])
    table = big.reshape(n, n).astype(np.int32)
    labels = None
    if G.labels is not None and H.labels is not None:
        labels = [f"({G.labels[a]}, {H.labels[b]})" for a in range(G.order) for b in range(h)]
    prod = Group._new(table, labels, None)
    left_bits = bits_from_indices(a * h for a in range(G.order))
    right_bits = bits_from_indices(range(h))
    left = subgroup_from_bits(prod, left_bits)
    right = subgroup_from_bits(prod, right_bits)
    return DirectProductResult(prod, left, right)
