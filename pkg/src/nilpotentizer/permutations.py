"""Permutation tuples and cycle notation.

Permutations are tuples mapping 0-based points to 0-based points. Composition
is left to right: ``compose(a, b)`` applies ``a`` first, then ``b``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Apply a, then b."""
    return tuple(b[a[i]] for i in range(len(a)))


def inverse(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_order(a: Sequence[int]) -> int:
    seen = [False] * len(a)
    order = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        order = math.lcm(order, length)
    return order


def is_permutation(a: Sequence[int]) -> bool:
    return sorted(a) == list(range(len(a)))


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation like "(1 2 3)(4 5)" with 1-based points.

    Points may be separated by whitespace or commas. "()" and the empty
    string denote the identity.

    Raises ValueError on malformed input, repeated points, or points outside
    1..degree.
    """
    stripped = text.strip()
    if stripped in ("", "()"):
        return identity(degree)
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    out = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        parts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
        if not parts:
            continue
        try:
            points = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"non-integer point in cycle: {text!r}") from None
        for p in points:
            if not 1 <= p <= degree:
                raise ValueError(f"point {p} outside 1..{degree} in {text!r}")
            if p - 1 in used:
                raise ValueError(f"point {p} repeated in {text!r}")
            used.add(p - 1)
        for k in range(len(points)):
            out[points[k] - 1] = points[(k + 1) % len(points)] - 1
    return tuple(out)


def format_cycles(a: Sequence[int]) -> str:
    """Disjoint-cycle notation with 1-based points; identity formats as "()"."""
    seen = [False] * len(a)
    chunks = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cycle = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            cycle.append(j)
            seen[j] = True
            j = a[j]
        chunks.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(chunks) or "()"


def closure_order(generators: Iterable[Sequence[int]], cap: int | None = None) -> int:
    """Size of the permutation group generated, by plain BFS closure.

    Kept deliberately independent of the table machinery so it can serve as
    an oracle for build sizes.
    """
    gens = [tuple(g) for g in generators]
    if not gens:
        return 1
    start = identity(len(gens[0]))
    seen = {start}
    queue = [start]
    i = 0
    while i < len(queue):
        w = queue[i]
        i += 1
        for g in gens:
            v = compose(w, g)
            if v not in seen:
                seen.add(v)
                queue.append(v)
                if cap is not None and len(seen) > cap:
                    raise ValueError(f"closure exceeds cap {cap}")
    return len(seen)
