"""Named group corpus, description generators, ingestion, and the disk store.

Every corpus entry is a permutation description, so the whole corpus is
reconstructible from shipped data with no external group database. Tags are
always recomputed from the built group and compared with the expectations
recorded here; the corpus doubles as a regression suite for the structure
machinery.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from . import permutations as perms
from .groups import DEFAULT_ORDER_CAP, Group, GroupBuildError, build_group
from .structure import is_nilpotent_bits, is_simple, is_solvable_bits, factorize
from .bitsets import full_mask

SCHEMA_VERSION = 1
CACHE_DIR_ENV = "NILPOTENTIZER_CACHE_DIR"


@dataclass(frozen=True)
class CorpusEntry:
    """A named construction plus the expectations verified at build time."""

    name: str
    construction: dict
    order: int
    tags: frozenset[str]
    factors: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None


class StoreError(RuntimeError):
    """Raised on cache corruption or schema mismatch."""


# -- description generators -----------------------------------------------------


def _cycle(points: Iterable[int]) -> str:
    return "(" + " ".join(str(p) for p in points) + ")"


def cyclic_description(n: int) -> dict:
    gens = [] if n == 1 else [_cycle(range(1, n + 1))]
    return {"type": "permutation", "degree": max(n, 1), "generators": gens}


def dihedral_description(m: int) -> dict:
    """Dihedral group of order 2m acting on an m-gon, m >= 3."""
    if m < 3:
        raise ValueError("dihedral construction needs m >= 3")
    rotation = _cycle(range(1, m + 1))
    reflection = "".join(_cycle((i + 1, m - i)) for i in range(m // 2))
    return {"type": "permutation", "degree": m, "generators": [rotation, reflection]}


def elementary_abelian_description(p: int) -> dict:
    """C_p x C_p on 2p points, one p-cycle per factor."""
    return {
        "type": "permutation",
        "degree": 2 * p,
        "generators": [_cycle(range(1, p + 1)), _cycle(range(p + 1, 2 * p + 1))],
    }


def symmetric_description(n: int) -> dict:
    return {
        "type": "permutation",
        "degree": n,
        "generators": ["(1 2)", _cycle(range(1, n + 1))],
    }


def alternating_description(n: int) -> dict:
    if n < 3:
        raise ValueError("alternating construction needs n >= 3")
    long_cycle = _cycle(range(1, n + 1)) if n % 2 == 1 else _cycle(range(2, n + 1))
    return {"type": "permutation", "degree": n, "generators": ["(1 2 3)", long_cycle]}


def dicyclic_description(m: int) -> dict:
    """Dicyclic group of order 4m (quaternion for m a power of two).

    Uses the right regular action of the normal form a^i b^j; right
    translations compose homomorphically under the apply-then convention.
    """
    if m < 2:
        raise ValueError("dicyclic construction needs m >= 2")
    n2 = 2 * m

    def mul(u: int, v: int) -> int:
        i, e1 = u % n2, u // n2
        j, e2 = v % n2, v // n2
        if e1 == 0 and e2 == 0:
            return (i + j) % n2
        if e1 == 0 and e2 == 1:
            return n2 + (i + j) % n2
        if e1 == 1 and e2 == 0:
            return n2 + (i - j) % n2
        return (i - j + m) % n2

    size = 4 * m
    r_a = tuple(mul(z, 1) for z in range(size))
    r_b = tuple(mul(z, n2) for z in range(size))
    return {
        "type": "permutation",
        "degree": size,
        "generators": [perms.format_cycles(r_a), perms.format_cycles(r_b)],
    }


def _is_prime(n: int) -> bool:
    return n > 1 and factorize(n).get(n) == 1


def sl2_description(p: int) -> dict:
    """SL(2, p) acting on the p^2 - 1 nonzero column vectors over F_p."""
    if not _is_prime(p) or p < 3:
        raise ValueError("SL(2, p) construction needs an odd prime p")
    points = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(points)}

    def act(m: tuple[int, int, int, int]) -> tuple[int, ...]:
        return tuple(
            index[((m[0] * x + m[1] * y) % p, (m[2] * x + m[3] * y) % p)]
            for (x, y) in points
        )

    t = act((1, 1, 0, 1))
    s = act((0, p - 1, 1, 0))
    return {
        "type": "permutation",
        "degree": len(points),
        "generators": [perms.format_cycles(t), perms.format_cycles(s)],
    }


def psl2(q: int) -> dict:
    """PSL(2, q) on the q + 1 projective points, for odd prime q.

    Generated by z -> z + 1 and z -> -1/z; point i <= q is the field value
    i - 1 and point q + 1 is the point at infinity. The closure has order
    q(q - 1)(q + 1) / 2.
    """
    if not _is_prime(q) or q < 5:
        raise ValueError("supported PSL(2, q) constructions need an odd prime q >= 5")
    if q * (q * q - 1) // 2 > DEFAULT_ORDER_CAP:
        raise ValueError(f"PSL(2, {q}) exceeds the default order cap")
    infinity = q  # 0-based point index for the extra point
    t = tuple((z + 1) % q for z in range(q)) + (infinity,)

    def s_image(z: int) -> int:
        if z == infinity:
            return 0
        if z == 0:
            return infinity
        return (-pow(z, q - 2, q)) % q

    s = tuple(s_image(z) for z in range(q)) + (s_image(infinity),)
    return {
        "type": "permutation",
        "degree": q + 1,
        "generators": [perms.format_cycles(t), perms.format_cycles(s)],
    }


def _shift_cycles(text: str, offset: int, degree: int) -> str:
    perm = perms.parse_cycles(text, degree)
    shifted = tuple(range(offset)) + tuple(p + offset for p in perm)
    return perms.format_cycles(shifted)


def product_description(parts: list[dict]) -> dict:
    """Disjoint-support union of permutation descriptions."""
    degree = 0
    gens: list[str] = []
    for part in parts:
        d = part["degree"]
        gens.extend(_shift_cycles(g, degree, d) for g in part["generators"])
        degree += d
    return {"type": "permutation", "degree": degree, "generators": gens}


# -- builtin corpus ----------------------------------------------------------------


def _psl_order(q: int) -> int:
    return q * (q - 1) * (q + 1) // 2


def builtin_corpus() -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []

    def tagset(order: int, *, solvable: bool, nilpotent: bool, simple: bool) -> frozenset[str]:
        tags = {"solvable" if solvable else "non-solvable"}
        if nilpotent:
            tags.add("nilpotent")
        if simple:
            tags.add("simple")
        return frozenset(tags)

    for n in range(1, 33):
        entries.append(CorpusEntry(
            f"C{n}", cyclic_description(n), n,
            tagset(n, solvable=True, nilpotent=True, simple=_is_prime(n)),
        ))
    for m in range(3, 17):
        entries.append(CorpusEntry(
            f"D{2 * m}", dihedral_description(m), 2 * m,
            tagset(2 * m, solvable=True, nilpotent=(m & (m - 1)) == 0, simple=False),
        ))
    entries.append(CorpusEntry("Q8", dicyclic_description(2), 8,
                               tagset(8, solvable=True, nilpotent=True, simple=False)))
    entries.append(CorpusEntry("Q16", dicyclic_description(4), 16,
                               tagset(16, solvable=True, nilpotent=True, simple=False)))
    for p in (2, 3, 5):
        entries.append(CorpusEntry(
            f"E{p * p}", elementary_abelian_description(p), p * p,
            tagset(p * p, solvable=True, nilpotent=True, simple=False),
        ))
    entries.append(CorpusEntry("S3", symmetric_description(3), 6,
                               tagset(6, solvable=True, nilpotent=False, simple=False)))
    entries.append(CorpusEntry("S4", symmetric_description(4), 24,
                               tagset(24, solvable=True, nilpotent=False, simple=False)))
    entries.append(CorpusEntry("S5", symmetric_description(5), 120,
                               tagset(120, solvable=False, nilpotent=False, simple=False)))
    entries.append(CorpusEntry("A4", alternating_description(4), 12,
                               tagset(12, solvable=True, nilpotent=False, simple=False)))
    entries.append(CorpusEntry("A5", alternating_description(5), 60,
                               tagset(60, solvable=False, nilpotent=False, simple=True)))
    entries.append(CorpusEntry("A6", alternating_description(6), 360,
                               tagset(360, solvable=False, nilpotent=False, simple=True)))
    entries.append(CorpusEntry("SL(2,3)", sl2_description(3), 24,
                               tagset(24, solvable=True, nilpotent=False, simple=False)))
    entries.append(CorpusEntry("SL(2,5)", sl2_description(5), 120,
                               tagset(120, solvable=False, nilpotent=False, simple=False)))
    for q in (5, 7, 11, 13, 17):
        entries.append(CorpusEntry(
            f"PSL(2,{q})", psl2(q), _psl_order(q),
            tagset(_psl_order(q), solvable=False, nilpotent=False, simple=True),
        ))
    entries.append(CorpusEntry(
        "S3xC2",
        product_description([symmetric_description(3), cyclic_description(2)]),
        12, tagset(12, solvable=True, nilpotent=False, simple=False),
        factors=((0, 1), (2,)),
    ))
    entries.append(CorpusEntry(
        "Q8xS3",
        product_description([dicyclic_description(2), symmetric_description(3)]),
        48, tagset(48, solvable=True, nilpotent=False, simple=False),
        factors=((0, 1), (2, 3)),
    ))
    entries.append(CorpusEntry(
        "A5xC2",
        product_description([alternating_description(5), cyclic_description(2)]),
        120, tagset(120, solvable=False, nilpotent=False, simple=False),
        factors=((0, 1), (2,)),
    ))
    return entries


_GROUPS: dict[str, Group] = {}
_ENTRIES: Optional[dict[str, CorpusEntry]] = None


def corpus_index() -> dict[str, CorpusEntry]:
    global _ENTRIES
    if _ENTRIES is None:
        _ENTRIES = {e.name: e for e in builtin_corpus()}
    return _ENTRIES


def compute_tags(G: Group) -> frozenset[str]:
    whole = full_mask(G.order)
    tags = {"solvable" if is_solvable_bits(G, whole) else "non-solvable"}
    if is_nilpotent_bits(G, whole):
        tags.add("nilpotent")
    if is_simple(G):
        tags.add("simple")
    return frozenset(tags)


def build_entry(entry: CorpusEntry, *, verify_tags: bool = False) -> Group:
    """Build a corpus entry, verifying the declared order (and tags on demand).

    Built groups are cached per process; the heavy tag verification runs in
    the test suite rather than on every build.
    """
    G = _GROUPS.get(entry.name)
    if G is None:
        G = build_group(entry.construction, name=entry.name)
        if G.order != entry.order:
            raise GroupBuildError(
                f"{entry.name}: built order {G.order} != declared {entry.order}"
            )
        _GROUPS[entry.name] = G
    if verify_tags:
        actual = compute_tags(G)
        if actual != entry.tags:
            raise GroupBuildError(
                f"{entry.name}: computed tags {sorted(actual)} != declared {sorted(entry.tags)}"
            )
    return G


def get_group(name: str) -> Group:
    """Look up a builtin corpus group by name (case-insensitive)."""
    index = corpus_index()
    entry = index.get(name)
    if entry is None:
        folded = {k.lower(): v for k, v in index.items()}
        entry = folded.get(name.lower())
    if entry is None:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(sorted(index))}")
    return build_entry(entry)


def corpus_manifest(entries: list[CorpusEntry]) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "entries": [
            {"name": e.name, "order": e.order, "tags": sorted(e.tags)}
            for e in entries
        ],
    }


# -- ingestion ------------------------------------------------------------------------


def ingest(path: str | Path, *, max_order: int = DEFAULT_ORDER_CAP) -> tuple[CorpusEntry, Group]:
    """Load a group-description file and build it into a validated entry.

    The file holds one description dict, optionally with a "name" key. Tags
    and order are computed from the built group, never trusted from the file.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupBuildError(f"cannot read group description {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise GroupBuildError(f"{path}: description must be a JSON object")
    name = str(raw.get("name") or path.stem)
    description = {k: v for k, v in raw.items() if k != "name"}
    G = build_group(description, max_order=max_order, name=name)
    entry = CorpusEntry(name, description, G.order, compute_tags(G))
    return entry, G


def load_corpus_dir(path: str | Path) -> list[tuple[CorpusEntry, Group]]:
    """Ingest every description file in a directory.

    When a corpus.json manifest is present its entries drive the load and the
    declared orders are checked; otherwise all *.json files are ingested.
    """
    path = Path(path)
    manifest = path / "corpus.json"
    out: list[tuple[CorpusEntry, Group]] = []
    if manifest.exists():
        spec = json.loads(manifest.read_text(encoding="utf-8"))
        for item in spec.get("entries", []):
            entry, G = ingest(path / item["file"])
            declared = item.get("order")
            if declared is not None and declared != G.order:
                raise GroupBuildError(
                    f"{item['file']}: built order {G.order} != manifest order {declared}"
                )
            if item.get("name"):
                entry = CorpusEntry(str(item["name"]), entry.construction, entry.order,
                                    entry.tags, entry.factors)
            out.append((entry, G))
        return out
    for file in sorted(path.glob("*.json")):
        out.append(ingest(file))
    return out


# -- disk store -------------------------------------------------------------------------


def _canonical_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


_PARAM_SAFE = re.compile(r"[^A-Za-z0-9=._-]")


class ProfileStore:
    """Versioned JSON cache keyed by (group fingerprint, kind, parameters).

    Layout: <root>/<fingerprint>/<kind>-<params>.json. Loads verify the
    embedded fingerprint and schema version; a mismatch is a corruption
    signal, not a cache miss.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _path(self, fingerprint: str, kind: str, params: dict) -> Path:
        chunks = [f"{k}={params[k]}" for k in sorted(params)]
        stem = kind if not chunks else kind + "-" + "-".join(chunks)
        stem = _PARAM_SAFE.sub("_", stem)
        return self.root / fingerprint / f"{stem}.json"

    def store(self, fingerprint: str, kind: str, params: dict, data: dict) -> Path:
        path = self._path(fingerprint, kind, params)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "schema": SCHEMA_VERSION,
            "fingerprint": fingerprint,
            "kind": kind,
            "params": params,
            "data": data,
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_canonical_json(payload), encoding="utf-8")
        os.replace(tmp, path)
        return path

    def load(self, fingerprint: str, kind: str, params: dict) -> Optional[dict]:
        path = self._path(fingerprint, kind, params)
        if not path.exists():
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise StoreError(f"corrupt cache entry {path}: {exc}") from exc
        if payload.get("schema") != SCHEMA_VERSION:
            raise StoreError(f"cache schema mismatch in {path}")
        if payload.get("fingerprint") != fingerprint:
            raise StoreError(f"fingerprint mismatch in {path}; cache is corrupt")
        return payload["data"]


def default_cache_dir() -> Optional[Path]:
    value = os.environ.get(CACHE_DIR_ENV)
    return Path(value) if value else None
