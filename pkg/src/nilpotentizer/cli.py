"""Command line interface.

Exit codes: 0 when everything passes or is not applicable, 1 when any check
fails (or is infeasible), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__, permutations as perms
from .catalog import (
    CorpusEntry,
    ProfileStore,
    StoreError,
    builtin_corpus,
    default_cache_dir,
    get_group,
    load_corpus_dir,
)
from .groups import Group, GroupBuildError
from .nilset import nil_profile
from .structure import structure_profile
from .suites import (
    DEFAULT_SWEEP_CAP,
    report_to_csv,
    report_to_json,
    report_to_text,
    resolve_suite_ids,
    run_suites,
)


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilpotentizer",
        description="Compute nilpotentizers of finite groups and verify the statement catalog.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text",
                        help="output format (default text)")
    parser.add_argument("--cache-dir", default=None,
                        help="profile cache directory (default $NILPOTENTIZER_CACHE_DIR)")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for verify")
    parser.add_argument("--max-order", type=int, default=DEFAULT_SWEEP_CAP,
                        help="largest group order swept element by element")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled associativity checks on large Cayley inputs")

    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="order and structure profile of a group")
    p_info.add_argument("group")

    p_nil = sub.add_parser("nil", help="nilpotentizer profile of one element")
    p_nil.add_argument("group")
    p_nil.add_argument("--element", required=True,
                       help="element index, cycle notation, or generator word (a=first generator, A=its inverse)")

    p_all = sub.add_parser("nil-all", help="nilpotentizer profiles for every element")
    p_all.add_argument("group")

    p_verify = sub.add_parser("verify", help="run verification suites over the corpus")
    p_verify.add_argument("--suite", default="all",
                          help="suite id, family prefix (thm-1.1), or 'all'")
    p_verify.add_argument("--corpus", default=None,
                          help="directory of group description files to verify instead of the builtins")
    p_verify.add_argument("--deep", action="store_true",
                          help="include groups above --max-order, swept by conjugacy class representatives")
    p_verify.add_argument("--conjecture-size", type=int, default=8)

    p_conj = sub.add_parser("conjecture", help="counterexample search over the non-solvable corpus")
    p_conj.add_argument("--size", type=int, default=8, help="target nilpotentizer size")

    return parser


def _resolve_group(name: str) -> Group:
    try:
        return get_group(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def _labels_degree(G: Group) -> int:
    """Largest point mentioned in the cycle-notation labels."""
    import re

    best = 1
    for lab in G.labels or ():
        for m in re.finditer(r"\d+", lab):
            best = max(best, int(m.group()))
    return best


def _canonical_label(text: str, degree: int) -> str:
    return perms.format_cycles(perms.parse_cycles(text, degree))


def _resolve_element(G: Group, entry_gens: Optional[list[str]], spec: str) -> int:
    spec = spec.strip()
    if spec.isdigit():
        idx = int(spec)
        if idx >= G.order:
            raise UsageError(f"element index {idx} out of range for order {G.order}")
        return idx
    if G.labels is None:
        raise UsageError("non-index element specs need a permutation-built group")
    degree = _labels_degree(G)
    if "(" in spec:
        try:
            canonical = _canonical_label(spec, degree)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        try:
            return G.labels.index(canonical)
        except ValueError:
            raise UsageError(f"element {spec!r} not found in {G.name or 'group'}") from None
    # generator word: a..z are generators in order, A..Z their inverses
    if not entry_gens:
        raise UsageError("generator words need a corpus group with known generators")
    gen_indices = []
    for text in entry_gens:
        try:
            gen_indices.append(G.labels.index(_canonical_label(text, degree)))
        except ValueError:
            raise UsageError("cannot resolve generators for this group") from None
    acc = 0
    for ch in spec:
        if not ch.isalpha():
            raise UsageError(f"bad generator word character {ch!r}")
        pos = ord(ch.lower()) - ord("a")
        if pos >= len(gen_indices):
            raise UsageError(f"word letter {ch!r} exceeds the {len(gen_indices)} generators")
        g = gen_indices[pos]
        if ch.isupper():
            g = G.inv_of(g)
        acc = G.mul(acc, g)
    return acc


def _emit(args, payload_text: str) -> None:
    sys.stdout.write(payload_text)
    if not payload_text.endswith("\n"):
        sys.stdout.write("\n")


def _profile_payload(G: Group) -> dict:
    prof = structure_profile(G)
    return {
        "name": G.name,
        "order": G.order,
        "fingerprint": G.fingerprint,
        "is_nilpotent": prof.is_nilpotent,
        "nilpotency_class": prof.nilpotency_class,
        "is_solvable": prof.is_solvable,
        "derived_length": prof.derived_length,
        "center_size": prof.center_size,
        "hypercenter_size": prof.hypercenter_size,
        "fitting_size": prof.fitting.size,
        "sylow": {str(p): {"order": s.size, "count": c} for p, (s, c) in prof.sylow.items()},
    }


def _nil_payload(G: Group, x: int) -> dict:
    prof = nil_profile(G, x)
    data = {
        "group": G.name,
        "fingerprint": prof.fingerprint,
        "x": prof.x,
        "label": prof.label,
        "size": prof.size,
        "is_subgroup": prof.is_subgroup,
        "generated_size": prof.generated_size,
        "generated_is_maximal": prof.generated_is_maximal,
        "equals_centralizer": prof.equals_centralizer,
        "nilpotent": prof.nilpotent,
        "nilpotency_class": prof.nilpotency_class,
        "members": list(prof.members),
    }
    if G.labels is not None:
        data["member_labels"] = [G.labels[m] for m in prof.members]
    return data


def _format_dict(args, data: dict) -> str:
    if args.format == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    if args.format == "csv":
        keys = sorted(data)
        flat = {k: json.dumps(data[k]) if isinstance(data[k], (dict, list)) else data[k]
                for k in keys}
        head = ",".join(keys)
        row = ",".join(str(flat[k]) for k in keys)
        return head + "\n" + row
    return "\n".join(f"{k}: {data[k]}" for k in sorted(data))


def _store_from_args(args) -> Optional[ProfileStore]:
    root = args.cache_dir or default_cache_dir()
    return ProfileStore(root) if root else None


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupBuildError, StoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "info":
        G = _resolve_group(args.group)
        _emit(args, _format_dict(args, _profile_payload(G)))
        return 0

    if args.command == "nil":
        G = _resolve_group(args.group)
        entry = _entry_for(args.group)
        x = _resolve_element(G, entry.construction.get("generators") if entry else None,
                             args.element)
        payload = _nil_payload(G, x)
        store = _store_from_args(args)
        if store is not None:
            store.store(G.fingerprint, "nil", {"x": x}, payload)
        _emit(args, _format_dict(args, payload))
        return 0

    if args.command == "nil-all":
        G = _resolve_group(args.group)
        from .nilset import nil_all_bits

        nil_all_bits(G)
        rows = [_nil_payload(G, x) for x in range(G.order)]
        for row in rows:
            row.pop("members", None)
            row.pop("member_labels", None)
        if args.format == "json":
            _emit(args, json.dumps(rows, indent=2, sort_keys=True))
        elif args.format == "csv":
            keys = sorted(rows[0])
            lines = [",".join(keys)]
            lines += [",".join(str(r[k]) for k in keys) for r in rows]
            _emit(args, "\n".join(lines))
        else:
            for r in rows:
                _emit(args, f"x={r['x']:<4d} {r['label']:<20s} size={r['size']:<5d} "
                            f"subgroup={r['is_subgroup']} generated={r['generated_size']}")
        store = _store_from_args(args)
        if store is not None:
            store.store(G.fingerprint, "nil-all", {}, {"rows": rows})
        return 0

    if args.command == "verify":
        try:
            suite_ids = resolve_suite_ids(args.suite)
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        entries = None
        if args.corpus:
            try:
                entries = [e for e, _ in load_corpus_dir(args.corpus)]
            except (OSError, GroupBuildError) as exc:
                raise UsageError(f"cannot load corpus: {exc}") from exc
        report = run_suites(
            suite_ids,
            entries=entries,
            deep=args.deep,
            max_order=args.max_order,
            conjecture_size=args.conjecture_size,
            jobs=args.jobs,
        )
        if args.format == "json":
            _emit(args, report_to_json(report))
        elif args.format == "csv":
            _emit(args, report_to_csv(report))
        else:
            _emit(args, report_to_text(report))
        return report.exit_code()

    if args.command == "conjecture":
        report = run_suites(["conjecture"], conjecture_size=args.size,
                            jobs=args.jobs, max_order=args.max_order)
        if args.format == "json":
            _emit(args, report_to_json(report))
        elif args.format == "csv":
            _emit(args, report_to_csv(report))
        else:
            _emit(args, report_to_text(report))
        return report.exit_code()

    raise UsageError(f"unknown command {args.command!r}")


def _entry_for(name: str) -> Optional[CorpusEntry]:
    for e in builtin_corpus():
        if e.name.lower() == name.lower():
            return e
    return None


if __name__ == "__main__":
    raise SystemExit(main())
