"""Command-line entry point.

Exit status: 0 clean, 2 when a conjecture counterexample was found, 1 on any
internal error or theorem violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .boxmodel import biprojection_candidate_masks, indicator, is_biprojection, is_w_cyclic_model
from .catalog import CatalogEntry, CatalogError, builtin, builtin_catalog, catalog_hash, parse_catalog, \
    parse_generators
from .chartable import character_table
from .fusionring import (AxiomViolation, FusionRingError, NonIntegralDims, fusion_ring_from_matrices, is_simple,
                         load_matrices, proper_fusion_subrings)
from .ore import check_upper_bound, classify_interval, generates_over, is_H_cyclic, ore_witness_distributive
from .permgroup import Group, GroupError, Subgroup, subgroup_generated
from .sublattice import all_subgroups, interval
from .latticekit import is_distributive

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2

CATALOG_NOTE = ("desk-scale catalog: every subgroup H of every listed group G (or the one subgroup "
                "a line names) gives one interval [H, G]; fractions are not comparable to a census "
                "of all small-index inclusions")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# group and subgroup specs

def parse_group(spec: str) -> Group:
    """A builtin name (``S4``, ``C30``, ``S3xC2``) or a catalog line ``name; degree; gens``."""
    if ";" in spec:
        entries = parse_catalog(spec)
        if len(entries) != 1:
            raise CatalogError("expected exactly one catalog line")
        entry = entries[0]
    else:
        entry = builtin(spec)
    return entry.build()


def parse_subgroup(G: Group, gens: Optional[str] = None, name: Optional[str] = None) -> Subgroup:
    """``gens`` is ``e``, cycle notation or a builtin name; ``name`` is always a builtin name.

    Cycle notation starts with ``(`` and ``e`` is not a builtin name, so the
    three forms of ``gens`` never overlap.  A builtin name embeds that group
    through its own generators, e.g. ``S3`` in ``S4`` fixes point 3.
    """
    if name is None and gens is not None and gens.strip() not in ("e", "1", "") \
            and not gens.strip().startswith("("):
        name = gens.strip()
    if name is not None:
        entry = builtin(name)
        if entry.degree > G.degree:
            raise GroupError(f"{name} acts on {entry.degree} points, more than {G.degree}")
        perms = [g.extend(G.degree) for g in entry.generators]
    else:
        text = (gens or "e").strip()
        if text in ("e", "1", ""):
            return G.trivial()
        perms = parse_generators(text, G.degree)
        if not perms:
            raise GroupError(f"no generators in {text!r}")
    return subgroup_generated(G, perms)


def _add_subgroup_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="builtin name or 'name; degree; gens'")
    sub = p.add_mutually_exclusive_group()
    sub.add_argument("--subgroup", help="'e', cycle notation such as '(0 1),(2 3)', or a builtin name")
    sub.add_argument("--subgroup-name", help="builtin group embedded through its own generators")


# corpus scan

def _scan_entry(entry: CatalogEntry) -> dict:
    """All rows for one catalog group plus its bound check; failures become error rows."""
    out = {"group": entry.name, "rows": [], "bound": None, "error": None}
    try:
        G = entry.build()
        subs = all_subgroups(G).nodes if entry.subgroup is None else [subgroup_generated(G, entry.subgroup)]
        for H in subs:
            out["rows"].append(classify_interval(G, H, entry.name).to_json())
        m, ell, ok = check_upper_bound(G)
        out["bound"] = {"group": entry.name, "min_faithful_components": m, "chain_length": ell, "holds": ok}
    except Exception as exc:  # recorded, never aborts the scan
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out


def scan_corpus(entries: Sequence[CatalogEntry], source: str, jobs: int = 1,
                timing: bool = False) -> dict:
    start = time.perf_counter()
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_entry, entries))
    else:
        results = [_scan_entry(e) for e in entries]
    rows = [r for res in results for r in res["rows"]]
    bounds = [res["bound"] for res in results if res["bound"] is not None]
    errors = [{"group": res["group"], "error": res["error"]} for res in results if res["error"]]
    total = len(rows)
    cyclic = sum(r["cyclic"] for r in rows)
    distributive = [r for r in rows if r["distributive"]]
    counter = sum(1 for r in rows if r["conjecture_counterexamples"])
    bound_fail = sum(1 for b in bounds if not b["holds"])
    frac = Fraction(cyclic, total) if total else Fraction(0)
    report = {
        "tool": "orelab",
        "version": __version__,
        "catalog": {
            "source": source,
            "sha256": catalog_hash(entries),
            "groups": [e.name for e in entries],
            "note": CATALOG_NOTE,
        },
        "aggregate": {
            "intervals": total,
            "cyclic": cyclic,
            "cyclic_fraction": f"{frac.numerator}/{frac.denominator}",
            "distributive": len(distributive),
            "h_cyclic": sum(r["h_cyclic"] for r in rows),
            "linearly_primitive": sum(r["linearly_primitive"] for r in rows),
            "dual_ore_holds": len(distributive) - counter,
            "dual_ore_counterexamples": counter,
            "bound_checks": len(bounds),
            "bound_holds": len(bounds) - bound_fail,
            "bound_counterexamples": bound_fail,
            "theorem_violations": sum(len(r["theorem_violations"]) for r in rows),
            "errors": len(errors),
        },
        "bounds": bounds,
        "errors": errors,
        "rows": rows,
    }
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    return report


def report_exit_code(report: dict) -> int:
    agg = report["aggregate"]
    if agg["dual_ore_counterexamples"] or agg["bound_counterexamples"]:
        return EXIT_COUNTEREXAMPLE
    if agg["theorem_violations"] or agg["errors"]:
        return EXIT_ERROR
    return EXIT_OK


CSV_COLUMNS = ["group", "group_order", "subgroup_generators", "subgroup_order", "interval_size",
               "height", "core_free", "distributive", "boolean", "top_boolean", "bottom_boolean",
               "dedekind", "cyclic", "h_cyclic", "linearly_primitive", "dual_side_linearly_primitive",
               "intermediates_h_cyclic", "witness", "ore_witness", "coatom_sum_up", "coatom_sum_down",
               "theorem_violations", "conjecture_counterexamples"]


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report["rows"]:
        w.writerow([";".join(v) if isinstance(v, list) else ("" if v is None else v)
                    for v in (r[c] for c in CSV_COLUMNS)])
    return buf.getvalue()


# commands

def cmd_analyze_interval(args) -> int:
    G = parse_group(args.group)
    H = parse_subgroup(G, args.subgroup, args.subgroup_name)
    report = classify_interval(G, H, G.name)
    sys.stdout.write(_dump(report.to_json()))
    if report.conjecture_counterexamples:
        return EXIT_COUNTEREXAMPLE
    return EXIT_ERROR if report.theorem_violations else EXIT_OK


def cmd_scan_corpus(args) -> int:
    if args.catalog == "builtin":
        entries = builtin_catalog()
    else:
        entries = parse_catalog(Path(args.catalog).read_text())
    if args.max_order is not None:
        entries = [e for e in entries if e.build().order <= args.max_order]
    report = scan_corpus(entries, args.catalog, jobs=args.jobs, timing=args.timing)
    text = report_csv(report) if args.csv else _dump(report)
    if args.output:
        Path(args.output).write_text(text)
        agg = report["aggregate"]
        sys.stdout.write(f"{agg['intervals']} intervals, cyclic {agg['cyclic_fraction']}, "
                         f"sha256 {report['catalog']['sha256'][:12]}\n")
    else:
        sys.stdout.write(text)
    return report_exit_code(report)


def cmd_char_table(args) -> int:
    G = parse_group(args.group)
    T = character_table(G, seed=args.seed)
    T.check()
    out = T.to_json()
    out["sum_of_squared_degrees"] = sum(d * d for d in T.degrees)
    sys.stdout.write(_dump(out))
    return EXIT_OK


def cmd_ore_witness(args) -> int:
    G = parse_group(args.group)
    H = parse_subgroup(G, args.subgroup, args.subgroup_name)
    if is_distributive(interval(G, H).lattice):
        g, method = ore_witness_distributive(G, H), "distributive recursion"
    else:
        g, method = is_H_cyclic(G, H), "search"
    out = {"group": G.name, "subgroup_order": H.order, "method": method,
           "witness": None if g is None else g.cycle_string(),
           "witness_order": None if g is None else g.order(),
           "verified": g is not None and generates_over(G, H, G.index[g])}
    sys.stdout.write(_dump(out))
    return EXIT_OK if g is None or out["verified"] else EXIT_ERROR


def cmd_box_check(args) -> int:
    G = parse_group(args.group)
    subs = all_subgroups(G)
    found = [m for m in biprojection_candidate_masks(G) if is_biprojection(indicator(G, m))]
    out = {"group": G.name, "order": G.order, "w_cyclic": is_w_cyclic_model(G),
           "cyclic_group": G.is_cyclic(),
           "biprojections": len(found), "subgroups": len(subs),
           "biprojections_are_subgroups": sorted(found) == sorted(s.mask for s in subs.nodes)}
    sys.stdout.write(_dump(out))
    return EXIT_OK if out["biprojections_are_subgroups"] and out["w_cyclic"] == out["cyclic_group"] else EXIT_ERROR


def cmd_fusion_verify(args) -> int:
    try:
        R = fusion_ring_from_matrices(load_matrices(args.path))
    except AxiomViolation as exc:
        sys.stdout.write(_dump({"valid": False, "violation": exc.kind, "indices": list(exc.indices),
                                "message": str(exc)}))
        return EXIT_ERROR
    except NonIntegralDims as exc:
        sys.stdout.write(_dump({"valid": False, "violation": "non-integral dimensions", "indices": [],
                                "message": str(exc)}))
        return EXIT_ERROR
    subrings = proper_fusion_subrings(R)
    out = {"valid": True, "rank": R.rank, "dims": list(R.dims), "global_dimension": R.global_dimension,
           "duality": list(R.duality), "fusion_subrings": [list(s) for s in subrings],
           "simple": is_simple(R)}
    sys.stdout.write(_dump(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orelab", description="Intervals of finite groups: Ore-type checks.")
    p.add_argument("--version", action="version", version=f"orelab {__version__}")
    sp = p.add_subparsers(dest="command", required=True)

    a = sp.add_parser("analyze-interval", help="classify one interval [H, G]")
    _add_subgroup_args(a)
    a.set_defaults(func=cmd_analyze_interval)

    s = sp.add_parser("scan-corpus", help="classify every interval of a catalog")
    s.add_argument("catalog", nargs="?", default="builtin", help="'builtin' or a catalog file")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="one CSV line per interval")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--max-order", type=int)
    s.add_argument("--output", help="write the report here instead of stdout")
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte stability)")
    s.set_defaults(func=cmd_scan_corpus)

    c = sp.add_parser("char-table", help="character table modulo a prime")
    c.add_argument("--group", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_char_table)

    o = sp.add_parser("ore-witness", help="an element g with <H, g> = G")
    _add_subgroup_args(o)
    o.set_defaults(func=cmd_ore_witness)

    b = sp.add_parser("box-check", help="biprojections and w-cyclicity of the group 2-box model")
    b.add_argument("--group", required=True)
    b.set_defaults(func=cmd_box_check)

    f = sp.add_parser("fusion-verify", help="check fusion-ring axioms of a JSON matrix file")
    f.add_argument("path")
    f.set_defaults(func=cmd_fusion_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, GroupError, FusionRingError, OSError, ValueError) as exc:
        print(f"orelab: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:
        print(f"orelab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
