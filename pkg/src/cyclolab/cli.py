"""Command line front end.

Subcommands: `gen` writes a point set file, `analyze` runs the full
graph analysis, `mann` enumerates and certifies vanishing sums, `paths`
reports irredundant path statistics, and `report` re-renders a stored
analysis as CSV.  Exit code 0 means success with every applicable
ceiling holding, 1 means some checked ceiling failed, and 2 flags a
usage or validation error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import distgraph, mann, pointsets, serialize

EXIT_OK = 0
EXIT_CEILING = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    """Everything one invocation needs, parsed from the command line."""

    command: str
    construction: Optional[str] = None
    levels: int = 3
    rows: int = 3
    cols: int = 3
    spacing: Fraction = Fraction(1)
    lines: int = 3
    per_line: int = 3
    seed: int = 0
    mode: str = "rational"
    k: int = 2
    modulus: int = 12
    coeffs: tuple = (Fraction(1),)
    shortest: bool = False
    scope: str = "all"
    cap: int = distgraph.PATH_CAP
    budget: int = mann.WORK_BUDGET
    target_scan: bool = False
    input_path: Optional[str] = None
    out_path: Optional[str] = None
    csv_path: Optional[str] = None
    extra: dict = field(default_factory=dict)


def _parse_coeffs(text: str) -> tuple:
    try:
        parts = tuple(Fraction(p.strip()) for p in text.split(",") if p.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad coefficient list {text!r}: {exc}")
    if not parts:
        raise ValueError("coefficient list is empty")
    return parts


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cyclolab",
        description="rational-angle point sets, vanishing sums, and path ceilings",
    )
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a point set file")
    gsub = gen.add_subparsers(dest="construction", required=True)

    g1 = gsub.add_parser("erdos-purdy", help="translation doubling of {0, 1}")
    g1.add_argument("--levels", type=int, default=3)
    g1.add_argument("--out", default=None)

    g2 = gsub.add_parser("grid", help="axis-aligned square grid")
    g2.add_argument("--rows", type=int, default=3)
    g2.add_argument("--cols", type=int, default=3)
    g2.add_argument("--spacing", default="1", help="rational spacing, e.g. 1 or 1/2")
    g2.add_argument("--out", default=None)

    g3 = gsub.add_parser("lines", help="points spread over parallel horizontal lines")
    g3.add_argument("--lines", type=int, default=3)
    g3.add_argument("--per-line", type=int, default=3)
    g3.add_argument("--seed", type=int, default=0)
    g3.add_argument("--out", default=None)

    an = sub.add_parser("analyze", help="full graph analysis of a point set file")
    an.add_argument("--in", dest="input_path", required=True)
    an.add_argument("--mode", choices=distgraph.MODES, default="rational")
    an.add_argument("--k", type=int, default=2)
    an.add_argument("--cap", type=int, default=distgraph.PATH_CAP)
    an.add_argument("--out", default=None, help="report JSON path")
    an.add_argument("--csv", default=None, help="report CSV path")

    mn = sub.add_parser("mann", help="enumerate and certify minimal vanishing sums")
    mn.add_argument("--k", type=int, required=True)
    mn.add_argument("--modulus", type=int, required=True)
    mn.add_argument("--coeffs", default="1", help="comma separated rationals")
    mn.add_argument("--budget", type=int, default=mann.WORK_BUDGET)
    mn.add_argument("--out", default=None, help="relation list JSON path")
    mn.add_argument(
        "--target-scan",
        action="store_true",
        help="also sweep two-term targets and report the census maximum",
    )

    pa = sub.add_parser("paths", help="irredundant path statistics of a point set file")
    pa.add_argument("--in", dest="input_path", required=True)
    pa.add_argument("--mode", choices=distgraph.MODES, default="rational")
    pa.add_argument("--k", type=int, default=2)
    pa.add_argument("--shortest", action="store_true")
    pa.add_argument("--scope", choices=("all", "neighbors"), default="all")
    pa.add_argument("--cap", type=int, default=distgraph.PATH_CAP)
    pa.add_argument("--out", default=None, help="path statistics JSON path")

    rp = sub.add_parser("report", help="render a stored analysis report as CSV")
    rp.add_argument("--in", dest="input_path", required=True)
    rp.add_argument("--csv", default=None, help="CSV output path")

    return top


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in (
        "construction",
        "levels",
        "rows",
        "cols",
        "lines",
        "seed",
        "mode",
        "k",
        "modulus",
        "shortest",
        "scope",
        "cap",
        "budget",
        "target_scan",
        "input_path",
    ):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "per_line"):
        cfg.per_line = args.per_line
    if hasattr(args, "spacing"):
        cfg.spacing = Fraction(args.spacing)
    if hasattr(args, "coeffs"):
        cfg.coeffs = _parse_coeffs(args.coeffs)
    if hasattr(args, "out"):
        cfg.out_path = args.out
    if hasattr(args, "csv"):
        cfg.csv_path = args.csv
    return cfg


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(cfg: RunConfig) -> int:
    if cfg.construction == "erdos-purdy":
        ps = pointsets.erdos_purdy(cfg.levels)
        default_out = f"erdos_purdy_L{cfg.levels}.json"
    elif cfg.construction == "grid":
        ps = pointsets.square_grid(cfg.rows, cfg.cols, cfg.spacing)
        default_out = f"grid_{cfg.rows}x{cfg.cols}.json"
    elif cfg.construction == "lines":
        ps = pointsets.parallel_lines(cfg.lines, cfg.per_line, cfg.seed)
        default_out = f"lines_{cfg.lines}x{cfg.per_line}_s{cfg.seed}.json"
    else:
        raise ValueError(f"unknown construction {cfg.construction!r}")
    out = cfg.out_path or default_out
    serialize.save_pointset(out, ps)
    print(
        f"pointset {ps.provenance['name']}: n={len(ps)} conductor={ps.conductor} "
        f"seed={ps.seed} -> {out}"
    )
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    ps = serialize.load_pointset(cfg.input_path)
    report = distgraph.analyze(ps, cfg.mode, cfg.k, cap=cfg.cap)
    if cfg.out_path:
        serialize.save_report(cfg.out_path, report)
    if cfg.csv_path:
        with open(cfg.csv_path, "w", encoding="utf-8") as fh:
            fh.write(serialize.report_csv_text([report]))
    excess = "none" if report.excess_exponent is None else f"{report.excess_exponent:.4f}"
    print(
        f"n={report.n} mode={report.mode} k={report.k} edges={report.edge_count} "
        f"max_collinear={report.max_collinear} excess={excess}"
    )
    print(
        f"peeled: n={report.peeled_n} edges={report.peeled_edge_count} "
        f"min_degree={report.peeled_min_degree} threshold={report.peel_threshold}"
    )
    print(
        f"paths k={report.k}: pair_max={report.path_pair_max} "
        f"source_min={report.path_source_min} "
        f"two_path_noncollinear_max={report.two_path_noncollinear_max}"
    )
    for name, entry in report.ceilings.items():
        if not entry["applicable"]:
            print(f"ceiling {name}: not applicable")
        else:
            print(f"ceiling {name}: {'holds' if entry['holds'] else 'FAILED'}")
    return EXIT_OK if report.all_ceilings_hold else EXIT_CEILING


def cmd_mann(cfg: RunConfig) -> int:
    relations = mann.enumerate_minimal_vanishing_sums(
        cfg.k, cfg.modulus, cfg.coeffs, budget=cfg.budget
    )
    bad = []
    for t in relations:
        cert = mann.certify_mann(t)
        if not cert.verdict:
            bad.append((t, cert))
    print(
        f"k={cfg.k} modulus={cfg.modulus} coeffs={','.join(str(c) for c in cfg.coeffs)}: "
        f"{len(relations)} minimal vanishing sums, "
        f"{len(relations) - len(bad)} certified at ratio order {mann.mann_modulus(cfg.k)}"
    )
    for t, cert in bad:
        print(f"  FAILED certification: witness pair {cert.witness}")
    if cfg.out_path:
        serialize.save_relations(cfg.out_path, relations)
        print(f"relations -> {cfg.out_path}")
    ok = not bad
    if cfg.target_scan:
        worst, worst_target, total = _two_term_target_scan(cfg)
        bound = mann.relation_count_bound(cfg.k)
        print(
            f"target scan: {total} two-term targets, census max {worst} "
            f"(bound {bound}) at target {worst_target}"
        )
        if worst > bound:
            ok = False
    return EXIT_OK if ok else EXIT_CEILING


def _two_term_target_scan(cfg: RunConfig):
    """Sweep targets c1*z^e1 + c2*z^e2 over mu_modulus and census each."""
    from .cyclotomic import unit_roots

    roots = unit_roots(cfg.modulus)
    targets = {}
    for e1 in range(cfg.modulus):
        for c1 in cfg.coeffs:
            for e2 in range(e1, cfg.modulus):
                for c2 in cfg.coeffs:
                    a = roots[e1] * c1 + roots[e2] * c2
                    if a.is_zero():
                        continue
                    targets.setdefault(a.coeffs, a)
    worst = 0
    worst_target = None
    for a in targets.values():
        hits = mann.enumerate_target_relations(
            a, cfg.k, cfg.modulus, cfg.coeffs, budget=cfg.budget
        )
        if len(hits) > worst:
            worst = len(hits)
            worst_target = str(a)
    return worst, worst_target, len(targets)


def cmd_paths(cfg: RunConfig) -> int:
    ps = serialize.load_pointset(cfg.input_path)
    g = distgraph.build_graph(ps, cfg.mode)
    if g.n < 2:
        raise ValueError("need at least two points for path statistics")
    max_col, _ = distgraph.max_points_on_line(ps)
    delta = g.min_degree() or 0
    pair_max = 0
    pair_min = None
    source_totals = []
    for v in range(g.n):
        counts = distgraph.irredundant_path_census(
            g, v, cfg.k, shortest_only=cfg.shortest, vertex_scope=cfg.scope, cap=cfg.cap
        )
        source_totals.append(sum(c for w, c in counts.items() if w != v))
        for w in range(g.n):
            if w == v:
                continue
            c = counts.get(w, 0)
            pair_max = max(pair_max, c)
            pair_min = c if pair_min is None else min(pair_min, c)
    pair_min = pair_min or 0
    source_min = min(source_totals)
    bound = mann.relation_count_bound(cfg.k)
    floor = distgraph.paths_lower_bound(delta, cfg.k)
    rel_applicable = cfg.mode == "unit" or max_col <= 2
    rel_holds = pair_max <= bound if rel_applicable else None
    # the continuation floor is pure subset-sum counting, so it always applies,
    # but only to plain irredundant enumeration (shortness prunes further)
    cont_applicable = not cfg.shortest
    cont_holds = source_min >= floor if cont_applicable else None
    print(
        f"n={g.n} mode={cfg.mode} k={cfg.k} shortest={cfg.shortest} scope={cfg.scope} "
        f"min_degree={delta} max_collinear={max_col}"
    )
    print(
        f"pair_max={pair_max} pair_min={pair_min} source_min={source_min} "
        f"bound={bound} floor={floor}"
    )
    if rel_applicable:
        print(f"ceiling relation_count: {'holds' if rel_holds else 'FAILED'}")
    else:
        print("ceiling relation_count: not applicable")
    if cont_applicable:
        print(f"floor continuation: {'holds' if cont_holds else 'FAILED'}")
    else:
        print("floor continuation: not applicable (shortest-only pruning)")
    if cfg.out_path:
        serialize.save_json(
            cfg.out_path,
            {
                "format_version": serialize.FORMAT_VERSION,
                "kind": "path_stats",
                "n": g.n,
                "mode": cfg.mode,
                "k": cfg.k,
                "shortest": cfg.shortest,
                "scope": cfg.scope,
                "min_degree": delta,
                "max_collinear": max_col,
                "source_totals": source_totals,
                "pair_max": pair_max,
                "pair_min": pair_min,
                "bounds": {"relation_count": bound, "continuation": floor},
            },
        )
        print(f"path stats -> {cfg.out_path}")
    failed = (rel_applicable and not rel_holds) or (cont_applicable and not cont_holds)
    return EXIT_CEILING if failed else EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    report = serialize.load_report(cfg.input_path)
    text = serialize.report_csv_text([report])
    if cfg.csv_path:
        with open(cfg.csv_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"csv -> {cfg.csv_path}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


_DISPATCH = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "mann": cmd_mann,
    "paths": cmd_paths,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _DISPATCH[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
