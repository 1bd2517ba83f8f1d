"""Deterministic file formats: point sets, relations, analysis reports.

Every document is a JSON object with `format_version` and `kind` keys.
Rationals are written as lowest-terms strings ("3", "-1/2"), field
elements as {conductor, coeffs}.  Serialization is byte deterministic:
keys are sorted, floats use their shortest round-trip form, and a
trailing newline closes each file.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .cyclotomic import CycNum, _roots_index, root_of_unity
from .distgraph import AnalysisReport
from .mann import RelationTuple
from .pointsets import PointSet

FORMAT_VERSION = 1


def fraction_to_str(f: Fraction) -> str:
    return str(f)


def str_to_fraction(s) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    return Fraction(s)


def cycnum_to_obj(x: CycNum) -> dict:
    return {
        "conductor": x.conductor,
        "coeffs": [fraction_to_str(c) for c in x.coeffs],
    }


def obj_to_cycnum(d) -> CycNum:
    if not isinstance(d, dict) or "conductor" not in d or "coeffs" not in d:
        raise ValueError("malformed field element")
    return CycNum(d["conductor"], tuple(str_to_fraction(c) for c in d["coeffs"]))


# ---------------------------------------------------------------------------
# point sets
# ---------------------------------------------------------------------------

def pointset_to_obj(ps: PointSet) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "pointset",
        "conductor": ps.conductor,
        "provenance": {
            "name": ps.provenance["name"],
            "params": ps.provenance.get("params", {}),
            "seed": ps.seed,
        },
        "points": [[fraction_to_str(c) for c in p.coeffs] for p in ps.points],
    }


def obj_to_pointset(d) -> PointSet:
    _expect(d, "pointset", ("conductor", "points"))
    conductor = d["conductor"]
    if not isinstance(conductor, int) or conductor < 1:
        raise ValueError("conductor must be a positive integer")
    prov = d.get("provenance", {})
    points = tuple(
        CycNum(conductor, tuple(str_to_fraction(c) for c in row))
        for row in d["points"]
    )
    return PointSet(
        conductor=conductor,
        points=points,
        provenance={"name": prov.get("name", ""), "params": prov.get("params", {})},
        seed=prov.get("seed", 0),
    )


# ---------------------------------------------------------------------------
# relation tuples
# ---------------------------------------------------------------------------

def _relation_modulus(t: RelationTuple) -> int:
    m = 2
    for r in t.roots:
        m = math.lcm(m, r.conductor)
    return m


def relation_to_obj(t: RelationTuple) -> dict:
    m = _relation_modulus(t)
    index = _roots_index(m)
    exps = []
    for r in t.roots:
        e = index.get(r.lift(m).coeffs)
        if e is None:
            raise AssertionError("root of unity missing from its own torsion group")
        exps.append(e)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "relation",
        "k": len(t),
        "conductor": m,
        "roots": exps,
        "coeffs": [fraction_to_str(c) for c in t.coeffs],
        "target": cycnum_to_obj(t.target),
        "minimal": t.minimal,
    }


def obj_to_relation(d) -> RelationTuple:
    _expect(d, "relation", ("conductor", "roots", "coeffs", "target"))
    m = d["conductor"]
    if not isinstance(m, int) or m < 1:
        raise ValueError("conductor must be a positive integer")
    roots = tuple(root_of_unity(e, m) for e in d["roots"])
    coeffs = tuple(str_to_fraction(c) for c in d["coeffs"])
    if d.get("k") != len(roots):
        raise ValueError("relation length disagrees with its roots")
    return RelationTuple(
        roots=roots,
        coeffs=coeffs,
        target=obj_to_cycnum(d["target"]),
        minimal=bool(d.get("minimal", False)),
    )


def relations_to_obj(relations) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "relation_list",
        "relations": [
            {k: v for k, v in relation_to_obj(t).items() if k != "format_version"}
            for t in relations
        ],
    }


def obj_to_relations(d) -> list:
    _expect(d, "relation_list", ("relations",))
    out = []
    for sub in d["relations"]:
        sub = dict(sub)
        sub["format_version"] = FORMAT_VERSION
        out.append(obj_to_relation(sub))
    return out


# ---------------------------------------------------------------------------
# analysis reports
# ---------------------------------------------------------------------------

def report_to_obj(r: AnalysisReport) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "analysis_report",
        "provenance_name": r.provenance_name,
        "seed": r.seed,
        "n": r.n,
        "mode": r.mode,
        "k": r.k,
        "conductor": r.conductor,
        "edge_count": r.edge_count,
        "excess_exponent": r.excess_exponent,
        "max_collinear": r.max_collinear,
        "peel_threshold": fraction_to_str(r.peel_threshold),
        "peeled_n": r.peeled_n,
        "peeled_edge_count": r.peeled_edge_count,
        "peeled_min_degree": r.peeled_min_degree,
        "path_pair_max": r.path_pair_max,
        "path_pair_min": r.path_pair_min,
        "path_source_min": r.path_source_min,
        "two_path_noncollinear_max": r.two_path_noncollinear_max,
        "bounds": dict(r.bounds),
        "ceilings": {k: dict(v) for k, v in r.ceilings.items()},
        "all_ceilings_hold": r.all_ceilings_hold,
    }


_REPORT_KEYS = (
    "provenance_name",
    "seed",
    "n",
    "mode",
    "k",
    "conductor",
    "edge_count",
    "excess_exponent",
    "max_collinear",
    "peel_threshold",
    "peeled_n",
    "peeled_edge_count",
    "peeled_min_degree",
    "path_pair_max",
    "path_pair_min",
    "path_source_min",
    "two_path_noncollinear_max",
    "bounds",
    "ceilings",
    "all_ceilings_hold",
)


def obj_to_report(d) -> AnalysisReport:
    _expect(d, "analysis_report", _REPORT_KEYS)
    return AnalysisReport(
        provenance_name=d["provenance_name"],
        seed=d["seed"],
        n=d["n"],
        mode=d["mode"],
        k=d["k"],
        conductor=d["conductor"],
        edge_count=d["edge_count"],
        excess_exponent=d["excess_exponent"],
        max_collinear=d["max_collinear"],
        peel_threshold=str_to_fraction(d["peel_threshold"]),
        peeled_n=d["peeled_n"],
        peeled_edge_count=d["peeled_edge_count"],
        peeled_min_degree=d["peeled_min_degree"],
        path_pair_max=d["path_pair_max"],
        path_pair_min=d["path_pair_min"],
        path_source_min=d["path_source_min"],
        two_path_noncollinear_max=d["two_path_noncollinear_max"],
        bounds=dict(d["bounds"]),
        ceilings={k: dict(v) for k, v in d["ceilings"].items()},
        all_ceilings_hold=d["all_ceilings_hold"],
    )


_CSV_CEILINGS = ("relation_count", "two_path", "peeling", "continuation")

REPORT_CSV_HEADER = [
    "format_version",
    "provenance_name",
    "seed",
    "n",
    "mode",
    "k",
    "conductor",
    "edge_count",
    "excess_exponent",
    "max_collinear",
    "peel_threshold",
    "peeled_n",
    "peeled_edge_count",
    "peeled_min_degree",
    "path_pair_max",
    "path_pair_min",
    "path_source_min",
    "two_path_noncollinear_max",
    "bound_relation_count",
    "bound_two_path",
    "bound_continuation",
    "bound_continuation_discounted",
] + [
    f"ceiling_{name}_{part}" for name in _CSV_CEILINGS for part in ("applicable", "holds")
] + ["all_ceilings_hold"]


def _cell(value) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return fraction_to_str(value)
    return str(value)


def report_csv_row(r: AnalysisReport) -> list:
    row = [
        _cell(FORMAT_VERSION),
        _cell(r.provenance_name),
        _cell(r.seed),
        _cell(r.n),
        _cell(r.mode),
        _cell(r.k),
        _cell(r.conductor),
        _cell(r.edge_count),
        _cell(r.excess_exponent),
        _cell(r.max_collinear),
        _cell(r.peel_threshold),
        _cell(r.peeled_n),
        _cell(r.peeled_edge_count),
        _cell(r.peeled_min_degree),
        _cell(r.path_pair_max),
        _cell(r.path_pair_min),
        _cell(r.path_source_min),
        _cell(r.two_path_noncollinear_max),
        _cell(r.bounds["relation_count"]),
        _cell(r.bounds["two_path"]),
        _cell(r.bounds["continuation"]),
        _cell(r.bounds["continuation_discounted"]),
    ]
    for name in _CSV_CEILINGS:
        entry = r.ceilings[name]
        row.append(_cell(entry["applicable"]))
        row.append(_cell(entry["holds"]))
    row.append(_cell(r.all_ceilings_hold))
    return row


def report_csv_text(reports) -> str:
    lines = [",".join(REPORT_CSV_HEADER)]
    for r in reports:
        lines.append(",".join(report_csv_row(r)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save_json(path, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(doc))


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("document root must be an object")
    return doc


def _expect(d, kind: str, keys=()) -> None:
    if not isinstance(d, dict):
        raise ValueError(f"malformed {kind} document")
    if d.get("format_version") != FORMAT_VERSION:
        raise ValueError(
            f"unsupported format_version {d.get('format_version')!r}, expected {FORMAT_VERSION}"
        )
    if d.get("kind") != kind:
        raise ValueError(f"expected a {kind} document, got {d.get('kind')!r}")
    missing = [k for k in keys if k not in d]
    if missing:
        raise ValueError(f"{kind} document is missing keys: {', '.join(missing)}")


def load_pointset(path) -> PointSet:
    return obj_to_pointset(load_json(path))


def save_pointset(path, ps: PointSet) -> None:
    save_json(path, pointset_to_obj(ps))


def load_report(path) -> AnalysisReport:
    return obj_to_report(load_json(path))


def save_report(path, r: AnalysisReport) -> None:
    save_json(path, report_to_obj(r))


def load_relations(path) -> list:
    return obj_to_relations(load_json(path))


def save_relations(path, relations) -> None:
    save_json(path, relations_to_obj(relations))
