"""Deterministic plane point configurations with exact coordinates.

Three families are provided: a translation-doubling construction that
keeps every pair in general position while doubling the number of unit,
rational-angle pairs; an axis-aligned square grid; and clusters of
points spread over horizontal lines with no three points collinear
across distinct lines.  All constructions are reproducible from their
parameters (and seed, where one applies).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from . import geometry
from .cyclotomic import CycNum, root_of_unity
from .errors import CapExceeded, WorkBudgetExceeded

DOUBLING_CAP = 8
POINT_BUDGET = 5000


@dataclass
class PointSet:
    """A finite list of distinct plane points over one cyclotomic field.

    `points` all carry exactly the declared conductor, and their order is
    significant: serialization preserves it byte for byte.
    """

    conductor: int
    points: tuple
    provenance: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        pts = tuple(self.points)
        if any(not isinstance(p, CycNum) for p in pts):
            raise ValueError("points must be CycNum values")
        if any(p.conductor != self.conductor for p in pts):
            raise ValueError("every point must carry the declared conductor")
        seen = set()
        for p in pts:
            if p.coeffs in seen:
                raise ValueError(f"points are not distinct: {p!r} repeats")
            seen.add(p.coeffs)
        if "name" not in self.provenance:
            raise ValueError("provenance must name the construction")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


def make_pointset(points, name: str, params: dict, seed: int = 0) -> PointSet:
    """Lift points to their common conductor and wrap them up.

    Plain rationals are accepted alongside CycNum values.
    """
    coerced = []
    for p in points:
        c = CycNum._coerce(p)
        if c is None:
            raise ValueError(f"not a point: {p!r}")
        coerced.append(c)
    conductor, lifted = geometry.lift_all(coerced)
    return PointSet(
        conductor=conductor,
        points=tuple(lifted),
        provenance={"name": name, "params": dict(params)},
        seed=seed,
    )


# ---------------------------------------------------------------------------
# translation doubling
# ---------------------------------------------------------------------------

def _root_candidates():
    """All roots of unity, ordered by order and then exponent.

    Non-primitive pairs (e, m) are skipped; they denote roots already
    seen at a smaller order, so the acceptance order is unchanged.
    """
    for m in itertools.count(1):
        for e in range(m):
            if math.gcd(e, m) == 1:
                yield root_of_unity(e, m)


def erdos_purdy(levels: int, cap: int = DOUBLING_CAP) -> PointSet:
    """Translation doubling starting from {0, 1}.

    Each level picks the first root of unity `a` (in candidate order)
    that is not a difference of current points and keeps the union
    P + (P translated by a) free of collinear triples, then doubles.
    The result has 2^levels points, no three collinear, and at least
    twice the previous number of unit rational-angle pairs plus one new
    unit pair per old point.
    """
    if levels < 1:
        raise ValueError("levels must be at least 1")
    if levels > cap:
        raise CapExceeded(f"doubling capped at {cap} levels, got {levels}")

    conductor = 1
    pts = [CycNum.zero(), CycNum.one()]
    mat = geometry.cross_matrix(pts)

    for _ in range(levels - 1):
        diffs = {p - q for p in pts for q in pts if p.coeffs != q.coeffs}
        n = len(pts)
        for a in _root_candidates():
            if a in diffs:
                continue
            big = math.lcm(conductor, a.conductor)
            lifted = [p.lift(big) for p in pts] if big != conductor else pts
            a_big = a.lift(big)
            base = geometry.lift_matrix(mat, conductor, big)
            shifts = [geometry.pair_vec(p, a_big) for p in lifted]
            union_mat = geometry.translated_union_matrix(base, shifts)
            if geometry.first_collinear_triple(union_mat, min_newest=n) is None:
                pts = lifted + [p + a_big for p in lifted]
                mat = union_mat
                conductor = big
                break
        else:  # pragma: no cover - the candidate stream is infinite
            raise AssertionError("no usable root of unity found")

    return make_pointset(pts, "erdos_purdy", {"levels": levels})


# ---------------------------------------------------------------------------
# grids and parallel lines
# ---------------------------------------------------------------------------

def square_grid(rows: int, cols: int, spacing=1, point_budget: int = POINT_BUDGET) -> PointSet:
    """rows x cols axis-aligned grid with the given rational spacing.

    Points are emitted row-major: the point in row r, column c sits at
    spacing * (c + r * i), with i the fourth root of unity.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be at least 1")
    if rows * cols > point_budget:
        raise WorkBudgetExceeded(rows * cols, point_budget)
    if isinstance(spacing, float):
        raise TypeError("spacing must be an exact rational, not a float")
    s = Fraction(spacing)
    if s <= 0:
        raise ValueError("spacing must be positive")
    pts = []
    for r in range(rows):
        for c in range(cols):
            pts.append(CycNum(4, (c * s, r * s)))
    return PointSet(
        conductor=4,
        points=tuple(pts),
        provenance={"name": "square_grid", "params": {"rows": rows, "cols": cols, "spacing": str(s)}},
        seed=0,
    )


def _rational_stream():
    """Lowest-terms rationals in [0, 1), ordered by denominator then numerator."""
    for d in itertools.count(1):
        for n in range(d):
            if math.gcd(n, d) == 1:
                yield Fraction(n, d)


def parallel_lines(
    lines: int, per_line: int, seed: int = 0, point_budget: int = POINT_BUDGET
) -> PointSet:
    """per_line points on each of `lines` horizontal lines y = 0..lines-1.

    x coordinates are drawn from a fixed enumeration of rationals whose
    start is offset by the seed.  A candidate is rejected when it would
    repeat an x on its own line or sit on a line through two already
    placed points on two distinct other lines, so no three points on
    pairwise distinct lines are ever collinear.
    """
    if lines < 1 or per_line < 1:
        raise ValueError("lines and per_line must be at least 1")
    if lines * per_line > point_budget:
        raise WorkBudgetExceeded(lines * per_line, point_budget)
    if not isinstance(seed, int):
        raise ValueError("seed must be an integer")
    skip = seed % 997

    placed = []  # (line, CycNum)
    pts = []
    for line in range(lines):
        yline = Fraction(line)
        taken_x = set()
        count = 0
        stream = _rational_stream()
        for _ in range(skip):
            next(stream)
        while count < per_line:
            x = next(stream)
            if x in taken_x:
                continue
            cand = CycNum(4, (x, yline))
            if _blocked(cand, line, placed):
                continue
            taken_x.add(x)
            placed.append((line, cand))
            pts.append(cand)
            count += 1

    return PointSet(
        conductor=4,
        points=tuple(pts),
        provenance={"name": "parallel_lines", "params": {"lines": lines, "per_line": per_line}},
        seed=seed,
    )


def _blocked(cand, line, placed):
    """Is cand collinear with two placed points on two distinct other lines?"""
    others = [(l, p) for l, p in placed if l != line]
    for i in range(len(others)):
        li, pi = others[i]
        for j in range(i + 1, len(others)):
            lj, pj = others[j]
            if li == lj:
                continue
            if geometry.collinear(cand, pi, pj):
                return True
    return False
