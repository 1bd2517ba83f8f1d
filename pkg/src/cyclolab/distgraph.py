"""Rational-angle distance graphs and their path statistics.

Vertices are the points of a PointSet.  Two points are joined when
their displacement is a positive rational multiple of a root of unity;
in "unit" mode the rational length must additionally be exactly 1.  On
top of the graph live the operations that drive the counting results:
degree peeling, collinearity statistics, and the census of irredundant
paths (paths no nonempty subset of whose edge vectors sums to zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import geometry
from .cyclotomic import CycNum, RationalAngleForm, classify_rational_angle, real_sign
from .errors import CapExceeded
from .mann import SubsetSumTracker, relation_count_bound, _vneg
from .pointsets import PointSet

PATH_CAP = 8

MODES = ("unit", "rational")


@dataclass
class DistanceGraph:
    """A PointSet together with its rational-angle adjacency.

    `edges` maps index pairs (i, j) with i < j to the classified form of
    points[j] - points[i]; the reverse orientation is the same length
    with the exponent advanced by half a turn.
    """

    pointset: PointSet
    mode: str
    edges: dict
    adjacency: tuple
    _cross: Optional[list] = field(default=None, repr=False, compare=False)
    _sq: dict = field(default_factory=dict, repr=False, compare=False)
    _evec: Optional[dict] = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.pointset)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def min_degree(self) -> Optional[int]:
        if self.n == 0:
            return None
        return min(len(a) for a in self.adjacency)

    def edge_form(self, i: int, j: int):
        """Classified form of points[j] - points[i] for an existing edge."""
        if i < j:
            return self.edges[(i, j)]
        form = self.edges[(j, i)]
        m = form.modulus
        return RationalAngleForm(form.length, (form.exponent + m // 2) % m, m)

    # -- lazy exact-geometry caches ----------------------------------------

    def cross(self):
        if self._cross is None:
            self._cross = geometry.cross_matrix(list(self.pointset.points))
        return self._cross

    def collinear_indices(self, p: int, q: int, r: int) -> bool:
        mat = self.cross()
        e = mat[q][r]
        f = mat[p][q]
        g = mat[p][r]
        for x, y, z in zip(e, f, g):
            if x + y - z:
                return False
        return True

    def squared_distance(self, i: int, j: int) -> CycNum:
        key = (i, j) if i < j else (j, i)
        out = self._sq.get(key)
        if out is None:
            pts = self.pointset.points
            out = geometry.squared_distance(pts[key[0]], pts[key[1]])
            self._sq[key] = out
        return out

    def edge_vector(self, a: int, b: int):
        """Coefficient tuple of points[b] - points[a] along an edge.

        Integer-valued entries are stored as plain ints; the subset-sum
        bookkeeping spends most of its time adding and hashing these
        tuples and int arithmetic is several times cheaper.
        """
        if self._evec is None:
            pts = self.pointset.points
            ev = {}
            for (i, j) in self.edges:
                d = tuple(
                    int(c) if c.denominator == 1 else c
                    for c in (
                        x - y for x, y in zip(pts[j].coeffs, pts[i].coeffs)
                    )
                )
                ev[(i, j)] = d
                ev[(j, i)] = _vneg(d)
            self._evec = ev
        return self._evec[(a, b)]


def build_graph(ps: PointSet, mode: str) -> DistanceGraph:
    """Classify every pair of points and keep the rational-angle ones.

    In "rational" mode an edge needs a rational length and a rational
    angle; "unit" mode further requires length exactly 1.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    pts = ps.points
    n = len(pts)
    edges = {}
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            form = classify_rational_angle(pts[j] - pts[i])
            if form is None:
                continue
            if mode == "unit" and form.length != 1:
                continue
            edges[(i, j)] = form
            adj[i].append(j)
            adj[j].append(i)
    return DistanceGraph(
        pointset=ps,
        mode=mode,
        edges=edges,
        adjacency=tuple(tuple(a) for a in adj),
    )


# ---------------------------------------------------------------------------
# degree peeling
# ---------------------------------------------------------------------------

def peel_vertices(n: int, adjacency, threshold) -> list:
    """Vertices surviving iterated deletion of degree < threshold.

    Works on any adjacency structure (sequence of neighbour sequences);
    the threshold may be an exact Fraction.  Returns sorted indices.
    """
    deg = [len(adjacency[v]) for v in range(n)]
    alive = [True] * n
    stack = [v for v in range(n) if deg[v] < threshold]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u in adjacency[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] < threshold:
                    stack.append(u)
    return [v for v in range(n) if alive[v]]


def min_degree_subgraph(g: DistanceGraph, threshold) -> DistanceGraph:
    """Induced subgraph on the vertices that survive peeling at threshold.

    With threshold e/(2n) the survivor keeps more than half of the edges
    and has minimum degree at least the threshold (it can be empty only
    when that is impossible, i.e. never for positive edge count).
    """
    survivors = peel_vertices(g.n, g.adjacency, threshold)
    index = {v: i for i, v in enumerate(survivors)}
    pts = g.pointset.points
    prov = g.pointset.provenance
    sub_ps = PointSet(
        conductor=g.pointset.conductor,
        points=tuple(pts[v] for v in survivors),
        provenance={
            "name": prov["name"] + ":peeled",
            "params": {**prov.get("params", {}), "threshold": str(Fraction(threshold))},
        },
        seed=g.pointset.seed,
    )
    edges = {}
    adj = [[] for _ in survivors]
    # survivors are sorted, so reindexing preserves the i < j orientation
    for (i, j), form in g.edges.items():
        if i in index and j in index:
            edges[(index[i], index[j])] = form
    for (a, b) in edges:
        adj[a].append(b)
        adj[b].append(a)
    return DistanceGraph(
        pointset=sub_ps,
        mode=g.mode,
        edges=edges,
        adjacency=tuple(tuple(sorted(x)) for x in adj),
    )


# ---------------------------------------------------------------------------
# collinearity statistics
# ---------------------------------------------------------------------------

def max_points_on_line(ps: PointSet):
    """Largest number of points of ps on one line, with a witness.

    Groups, for each anchor, the later points into lines through the
    anchor; the anchor with the lowest index on the richest line sees
    that line's full membership, so the maximum over anchors is exact.
    Membership is decided by the linear identity
    S(q-p, r-p) = S(q,r) + S(p,q) - S(p,r) on a precomputed pairwise
    S matrix, so no per-pair field inversion is needed.  Returns
    (count, sorted tuple of member indices).  Needs at least 2 points.
    """
    pts = ps.points
    n = len(pts)
    if n < 2:
        raise ValueError("need at least two points")
    mat = geometry.cross_matrix(list(pts))
    best_count = 0
    best_members = None
    for i in range(n):
        groups = []
        for j in range(i + 1, n):
            for members in groups:
                q = members[0]
                e = mat[q][j]
                f = mat[i][q]
                sic = mat[i][j]
                for x, y, z in zip(e, f, sic):
                    if x + y - z:
                        break
                else:
                    members.append(j)
                    break
            else:
                groups.append([j])
        for js in groups:
            if 1 + len(js) > best_count:
                best_count = 1 + len(js)
                best_members = tuple([i] + js)
    return best_count, best_members


# ---------------------------------------------------------------------------
# irredundant paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathRecord:
    """One enumerated path: vertices visited and exact edge displacements."""

    vertices: tuple
    edge_vectors: tuple
    irredundant: bool
    shortest: bool


def paths_lower_bound(delta: int, k: int) -> int:
    """prod over l < k of max(0, delta - 2^l + 1).

    At step l of an irredundant path, at most 2^l - 1 of at least delta
    continuations are excluded by subset-sum cancellation, so a graph of
    minimum degree delta admits at least this many k-step irredundant
    paths from every vertex.
    """
    if delta < 0 or k < 0:
        raise ValueError("arguments must be nonnegative")
    out = 1
    for level in range(k):
        out *= max(0, delta - (1 << level) + 1)
    return out


def _admissible_shortest(g: DistanceGraph, p: int, u: int, prefix, scope: str) -> bool:
    """May a path standing at p step to u under the shortness rule?

    The step must be strictly shorter than the distance from p to every
    other in-scope vertex on the line through p and u that is not already
    used by the path; distance ties are inadmissible.
    """
    base = g.squared_distance(p, u)
    if scope == "all":
        candidates = range(g.n)
    else:
        candidates = g.adjacency[p]
    used = set(prefix)
    for x in candidates:
        if x == u or x in used:
            continue
        if not g.collinear_indices(p, u, x):
            continue
        if real_sign(g.squared_distance(p, x) - base) <= 0:
            return False
    return True


def _path_census(g, source, k, shortest_only, vertex_scope, collect, target):
    counts = {}
    records = []
    tracker = SubsetSumTracker()
    path = [source]

    def rec(cur, depth):
        if depth == k:
            counts[cur] = counts.get(cur, 0) + 1
            if collect and (target is None or cur == target):
                records.append(_make_record(g, path, shortest_only))
            return
        for u in g.adjacency[cur]:
            d = g.edge_vector(cur, u)
            if tracker.conflicts(d):
                continue
            if shortest_only and not _admissible_shortest(g, cur, u, path, vertex_scope):
                continue
            tracker.push(d)
            path.append(u)
            rec(u, depth + 1)
            path.pop()
            tracker.pop()

    rec(source, 0)
    return counts, records


def _make_record(g, path, shortest):
    conductor = g.pointset.conductor
    vecs = tuple(
        CycNum(conductor, g.edge_vector(a, b)) for a, b in zip(path, path[1:])
    )
    return PathRecord(
        vertices=tuple(path), edge_vectors=vecs, irredundant=True, shortest=shortest
    )


def count_irredundant_paths(
    g: DistanceGraph,
    v: int,
    w: int,
    k: int,
    shortest_only: bool = False,
    vertex_scope: str = "all",
    cap: int = PATH_CAP,
    collect: bool = False,
):
    """Number of irredundant k-edge paths from v to w.

    A path is irredundant when no nonempty subset of its edge vectors
    sums to zero; pruning is exact, so revisited vertices and cancelling
    detours never appear.  With shortest_only, each step must also be
    strictly shorter than the distance from its start to every other
    unused vertex on its line (vertex_scope "all" checks all graph
    vertices, "neighbors" only the start's neighbours).  With collect,
    returns (count, list of PathRecords).
    """
    if k < 1:
        raise ValueError("path length must be at least 1")
    if k > cap:
        raise CapExceeded(f"path length capped at {cap}, got {k}")
    if not (0 <= v < g.n and 0 <= w < g.n):
        raise ValueError("vertex index out of range")
    if v == w:
        raise ValueError("endpoints must differ")
    if vertex_scope not in ("all", "neighbors"):
        raise ValueError("vertex_scope must be 'all' or 'neighbors'")
    counts, records = _path_census(
        g, v, k, shortest_only, vertex_scope, collect, target=w
    )
    count = counts.get(w, 0)
    return (count, records) if collect else count


def irredundant_path_census(
    g: DistanceGraph,
    source: int,
    k: int,
    shortest_only: bool = False,
    vertex_scope: str = "all",
    cap: int = PATH_CAP,
) -> dict:
    """Endpoint -> count of irredundant k-edge paths from source."""
    if k < 1:
        raise ValueError("path length must be at least 1")
    if k > cap:
        raise CapExceeded(f"path length capped at {cap}, got {k}")
    if not 0 <= source < g.n:
        raise ValueError("vertex index out of range")
    counts, _ = _path_census(
        g, source, k, shortest_only, vertex_scope, False, target=None
    )
    return counts


def path_direction_tuple(record: PathRecord) -> tuple:
    """Exponent of each edge displacement as a root-of-unity direction.

    All displacements of one record share a conductor, hence a modulus;
    the returned tuple lists the classified exponents in step order.
    """
    exps = []
    modulus = None
    for vec in record.edge_vectors:
        form = classify_rational_angle(vec)
        if form is None:
            raise ValueError("edge displacement is not rational-angle")
        if modulus is None:
            modulus = form.modulus
        elif form.modulus != modulus:
            raise AssertionError("mixed moduli within one record")
        exps.append(form.exponent)
    return tuple(exps)


def noncollinear_two_path_stats(g: DistanceGraph):
    """Largest count over pairs (v, w) of noncollinear 2-paths v-m-w.

    A 2-path counts when m is adjacent to both ends and v, m, w are not
    collinear.  Returns (max_count, witness pair or None).
    """
    n = g.n
    adj_sets = [set(a) for a in g.adjacency]
    best = 0
    witness = None
    for v in range(n):
        for w in range(v + 1, n):
            count = 0
            for m in adj_sets[v] & adj_sets[w]:
                if m == v or m == w:
                    continue
                if not g.collinear_indices(v, m, w):
                    count += 1
            if count > best:
                best = count
                witness = (v, w)
    return best, witness


# ---------------------------------------------------------------------------
# the full analysis pass
# ---------------------------------------------------------------------------

@dataclass
class AnalysisReport:
    """Summary of one graph analysis; everything here is recomputable."""

    provenance_name: str
    seed: int
    n: int
    mode: str
    k: int
    conductor: int
    edge_count: int
    excess_exponent: Optional[float]
    max_collinear: int
    peel_threshold: Fraction
    peeled_n: int
    peeled_edge_count: int
    peeled_min_degree: Optional[int]
    path_pair_max: int
    path_pair_min: int
    path_source_min: Optional[int]
    two_path_noncollinear_max: int
    bounds: dict
    ceilings: dict
    all_ceilings_hold: bool


def analyze(ps: PointSet, mode: str, k: int = 2, cap: int = PATH_CAP) -> AnalysisReport:
    """Build the graph, peel it, and compare path counts against bounds.

    The peel threshold is the exact fraction edge_count / (2 n).  Path
    statistics are taken on the peeled subgraph.  Each ceiling comes
    with an applicability flag: the k-path pair ceiling needs unit mode
    or no three collinear points, the noncollinear 2-path ceiling and
    the continuation floor apply unconditionally, and the peeling
    guarantee is checked whenever there is at least one edge.
    """
    g = build_graph(ps, mode)
    n = g.n
    e = g.edge_count

    excess = None
    if n >= 2 and e >= 1:
        excess = math.log(e) / math.log(n) - 1.0

    if n >= 2:
        max_col, _ = max_points_on_line(ps)
    else:
        max_col = n

    threshold = Fraction(e, 2 * n) if n else Fraction(0)
    sub = min_degree_subgraph(g, threshold)
    sub_delta = sub.min_degree()

    pair_max = 0
    pair_min = 0
    source_min = None
    if sub.n >= 2:
        pair_min = None
        for v in range(sub.n):
            counts = irredundant_path_census(sub, v, k, cap=cap)
            total = sum(c for wv, c in counts.items() if wv != v)
            source_min = total if source_min is None else min(source_min, total)
            for w in range(sub.n):
                if w == v:
                    continue
                c = counts.get(w, 0)
                pair_max = max(pair_max, c)
                pair_min = c if pair_min is None else min(pair_min, c)
        if pair_min is None:
            pair_min = 0

    two_path_max, _ = noncollinear_two_path_stats(g)

    delta_for_bound = sub_delta if sub_delta is not None else 0
    continuation = paths_lower_bound(delta_for_bound, k)
    discounted = 1.0
    col_div = max(max_col, 1)
    for level in range(k):
        discounted *= max(0.0, delta_for_bound / col_div - (1 << level) + 1)

    bounds = {
        "relation_count": relation_count_bound(k),
        "two_path": relation_count_bound(2),
        "continuation": continuation,
        "continuation_discounted": discounted,
    }

    ceilings = {}
    rel_applicable = mode == "unit" or max_col <= 2
    ceilings["relation_count"] = {
        "applicable": rel_applicable,
        "holds": (pair_max <= bounds["relation_count"]) if rel_applicable else None,
    }
    ceilings["two_path"] = {
        "applicable": True,
        "holds": two_path_max <= bounds["two_path"],
    }
    peel_applicable = e > 0
    ceilings["peeling"] = {
        "applicable": peel_applicable,
        "holds": (
            sub_delta is not None
            and sub_delta >= threshold
            and Fraction(sub.edge_count) > Fraction(e, 2)
        )
        if peel_applicable
        else None,
    }
    cont_applicable = sub.n > 0
    ceilings["continuation"] = {
        "applicable": cont_applicable,
        "holds": (
            (source_min is None or source_min >= continuation)
            if cont_applicable
            else None
        ),
    }

    all_hold = all(
        v["holds"] for v in ceilings.values() if v["applicable"]
    )

    return AnalysisReport(
        provenance_name=ps.provenance.get("name", ""),
        seed=ps.seed,
        n=n,
        mode=mode,
        k=k,
        conductor=ps.conductor,
        edge_count=e,
        excess_exponent=excess,
        max_collinear=max_col,
        peel_threshold=threshold,
        peeled_n=sub.n,
        peeled_edge_count=sub.edge_count,
        peeled_min_degree=sub_delta,
        path_pair_max=pair_max,
        path_pair_min=pair_min,
        path_source_min=source_min,
        two_path_noncollinear_max=two_path_max,
        bounds=bounds,
        ceilings=ceilings,
        all_ceilings_hold=all_hold,
    )
