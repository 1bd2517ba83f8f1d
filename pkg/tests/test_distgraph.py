"""Distance graphs: classification, peeling, lines, paths, analysis."""

import random
from fractions import Fraction

import pytest

from cyclolab import (
    CapExceeded,
    CycNum,
    DistanceGraph,
    PathRecord,
    RationalAngleForm,
    analyze,
    build_graph,
    count_irredundant_paths,
    erdos_purdy,
    irredundant_path_census,
    make_pointset,
    max_points_on_line,
    min_degree_subgraph,
    noncollinear_two_path_stats,
    parallel_lines,
    path_direction_tuple,
    paths_lower_bound,
    peel_vertices,
    root_of_unity,
    square_grid,
)

import oracles


def triangle():
    """Unit equilateral triangle {0, 1, zeta_6}."""
    return make_pointset([CycNum.zero(), CycNum.one(), root_of_unity(1, 6)], "tri", {})


def integer_row(n):
    return make_pointset([CycNum.from_rational(i) for i in range(n)], "row", {})


# ---------------------------------------------------------------------------
# classification into edges
# ---------------------------------------------------------------------------

def test_triangle_unit_graph():
    g = build_graph(triangle(), "unit")
    assert g.edge_count == 3
    assert g.min_degree() == 2
    for (i, j), form in g.edges.items():
        assert form.length == 1


def test_grid_2x2_rational_graph():
    g = build_graph(square_grid(2, 2), "rational")
    assert g.edge_count == 4  # sides only; the diagonals have length sqrt 2
    assert all(form.length == 1 for form in g.edges.values())


def test_sqrt2_gives_no_edge():
    ps = make_pointset([CycNum.zero(), CycNum(4, (1, 1))], "pair", {})
    for mode in ("unit", "rational"):
        assert build_graph(ps, mode).edge_count == 0


def test_grid_3x3_rational_edges():
    g = build_graph(square_grid(3, 3), "rational")
    assert g.edge_count == 18  # 9 per axis direction


def test_unit_vs_rational_modes_differ():
    ps = integer_row(3)  # contains a distance-2 pair
    unit = build_graph(ps, "unit")
    rational = build_graph(ps, "rational")
    assert unit.edge_count == 2
    assert rational.edge_count == 3


def test_mode_validation():
    with pytest.raises(ValueError):
        build_graph(triangle(), "euclidean")


def test_edge_form_orientation():
    g = build_graph(integer_row(2), "unit")
    fwd = g.edge_form(0, 1)
    rev = g.edge_form(1, 0)
    assert fwd.length == rev.length == 1
    assert (fwd.exponent + rev.exponent) % fwd.modulus == fwd.modulus // 2
    assert rev.value() == -fwd.value()


def test_degrees_and_adjacency():
    g = build_graph(square_grid(2, 2), "rational")
    assert [g.degree(v) for v in range(4)] == [2, 2, 2, 2]
    assert g.adjacency[0] == (1, 2)


# ---------------------------------------------------------------------------
# peeling
# ---------------------------------------------------------------------------

def star_adjacency(leaves):
    adj = [tuple(range(1, leaves + 1))] + [(0,)] * leaves
    return adj


def test_peel_star_collapses():
    assert peel_vertices(6, star_adjacency(5), 2) == []


def test_peel_cycle_stable():
    adj = [((v - 1) % 6, (v + 1) % 6) for v in range(6)]
    assert peel_vertices(6, adj, 2) == list(range(6))


def test_peel_threshold_zero_keeps_all():
    assert peel_vertices(4, star_adjacency(3), 0) == [0, 1, 2, 3]


def test_peel_fraction_threshold():
    # degree 1 < 3/2 peels the leaves, then the centre
    assert peel_vertices(4, star_adjacency(3), Fraction(3, 2)) == []


def test_peel_matches_naive_repeated_scan():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randrange(2, 40)
        edges = set()
        for _ in range(rng.randrange(1, 3 * n)):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                edges.add((min(a, b), max(a, b)))
        adj = [set() for _ in range(n)]
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        threshold = Fraction(len(edges), 2 * n)
        got = peel_vertices(n, [tuple(s) for s in adj], threshold)
        # naive: rescan until stable
        alive = set(range(n))
        while True:
            doomed = {
                v for v in alive if sum(1 for u in adj[v] if u in alive) < threshold
            }
            if not doomed:
                break
            alive -= doomed
        assert got == sorted(alive)


def test_min_degree_subgraph_grid():
    g = build_graph(square_grid(3, 3), "rational")
    t = Fraction(g.edge_count, 2 * g.n)  # 1
    sub = min_degree_subgraph(g, t)
    assert sub.min_degree() >= t
    assert sub.edge_count > g.edge_count / 2
    assert sub.pointset.provenance["name"] == "square_grid:peeled"
    assert sub.pointset.provenance["params"]["threshold"] == "1"


def test_min_degree_subgraph_reindexes_consistently():
    g = build_graph(parallel_lines(2, 4, seed=5), "rational")
    sub = min_degree_subgraph(g, Fraction(g.edge_count, 2 * g.n))
    for (i, j), form in sub.edges.items():
        assert i < j
        d = sub.pointset.points[j] - sub.pointset.points[i]
        assert form.value() == d


# ---------------------------------------------------------------------------
# collinearity
# ---------------------------------------------------------------------------

def test_max_points_on_line_examples():
    row_plus = make_pointset(
        [CycNum.from_rational(i) for i in range(4)] + [root_of_unity(1, 4)],
        "probe",
        {},
    )
    count, members = max_points_on_line(row_plus)
    assert count == 4
    assert members == (0, 1, 2, 3)
    assert max_points_on_line(square_grid(3, 3))[0] == 3


def test_max_points_on_line_needs_two():
    with pytest.raises(ValueError):
        max_points_on_line(make_pointset([CycNum.zero()], "one", {}))


@pytest.mark.parametrize(
    "ps",
    [
        lambda: erdos_purdy(3),
        lambda: square_grid(3, 4),
        lambda: parallel_lines(3, 3, seed=11),
    ],
)
def test_max_points_on_line_matches_brute(ps):
    ps = ps()
    got_count, got_members = max_points_on_line(ps)
    brute_count, _ = oracles.brute_max_collinear(list(ps.points))
    assert got_count == brute_count
    # the witness really is collinear
    pts = ps.points
    for a in range(2, len(got_members)):
        assert oracles.is_collinear(
            pts[got_members[0]], pts[got_members[1]], pts[got_members[a]]
        )


def test_collinear_indices_against_oracle():
    ps = parallel_lines(3, 3, seed=2)
    g = build_graph(ps, "rational")
    pts = ps.points
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                assert g.collinear_indices(i, j, k) == oracles.is_collinear(
                    pts[i], pts[j], pts[k]
                )


# ---------------------------------------------------------------------------
# irredundant paths
# ---------------------------------------------------------------------------

def test_paths_lower_bound_values():
    assert paths_lower_bound(4, 2) == 12
    assert paths_lower_bound(3, 2) == 6
    assert paths_lower_bound(5, 4) == 0
    assert paths_lower_bound(0, 3) == 0
    assert paths_lower_bound(7, 1) == 7
    assert paths_lower_bound(9, 0) == 1
    with pytest.raises(ValueError):
        paths_lower_bound(-1, 2)


def test_triangle_paths():
    g = build_graph(triangle(), "unit")
    assert count_irredundant_paths(g, 0, 1, 1) == 1
    assert count_irredundant_paths(g, 0, 1, 2) == 1  # via zeta_6 only
    census = irredundant_path_census(g, 0, 2)
    assert census == {1: 1, 2: 1}


def test_collinear_row_paths():
    g = build_graph(integer_row(4), "rational")
    # 0 -> x -> 1 for x in {2, 3}: edge vectors never cancel
    assert count_irredundant_paths(g, 0, 1, 2) == 2
    # 0 -> 1 -> 2 and 0 -> 3 -> 2; backtracking walks are pruned
    assert count_irredundant_paths(g, 0, 2, 2) == 2


def test_path_validation():
    g = build_graph(triangle(), "unit")
    with pytest.raises(ValueError):
        count_irredundant_paths(g, 0, 0, 2)
    with pytest.raises(ValueError):
        count_irredundant_paths(g, 0, 9, 2)
    with pytest.raises(ValueError):
        count_irredundant_paths(g, 0, 1, 0)
    with pytest.raises(CapExceeded):
        count_irredundant_paths(g, 0, 1, 9)
    with pytest.raises(ValueError):
        count_irredundant_paths(g, 0, 1, 2, vertex_scope="nearby")
    with pytest.raises(ValueError):
        irredundant_path_census(g, 5, 2)


@pytest.mark.parametrize(
    "make,mode",
    [
        (lambda: erdos_purdy(2), "unit"),
        (lambda: erdos_purdy(3), "unit"),
        (lambda: erdos_purdy(3), "rational"),
        (lambda: square_grid(3, 3), "rational"),
    ],
)
def test_census_matches_brute_walks(make, mode):
    g = build_graph(make(), mode)
    for k in (1, 2, 3):
        for v in range(g.n):
            assert irredundant_path_census(g, v, k) == oracles.brute_path_census(
                g, v, k
            ), (mode, k, v)


def test_census_count_consistency():
    g = build_graph(erdos_purdy(3), "unit")
    census = irredundant_path_census(g, 0, 3)
    for w in range(1, g.n):
        assert census.get(w, 0) == count_irredundant_paths(g, 0, w, 3)


def test_collected_records_are_irredundant_paths():
    g = build_graph(erdos_purdy(3), "unit")
    count, records = count_irredundant_paths(g, 0, 1, 3, collect=True)
    assert count == len(records)
    for rec in records:
        assert isinstance(rec, PathRecord)
        assert rec.irredundant and not rec.shortest
        assert len(set(rec.vertices)) == len(rec.vertices)  # no revisits
        assert rec.vertices[0] == 0 and rec.vertices[-1] == 1
        total = CycNum.zero()
        for vec in rec.edge_vectors:
            total = total + vec
        assert total == g.pointset.points[1] - g.pointset.points[0]


def test_direction_tuple_triangle():
    g = build_graph(triangle(), "unit")
    _, records = count_irredundant_paths(g, 0, 1, 2, collect=True)
    (rec,) = records
    assert rec.vertices == (0, 2, 1)
    # conductor 6, so the modulus is 6: zeta_6 up, then its inverse back down
    assert path_direction_tuple(rec) == (1, 5)


def test_direction_tuple_injective_without_collinear_triples():
    g = build_graph(erdos_purdy(3), "unit")
    for v in range(g.n):
        for w in range(g.n):
            if v == w:
                continue
            count, records = count_irredundant_paths(g, v, w, 2, collect=True)
            tuples = [path_direction_tuple(r) for r in records]
            assert len(set(tuples)) == len(tuples) == count


def test_direction_tuple_collides_on_collinear_sets():
    g = build_graph(integer_row(4), "rational")
    _, records = count_irredundant_paths(g, 0, 3, 2, collect=True)
    tuples = [path_direction_tuple(r) for r in records]
    assert len(records) == 2 and len(set(tuples)) == 1  # (0, 0) twice


def test_direction_tuple_rejects_irrational_angles():
    rec = PathRecord(
        vertices=(0, 1),
        edge_vectors=(CycNum(4, (1, 1)),),
        irredundant=True,
        shortest=False,
    )
    with pytest.raises(ValueError):
        path_direction_tuple(rec)


def test_two_path_stats_triangle():
    g = build_graph(triangle(), "unit")
    best, witness = noncollinear_two_path_stats(g)
    assert best == 1
    assert witness is not None


def test_two_path_stats_ignores_collinear_middles():
    g = build_graph(integer_row(3), "rational")
    best, _ = noncollinear_two_path_stats(g)
    assert best == 0  # every 2-path in a row is collinear


# ---------------------------------------------------------------------------
# shortest mode
# ---------------------------------------------------------------------------

def test_shortest_scope_distinguishes():
    ps = make_pointset(
        [CycNum.zero(), CycNum.one(), CycNum.from_rational(Fraction(1, 2))],
        "probe",
        {},
    )
    g = build_graph(ps, "unit")
    assert g.edge_count == 1  # only 0 - 1
    assert count_irredundant_paths(g, 0, 1, 1, shortest_only=True) == 0
    assert (
        count_irredundant_paths(
            g, 0, 1, 1, shortest_only=True, vertex_scope="neighbors"
        )
        == 1
    )


def test_shortest_equals_plain_without_collinearity():
    g = build_graph(triangle(), "unit")
    for v in range(3):
        for w in range(3):
            if v == w:
                continue
            for k in (1, 2):
                assert count_irredundant_paths(
                    g, v, w, k, shortest_only=True
                ) == count_irredundant_paths(g, v, w, k)


def test_shortest_blocks_longer_collinear_step():
    g = build_graph(integer_row(3), "rational")
    # step 0 -> 2 is blocked by the nearer collinear vertex 1
    assert count_irredundant_paths(g, 0, 2, 1, shortest_only=True) == 0
    assert count_irredundant_paths(g, 0, 1, 1, shortest_only=True) == 1


def test_shortest_paths_are_subset_of_plain():
    g = build_graph(parallel_lines(2, 3, seed=4), "rational")
    for v in range(g.n):
        plain = irredundant_path_census(g, v, 2)
        short = irredundant_path_census(g, v, 2, shortest_only=True)
        for w, c in short.items():
            assert c <= plain.get(w, 0)


# ---------------------------------------------------------------------------
# the analysis report
# ---------------------------------------------------------------------------

def test_analyze_triangle():
    rep = analyze(triangle(), "unit", 2)
    assert rep.n == 3 and rep.edge_count == 3
    assert rep.max_collinear == 2
    assert rep.peel_threshold == Fraction(1, 2)
    assert rep.peeled_n == 3 and rep.peeled_edge_count == 3
    assert rep.peeled_min_degree == 2
    assert rep.path_pair_max == 1
    assert rep.path_source_min == 2
    assert rep.two_path_noncollinear_max == 1
    assert rep.bounds["relation_count"] == 144
    assert rep.bounds["continuation"] == paths_lower_bound(2, 2)
    assert rep.all_ceilings_hold
    assert rep.ceilings["relation_count"]["applicable"]  # unit mode


def test_analyze_grid_rational_relation_ceiling_not_applicable():
    rep = analyze(square_grid(3, 3), "rational", 2)
    assert rep.max_collinear == 3
    assert not rep.ceilings["relation_count"]["applicable"]
    assert rep.ceilings["relation_count"]["holds"] is None
    assert rep.ceilings["two_path"]["applicable"]
    assert rep.all_ceilings_hold


def test_analyze_erdos_purdy_4():
    rep = analyze(erdos_purdy(4), "unit", 2)
    assert rep.n == 16
    assert rep.edge_count >= 24  # 2^3 * 3
    assert rep.max_collinear == 2
    assert rep.all_ceilings_hold


def test_analyze_singleton():
    rep = analyze(make_pointset([CycNum.zero()], "one", {}), "rational", 2)
    assert rep.n == 1 and rep.edge_count == 0
    assert rep.max_collinear == 1
    assert rep.excess_exponent is None
    assert rep.path_source_min is None
    assert not rep.ceilings["peeling"]["applicable"]
    assert rep.all_ceilings_hold


def test_analyze_excess_exponent():
    import math

    rep = analyze(square_grid(3, 3), "rational", 2)
    assert rep.excess_exponent == pytest.approx(math.log(18) / math.log(9) - 1)


# ---------------------------------------------------------------------------
# synthetic random graphs driven through the peeling contract
# ---------------------------------------------------------------------------

def synthetic_graph(seed):
    """Random adjacency grafted onto an integer row of points."""
    rng = random.Random(seed)
    n = rng.randrange(2, 60)
    ps = integer_row(n)
    edges = {}
    adj = [set() for _ in range(n)]
    for _ in range(rng.randrange(1, 4 * n)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b:
            continue
        i, j = min(a, b), max(a, b)
        if (i, j) in edges:
            continue
        edges[(i, j)] = RationalAngleForm(Fraction(j - i), 0, 2)
        adj[i].add(j)
        adj[j].add(i)
    if not edges:
        edges[(0, 1)] = RationalAngleForm(Fraction(1), 0, 2)
        adj[0].add(1)
        adj[1].add(0)
    return DistanceGraph(
        pointset=ps,
        mode="rational",
        edges=edges,
        adjacency=tuple(tuple(sorted(s)) for s in adj),
    )


@pytest.mark.parametrize("seed", range(12))
def test_min_degree_subgraph_peeling_contract(seed):
    g = synthetic_graph(seed)
    t = Fraction(g.edge_count, 2 * g.n)
    sub = min_degree_subgraph(g, t)
    assert sub.n > 0
    assert sub.min_degree() >= t
    assert sub.edge_count > Fraction(g.edge_count, 2)
