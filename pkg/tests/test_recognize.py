from fractions import Fraction
from itertools import product

import pytest

from apud.errors import RejectedInput
from apud.geometry import LineConfig, LineRef, Point, intersection_graph, verify_realization
from apud.graphs import Graph, PatternKind, make_pattern, path_graph
from apud.recognize import (
    ObstructionReport,
    SearchBudget,
    SearchStatus,
    Verdict,
    apud11_obstructions,
    apud11_sufficient,
    apud_gt2_sufficient,
    free_positions,
    is_unit_interval,
    solve_placement_grid,
    uig_oracle,
)
from apud.reduction import flag_sides, parse_nae3sat, reduce, solve_nae_bruteforce, witness_embedding

from conftest import FIG4_TEXT

C4 = make_pattern(PatternKind.CYCLE, 4)
C5 = make_pattern(PatternKind.CYCLE, 5)
S4 = make_pattern(PatternKind.SUN, 4)
K15 = make_pattern(PatternKind.STAR, 5)
CLAW = make_pattern(PatternKind.CLAW)
CROSS = LineConfig((0,), (0,))
COARSE = SearchBudget(Fraction(1, 4), Fraction(4))


def chain_of(*parts: Graph, link: int = 0) -> Graph:
    """Disjoint union of ``parts`` with vertex ``link`` of each joined to the next by a 6-edge path."""
    g = parts[0]
    anchors = [link]
    for part in parts[1:]:
        offset = g.n
        g = g.disjoint_union(part)
        anchors.append(offset + link)
    edges = list(g.edges)
    n = g.n
    for a, b in zip(anchors, anchors[1:]):
        prev = a
        for _ in range(5):
            edges.append((prev, n))
            prev, n = n, n + 1
        edges.append((prev, b))
    return Graph.from_edges(n, edges)


# unit interval ---------------------------------------------------------------------


def test_unit_interval_examples():
    assert is_unit_interval(path_graph(7))
    assert not is_unit_interval(CLAW)
    assert not is_unit_interval(C4)


def test_unit_interval_guard():
    with pytest.raises(RejectedInput):
        is_unit_interval(path_graph(65))


def test_oracle_path():
    xs = uig_oracle(path_graph(3))
    pts = [Point(xs[v], 0) for v in range(3)]
    assert intersection_graph(pts) == path_graph(3)


def test_oracle_rejects_claw_and_guard():
    assert uig_oracle(CLAW) is None
    with pytest.raises(RejectedInput):
        uig_oracle(path_graph(10))


def test_oracle_disconnected_and_empty():
    g = Graph(3, frozenset())
    xs = uig_oracle(g)
    assert intersection_graph([Point(xs[v], 0) for v in range(3)]) == g
    assert uig_oracle(Graph(0, frozenset())) == {}


# APUD(1,1) checks ---------------------------------------------------------------------


@pytest.mark.parametrize("g,name", [(C5, "C5"), (S4, "S4"), (K15, "K1,5")])
def test_obstructions_found(g, name):
    report = apud11_obstructions(g)
    assert report.verdict is Verdict.NOT_IN_CLASS
    assert [o.pattern for o in report.found] == [name]


def test_c4_not_an_obstruction():
    assert apud11_obstructions(C4).verdict is Verdict.INCONCLUSIVE


def test_not_in_class_requires_evidence():
    with pytest.raises(ValueError):
        ObstructionReport([], Verdict.NOT_IN_CLASS)


def test_sufficient_examples():
    assert apud11_sufficient(path_graph(5)).verdict is Verdict.SUFFICIENT_MEMBER
    assert apud11_sufficient(path_graph(5)).found == []
    report = apud11_sufficient(C4)
    assert report.verdict is Verdict.SUFFICIENT_MEMBER and report.found[0].pattern == "C4"
    assert apud11_sufficient(chain_of(C4, C4)).verdict is Verdict.INCONCLUSIVE


@pytest.mark.parametrize("name,kind,size", [("K1,4", "star", 4), ("S3", "sun", 3), ("I3", "sunlet", 3), ("I4", "sunlet", 4)])
def test_sufficient_exceptional_list(name, kind, size):
    report = apud11_sufficient(chain_of(make_pattern(kind, size), path_graph(3)))
    assert report.verdict is Verdict.SUFFICIENT_MEMBER


def test_gt2_examples():
    assert apud_gt2_sufficient(path_graph(6), 1, 1).verdict is Verdict.SUFFICIENT_MEMBER
    k, m = 2, 1
    cycles = chain_of(C4, C4)
    with_paths = cycles.disjoint_union(path_graph(4))
    assert apud_gt2_sufficient(with_paths, k, m).verdict is Verdict.SUFFICIENT_MEMBER
    three = C4.disjoint_union(C4).disjoint_union(C4)
    assert apud_gt2_sufficient(three, k, m).verdict is Verdict.INCONCLUSIVE
    with pytest.raises(RejectedInput):
        apud_gt2_sufficient(C4, -1, 1)


# grid solver ---------------------------------------------------------------------------


def test_grid_c4_found_and_verified():
    result = solve_placement_grid(C4, CROSS)
    assert result.status is SearchStatus.FOUND
    assert verify_realization(C4, CROSS, result.placement).valid


def test_grid_k1_and_empty_config():
    k1 = Graph(1, frozenset())
    assert solve_placement_grid(k1, LineConfig((Fraction(5, 3),), ())).found
    assert solve_placement_grid(k1, LineConfig()).status is SearchStatus.NOT_FOUND


@pytest.mark.parametrize("g", [C5, S4, K15], ids=["C5", "S4", "K15"])
@pytest.mark.parametrize("step", [Fraction(1, 2), Fraction(1, 4)])
def test_grid_agrees_with_obstructions_at_coarse_budgets(g, step):
    assert apud11_obstructions(g).verdict is Verdict.NOT_IN_CLASS
    result = solve_placement_grid(g, CROSS, SearchBudget(step, Fraction(4)))
    assert result.status is SearchStatus.NOT_FOUND


def test_grid_budget_exhaustion():
    result = solve_placement_grid(K15, CROSS, SearchBudget(Fraction(1, 4), 4, max_nodes=5))
    assert result.status is SearchStatus.EXHAUSTED
    assert result.to_json()["budget"]["max_nodes"] == 5


def test_grid_parallel_matches_sequential():
    seq = solve_placement_grid(make_pattern(PatternKind.SUN, 3), CROSS, COARSE)
    par = solve_placement_grid(make_pattern(PatternKind.SUN, 3), CROSS, COARSE, jobs=2)
    assert seq.status is par.status is SearchStatus.FOUND
    assert seq.placement == par.placement


def test_grid_guard():
    with pytest.raises(RejectedInput):
        solve_placement_grid(path_graph(13), CROSS)


def test_budget_validation():
    with pytest.raises(RejectedInput):
        SearchBudget(0, 4)
    with pytest.raises(RejectedInput):
        SearchBudget(Fraction(1, 4), -1)


def test_grid_respects_fixed_assignment():
    lines = LineConfig((0, 1), ())
    found = []
    for bits in product((0, 1), repeat=4):
        fixed = {v: LineRef("H", b) for v, b in enumerate(bits)}
        result = solve_placement_grid(CLAW, lines, COARSE, fixed_assignment=fixed)
        if result.found:
            assert dict(result.placement.assignment) == fixed
            found.append(bits)
    # the claw needs a 3 + 1 split; every relabelling of the rays must be found
    assert {(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0)} <= set(found)
    assert all(max(b.count(0), b.count(1)) == 3 for b in found)


def test_symmetric_configs_do_not_lose_solutions():
    # the square of four lines is symmetric in every direction; the star still fits at a crossing
    lines = LineConfig((-1, 1), (-1, 1))
    assert solve_placement_grid(make_pattern(PatternKind.STAR, 4), lines, COARSE).found


@pytest.mark.parametrize("lines", [CROSS, LineConfig((-1, 1), (-1, 1)), LineConfig((0, Fraction(3, 2)), ())])
def test_symmetry_breaking_is_sound(lines, monkeypatch):
    import networkx as nx

    from apud import recognize

    budget = SearchBudget(Fraction(1, 2), Fraction(3))
    graphs = [
        Graph.from_edges(G.number_of_nodes(), list(G.edges()))
        for G in nx.graph_atlas_g()[1:53]
        if nx.is_connected(G)
    ]
    with_breaking = [solve_placement_grid(g, lines, budget).status for g in graphs]
    monkeypatch.setattr(recognize._Search, "_break_twins", lambda self, fixed: _no_twins(self))
    monkeypatch.setattr(recognize._Search, "_break_geometry", lambda self: None)
    without = [solve_placement_grid(g, lines, budget).status for g in graphs]
    assert with_breaking == without
    assert SearchStatus.FOUND in without and SearchStatus.NOT_FOUND in without


def _no_twins(search):
    search.twin_next, search.twin_prev, search.twinned = {}, {}, set()


# flag spacing --------------------------------------------------------------------------


def test_flags_cannot_face_each_other():
    f = parse_nae3sat(FIG4_TEXT)
    inst = reduce(f)
    a = solve_nae_bruteforce(f)
    pl = witness_embedding(inst, a)
    sides = flag_sides(inst, a)
    pitch, offset = inst.profile.literal_pitch, inst.profile.flag_offset
    step = Fraction(1, 20)
    key = lambda v: (inst.roles[v].literal, inst.roles[v].clause, inst.roles[v].end)
    flags = inst.vertices_with("Flag")
    checked = 0
    for v in flags:
        r = inst.roles[v]
        if sides[key(v)] != 1 or r.literal == 0:
            continue
        y = pl.points[v].y
        left = [u for u in flags if inst.roles[u].literal == r.literal - 1 and pl.points[u].y == y]
        if not left or sides[key(left[0])] != 1:
            continue
        x = pl.points[v].x - offset
        ref = pl.assignment[v]
        # with the neighbouring flag facing right, this flag has no room on its left
        assert free_positions(inst.graph, inst.lines, pl, v, ref, step, x - pitch + step, x - step) == []
        assert free_positions(inst.graph, inst.lines, pl, v, ref, step, x + step, x + pitch - step)
        checked += 1
    assert checked >= 1
