import itertools
import json
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from apud.errors import ParseError, RejectedInput
from apud.geometry import Point, dump_json, intersection_graph, verify_realization
from apud.graphs import Graph, PatternKind, find_induced, longest_cycle_at_most, make_pattern
from apud.reduction import (
    Assignment,
    LayoutProfile,
    NaeFormula,
    ReductionInstance,
    attach_flags,
    build_lines,
    build_skeleton,
    formula_corpus,
    is_nae_satisfying,
    lift_points,
    lift_to_3d,
    parse_nae3sat,
    random_formula,
    reduce,
    self_check,
    skeleton_instance,
    solve_nae_bruteforce,
    violated_clause,
    witness_embedding,
)

from conftest import FANO_TEXT, FIG4_TEXT

FIG4 = parse_nae3sat(FIG4_TEXT)


# formulas ---------------------------------------------------------------------


def test_parse_single_clause():
    f = parse_nae3sat("p nae 3 1\n1 2 3")
    assert f.n == 3 and f.clauses == ((0, 1, 2),)


def test_parse_figure4():
    assert FIG4.n == 4
    assert FIG4.clauses == ((0, 2, 3), (0, 1, 3), (0, 1, 2))


def test_parse_skips_comments_and_round_trips():
    f = parse_nae3sat("c hello\n\np nae 3 1\nc mid\n1 2 3\n")
    assert parse_nae3sat(f.to_text()) == f


@pytest.mark.parametrize(
    "text,line",
    [
        ("p nae 3 1\n1 2", 2),
        ("p nae 3 1\n1 2 -3", 2),
        ("p nae 3 1\n1 2 4", 2),
        ("p nae 3 1\n1 1 2", 2),
        ("p nae 3 2\n1 2 3", None),
        ("p cnf 3 1\n1 2 3", 1),
        ("", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_nae3sat(text)
    if line is not None:
        assert info.value.line == line
        assert f"line {line}" in str(info.value)


def test_formula_validation():
    with pytest.raises(RejectedInput):
        NaeFormula(3, ((0, 1, 1),))
    with pytest.raises(RejectedInput):
        NaeFormula(3, ((0, 1, 3),))


def test_bruteforce_examples():
    assert str(solve_nae_bruteforce(parse_nae3sat("p nae 3 1\n1 2 3"))) == "TFF"
    assert solve_nae_bruteforce(parse_nae3sat(FANO_TEXT)) is None
    assert is_nae_satisfying(FIG4, solve_nae_bruteforce(FIG4))


def test_bruteforce_guard():
    with pytest.raises(RejectedInput):
        solve_nae_bruteforce(NaeFormula(25, ((0, 1, 2),)))


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 7), st.integers(1, 8), st.integers(0, 10**6))
def test_bruteforce_against_enumeration_and_complement(n, m, seed):
    f = random_formula(random.Random(seed), n, m)
    sat = [a for bits in itertools.product((False, True), repeat=n) if is_nae_satisfying(f, a := Assignment(bits))]
    found = solve_nae_bruteforce(f)
    assert (found is None) == (not sat)
    for a in sat:
        assert is_nae_satisfying(f, a.complement())


def test_assignment_parse():
    assert Assignment.parse("tf10").values == (True, False, True, False)
    with pytest.raises(RejectedInput):
        Assignment.parse("TX")
    assert violated_clause(FIG4, Assignment.parse("TTTT")) == 0


def test_corpus_is_seeded():
    a, b = formula_corpus(7, 10), formula_corpus(7, 10)
    assert a == b
    assert all(3 <= f.n <= 5 and 1 <= f.m <= 4 for f in a)


# frame ------------------------------------------------------------------------


def test_lines_figure4_verticals():
    lines = build_lines(4, 3, LayoutProfile(Fraction(1, 10)))
    assert lines.verticals == tuple(Fraction(k * 39, 10) for k in range(6))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (3, 2), (5, 4), (4, 2)])
def test_lines_counts_and_symmetry(n, m):
    lines = build_lines(n, m)
    assert len(lines.verticals) == n + 2
    assert set(lines.horizontals) == {-h for h in lines.horizontals}
    extra = 2 if n == 2 * m else 0
    assert len(lines.horizontals) == 2 * m + 3 + extra


def test_minimal_frame():
    lines = build_lines(1, 1)
    assert (len(lines.verticals), len(lines.horizontals)) == (3, 5)


def test_lines_reject_bad_sizes():
    with pytest.raises(RejectedInput):
        build_lines(0, 1)


def test_profile_bounds():
    with pytest.raises(RejectedInput):
        LayoutProfile(Fraction(0))
    with pytest.raises(RejectedInput):
        LayoutProfile(Fraction(1))
    assert self_check(LayoutProfile(Fraction(1, 20))).epsilon == Fraction(1, 20)
    with pytest.raises(RejectedInput):
        self_check(LayoutProfile(Fraction(1, 3)))


# skeleton and flags -------------------------------------------------------------


def side_diamonds(inst, side):
    members = {
        v
        for v, r in enumerate(inst.roles)
        if r.kind == f"P{side}" or (r.kind == "DiamondTip" and r.side == side)
    }
    sub, keep = inst.graph.induced(sorted(members))
    return find_induced(sub, make_pattern(PatternKind.DIAMOND))


def star_centres(inst):
    """Centres of induced K_{1,4} lying on alpha (the literal crossings)."""
    centres = {occ.vertices[0] for occ in find_induced(inst.graph, make_pattern(PatternKind.STAR, 4))}
    return {c for c in centres if inst.roles[c].kind == "LiteralPath" and inst.roles[c].pos == 0}


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (3, 2), (4, 3)])
def test_skeleton_structure(n, m):
    inst = skeleton_instance(n, m)
    assert len(side_diamonds(inst, "L")) == 2 * m
    assert len(side_diamonds(inst, "R")) == 2 * m
    centres = star_centres(inst)
    assert len(centres) == n
    alpha = {v for v, r in enumerate(inst.roles) if r.kind == "PAlpha"}
    # each literal crossing on alpha is a K_{1,4} centre whose rays include two alpha vertices
    for c in centres:
        assert len(inst.graph.neighbors(c) & alpha) == 2
    assert longest_cycle_at_most(inst.graph, 4)


def test_literal_paths_end_in_induced_four_cycles():
    inst = skeleton_instance(3, 2)
    for i in range(3):
        ends = [v for v, r in enumerate(inst.roles) if r.kind == "EndCycle" and r.literal == i]
        assert len(ends) == 6
    assert len(find_induced(inst.graph, make_pattern(PatternKind.CYCLE, 4))) == 2 * 3


def test_flag_counts():
    assert reduce(FIG4).flag_counts() == (12, 3)
    assert reduce(parse_nae3sat("p nae 3 1\n1 2 3")).flag_counts() == (3, 0)


def test_missing_top_flags_mark_membership():
    inst = reduce(FIG4)
    top = {(r.literal, r.clause) for r in inst.roles if r.kind == "Flag" and r.end == "top"}
    expected = {(i, j) for j, c in enumerate(FIG4.clauses) for i in range(4) if i not in c}
    assert top == expected


def test_flags_form_triangles_with_consecutive_path_vertices():
    inst = reduce(FIG4)
    for v in inst.vertices_with("Flag"):
        nbrs = sorted(inst.graph.neighbors(v))
        assert len(nbrs) == 2
        a, b = (inst.roles[u] for u in nbrs)
        assert a.kind == b.kind == "LiteralPath" and a.literal == b.literal == inst.roles[v].literal
        assert abs(a.pos - b.pos) == 1
        assert inst.graph.has_edge(*nbrs)


def test_flag_dimension_mismatch():
    with pytest.raises(RejectedInput):
        attach_flags(build_skeleton(3, 2), FIG4)


def test_figure4_snapshot():
    inst = reduce(FIG4)
    assert (inst.graph.n, len(inst.graph.edges)) == (162, 208)
    assert Counter(r.kind for r in inst.roles) == {
        "LiteralPath": 68,
        "DiamondTip": 24,
        "EndCycle": 24,
        "Flag": 15,
        "PL": 13,
        "PR": 13,
        "PAlpha": 5,
    }
    assert longest_cycle_at_most(inst.graph, 4)


def test_minimal_instance():
    inst = skeleton_instance(1, 1)
    assert (inst.graph.n, len(inst.graph.edges)) == (35, 44)
    assert verify_realization(inst.graph, inst.lines, witness_embedding(inst, Assignment((True,)))).valid


def test_bundle_round_trip():
    inst = reduce(FIG4)
    text = dump_json(inst.to_json())
    again = ReductionInstance.from_json(json.loads(text))
    assert again == inst
    assert dump_json(again.to_json()) == text


# witnesses ----------------------------------------------------------------------


def test_figure4_every_satisfying_assignment_verifies():
    inst = reduce(FIG4)
    count = 0
    for bits in itertools.product((False, True), repeat=4):
        a = Assignment(bits)
        if not is_nae_satisfying(FIG4, a):
            with pytest.raises(RejectedInput, match="violates clause"):
                witness_embedding(inst, a)
            continue
        count += 1
        pl = witness_embedding(inst, a, check=False)
        assert verify_realization(inst.graph, inst.lines, pl).valid
    assert count > 0


def test_false_literal_is_mirrored():
    inst = skeleton_instance(2, 1)
    up = witness_embedding(inst, Assignment((True, True)))
    down = witness_embedding(inst, Assignment((True, False)))
    for v, r in enumerate(inst.roles):
        if r.kind == "LiteralPath" and r.literal == 1:
            assert down.points[v] == Point(up.points[v].x, -up.points[v].y)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 1), (5, 4)])
def test_skeleton_witness_all_true(n, m):
    inst = skeleton_instance(n, m)
    pl = witness_embedding(inst, Assignment((True,) * n))
    assert verify_realization(inst.graph, inst.lines, pl).valid


def test_complement_also_verifies():
    f = formula_corpus(3, 1)[0]
    a = solve_nae_bruteforce(f)
    inst = reduce(f)
    for b in (a, a.complement()):
        assert verify_realization(inst.graph, inst.lines, witness_embedding(inst, b)).valid


def test_witness_length_mismatch():
    with pytest.raises(RejectedInput):
        witness_embedding(reduce(FIG4), Assignment((True, False)))


# lift ---------------------------------------------------------------------------


def test_lift_examples():
    k2 = Graph.from_edges(2, [(0, 1)])
    lifted, planes = lift_to_3d(k2)
    assert lifted == make_pattern(PatternKind.CYCLE, 4).__class__.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    assert planes == (0, Fraction(9, 10))
    k1, _ = lift_to_3d(Graph(1, frozenset()))
    assert k1 == Graph.from_edges(2, [(0, 1)])
    empty, _ = lift_to_3d(Graph(3, frozenset()))
    assert empty.sorted_edges() == [(0, 3), (1, 4), (2, 5)]


def test_lift_points_for_isolated_vertices():
    g = Graph(2, frozenset())
    lifted, planes = lift_to_3d(g)
    pts = lift_points([Point(0, 0), Point(5, 0)], planes)
    assert intersection_graph(pts) == lifted
