from apud.geometry import LineConfig, LineRef, Placement, Point
from apud.reduction import Assignment, parse_nae3sat, reduce, skeleton_instance, witness_embedding
from apud.render import ROLE_COLOURS, render_svg

from conftest import FIG4_TEXT, S3_POINTS

CROSS = LineConfig((0,), (0,))


def test_empty_placement_draws_lines_only():
    svg = render_svg(CROSS, Placement())
    assert svg.count("<line ") == 2
    assert "<circle" not in svg


def test_s3_six_circles():
    pts = {v: Point(x, y) for v, (x, y) in enumerate(S3_POINTS)}
    refs = {v: LineRef("H", 0) if p.y == 0 else LineRef("V", 0) for v, p in pts.items()}
    svg = render_svg(CROSS, Placement(pts, refs))
    assert svg.count("<circle") == 6
    assert svg.startswith("<?xml")


def test_roles_colour_circles():
    inst = skeleton_instance(2, 1)
    pl = witness_embedding(inst, Assignment((True, True)))
    svg = render_svg(inst.lines, pl, inst.roles)
    assert ROLE_COLOURS["PAlpha"] in svg and ROLE_COLOURS["EndCycle"] in svg
    assert svg.count("<circle") == inst.graph.n
    assert svg.count("<line ") == inst.lines.size


def test_render_is_deterministic():
    f = parse_nae3sat(FIG4_TEXT)
    inst = reduce(f)
    pl = witness_embedding(inst, Assignment.parse("TFFF"))
    assert render_svg(inst.lines, pl, inst.roles) == render_svg(inst.lines, pl, inst.roles)
