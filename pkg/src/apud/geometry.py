"""Exact rational geometry for unit disks centred on axes-parallel lines.

Two unit disks intersect iff their centres are at Euclidean distance <= 2.  Every test here
compares squared distances of ``Fraction`` coordinates, so boundary contacts are decided
exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, RejectedInput
from .graphs import Graph

Rational = Fraction
FOUR = Fraction(4)


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise RejectedInput(f"expected an exact rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {value!r}") from None
    raise RejectedInput(f"expected an exact rational, got {value!r}")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction
    z: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", rational(self.x))
        object.__setattr__(self, "y", rational(self.y))
        object.__setattr__(self, "z", rational(self.z))

    def translate(self, dx=0, dy=0, dz=0) -> "Point":
        return Point(self.x + rational(dx), self.y + rational(dy), self.z + rational(dz))


def squared_distance(p: Point, q: Point) -> Fraction:
    dx, dy, dz = p.x - q.x, p.y - q.y, p.z - q.z
    return dx * dx + dy * dy + dz * dz


def disks_intersect(p: Point, q: Point) -> bool:
    return squared_distance(p, q) <= FOUR


def intersection_graph(points: Sequence[Point]) -> Graph:
    edges = [
        (i, j)
        for i in range(len(points))
        for j in range(i + 1, len(points))
        if disks_intersect(points[i], points[j])
    ]
    return Graph(len(points), frozenset(edges))


# lines -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LineRef:
    """Index into ``LineConfig.horizontals`` (axis ``H``) or ``verticals`` (axis ``V``)."""

    axis: str
    index: int

    def __post_init__(self):
        if self.axis not in ("H", "V"):
            raise RejectedInput(f"line axis must be 'H' or 'V', got {self.axis!r}")

    def to_json(self) -> dict:
        return {"axis": self.axis, "index": self.index}


@dataclass(frozen=True)
class LineConfig:
    """Horizontal lines ``y = h`` for h in ``horizontals`` and vertical lines ``x = v``."""

    horizontals: tuple[Fraction, ...] = ()
    verticals: tuple[Fraction, ...] = ()

    def __post_init__(self):
        for name in ("horizontals", "verticals"):
            values = [rational(v) for v in getattr(self, name)]
            if len(set(values)) != len(values):
                raise RejectedInput(f"duplicate values in {name}")
            object.__setattr__(self, name, tuple(sorted(values)))

    @property
    def size(self) -> int:
        return len(self.horizontals) + len(self.verticals)

    def refs(self) -> list[LineRef]:
        return [LineRef("H", i) for i in range(len(self.horizontals))] + [
            LineRef("V", i) for i in range(len(self.verticals))
        ]

    def value(self, ref: LineRef) -> Fraction:
        values = self.horizontals if ref.axis == "H" else self.verticals
        if not 0 <= ref.index < len(values):
            raise RejectedInput(f"no line {ref.axis}[{ref.index}]")
        return values[ref.index]

    def ref_for(self, axis: str, value) -> LineRef:
        values = self.horizontals if axis == "H" else self.verticals
        try:
            return LineRef(axis, values.index(rational(value)))
        except ValueError:
            raise RejectedInput(f"no {axis} line at {value}") from None

    def contains(self, ref: LineRef, p: Point) -> bool:
        values = self.horizontals if ref.axis == "H" else self.verticals
        if not 0 <= ref.index < len(values):
            return False
        return (p.y if ref.axis == "H" else p.x) == values[ref.index]

    def point_on(self, ref: LineRef, t) -> Point:
        """Point at coordinate ``t`` along the line (x for horizontals, y for verticals)."""
        c = self.value(ref)
        return Point(t, c) if ref.axis == "H" else Point(c, t)

    def to_json(self) -> dict:
        return {
            "H": [format_rational(v) for v in self.horizontals],
            "V": [format_rational(v) for v in self.verticals],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LineConfig":
        try:
            return cls(tuple(rational(v) for v in data["H"]), tuple(rational(v) for v in data["V"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed line config JSON: {exc}") from exc


@dataclass(frozen=True)
class Placement:
    """Candidate realization: a centre and an assigned line for each placed vertex."""

    points: Mapping[int, Point] = field(default_factory=dict)
    assignment: Mapping[int, LineRef] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "points": {
                str(v): [format_rational(p.x), format_rational(p.y)]
                + ([format_rational(p.z)] if p.z != 0 else [])
                for v, p in sorted(self.points.items())
            },
            "assignment": {str(v): ref.to_json() for v, ref in sorted(self.assignment.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Placement":
        try:
            points = {int(v): Point(*(rational(c) for c in xy)) for v, xy in data["points"].items()}
            assignment = {
                int(v): LineRef(ref["axis"], int(ref["index"]))
                for v, ref in data.get("assignment", {}).items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, RejectedInput):
                raise
            raise ParseError(f"malformed placement JSON: {exc}") from exc
        return cls(points, assignment)

    def ordered_points(self, n: int) -> list[Point]:
        return [self.points[v] for v in range(n)]


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# verification ----------------------------------------------------------


@dataclass
class VerificationReport:
    line_violations: list[int] = field(default_factory=list)
    missing_edges: list[tuple[int, int]] = field(default_factory=list)
    excess_edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (self.line_violations or self.missing_edges or self.excess_edges)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "line_violations": self.line_violations,
            "missing_edges": [list(e) for e in self.missing_edges],
            "excess_edges": [list(e) for e in self.excess_edges],
        }

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return (
            f"invalid: {len(self.line_violations)} line violation(s), "
            f"{len(self.missing_edges)} missing edge(s), {len(self.excess_edges)} excess edge(s)"
        )


def verify_realization(g: Graph, lines: LineConfig, pl: Placement) -> VerificationReport:
    missing = [v for v in range(g.n) if v not in pl.points]
    if missing:
        raise RejectedInput(f"vertices without a position: {missing[:10]}")
    extra = sorted(v for v in pl.points if not 0 <= v < g.n)
    if extra:
        raise RejectedInput(f"placement has vertices outside the graph: {extra[:10]}")

    report = VerificationReport()
    for v in range(g.n):
        ref = pl.assignment.get(v)
        if ref is None or not lines.contains(ref, pl.points[v]):
            report.line_violations.append(v)

    pts = pl.ordered_points(g.n)
    for i, j in g.sorted_edges():
        if not disks_intersect(pts[i], pts[j]):
            report.missing_edges.append((i, j))
    report.excess_edges = sorted(
        (i, j) for i, j in _close_pairs(pts) if not g.has_edge(i, j) and disks_intersect(pts[i], pts[j])
    )
    return report


def _close_pairs(pts: Sequence[Point]) -> Iterable[tuple[int, int]]:
    # intersecting disks have centres in the same or a neighbouring cell of a side-2 grid
    cells: dict[tuple[int, int, int], list[int]] = {}
    for i, p in enumerate(pts):
        cells.setdefault((p.x // 2, p.y // 2, p.z // 2), []).append(i)
    for (cx, cy, cz), members in cells.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for j in cells.get((cx + dx, cy + dy, cz + dz), ()):
                        for i in members:
                            if i < j:
                                yield i, j


def triangle_blocking(a, b, c) -> bool:
    """For disks at (a,0), (b,0), (0,c) with 0 < |a| < |b|: does touching (b,0) force touching (a,0)?"""
    a, b, c = rational(a), rational(b), rational(c)
    if not 0 < abs(a) < abs(b):
        raise RejectedInput("triangle_blocking needs 0 < |a| < |b|")
    apex = Point(0, c)
    return not disks_intersect(apex, Point(b, 0)) or disks_intersect(apex, Point(a, 0))


def points_from_pairs(pairs: Iterable[Sequence]) -> list[Point]:
    return [Point(*(rational(c) for c in pair)) for pair in pairs]
