"""Monotone NAE3SAT -> axes-parallel unit disk graph compiler (the logic engine).

Frame (``build_lines``): vertical lines ``L: x=0``, ``x_i: x=(4-eps)i`` for ``i=1..n`` and
``R: x=(4-eps)(n+1)``; horizontal lines ``alpha: y=0``, clause lines ``C_j`` above alpha with
pitch ``2+eps``, their mirror images ``C'_j`` and the caps ``T``/``B``.

Skeleton (``build_skeleton``):

* ``P_alpha`` runs along alpha with ``2n+3`` vertices.  Its even vertices sit on the vertical
  lines and are shared with ``P_L``, ``P_1..P_n`` and ``P_R``; the odd ones sit half-way between.
  Each shared vertex of a literal path is the centre of an induced ``K_{1,4}``.
* ``P_L`` / ``P_R`` climb from alpha in both directions; the two path vertices straddling each
  clause line form the chord of a diamond whose tips lie on that clause line.
* ``P_i`` has ``2m+2`` vertices above and below alpha and ends in an induced 4-cycle on each
  side, two of whose vertices lie on ``T`` (resp. ``B``).

Flags (``attach_flags``): a triangle vertex on ``C'_j`` for every literal path, and on ``C_j``
only for literals absent from clause ``j``.  A literal path that is flipped about alpha carries
its flags to the mirror line, so every clause line keeps a free slot iff the assignment is
not-all-equal on that clause.

All coordinates are multiples of the path pitch ``p = (2+eps)/2`` plus a few fixed offsets, see
``LayoutProfile``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ParseError, RejectedInput
from .geometry import (
    LineConfig,
    LineRef,
    Placement,
    Point,
    format_rational,
    rational,
    verify_realization,
)
from .graphs import Graph

BRUTE_FORCE_LIMIT = 24


# formulas --------------------------------------------------------------


@dataclass(frozen=True)
class NaeFormula:
    """Monotone NAE3SAT instance; clauses hold 0-based variable indices."""

    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise RejectedInput("a formula needs at least one variable")
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        for j, c in enumerate(clauses):
            if len(c) != 3:
                raise RejectedInput(f"clause {j} has {len(c)} literals, expected 3")
            if len(set(c)) != 3:
                raise RejectedInput(f"clause {j} repeats a variable: {c}")
            if any(not 0 <= x < self.n for x in c):
                raise RejectedInput(f"clause {j} has a variable outside 0..{self.n - 1}: {c}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def to_text(self) -> str:
        rows = [f"p nae {self.n} {self.m}"] + [" ".join(str(x + 1) for x in c) for c in self.clauses]
        return "\n".join(rows) + "\n"


def parse_nae3sat(text: str) -> NaeFormula:
    """Parse ``p nae <n> <m>`` followed by m lines of three 1-based positive variables.

    Blank lines and lines starting with ``c`` are ignored.
    """
    header = None
    clauses: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        if header is None:
            if len(toks) != 4 or toks[0] != "p" or toks[1] != "nae":
                raise ParseError("expected header 'p nae <n> <m>'", lineno)
            try:
                n, m = int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("non-integer n or m in header", lineno) from None
            if n < 1 or m < 1:
                raise ParseError("header needs n >= 1 and m >= 1", lineno)
            header = (n, m)
            continue
        if len(toks) != 3:
            raise ParseError(f"clause has {len(toks)} literals, expected 3", lineno)
        try:
            lits = [int(t) for t in toks]
        except ValueError:
            raise ParseError("non-integer literal", lineno) from None
        for lit in lits:
            if lit < 0:
                raise ParseError(f"negated literal {lit} (only monotone formulas)", lineno)
            if not 1 <= lit <= header[0]:
                raise ParseError(f"variable {lit} outside 1..{header[0]}", lineno)
        if len(set(lits)) != 3:
            raise ParseError("clause repeats a variable", lineno)
        clauses.append((lits[0] - 1, lits[1] - 1, lits[2] - 1))
    if header is None:
        raise ParseError("missing header 'p nae <n> <m>'")
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return NaeFormula(header[0], tuple(clauses))


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]

    @classmethod
    def parse(cls, text: str) -> "Assignment":
        """Accepts strings over ``TF`` or ``10`` (one character per variable)."""
        table = {"T": True, "1": True, "F": False, "0": False}
        try:
            return cls(tuple(table[ch] for ch in text.strip().upper()))
        except KeyError:
            raise RejectedInput(f"assignment must be a string over T/F or 1/0, got {text!r}") from None

    def complement(self) -> "Assignment":
        return Assignment(tuple(not v for v in self.values))

    def __str__(self) -> str:
        return "".join("T" if v else "F" for v in self.values)


def violated_clause(f: NaeFormula, a: Assignment) -> int | None:
    """Index of the first clause whose literals are all equal, or None."""
    if len(a.values) != f.n:
        raise RejectedInput(f"assignment has {len(a.values)} values for {f.n} variables")
    for j, c in enumerate(f.clauses):
        if len({a.values[x] for x in c}) == 1:
            return j
    return None


def is_nae_satisfying(f: NaeFormula, a: Assignment) -> bool:
    return violated_clause(f, a) is None


def solve_nae_bruteforce(f: NaeFormula) -> Assignment | None:
    """Lowest satisfying code, where bit ``i`` of the code is the value of variable ``i``."""
    if f.n > BRUTE_FORCE_LIMIT:
        raise RejectedInput(f"brute force limited to {BRUTE_FORCE_LIMIT} variables, got {f.n}")
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in f.clauses]
    for code in range(1 << f.n):
        if all(0 < code & mk < mk for mk in masks):
            return Assignment(tuple(bool(code >> i & 1) for i in range(f.n)))
    return None


def random_formula(rng: random.Random, n: int, m: int) -> NaeFormula:
    return NaeFormula(n, tuple(tuple(sorted(rng.sample(range(n), 3))) for _ in range(m)))


DEFAULT_SEED = 20240601


def formula_corpus(seed: int = DEFAULT_SEED, count: int = 50, max_n: int = 5, max_m: int = 4) -> list[NaeFormula]:
    """Seeded random monotone formulas with ``3 <= n <= max_n`` and ``1 <= m <= max_m``."""
    if max_n < 3 or max_m < 1:
        raise RejectedInput("a corpus needs max_n >= 3 and max_m >= 1")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n, m = rng.randint(3, max_n), rng.randint(1, max_m)
        out.append(random_formula(rng, n, m))
    return out


# layout ----------------------------------------------------------------


@dataclass(frozen=True)
class LayoutProfile:
    """Spacing constants of the frame and the witness layout, all exact."""

    epsilon: Fraction = Fraction(1, 10)

    def __post_init__(self):
        eps = rational(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not 0 < eps < 1:
            raise RejectedInput(f"epsilon must lie strictly between 0 and 1, got {eps}")

    @property
    def literal_pitch(self) -> Fraction:
        return 4 - self.epsilon

    @property
    def clause_pitch(self) -> Fraction:
        return 2 + self.epsilon

    @property
    def path_pitch(self) -> Fraction:
        return self.clause_pitch / 2

    @property
    def flag_offset(self) -> Fraction:
        return Fraction(3, 2)

    @property
    def tip_offset(self) -> Fraction:
        """Horizontal distance of diamond tips from L or R."""
        return Fraction(3, 2)

    @property
    def chord_half(self) -> Fraction:
        """Half the vertical length of a diamond chord on L or R."""
        return Fraction(1, 2) + 3 * self.epsilon / 2

    @property
    def cap_half_width(self) -> Fraction:
        """Half the horizontal gap between the two cap vertices of an end 4-cycle."""
        return 1 + self.epsilon / 8

    @property
    def cap_drift(self) -> Fraction:
        """Extra horizontal shift between consecutive end 4-cycles so that they stay disjoint."""
        return 3 * self.epsilon / 2

    def clause_height(self, j: int) -> Fraction:
        """y of clause line ``C_j`` (0-based); ``C'_j`` is its negation."""
        return (2 * j + Fraction(5, 2)) * self.path_pitch

    def cap_height(self, m: int, level: int = 1) -> Fraction:
        return (2 * m + 1 + 2 * level) * self.path_pitch

    def to_json(self) -> dict:
        return {"epsilon": format_rational(self.epsilon)}


def needs_extra_caps(n: int, m: int) -> bool:
    """The counting argument needs n != 2m; otherwise every literal path gets a second end cycle."""
    return n == 2 * m


def build_lines(n: int, m: int, profile: LayoutProfile | None = None) -> LineConfig:
    if n < 1 or m < 1:
        raise RejectedInput(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    profile = profile or LayoutProfile()
    verticals = [profile.literal_pitch * i for i in range(n + 2)]
    heights = [profile.clause_height(j) for j in range(m)] + [profile.cap_height(m)]
    if needs_extra_caps(n, m):
        heights.append(profile.cap_height(m, 2))
    horizontals = [Fraction(0)] + heights + [-h for h in heights]
    return LineConfig(tuple(horizontals), tuple(verticals))


# roles -----------------------------------------------------------------


@dataclass(frozen=True)
class Role:
    """Structural label of an instance vertex.

    kinds and the fields they use:

    ``PAlpha``       ``index``: gap 0..n between consecutive vertical lines
    ``PL``, ``PR``   ``pos``: signed height index along the frame path, 0 on alpha
    ``LiteralPath``  ``literal``, ``pos``: as above, along literal line ``literal``
    ``DiamondTip``   ``side`` (L/R), ``clause``, ``end`` (top/bottom), ``facing`` (in/out)
    ``EndCycle``     ``literal``, ``end``, ``part`` (left/right/apex), ``level`` (1 or 2)
    ``Flag``         ``literal``, ``clause``, ``end``
    """

    kind: str
    index: int | None = None
    pos: int | None = None
    literal: int | None = None
    clause: int | None = None
    side: str | None = None
    end: str | None = None
    facing: str | None = None
    part: str | None = None
    level: int | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_json(cls, data: dict) -> "Role":
        try:
            return cls(**data)
        except TypeError as exc:
            raise ParseError(f"malformed role: {data!r}") from exc


@dataclass(frozen=True)
class Skeleton:
    n: int
    m: int
    graph: Graph
    roles: tuple[Role, ...]
    profile: LayoutProfile


@dataclass(frozen=True)
class ReductionInstance:
    graph: Graph
    lines: LineConfig
    roles: tuple[Role, ...]
    n: int
    m: int
    profile: LayoutProfile
    formula: NaeFormula | None = None

    def vertices_with(self, kind: str) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r.kind == kind]

    def flag_counts(self) -> tuple[int, int]:
        flags = [r for r in self.roles if r.kind == "Flag"]
        return sum(r.end == "bottom" for r in flags), sum(r.end == "top" for r in flags)

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "lines": self.lines.to_json(),
            "roles": [r.to_json() for r in self.roles],
            "params": {
                "n": self.n,
                "m": self.m,
                "profile": self.profile.to_json(),
                "clauses": None if self.formula is None else [list(c) for c in self.formula.clauses],
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "ReductionInstance":
        try:
            params = data["params"]
            n, m = int(params["n"]), int(params["m"])
            profile = LayoutProfile(rational(params["profile"]["epsilon"]))
            clauses = params.get("clauses")
            formula = None if clauses is None else NaeFormula(n, tuple(tuple(c) for c in clauses))
            inst = cls(
                Graph.from_json(data["graph"]),
                LineConfig.from_json(data["lines"]),
                tuple(Role.from_json(r) for r in data["roles"]),
                n,
                m,
                profile,
                formula,
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed instance bundle: {exc}") from exc
        if len(inst.roles) != inst.graph.n:
            raise ParseError(f"bundle has {len(inst.roles)} roles for {inst.graph.n} vertices")
        return inst


class _Builder:
    def __init__(self):
        self.roles: list[Role] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, role: Role) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def link(self, u: int, v: int):
        self.edges.append((u, v))

    def path(self, vertices: Sequence[int]):
        for u, v in zip(vertices, vertices[1:]):
            self.link(u, v)


_ENDS = (("top", 1), ("bottom", -1))


def build_skeleton(n: int, m: int, profile: LayoutProfile | None = None) -> Skeleton:
    if n < 1 or m < 1:
        raise RejectedInput(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    profile = profile or LayoutProfile()
    b = _Builder()

    # P_alpha: even positions are shared with the vertical paths
    alpha = []
    for k in range(2 * n + 3):
        if k % 2:
            alpha.append(b.add(Role("PAlpha", index=k // 2)))
        elif k == 0:
            alpha.append(b.add(Role("PL", pos=0)))
        elif k == 2 * n + 2:
            alpha.append(b.add(Role("PR", pos=0)))
        else:
            alpha.append(b.add(Role("LiteralPath", literal=k // 2 - 1, pos=0)))
    b.path(alpha)

    for side, root in (("L", alpha[0]), ("R", alpha[-1])):
        kind = "P" + side
        for end, sign in _ENDS:
            chain = [root] + [b.add(Role(kind, pos=sign * k)) for k in range(1, 2 * m + 1)]
            b.path(chain)
            for j in range(m):
                lo, hi = chain[2 * j + 1], chain[2 * j + 2]
                for facing in ("in", "out"):
                    tip = b.add(Role("DiamondTip", side=side, clause=j, end=end, facing=facing))
                    b.link(tip, lo)
                    b.link(tip, hi)

    levels = 2 if needs_extra_caps(n, m) else 1
    for i in range(n):
        root = alpha[2 * i + 2]
        for end, sign in _ENDS:
            chain = [root] + [b.add(Role("LiteralPath", literal=i, pos=sign * k)) for k in range(1, 2 * m + 3)]
            b.path(chain)
            base = chain[-1]
            for level in range(1, levels + 1):
                left = b.add(Role("EndCycle", literal=i, end=end, part="left", level=level))
                right = b.add(Role("EndCycle", literal=i, end=end, part="right", level=level))
                apex = b.add(Role("EndCycle", literal=i, end=end, part="apex", level=level))
                for tip in (left, right):
                    b.link(base, tip)
                    b.link(tip, apex)
                base = apex

    graph = Graph.from_edges(len(b.roles), b.edges)
    return Skeleton(n, m, graph, tuple(b.roles), profile)


def attach_flags(skeleton: Skeleton, f: NaeFormula) -> ReductionInstance:
    if (f.n, f.m) != (skeleton.n, skeleton.m):
        raise RejectedInput(
            f"formula has n={f.n}, m={f.m} but skeleton was built for n={skeleton.n}, m={skeleton.m}"
        )
    roles = list(skeleton.roles)
    edges = list(skeleton.graph.edges)
    path_vertex = {(r.literal, r.pos): v for v, r in enumerate(roles) if r.kind == "LiteralPath"}
    for j, clause in enumerate(f.clauses):
        for end, sign in _ENDS:
            for i in range(f.n):
                if end == "top" and i in clause:
                    continue
                flag = len(roles)
                roles.append(Role("Flag", literal=i, clause=j, end=end))
                edges.append((flag, path_vertex[(i, sign * (2 * j + 2))]))
                edges.append((flag, path_vertex[(i, sign * (2 * j + 3))]))
    graph = Graph.from_edges(len(roles), edges)
    lines = build_lines(skeleton.n, skeleton.m, skeleton.profile)
    return ReductionInstance(graph, lines, tuple(roles), skeleton.n, skeleton.m, skeleton.profile, f)


def skeleton_instance(n: int, m: int, profile: LayoutProfile | None = None) -> ReductionInstance:
    """The formula-independent part on its own, without flags."""
    sk = build_skeleton(n, m, profile)
    return ReductionInstance(sk.graph, build_lines(n, m, sk.profile), sk.roles, n, m, sk.profile)


def reduce(f: NaeFormula, profile: LayoutProfile | None = None) -> ReductionInstance:
    return attach_flags(build_skeleton(f.n, f.m, profile), f)


# witness ---------------------------------------------------------------


class WitnessError(RuntimeError):
    """The generated layout failed exact verification (profile too coarse for this size)."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


def flag_sides(inst: ReductionInstance, a: Assignment) -> dict[tuple[int, int, str], int]:
    """Horizontal direction (+1 right, -1 left) of every flag, keyed by ``(literal, clause, end)``.

    On each clause line the flags left of the first free literal face right and the rest face
    left, so every gap between consecutive vertical lines holds at most one flag and the two
    outer gaps stay clear for the diamond tips.
    """
    orient = [1 if v else -1 for v in a.values]
    on_line: dict[tuple[int, int], list[tuple[int, str]]] = {}
    for r in inst.roles:
        if r.kind == "Flag":
            height_sign = (1 if r.end == "top" else -1) * orient[r.literal]
            on_line.setdefault((r.clause, height_sign), []).append((r.literal, r.end))
    sides = {}
    for (j, h), flags in sorted(on_line.items()):
        present = {i for i, _ in flags}
        free = [i for i in range(inst.n) if i not in present]
        if not free:
            line = f"C_{j + 1}" if h > 0 else f"C'_{j + 1}"
            raise RejectedInput(f"no free slot on clause line {line}: clause {j + 1} is not NAE-satisfied")
        pivot = free[0]
        for i, end in flags:
            sides[(i, j, end)] = 1 if i < pivot else -1
    return sides


def witness_embedding(inst: ReductionInstance, a: Assignment, check: bool = True) -> Placement:
    """Explicit realization of ``inst`` for a NAE-satisfying assignment.

    A false literal has its whole path (flags and end cycles included) mirrored about alpha.
    """
    if len(a.values) != inst.n:
        raise RejectedInput(f"assignment has {len(a.values)} values for {inst.n} variables")
    if inst.formula is not None:
        j = violated_clause(inst.formula, a)
        if j is not None:
            raise RejectedInput(f"assignment {a} violates clause {j + 1} {tuple(x + 1 for x in inst.formula.clauses[j])}")
    pr = inst.profile
    p = pr.path_pitch
    n, m = inst.n, inst.m
    x_of = [pr.literal_pitch * (i + 1) for i in range(n)]
    x_right = pr.literal_pitch * (n + 1)
    orient = [1 if v else -1 for v in a.values]
    sides = flag_sides(inst, a)
    end_sign = {"top": 1, "bottom": -1}

    def frame_height(pos: int) -> Fraction:
        if pos == 0:
            return Fraction(0)
        k = abs(pos)
        j = (k - 1) // 2
        off = -pr.chord_half if k % 2 else pr.chord_half
        return (1 if pos > 0 else -1) * (pr.clause_height(j) + off)

    points: dict[int, Point] = {}
    lines_of: dict[int, tuple[str, Fraction]] = {}
    for v, r in enumerate(inst.roles):
        if r.kind == "PAlpha":
            pt = Point(pr.literal_pitch * (2 * r.index + 1) / 2, 0)
            line = ("H", Fraction(0))
        elif r.kind in ("PL", "PR"):
            x = 0 if r.kind == "PL" else x_right
            pt = Point(x, frame_height(r.pos))
            line = ("V", pt.x)
        elif r.kind == "DiamondTip":
            base = 0 if r.side == "L" else x_right
            inward = 1 if r.side == "L" else -1
            dx = pr.tip_offset * (inward if r.facing == "in" else -inward)
            pt = Point(base + dx, end_sign[r.end] * pr.clause_height(r.clause))
            line = ("H", pt.y)
        elif r.kind == "LiteralPath":
            pt = Point(x_of[r.literal], orient[r.literal] * r.pos * p)
            line = ("V", pt.x)
        elif r.kind == "EndCycle":
            s = orient[r.literal] * end_sign[r.end]
            if r.part == "apex":
                pt = Point(x_of[r.literal], s * (2 * m + 2 + 2 * r.level) * p)
                line = ("V", pt.x)
            else:
                centre = x_of[r.literal] + (r.literal - Fraction(n - 1, 2)) * pr.cap_drift
                dx = pr.cap_half_width if r.part == "right" else -pr.cap_half_width
                pt = Point(centre + dx, s * pr.cap_height(m, r.level))
                line = ("H", pt.y)
        elif r.kind == "Flag":
            s = orient[r.literal] * end_sign[r.end]
            dx = sides[(r.literal, r.clause, r.end)] * pr.flag_offset
            pt = Point(x_of[r.literal] + dx, s * pr.clause_height(r.clause))
            line = ("H", pt.y)
        else:
            raise RejectedInput(f"unknown role kind {r.kind!r} at vertex {v}")
        points[v] = pt
        lines_of[v] = line

    assignment = {v: inst.lines.ref_for(axis, value) for v, (axis, value) in lines_of.items()}
    placement = Placement(points, assignment)
    if check:
        report = verify_realization(inst.graph, inst.lines, placement)
        if not report.valid:
            raise WitnessError(
                f"witness layout failed verification ({report.summary()}); "
                f"try a smaller epsilon for n={n}",
                report,
            )
    return placement


@lru_cache(maxsize=32)
def self_check(profile: LayoutProfile) -> LayoutProfile:
    """Accept ``profile`` only if it realizes a small known-satisfiable instance exactly."""
    f = NaeFormula(4, ((0, 1, 2), (1, 2, 3)))
    a = solve_nae_bruteforce(f)
    try:
        witness_embedding(reduce(f, profile), a)
        witness_embedding(reduce(f, profile), a.complement())
    except WitnessError as exc:
        raise RejectedInput(f"layout profile with epsilon={profile.epsilon} does not verify: {exc}") from exc
    return profile


# 3D lift ---------------------------------------------------------------


def lift_to_3d(g: Graph, epsilon=Fraction(1, 10)) -> tuple[Graph, tuple[Fraction, Fraction]]:
    """Two stacked copies of ``g``: vertex ``v`` on z=0, ``v + n`` on z=1-eps, joined by a matching."""
    eps = rational(epsilon)
    copy = [(u + g.n, v + g.n) for u, v in g.edges]
    rungs = [(v, v + g.n) for v in range(g.n)]
    return Graph(2 * g.n, g.edges | frozenset(copy) | frozenset(rungs)), (Fraction(0), 1 - eps)


def lift_points(points: Iterable[Point], planes: tuple[Fraction, Fraction]) -> list[Point]:
    """Copy planar centres onto both planes (first copy, then second)."""
    pts = list(points)
    return [Point(q.x, q.y, planes[0]) for q in pts] + [Point(q.x, q.y, planes[1]) for q in pts]
