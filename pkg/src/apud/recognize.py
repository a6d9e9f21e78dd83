"""Recognition and obstruction checks for unit disks on one or two lines, plus a grid solver.

Answers come in three strengths:

* exact and two-sided: ``is_unit_interval`` / ``uig_oracle`` (one line);
* one-sided: ``apud11_obstructions`` can only say NotInClass, ``apud11_sufficient`` and
  ``apud_gt2_sufficient`` can only say SufficientMember;
* resolution bounded: ``solve_placement_grid`` returns exactly verified placements, but its
  NotFound only covers the grid described by the ``SearchBudget``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import RejectedInput
from .geometry import LineConfig, LineRef, Placement, Point, format_rational, rational, verify_realization
from .graphs import Graph, Occurrence, PatternKind, iter_chordless_cycles, iter_induced, find_induced, make_pattern

UIG_GUARD = 64
ORACLE_GUARD = 9
GRID_GUARD = 12


class Verdict(str, Enum):
    NOT_IN_CLASS = "NotInClass"
    INCONCLUSIVE = "Inconclusive"
    SUFFICIENT_MEMBER = "SufficientMember"


@dataclass
class ObstructionReport:
    found: list[Occurrence]
    verdict: Verdict
    note: str = ""

    def __post_init__(self):
        if self.verdict is Verdict.NOT_IN_CLASS and not self.found:
            raise ValueError("a NotInClass verdict needs at least one obstruction")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "found": [o.to_json() for o in self.found],
            "note": self.note,
        }


def _guard(g: Graph, limit: int, what: str):
    if g.n > limit:
        raise RejectedInput(f"{what} is limited to {limit} vertices, got {g.n}")


# unit interval graphs ----------------------------------------------------

_UIG_FORBIDDEN = (
    ("claw", make_pattern(PatternKind.CLAW)),
    ("net", make_pattern(PatternKind.NET)),
    ("S3", make_pattern(PatternKind.SUN, 3)),
)


def uig_obstruction(g: Graph) -> Occurrence | None:
    """Some induced claw, net, 3-sun or hole (chordless cycle of length >= 4), or None."""
    for cycle in iter_chordless_cycles(g, 4):
        return Occurrence(f"C{len(cycle)}", cycle)
    for name, pattern in _UIG_FORBIDDEN:
        for image in iter_induced(g, pattern):
            return Occurrence(name, image)
    return None


def is_unit_interval(g: Graph, guard: int = UIG_GUARD) -> bool:
    _guard(g, guard, "unit interval recognition")
    return uig_obstruction(g) is None


def _umbrella_orders(g: Graph):
    # vertex orders in which every edge u-w spans a clique of everything between u and w
    order: list[int] = []
    placed: set[int] = set()

    def extend():
        if len(order) == g.n:
            yield list(order)
            return
        for w in range(g.n):
            if w in placed:
                continue
            ok = True
            for idx, u in enumerate(order):
                if g.has_edge(u, w):
                    later = order[idx + 1:]
                    if not all(g.has_edge(v, w) and g.has_edge(u, v) for v in later):
                        ok = False
                        break
            if ok:
                order.append(w)
                placed.add(w)
                yield from extend()
                placed.discard(w)
                order.pop()

    yield from extend()


def _solve_order(g: Graph, order: Sequence[int]) -> dict[int, Fraction] | None:
    """Difference constraints for centres increasing along ``order``.

    Strict gaps (> 2) are written as ``>= 2 + delta`` with a symbolic infinitesimal delta, so
    weights are pairs ``(c, k)`` meaning ``c + k*delta`` compared lexicographically.
    """
    rank = {v: i for i, v in enumerate(order)}
    arcs: list[tuple[int, int, tuple[int, int]]] = []  # x_dst - x_src <= w  as arc src -> dst

    def le(a: int, b: int, w: tuple[int, int]):
        # x_a - x_b <= w
        arcs.append((b, a, w))

    for u, v in combinations(order, 2):
        if rank[u] > rank[v]:
            u, v = v, u
        le(u, v, (0, 0))
        if g.has_edge(u, v):
            le(v, u, (2, 0))
        else:
            le(u, v, (-2, -1))

    dist = {v: (0, 0) for v in order}
    for _ in range(len(order)):
        changed = False
        for src, dst, (c, k) in arcs:
            cand = (dist[src][0] + c, dist[src][1] + k)
            if cand < dist[dst]:
                dist[dst] = cand
                changed = True
        if not changed:
            break
    else:
        for src, dst, (c, k) in arcs:
            if (dist[src][0] + c, dist[src][1] + k) < dist[dst]:
                return None

    delta = Fraction(1, 2)
    for _ in range(64):
        xs = {v: dist[v][0] + dist[v][1] * delta for v in order}
        if all(xs[d] - xs[s] <= c + k * delta for s, d, (c, k) in arcs):
            base = xs[order[0]]
            return {v: xs[v] - base for v in range(g.n)}
        delta /= 2
    return None


def uig_oracle(g: Graph, guard: int = ORACLE_GUARD) -> dict[int, Fraction] | None:
    """Exact centres on a single line realizing ``g`` as a unit interval graph, or None.

    Searches vertex orders (pruned to orders where no edge jumps over a non-neighbour, which any
    realization's left-to-right order satisfies) and solves the difference constraints of each.
    """
    _guard(g, guard, "the order-enumeration oracle")
    if g.n == 0:
        return {}
    for order in _umbrella_orders(g):
        xs = _solve_order(g, order)
        if xs is not None:
            return xs
    return None


# APUD(1,1) ---------------------------------------------------------------

_APUD11_OBSTRUCTIONS = (
    ("C5", make_pattern(PatternKind.CYCLE, 5)),
    ("S4", make_pattern(PatternKind.SUN, 4)),
    ("K1,5", make_pattern(PatternKind.STAR, 5)),
)

EXCEPTIONAL = (
    ("C4", make_pattern(PatternKind.CYCLE, 4)),
    ("K1,4", make_pattern(PatternKind.STAR, 4)),
    ("S3", make_pattern(PatternKind.SUN, 3)),
    ("I3", make_pattern(PatternKind.SUNLET, 3)),
    ("I4", make_pattern(PatternKind.SUNLET, 4)),
)


def apud11_obstructions(g: Graph) -> ObstructionReport:
    found = [occ for name, pat in _APUD11_OBSTRUCTIONS for occ in find_induced(g, pat, name)]
    if found:
        return ObstructionReport(found, Verdict.NOT_IN_CLASS, "contains a graph not realizable on two perpendicular lines")
    return ObstructionReport([], Verdict.INCONCLUSIVE, "no C5, S4 or K1,5; membership not decided")


def exceptional_cover(g: Graph, limit: int) -> list[Occurrence] | None:
    """At most ``limit`` vertex-disjoint induced copies from the exceptional list whose removal
    leaves a unit interval graph, or None when no such choice exists."""
    seen: set[frozenset[int]] = set()

    def search(removed: frozenset[int], chosen: list[Occurrence]) -> list[Occurrence] | None:
        sub, keep = g.remove(removed)
        obstruction = uig_obstruction(sub)
        if obstruction is None:
            return chosen
        if len(chosen) == limit or removed in seen:
            return None
        seen.add(removed)
        hit = {keep[v] for v in obstruction.vertices}
        # any valid cover must delete a vertex of this obstruction
        for name, pattern in EXCEPTIONAL:
            for occ in find_induced(sub, pattern, name):
                verts = tuple(keep[v] for v in occ.vertices)
                if hit.isdisjoint(verts):
                    continue
                result = search(removed | frozenset(verts), chosen + [Occurrence(name, verts)])
                if result is not None:
                    return result
        return None

    return search(frozenset(), [])


def apud11_sufficient(g: Graph, guard: int = UIG_GUARD) -> ObstructionReport:
    _guard(g, guard, "the APUD(1,1) sufficiency check")
    cover = exceptional_cover(g, 1)
    if cover is None:
        return ObstructionReport([], Verdict.INCONCLUSIVE, "not a unit interval graph plus one exceptional copy")
    return ObstructionReport(cover, Verdict.SUFFICIENT_MEMBER, "unit interval graph plus at most one exceptional copy")


def apud_gt2_sufficient(g: Graph, k: int, m: int, guard: int = UIG_GUARD) -> ObstructionReport:
    """Counting argument for lines more than 2 apart: one exceptional copy per line crossing.

    Heuristic sufficiency only; a negative outcome is reported as Inconclusive.
    """
    if k < 0 or m < 0:
        raise RejectedInput("line counts must be non-negative")
    _guard(g, guard, "the APUD>2(k,m) sufficiency check")
    crossings = k * m
    if k + m == 0:
        return ObstructionReport([], Verdict.INCONCLUSIVE, "no lines")
    cover = exceptional_cover(g, crossings)
    if cover is None:
        return ObstructionReport([], Verdict.INCONCLUSIVE, f"needs more than {crossings} exceptional copies")
    return ObstructionReport(
        cover, Verdict.SUFFICIENT_MEMBER, f"{len(cover)} exceptional copies for {crossings} crossings"
    )


# grid solver -------------------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    step: Fraction = Fraction(1, 20)
    window: Fraction = Fraction(4)
    max_nodes: int = 5_000_000

    def __post_init__(self):
        object.__setattr__(self, "step", rational(self.step))
        object.__setattr__(self, "window", rational(self.window))
        if self.step <= 0 or self.window <= 0:
            raise RejectedInput("step and window must be positive")
        if self.max_nodes < 1:
            raise RejectedInput("max_nodes must be positive")

    def to_json(self) -> dict:
        return {
            "step": format_rational(self.step),
            "window": format_rational(self.window),
            "max_nodes": self.max_nodes,
        }


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    EXHAUSTED = "exhausted"


@dataclass
class SearchResult:
    status: SearchStatus
    placement: Placement | None
    nodes: int
    budget: SearchBudget

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "nodes": self.nodes,
            "budget": self.budget.to_json(),
            "placement": None if self.placement is None else self.placement.to_json(),
        }


class _Exhausted(Exception):
    pass


def _isqrt_floor(x: Fraction) -> int:
    """Largest integer r >= 0 with r*r <= x (x >= 0)."""
    r = math.isqrt(x.numerator // x.denominator)
    while (r + 1) * (r + 1) <= x:
        r += 1
    while r * r > x:
        r -= 1
    return r


class _Grid:
    """Slots ``t = -K..K`` on every line (coordinate ``t*step``), stored as bit ``t+K``.

    A domain is a tuple of per-line bitmasks.  Pairwise supports are computed from a few
    statistics of the other domain (extreme slots, slot nearest to a crossing), which keeps
    arc consistency cheap.
    """

    def __init__(self, lines: LineConfig, budget: SearchBudget):
        self.lines = lines
        self.budget = budget
        self.refs = lines.refs()
        self.L = len(self.refs)
        self.K = int(budget.window / budget.step)
        self.W = 2 * self.K + 1
        self.full = (1 << self.W) - 1
        step = budget.step
        self.coord = [t * step for t in range(-self.K, self.K + 1)]
        self.value = [lines.value(r) for r in self.refs]
        self.rel = {}
        for a in range(self.L):
            for b in range(self.L):
                self.rel[a, b] = self._relation(a, b)

    def _relation(self, a: int, b: int):
        ra, rb = self.refs[a], self.refs[b]
        va, vb = self.value[a], self.value[b]
        if ra.axis == rb.axis:
            gap2 = 4 - (va - vb) ** 2
            if gap2 < 0:
                return ("par", -1)
            return ("par", _isqrt_floor(gap2 / self.budget.step**2))
        # offset of each slot from the crossing point, squared, on both lines
        off_a = [(c - vb) ** 2 for c in self.coord]
        off_b = [(c - va) ** 2 for c in self.coord]
        levels = sorted(set(off_a))
        cum, mask = [], 0
        by_level: dict[Fraction, int] = {}
        for t, o in enumerate(off_a):
            by_level[o] = by_level.get(o, 0) | (1 << t)
        for o in levels:
            mask |= by_level[o]
            cum.append(mask)
        # slot index on b closest to the crossing (va along b)
        centre = (va / self.budget.step) + self.K
        return ("perp", off_b, levels, cum, centre)

    # support of the slots of line a, given domain bits ``dom`` on line b
    def support(self, a: int, b: int, dom: int, adjacent: bool) -> int:
        if not dom:
            return 0
        rel = self.rel[a, b]
        if rel[0] == "par":
            r = rel[1]
            if adjacent:
                if r < 0:
                    return 0
                out, span = dom, 0
                while span < r:
                    d = min(span + 1, r - span)
                    out |= (out << d) | (out >> d)
                    span += d
                return out & self.full
            lo = (dom & -dom).bit_length() - 1
            hi = dom.bit_length() - 1
            out = 0
            if hi - r - 1 >= 0:
                out |= (1 << min(hi - r, self.W)) - 1
            if lo + r + 1 <= self.W - 1:
                start = max(lo + r + 1, 0)
                out |= self.full & ~((1 << start) - 1)
            return out
        _, off_b, levels, cum, centre = rel
        if adjacent:
            fl = math.floor(centre)
            best = None
            if fl >= 0:
                below = dom & ((1 << min(fl + 1, self.W)) - 1)
                if below:
                    best = off_b[below.bit_length() - 1]
            if fl + 1 <= self.W - 1:
                start = max(fl + 1, 0)
                above = dom >> start
                if above:
                    o = off_b[start + (above & -above).bit_length() - 1]
                    best = o if best is None or o < best else best
            return self._within(levels, cum, 4 - best)
        lo = (dom & -dom).bit_length() - 1
        hi = dom.bit_length() - 1
        worst = max(off_b[lo], off_b[hi])
        return self.full & ~self._within(levels, cum, 4 - worst)

    @staticmethod
    def _within(levels, cum, bound) -> int:
        # mask of slots whose squared offset is <= bound
        lo, hi = 0, len(levels)
        while lo < hi:
            mid = (lo + hi) // 2
            if levels[mid] <= bound:
                lo = mid + 1
            else:
                hi = mid
        return cum[lo - 1] if lo else 0

    def point(self, line: int, bit: int) -> Point:
        return self.lines.point_on(self.refs[line], self.coord[bit])

    def symmetries(self):
        """Plane isometries mapping the line set (and the slot grid) onto itself."""
        H, V = set(self.lines.horizontals), set(self.lines.verticals)
        ops = []
        for fx in (1, -1):
            if fx == -1 and V != {-v for v in V}:
                continue
            for fy in (1, -1):
                if fy == -1 and H != {-h for h in H}:
                    continue
                for swap in (False, True):
                    if swap and H != V:
                        continue
                    ops.append((fx, fy, swap))
        return ops

    def image(self, op, line: int, bit: int) -> tuple[int, int]:
        fx, fy, swap = op
        p = self.point(line, bit)
        x, y = fx * p.x, fy * p.y
        if swap:
            x, y = y, x
        ref = self.refs[line]
        # the slot keeps its line family unless swapped
        axis = ref.axis if not swap else ("V" if ref.axis == "H" else "H")
        value, t = (y, x) if axis == "H" else (x, y)
        new_ref = self.lines.ref_for(axis, value)
        return self.refs.index(new_ref), self.coord.index(t)


class _Search:
    def __init__(self, g: Graph, lines: LineConfig, budget: SearchBudget, fixed: Mapping[int, LineRef] | None):
        self.g = g
        self.grid = _Grid(lines, budget)
        self.nodes = 0
        self.max_nodes = budget.max_nodes
        gr = self.grid
        self.domains: list[list[int]] = []
        for v in range(g.n):
            dom = [gr.full] * gr.L
            if fixed and v in fixed:
                dom = [gr.full if gr.refs[a] == fixed[v] else 0 for a in range(gr.L)]
            self.domains.append(dom)
        self.adj = [[g.has_edge(u, v) for v in range(g.n)] for u in range(g.n)]
        self._break_twins(fixed or {})
        if not fixed:
            self._break_geometry()

    def _break_twins(self, fixed: Mapping[int, LineRef]):
        # interchangeable vertices (same neighbourhood apart from each other) are kept in slot order
        g = self.g
        self.twin_next: dict[int, int] = {}
        groups: dict[tuple, list[int]] = {}
        for v in range(g.n):
            nb = frozenset(g.neighbors(v))
            pin = fixed.get(v)
            groups.setdefault(("open", nb, pin), []).append(v)
            groups.setdefault(("closed", nb | {v}, pin), []).append(v)
        for members in sorted(groups.values()):
            if len(members) < 2:
                continue
            for u, v in zip(members, members[1:]):
                self.twin_next[u] = v
        self.twin_prev = {v: u for u, v in self.twin_next.items()}
        self.twinned = set(self.twin_next) | set(self.twin_prev)

    def _break_geometry(self):
        gr = self.grid
        ops = gr.symmetries()
        if len(ops) < 2:
            return
        anchors = [v for v in range(self.g.n) if v not in self.twinned]
        if not anchors:
            return
        v = anchors[0]
        keep = [0] * gr.L
        for line in range(gr.L):
            for bit in range(gr.W):
                own = (line, bit)
                if all(gr.image(op, line, bit) >= own for op in ops):
                    keep[line] |= 1 << bit
        self.domains[v] = [d & k for d, k in zip(self.domains[v], keep)]

    @staticmethod
    def _size(dom) -> int:
        return sum(d.bit_count() for d in dom)

    def _order_mask(self, line: int, bit: int, after: bool) -> list[int]:
        gr = self.grid
        out = []
        for a in range(gr.L):
            if (a > line) if after else (a < line):
                out.append(gr.full)
            elif a == line:
                out.append(gr.full & ~((1 << bit) - 1) if after else (1 << (bit + 1)) - 1)
            else:
                out.append(0)
        return out

    def _propagate(self, doms: list[list[int]], queue: list[tuple[int, int]]) -> bool:
        gr = self.grid
        n = self.g.n
        pending = set(queue)
        queue = list(queue)
        while queue:
            y, z = queue.pop()
            pending.discard((y, z))
            dz = doms[z]
            adjacent = self.adj[y][z]
            dy = doms[y]
            new = []
            changed = False
            for a in range(gr.L):
                if not dy[a]:
                    new.append(0)
                    continue
                sup = 0
                for b in range(gr.L):
                    if dz[b]:
                        sup |= gr.support(a, b, dz[b], adjacent)
                        if sup & dy[a] == dy[a]:
                            break
                nd = dy[a] & sup
                changed |= nd != dy[a]
                new.append(nd)
            if changed:
                if not any(new):
                    return False
                doms[y] = new
                for w in range(n):
                    if w != y and w != z and (w, y) not in pending:
                        pending.add((w, y))
                        queue.append((w, y))
        return True

    def _all_arcs(self, vertices: Iterable[int]):
        n = self.g.n
        return [(w, v) for v in vertices for w in range(n) if w != v]

    def run(self, root_values: Sequence[tuple[int, int]] | None = None) -> dict[int, tuple[int, int]] | None:
        doms = [list(d) for d in self.domains]
        if any(not any(d) for d in doms):
            return None
        if not self._propagate(doms, self._all_arcs(range(self.g.n))):
            return None
        return self._dfs(doms, root_values)

    def _choose(self, doms) -> int | None:
        best, best_size = None, None
        for v in range(self.g.n):
            s = self._size(doms[v])
            if s > 1 and (best_size is None or s < best_size or (s == best_size and self.g.degree(v) > self.g.degree(best))):
                best, best_size = v, s
        return best

    def root_choices(self) -> tuple[int | None, list[tuple[int, int]]]:
        doms = [list(d) for d in self.domains]
        if not self._propagate(doms, self._all_arcs(range(self.g.n))):
            return None, []
        v = self._choose(doms)
        if v is None:
            return None, []
        return v, self._values(doms[v])

    def _values(self, dom) -> list[tuple[int, int]]:
        out = []
        for a, bits in enumerate(dom):
            while bits:
                low = bits & -bits
                out.append((a, low.bit_length() - 1))
                bits ^= low
        return out

    def _dfs(self, doms, root_values=None):
        v = self._choose(doms)
        if v is None:
            return {u: next(iter(self._values(doms[u]))) for u in range(self.g.n)}
        values = self._values(doms[v]) if root_values is None else root_values
        for line, bit in values:
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise _Exhausted
            child = [list(d) for d in doms]
            child[v] = [(1 << bit) if a == line else 0 for a in range(self.grid.L)]
            touched = [v]
            if v in self.twin_next:
                w = self.twin_next[v]
                child[w] = [x & y for x, y in zip(child[w], self._order_mask(line, bit, after=True))]
                touched.append(w)
            if v in self.twin_prev:
                w = self.twin_prev[v]
                child[w] = [x & y for x, y in zip(child[w], self._order_mask(line, bit, after=False))]
                touched.append(w)
            if any(not any(child[w]) for w in touched):
                continue
            if self._propagate(child, self._all_arcs(touched)):
                result = self._dfs(child, None)
                if result is not None:
                    return result
        return None

    def to_placement(self, slots: Mapping[int, tuple[int, int]]) -> Placement:
        gr = self.grid
        points = {v: gr.point(line, bit) for v, (line, bit) in slots.items()}
        refs = {v: gr.refs[line] for v, (line, bit) in slots.items()}
        return Placement(points, refs)


def _run_chunk(args):
    g, lines, budget, fixed, chunk = args
    search = _Search(g, lines, budget, fixed)
    try:
        slots = search.run(chunk)
    except _Exhausted:
        return "exhausted", None, search.nodes
    return ("found" if slots is not None else "not_found"), slots, search.nodes


def solve_placement_grid(
    g: Graph,
    lines: LineConfig,
    budget: SearchBudget | None = None,
    fixed_assignment: Mapping[int, LineRef] | None = None,
    jobs: int = 1,
    guard: int = GRID_GUARD,
) -> SearchResult:
    """Search grid positions (multiples of ``budget.step`` within ``budget.window`` of 0 along every
    line) for a realization of ``g`` on ``lines``.

    Line choice and position are searched jointly with arc-consistency pruning.  A returned
    placement has passed ``verify_realization``.  NOT_FOUND is relative to the grid only.
    ``fixed_assignment`` pins chosen vertices to given lines.
    """
    _guard(g, guard, "the grid solver")
    budget = budget or SearchBudget()
    if g.n == 0:
        return SearchResult(SearchStatus.FOUND, Placement({}, {}), 0, budget)
    if lines.size == 0:
        return SearchResult(SearchStatus.NOT_FOUND, None, 0, budget)
    search = _Search(g, lines, budget, fixed_assignment)
    if jobs <= 1:
        try:
            slots = search.run()
        except _Exhausted:
            return SearchResult(SearchStatus.EXHAUSTED, None, search.nodes, budget)
        nodes = search.nodes
    else:
        v, values = search.root_choices()
        if v is None:
            try:
                slots = search.run()
            except _Exhausted:
                return SearchResult(SearchStatus.EXHAUSTED, None, search.nodes, budget)
            nodes = search.nodes
        else:
            size = max(1, -(-len(values) // (4 * jobs)))
            chunks = [values[i:i + size] for i in range(0, len(values), size)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(_run_chunk, [(g, lines, budget, fixed_assignment, c) for c in chunks]))
            nodes = sum(o[2] for o in outcomes)
            slots = None
            # earliest chunk wins so the answer matches the sequential search order
            for status, found, _ in outcomes:
                if status == "found":
                    slots = found
                    break
                if status == "exhausted":
                    return SearchResult(SearchStatus.EXHAUSTED, None, nodes, budget)
    if slots is None:
        return SearchResult(SearchStatus.NOT_FOUND, None, nodes, budget)
    placement = search.to_placement(slots)
    report = verify_realization(g, lines, placement)
    if not report.valid:
        raise AssertionError(f"grid solver produced an invalid placement: {report.summary()}")
    return SearchResult(SearchStatus.FOUND, placement, nodes, budget)


def free_positions(
    g: Graph,
    lines: LineConfig,
    placement: Placement,
    vertex: int,
    line: LineRef,
    step,
    lo,
    hi,
) -> list[Point]:
    """Grid points on ``line`` with coordinate in ``[lo, hi]`` where ``vertex`` could sit while every
    other centre stays put."""
    step, lo, hi = rational(step), rational(lo), rational(hi)
    if step <= 0:
        raise RejectedInput("step must be positive")
    others = [(u, placement.points[u]) for u in range(g.n) if u != vertex]
    out = []
    for t in range(math.ceil(lo / step), math.floor(hi / step) + 1):
        p = lines.point_on(line, t * step)
        if all(((p.x - q.x) ** 2 + (p.y - q.y) ** 2 <= 4) == g.has_edge(vertex, u) for u, q in others):
            out.append(p)
    return out
