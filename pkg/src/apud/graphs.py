"""Simple undirected graphs, the canonical pattern family and induced-subgraph search.

Pattern graphs use a fixed numbering so that occurrences are stable:

* ``Cycle(m)``   vertices ``0..m-1`` in cyclic order.
* ``Star(m)``    centre ``0``, rays ``1..m``.  ``Claw`` is ``Star(3)``.
* ``Sunlet(m)``  cycle ``0..m-1``, ray ``m+i`` hangs off cycle vertex ``i``.  ``Net`` is ``Sunlet(3)``.
* ``Sun(m)``     clique ``0..m-1``, ray ``m+i`` adjacent to clique vertices ``i`` and ``(i+1) % m``.
* ``Diamond``    the 4-cycle ``0-1-2-3`` with chord ``1-3``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import ParseError, RejectedInput

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise RejectedInput(f"vertex count must be non-negative, got {self.n}")
        normed = set()
        for u, v in self.edges:
            if u == v:
                raise RejectedInput(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise RejectedInput(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        pairs = [(int(u), int(v)) for u, v in edges]
        seen = set()
        for u, v in pairs:
            key = _norm(u, v)
            if key in seen:
                raise RejectedInput(f"duplicate edge ({u}, {v})")
            seen.add(key)
        return cls(n, frozenset(pairs))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled ``0..k-1`` in increasing order of the kept vertices."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), frozenset(edges)), keep

    def remove(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shifted = [(u + self.n, v + self.n) for u, v in other.edges]
        return Graph(self.n + other.n, self.edges | frozenset(shifted))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    # serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            return cls.from_edges(int(data["n"]), data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, RejectedInput):
                raise
            raise ParseError(f"malformed graph JSON: {exc}") from exc

    def to_text(self) -> str:
        lines = [f"graph {self.n} {len(self.edges)}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
        rows = [(i, toks) for i, toks in rows if toks and not toks[0].startswith("#")]
        if not rows:
            raise ParseError("empty graph file")
        lineno, head = rows[0]
        if len(head) != 3 or head[0] != "graph":
            raise ParseError("expected header 'graph <n> <m>'", lineno)
        try:
            n, m = int(head[1]), int(head[2])
        except ValueError:
            raise ParseError("non-integer vertex or edge count", lineno) from None
        edges = []
        for lineno, toks in rows[1:]:
            if len(toks) != 2:
                raise ParseError(f"expected 'u v', got {' '.join(toks)!r}", lineno)
            try:
                u, v = int(toks[0]), int(toks[1])
            except ValueError:
                raise ParseError("non-integer vertex index", lineno) from None
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(f"invalid edge ({u}, {v}) for {n} vertices", lineno)
            edges.append((u, v))
        if len(edges) != m:
            raise ParseError(f"header declares {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)


def load_graph(text: str) -> Graph:
    """Parse either the text or the JSON graph format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
        return Graph.from_json(data)
    return Graph.from_text(text)


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


# patterns --------------------------------------------------------------


class PatternKind(str, Enum):
    CYCLE = "cycle"
    STAR = "star"
    SUNLET = "sunlet"
    SUN = "sun"
    CLAW = "claw"
    NET = "net"
    DIAMOND = "diamond"


_MIN_SIZE = {
    PatternKind.CYCLE: 3,
    PatternKind.STAR: 1,
    PatternKind.SUNLET: 3,
    PatternKind.SUN: 3,
}


def make_pattern(kind: PatternKind | str, size: int | None = None) -> Graph:
    kind = PatternKind(kind)
    if kind is PatternKind.CLAW:
        if size not in (None, 3):
            raise RejectedInput("a claw has exactly 3 rays")
        return make_pattern(PatternKind.STAR, 3)
    if kind is PatternKind.NET:
        if size not in (None, 3):
            raise RejectedInput("a net is the 3-sunlet")
        return make_pattern(PatternKind.SUNLET, 3)
    if kind is PatternKind.DIAMOND:
        if size not in (None, 4):
            raise RejectedInput("a diamond has exactly 4 vertices")
        return Graph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)}))

    if size is None or size < _MIN_SIZE[kind]:
        raise RejectedInput(f"{kind.value} needs size >= {_MIN_SIZE[kind]}, got {size}")
    m = size
    if kind is PatternKind.CYCLE:
        return Graph(m, frozenset(_norm(i, (i + 1) % m) for i in range(m)))
    if kind is PatternKind.STAR:
        return Graph(m + 1, frozenset((0, i) for i in range(1, m + 1)))
    if kind is PatternKind.SUNLET:
        edges = {_norm(i, (i + 1) % m) for i in range(m)}
        edges |= {(i, m + i) for i in range(m)}
        return Graph(2 * m, frozenset(edges))
    # SUN
    edges = set(combinations(range(m), 2))
    for i in range(m):
        edges.add((i, m + i))
        edges.add(((i + 1) % m, m + i))
    return Graph(2 * m, frozenset(_norm(u, v) for u, v in edges))


@dataclass(frozen=True)
class Occurrence:
    """An induced copy: ``vertices[i]`` is the host vertex playing pattern vertex ``i``."""

    pattern: str
    vertices: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "vertices": list(self.vertices)}


def _search_order(pattern: Graph) -> list[int]:
    # BFS from highest degree so every later vertex (within a component) has a mapped neighbour
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(pattern.neighbors(v), key=lambda w: (-pattern.degree(w), w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def iter_induced(host: Graph, pattern: Graph) -> Iterator[tuple[int, ...]]:
    """Yield every injective map (as a tuple) witnessing an induced copy of ``pattern``.

    Automorphic images are all produced; callers deduplicate.
    """
    k = pattern.n
    if k == 0:
        yield ()
        return
    if k > host.n:
        return
    order = _search_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    # for each step, the earlier pattern vertices and whether each is adjacent
    earlier = [[(order[j], pattern.has_edge(order[i], order[j])) for j in range(i)] for i in range(k)]
    anchor = []
    for i, v in enumerate(order):
        prior = [w for w in pattern.neighbors(v) if pos[w] < i]
        anchor.append(min(prior, key=pos.get) if prior else None)
    need = [pattern.degree(v) for v in order]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(mapping[v] for v in range(k))
            return
        v = order[i]
        if anchor[i] is None:
            candidates: Iterable[int] = range(host.n)
        else:
            candidates = sorted(host.neighbors(mapping[anchor[i]]))
        for h in candidates:
            if h in used or host.degree(h) < need[i]:
                continue
            if all(host.has_edge(h, mapping[w]) == adj for w, adj in earlier[i]):
                mapping[v] = h
                used.add(h)
                yield from extend(i + 1)
                used.discard(h)
                del mapping[v]

    yield from extend(0)


def find_induced(host: Graph, pattern: Graph, name: str = "pattern") -> list[Occurrence]:
    """Every induced occurrence of ``pattern`` in ``host``, one per vertex set.

    For induced copies the vertex set fixes the copy up to a pattern automorphism, so the
    vertex set (with the first mapping found) is the deduplication key.
    """
    found: dict[frozenset[int], Occurrence] = {}
    for image in iter_induced(host, pattern):
        key = frozenset(image)
        if key not in found:
            found[key] = Occurrence(name, image)
    return sorted(found.values(), key=lambda o: (sorted(o.vertices), o.vertices))


def contains_induced(host: Graph, pattern: Graph) -> bool:
    return next(iter_induced(host, pattern), None) is not None


def is_induced_free(host: Graph, patterns: Iterable[Graph]) -> bool:
    return not any(contains_induced(host, p) for p in patterns)


# cycles ----------------------------------------------------------------


def _has_cycle_longer_than(g: Graph, block: set[int], limit: int) -> bool:
    # simple cycles through their smallest vertex; search stays inside one biconnected block
    for s in sorted(block):
        stack = [(s, [s], {s})]
        while stack:
            v, path, on_path = stack.pop()
            for w in g.neighbors(v):
                if w not in block or w < s:
                    continue
                if w == s:
                    if len(path) > limit and len(path) >= 3:
                        return True
                    continue
                if w in on_path:
                    continue
                stack.append((w, path + [w], on_path | {w}))
    return False


def longest_cycle_at_most(g: Graph, limit: int) -> bool:
    """True iff ``g`` has no simple cycle with more than ``limit`` vertices."""
    for comp in nx.biconnected_components(g.to_networkx()):
        if len(comp) <= limit or len(comp) < 3:
            continue
        if _has_cycle_longer_than(g, set(comp), limit):
            return False
    return True


def iter_chordless_cycles(g: Graph, min_length: int = 4, max_length: int | None = None) -> Iterator[tuple[int, ...]]:
    """Induced cycles of length >= ``min_length``, each reported once from its smallest vertex.

    Depth-first over induced paths whose interior vertices exceed the start vertex; a path is
    abandoned as soon as a chord would appear.
    """
    limit = g.n if max_length is None else max_length
    for s in range(g.n):
        for first in sorted(g.neighbors(s)):
            if first < s:
                continue
            stack = [[s, first]]
            while stack:
                path = stack.pop()
                last = path[-1]
                for w in sorted(g.neighbors(last), reverse=True):
                    if w <= s or w in path:
                        continue
                    # w must not be adjacent to any interior path vertex (except last)
                    if any(g.has_edge(w, p) for p in path[1:-1]):
                        continue
                    closes = g.has_edge(w, s)
                    if closes:
                        cycle = path + [w]
                        # orient each cycle once: second vertex smaller than the last
                        if len(cycle) >= min_length and cycle[1] < cycle[-1] and len(cycle) <= limit:
                            yield tuple(cycle)
                        continue
                    if len(path) + 1 < limit:
                        stack.append(path + [w])
