"""Labeled directed multigraphs with implicit inverse edges.

An ``XDigraph`` stores only positively labeled edges ``(origin, letter,
terminus)``; every edge has an implicit formal inverse, so traversal
works over signed-letter codes (see :mod:`freegroups.words`).  A graph
is *folded* when no vertex has two outgoing half-edges with the same
signed label, which makes it a deterministic inverse automaton.

This module supplies the graph-level machinery: folding, cores,
path tracing, morphisms and based isomorphism, type graphs, product
graphs, connected components, and completion to an X-regular graph.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from random import Random
from typing import Iterable, NamedTuple, Optional

from .errors import InvalidInputError
from .words import Alphabet, Word

Edge = tuple[int, int, int]  # (origin, letter index, terminus), positive only


class XDigraph:
    """Finite labeled digraph; multi-edges and loops are permitted.

    Edges are normalized to a sorted tuple, so two graphs are equal iff
    they have the same alphabet, vertex count and edge multiset.
    """

    __slots__ = ("alphabet", "vertex_count", "edges", "_steps")

    def __init__(self, alphabet: Alphabet, vertex_count: int, edges: Iterable[Edge]):
        edges = tuple(sorted(tuple(e) for e in edges))
        n = alphabet.size
        for o, x, t in edges:
            if not (0 <= o < vertex_count and 0 <= t < vertex_count):
                raise InvalidInputError(f"edge {(o, x, t)} has a vertex out of range")
            if not 0 <= x < n:
                raise InvalidInputError(f"edge {(o, x, t)} has an invalid label")
        self.alphabet = alphabet
        self.vertex_count = vertex_count
        self.edges = edges
        self._steps: Optional[list[dict[int, int]]] = None

    # -- basic structure -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, XDigraph)
            and self.alphabet == other.alphabet
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"XDigraph(V={self.vertex_count}, E={list(self.edges)})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        """Degree of each vertex in the symmetrized graph; a loop counts twice."""
        deg = [0] * self.vertex_count
        for o, _, t in self.edges:
            deg[o] += 1
            deg[t] += 1
        return deg

    def incident(self) -> list[list[Edge]]:
        """Edges incident to each vertex (a loop appears once)."""
        inc: list[list[Edge]] = [[] for _ in range(self.vertex_count)]
        for e in self.edges:
            inc[e[0]].append(e)
            if e[2] != e[0]:
                inc[e[2]].append(e)
        return inc

    # -- folded-graph traversal ------------------------------------------

    def step_maps(self) -> list[dict[int, int]]:
        """Per-vertex map (signed code -> target vertex); needs a folded graph."""
        if self._steps is None:
            steps: list[dict[int, int]] = [dict() for _ in range(self.vertex_count)]
            for o, x, t in self.edges:
                for v, code, far in ((o, 2 * x, t), (t, 2 * x + 1, o)):
                    if code in steps[v]:
                        raise InvalidInputError(
                            "graph is not folded: two half-edges labeled "
                            f"{self.alphabet.code_name(code)} at vertex {v}"
                        )
                    steps[v][code] = far
            self._steps = steps
        return self._steps

    def step(self, v: int, code: int) -> Optional[int]:
        return self.step_maps()[v].get(code)

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        seen = _component_of(self, 0)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class BasedGraph:
    """An X-digraph with a marked base vertex."""

    graph: XDigraph
    base: int

    def __post_init__(self):
        if not 0 <= self.base < self.graph.vertex_count:
            raise InvalidInputError(f"base vertex {self.base} out of range")


@dataclass(frozen=True)
class Morphism:
    """A label- and incidence-preserving vertex map between X-digraphs.

    On folded targets the edge images are determined by the vertex map,
    so only the vertex map is stored.
    """

    vertex_map: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def is_injective(self) -> bool:
        return len(set(self.vertex_map)) == len(self.vertex_map)


class Subgraph(NamedTuple):
    """A subgraph of a host graph, in the host's vertex numbering."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def as_xdigraph(self, host: XDigraph) -> XDigraph:
        renum = {v: i for i, v in enumerate(self.vertices)}
        return XDigraph(
            host.alphabet,
            len(self.vertices),
            [(renum[o], x, renum[t]) for o, x, t in self.edges],
        )

    def spans(self, host: XDigraph) -> bool:
        return len(self.vertices) == host.vertex_count and len(self.edges) == len(host.edges)


# ---------------------------------------------------------------------------
# folding


def is_folded(g: XDigraph) -> bool:
    """True iff no vertex has two outgoing half-edges with equal signed label."""
    seen: set[tuple[int, int]] = set()
    for o, x, t in g.edges:
        for key in ((o, 2 * x), (t, 2 * x + 1)):
            if key in seen:
                return False
            seen.add(key)
    return True


class FoldResult(NamedTuple):
    graph: XDigraph
    vertex_map: tuple[int, ...]  # old vertex -> new vertex


def fold_all(g: XDigraph, rng: Optional[Random] = None) -> FoldResult:
    """Perform elementary foldings until the graph is folded.

    Vertex merging uses a union-find partition with per-vertex rescans;
    each elementary fold removes exactly one positive edge, so the loop
    terminates after at most ``len(g.edges)`` folds.  The language at
    any tracked vertex is preserved (its image is reported in
    ``vertex_map``).  Passing ``rng`` randomizes the fold order; all
    orders yield based-isomorphic results.
    """
    n = g.vertex_count
    parent = list(range(n))

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    edges = [tuple(e) for e in g.edges]
    alive = [True] * len(edges)
    incident: list[set[int]] = [set() for _ in range(n)]
    for i, (o, _, t) in enumerate(edges):
        incident[o].add(i)
        incident[t].add(i)

    pending = list(range(n))
    if rng is not None:
        rng.shuffle(pending)

    while pending:
        idx = rng.randrange(len(pending)) if rng is not None else 0
        v = pending.pop(idx)
        changed = True
        while changed:
            changed = False
            v = find(v)
            seen: dict[int, tuple[int, int]] = {}  # signed code -> (edge id, far root)
            order = sorted(incident[v])
            if rng is not None:
                rng.shuffle(order)
            for e in order:
                if not alive[e]:
                    incident[v].discard(e)
                    continue
                o, x, t = edges[e]
                ro, rt = find(o), find(t)
                if ro != v and rt != v:
                    # parked here before a merge moved both endpoints away
                    incident[v].discard(e)
                    incident[ro].add(e)
                    incident[rt].add(e)
                    continue
                halves = []
                if ro == v:
                    halves.append((2 * x, rt))
                if rt == v:
                    halves.append((2 * x + 1, ro))
                folded_here = False
                for code, far in halves:
                    if code in seen and seen[code][0] != e:
                        _, far2 = seen[code]
                        alive[e] = False
                        a, b = find(far), find(far2)
                        if a != b:
                            # union by incident-set size
                            if len(incident[a]) < len(incident[b]):
                                a, b = b, a
                            parent[b] = a
                            incident[a] |= incident[b]
                            incident[b] = set()
                            pending.append(a)
                        folded_here = True
                        break
                    seen[code] = (e, far)
                if folded_here:
                    changed = True
                    break

    roots = sorted({find(v) for v in range(n)})
    renum = {r: i for i, r in enumerate(roots)}
    vmap = tuple(renum[find(v)] for v in range(n))
    new_edges = [
        (renum[find(o)], x, renum[find(t)]) for (o, x, t), ok in zip(edges, alive) if ok
    ]
    folded = XDigraph(g.alphabet, len(roots), new_edges)
    assert is_folded(folded)
    return FoldResult(folded, vmap)


# ---------------------------------------------------------------------------
# cores and tracing


def _component_of(g: XDigraph, v: int) -> set[int]:
    inc = g.incident()
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for o, _, t in inc[u]:
            for w in (o, t):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return seen


class CoreResult(NamedTuple):
    graph: XDigraph
    vertex_map: dict[int, int]  # surviving old vertex -> new vertex


def core(g: XDigraph, v: int) -> CoreResult:
    """Core of a folded graph at ``v``: the union of reduced loops at ``v``.

    On folded graphs this equals the result of restricting to the
    component of ``v`` and repeatedly deleting degree-one vertices other
    than ``v``; the language at ``v`` is unchanged.
    """
    if not 0 <= v < g.vertex_count:
        raise InvalidInputError(f"vertex {v} out of range")
    if not is_folded(g):
        raise InvalidInputError("core is only defined here for folded graphs")
    keep = _component_of(g, v)
    edges = [e for e in g.edges if e[0] in keep]
    deg: dict[int, int] = {u: 0 for u in keep}
    inc: dict[int, list[Edge]] = {u: [] for u in keep}
    for e in edges:
        o, _, t = e
        deg[o] += 1
        deg[t] += 1
        inc[o].append(e)
        if t != o:
            inc[t].append(e)
    dead_edges: set[Edge] = set()
    queue = deque(u for u in keep if deg[u] == 1 and u != v)
    while queue:
        u = queue.popleft()
        if u not in keep or deg[u] != 1 or u == v:
            continue
        keep.discard(u)
        for e in inc[u]:
            if e in dead_edges:
                continue
            dead_edges.add(e)
            o, _, t = e
            for w in (o, t):
                deg[w] -= 1
                if w != u and w in keep and deg[w] == 1 and w != v:
                    queue.append(w)
    vmap = {u: i for i, u in enumerate(sorted(keep))}
    new_edges = [
        (vmap[o], x, vmap[t]) for (o, x, t) in edges if (o, x, t) not in dead_edges
    ]
    return CoreResult(XDigraph(g.alphabet, len(keep), new_edges), vmap)


def trace_path(g: XDigraph, start: int, w: Word) -> Optional[int]:
    """Endpoint of the path labeled ``w`` from ``start`` in a folded graph,
    or ``None`` if the path cannot be continued."""
    v = start
    for code in w.codes:
        nxt = g.step(v, code)
        if nxt is None:
            return None
        v = nxt
    return v


# ---------------------------------------------------------------------------
# morphisms


def transport(a: XDigraph, av: int, b: XDigraph, bv: int) -> Optional[tuple[int, ...]]:
    """Vertex map of the unique morphism ``a -> b`` with ``av -> bv``.

    Both graphs must be folded and ``a`` connected.  Returns ``None``
    when no morphism exists (some edge of ``a`` fails to transport).
    """
    vmap: list[Optional[int]] = [None] * a.vertex_count
    vmap[av] = bv
    inc = a.incident()
    queue = deque([av])
    visited = {av}
    while queue:
        u = queue.popleft()
        for o, x, t in inc[u]:
            for src, code, far in ((o, 2 * x, t), (t, 2 * x + 1, o)):
                if src != u:
                    continue
                img = b.step(vmap[u], code)  # type: ignore[arg-type]
                if img is None:
                    return None
                if vmap[far] is None:
                    vmap[far] = img
                elif vmap[far] != img:
                    return None
                if far not in visited:
                    visited.add(far)
                    queue.append(far)
    if len(visited) != a.vertex_count:
        raise InvalidInputError("transport requires a connected source graph")
    return tuple(vmap)  # type: ignore[arg-type]


def canonical_morphism(a: BasedGraph, b: BasedGraph) -> Optional[Morphism]:
    """The unique base-preserving morphism, present iff L(a) <= L(b).

    Both graphs must be folded and connected, and ``a`` a core graph
    with respect to its base for the language characterization to hold.
    """
    vmap = transport(a.graph, a.base, b.graph, b.base)
    return None if vmap is None else Morphism(vmap)


def based_isomorphism(a: BasedGraph, b: BasedGraph) -> Optional[Morphism]:
    """The unique base-preserving isomorphism, or ``None``.

    Decided by simultaneous deterministic traversal from the two base
    vertices; both graphs must be folded and connected.
    """
    if a.graph.vertex_count != b.graph.vertex_count:
        return None
    if len(a.graph.edges) != len(b.graph.edges):
        return None
    vmap = transport(a.graph, a.base, b.graph, b.base)
    if vmap is None or len(set(vmap)) != b.graph.vertex_count:
        return None
    return Morphism(vmap)


def isomorphic(a: XDigraph, b: XDigraph) -> bool:
    """Unbased isomorphism of folded connected graphs: some vertex of ``b``
    serves as the image of vertex 0 of ``a``."""
    if a.vertex_count != b.vertex_count or len(a.edges) != len(b.edges):
        return False
    if a.vertex_count == 0:
        return True
    return any(
        based_isomorphism(BasedGraph(a, 0), BasedGraph(b, v)) is not None
        for v in range(b.vertex_count)
    )


def is_subgraph_embedding(m: Morphism, a: XDigraph, b: XDigraph) -> bool:
    """True iff ``m`` embeds ``a`` into ``b`` injectively on vertices and edges."""
    if not m.is_injective():
        return False
    images = {(m(o), x, m(t)) for o, x, t in a.edges}
    return len(images) == len(a.edges) and images <= set(b.edges)


# ---------------------------------------------------------------------------
# type graphs


class TypeGraph(NamedTuple):
    graph: XDigraph
    anchor: int  # vertex of the type closest to the old base
    stem: tuple[int, ...]  # signed codes of the removed base-to-anchor arc
    host_vertices: tuple[int, ...]  # type vertex -> vertex of the host graph


def type_with_anchor(g: BasedGraph) -> TypeGraph:
    """Type of a folded core graph: the graph with its base stem removed.

    If the base has degree >= 2, or the graph is a single vertex or has
    no edge, the graph is returned unchanged.  Otherwise the unique arc
    from the base to the first vertex of degree >= 3 is removed; the
    result is a core graph with respect to every vertex.
    """
    graph, base = g.graph, g.base
    deg = graph.degrees()
    if graph.vertex_count == 1 or not graph.edges or deg[base] >= 2:
        return TypeGraph(graph, base, (), tuple(range(graph.vertex_count)))
    # walk the stem: base has degree one, interior vertices degree two
    steps = graph.step_maps()
    stem_codes: list[int] = []
    removed = {base}
    v = base
    in_code: Optional[int] = None
    while True:
        options = [c for c in sorted(steps[v]) if in_code is None or c != in_code ^ 1]
        assert len(options) == 1, "stem interior vertex must have degree two"
        c = options[0]
        stem_codes.append(c)
        v = steps[v][c]
        in_code = c
        if deg[v] >= 3:
            break
        removed.add(v)
    keep = [u for u in range(graph.vertex_count) if u not in removed]
    renum = {u: i for i, u in enumerate(keep)}
    edges = [
        (renum[o], x, renum[t])
        for o, x, t in graph.edges
        if o not in removed and t not in removed
    ]
    return TypeGraph(
        XDigraph(graph.alphabet, len(keep), edges),
        renum[v],
        tuple(stem_codes),
        tuple(keep),
    )


def type_graph(g: BasedGraph) -> XDigraph:
    return type_with_anchor(g).graph


# ---------------------------------------------------------------------------
# products, components, completion


class ProductResult(NamedTuple):
    graph: XDigraph
    pairs: tuple[tuple[int, int], ...]  # new vertex -> (vertex of a, vertex of b)

    def pair_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}


def product(
    a: XDigraph, b: XDigraph, base_pair: Optional[tuple[int, int]] = None
) -> ProductResult:
    """Product graph: an x-edge (v,u) -> (v',u') iff both factors have one.

    The product of folded graphs is folded.  Vertices of degree zero are
    pruned, except that ``base_pair`` is always retained.
    """
    if a.alphabet != b.alphabet:
        raise InvalidInputError("product factors must share an alphabet")
    by_label: list[list[Edge]] = [[] for _ in range(b.alphabet.size)]
    for e in b.edges:
        by_label[e[1]].append(e)
    raw_edges: list[tuple[tuple[int, int], int, tuple[int, int]]] = []
    used: set[tuple[int, int]] = set()
    for o1, x, t1 in a.edges:
        for o2, _, t2 in by_label[x]:
            o, t = (o1, o2), (t1, t2)
            raw_edges.append((o, x, t))
            used.add(o)
            used.add(t)
    if base_pair is not None:
        used.add(base_pair)
    pairs = tuple(sorted(used))
    index = {p: i for i, p in enumerate(pairs)}
    edges = [(index[o], x, index[t]) for o, x, t in raw_edges]
    return ProductResult(XDigraph(a.alphabet, len(pairs), edges), pairs)


class Component(NamedTuple):
    vertices: tuple[int, ...]  # original vertex ids, sorted
    graph: XDigraph  # induced subgraph, renumbered along `vertices`


def connected_components(g: XDigraph) -> list[Component]:
    """Undirected components, ordered by least contained vertex id."""
    seen: set[int] = set()
    comps: list[Component] = []
    for v in range(g.vertex_count):
        if v in seen:
            continue
        verts = _component_of(g, v)
        seen |= verts
        ordered = tuple(sorted(verts))
        renum = {u: i for i, u in enumerate(ordered)}
        edges = [(renum[o], x, renum[t]) for o, x, t in g.edges if o in verts]
        comps.append(Component(ordered, XDigraph(g.alphabet, len(ordered), edges)))
    return comps


def regular_complete(g: XDigraph) -> XDigraph:
    """Complete a folded graph to an X-regular graph on the same vertices.

    For each letter x the k-th vertex missing an outgoing x is paired
    with the k-th vertex missing an incoming x, in vertex-id order; this
    adds exactly ``#V - n_x`` edges per letter and keeps the graph
    folded.  Every vertex of the result has degree ``2 * #X``.
    """
    if not is_folded(g):
        raise InvalidInputError("regular_complete needs a folded graph")
    new_edges = list(g.edges)
    for x in range(g.alphabet.size):
        has_out = [False] * g.vertex_count
        has_in = [False] * g.vertex_count
        for o, y, t in g.edges:
            if y == x:
                has_out[o] = True
                has_in[t] = True
        missing_out = [v for v in range(g.vertex_count) if not has_out[v]]
        missing_in = [v for v in range(g.vertex_count) if not has_in[v]]
        assert len(missing_out) == len(missing_in)
        new_edges.extend((o, x, t) for o, t in zip(missing_out, missing_in))
    return XDigraph(g.alphabet, g.vertex_count, new_edges)


def is_regular(g: XDigraph) -> bool:
    """True iff every vertex has exactly one edge per signed letter."""
    return is_folded(g) and len(g.edges) == g.alphabet.size * g.vertex_count


# ---------------------------------------------------------------------------
# serialization


def graph_to_json(g: BasedGraph) -> str:
    """Serialize a based graph; canonical numbering makes this reproducible."""
    alph = g.graph.alphabet
    payload = {
        "alphabet": "".join(alph.symbols) if alph.single_letter() else list(alph.symbols),
        "vertices": g.graph.vertex_count,
        "base": g.base,
        "edges": [[o, alph.symbols[x], t] for o, x, t in g.graph.edges],
    }
    return json.dumps(payload)


def graph_from_json(text: str) -> BasedGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid graph JSON: {exc}") from None
    try:
        raw_alph = payload["alphabet"]
        vertices = int(payload["vertices"])
        base = int(payload["base"])
        raw_edges = payload["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed graph record: {exc}") from None
    alph = Alphabet(raw_alph if isinstance(raw_alph, list) else tuple(raw_alph))
    edges = []
    for rec in raw_edges:
        if len(rec) != 3:
            raise InvalidInputError(f"malformed edge record: {rec!r}")
        o, sym, t = rec
        if sym not in alph._index:
            raise InvalidInputError(f"edge label {sym!r} outside alphabet")
        edges.append((int(o), alph._index[sym], int(t)))
    return BasedGraph(XDigraph(alph, vertices, edges), base)


def to_dot(g: BasedGraph, name: str = "subgroup") -> str:
    """Deterministic DOT text; the base vertex is drawn double-circled."""
    alph = g.graph.alphabet
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(g.graph.vertex_count):
        shape = "doublecircle" if v == g.base else "circle"
        lines.append(f'  {v} [shape={shape}];')
    for o, x, t in g.graph.edges:
        lines.append(f'  {o} -> {t} [label="{alph.symbols[x]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def language_words(g: XDigraph, base: int, max_len: int) -> set[tuple[int, ...]]:
    """All labels of reduced base loops of length <= max_len.

    Exhaustive DFS over reduced paths; independent of the folded-graph
    tracing used by membership, so tests can use it as an oracle.  On a
    folded graph this is exactly the set of accepted freely reduced
    words up to that length.
    """
    inc: list[list[tuple[int, Edge]]] = [[] for _ in range(g.vertex_count)]
    for i, e in enumerate(g.edges):
        inc[e[0]].append((i, e))
        if e[2] != e[0]:
            inc[e[2]].append((i, e))
    out: set[tuple[int, ...]] = set()

    def explore(v: int, last: Optional[tuple[int, int]], label: tuple[int, ...]):
        if v == base:
            out.add(label)
        if len(label) == max_len:
            return
        for i, (o, x, t) in inc[v]:
            for src, code, far, direction in (
                (o, 2 * x, t, 1),
                (t, 2 * x + 1, o, -1),
            ):
                if src != v:
                    continue
                if last is not None and last == (i, -direction):
                    continue  # immediate backtrack over the same edge
                explore(far, (i, direction), label + (code,))

    explore(base, None, ())
    return out
