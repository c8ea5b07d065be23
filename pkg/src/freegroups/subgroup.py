"""Canonical subgroup graphs and single-subgroup algorithms.

``SubgroupGraph`` is the folded connected core based graph canonically
attached to a finitely generated subgroup H <= F(X).  Vertices are
renumbered breadth-first from the base with signed-letter tie-breaking,
so equal subgroups produce identical objects and serialized output is
reproducible; the base vertex is always 0.

Algorithms here cover construction by folding, membership, spanning
trees and free bases, Schreier rewriting, rank, index and cosets,
normality, conjugation and conjugacy, power membership, finite-index
completion, and joins.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from random import Random
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    AlphabetMismatchError,
    InvalidInputError,
    NotAMemberError,
)
from .graph import (
    BasedGraph,
    Edge,
    XDigraph,
    based_isomorphism,
    canonical_morphism,
    core,
    fold_all,
    is_regular,
    regular_complete,
    trace_path,
    type_with_anchor,
)
from .words import Alphabet, Word, free_reduce, identity, invert, multiply, cyclic_reduce


class SubgroupGraph:
    """The canonical graph of a finitely generated subgroup.

    Wraps a folded, connected core based graph in canonical numbering.
    Two instances compare equal iff they are based-isomorphic, i.e. iff
    they describe the same subgroup.
    """

    __slots__ = ("graph",)

    base = 0

    def __init__(self, graph: XDigraph, base: int):
        self.graph = _canonicalize(graph, base)

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    @property
    def based(self) -> BasedGraph:
        return BasedGraph(self.graph, self.base)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.graph.edges)

    def canonical_key(self) -> tuple:
        return (self.graph.alphabet.symbols, self.graph.vertex_count, self.graph.edges)

    def is_trivial(self) -> bool:
        return not self.graph.edges

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubgroupGraph) and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.graph)

    def __repr__(self) -> str:
        return f"SubgroupGraph(V={self.vertex_count}, E={self.edge_count})"


def _canonicalize(graph: XDigraph, base: int) -> XDigraph:
    """Validate folded/connected/core and renumber breadth-first from base."""
    steps = graph.step_maps()  # raises if not folded
    order = [base]
    pos = {base: 0}
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for code in sorted(steps[v]):
            w = steps[v][code]
            if w not in pos:
                pos[w] = len(order)
                order.append(w)
    if len(order) != graph.vertex_count:
        raise InvalidInputError("subgroup graph must be connected")
    for v, d in enumerate(graph.degrees()):
        if d <= 1 and v != base and graph.vertex_count > 1:
            raise InvalidInputError("subgroup graph must be a core graph at its base")
    edges = [(pos[o], x, pos[t]) for o, x, t in graph.edges]
    return XDigraph(graph.alphabet, graph.vertex_count, edges)


def trivial_subgroup(alphabet: Alphabet) -> SubgroupGraph:
    return SubgroupGraph(XDigraph(alphabet, 1, ()), 0)


def full_group(alphabet: Alphabet) -> SubgroupGraph:
    """The rose: one vertex with a loop per generator, i.e. F(X) itself."""
    return SubgroupGraph(
        XDigraph(alphabet, 1, [(0, x, 0) for x in range(alphabet.size)]), 0
    )


def stallings_graph(
    alphabet: Alphabet, gens: Iterable[Word], rng: Optional[Random] = None
) -> SubgroupGraph:
    """Construct the canonical graph of ``<gens>``.

    Wedge of loops spelling the generators, folded to completion, cored
    at the wedge vertex.  Trivial generators are ignored; the empty set
    yields the single-vertex graph of the trivial subgroup.  The number
    of elementary folds is at most the total generator length.
    """
    edges: list[Edge] = []
    n = 1
    for w in gens:
        if w.alphabet != alphabet:
            raise AlphabetMismatchError("generators must share the given alphabet")
        if not w.codes:
            continue
        prev = 0
        for i, code in enumerate(w.codes):
            nxt = 0 if i == len(w.codes) - 1 else n + i
            if code & 1 == 0:
                edges.append((prev, code >> 1, nxt))
            else:
                edges.append((nxt, code >> 1, prev))
            prev = nxt
        n += len(w.codes) - 1
    wedge = XDigraph(alphabet, n, edges)
    folded, vmap = fold_all(wedge, rng)
    cored, cmap = core(folded, vmap[0])
    return SubgroupGraph(cored, cmap[vmap[0]])


def contains(h: SubgroupGraph, w: Word) -> bool:
    """Generalized word problem: does ``w`` lie in the subgroup?"""
    if w.alphabet != h.alphabet:
        raise AlphabetMismatchError("word and subgroup use different alphabets")
    return trace_path(h.graph, h.base, w) == h.base


# ---------------------------------------------------------------------------
# spanning trees and bases


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree of a subgroup graph, rooted at the base.

    ``enter[v]`` is the signed code of the tree edge used to reach ``v``
    from its parent (None at the root).  When ``geodesic`` holds, every
    tree path from the root realizes the graph distance.
    """

    host: XDigraph
    root: int
    edges: frozenset[Edge]
    parent: tuple[int, ...]
    enter: tuple[Optional[int], ...]
    depth: tuple[int, ...]
    geodesic: bool

    def path_codes(self, v: int) -> tuple[int, ...]:
        out: list[int] = []
        while v != self.root:
            out.append(self.enter[v])  # type: ignore[arg-type]
            v = self.parent[v]
        return tuple(reversed(out))

    def path_word(self, v: int) -> Word:
        return Word(self.host.alphabet, self.path_codes(v))


def _tree_edge(v: int, code: int, w: int) -> Edge:
    """Positive edge triple underlying the step v --code--> w."""
    return (v, code >> 1, w) if code & 1 == 0 else (w, code >> 1, v)


def spanning_tree(
    g: SubgroupGraph, geodesic: bool = True, rng: Optional[Random] = None
) -> SpanningTree:
    """Spanning tree rooted at the base; breadth-first layers when geodesic.

    The default is deterministic (signed-letter order); ``rng`` shuffles
    the exploration order, which varies the tree but never the rank of
    the resulting basis.
    """
    host = g.graph
    steps = host.step_maps()
    n = host.vertex_count
    parent = [0] * n
    enter: list[Optional[int]] = [None] * n
    depth = [0] * n
    tree_edges: set[Edge] = set()
    seen = [False] * n
    seen[g.base] = True
    frontier = deque([g.base])
    while frontier:
        v = frontier.popleft() if geodesic else frontier.pop()
        codes = sorted(steps[v])
        if rng is not None:
            rng.shuffle(codes)
        for code in codes:
            w = steps[v][code]
            if seen[w]:
                continue
            seen[w] = True
            parent[w] = v
            enter[w] = code
            depth[w] = depth[v] + 1
            tree_edges.add(_tree_edge(v, code, w))
            frontier.append(w)
    assert all(seen), "spanning tree requires a connected graph"
    return SpanningTree(
        host, g.base, frozenset(tree_edges), tuple(parent), tuple(enter),
        tuple(depth), geodesic,
    )


@dataclass(frozen=True)
class Basis:
    """A free basis of the subgroup, one element per non-tree edge."""

    elements: tuple[Word, ...]
    provenance: tuple[Edge, ...]  # non-tree positive edge of each element

    def __len__(self) -> int:
        return len(self.elements)


def non_tree_edges(g: SubgroupGraph, tree: SpanningTree) -> list[Edge]:
    return [e for e in g.graph.edges if e not in tree.edges]


def basis(g: SubgroupGraph, tree: Optional[SpanningTree] = None) -> Basis:
    """Free basis from a spanning tree: one generator per non-tree edge,
    ``[e] = (path to o(e)) e (path from t(e))``.

    The basis size is ``#E - #V + 1``.  With a geodesic tree the basis
    is Nielsen reduced.
    """
    if tree is None:
        tree = spanning_tree(g, geodesic=True)
    alph = g.alphabet
    elements = []
    prov = []
    for e in non_tree_edges(g, tree):
        o, x, t = e
        codes = tree.path_codes(o) + (2 * x,) + tuple(
            c ^ 1 for c in reversed(tree.path_codes(t))
        )
        elements.append(free_reduce(alph, codes))
        prov.append(e)
    b = Basis(tuple(elements), tuple(prov))
    assert len(b) == len(g.graph.edges) - g.vertex_count + 1
    return b


def rank(g: SubgroupGraph) -> int:
    """rk(H) = #E - #V + 1 for the canonical graph."""
    return len(g.graph.edges) - g.vertex_count + 1


def rewrite_in_basis(g: SubgroupGraph, tree: SpanningTree, w: Word) -> tuple[int, ...]:
    """Schreier rewriting: express a member in the tree basis.

    Reads ``w`` along the graph and emits one signed 1-based basis index
    per non-tree edge crossed.  Substituting the basis elements back and
    freely reducing returns ``w``.
    """
    order = {e: i + 1 for i, e in enumerate(non_tree_edges(g, tree))}
    out: list[int] = []
    v = g.base
    for code in w.codes:
        nxt = g.graph.step(v, code)
        if nxt is None:
            raise NotAMemberError("word does not lie in the subgroup")
        e = _tree_edge(v, code, nxt)
        if e not in tree.edges:
            out.append(order[e] if code & 1 == 0 else -order[e])
        v = nxt
    if v != g.base:
        raise NotAMemberError("word does not lie in the subgroup")
    return tuple(out)


def expand_in_basis(elements: Sequence[Word], indices: Iterable[int]) -> Word:
    """Substitute basis elements for signed 1-based indices and reduce."""
    if not elements:
        raise InvalidInputError("cannot expand over an empty basis")
    acc = identity(elements[0].alphabet)
    for i in indices:
        acc = multiply(acc, elements[i - 1] if i > 0 else invert(elements[-i - 1]))
    return acc


def is_nielsen_reduced(s: Sequence[Word]) -> bool:
    """Check the two Nielsen conditions over S and its inverses.

    (1) no product of distinct non-cancelling pairs drops below the
    length of either factor; (2) in any triple ``u w v`` with no full
    adjacent cancellation, at least one letter of ``w`` survives.
    """
    words = list(dict.fromkeys(s))
    for w in words:
        if not w.codes:
            raise InvalidInputError("Nielsen sets must not contain the identity")
    inverses = {invert(w) for w in words}
    if inverses & set(words):
        raise InvalidInputError("Nielsen sets must not contain an inverse pair")
    u_set = words + [invert(w) for w in words]
    for u in u_set:
        for v in u_set:
            if u == invert(v):
                continue
            p = multiply(u, v)
            if len(p) < len(u) or len(p) < len(v):
                return False
    for u in u_set:
        for w in u_set:
            if u == invert(w):
                continue
            uw = multiply(u, w)
            for v in u_set:
                if v == invert(w):
                    continue
                if len(multiply(uw, v)) <= len(u) + len(v) - len(w):
                    return False
    return True


# ---------------------------------------------------------------------------
# index, cosets, normality


def index(g: SubgroupGraph) -> Optional[int]:
    """|F(X) : H|, or ``None`` when the index is infinite.

    Finite iff the graph is X-regular, in which case the index is the
    number of vertices.
    """
    return g.vertex_count if is_regular(g.graph) else None


def coset_representatives(g: SubgroupGraph) -> list[Word]:
    """Right coset representatives, one per vertex (tree-path labels)."""
    if index(g) is None:
        raise InvalidInputError("coset representatives exist only at finite index")
    tree = spanning_tree(g, geodesic=True)
    return [tree.path_word(v) for v in range(g.vertex_count)]


def schreier_check(g: SubgroupGraph) -> bool:
    """Verify rk(H) - 1 = index * (rk(F) - 1); requires finite index."""
    i = index(g)
    if i is None:
        raise InvalidInputError("Schreier formula applies only at finite index")
    return rank(g) - 1 == i * (g.alphabet.size - 1)


def is_normal(g: SubgroupGraph) -> bool:
    """Normality test: X-regular and every vertex is an equivalent base.

    The trivial subgroup is normal by convention (the regularity clause
    below assumes a nontrivial subgroup).
    """
    if g.is_trivial():
        return True
    if not is_regular(g.graph):
        return False
    return all(
        based_isomorphism(g.based, BasedGraph(g.graph, v)) is not None
        for v in range(1, g.vertex_count)
    )


# ---------------------------------------------------------------------------
# conjugation


def conjugate(g: SubgroupGraph, w: Word) -> SubgroupGraph:
    """Canonical graph of the conjugate ``w H w^-1``.

    Splits ``w = y z`` with ``z`` the maximal tail whose inverse is
    readable from the base, attaches a fresh stem spelling ``y^-1`` at
    the endpoint, and re-cores at the new base.  The type graph is
    unchanged by conjugation.
    """
    if w.alphabet != g.alphabet:
        raise AlphabetMismatchError("conjugator and subgroup use different alphabets")
    codes = w.codes
    u = g.base
    i = len(codes)
    while i > 0:
        nxt = g.graph.step(u, codes[i - 1] ^ 1)
        if nxt is None:
            break
        u = nxt
        i -= 1
    y = codes[:i]  # unread head; attach its inverse as a stem
    edges = list(g.graph.edges)
    n = g.graph.vertex_count
    cur = u
    for code in reversed(y):
        inv = code ^ 1
        if inv & 1 == 0:
            edges.append((cur, inv >> 1, n))
        else:
            edges.append((n, inv >> 1, cur))
        cur = n
        n += 1
    attached = XDigraph(g.alphabet, n, edges)
    cored, cmap = core(attached, cur)
    return SubgroupGraph(cored, cmap[cur])


def conjugacy_equivalent(h: SubgroupGraph, k: SubgroupGraph) -> Optional[Word]:
    """A verified conjugator g with g H g^-1 = K, or None.

    H and K are conjugate iff their type graphs are isomorphic as
    unbased graphs; each base choice in Type(K) yields a candidate
    ``g = s_K * s_H^-1`` from the stem/path labels, and the
    lexicographically least verified candidate is returned.
    """
    if h.alphabet != k.alphabet:
        raise AlphabetMismatchError("subgroups use different alphabets")
    th = type_with_anchor(h.based)
    tk = type_with_anchor(k.based)
    s_h = Word(h.alphabet, th.stem)
    tree_k = spanning_tree(k, geodesic=True)
    best: Optional[Word] = None
    for v, host_v in enumerate(tk.host_vertices):
        if based_isomorphism(
            BasedGraph(th.graph, th.anchor), BasedGraph(tk.graph, v)
        ) is None:
            continue
        g = multiply(tree_k.path_word(host_v), invert(s_h))
        if conjugate(h, g) == k:
            if best is None or g.shortlex_key() < best.shortlex_key():
                best = g
    return best


def conjugate_into(k: SubgroupGraph, h: SubgroupGraph) -> Optional[Word]:
    """A verified g with g K g^-1 <= H, or None.

    Exists iff some morphism Type(K) -> Type(H) does; the witness is
    assembled from the stem label of K and a path label in H.
    """
    if h.alphabet != k.alphabet:
        raise AlphabetMismatchError("subgroups use different alphabets")
    from .graph import transport  # local import to keep module tops light

    tk = type_with_anchor(k.based)
    th = type_with_anchor(h.based)
    f = Word(k.alphabet, tk.stem)
    tree_h = spanning_tree(h, geodesic=True)
    best: Optional[Word] = None
    for v, host_v in enumerate(th.host_vertices):
        if transport(tk.graph, tk.anchor, th.graph, v) is None:
            continue
        g = multiply(tree_h.path_word(host_v), invert(f))
        candidate = conjugate(k, g)
        if canonical_morphism(candidate.based, h.based) is not None:
            if best is None or g.shortlex_key() < best.shortlex_key():
                best = g
    return best


def power_in(h: SubgroupGraph, g: Word) -> Optional[int]:
    """Least m >= 1 with g^m in H, or None; m <= #V suffices.

    The reduced powers are walked incrementally through the cyclically
    reduced core of ``g``, so no quadratic re-reduction happens.
    """
    if not g.codes:
        raise InvalidInputError("power_in needs a nontrivial element")
    conj, d = cyclic_reduce(g)
    v = trace_path(h.graph, h.base, conj)
    if v is None:
        return None
    back = invert(conj)
    for m in range(1, h.vertex_count + 1):
        v = trace_path(h.graph, v, d)
        if v is None:
            return None
        if trace_path(h.graph, v, back) == h.base:
            return m
    return None


# ---------------------------------------------------------------------------
# Hall completion and joins


class HallCompletion(NamedTuple):
    subgroup: SubgroupGraph  # L, of finite index
    basis_h: tuple[Word, ...]  # free basis of H
    basis_c: tuple[Word, ...]  # free basis of a complement, L = H * <basis_c>

    @property
    def finite_index(self) -> int:
        return self.subgroup.vertex_count


def hall_completion(h: SubgroupGraph, g: Word) -> HallCompletion:
    """Finite-index overgroup L with H a free factor of L and g not in L.

    Wraps the maximal readable prefix of ``g`` onto the graph, attaches
    the rest as a fresh arc, and completes to an X-regular graph; the
    completion is not unique, so only its properties are contractual.
    The returned basis of L splits over a spanning tree of H extended
    across the new arc.
    """
    if contains(h, g):
        raise InvalidInputError("Hall completion needs an element outside H")
    graph = h.graph
    v = h.base
    i = 0
    while i < len(g.codes):
        nxt = graph.step(v, g.codes[i])
        if nxt is None:
            break
        v = nxt
        i += 1
    edges = list(graph.edges)
    n = graph.vertex_count
    chain_edges: list[Edge] = []
    cur = v
    for code in g.codes[i:]:
        if code & 1 == 0:
            chain_edges.append((cur, code >> 1, n))
        else:
            chain_edges.append((n, code >> 1, cur))
        cur = n
        n += 1
    aug = XDigraph(graph.alphabet, n, edges + chain_edges)
    complete = regular_complete(aug)

    tree_h = spanning_tree(h, geodesic=True)
    tree_edges = set(tree_h.edges) | set(chain_edges)
    tree = _tree_from_edges(complete, h.base, tree_edges)
    h_edges = set(graph.edges)
    basis_h: list[Word] = []
    basis_c: list[Word] = []
    for e in complete.edges:
        if e in tree.edges:
            continue
        o, x, t = e
        codes = tree.path_codes(o) + (2 * x,) + tuple(
            c ^ 1 for c in reversed(tree.path_codes(t))
        )
        word = free_reduce(complete.alphabet, codes)
        (basis_h if e in h_edges else basis_c).append(word)
    return HallCompletion(SubgroupGraph(complete, h.base), tuple(basis_h), tuple(basis_c))


def spanning_tree_from_edges(
    g: SubgroupGraph, tree_edges: Iterable[Edge]
) -> SpanningTree:
    """Spanning tree over an explicitly prescribed edge set.

    Useful for fixtures where a particular highlighted tree matters;
    raises when the edges do not span the graph.
    """
    return _tree_from_edges(g.graph, g.base, set(tree_edges))


def _tree_from_edges(host: XDigraph, root: int, tree_edges: set[Edge]) -> SpanningTree:
    """Spanning-tree structure over a prescribed edge set."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(host.vertex_count)}
    for o, x, t in tree_edges:
        adj[o].append((2 * x, t))
        adj[t].append((2 * x + 1, o))
    parent = [0] * host.vertex_count
    enter: list[Optional[int]] = [None] * host.vertex_count
    depth = [0] * host.vertex_count
    seen = [False] * host.vertex_count
    seen[root] = True
    queue = deque([root])
    count = 1
    while queue:
        v = queue.popleft()
        for code, w in sorted(adj[v]):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                enter[w] = code
                depth[w] = depth[v] + 1
                queue.append(w)
                count += 1
    if count != host.vertex_count:
        raise InvalidInputError("prescribed edges do not span the graph")
    return SpanningTree(
        host, root, frozenset(tree_edges), tuple(parent), tuple(enter),
        tuple(depth), geodesic=False,
    )


def rebase_inside(m: SubgroupGraph, h: SubgroupGraph) -> SubgroupGraph:
    """Rewrite M <= H over an abstract basis of H.

    Returns the graph of M viewed as a subgroup of the free group on
    rank(H) fresh letters, one per element of a geodesic-tree basis of
    H.  This is how computations "inside H" (relative index, free
    factor tests) are reduced to the ambient case.
    """
    if canonical_morphism(m.based, h.based) is None:
        raise InvalidInputError("rebase_inside needs M to be a subgroup of H")
    from .words import synthetic_alphabet

    tree = spanning_tree(h, geodesic=True)
    target = synthetic_alphabet(rank(h))
    gens = []
    for w in basis(m).elements:
        codes = []
        for i in rewrite_in_basis(h, tree, w):
            codes.append(2 * (i - 1) if i > 0 else 2 * (-i - 1) + 1)
        gens.append(free_reduce(target, codes))
    return stallings_graph(target, gens)


def relative_index(m: SubgroupGraph, h: SubgroupGraph) -> Optional[int]:
    """|H : M| for M <= H, or ``None`` when infinite."""
    return index(rebase_inside(m, h))


def join(h: SubgroupGraph, k: SubgroupGraph) -> SubgroupGraph:
    """Canonical graph of <H u K>: wedge at the bases, fold, core."""
    if h.alphabet != k.alphabet:
        raise AlphabetMismatchError("subgroups use different alphabets")
    offset = h.graph.vertex_count

    def shift(v: int) -> int:
        return h.base if v == k.base else offset + v - (1 if v > k.base else 0)

    edges = list(h.graph.edges) + [
        (shift(o), x, shift(t)) for o, x, t in k.graph.edges
    ]
    wedge = XDigraph(h.alphabet, offset + k.graph.vertex_count - 1, edges)
    folded, vmap = fold_all(wedge)
    cored, cmap = core(folded, vmap[h.base])
    return SubgroupGraph(cored, cmap[vmap[h.base]])
