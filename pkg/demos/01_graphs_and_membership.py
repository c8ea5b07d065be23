"""Subgroup graphs by folding, and the membership problem.

A finitely generated subgroup H <= F(X) is stored as a folded core
labeled graph: wedge the generator words into loops at one vertex, then
fold until no two equally-labeled edges leave a common vertex.  The
result is a deterministic inverse automaton whose base loops spell
exactly the elements of H, so membership is a single trace.
"""

from freegroups import (
    Alphabet,
    contains,
    graph_to_json,
    parse_word,
    stallings_graph,
    to_dot,
    trace_path,
)

X = Alphabet.from_string("ab")
w = lambda s: parse_word(s, X)

print("== The subgroup H = <a^2 b, b a^-1 b a, a b a^-1> of F(a, b) ==")
H = stallings_graph(X, [w("aab"), w("bABa"), w("abA")])
print(f"folded core graph: {H.vertex_count} vertices, {H.edge_count} edges")
print(graph_to_json(H.based))
print()

print("Membership is decided by tracing the word from the base vertex:")
for text in ("aab", "aabbABa", "ab", "ba", "aabaab"):
    verdict = "in H" if contains(H, w(text)) else "NOT in H"
    print(f"  {text:10s} -> {verdict}")
print()

print("A failed trace stops early; a successful non-loop ends elsewhere:")
print("  trace of 'ab' ends at vertex", trace_path(H.graph, H.base, w("ab")))
print("  trace of 'bb' ends at", trace_path(H.graph, H.base, w("bb")))
print()

print("Equivalent generating sets fold to the identical canonical graph:")
H2 = stallings_graph(X, [w("aab"), w("bABa"), w("abA"), w("aabbABa")])
print("  added a redundant generator; graphs equal:", H == H2)
print()

print("DOT export of the graph (base vertex double-circled):")
print(to_dot(H.based))
