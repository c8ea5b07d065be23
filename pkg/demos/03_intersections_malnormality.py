"""Intersections via product graphs; malnormality and its relatives.

The product graph of two subgroup graphs synchronizes traversals: its
base-pair component recognizes the intersection, and every other
component describes the intersection of a conjugate, one double coset
per component.  Reading component ranks off the product decides
malnormality (all trivial) and cyclonormality (all cyclic).
"""

from freegroups import (
    Alphabet,
    component_analysis,
    conjugate,
    format_word,
    hanna_neumann_check,
    intersection,
    is_cyclonormal,
    is_immersed,
    is_malnormal,
    parse_word,
    rank,
    stallings_graph,
)

X = Alphabet.from_string("ab")
w = lambda s: parse_word(s, X)

print("== Intersection of two rank-2 subgroups ==")
H = stallings_graph(X, [w("ab"), w("Ba")])
K = stallings_graph(X, [w("aaa"), w("AbA")])
M = intersection(H, K)
print(f"H = <ab, b^-1 a>, K = <a^3, a^-1 b a>")
print(f"H n K: rank {rank(M)}, {M.vertex_count} vertices, {M.edge_count} edges")
print("rank inequality rk(HnK)-1 <= (rk H - 1)(rk K - 1):", hanna_neumann_check(H, K))
print()

print("== Components of a self-product ==")
A = stallings_graph(X, [w("aa")])
for report in component_analysis(A, A):
    where = "base" if report.contains_base_pair else "off-diagonal"
    witness = (
        format_word(report.double_coset_witness)
        if report.double_coset_witness is not None
        else "-"
    )
    print(f"  {where} component at {report.representative_vertex}: rank {report.rank}, witness {witness}")
print()

print("== Malnormality ==")
ok, _ = is_malnormal(stallings_graph(X, [w("a")]))
print("<a> malnormal:", ok)
ok, g = is_malnormal(A)
print("<a^2> malnormal:", ok, "| witness g =", format_word(g))
meet = intersection(conjugate(A, g), A)
print("  indeed g<a^2>g^-1 n <a^2> has rank", rank(meet))
print()

print("== Cyclonormality and immersions ==")
gens = [w("aa"), w("bab")]
print("tuple (a^2, bab) immersed (no cancellation):", is_immersed(gens))
print("hence <a^2, bab> cyclonormal:", is_cyclonormal(stallings_graph(X, gens)))
bad = stallings_graph(X, [w("aa"), w("bb"), w("abab"), w("ba")])
print("a non-cyclonormal example <a^2, b^2, abab, ba>:", is_cyclonormal(bad))
