"""Free bases, rank, index, cosets, and finite-index completions.

A spanning tree of the subgroup graph yields a free basis, one element
per non-tree edge; geodesic trees even give Nielsen-reduced bases.  The
graph is X-regular exactly when the subgroup has finite index, and any
subgroup H with a word g outside it embeds as a free factor in a
finite-index subgroup avoiding g (Marshall Hall property).
"""

from freegroups import (
    Alphabet,
    basis,
    contains,
    coset_representatives,
    expand_in_basis,
    format_word,
    hall_completion,
    index,
    is_nielsen_reduced,
    parse_word,
    rank,
    rewrite_in_basis,
    schreier_check,
    spanning_tree,
    stallings_graph,
)

X = Alphabet.from_string("ab")
w = lambda s: parse_word(s, X)

print("== Bases from spanning trees ==")
H = stallings_graph(X, [w("aab"), w("ba")])
tree = spanning_tree(H, geodesic=True)
B = basis(H, tree)
print("H = <aab, ba> has rank", rank(H))
print("geodesic-tree basis:", [format_word(u) for u in B.elements])
print("Nielsen reduced:", is_nielsen_reduced(B.elements))
print()

print("Members rewrite over the basis (Schreier rewriting):")
member = w("aab") * w("ba") * ~w("aab")
indices = rewrite_in_basis(H, tree, member)
print(f"  {format_word(member)} = basis word {indices}")
print("  round-trip:", format_word(expand_in_basis(B.elements, indices)))
print()

print("== Finite index ==")
K = stallings_graph(X, [w("aa"), w("b"), w("abA")])
print("K = <a^2, b, a b a^-1>: index", index(K), "in F(a, b)")
print("coset representatives:", [format_word(r) or "1" for r in coset_representatives(K)])
print("Schreier formula rk-1 = i(rkF-1) holds:", schreier_check(K))
print("infinite-index example: index(<a^2>) =", index(stallings_graph(X, [w("aa")])))
print()

print("== Marshall Hall completion ==")
H7 = stallings_graph(X, [w("bbAA")])
g = w("ab")
print("H = <b^2 a^-2>, g = ab; g in H:", contains(H7, g))
result = hall_completion(H7, g)
print("completion L: index", result.finite_index, "; g in L:", contains(result.subgroup, g))
print("basis of H inside L:", [format_word(u) for u in result.basis_h])
print("complement basis   :", [format_word(u) for u in result.basis_c])
print("so L = H * C with |basis| =", len(result.basis_h) + len(result.basis_c))
