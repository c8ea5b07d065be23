"""Subgroup graphs: construction, membership, bases, index, conjugacy."""

from random import Random

import pytest

from freegroups.errors import InvalidInputError, NotAMemberError
from freegroups.graph import (
    based_isomorphism,
    canonical_morphism,
    is_regular,
    isomorphic,
    type_graph,
)
from freegroups.subgroup import (
    SubgroupGraph,
    basis,
    conjugacy_equivalent,
    conjugate,
    conjugate_into,
    contains,
    coset_representatives,
    expand_in_basis,
    full_group,
    hall_completion,
    index,
    is_nielsen_reduced,
    is_normal,
    join,
    power_in,
    rank,
    rebase_inside,
    relative_index,
    rewrite_in_basis,
    schreier_check,
    spanning_tree,
    stallings_graph,
    trivial_subgroup,
)
from freegroups.words import format_word, invert, multiply, parse_word

from helpers import AB, A1, product_words, rand_gens, rand_subgroup, rand_word

P = lambda s: parse_word(s, AB)
P1 = lambda s: parse_word(s, A1)


# -- construction -------------------------------------------------------------


def test_stallings_graph_examples():
    fig4 = stallings_graph(AB, [P("aab"), P("bABa"), P("abA")])
    assert fig4.vertex_count == 6 and fig4.edge_count == 8
    assert stallings_graph(AB, [P("aa"), P("aaa")]) == stallings_graph(AB, [P("a")])
    assert stallings_graph(AB, []) == trivial_subgroup(AB)
    assert stallings_graph(AB, [P(""), P("aA")]) == trivial_subgroup(AB)


def test_canonicity_over_generating_sets():
    rng = Random(21)
    for _ in range(25):
        gens = rand_gens(rng, AB, 3, 5)
        # Nielsen-style moves keep the subgroup; verify by mutual membership
        moved = list(gens)
        moved[0] = multiply(moved[0], moved[-1])
        if not moved[0].codes:
            continue
        moved.append(invert(gens[0]))
        h1 = stallings_graph(AB, gens)
        h2 = stallings_graph(AB, moved)
        assert all(contains(h2, g) for g in gens)
        assert all(contains(h1, g) for g in moved)
        assert h1 == h2


def test_contains_examples():
    h7 = stallings_graph(AB, [P("bbAA")])
    assert not contains(h7, P("ab"))
    assert contains(h7, P(""))
    assert contains(stallings_graph(AB, [P("ab"), P("Ba")]), P("aaaaaa"))


# -- trees, bases, rewriting ---------------------------------------------------


def test_spanning_tree_two_cycle():
    g = stallings_graph(AB, [P("aa")])
    tree = spanning_tree(g)
    assert tree.edges == frozenset({(0, 0, 1)})
    assert [e for e in g.graph.edges if e not in tree.edges] == [(1, 0, 0)]


def test_spanning_tree_rose_empty():
    tree = spanning_tree(full_group(AB))
    assert tree.edges == frozenset()


def test_geodesic_tree_depths():
    rng = Random(22)
    for _ in range(20):
        g = rand_subgroup(rng, AB)
        tree = spanning_tree(g, geodesic=True)
        # BFS layers realize graph distance
        steps = g.graph.step_maps()
        dist = {g.base: 0}
        frontier = [g.base]
        while frontier:
            nxt = []
            for v in frontier:
                for code in steps[v]:
                    w = steps[v][code]
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        assert all(tree.depth[v] == dist[v] for v in range(g.vertex_count))


def test_basis_examples():
    g = stallings_graph(AB, [P("aa")])
    assert [format_word(w) for w in basis(g).elements] == ["aa"]
    rose = full_group(AB)
    assert sorted(format_word(w) for w in basis(rose).elements) == ["a", "b"]


def test_rank_examples():
    assert rank(stallings_graph(AB, [P("aa")])) == 1
    assert rank(trivial_subgroup(AB)) == 0
    from freegroups.intersect import intersection

    h = stallings_graph(AB, [P("ab"), P("Ba")])
    k = stallings_graph(AB, [P("aaa"), P("AbA")])
    assert rank(intersection(h, k)) == 2


def test_rank_equals_basis_size_any_tree():
    rng = Random(23)
    for _ in range(20):
        g = rand_subgroup(rng, AB)
        for geodesic in (True, False):
            tree = spanning_tree(g, geodesic=geodesic, rng=Random(rng.randrange(10**6)))
            assert len(basis(g, tree)) == rank(g)


def test_rewrite_examples():
    g = stallings_graph(AB, [P("aa")])
    tree = spanning_tree(g)
    assert rewrite_in_basis(g, tree, P("aaaa")) == (1, 1)
    rose = full_group(AB)
    rtree = spanning_tree(rose)
    assert rewrite_in_basis(rose, rtree, P("abA")) == (1, 2, -1)


def test_rewrite_roundtrip_and_membership_error():
    rng = Random(24)
    for _ in range(20):
        gens = rand_gens(rng, AB, 3, 5)
        g = stallings_graph(AB, gens)
        if g.is_trivial():
            continue
        tree = spanning_tree(g)
        b = basis(g, tree)
        for w in list(product_words(gens, 3))[:30]:
            idx = rewrite_in_basis(g, tree, w)
            assert expand_in_basis(b.elements, idx) == w
    with pytest.raises(NotAMemberError):
        rewrite_in_basis(
            stallings_graph(AB, [P("aa")]),
            spanning_tree(stallings_graph(AB, [P("aa")])),
            P("a"),
        )


def test_nielsen_examples():
    assert is_nielsen_reduced([P("a"), P("b")])
    assert not is_nielsen_reduced([P("a"), P("ab")])
    with pytest.raises(InvalidInputError):
        is_nielsen_reduced([P("a"), P("A")])
    with pytest.raises(InvalidInputError):
        is_nielsen_reduced([P("")])


def test_geodesic_basis_is_nielsen_reduced():
    rng = Random(25)
    for _ in range(30):
        g = rand_subgroup(rng, AB)
        b = basis(g, spanning_tree(g, geodesic=True))
        if b.elements:
            assert is_nielsen_reduced(b.elements)


# -- index, cosets, normality ---------------------------------------------------


def test_index_examples():
    kernel = stallings_graph(AB, [P("aa"), P("b"), P("abA")])
    assert index(kernel) == 2
    assert index(stallings_graph(AB, [P("aa")])) is None
    assert index(full_group(AB)) == 1


def test_coset_soundness():
    rng = Random(26)
    kernel = stallings_graph(AB, [P("aa"), P("b"), P("abA")])
    reps = coset_representatives(kernel)
    assert len(reps) == 2
    for _ in range(50):
        w = rand_word(rng, AB, 8)
        hits = [r for r in reps if contains(kernel, multiply(w, invert(r)))]
        assert len(hits) == 1


def test_schreier_examples():
    assert schreier_check(stallings_graph(AB, [P("aa"), P("b"), P("abA")]))
    assert schreier_check(full_group(AB))
    with pytest.raises(InvalidInputError):
        schreier_check(stallings_graph(AB, [P("aa")]))


def test_is_normal_examples():
    assert is_normal(stallings_graph(AB, [P("aa"), P("b"), P("abA")]))
    assert not is_normal(stallings_graph(AB, [P("a")]))
    assert is_normal(trivial_subgroup(AB))
    assert is_normal(full_group(AB))


def test_is_normal_regular_but_asymmetric():
    # an index-3 completion: X-regular, yet some vertex is not an
    # equivalent base, so condition (2) of the normality test fails
    from freegroups.graph import regular_complete

    g = SubgroupGraph(
        regular_complete(stallings_graph(AB, [P("aba")]).graph), 0
    )
    assert index(g) == 3
    assert not is_normal(g)


def test_index_of_trivial_subgroup():
    from freegroups.words import Alphabet

    assert index(trivial_subgroup(AB)) is None
    assert index(trivial_subgroup(Alphabet(""))) == 1  # F itself is trivial


def test_normal_conjugation_invariance():
    rng = Random(27)
    checked = 0
    for _ in range(40):
        from freegroups.graph import regular_complete

        h = rand_subgroup(rng, AB, max_vertices=6)
        g = SubgroupGraph(regular_complete(h.graph), h.base)
        if is_normal(g):
            checked += 1
            for letter in ("a", "b"):
                assert based_isomorphism(conjugate(g, P(letter)).based, g.based)
    assert checked >= 1


# -- conjugation ----------------------------------------------------------------


def test_conjugate_examples():
    a2 = stallings_graph(AB, [P("aa")])
    assert conjugate(a2, P("b")) == stallings_graph(AB, [P("baaB")])
    member = stallings_graph(AB, [P("ab"), P("Ba")])
    assert conjugate(member, P("ab")) == member  # conjugation by a member
    assert conjugate(a2, P("a")) == a2


def test_conjugate_involution_and_type_invariance():
    rng = Random(28)
    for _ in range(20):
        h = rand_subgroup(rng, AB)
        g = rand_word(rng, AB, 5)
        c = conjugate(h, g)
        assert conjugate(c, invert(g)) == h
        assert isomorphic(type_graph(c.based), type_graph(h.based))


def test_conjugacy_equivalent_examples():
    a2 = stallings_graph(AB, [P("aa")])
    moved = stallings_graph(AB, [P("baaB")])
    g = conjugacy_equivalent(a2, moved)
    assert g is not None and conjugate(a2, g) == moved
    assert format_word(g) == "b"
    assert conjugacy_equivalent(
        stallings_graph(AB, [P("a")]), stallings_graph(AB, [P("b")])
    ) is None
    assert conjugacy_equivalent(a2, a2) == P("")


def test_conjugate_into_examples():
    moved = stallings_graph(AB, [P("baaB")])
    target = stallings_graph(AB, [P("a")])
    g = conjugate_into(moved, target)
    assert g is not None
    assert canonical_morphism(conjugate(moved, g).based, target.based) is not None
    assert conjugate_into(stallings_graph(AB, [P("b")]), target) is None
    assert conjugate_into(stallings_graph(AB, [P("aa")]), target) == P("")


def test_power_in_examples():
    assert power_in(stallings_graph(AB, [P("aaa")]), P("a")) == 3
    h = stallings_graph(AB, [P("ab"), P("Ba")])
    assert power_in(h, P("ab")) == 1
    assert power_in(stallings_graph(AB, [P("a")]), P("b")) is None
    with pytest.raises(InvalidInputError):
        power_in(h, P(""))


def test_conjugacy_roundtrip_random():
    rng = Random(31)
    for _ in range(20):
        h = rand_subgroup(rng, AB, max_vertices=7)
        g = rand_word(rng, AB, 5)
        k = conjugate(h, g)
        witness = conjugacy_equivalent(h, k)
        assert witness is not None
        assert conjugate(h, witness) == k


def test_conjugacy_none_verdict_brute_force():
    # when the type graphs rule conjugacy out, no short conjugator exists
    from freegroups.words import reduced_words

    rng = Random(35)
    for _ in range(10):
        h = rand_subgroup(rng, AB, max_vertices=5)
        k = rand_subgroup(rng, AB, max_vertices=5)
        if conjugacy_equivalent(h, k) is not None:
            continue
        for g in reduced_words(AB, 3):
            assert conjugate(h, g) != k


def test_conjugate_into_random():
    rng = Random(32)
    for _ in range(15):
        k = rand_subgroup(rng, AB, max_vertices=5)
        g = rand_word(rng, AB, 4)
        extra = rand_subgroup(rng, AB, max_vertices=4)
        h = join(conjugate(k, g), extra)
        witness = conjugate_into(k, h)
        assert witness is not None
        assert canonical_morphism(conjugate(k, witness).based, h.based) is not None


def test_conjugate_language_shift():
    rng = Random(33)
    for _ in range(10):
        gens = rand_gens(rng, AB, 2, 4)
        h = stallings_graph(AB, gens)
        g = rand_word(rng, AB, 4)
        c = conjugate(h, g)
        for w in list(product_words(gens, 3))[:20]:
            shifted = multiply(g, multiply(w, invert(g)))
            assert contains(c, shifted)
            assert contains(h, w) == contains(c, shifted)


def test_rewrite_agrees_with_contains():
    rng = Random(34)
    for _ in range(10):
        h = rand_subgroup(rng, AB)
        tree = spanning_tree(h)
        for _ in range(30):
            w = rand_word(rng, AB, 7)
            try:
                rewrite_in_basis(h, tree, w)
                member = True
            except NotAMemberError:
                member = False
            assert member == contains(h, w)


def test_power_in_least_exponent():
    rng = Random(29)
    from helpers import exponents_in

    for _ in range(25):
        h = rand_subgroup(rng, AB)
        g = rand_word(rng, AB, 4, nontrivial=True)
        m = power_in(h, g)
        powers = exponents_in(h, g, limit=h.vertex_count)
        assert m == (min(powers) if powers else None)


# -- Hall completion and joins -----------------------------------------------------


def test_hall_completion_fig7():
    h = stallings_graph(AB, [P("bbAA")])
    result = hall_completion(h, P("ab"))
    assert result.finite_index == 5
    assert not contains(result.subgroup, P("ab"))
    assert is_regular(result.subgroup.graph)
    morphism = canonical_morphism(h.based, result.subgroup.based)
    assert morphism is not None and morphism.is_injective()
    assert [format_word(w) for w in result.basis_h] == ["bbAA"]
    assert len(result.basis_h) + len(result.basis_c) == 6


def test_hall_completion_trivial_subgroup():
    result = hall_completion(trivial_subgroup(AB), P("a"))
    assert result.finite_index == 2
    assert not contains(result.subgroup, P("a"))


def test_hall_completion_on_finite_index_subgroup():
    kernel = stallings_graph(AB, [P("aa"), P("b"), P("abA")])
    result = hall_completion(kernel, P("a"))
    assert result.subgroup == kernel
    assert result.basis_c == ()


def test_hall_completion_rejects_members():
    with pytest.raises(InvalidInputError):
        hall_completion(stallings_graph(AB, [P("aa")]), P("aa"))


def test_hall_completion_properties_random():
    rng = Random(30)
    for _ in range(15):
        h = rand_subgroup(rng, AB, max_vertices=8)
        g = rand_word(rng, AB, 6, nontrivial=True)
        if contains(h, g):
            continue
        result = hall_completion(h, g)
        assert index(result.subgroup) == result.finite_index
        assert not contains(result.subgroup, g)
        m = canonical_morphism(h.based, result.subgroup.based)
        assert m is not None and m.is_injective()
        for w in result.basis_h:
            assert contains(h, w)


def test_join_examples():
    assert join(
        stallings_graph(AB, [P("a")]), stallings_graph(AB, [P("b")])
    ) == full_group(AB)
    h = stallings_graph(AB, [P("abab")])
    assert join(h, trivial_subgroup(AB)) == h
    assert join(
        stallings_graph(AB, [P("aa")]), stallings_graph(AB, [P("aaa")])
    ) == stallings_graph(AB, [P("a")])


def test_rebase_and_relative_index():
    a1 = stallings_graph(AB, [P("a")])
    a4 = stallings_graph(AB, [P("aaaa")])
    assert relative_index(a4, a1) == 4
    assert relative_index(a1, a1) == 1
    inner = rebase_inside(a4, a1)
    assert rank(inner) == 1
    # infinite relative index: <a> inside F(a,b)
    assert relative_index(a1, full_group(AB)) is None


def test_subgroup_graph_validation():
    from freegroups.graph import XDigraph

    with pytest.raises(InvalidInputError):
        SubgroupGraph(XDigraph(AB, 2, [(0, 0, 1)]), 0)  # dangling, not core
    with pytest.raises(InvalidInputError):
        SubgroupGraph(XDigraph(AB, 2, ()), 0)  # disconnected
