import random

import pytest
from hypothesis import given, settings, strategies as st

from fcw import stallings
from fcw.scheme import Free
from fcw.stallings import AmbientMismatch, ForeignSymbol, Morphism, NotAMember
from fcw.words import IDENTITY, Word, parse

from oracles import free_oracle, random_word

F = Free(["a", "b"], "F")
syllable = st.tuples(st.sampled_from("ab"), st.sampled_from((1, -1, 2, -2)))
words = st.lists(syllable, min_size=0, max_size=6).map(Word)
gen_lists = st.lists(st.lists(syllable, min_size=1, max_size=3).map(Word), min_size=1, max_size=3)


def P(text):
    return parse(text, "ab")


def test_membership_examples():
    A = stallings.build(F, [P("a b"), P("b^2")])
    assert A.member(P("a b b^2 b^-1 a^-1"))
    assert A.member(P("b^-2 a b"))
    assert not A.member(P("a"))
    assert not A.member(P("b"))
    assert stallings.rank(A) == 2


def test_folding_detects_dependent_generators():
    A = stallings.build(F, [P("a"), P("a^2")])
    assert A.rank() == 1
    assert A.nonfree


@settings(max_examples=150, deadline=None)
@given(gen_lists, words, st.integers(0, 2 ** 32))
def test_membership_matches_oracle(gens, w, seed):
    verdict = free_oracle(gens, w, "ab", random.Random(seed))
    if verdict is not None:
        assert stallings.build(F, gens).member(w) == verdict


@settings(max_examples=100, deadline=None)
@given(gen_lists, st.lists(st.integers(0, 5), max_size=5), st.randoms())
def test_products_of_generators_are_members_and_expressible(gens, picks, rnd):
    w = IDENTITY
    for p in picks:
        g = gens[p % len(gens)]
        w = w * (g if rnd.random() < 0.5 else g.inverse())
    A = stallings.build(F, gens)
    assert A.member(w)
    x = A.express(w)
    assert A.expand_basis_word(x) == w
    idx = A.express_provided(w)
    value = IDENTITY
    for i in idx:
        value = value * (gens[abs(i) - 1] if i > 0 else gens[abs(i) - 1].inverse())
    assert value == w


@settings(max_examples=100, deadline=None)
@given(gen_lists, gen_lists, words)
def test_intersection_is_conjunction(g1, g2, w):
    A, B = stallings.build(F, g1), stallings.build(F, g2)
    I = stallings.intersect(A, B)
    assert I.member(w) == (A.member(w) and B.member(w))
    for x in I.basis:
        assert A.member(x) and B.member(x)


def test_intersection_example():
    A = stallings.build(F, [P("a b"), P("b^2")])
    B = stallings.build(F, [P("a"), P("b^2")])
    I = stallings.intersect(A, B)
    assert stallings.equal(I, stallings.build(F, [P("b^2"), P("a b^2 a^-1")]))


@settings(max_examples=100, deadline=None)
@given(gen_lists, words)
def test_coset_representatives(gens, g):
    A = stallings.build(F, gens)
    h = IDENTITY
    for x in gens:
        h = h * x
    r = A.coset_rep(g)
    assert A.member(r * g.inverse())
    assert A.coset_rep(h * g) == r
    assert A.coset_rep(r) == r


def test_containment_and_equality():
    A = stallings.build(F, [P("a"), P("b")])
    B = stallings.build(F, [P("a b"), P("b")])
    C = stallings.build(F, [P("a^2")])
    assert stallings.equal(A, B)
    assert stallings.contains(A, C) and not stallings.contains(C, A)


@settings(max_examples=60, deadline=None)
@given(gen_lists, gen_lists, words)
def test_find_split(gs, gg, h):
    S, G = stallings.build(F, gs), stallings.build(F, gg)
    u = stallings.find_split(h, S, G)
    if u is not None:
        assert S.member(u) and G.member(u.inverse() * h)
    for s in stallings.enumerate_products(gs, 2):
        for g in stallings.enumerate_products(gg, 1):
            if s * g == h:
                assert u is not None


def test_morphism_is_a_homomorphism():
    phi = Morphism([P("a"), P("b")], [P("b a b^-1"), P("b^2")], F)
    rng = random.Random(3)
    for _ in range(100):
        x, y = random_word(rng, "ab", 5), random_word(rng, "ab", 5)
        assert phi.apply(x * y) == phi.apply(x) * phi.apply(y)
        assert phi.inverse().apply(phi.apply(x)) == x
    assert phi.problems() == []


def test_morphism_errors():
    phi = Morphism([P("a")], [P("b")], F)
    with pytest.raises(NotAMember):
        phi.apply(P("b"))
    bad = Morphism([P("a"), P("b")], [P("a"), P("a^2")], F)
    assert bad.problems()
    with pytest.raises(ForeignSymbol):
        stallings.build(F, [Word.gen("z")])
    G = Free(["a", "b", "c"], "G")
    with pytest.raises(AmbientMismatch):
        stallings.intersect(stallings.build(F, [P("a")]), stallings.build(G, [P("a")]))


def test_dot_export():
    text = stallings.build(F, [P("a b a^-1")]).to_dot("H")
    assert text.startswith("digraph H {") and "doublecircle" in text
