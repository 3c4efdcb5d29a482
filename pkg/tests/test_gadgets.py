import pytest

from fcw import gadgets, rewrite
from fcw.rewrite import is_trivial, normal_form
from fcw.scheme import presentation, validate
from fcw.words import FinSupportSeq, Word


def test_b_index_words():
    assert str(gadgets.b_index(2)) == "c^-2 b c^2"
    assert gadgets.b_index(0) == Word.gen("b")
    f = FinSupportSeq.from_map({-1: 2, 3: -1})
    assert gadgets.b_seq(f) == gadgets.b_index(-1) ** 2 * gadgets.b_index(3) ** -1
    assert gadgets.a_seq(f) == Word.gen("a").conj(gadgets.b_seq(f))


def test_letter_names():
    assert gadgets.letter_names(3) == ("t3", "tp3")
    assert gadgets.letter_names(-2) == ("tn2", "tpn2")


@pytest.mark.parametrize("m", [-2, 0, 1, 4])
def test_xi_conjugation_rule(m):
    X = gadgets.Xi(m)
    t, tp = (Word.gen(s) for s in X.stable_letters)
    assert validate(X) == []
    for i in range(-4, 5):
        assert normal_form(X, gadgets.b_index(i).conj(t)) == gadgets.b_index(2 * i - m + 1)
        assert normal_form(X, gadgets.b_index(i).conj(tp)) == gadgets.b_index(2 * i - m)
    assert normal_form(X, Word.gen("c").conj(t)) == Word.gen("c", 2)


def test_xi_morphisms():
    phi = gadgets.xi(0)
    assert str(phi.apply(Word.gen("b") * Word.gen("c"))) == "c^-1 b c^3"


@pytest.mark.parametrize("m", [0, 1, 3, -2])
def test_tail_witness_range(m):
    X = gadgets.Xi(m)
    for i in range(m - 13, m + 13):
        w = gadgets.tail_witness(i, m)
        allowed = {"b", "c", *X.stable_letters}
        assert w.symbols() <= allowed
        assert normal_form(X, w) == gadgets.b_index(i)
    with pytest.raises(ValueError):
        gadgets.tail_witness(m - 1, m, "up")


@pytest.mark.parametrize("m", [0, 2])
@pytest.mark.parametrize("with_a", [False, True])
def test_example_witness_group(m, with_a):
    W = gadgets.two_sided_tail(m, with_a)
    assert validate(W.K) == []
    assert len(W.L.generators) == (5 if with_a else 4)
    assert len(presentation(W.K).relators) == 14
    h = gadgets.b_index(m + 3) * gadgets.b_index(-2) ** -1
    if with_a:
        h = h * Word.gen("a")
    expr = gadgets.two_sided_witness(h, m, with_a)
    assert is_trivial(W.K, W.L.evaluate(expr) * h.inverse()).yes
    assert W.L.member(h).yes
    assert gadgets.two_sided_witness(gadgets.b_index(m - 1) if m > 0 else Word.gen("c"), m,
                                       with_a) is None


def test_benign_intersection_and_join():
    from fcw import subgroup as sg
    from fcw.scheme import Free
    G = Free(["b", "c"], "G")
    A = [sg.StallingsFree(G, [Word.gen("b")]), sg.StallingsFree(G, [Word.gen("b"), Word.gen("c", 2)])]
    WI = gadgets.benign_intersection(G, [(G, a) for a in A], A=A)
    assert WI.L.member(Word.gen("b", 3)).yes
    assert WI.L.member(Word.gen("c", 2)).no
    WJ = gadgets.benign_join(G, [(G, a) for a in A], A=A)
    assert WJ.H.automaton.member(Word.gen("c", 2))
    assert WJ.L.member(Word.gen("c", 2)).yes
    assert sorted(rewrite.stable_letters(WJ.K)) == ["t1", "t2"]


def test_free_factor_adds_no_relators():
    assert len(presentation(gadgets.Theta(2)).relators) == len(presentation(gadgets.Xi(2)).relators)
