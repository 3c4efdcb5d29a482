import pytest

from fcw import gadgets, subgroup as sg
from fcw.scheme import (Amalgam, Extension, Free, Hnn, Star, StarPart, concrete, m_handle,
                        presentation, stable_letter_count, validate)
from fcw.stallings import Morphism
from fcw.words import Word, parse

b, c = Word.gen("b"), Word.gen("c")


def G():
    return Free(["b", "c"], "G")


def test_free_and_hnn_alphabets():
    g = G()
    X = Hnn(g, [Extension("t", sg.StallingsFree(g, [b]), sg.StallingsFree(g, [b]))], "X")
    assert X.alphabet == {"b", "c", "t"}
    assert X.stable_letters == ["t"] or tuple(X.stable_letters) == ("t",)
    assert validate(X) == []
    assert stable_letter_count(X) == {"t": 1}


def test_hnn_presentation_relators():
    X = gadgets.Xi(0)
    pres = presentation(X)
    assert pres.generators == ["b", "c", "t0", "tp0"]
    rels = {str(r) for r in pres.relators}
    assert "t0^-1 b t0 c^-1 b^-1 c" in rels
    assert "tp0^-1 c tp0 c^-2" in rels
    assert len(rels) == 4


def test_validation_flags_bad_morphism():
    g = G()
    A = sg.StallingsFree(g, [b, c])
    B = sg.StallingsFree(g, [b])
    phi = Morphism([b, c], [b, b ** 2], g)
    X = Hnn(g, [Extension("t", A, B, phi)], "X")
    assert validate(X)


def test_validation_flags_stable_letter_clash():
    g = G()
    X = Hnn(g, [Extension("b", sg.StallingsFree(g, [b]), sg.StallingsFree(g, [b]))], "X")
    assert any("stable letter" in d for d in validate(X))


def test_identity_amalgam_needs_equal_subgroups():
    g = G()
    X1 = Hnn(g, [Extension("t", sg.StallingsFree(g, [b]), sg.StallingsFree(g, [b]))], "X1")
    X2 = Hnn(g, [Extension("s", sg.StallingsFree(g, [c]), sg.StallingsFree(g, [c]))], "X2")
    ok = Amalgam(X1, X2, m_handle(X1, g), m_handle(X2, g), name="P")
    assert validate(ok) == []
    bad = Amalgam(X1, X2, sg.make_handle(X1, [b]), m_handle(X2, g), name="Q")
    assert any("equal subgroups" in d for d in validate(bad))
    h = Free(["b", "d"], "H")
    clash = Amalgam(g, h, sg.Trivial(g), sg.Trivial(h), name="R")
    assert any("already introduced" in d for d in validate(clash))


def test_free_product():
    T = gadgets.Theta(2)
    assert validate(T) == []
    assert T.side_of("a") == 0 and T.side_of("t2") == 1


def test_star_expansion_and_presentation():
    W = gadgets.two_sided_tail(0)
    K = W.K
    assert isinstance(K, Star)
    assert validate(K) == []
    pres = presentation(K)
    assert len(pres.generators) == 8
    assert len(pres.relators) == 14
    E = K.expanded
    assert isinstance(E, Amalgam) and E.name == K.name
    assert concrete(K) is E


def test_star_rejects_foreign_common_subgroup():
    g = G()
    X = gadgets.Xi(1, Free(["b", "c"], "Other"))
    L = gadgets.tail_closure(X, 1)
    S = Star(g, [StarPart(X, L, "u")], "S")
    assert validate(S)


def test_m_handle_strategies():
    g = G()
    X = gadgets.Xi(0, g)
    assert isinstance(m_handle(X, g), sg.Lift)
    assert isinstance(m_handle(g, g), sg.Whole)


def test_unknown_symbols_raise():
    with pytest.raises(ValueError):
        G().check_word(parse("b z"))
