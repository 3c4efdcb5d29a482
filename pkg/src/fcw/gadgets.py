"""Concrete groups and subgroups built from ``b_i = b^(c^i)``.

``Xi(m)`` is the HNN-extension of ``<b, c>`` by ``t_m, t'_m`` with

    b^t_m = b_(1-m),  b^t'_m = b_(-m),  c^t_m = c^t'_m = c^2,

so that ``b_i^t_m = b_(2i-m+1)`` and ``b_i^t'_m = b_(2i-m)``.  The tails
``<b_m, b_(m+1), ...>`` and ``<..., b_(m-2), b_(m-1)>`` are the intersections of
``<b, c>`` with ``<b_m, t_m, t'_m>`` and ``<b_(m-1), t_m, t'_m>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import subgroup as sg
from .scheme import Amalgam, Extension, Free, Hnn, Node, Star, StarPart, m_handle
from .stallings import Morphism
from .subgroup import BIndexStream, IndexSet, StableClosure, StallingsFree, StreamHandle
from .words import IDENTITY, FinSupportSeq, Word, product


def b_index(i: int) -> Word:
    """``b_i = c^-i b c^i``."""
    return sg.b_index_word(i)


def b_seq(f: FinSupportSeq) -> Word:
    """``prod b_i^f(i)`` in increasing index order."""
    return product(b_index(i) ** v for i, v in f.entries)


def a_seq(f: FinSupportSeq) -> Word:
    return Word.gen("a").conj(b_seq(f))


def letter_names(m: int) -> tuple[str, str]:
    tag = str(m) if m >= 0 else f"n{-m}"
    return f"t{tag}", f"tp{tag}"


def _bc(base: Node | None) -> Node:
    return base if base is not None else Free(["b", "c"], "G")


def xi(m: int, base: Node | None = None) -> Morphism:
    base = _bc(base)
    return Morphism([Word.gen("b"), Word.gen("c")], [b_index(1 - m), Word.gen("c", 2)],
                    base, name=f"xi{m}")


def xi_prime(m: int, base: Node | None = None) -> Morphism:
    base = _bc(base)
    return Morphism([Word.gen("b"), Word.gen("c")], [b_index(-m), Word.gen("c", 2)],
                    base, name=f"xip{m}")


def Xi(m: int, base: Node | None = None, names: Sequence[str] | None = None,
       name: str | None = None) -> Hnn:
    base = _bc(base)
    t, tp = names if names is not None else letter_names(m)
    whole = StallingsFree(base, [Word.gen("b"), Word.gen("c")], name="BC")
    phi, phip = xi(m, base), xi_prime(m, base)
    B = StallingsFree(base, list(phi.codomain.generators), name=f"B{t}")
    Bp = StallingsFree(base, list(phip.codomain.generators), name=f"B{tp}")
    return Hnn(base, [Extension(t, whole, B, phi), Extension(tp, whole, Bp, phip)],
               name=name or f"Xi{m}")


def Theta(m: int, xi_node: Hnn | None = None, name: str | None = None) -> Amalgam:
    """``<a> * Xi(m)``."""
    X = xi_node if xi_node is not None else Xi(m)
    A = Free(["a"], "Fa")
    return Amalgam(A, X, sg.Trivial(A), sg.Trivial(X), None, name=name or f"Theta{m}")


def tail_stream(m: int, direction: str = "up", extras: Sequence[str] = ()) -> BIndexStream:
    """``b_m, b_(m+1), ...`` (up) or ``b_(m-1), b_(m-2), ...`` (down)."""
    if direction == "up":
        dom = IndexSet.up(m)
    elif direction == "down":
        dom = IndexSet.down(m)
    else:
        raise ValueError(f"direction must be up or down, not {direction!r}")
    return BIndexStream(dom, extras=tuple(extras), name=f"tail_{direction}{m}")


def tail_closure(X: Hnn, m: int, direction: str = "up", name: str | None = None,
                 check: bool = True) -> StableClosure:
    """``<b_m, t_m, t'_m>`` (up) or ``<b_(m-1), t_m, t'_m>`` (down) in ``Xi(m)``."""
    t, tp = X.stable_letters
    seed = b_index(m if direction == "up" else m - 1)
    stream = StreamHandle(X.base, tail_stream(m, direction))
    return StableClosure(X, stream, [t, tp], [seed, Word.gen(t), Word.gen(tp)],
                         name=name or ("L" if direction == "up" else "Ldown"), check=check)


def tail_witness(i: int, m: int, direction: str | None = None,
                 names: Sequence[str] | None = None) -> Word:
    """A word over ``b_m, t_m, t'_m`` (or ``b_(m-1), ...``) equal to ``b_i`` in ``Xi(m)``.

    Each step inverts one of ``b_j^t = b_(2j-m+1)`` or ``b_j^t' = b_(2j-m)``.
    """
    if direction is None:
        direction = "up" if i >= m else "down"
    if direction == "up" and i < m or direction == "down" and i > m - 1:
        raise ValueError(f"index {i} is on the wrong side of {m} for {direction}")
    t, tp = (Word.gen(x) for x in (names if names is not None else letter_names(m)))
    base = m if direction == "up" else m - 1
    steps = []
    while i != base:
        if (i - m) % 2 == 0:
            i, by = (i + m) // 2, tp
        else:
            i, by = (i + m - 1) // 2, t
        steps.append(by)
    out = b_index(base)
    for by in reversed(steps):
        out = out.conj(by)
    return out


# benign witnesses


@dataclass
class BenignWitness:
    """``K`` finitely presented, ``L <= K`` finitely generated, claim ``G & L = H``.

    ``G`` is a free group whose symbols are read in ``K`` unchanged.
    """

    G: Node
    H: object
    K: Node
    L: sg.SubgroupHandle
    name: str = ""
    extra: dict | None = None


def _star(G: Node, parts, letters, name):
    if letters is None:
        letters = [f"t{i + 1}" for i in range(len(parts))]
    star = Star(G, [StarPart(K, L, t) for (K, L), t in zip(parts, letters)], name=name)
    return star, list(letters)


def _g_in(K: Node, G: Node) -> sg.SubgroupHandle:
    return m_handle(K, G)


def benign_intersection(G: Node, parts, letters: Sequence[str] | None = None,
                        A: Sequence[sg.SubgroupHandle] | None = None,
                        name: str = "KI") -> BenignWitness:
    """``K = star of (K_i, L_i, t_i)`` over ``G`` and ``L = G^(t_1 ... t_r)``."""
    K, letters = _star(G, parts, letters, name)
    by = product(Word.gen(t) for t in letters)
    L = sg.Conjugated(_g_in(K, G), by, name="LI")
    H = None
    if A is not None and all(isinstance(a, StallingsFree) for a in A):
        from .stallings import intersect
        aut = A[0].automaton
        for a in A[1:]:
            aut = intersect(aut, a.automaton)
        H = StallingsFree(G, list(aut.basis), name="I")
    return BenignWitness(G, H, K, L, name)


def benign_join(G: Node, parts, letters: Sequence[str] | None = None,
                A: Sequence[sg.SubgroupHandle] | None = None, name: str = "KJ",
                depth: int = 12) -> BenignWitness:
    """Same ``K``, with ``L = <G^t_1, ..., G^t_r>``."""
    K, letters = _star(G, parts, letters, name)
    gens = [g.conj(Word.gen(t)) for t in letters for g in sg.node_generators(G)]
    L = sg.BoundedSearch(K, gens, depth=depth, name="LJ")
    H = None
    if A is not None and all(isinstance(a, StallingsFree) for a in A):
        gj: list = []
        for a in A:
            gj.extend(x for x in a.generators if x not in gj)
        H = StallingsFree(G, gj, name="J")
    return BenignWitness(G, H, K, L, name)


def two_sided_tail(m: int, with_a: bool = False, depth: int = 12) -> BenignWitness:
    """Both tails of the ``b_i`` at once: ``H = <b_i : i <= -1 or i >= m>``.

    ``K = (Xi(m) *_L1 u) *_<b,c> (Xi'(0) *_L2 v)`` with ``L1 = <b_m, t_m, t'_m>``,
    ``L2 = <b_-1, t_0, t'_0>`` and ``L = <b^u, c^u, b^v, c^v>``.  With ``with_a``
    the group is ``<a> * K`` and ``L`` gains ``a``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    G = Free(["b", "c"], "G")
    K1 = Xi(m, G, name=f"Xi{m}")
    K2 = Xi(0, G, names=("t0v", "tp0v"), name="Xi0v")
    L1 = tail_closure(K1, m, "up", name="L1")
    L2 = tail_closure(K2, 0, "down", name="L2")
    K = Star(G, [StarPart(K1, L1, "u"), StarPart(K2, L2, "v")], name=f"KJ{m}")
    gens = [Word.gen(x).conj(Word.gen(s)) for s in ("u", "v") for x in ("b", "c")]
    dom = IndexSet(at_least=m, at_most=-1)
    if not with_a:
        H = StreamHandle(G, BIndexStream(dom, name="H"), name="H")
        L = sg.BoundedSearch(K, gens, depth=depth, name="LJ",
                             hint=lambda w: _hint(w, m, False))
        return BenignWitness(G, H, K, L, f"two_sided_{m}", {"K1": K1, "K2": K2, "L1": L1, "L2": L2})
    Fa = Free(["a"], "Fa")
    Ka = Amalgam(Fa, K, sg.Trivial(Fa), sg.Trivial(K), None, name=f"aKJ{m}")
    Ga = Free(["a", "b", "c"], "Gabc")
    H = StreamHandle(Ga, BIndexStream(dom, extras=("a",), name="Ha"), name="Ha")
    L = sg.BoundedSearch(Ka, [Word.gen("a")] + gens, depth=depth, name="LJa",
                         hint=lambda w: _hint(w, m, True))
    return BenignWitness(Ga, H, Ka, L, f"two_sided_a_{m}", {"K1": K1, "K2": K2, "L1": L1, "L2": L2})


def two_sided_witness(w: Word, m: int, with_a: bool = False) -> Word | None:
    """Expression over the generators of ``L`` for an element of ``H``, or None.

    Generators are numbered as in ``two_sided_tail``: ``g1 = b^u, g2 = c^u,
    g3 = b^v, g4 = c^v`` (shifted by one after ``g1 = a`` when ``with_a``).
    """
    stream = BIndexStream(IndexSet(at_least=m, at_most=-1), extras=("a",) if with_a else ())
    form = stream.index_form(w)
    if form is None or not stream.contains(w):
        return None
    off = 1 if with_a else 0
    out = IDENTITY
    for sym, i, e in form:
        if sym == "a":
            out = out * Word.gen("g1", e)
            continue
        b, c = (f"g{1 + off}", f"g{2 + off}") if i >= m else (f"g{3 + off}", f"g{4 + off}")
        out = out * Word.gen(b, e).conj(Word.gen(c, i))
    return out


def _hint(w: Word, m: int, with_a: bool) -> Word | None:
    allowed = {"a", "b", "c"} if with_a else {"b", "c"}
    if not w.symbols() <= allowed:
        return None
    return two_sided_witness(w, m, with_a)
