"""Subgroup handles: a subgroup of a scheme's group plus a way to decide membership.

Exact strategies:

* ``Whole`` / ``Trivial``
* ``StallingsFree``: finitely generated subgroup of a free group
* ``Lift``: a subgroup of one factor (or the base) seen in the bigger group
* ``Conjugated``: ``H^g`` decided through ``H``
* ``StableClosure``: ``<G', T>`` in an HNN-extension with free base, by peeling
  stable letters from the right
* ``AmalgamClosure``: ``<G', H'>`` in an amalgam, by the same peeling
* ``StreamHandle``: ``<b_i : i in I>`` (and optionally ``a``) in ``F(b, c, ...)``

``BoundedSearch`` is the partial fallback: it only ever answers Yes or Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from . import stallings
from .rewrite import (NO_VERDICT, HnnNormalForm, UnsupportedMembership,
                      Unknown, Verdict, Yes, _transport, britton_reduce, britton_stack,
                      is_canonical, normal_form, amalgam_reduce)
from .scheme import Amalgam, Free, Hnn, Node, concrete
from .words import IDENTITY, Word


class NotFinitelyGenerated(ValueError):
    pass


class IncompatibleSubgroup(ValueError):
    pass


def node_generators(X: Node) -> tuple[Word, ...]:
    X = concrete(X)
    if isinstance(X, Free):
        return tuple(Word.gen(g) for g in X.gens)
    if isinstance(X, Hnn):
        return node_generators(X.base) + tuple(Word.gen(t) for t in X.stable_letters)
    if isinstance(X, Amalgam):
        out = list(node_generators(X.left))
        out += [g for g in node_generators(X.right) if g not in out]
        return tuple(out)
    raise TypeError(f"not a scheme node: {X!r}")


def _expr_word(expr) -> Word:
    return Word((f"g{abs(i)}", 1 if i > 0 else -1) for i in expr)


class SubgroupHandle:
    strategy = "abstract"
    exact = True

    def __init__(self, ambient: Node, name: str | None = None):
        self.ambient = ambient
        self.name = name

    @property
    def generators(self) -> tuple[Word, ...] | None:
        return None

    def member(self, w: Word) -> Verdict:
        raise NotImplementedError

    def has_transversal(self) -> bool:
        return False

    def coset_rep(self, x: Word) -> Word:
        raise NotImplementedError(f"{self.strategy} handles have no canonical transversal")

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<{self.strategy}{label} in {self.ambient.name}>"


def finite_generators(h: SubgroupHandle) -> tuple[Word, ...]:
    gens = h.generators
    if gens is None:
        raise NotFinitelyGenerated(f"{h!r} has no finite generating set")
    return tuple(gens)


class Whole(SubgroupHandle):
    strategy = "Whole"

    @property
    def generators(self):
        return node_generators(self.ambient)

    def member(self, w):
        try:
            return Yes(normal_form(self.ambient, w))
        except UnsupportedMembership as exc:
            return Unknown(str(exc))

    def has_transversal(self):
        return True

    def coset_rep(self, x):
        return IDENTITY


class Trivial(SubgroupHandle):
    strategy = "Trivial"

    @property
    def generators(self):
        return ()

    def member(self, w):
        try:
            return NO_VERDICT if normal_form(self.ambient, w) else Yes(IDENTITY)
        except UnsupportedMembership as exc:
            return Unknown(str(exc))

    def has_transversal(self):
        return is_canonical(self.ambient)

    def coset_rep(self, x):
        return normal_form(self.ambient, x)


class StallingsFree(SubgroupHandle):
    strategy = "StallingsFree"

    def __init__(self, ambient: Node, generators: Sequence[Word], name: str | None = None):
        super().__init__(ambient, name)
        if not isinstance(concrete(ambient), Free):
            raise TypeError("StallingsFree needs a free ambient group")
        self._generators = tuple(generators)
        self.automaton = stallings.build(concrete(ambient), self._generators)

    @property
    def generators(self):
        return self._generators

    def member(self, w):
        if not self.automaton.member(w):
            return NO_VERDICT
        expr = self.automaton.express_provided(w)
        return Yes(w, _expr_word(expr) if expr is not None else None)

    def has_transversal(self):
        return True

    def coset_rep(self, x):
        return self.automaton.coset_rep(x)


class Lift(SubgroupHandle):
    """A subgroup of the base (``"base"``) or of a factor (``"left"``/``"right"``).

    Membership holds iff the reduced form is a single piece of that factor and
    the piece lies in the inner subgroup.
    """

    strategy = "Factor"

    def __init__(self, ambient: Node, step: str, inner: SubgroupHandle, name: str | None = None):
        super().__init__(ambient, name or inner.name)
        X = concrete(ambient)
        if step == "base":
            ok = isinstance(X, Hnn) and inner.ambient is X.base
        elif step in ("left", "right"):
            ok = isinstance(X, Amalgam) and inner.ambient is X.factor(step == "right")
        else:
            ok = False
        if not ok:
            raise ValueError(f"cannot lift {inner!r} along {step!r} into {ambient.name}")
        self.step = step
        self.inner = inner

    @property
    def generators(self):
        return self.inner.generators

    def member(self, w):
        X = concrete(self.ambient)
        try:
            if isinstance(X, Hnn):
                f = britton_stack(X, w)
                if f.tail:
                    return NO_VERDICT
                return self.inner.member(f.head)
            f = amalgam_reduce(X, [w])
            if f.tail:
                return NO_VERDICT
            want = 1 if self.step == "right" else 0
            x = f.head
            if not x:
                return Yes(IDENTITY)
            if f.head_side != want:
                v = X.handle(f.head_side).member(x)
                if v.unknown:
                    return v
                if not v.yes:
                    return NO_VERDICT
                x = _transport(X, f.head_side, x, v)
            return self.inner.member(x)
        except UnsupportedMembership as exc:
            return Unknown(str(exc))

    def has_transversal(self):
        X = concrete(self.ambient)
        return isinstance(X, Hnn) and is_canonical(X) and self.inner.has_transversal()

    def coset_rep(self, x):
        X = concrete(self.ambient)
        f = britton_reduce(X, x)
        return self.inner.coset_rep(f.head) * HnnNormalForm(IDENTITY, f.tail).word()


Factor = Lift


def factor_handle(X: Node, step: str) -> Lift:
    """The factor itself as a subgroup of ``X``."""
    Xc = concrete(X)
    child = Xc.base if step == "base" else Xc.factor(step == "right")
    return Lift(X, step, Whole(child))


class Conjugated(SubgroupHandle):
    """``H^g = g^-1 H g``; ``x`` is a member iff ``g x g^-1`` is in ``H``."""

    strategy = "Conjugated"

    def __init__(self, inner: SubgroupHandle, by: Word, name: str | None = None):
        super().__init__(inner.ambient, name)
        self.inner = inner
        self.by = by
        self.exact = inner.exact

    @property
    def generators(self):
        gens = self.inner.generators
        return None if gens is None else tuple(g.conj(self.by) for g in gens)

    def member(self, w):
        v = self.inner.member(self.by * w * self.by.inverse())
        if v.yes:
            return Yes(w, v.expr)
        return v


# index streams


@dataclass(frozen=True)
class IndexSet:
    """``{i >= at_least} | {i <= at_most}``; a missing bound contributes nothing."""

    at_least: int | None = None
    at_most: int | None = None

    @classmethod
    def up(cls, m: int) -> "IndexSet":
        return cls(at_least=m)

    @classmethod
    def down(cls, m: int) -> "IndexSet":
        """Indices ``<= m - 1``."""
        return cls(at_most=m - 1)

    def __contains__(self, i: int) -> bool:
        return ((self.at_least is not None and i >= self.at_least)
                or (self.at_most is not None and i <= self.at_most))

    def boundaries(self) -> list[int]:
        return [b for b in (self.at_least, self.at_most) if b is not None]

    def ordered(self) -> Iterator[int]:
        """Indices by distance from the boundary, the upward side first."""
        k = 0
        while True:
            if self.at_least is not None:
                yield self.at_least + k
            if self.at_most is not None:
                yield self.at_most - k
            k += 1

    def within(self, radius: int) -> list[int]:
        return [i for i in range(-radius, radius + 1) if i in self]

    def __str__(self) -> str:
        parts = []
        if self.at_most is not None:
            parts.append(f"<={self.at_most}")
        if self.at_least is not None:
            parts.append(f">={self.at_least}")
        return " | ".join(parts)


@dataclass(frozen=True)
class GeneratorStream:
    domain: IndexSet
    rule: Callable[[int], Word]
    name: str = ""

    def indices(self, k: int) -> list[int]:
        out = []
        for i in self.domain.ordered():
            if len(out) >= k:
                break
            out.append(i)
        return out

    def first(self, k: int) -> list[Word]:
        return [self.rule(i) for i in self.indices(k)]

    truncation = first


def b_index_word(i: int, base: str = "b", conj: str = "c") -> Word:
    """``c^-i b c^i``."""
    return Word(((conj, -i), (base, 1), (conj, i)))


@dataclass(frozen=True)
class BIndexStream:
    """``<b_i : i in domain>`` together with the fixed symbols ``extras``.

    Inside ``F(b, c, extras)`` the kernel of the ``c``-exponent sum is free on the
    conjugates ``x_i = c^-i x c^i``, so membership is read off from the indices.
    """

    domain: IndexSet
    base: str = "b"
    conj: str = "c"
    extras: tuple[str, ...] = ()
    name: str = ""

    def rule(self, i: int) -> Word:
        return b_index_word(i, self.base, self.conj)

    def as_generator_stream(self) -> GeneratorStream:
        return GeneratorStream(self.domain, self.rule, self.name)

    def first(self, k: int) -> list[Word]:
        return [Word.gen(x) for x in self.extras] + self.as_generator_stream().first(k)

    truncation = first

    def indices(self, k: int) -> list[int]:
        return self.as_generator_stream().indices(k)

    def seeds(self) -> list[Word]:
        return [Word.gen(x) for x in self.extras] + [self.rule(i) for i in self.domain.boundaries()]

    def index_form(self, w: Word):
        """``[(symbol, index, exponent)]`` over the conjugates, or None off the kernel."""
        p = 0
        out = []
        for sym, exp in w.syllables:
            if sym == self.conj:
                p += exp
            elif sym == self.base or sym in self.extras:
                out.append((sym, -p, exp))
            else:
                return None
        if p != 0:
            return None
        return out

    def contains(self, w: Word) -> bool:
        form = self.index_form(w)
        if form is None:
            return False
        for sym, i, _ in form:
            if sym == self.base:
                if i not in self.domain:
                    return False
            elif i != 0:
                return False
        return True

    def max_index(self, w: Word) -> int:
        """Largest ``|index|`` of a ``b`` syllable, the certified truncation radius."""
        form = self.index_form(w) or []
        return max((abs(i) for s, i, _ in form if s == self.base), default=0)

    def window(self, radius: int) -> list[Word]:
        return [Word.gen(x) for x in self.extras] + [self.rule(i) for i in self.domain.within(radius)]

    def __str__(self) -> str:
        head = "".join(f"{x}, " for x in self.extras)
        return f"<{head}{self.base}_i : i {self.domain}>"


def _max_prefix(w: Word, conj: str) -> int:
    p = best = 0
    for sym, exp in w.syllables:
        if sym == conj:
            p += exp
            best = max(best, abs(p))
    return best


class StreamHandle(SubgroupHandle):
    strategy = "Stream"

    def __init__(self, ambient: Node, stream: BIndexStream, name: str | None = None):
        super().__init__(ambient, name or stream.name or None)
        if not isinstance(concrete(ambient), Free):
            raise TypeError("stream subgroups live in free groups")
        need = {stream.base, stream.conj, *stream.extras}
        if not need <= concrete(ambient).alphabet:
            raise ValueError(f"ambient lacks {sorted(need - concrete(ambient).alphabet)}")
        self.stream = stream
        self._windows: dict[int, stallings.SubgroupAutomaton] = {}

    def member(self, w):
        concrete(self.ambient).check_word(w)
        if not self.stream.contains(w):
            return NO_VERDICT
        form = self.stream.index_form(w)
        expr = Word((f"{s}{i}" if i >= 0 else f"{s}m{-i}", e) for s, i, e in form)
        return Yes(w, expr)

    def truncated(self, k: int) -> StallingsFree:
        return StallingsFree(self.ambient, self.stream.first(k))

    def truncated_member(self, w: Word) -> bool:
        """Membership in the truncation at the certified radius for ``w``."""
        r = self.stream.max_index(w)
        return self.window_automaton(r).member(w)

    def window_automaton(self, radius: int) -> stallings.SubgroupAutomaton:
        aut = self._windows.get(radius)
        if aut is None:
            aut = stallings.build(concrete(self.ambient), self.stream.window(radius))
            self._windows[radius] = aut
        return aut

    def split_radius(self, h: Word, S: stallings.SubgroupAutomaton) -> int:
        b0 = max((abs(b) for b in self.stream.domain.boundaries()), default=0)
        b0 += _max_prefix(h, self.stream.conj) + 1
        r = b0 + 2 * (S.n_states + 1) ** 2 + 2
        return -(-r // 8) * 8

    def find_split(self, h: Word, S: stallings.SubgroupAutomaton, scale: int = 1):
        """Some ``u`` in ``S`` with ``u^-1 h`` in the stream subgroup, or None."""
        return stallings.find_split(h, S, self.window_automaton(scale * self.split_radius(h, S)))


def _split(S: SubgroupHandle, G: SubgroupHandle, h: Word):
    """Some ``u`` in ``S`` with ``u^-1 h`` in ``G``, or None."""
    if isinstance(S, Whole):
        return h
    if isinstance(S, Trivial):
        return IDENTITY if G.member(h).yes else None
    if not isinstance(S, StallingsFree):
        raise TypeError(f"cannot split over {S!r}")
    if isinstance(G, StallingsFree):
        return stallings.find_split(h, S.automaton, G.automaton)
    if isinstance(G, StreamHandle):
        return G.find_split(h, S.automaton)
    if isinstance(G, Whole):
        return IDENTITY
    raise TypeError(f"cannot split into {G!r}")


# compatibility of a base subgroup with the associated isomorphisms

COMPAT_WINDOW = 12


def verify_compatibility(Gp: SubgroupHandle, node: Hnn, letters=None) -> bool:
    """Whether ``phi(Gp & A) = Gp & B`` for each stable letter in scope.

    Exact for finitely generated ``Gp``; for streams the intersections are taken
    over a window of indices around the stream boundaries.
    """
    X = concrete(node)
    if not isinstance(X, Hnn) or Gp.ambient is not X.base:
        raise ValueError("subgroup must live in the base of the HNN-extension")
    for ext in X.extensions:
        if letters is not None and ext.stable not in letters:
            continue
        if ext.fixes:
            continue
        if isinstance(Gp, Whole):
            continue
        A, B = ext.A.automaton, ext.B.automaton
        phi, inv = ext.phi, ext.phi.inverse()
        if isinstance(Gp, StallingsFree):
            Ap = stallings.intersect(Gp.automaton, A)
            Bp = stallings.intersect(Gp.automaton, B)
            if not stallings.equal(stallings.subgroup_image(phi, Ap), Bp):
                return False
        elif isinstance(Gp, StreamHandle):
            radius = max((abs(b) for b in Gp.stream.domain.boundaries()), default=0) + COMPAT_WINDOW
            win = Gp.window_automaton(radius)
            for x in stallings.intersect(win, A).basis:
                if not Gp.member(phi.apply(x)).yes:
                    return False
            for y in stallings.intersect(win, B).basis:
                if not Gp.member(inv.apply(y)).yes:
                    return False
        else:
            raise TypeError(f"cannot check compatibility of {Gp!r}")
    return True


class StableClosure(SubgroupHandle):
    """``<G', T>`` in an HNN-extension whose base is free.

    ``G'`` is a finitely generated or stream subgroup of the base, compatible with
    every isomorphism of a letter in ``T``.  ``generators`` may give a finite
    generating set when ``G'`` itself is a stream.
    """

    strategy = "StableClosure"

    def __init__(self, ambient: Node, base_sub: SubgroupHandle, letters: Sequence[str],
                 generators: Sequence[Word] | None = None, name: str | None = None,
                 check: bool = True):
        super().__init__(ambient, name)
        X = concrete(ambient)
        if not isinstance(X, Hnn) or not isinstance(X.base, Free):
            raise TypeError("StableClosure needs an HNN-extension of a free group")
        if base_sub.ambient is not X.base:
            raise ValueError("base subgroup must live in the base")
        unknown = set(letters) - set(X.stable_letters)
        if unknown:
            raise ValueError(f"not stable letters of {X.name}: {sorted(unknown)}")
        self.base_sub = base_sub
        self.letters = tuple(letters)
        if check and not verify_compatibility(base_sub, X, self.letters):
            raise IncompatibleSubgroup(f"{base_sub!r} is not compatible with {self.letters}")
        if generators is None:
            seeds = base_sub.generators
            if seeds is None:
                seeds = base_sub.stream.seeds()
            generators = tuple(seeds) + tuple(Word.gen(t) for t in self.letters)
        self._generators = tuple(generators)

    @property
    def generators(self):
        return self._generators

    def member(self, w):
        X = concrete(self.ambient)
        try:
            f = britton_stack(X, w)
        except UnsupportedMembership as exc:
            return Unknown(str(exc))
        if any(t not in self.letters for t, _, _ in f.tail):
            return NO_VERDICT
        carry = IDENTITY
        for t, s, g in reversed(f.tail):
            ext = X.by_letter[t]
            h = g * carry
            u = _split(ext.A if s == -1 else ext.B, self.base_sub, h)
            if u is None:
                return NO_VERDICT
            if ext.fixes:
                carry = u
            else:
                carry = ext.phi.apply(u) if s == -1 else ext.phi.inverse().apply(u)
        v = self.base_sub.member(f.head * carry)
        return Yes(f.word()) if v.yes else NO_VERDICT


class AmalgamClosure(SubgroupHandle):
    """``<G', H'>`` in ``G *_phi H`` with ``G' <= G``, ``H' <= H`` compatible with ``phi``."""

    strategy = "AmalgamClosure"

    def __init__(self, ambient: Node, left_sub: SubgroupHandle, right_sub: SubgroupHandle,
                 name: str | None = None):
        super().__init__(ambient, name)
        X = concrete(ambient)
        if not isinstance(X, Amalgam):
            raise TypeError("AmalgamClosure needs an amalgam")
        if left_sub.ambient is not X.left or right_sub.ambient is not X.right:
            raise ValueError("closure subgroups must live in the factors")
        self.subs = (left_sub, right_sub)
        self.free_product = not finite_generators(X.A) and not finite_generators(X.B)

    @property
    def generators(self):
        a, b = self.subs[0].generators, self.subs[1].generators
        if a is None or b is None:
            return None
        return tuple(a) + tuple(b)

    def member(self, w):
        X = concrete(self.ambient)
        try:
            f = amalgam_reduce(X, [w])
        except UnsupportedMembership as exc:
            return Unknown(str(exc))
        pieces = [(f.head_side, f.head)] + list(f.tail)
        carry = IDENTITY
        for side, x in reversed(pieces[1:]):
            h = normal_form(X.factor(side), x * carry)
            if self.free_product:
                if not self.subs[side].member(h).yes:
                    return NO_VERDICT
                carry = IDENTITY
                continue
            u = _split(X.handle(side), self.subs[side], h)
            if u is None:
                return NO_VERDICT
            carry = _transport(X, side, u, X.handle(side).member(u))
        s0, x0 = pieces[0]
        v = self.subs[s0].member(normal_form(X.factor(s0), x0 * carry))
        return Yes(w) if v.yes else NO_VERDICT


class BoundedSearch(SubgroupHandle):
    """Breadth-first search over products of generators; Yes or Unknown.

    ``hint`` may propose an expression over ``g1, g2, ...`` for a word; it is
    accepted only after its evaluation is checked equal to the word.
    """

    strategy = "BoundedSearch"
    exact = False

    def __init__(self, ambient: Node, generators: Sequence[Word], depth: int = 12,
                 budget: int = 20000, name: str | None = None, hint=None):
        super().__init__(ambient, name)
        self._generators = tuple(generators)
        self.depth = depth
        self.budget = budget
        self.hint = hint
        self._table: dict | None = None

    @property
    def generators(self):
        return self._generators

    def _explore(self, target: Word | None = None) -> dict:
        """Grow the table level by level until ``target`` appears or limits hit."""
        if self._table is None:
            self._letters = []
            for i, g in enumerate(self._generators, 1):
                self._letters.append((g, (f"g{i}", 1)))
                self._letters.append((g.inverse(), (f"g{i}", -1)))
            self._table = {IDENTITY: IDENTITY}
            self._frontier = [(IDENTITY, IDENTITY)]
            self._level = 0
        table = self._table
        while (target is None or target not in table) and self._frontier \
                and self._level < self.depth and len(table) < self.budget:
            nxt = []
            for x, expr in self._frontier:
                for g, sym in self._letters:
                    if len(table) >= self.budget:
                        break
                    try:
                        y = normal_form(self.ambient, x * g)
                    except UnsupportedMembership:
                        continue
                    if y not in table:
                        e = expr * Word((sym,))
                        table[y] = e
                        nxt.append((y, e))
            self._frontier = nxt
            self._level += 1
        return table

    def member(self, w):
        try:
            target = normal_form(self.ambient, w)
        except UnsupportedMembership as exc:
            return Unknown(str(exc))
        if self.hint is not None:
            expr = self.hint(w)
            if expr is not None and normal_form(self.ambient, self.evaluate(expr)) == target:
                return Yes(target, expr)
        expr = self._explore(target).get(target)
        if expr is None:
            return Unknown(f"no product of at most {self.depth} generators found")
        return Yes(target, expr)

    def evaluate(self, expr: Word) -> Word:
        return expr.substitute({f"g{i}": g for i, g in enumerate(self._generators, 1)})


# constructors


def make_handle(ambient: Node, generators: Sequence[Word], name: str | None = None,
                depth: int = 12) -> SubgroupHandle:
    """Pick the strongest applicable strategy for ``<generators>``."""
    X = concrete(ambient)
    gens = tuple(generators)
    for g in gens:
        X.check_word(g)
    if isinstance(X, Free):
        return StallingsFree(ambient, gens, name)
    gens = tuple(g for g in gens if g)
    if not gens:
        return Trivial(ambient, name)
    if set(node_generators(X)) <= set(gens):
        return Whole(ambient, name)
    if isinstance(X, Hnn):
        letters = [g.syllables[0][0] for g in gens
                   if len(g.syllables) == 1 and abs(g.syllables[0][1]) == 1
                   and g.syllables[0][0] in X.by_letter]
        base_words = [g for g in gens if not (g.symbols() & set(X.by_letter))]
        if len(letters) + len(base_words) == len(gens):
            inner = make_handle(X.base, base_words)
            if not letters:
                return Lift(ambient, "base", inner, name)
            if isinstance(X.base, Free) and isinstance(inner, StallingsFree):
                try:
                    return StableClosure(ambient, inner, letters, gens, name)
                except IncompatibleSubgroup:
                    pass
    if isinstance(X, Amalgam):
        sides = []
        for g in gens:
            syms = g.symbols()
            sides.append(0 if syms <= X.left.alphabet else 1 if syms <= X.right.alphabet else None)
        if None not in sides:
            lg = [g for g, s in zip(gens, sides) if s == 0]
            rg = [g for g, s in zip(gens, sides) if s == 1]
            if not rg:
                return Lift(ambient, "left", make_handle(X.left, lg), name)
            if not lg:
                return Lift(ambient, "right", make_handle(X.right, rg), name)
            if not finite_generators(X.A) and not finite_generators(X.B):
                lh, rh = make_handle(X.left, lg), make_handle(X.right, rg)
                if lh.exact and rh.exact:
                    return AmalgamClosure(ambient, lh, rh, name)
    return BoundedSearch(ambient, gens, depth=depth, name=name)


def _common_ambient(handles: Sequence[SubgroupHandle]) -> Node:
    amb = handles[0].ambient
    for h in handles[1:]:
        if h.ambient is not amb:
            raise stallings.AmbientMismatch("handles live in different groups")
    return amb


def join(handles: Sequence[SubgroupHandle], name: str | None = None) -> SubgroupHandle:
    amb = _common_ambient(handles)
    gens: list[Word] = []
    for h in handles:
        gens.extend(g for g in finite_generators(h) if g not in gens)
    return make_handle(amb, gens, name)


def conjugate(h: SubgroupHandle, by: Word, name: str | None = None) -> SubgroupHandle:
    concrete(h.ambient).check_word(by)
    if isinstance(concrete(h.ambient), Free) and h.generators is not None:
        return StallingsFree(h.ambient, [g.conj(by) for g in h.generators], name)
    return Conjugated(h, by, name)


def member(h: SubgroupHandle, w: Word) -> Verdict:
    return h.member(w)


def is_member(h: SubgroupHandle, w: Word) -> bool:
    return h.member(w).yes
