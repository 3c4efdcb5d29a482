"""Trees of group constructions: free groups, HNN-extensions, amalgams and stars.

Nodes are immutable once built.  A node may be shared between several
parents (the common subgroup of a star is one node object referenced by every
part); its symbols then mean the same element everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import count
from typing import Sequence

from .words import Word

_ids = count()


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    scope: str


class Node:
    name: str

    @property
    def alphabet(self) -> frozenset:
        raise NotImplementedError

    def children(self) -> list["Node"]:
        return []

    def descendants(self):
        """This node and everything below it, each shared node once."""
        seen = []
        stack = [self]
        while stack:
            n = stack.pop()
            if any(n is s for s in seen):
                continue
            seen.append(n)
            stack.extend(reversed(n.children()))
        return seen

    def contains_node(self, other: "Node") -> bool:
        return any(n is other for n in self.descendants())

    def check_word(self, w: Word) -> None:
        alpha = self.alphabet
        for sym, _ in w.syllables:
            if sym not in alpha:
                raise UnknownSymbol(f"symbol {sym!r} not in group {self.name}")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class UnknownSymbol(ValueError):
    pass


class SchemeError(ValueError):
    pass


def _auto_name(prefix: str) -> str:
    return f"{prefix}{next(_ids)}"


class Free(Node):
    def __init__(self, gens: Sequence[str], name: str | None = None):
        self.gens = tuple(gens)
        self.name = name or _auto_name("F")

    @cached_property
    def alphabet(self) -> frozenset:
        return frozenset(self.gens)

    def symbols(self) -> list[GeneratorSymbol]:
        return [GeneratorSymbol(g, self.name) for g in self.gens]


@dataclass(frozen=True)
class Extension:
    """One stable letter ``t`` with ``a^t = phi(a)`` for ``a`` in ``A``.

    ``phi is None`` means ``t`` fixes ``A`` elementwise and ``B is A``.
    """

    stable: str
    A: object
    B: object
    phi: object = None

    @property
    def fixes(self) -> bool:
        return self.phi is None


class Hnn(Node):
    def __init__(self, base: Node, extensions: Sequence[Extension], name: str | None = None):
        self.base = base
        self.extensions = tuple(extensions)
        self.name = name or _auto_name("H")
        self.by_letter = {e.stable: e for e in self.extensions}

    @cached_property
    def alphabet(self) -> frozenset:
        return self.base.alphabet | frozenset(self.by_letter)

    @property
    def stable_letters(self) -> tuple[str, ...]:
        return tuple(e.stable for e in self.extensions)

    def children(self):
        return [self.base]

    def symbols(self) -> list[GeneratorSymbol]:
        return [GeneratorSymbol(t, self.name) for t in self.stable_letters]


class Amalgam(Node):
    """``left *_phi right`` with ``A <= left`` identified with ``B <= right``.

    ``phi is None`` is the identity amalgamation over the symbols the two
    factors share.  Trivial ``A`` and ``B`` give the ordinary free product.
    """

    def __init__(self, left: Node, right: Node, A, B, phi=None, name: str | None = None):
        self.left = left
        self.right = right
        self.A = A
        self.B = B
        self.phi = phi
        self.name = name or _auto_name("P")

    @cached_property
    def alphabet(self) -> frozenset:
        return self.left.alphabet | self.right.alphabet

    @cached_property
    def shared(self) -> frozenset:
        return self.left.alphabet & self.right.alphabet

    def children(self):
        return [self.left, self.right]

    def side_of(self, sym: str) -> int:
        """0 for left only, 1 for right only, -1 for shared."""
        in_l = sym in self.left.alphabet
        in_r = sym in self.right.alphabet
        if in_l and in_r:
            return -1
        if in_l:
            return 0
        if in_r:
            return 1
        raise UnknownSymbol(f"symbol {sym!r} not in group {self.name}")

    def factor(self, side: int) -> Node:
        return self.right if side else self.left

    def handle(self, side: int):
        return self.B if side else self.A

    def symbols(self) -> list[GeneratorSymbol]:
        return []


@dataclass(frozen=True)
class StarPart:
    K: Node
    L: object
    t: str


class Star(Node):
    """The nested amalgam of the HNN-extensions ``K_i *_{L_i} t_i`` over ``M``."""

    def __init__(self, M: Node, parts: Sequence[StarPart], name: str | None = None):
        self.M = M
        self.parts = tuple(parts)
        self.name = name or _auto_name("S")

    @cached_property
    def alphabet(self) -> frozenset:
        out = self.M.alphabet
        for p in self.parts:
            out = out | p.K.alphabet | {p.t}
        return out

    def children(self):
        return [self.M] + [p.K for p in self.parts]

    @cached_property
    def expanded(self) -> Node:
        return expand_star(self)

    def symbols(self) -> list[GeneratorSymbol]:
        return [GeneratorSymbol(p.t, self.name) for p in self.parts]


def concrete(node: Node) -> Node:
    """Stars are evaluated through their left-nested expansion."""
    while isinstance(node, Star):
        node = node.expanded
    return node


def m_handle(X: Node, M: Node):
    """Handle for the designated common subgroup ``M`` inside ``X``."""
    from . import subgroup as sg

    if X is M:
        return sg.Whole(X)
    if isinstance(X, Star):
        return m_handle(X.expanded, M)
    if isinstance(X, Free):
        if isinstance(M, Free) and M.alphabet <= X.alphabet:
            return sg.StallingsFree(X, [Word.gen(g) for g in M.gens], name=M.name)
        raise SchemeError(f"{M.name} is not a factor of {X.name}")
    if isinstance(X, Hnn):
        return sg.Lift(X, "base", m_handle(X.base, M))
    if isinstance(X, Amalgam):
        for side, child in ((0, X.left), (1, X.right)):
            try:
                return sg.Lift(X, ("left", "right")[side], m_handle(child, M))
            except SchemeError:
                continue
    raise SchemeError(f"{M.name} is not a factor of {X.name}")


def expand_star(s: Star) -> Node:
    """Left-nested amalgam of HNN-extensions, each part fixing its ``L_i``."""
    diags = validate(s)
    if diags:
        raise SchemeError("invalid star: " + "; ".join(diags))
    acc = None
    for i, p in enumerate(s.parts):
        h = Hnn(p.K, [Extension(p.t, p.L, p.L)], name=f"{s.name}.{p.t}")
        if acc is None:
            acc = h
            continue
        acc = Amalgam(acc, h, m_handle(acc, s.M), m_handle(h, s.M), None,
                      name=f"{s.name}.{i + 1}" if i + 1 < len(s.parts) else s.name)
    return acc


# presentations


@dataclass
class Presentation:
    generators: list[str] = field(default_factory=list)
    relators: list[Word] = field(default_factory=list)

    def add_generator(self, g: str) -> None:
        if g not in self.generators:
            self.generators.append(g)

    def __str__(self) -> str:
        rel = ", ".join(str(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rel} >"


def presentation(node: Node) -> Presentation:
    from . import subgroup as sg

    pres = Presentation()
    done: list = []

    def visit(n: Node) -> None:
        if any(n is d for d in done):
            return
        done.append(n)
        if isinstance(n, Star):
            visit(n.expanded)
            return
        if isinstance(n, Free):
            for g in n.gens:
                pres.add_generator(g)
            return
        if isinstance(n, Hnn):
            visit(n.base)
            for e in n.extensions:
                pres.add_generator(e.stable)
                gens = sg.finite_generators(e.A)
                t = Word.gen(e.stable)
                for a in gens:
                    img = a if e.fixes else e.phi.apply(a)
                    pres.relators.append(a.conj(t) * img.inverse())
            return
        if isinstance(n, Amalgam):
            visit(n.left)
            visit(n.right)
            if n.phi is not None:
                for a in sg.finite_generators(n.A):
                    pres.relators.append(a * n.phi.apply(a).inverse())
            return
        raise SchemeError(f"unknown node {n!r}")

    visit(node)
    return pres


# validation


def _subgroups_equal(A, B) -> bool:
    from . import subgroup as sg

    ga = sg.finite_generators(A)
    gb = sg.finite_generators(B)
    return all(B.member(x).yes for x in ga) and all(A.member(x).yes for x in gb)


def validate(node: Node) -> list[str]:
    """Diagnostics ``"<node>: message"``; empty iff the scheme is well formed."""
    from . import subgroup as sg

    out: list[str] = []
    introduced: dict[str, Node] = {}

    for n in node.descendants():
        where = n.name
        for sym in n.symbols():
            prev = introduced.get(sym.name)
            if prev is not None and prev is not n:
                out.append(f"{where}: symbol {sym.name!r} already introduced by {prev.name}")
            introduced[sym.name] = n
        if isinstance(n, Free):
            if len(set(n.gens)) != len(n.gens):
                out.append(f"{where}: repeated generator")
        elif isinstance(n, Hnn):
            for e in n.extensions:
                if e.stable in n.base.alphabet:
                    out.append(f"{where}: stable letter {e.stable!r} occurs in the base")
                for h, label in ((e.A, "A"), (e.B, "B")):
                    if h.ambient is not n.base:
                        out.append(f"{where}: subgroup {label} of {e.stable} is not over the base")
                if e.fixes:
                    if e.B is not e.A and not _subgroups_equal(e.A, e.B):
                        out.append(f"{where}: identity extension requires equal subgroups")
                else:
                    out.extend(f"{where}: {p}" for p in _morphism_problems(n.base, e.A, e.B, e.phi))
            if len(set(n.stable_letters)) != len(n.stable_letters):
                out.append(f"{where}: repeated stable letter")
        elif isinstance(n, Amalgam):
            if n.A.ambient is not n.left or n.B.ambient is not n.right:
                out.append(f"{where}: amalgamated subgroups must live in the factors")
            elif n.phi is None:
                shared = n.shared
                for x in sg.finite_generators(n.A) + sg.finite_generators(n.B):
                    if not x.symbols() <= shared:
                        out.append(f"{where}: identity amalgamation needs generators over shared symbols")
                        break
                else:
                    if not _subgroups_equal(n.A, n.B):
                        out.append(f"{where}: identity amalgamation requires equal subgroups")
                    elif not all(n.A.member(Word.gen(x)).yes for x in sorted(shared)):
                        out.append(f"{where}: shared symbols outside the amalgamated subgroup")
            else:
                if n.shared:
                    out.append(f"{where}: factors of a twisted amalgam must be disjoint")
                if not isinstance(n.left, Free) or not isinstance(n.right, Free):
                    out.append(f"{where}: twisted amalgamation needs free factors")
                else:
                    out.extend(f"{where}: {p}" for p in _twisted_problems(n.A, n.B, n.phi))
        elif isinstance(n, Star):
            M = n.M
            if not n.parts:
                out.append(f"{where}: star needs at least one part")
            for p in n.parts:
                if p.L.ambient is not p.K:
                    out.append(f"{where}: L for {p.t} is not a subgroup of its K")
                if p.t in p.K.alphabet:
                    out.append(f"{where}: stable letter {p.t!r} occurs in its K")
                try:
                    m_handle(p.K, M)
                except SchemeError:
                    out.append(f"{where}: {M.name} is not a designated factor of {p.K.name}")
            for i, p in enumerate(n.parts):
                for q in n.parts[i + 1:]:
                    extra = (p.K.alphabet & q.K.alphabet) - M.alphabet
                    if extra:
                        out.append(f"{where}: parts share symbols outside {M.name}: {sorted(extra)}")
            letters = [p.t for p in n.parts]
            if len(set(letters)) != len(letters):
                out.append(f"{where}: repeated stable letter")
    return out


def _morphism_problems(base, A, B, phi) -> list[str]:
    from . import stallings
    from . import subgroup as sg

    if not isinstance(base, Free):
        return ["a non-identity isomorphism needs a free base"]
    if not isinstance(A, sg.StallingsFree) or not isinstance(B, sg.StallingsFree):
        return ["a non-identity isomorphism needs finitely generated subgroups of the free base"]
    probs = list(phi.problems())
    if not probs:
        if not stallings.equal(phi.domain, A.automaton):
            probs.append("isomorphism basis does not generate A")
        if not stallings.equal(phi.codomain, B.automaton):
            probs.append("isomorphism images do not generate B")
    return probs


def _twisted_problems(A, B, phi) -> list[str]:
    return _morphism_problems(A.ambient, A, B, phi) if isinstance(A.ambient, Free) else [
        "twisted amalgamation needs free factors"]


def stable_letter_count(node: Node) -> dict[str, int]:
    """How many HNN nodes introduce each stable letter."""
    counts: dict[str, int] = {}
    for n in concrete(node).descendants():
        n = concrete(n)
        if isinstance(n, Hnn):
            for t in n.stable_letters:
                counts[t] = counts.get(t, 0) + 1
    return counts
