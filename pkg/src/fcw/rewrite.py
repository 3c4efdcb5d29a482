"""Normal forms and the word problem for nested HNN-extensions and amalgams.

Reduction runs left to right with a stack (pinches and merges), then the
canonical form is obtained by peeling coset representatives from the right.
When some associated subgroup has no canonical transversal the reduced form is
returned instead; it still decides triviality by Britton's lemma and the
reduced form theorem for amalgams.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scheme import Amalgam, Free, Hnn, Node, concrete
from .words import IDENTITY, Word


class UnsupportedMembership(RuntimeError):
    """A membership test needed by a reduction came back undecided."""


YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Word | None = None
    expr: Word | None = None
    note: str = ""

    @property
    def yes(self) -> bool:
        return self.status == YES

    @property
    def no(self) -> bool:
        return self.status == NO

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN

    def __str__(self) -> str:
        return {YES: "Yes", NO: "No", UNKNOWN: "Unknown"}[self.status]


def Yes(witness: Word | None = None, expr: Word | None = None) -> Verdict:
    return Verdict(YES, witness, expr)


NO_VERDICT = Verdict(NO)


def Unknown(note: str = "") -> Verdict:
    return Verdict(UNKNOWN, note=note)


def _decided(v: Verdict, what: str) -> bool:
    if v.unknown:
        raise UnsupportedMembership(what)
    return v.yes


# normal form containers


@dataclass(frozen=True)
class HnnNormalForm:
    """``head t^e1 l1 t^e2 l2 ...`` with ``tail = ((t, e, l), ...)``."""

    head: Word
    tail: tuple = ()

    def word(self) -> Word:
        out = self.head
        for t, e, l in self.tail:
            out = out * Word.gen(t, e) * l
        return out

    def stable_letters(self) -> set:
        return {t for t, _, _ in self.tail}

    def __str__(self) -> str:
        if not self.tail:
            return str(self.head)
        parts = [str(self.head)]
        for t, e, l in self.tail:
            parts.append(t if e == 1 else f"{t}^{e}")
            parts.append(str(l))
        return " . ".join(parts)


@dataclass(frozen=True)
class AmalgamNormalForm:
    """``head l1 l2 ...``: a full element of one factor then alternating coset reps."""

    head: Word
    head_side: int = 0
    tail: tuple = ()

    def word(self) -> Word:
        out = self.head
        for _, l in self.tail:
            out = out * l
        return out

    def sides(self) -> list[int]:
        return [self.head_side] + [s for s, _ in self.tail]

    def __len__(self) -> int:
        return (1 if self.head else 0) + len(self.tail)

    def __str__(self) -> str:
        if not self.tail:
            return str(self.head)
        return " . ".join([str(self.head)] + [str(l) for _, l in self.tail])


# transversal availability


def is_canonical(node: Node) -> bool:
    """Whether every level below ``node`` has canonical coset representatives."""
    node = concrete(node)
    cached = node.__dict__.get("_canonical")
    if cached is not None:
        return cached
    if isinstance(node, Free):
        ok = True
    elif isinstance(node, Hnn):
        ok = is_canonical(node.base) and all(
            e.A.has_transversal() and e.B.has_transversal() for e in node.extensions)
    elif isinstance(node, Amalgam):
        ok = (is_canonical(node.left) and is_canonical(node.right)
              and node.A.has_transversal() and node.B.has_transversal())
    else:
        ok = False
    node.__dict__["_canonical"] = ok
    return ok


# HNN


def _apply(phi, g: Word, inverse: bool) -> Word:
    if phi is None:
        return g
    return (phi.inverse() if inverse else phi).apply(g)


def _split_hnn(node: Hnn, w: Word):
    """Yield base words and stable letters ``(t, +-1)`` in order."""
    letters = node.by_letter
    chunk: list = []
    for sym, exp in w.syllables:
        if sym in letters:
            if chunk:
                yield Word(chunk)
                chunk = []
            s = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (sym, s)
        else:
            chunk.append((sym, exp))
    if chunk:
        yield Word(chunk)


def britton_stack(node: Hnn, w: Word) -> HnnNormalForm:
    """Reduced (pinch-free) form; base chunks are in their own normal form."""
    node.check_word(w)
    base = node.base
    chunks = [IDENTITY]
    letters: list = []
    for item in _split_hnn(node, w):
        if isinstance(item, Word):
            chunks[-1] = chunks[-1] * item
            continue
        t, s = item
        g = normal_form(base, chunks[-1])
        chunks[-1] = g
        if letters and letters[-1] == (t, -s):
            ext = node.by_letter[t]
            if s == 1:
                # t^-1 g t with g in A becomes phi(g)
                if _decided(ext.A.member(g), f"{g} in A of {t}"):
                    letters.pop()
                    chunks.pop()
                    chunks[-1] = chunks[-1] * _apply(ext.phi, g, False)
                    continue
            else:
                if _decided(ext.B.member(g), f"{g} in B of {t}"):
                    letters.pop()
                    chunks.pop()
                    chunks[-1] = chunks[-1] * _apply(ext.phi, g, True)
                    continue
        letters.append((t, s))
        chunks.append(IDENTITY)
    chunks = [normal_form(base, g) for g in chunks]
    tail = tuple((t, s, g) for (t, s), g in zip(letters, chunks[1:]))
    return HnnNormalForm(chunks[0], tail)


def _hnn_canonical(node: Hnn, red: HnnNormalForm) -> HnnNormalForm:
    base = node.base
    carry = IDENTITY
    tail = []
    for t, s, g in reversed(red.tail):
        ext = node.by_letter[t]
        x = normal_form(base, g * carry)
        handle = ext.A if s == -1 else ext.B
        l = handle.coset_rep(x)
        a = normal_form(base, x * l.inverse())
        # t^-1 a = phi(a) t^-1 and t b = phi^-1(b) t
        carry = _apply(ext.phi, a, s == 1)
        tail.append((t, s, l))
    head = normal_form(base, red.head * carry)
    return HnnNormalForm(head, tuple(reversed(tail)))


def britton_reduce(node: Hnn, w: Word) -> HnnNormalForm:
    """Britton-reduced form, canonical whenever transversals are available."""
    red = britton_stack(node, w)
    if red.tail and is_canonical(node):
        return _hnn_canonical(node, red)
    return red


# amalgams


def _split_amalgam(node: Amalgam, w: Word) -> list[tuple[int, Word]]:
    """Maximal runs by factor; shared symbols join the run they sit in."""
    runs: list = []
    pending: list = []
    for sym, exp in w.syllables:
        side = node.side_of(sym)
        if side == -1:
            if runs:
                runs[-1][1].append((sym, exp))
            else:
                pending.append((sym, exp))
        elif runs and runs[-1][0] == side:
            runs[-1][1].append((sym, exp))
        else:
            runs.append((side, pending + [(sym, exp)]))
            pending = []
    if not runs and pending:
        runs.append((0, pending))
    return [(s, Word(x)) for s, x in runs]


def _transport(node: Amalgam, side: int, x: Word, v: Verdict) -> Word:
    """Move an element of the amalgamated subgroup to the other factor."""
    if node.phi is None:
        return v.witness if v.witness is not None else x
    return node.phi.apply(x) if side == 0 else node.phi.inverse().apply(x)


def _amalgam_stack(node: Amalgam, factors) -> list[list]:
    stack: list[list] = []
    for side, x in factors:
        while True:
            x = normal_form(node.factor(side), x)
            if not x:
                break
            if stack and stack[-1][0] == side:
                x = stack.pop()[1] * x
                continue
            if stack:
                if len(stack) == 1:
                    s0, x0 = stack[0]
                    v0 = node.handle(s0).member(x0)
                    if _decided(v0, f"{x0} in amalgamated subgroup"):
                        stack.pop()
                        x = _transport(node, s0, x0, v0) * x
                        continue
                v = node.handle(side).member(x)
                if _decided(v, f"{x} in amalgamated subgroup"):
                    x = stack.pop()[1] * _transport(node, side, x, v)
                    side = 1 - side
                    continue
            stack.append([side, x])
            break
    if len(stack) == 1 and stack[0][0] == 1:
        v = node.B.member(stack[0][1])
        if v.yes:
            stack[0] = [0, normal_form(node.left, _transport(node, 1, stack[0][1], v))]
    return stack


def _amalgam_canonical(node: Amalgam, stack) -> AmalgamNormalForm:
    carry = IDENTITY
    tail = []
    for side, x in reversed(stack[1:]):
        y = normal_form(node.factor(side), x * carry)
        h = node.handle(side)
        l = h.coset_rep(y)
        a = normal_form(node.factor(side), y * l.inverse())
        v = h.member(a)
        carry = _transport(node, side, a, v)
        tail.append((side, l))
    s0, x0 = stack[0]
    head = normal_form(node.factor(s0), x0 * carry)
    return AmalgamNormalForm(head, s0, tuple(reversed(tail)))


def _shared_prefix(w: Word, shared) -> Word:
    pre = []
    for sym, exp in w.syllables:
        if sym not in shared:
            break
        pre.append((sym, exp))
    return Word(pre)


def _normalize_boundaries(node: Amalgam, stack) -> None:
    """Push leading shared syllables of later runs onto the run before.

    This makes the reduced form survive a round trip through its spelled-out
    word, where such syllables would be read as part of the previous run.
    """
    shared = node.shared
    if not shared:
        return
    for i in range(1, len(stack)):
        for _ in range(8):
            p = _shared_prefix(stack[i][1], shared)
            if not p:
                break
            stack[i - 1][1] = normal_form(node.factor(stack[i - 1][0]), stack[i - 1][1] * p)
            stack[i][1] = normal_form(node.factor(stack[i][0]), p.inverse() * stack[i][1])


def amalgam_reduce(node: Amalgam, factors) -> AmalgamNormalForm:
    """Reduce a product of factor words; entries are words or ``(side, word)``."""
    tagged = []
    for f in factors:
        if isinstance(f, Word):
            tagged.extend(_split_amalgam(node, f))
        else:
            tagged.append(f)
    stack = _amalgam_stack(node, tagged)
    if not stack:
        return AmalgamNormalForm(IDENTITY, 0, ())
    if len(stack) > 1 and is_canonical(node):
        return _amalgam_canonical(node, stack)
    _normalize_boundaries(node, stack)
    return AmalgamNormalForm(stack[0][1], stack[0][0], tuple((s, x) for s, x in stack[1:]))


# entry points


def reduce_form(node: Node, w: Word):
    """Structured normal form of ``w`` in ``node``."""
    node = concrete(node)
    if isinstance(node, Free):
        node.check_word(w)
        return w
    if isinstance(node, Hnn):
        return britton_reduce(node, w)
    if isinstance(node, Amalgam):
        node.check_word(w)
        return amalgam_reduce(node, [w])
    raise TypeError(f"not a scheme node: {node!r}")


def normal_form(node: Node, w: Word) -> Word:
    """Normal form as a word; idempotent, and the identity exactly for trivial ``w``."""
    f = reduce_form(node, w)
    return f if isinstance(f, Word) else f.word()


canon = normal_form


def is_trivial(node: Node, w: Word) -> Verdict:
    try:
        return Yes(IDENTITY) if not normal_form(node, w) else NO_VERDICT
    except UnsupportedMembership as exc:
        return Unknown(str(exc))


def equal(node: Node, x: Word, y: Word) -> Verdict:
    return is_trivial(node, x * y.inverse())


def stable_free(node: Node, w: Word) -> bool:
    """Whether the reduced form of ``w`` avoids every stable letter below ``node``."""
    letters = set(stable_letters(node))
    return not (normal_form(node, w).symbols() & letters)


def stable_letters(node: Node) -> list[str]:
    out: list[str] = []
    stack = [concrete(node)]
    seen: list = []
    while stack:
        n = concrete(stack.pop())
        if any(n is s for s in seen):
            continue
        seen.append(n)
        if isinstance(n, Hnn):
            out.extend(t for t in n.stable_letters if t not in out)
        stack.extend(n.children())
    return out


__all__ = [
    "Verdict", "Yes", "Unknown", "NO_VERDICT", "UnsupportedMembership",
    "HnnNormalForm", "AmalgamNormalForm", "britton_reduce", "britton_stack",
    "amalgam_reduce", "reduce_form", "normal_form", "canon", "is_trivial", "equal",
    "is_canonical", "stable_free", "stable_letters",
]
