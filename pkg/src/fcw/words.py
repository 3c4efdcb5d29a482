"""Freely reduced words, the word grammar, and finitely supported sequences.

A word is stored run-length encoded as a tuple of ``(symbol, exponent)``
syllables with no two adjacent syllables on the same symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class WordError(ValueError):
    pass


def _push(out: list, sym: str, exp: int) -> None:
    if exp == 0:
        return
    if out and out[-1][0] == sym:
        e = out[-1][1] + exp
        if e == 0:
            out.pop()
        else:
            out[-1] = (sym, e)
    else:
        out.append((sym, exp))


class Word:
    """An immutable freely reduced word. The empty word is the identity."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: Iterable[tuple[str, int]] = ()):
        out: list = []
        for sym, exp in syllables:
            _push(out, sym, int(exp))
        self.syllables: tuple[tuple[str, int], ...] = tuple(out)
        self._hash = None

    @classmethod
    def _trusted(cls, syllables: tuple) -> "Word":
        w = cls.__new__(cls)
        w.syllables = syllables
        w._hash = None
        return w

    @classmethod
    def gen(cls, sym: str, exp: int = 1) -> "Word":
        return cls(((sym, exp),))

    # group operations

    def __mul__(self, other: "Word") -> "Word":
        if not other.syllables:
            return self
        if not self.syllables:
            return other
        left = list(self.syllables)
        right = other.syllables
        i = 0
        while left and i < len(right):
            sym, exp = right[i]
            if left[-1][0] != sym:
                break
            e = left[-1][1] + exp
            i += 1
            if e == 0:
                left.pop()
            else:
                left[-1] = (sym, e)
                break
        return Word._trusted(tuple(left) + right[i:])

    def inverse(self) -> "Word":
        return Word._trusted(tuple((s, -e) for s, e in reversed(self.syllables)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = IDENTITY
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self, by: "Word") -> "Word":
        """``self^by = by^-1 self by``."""
        return by.inverse() * self * by

    # inspection

    def is_identity(self) -> bool:
        return not self.syllables

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> Iterator[tuple[str, int]]:
        for sym, exp in self.syllables:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield sym, step

    def symbols(self) -> frozenset:
        return frozenset(s for s, _ in self.syllables)

    def substitute(self, images: Mapping[str, "Word"]) -> "Word":
        """Apply the homomorphism sending each mapped symbol to its image."""
        out = IDENTITY
        for sym, exp in self.syllables:
            img = images.get(sym)
            if img is None:
                out = out * Word._trusted(((sym, exp),))
            else:
                out = out * img ** exp
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.syllables) < (len(other), other.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


IDENTITY = Word()


def reduce(raw: Iterable[tuple[str, int]], alphabet: Iterable[str] | None = None) -> Word:
    """Freely reduce a list of ``(symbol, exponent)`` pairs."""
    raw = list(raw)
    if alphabet is not None:
        known = set(alphabet)
        for sym, _ in raw:
            if sym not in known:
                raise WordError(f"unknown symbol {sym!r}")
    return Word(raw)


def mul(x: Word, y: Word) -> Word:
    return x * y


def inv(x: Word) -> Word:
    return x.inverse()


def conj(x: Word, by: Word) -> Word:
    return x.conj(by)


def product(words: Iterable[Word]) -> Word:
    out = IDENTITY
    for w in words:
        out = out * w
    return out


# parsing

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>[+-]?\d+)|(?P<op>[\^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return toks


def parse(text: str, alphabet: Iterable[str] | None = None) -> Word:
    """Parse ``word := term {term}; term := symbol ['^' (int | '(' word ')')]``.

    ``1`` alone is the identity; ``x^(w)`` expands to ``w^-1 x w``.
    """
    toks = _tokenize(text)
    known = set(alphabet) if alphabet is not None else None
    if len(toks) == 1 and toks[0][:2] == ("int", "1"):
        return IDENTITY
    pos = 0

    def word(stop_at_paren: bool) -> Word:
        nonlocal pos
        out = IDENTITY
        while pos < len(toks):
            kind, val, col = toks[pos]
            if kind == "op" and val == ")" and stop_at_paren:
                return out
            if kind == "int" and val == "1":
                pos += 1
                continue
            if kind != "ident":
                raise WordError(f"expected symbol at column {col + 1}, got {val!r}")
            if known is not None and val not in known:
                raise WordError(f"unknown symbol {val!r} at column {col + 1}")
            pos += 1
            term = Word.gen(val)
            if pos < len(toks) and toks[pos][:2] == ("op", "^"):
                pos += 1
                if pos >= len(toks):
                    raise WordError("dangling '^'")
                kind2, val2, col2 = toks[pos]
                if kind2 == "int":
                    pos += 1
                    term = Word.gen(val, int(val2))
                elif (kind2, val2) == ("op", "("):
                    pos += 1
                    by = word(True)
                    if pos >= len(toks) or toks[pos][:2] != ("op", ")"):
                        raise WordError(f"unbalanced '(' at column {col2 + 1}")
                    pos += 1
                    term = term.conj(by)
                else:
                    raise WordError(f"bad exponent at column {col2 + 1}")
            out = out * term
        if stop_at_paren:
            raise WordError("unbalanced '('")
        return out

    return word(False)


# finitely supported integer sequences


@dataclass(frozen=True)
class FinSupportSeq:
    """A function Z -> Z with finite support; zero values are never stored."""

    entries: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_map(cls, m: Mapping[int, int]) -> "FinSupportSeq":
        return cls(tuple(sorted((int(i), int(v)) for i, v in m.items() if v != 0)))

    def __getitem__(self, i: int) -> int:
        return dict(self.entries).get(i, 0)

    def support(self) -> list[int]:
        return [i for i, _ in self.entries]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def concat(self, other: "FinSupportSeq") -> "FinSupportSeq":
        d = self.as_dict()
        for i, v in other.entries:
            if i in d:
                raise ValueError("supports overlap")
            d[i] = v
        return FinSupportSeq.from_map(d)


def seq_normalize(raw: Iterable[int], offset: int = 0) -> FinSupportSeq:
    return FinSupportSeq.from_map({offset + i: v for i, v in enumerate(raw)})
