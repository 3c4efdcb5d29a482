"""A one-declaration-per-line language for groups, subgroups and isomorphisms.

    group F = free(a, b, c)
    sub A = subgroup(F; b, c^2)
    iso phi : A -> B on { b -> c^-1 b c, c^2 -> c^2 }
    group X = hnn(F; t1 fixes A, t2 : A -> B by phi)
    group Y = amalgam(G, H; over A ~ B by psi)      # or: over A ~ B, or: over A
    group P = free_product(G, H)
    group S = star(M; (K1, L1, u), (K2, L2, v))
    sub T = tail(F; b, c; >=3)                      # or: <=-1 | >=2, optional ; a
    sub L = closure(X; T; t1, t2)

``#`` starts a comment.  Errors carry line and column numbers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import subgroup as sg
from .scheme import (Amalgam, Extension, Free, Hnn, Node, SchemeError, Star, StarPart,
                     validate)
from .stallings import Morphism
from .words import WordError, parse as parse_word


class DslError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<input>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


@dataclass
class Workspace:
    groups: dict = field(default_factory=dict)
    subgroups: dict = field(default_factory=dict)
    isos: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def names(self) -> set:
        return set(self.groups) | set(self.subgroups) | set(self.isos)

    def group(self, name: str) -> Node:
        try:
            return self.groups[name]
        except KeyError:
            raise KeyError(f"unknown group {name!r}") from None

    def subgroup(self, name: str) -> sg.SubgroupHandle:
        try:
            return self.subgroups[name]
        except KeyError:
            raise KeyError(f"unknown subgroup {name!r}") from None

    def diagnostics(self) -> list[str]:
        out = []
        for g in self.groups.values():
            out.extend(validate(g))
        return list(dict.fromkeys(out))


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class _Cursor:
    def __init__(self, text: str, line: int, source: str):
        self.text = text
        self.pos = 0
        self.line = line
        self.source = source

    def error(self, msg: str, pos: int | None = None) -> DslError:
        return DslError(msg, self.line, (self.pos if pos is None else pos) + 1, self.source)

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.text.startswith(tok, self.pos)

    def accept(self, tok: str) -> bool:
        if self.peek(tok):
            if tok[0].isalpha():
                end = self.pos + len(tok)
                if end < len(self.text) and (self.text[end].isalnum() or self.text[end] in "_'"):
                    return False
            self.pos += len(tok)
            return True
        return False

    def expect(self, tok: str) -> None:
        if not self.accept(tok):
            found = self.text[self.pos:self.pos + 8] or "end of line"
            raise self.error(f"expected {tok!r}, found {found!r}")

    def name(self, what: str = "name") -> str:
        self.ws()
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def raw(self, stops: str) -> tuple[str, int]:
        """Text up to a stop character at bracket depth 0 (or a ``->``)."""
        self.ws()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0 and ")" in stops:
                    break
                depth -= 1
            elif depth == 0 and (ch in stops or ("-" in stops and self.text.startswith("->", self.pos))):
                break
            self.pos += 1
        return self.text[start:self.pos].strip(), start


class _Parser:
    def __init__(self, ws: Workspace, source: str):
        self.ws = ws
        self.source = source

    def _fresh(self, cur: _Cursor, name: str) -> None:
        if name in self.ws.names():
            raise cur.error(f"name {name!r} already defined", cur.pos - len(name))

    def _group(self, cur, name):
        if name not in self.ws.groups:
            raise cur.error(f"unknown group {name!r}", cur.pos - len(name))
        return self.ws.groups[name]

    def _sub(self, cur, name):
        if name not in self.ws.subgroups:
            raise cur.error(f"unknown subgroup {name!r}", cur.pos - len(name))
        return self.ws.subgroups[name]

    def _iso(self, cur, name):
        if name not in self.ws.isos:
            raise cur.error(f"unknown isomorphism {name!r}", cur.pos - len(name))
        return self.ws.isos[name]

    def _word(self, cur, text, pos, alphabet):
        try:
            return parse_word(text, alphabet)
        except WordError as exc:
            m = re.search(r"column (\d+)", str(exc))
            col = pos + (int(m.group(1)) - 1 if m else 0)
            raise cur.error(str(exc), col) from None

    def line(self, text: str, lineno: int) -> None:
        cur = _Cursor(text, lineno, self.source)
        kw_pos = cur.pos
        kw = cur.name("declaration keyword")
        try:
            if kw == "group":
                self._decl_group(cur)
            elif kw == "sub":
                self._decl_sub(cur)
            elif kw == "iso":
                self._decl_iso(cur)
            else:
                raise cur.error(f"unknown declaration {kw!r}", kw_pos)
        except DslError:
            raise
        except (SchemeError, ValueError, TypeError, KeyError) as exc:
            raise cur.error(str(exc).strip("'\""), 0) from None
        if not cur.at_end():
            raise cur.error("unexpected trailing text")

    def _decl_group(self, cur):
        name = cur.name("group name")
        self._fresh(cur, name)
        cur.expect("=")
        kind = cur.name("group constructor")
        kind_pos = cur.pos - len(kind)
        if kind not in ("free", "hnn", "amalgam", "free_product", "star"):
            raise cur.error(f"unknown group constructor {kind!r}", kind_pos)
        cur.expect("(")
        if kind == "free":
            gens = [cur.name("generator")]
            while cur.accept(","):
                gens.append(cur.name("generator"))
            node = Free(gens, name)
        elif kind == "hnn":
            base = self._group(cur, cur.name("base group"))
            cur.expect(";")
            exts = [self._ext(cur, base)]
            while cur.accept(","):
                exts.append(self._ext(cur, base))
            node = Hnn(base, exts, name)
        elif kind in ("amalgam", "free_product"):
            left = self._group(cur, cur.name("group"))
            cur.expect(",")
            right = self._group(cur, cur.name("group"))
            if kind == "free_product":
                node = Amalgam(left, right, sg.Trivial(left), sg.Trivial(right), None, name)
            else:
                cur.expect(";")
                cur.expect("over")
                A = self._sub(cur, cur.name("subgroup"))
                B = phi = None
                if cur.accept("~"):
                    B = self._sub(cur, cur.name("subgroup"))
                    if cur.accept("by"):
                        phi = self._iso(cur, cur.name("isomorphism"))
                else:
                    B = sg.make_handle(right, sg.finite_generators(A), name=A.name)
                node = Amalgam(left, right, A, B, phi, name)
        elif kind == "star":
            M = self._group(cur, cur.name("group"))
            cur.expect(";")
            parts = [self._part(cur)]
            while cur.accept(","):
                parts.append(self._part(cur))
            node = Star(M, parts, name)
        else:
            raise cur.error(f"unknown group constructor {kind!r}")
        cur.expect(")")
        self.ws.groups[name] = node
        self.ws.order.append(("group", name))

    def _ext(self, cur, base):
        t = cur.name("stable letter")
        if cur.accept("fixes"):
            A = self._sub(cur, cur.name("subgroup"))
            return Extension(t, A, A)
        cur.expect(":")
        A = self._sub(cur, cur.name("subgroup"))
        cur.expect("->")
        B = self._sub(cur, cur.name("subgroup"))
        cur.expect("by")
        phi = self._iso(cur, cur.name("isomorphism"))
        return Extension(t, A, B, phi)

    def _part(self, cur):
        cur.expect("(")
        K = self._group(cur, cur.name("group"))
        cur.expect(",")
        L = self._sub(cur, cur.name("subgroup"))
        cur.expect(",")
        t = cur.name("stable letter")
        cur.expect(")")
        return StarPart(K, L, t)

    def _decl_sub(self, cur):
        name = cur.name("subgroup name")
        self._fresh(cur, name)
        cur.expect("=")
        kind = cur.name("subgroup constructor")
        if kind not in ("subgroup", "tail", "closure"):
            raise cur.error(f"unknown subgroup constructor {kind!r}", cur.pos - len(kind))
        cur.expect("(")
        X = self._group(cur, cur.name("group"))
        cur.expect(";")
        if kind == "subgroup":
            gens = []
            if not cur.peek(")"):
                while True:
                    text, p = cur.raw(",)")
                    if not text:
                        raise cur.error("empty generator", p)
                    gens.append(self._word(cur, text, p, X.alphabet))
                    if not cur.accept(","):
                        break
            h = sg.make_handle(X, gens, name=name)
        elif kind == "tail":
            base = cur.name("symbol")
            cur.expect(",")
            conj = cur.name("symbol")
            cur.expect(";")
            dom = self._range(cur)
            extras = []
            if cur.accept(";"):
                extras.append(cur.name("symbol"))
                while cur.accept(","):
                    extras.append(cur.name("symbol"))
            h = sg.StreamHandle(X, sg.BIndexStream(dom, base, conj, tuple(extras), name), name)
        elif kind == "closure":
            T = self._sub(cur, cur.name("subgroup"))
            cur.expect(";")
            letters = [cur.name("stable letter")]
            while cur.accept(","):
                letters.append(cur.name("stable letter"))
            h = sg.StableClosure(X, T, letters, name=name)
        else:
            raise cur.error(f"unknown subgroup constructor {kind!r}")
        cur.expect(")")
        self.ws.subgroups[name] = h
        self.ws.order.append(("sub", name))

    def _range(self, cur):
        at_least = at_most = None
        while True:
            if cur.accept(">="):
                at_least = self._int(cur)
            elif cur.accept("<="):
                at_most = self._int(cur)
            else:
                raise cur.error("expected '>=' or '<='")
            if not cur.accept("|"):
                break
        return sg.IndexSet(at_least, at_most)

    def _int(self, cur):
        cur.ws()
        m = re.compile(r"[+-]?\d+").match(cur.text, cur.pos)
        if not m:
            raise cur.error("expected an integer")
        cur.pos = m.end()
        return int(m.group())

    def _decl_iso(self, cur):
        name = cur.name("isomorphism name")
        self._fresh(cur, name)
        cur.expect(":")
        A = self._sub(cur, cur.name("subgroup"))
        cur.expect("->")
        B = self._sub(cur, cur.name("subgroup"))
        cur.expect("on")
        cur.expect("{")
        keys, vals = [], []
        while not cur.accept("}"):
            text, p = cur.raw("-")
            keys.append(self._word(cur, text, p, A.ambient.alphabet))
            cur.expect("->")
            text, p = cur.raw(",}")
            vals.append(self._word(cur, text, p, B.ambient.alphabet))
            if not cur.accept(","):
                cur.expect("}")
                break
        self.ws.isos[name] = Morphism(keys, vals, A.ambient, B.ambient, name=name)
        self.ws.order.append(("iso", name))


def parse(text: str, source: str = "<input>", workspace: Workspace | None = None) -> Workspace:
    """Parse declarations into ``workspace`` (a fresh one by default)."""
    ws = workspace if workspace is not None else Workspace()
    p = _Parser(ws, source)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip("\r").rstrip()
        if line.strip():
            p.line(line, lineno)
    return ws


def load(paths, workspace: Workspace | None = None) -> Workspace:
    ws = workspace if workspace is not None else Workspace()
    for path in paths:
        with open(path, encoding="utf-8", newline="") as fh:
            parse(fh.read(), source=str(path), workspace=ws)
    return ws


# emission


class _Emitter:
    def __init__(self):
        self.lines: list[str] = []
        self.names: dict[int, str] = {}
        self.used: set = set()

    def _name(self, obj, hint: str) -> str:
        n = self.names.get(id(obj))
        if n is not None:
            return n
        base = re.sub(r"[^A-Za-z0-9_']", "_", hint or "X")
        if not _NAME.fullmatch(base):
            base = "X" + base
        n, k = base, 1
        while n in self.used:
            k += 1
            n = f"{base}_{k}"
        self.used.add(n)
        self.names[id(obj)] = n
        return n

    def group(self, node: Node) -> str:
        if id(node) in self.names:
            return self.names[id(node)]
        if isinstance(node, Free):
            n = self._name(node, node.name)
            self.lines.append(f"group {n} = free({', '.join(node.gens)})")
        elif isinstance(node, Hnn):
            base = self.group(node.base)
            exts = []
            for e in node.extensions:
                A = self.sub(e.A)
                if e.fixes:
                    exts.append(f"{e.stable} fixes {A}")
                else:
                    B = self.sub(e.B)
                    phi = self.iso(e.phi, A, B, e.A, e.B)
                    exts.append(f"{e.stable} : {A} -> {B} by {phi}")
            n = self._name(node, node.name)
            self.lines.append(f"group {n} = hnn({base}; {', '.join(exts)})")
        elif isinstance(node, Amalgam):
            left, right = self.group(node.left), self.group(node.right)
            trivial = not sg.finite_generators(node.A) and not sg.finite_generators(node.B)
            if node.phi is None and trivial:
                n = self._name(node, node.name)
                self.lines.append(f"group {n} = free_product({left}, {right})")
            else:
                A, B = self.sub(node.A), self.sub(node.B)
                tail = f" by {self.iso(node.phi, A, B, node.A, node.B)}" if node.phi is not None else ""
                n = self._name(node, node.name)
                self.lines.append(f"group {n} = amalgam({left}, {right}; over {A} ~ {B}{tail})")
        elif isinstance(node, Star):
            M = self.group(node.M)
            parts = []
            for p in node.parts:
                K = self.group(p.K)
                L = self.sub(p.L)
                parts.append(f"({K}, {L}, {p.t})")
            n = self._name(node, node.name)
            self.lines.append(f"group {n} = star({M}; {', '.join(parts)})")
        else:
            raise TypeError(f"cannot emit {node!r}")
        return n

    def sub(self, h: sg.SubgroupHandle) -> str:
        if id(h) in self.names:
            return self.names[id(h)]
        X = self.group(h.ambient)
        if isinstance(h, sg.StreamHandle):
            s = h.stream
            rng = " | ".join(x for x in (f"<={s.domain.at_most}" if s.domain.at_most is not None else "",
                                        f">={s.domain.at_least}" if s.domain.at_least is not None else "") if x)
            extra = f"; {', '.join(s.extras)}" if s.extras else ""
            n = self._name(h, h.name or "T")
            self.lines.append(f"sub {n} = tail({X}; {s.base}, {s.conj}; {rng}{extra})")
        elif isinstance(h, sg.StableClosure) and isinstance(h.base_sub, sg.StreamHandle):
            T = self.sub(h.base_sub)
            n = self._name(h, h.name or "L")
            self.lines.append(f"sub {n} = closure({X}; {T}; {', '.join(h.letters)})")
        else:
            gens = ", ".join(str(g) for g in sg.finite_generators(h))
            n = self._name(h, h.name or "S")
            self.lines.append(f"sub {n} = subgroup({X}; {gens})")
        return n

    def iso(self, phi: Morphism, A: str, B: str, hA, hB) -> str:
        if id(phi) in self.names:
            return self.names[id(phi)]
        n = self._name(phi, phi.name or "phi")
        pairs = ", ".join(f"{k} -> {v}" for k, v in phi.basis_images.items())
        self.lines.append(f"iso {n} : {A} -> {B} on {{ {pairs} }}")
        return n


def emit(groups=(), subgroups=(), header: str = "") -> str:
    """DSL text declaring the given groups and subgroups and all they depend on."""
    em = _Emitter()
    for g in groups:
        em.group(g)
    for h in subgroups:
        em.sub(h)
    head = "".join(f"# {line}\n" for line in header.splitlines())
    return head + "\n".join(em.lines) + "\n"
