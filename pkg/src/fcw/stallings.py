"""Folded subgroup graphs (Stallings automata) for subgroups of free groups.

Edges carry, besides their letter, a word in the *provided* generators.  The
folding keeps the invariant that reading a closed path at the basepoint and
multiplying the edge labels gives an expression of the path's element in the
provided generators; this is what lets morphisms be applied on a user basis.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .words import IDENTITY, Word, WordError

Letter = tuple  # (symbol, +1 | -1)


class ForeignSymbol(WordError):
    pass


class AmbientMismatch(ValueError):
    pass


class NotAMember(ValueError):
    pass


# words in the provided generators: tuples of signed 1-based indices


def _xmul(x: tuple, y: tuple) -> tuple:
    if not x:
        return y
    if not y:
        return x
    i = 0
    n = len(x)
    while i < n and i < len(y) and x[n - 1 - i] == -y[i]:
        i += 1
    return x[: n - i] + y[i:]


def _xinv(x: tuple) -> tuple:
    return tuple(-g for g in reversed(x))


def _inv_letter(letter: Letter) -> Letter:
    return (letter[0], -letter[1])


def _letter_key(letter: Letter):
    return (letter[0], -letter[1])


class SubgroupAutomaton:
    """A folded core graph with basepoint 0.

    ``out[v]`` maps a letter ``(symbol, ±1)`` to the target state.  States are
    numbered breadth-first from the basepoint, visiting letters in sorted order,
    so two automata for the same subgroup are identical objects up to labels.
    """

    def __init__(self, alphabet, out, labels, generators, nonfree):
        self.alphabet = frozenset(alphabet)
        self.out: list[dict] = out
        self._labels: dict = labels
        self.generators: tuple[Word, ...] = tuple(generators)
        self.nonfree = nonfree
        self._spanning_tree()

    # construction helpers

    def _spanning_tree(self) -> None:
        n = len(self.out)
        parent: list = [None] * n
        tree_word = [IDENTITY] * n
        seen = [False] * n
        seen[0] = True
        tree_edges = set()
        q = deque([0])
        while q:
            v = q.popleft()
            for letter in sorted(self.out[v], key=_letter_key):
                w = self.out[v][letter]
                if not seen[w]:
                    seen[w] = True
                    parent[w] = (v, letter)
                    tree_word[w] = tree_word[v] * Word.gen(letter[0], letter[1])
                    tree_edges.add((v, letter))
                    tree_edges.add((w, _inv_letter(letter)))
                    q.append(w)
        self.tree_word = tree_word
        self._parent = parent
        basis = []
        basis_edge = {}
        for v in range(n):
            for letter in sorted(self.out[v], key=_letter_key):
                if letter[1] < 0 or (v, letter) in tree_edges:
                    continue
                w = self.out[v][letter]
                idx = len(basis) + 1
                basis.append(tree_word[v] * Word.gen(letter[0], 1) * tree_word[w].inverse())
                basis_edge[(v, letter)] = idx
                basis_edge[(w, _inv_letter(letter))] = -idx
        self.basis = tuple(basis)
        self._basis_edge = basis_edge

    # basic queries

    @property
    def n_states(self) -> int:
        return len(self.out)

    def n_edges(self) -> int:
        return sum(1 for v in range(len(self.out)) for l in self.out[v] if l[1] > 0)

    def rank(self) -> int:
        return self.n_edges() - self.n_states + 1

    def is_trivial(self) -> bool:
        return not self.out[0]

    def check(self, w: Word) -> None:
        for sym, _ in w.syllables:
            if sym not in self.alphabet:
                raise ForeignSymbol(f"symbol {sym!r} is not in the ambient free group")

    def step(self, state: int, sym: str, exp: int) -> tuple[int, int]:
        """Follow ``sym^exp`` from ``state``; returns (end state, steps taken).

        Runs through a cycle are shortcut, so huge exponents are cheap.
        """
        letter = (sym, 1 if exp > 0 else -1)
        k = abs(exp)
        seen = {}
        i = 0
        v = state
        while i < k:
            nxt = self.out[v].get(letter)
            if nxt is None:
                return v, i
            if v in seen:
                period = i - seen[v]
                i += ((k - i) // period) * period
                seen = {}
                if i >= k:
                    break
            else:
                seen[v] = i
            v = nxt
            i += 1
        return v, k

    def trace(self, w: Word, start: int = 0):
        """Read ``w`` from ``start``; returns the end state or None if stuck."""
        v = start
        for sym, exp in w.syllables:
            v, done = self.step(v, sym, exp)
            if done < abs(exp):
                return None
        return v

    def member(self, w: Word) -> bool:
        self.check(w)
        return self.trace(w) == 0

    def express(self, w: Word):
        """Word in the spanning-tree basis ``x1, x2, ...`` spelling ``w``, or None."""
        self.check(w)
        v = 0
        out = []
        for letter in w.letters():
            nxt = self.out[v].get(letter)
            if nxt is None:
                return None
            idx = self._basis_edge.get((v, letter))
            if idx is not None:
                out.append((f"x{abs(idx)}", 1 if idx > 0 else -1))
            v = nxt
        if v != 0:
            return None
        return Word(out)

    def expand_basis_word(self, x: Word) -> Word:
        images = {f"x{i + 1}": b for i, b in enumerate(self.basis)}
        return x.substitute(images)

    def express_provided(self, w: Word):
        """Tuple of signed generator indices (1-based) spelling ``w``, or None."""
        self.check(w)
        v = 0
        out: tuple = ()
        for letter in w.letters():
            nxt = self.out[v].get(letter)
            if nxt is None:
                return None
            out = _xmul(out, self._labels[(v, letter)])
            v = nxt
        if v != 0:
            return None
        return out

    def coset_rep(self, g: Word) -> Word:
        """Canonical representative of the right coset ``A g``."""
        self.check(g)
        v = 0
        syl = list(g.syllables)
        for i, (sym, exp) in enumerate(syl):
            v2, done = self.step(v, sym, exp)
            if done < abs(exp):
                # a stuck walk never entered a cycle, so ``done`` is exact
                rest = [(sym, exp - done if exp > 0 else exp + done)] + syl[i + 1:]
                return self.tree_word[v2] * Word(rest)
            v = v2
        return self.tree_word[v]

    def to_dot(self, name: str = "A") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for v in range(self.n_states):
            shape = "doublecircle" if v == 0 else "circle"
            lines.append(f"  {v} [shape={shape}];")
        for v in range(self.n_states):
            for letter in sorted(self.out[v], key=_letter_key):
                if letter[1] > 0:
                    lines.append(f'  {v} -> {self.out[v][letter]} [label="{letter[0]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"<SubgroupAutomaton <{gens}> states={self.n_states} rank={self.rank()}>"


# folding


class _Graph:
    """Multigraph used during folding; adjacency lists of (target, label)."""

    def __init__(self):
        self.adj: dict[int, dict[Letter, list]] = {0: {}}
        self.next_id = 1
        self.nonfree = False

    def new_state(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.adj[v] = {}
        return v

    def add_edge(self, v, letter, w, lab):
        self.adj[v].setdefault(letter, []).append((w, lab))
        self.adj[w].setdefault(_inv_letter(letter), []).append((v, _xinv(lab)))

    def _remove_entry(self, v, letter, entry):
        lst = self.adj[v][letter]
        lst.remove(entry)
        if not lst:
            del self.adj[v][letter]

    def _retag(self, x, delta):
        dinv = _xinv(delta)
        for letter, lst in list(self.adj[x].items()):
            new_lst = []
            for (w, lab) in lst:
                new = _xmul(dinv, lab)
                if w == x:
                    new = _xmul(new, delta)
                else:
                    back = self.adj[w][_inv_letter(letter)]
                    back[back.index((x, _xinv(lab)))] = (x, _xinv(new))
                new_lst.append((w, new))
            self.adj[x][letter] = new_lst

    def _merge(self, keep, gone):
        for letter, lst in self.adj.pop(gone).items():
            for (w, lab) in lst:
                if w == gone:
                    self.adj[keep].setdefault(letter, []).append((keep, lab))
                else:
                    back = self.adj[w][_inv_letter(letter)]
                    back[back.index((gone, _xinv(lab)))] = (keep, _xinv(lab))
                    self.adj[keep].setdefault(letter, []).append((w, lab))

    def fold(self):
        pending = deque(self.adj)
        while pending:
            v = pending.popleft()
            if v not in self.adj:
                continue
            for letter, lst in list(self.adj[v].items()):
                if len(lst) < 2:
                    continue
                (w1, lab1), (w2, lab2) = lst[0], lst[1]
                if w1 == w2:
                    if lab1 != lab2:
                        self.nonfree = True
                    self._remove_entry(v, letter, (w2, lab2))
                    self._remove_entry(w2, _inv_letter(letter), (v, _xinv(lab2)))
                else:
                    keep, gone, lk, lg = w1, w2, lab1, lab2
                    if gone == 0:
                        keep, gone, lk, lg = w2, w1, lab2, lab1
                    self._retag(gone, _xmul(_xinv(lg), lk))
                    self._merge(keep, gone)
                    pending.append(keep)
                pending.append(v)
                break

    def trim(self):
        changed = True
        while changed:
            changed = False
            for v in list(self.adj):
                if v == 0:
                    continue
                deg = sum(len(l) for l in self.adj[v].values())
                if deg <= 1:
                    for letter, lst in self.adj.pop(v).items():
                        for (w, lab) in lst:
                            self._remove_entry(w, _inv_letter(letter), (v, _xinv(lab)))
                    changed = True

    def finish(self, alphabet, generators) -> SubgroupAutomaton:
        order = {0: 0}
        q = deque([0])
        while q:
            v = q.popleft()
            for letter in sorted(self.adj[v], key=_letter_key):
                w = self.adj[v][letter][0][0]
                if w not in order:
                    order[w] = len(order)
                    q.append(w)
        out = [dict() for _ in order]
        labels = {}
        for v, i in order.items():
            for letter, lst in self.adj[v].items():
                w, lab = lst[0]
                out[i][letter] = order[w]
                labels[(i, letter)] = lab
        return SubgroupAutomaton(alphabet, out, labels, generators, self.nonfree)


def _alphabet_of(ambient) -> frozenset:
    if ambient is None:
        return None
    if isinstance(ambient, (set, frozenset, list, tuple)):
        return frozenset(ambient)
    return frozenset(ambient.alphabet)


def build(ambient, generators: Sequence[Word]) -> SubgroupAutomaton:
    """Fold the bouquet of ``generators`` into a core subgroup graph."""
    generators = [g if isinstance(g, Word) else Word(g) for g in generators]
    alphabet = _alphabet_of(ambient)
    if alphabet is None:
        alphabet = frozenset(s for g in generators for s in g.symbols())
    g_ = _Graph()
    for idx, gen in enumerate(generators, start=1):
        for sym, _ in gen.syllables:
            if sym not in alphabet:
                raise ForeignSymbol(f"symbol {sym!r} is not in the ambient free group")
        letters = list(gen.letters())
        if not letters:
            continue
        v = 0
        for i, letter in enumerate(letters):
            w = 0 if i == len(letters) - 1 else g_.new_state()
            g_.add_edge(v, letter, w, (idx,) if i == 0 else ())
            v = w
    g_.fold()
    g_.trim()
    aut = g_.finish(alphabet, generators)
    if aut.rank() != len([g for g in generators]):
        aut.nonfree = True
    return aut


def member(A: SubgroupAutomaton, w: Word) -> bool:
    return A.member(w)


def express(A: SubgroupAutomaton, w: Word):
    return A.express(w)


def rank(A: SubgroupAutomaton) -> int:
    return A.rank()


def basis(A: SubgroupAutomaton) -> list[Word]:
    return list(A.basis)


def coset_rep(A: SubgroupAutomaton, g: Word) -> Word:
    return A.coset_rep(g)


def _same_ambient(A, B):
    if A.alphabet != B.alphabet:
        raise AmbientMismatch("automata live in different free groups")


def equal(A: SubgroupAutomaton, B: SubgroupAutomaton) -> bool:
    _same_ambient(A, B)
    return all(B.member(x) for x in A.basis) and all(A.member(x) for x in B.basis)


def contains(A: SubgroupAutomaton, B: SubgroupAutomaton) -> bool:
    """Whether ``B <= A``."""
    _same_ambient(A, B)
    return all(A.member(x) for x in B.basis)


def intersect(A: SubgroupAutomaton, B: SubgroupAutomaton) -> SubgroupAutomaton:
    """Pullback of the two graphs at the pair of basepoints."""
    _same_ambient(A, B)
    index = {(0, 0): 0}
    words = [IDENTITY]
    edges = []
    q = deque([(0, 0)])
    while q:
        p = q.popleft()
        a, b = p
        for letter in sorted(A.out[a], key=_letter_key):
            if letter not in B.out[b]:
                continue
            r = (A.out[a][letter], B.out[b][letter])
            if r not in index:
                index[r] = len(index)
                words.append(words[index[p]] * Word.gen(letter[0], letter[1]))
                q.append(r)
            if letter[1] > 0:
                edges.append((index[p], letter, index[r]))
    gens = []
    # closed-path words for every edge; folding discards the redundant ones
    for (u, letter, v) in edges:
        x = words[u] * Word.gen(letter[0], 1) * words[v].inverse()
        if x:
            gens.append(x)
    core = build(A.alphabet, gens)
    return build(A.alphabet, list(core.basis))


# double cosets


def find_split(h: Word, S: SubgroupAutomaton, G: SubgroupAutomaton):
    """Some ``u`` in ``S`` with ``u^-1 h`` in ``G``, or None if ``h`` is not in ``S G``.

    Breadth-first search in the product of the graph of ``S`` with the graph of
    ``G`` extended by a hair spelling ``h^-1``.
    """
    out = [dict(d) for d in G.out]
    v = 0
    for letter in h.inverse().letters():
        nxt = out[v].get(letter)
        if nxt is None:
            nxt = len(out)
            out.append({})
            out[v][letter] = nxt
            out[nxt][_inv_letter(letter)] = v
        v = nxt
    start = (0, v)
    goal = (0, 0)
    if start == goal:
        return IDENTITY
    prev = {start: None}
    q = deque([start])
    while q:
        p = q.popleft()
        s, d = p
        for letter in sorted(S.out[s], key=_letter_key):
            nd = out[d].get(letter)
            if nd is None:
                continue
            r = (S.out[s][letter], nd)
            if r in prev:
                continue
            prev[r] = (p, letter)
            if r == goal:
                path = []
                while prev[r] is not None:
                    r, letter = prev[r]
                    path.append(letter)
                return Word(reversed(path))
            q.append(r)
    return None


# morphisms


class Morphism:
    """Isomorphism between two subgroups of free groups given on a free basis."""

    def __init__(self, domain_basis: Sequence[Word], images: Sequence[Word], ambient=None,
                 codomain_ambient=None, name: str | None = None):
        if len(domain_basis) != len(images):
            raise ValueError("basis and images differ in length")
        self.name = name
        self.domain = build(ambient, domain_basis)
        self.codomain = build(codomain_ambient if codomain_ambient is not None else ambient, images)
        self.basis_images = dict(zip(self.domain.generators, self.codomain.generators))
        self._images = tuple(self.codomain.generators)

    def problems(self) -> list[str]:
        out = []
        if self.domain.nonfree:
            out.append("domain generators are not a free basis")
        if self.codomain.nonfree:
            out.append("images are not a free basis of the image subgroup")
        if not self.domain.nonfree and self.domain.rank() != self.codomain.rank():
            out.append("rank of domain and codomain differ")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def apply(self, w: Word) -> Word:
        x = self.domain.express_provided(w)
        if x is None:
            raise NotAMember(f"{w} is not in the domain")
        out = IDENTITY
        for g in x:
            img = self._images[abs(g) - 1]
            out = out * (img if g > 0 else img.inverse())
        return out

    def inverse(self) -> "Morphism":
        inv = Morphism.__new__(Morphism)
        inv.name = f"{self.name}^-1" if self.name else None
        inv.domain = self.codomain
        inv.codomain = self.domain
        inv.basis_images = dict(zip(self.codomain.generators, self.domain.generators))
        inv._images = tuple(self.domain.generators)
        return inv

    def __repr__(self) -> str:
        body = ", ".join(f"{k} -> {v}" for k, v in self.basis_images.items())
        return f"Morphism({self.name or ''}{{{body}}})"


def apply_morphism(phi: Morphism, w: Word) -> Word:
    return phi.apply(w)


def subgroup_image(phi: Morphism, S: SubgroupAutomaton) -> SubgroupAutomaton:
    return build(phi.codomain.alphabet, [phi.apply(x) for x in S.basis])


def enumerate_products(generators: Iterable[Word], max_factors: int) -> set:
    """All reduced products of at most ``max_factors`` generators or inverses."""
    letters = []
    for g in generators:
        letters.append(g)
        letters.append(g.inverse())
    frontier = {IDENTITY}
    seen = {IDENTITY}
    for _ in range(max_factors):
        nxt = set()
        for x in frontier:
            for g in letters:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        frontier = nxt
    return seen
