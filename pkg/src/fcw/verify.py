"""Seeded randomized checks of the subgroup equalities, one suite per statement.

Every sample draws its own ``random.Random`` from ``(seed, index)``, so a report
depends only on the suite, its parameters, the sample count and the seed, never
on how samples were spread over worker processes.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import gadgets as gd
from . import stallings
from . import subgroup as sg
from .rewrite import UnsupportedMembership, is_trivial, normal_form, stable_letters
from .scheme import Amalgam, Extension, Free, Hnn, Star, StarPart, m_handle, presentation
from .stallings import Morphism
from .words import IDENTITY, Word, product

MAX_COUNTEREXAMPLES = 20
A_MENU = ("b", "c", "b,c^2")


class SuiteError(ValueError):
    pass


class _Undecided(Exception):
    pass


@dataclass
class VerificationReport:
    suite: str
    params: dict
    samples: int
    seed: int
    passed: int = 0
    failed: int = 0
    unknown: int = 0
    counterexamples: list = field(default_factory=list)
    millis: int | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.unknown == 0

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "params": self.params,
            "samples": self.samples,
            "seed": self.seed,
            "pass": self.passed,
            "fail": self.failed,
            "unknown": self.unknown,
            "counterexamples": self.counterexamples,
        }
        if timing:
            d["millis"] = self.millis
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)


def sample_rng(seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_word(rng: random.Random, symbols, length: int) -> Word:
    """A freely reduced word of exactly ``length`` letters."""
    out: list = []
    for _ in range(length):
        while True:
            letter = (rng.choice(symbols), rng.choice((1, -1)))
            if not out or out[-1] != (letter[0], -letter[1]):
                break
        out.append(letter)
    return Word(out)


def random_product(rng: random.Random, gens, length: int) -> Word:
    return product(g if rng.random() < 0.5 else g.inverse() for g in (rng.choice(gens) for _ in range(length)))


class _Checks:
    def __init__(self):
        self.failures: list = []

    def expect(self, cond: bool, input, expected, got) -> None:
        if not cond:
            self.failures.append({"input": str(input), "expected": str(expected), "got": str(got)})

    @staticmethod
    def verdict(v):
        if v.unknown:
            raise _Undecided(v.note)
        return v.yes


def _parse_subgroups(spec: str) -> list[list[Word]]:
    from .words import parse
    return [[parse(x) for x in part.split(",") if x.strip()] for part in spec.split(";")]


def default_A(r: int) -> str:
    return ";".join(A_MENU[i % len(A_MENU)] for i in range(r))


def configurations(r: int) -> list[str]:
    """Every choice of ``r`` subgroups from the menu, up to order."""
    return [";".join(c) for c in combinations_with_replacement(A_MENU, r)]


# contexts, built once per process


_CONTEXTS: dict = {}


def _context(suite: str, params: dict, mutate):
    key = (suite, json.dumps(params, sort_keys=True), mutate)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        ctx = SUITES[suite][0](params, mutate)
        _CONTEXTS[key] = ctx
    return ctx


def _star_context(params, mutate, join_budget=None):
    A_words = _parse_subgroups(params["A"])
    if len(A_words) != params["r"]:
        raise SuiteError(f"expected {params['r']} subgroups, got {len(A_words)}")
    if mutate == "drop-relator" and A_words[0]:
        A_words[0] = A_words[0][:-1]
    G = Free(["b", "c"], "G")
    A = [sg.StallingsFree(G, ws, name=f"A{i + 1}") for i, ws in enumerate(A_words)]
    letters = [f"t{i + 1}" for i in range(len(A))]
    K = Star(G, [StarPart(G, a, t) for a, t in zip(A, letters)], name="K")
    hnn = Hnn(G, [Extension(t, a, a) for a, t in zip(A, letters)], name="GA")
    I_aut = A[0].automaton
    for a in A[1:]:
        I_aut = stallings.intersect(I_aut, a.automaton)
    ctx = {"G": G, "A": A, "letters": letters, "K": K, "hnn": hnn, "I": I_aut,
           "gens": [Word.gen("b"), Word.gen("c")], "stable": set(letters)}
    ctx["GinK"] = m_handle(K, G)
    ctx["by"] = product(Word.gen(t) for t in letters)
    J = []
    for a in A:
        J.extend(x for x in a.generators if x not in J)
    ctx["J"] = stallings.build(G, J)
    if join_budget:
        gens = [g.conj(Word.gen(t)) for t in letters for g in ctx["gens"]]
        ctx["LJ"] = sg.BoundedSearch(K, gens, depth=6, budget=join_budget, name="LJ")
    return ctx


def _in_all(A, g) -> bool:
    return all(a.automaton.member(g) for a in A)


def _element_of(rng, aut, max_len=4) -> Word:
    basis = aut.basis
    if not basis:
        return IDENTITY
    return random_product(rng, basis, rng.randint(1, max_len))


# subgroup closures in amalgams and HNN-extensions of free groups


def _random_nontrivial(rng, symbols, lo=1, hi=3) -> Word:
    return random_word(rng, symbols, rng.randint(lo, hi))


def _pick_disjoint(rng, G, avoid, symbols, tries=30):
    for _ in range(tries):
        gens = [_random_nontrivial(rng, symbols, 1, 4) for _ in range(rng.randint(1, 2))]
        aut = stallings.build(G, gens)
        if all(stallings.intersect(aut, a).is_trivial() for a in avoid):
            return gens
    return None


def _ctx_none(params, mutate):
    return {"mutate": mutate}


def _sample_amalgam_closure(ctx, rng, chk):
    G, H = Free(["a", "b"], "G"), Free(["c", "d"], "H")
    x = _random_nontrivial(rng, "ab")
    y = _random_nontrivial(rng, "cd")
    A, B = sg.StallingsFree(G, [x]), sg.StallingsFree(H, [y])
    phi = Morphism([x], [y], G, H)
    X = Amalgam(G, H, A, B, phi, name="GH")
    family = rng.choice(("trivial", "contains"))
    gp = hp = None
    if family == "trivial":
        gp = _pick_disjoint(rng, G, [A.automaton], "ab")
        hp = _pick_disjoint(rng, H, [B.automaton], "cd")
    if gp is None or hp is None:
        family = "contains"
        gp = [x, _random_nontrivial(rng, "ab", 1, 4)]
        hp = [y, _random_nontrivial(rng, "cd", 1, 4)]
    if ctx["mutate"] == "drop-relator" and family == "contains":
        hp = hp[1:]
    Gp, Hp = sg.StallingsFree(G, gp), sg.StallingsFree(H, hp)
    closure = sg.AmalgamClosure(X, Gp, Hp)
    label = f"[{family}] A=<{x}> B=<{y}> G'=<{', '.join(map(str, gp))}> H'=<{', '.join(map(str, hp))}>"

    p = random_product(rng, list(gp) + list(hp), rng.randint(1, 6))
    chk.expect(chk.verdict(closure.member(p)), f"{label} {p}", "Yes", "No")
    pieces = normal_form(X, p)
    if pieces.symbols() <= G.alphabet:
        chk.expect(Gp.automaton.member(pieces), f"{label} {p} ~ {pieces}", "in G'", "not in G'")
    if pieces.symbols() <= H.alphabet:
        chk.expect(Hp.automaton.member(pieces), f"{label} {p} ~ {pieces}", "in H'", "not in H'")
    if family == "contains":
        k = rng.choice((1, -1, 2))
        g1 = random_product(rng, gp, rng.randint(0, 2))
        g2 = random_product(rng, gp, rng.randint(0, 2))
        w = g1 * y ** k * g2
        nf = normal_form(X, w)
        chk.expect(nf.symbols() <= G.alphabet and Gp.automaton.member(nf), f"{label} {w}",
                   "an element of G'", nf)
    g = _random_nontrivial(rng, "ab", 1, 6)
    chk.expect(chk.verdict(closure.member(g)) == Gp.automaton.member(g), f"{label} {g}",
               Gp.automaton.member(g), closure.member(g))
    h = _random_nontrivial(rng, "cd", 1, 6)
    chk.expect(chk.verdict(closure.member(h)) == Hp.automaton.member(h), f"{label} {h}",
               Hp.automaton.member(h), closure.member(h))


def _sample_hnn_closure(ctx, rng, chk):
    G = Free(["a", "b"], "G")
    x = _random_nontrivial(rng, "ab")
    y = _random_nontrivial(rng, "ab")
    A, B = sg.StallingsFree(G, [x]), sg.StallingsFree(G, [y])
    phi = Morphism([x], [y], G)
    X = Hnn(G, [Extension("t", A, B, phi)], name="Gt")
    family = rng.choice(("trivial", "contains"))
    gp = None
    if family == "trivial":
        gp = _pick_disjoint(rng, G, [A.automaton, B.automaton], "ab")
    if gp is None:
        family = "contains"
        gp = [x, y, _random_nontrivial(rng, "ab", 1, 4)]
    mutated = ctx["mutate"] == "drop-relator" and family == "contains"
    if mutated:
        gp = [gp[0], gp[2]]
    Gp = sg.StallingsFree(G, gp)
    closure = sg.StableClosure(X, Gp, ["t"], check=not mutated)
    label = f"[{family}] A=<{x}> B=<{y}> G'=<{', '.join(map(str, gp))}>"
    t = Word.gen("t")
    p = random_product(rng, list(gp) + [t], rng.randint(1, 6))
    chk.expect(chk.verdict(closure.member(p)), f"{label} {p}", "Yes", "No")
    nf = normal_form(X, p)
    if "t" not in nf.symbols():
        chk.expect(Gp.automaton.member(nf), f"{label} {p} ~ {nf}", "in G'", "not in G'")
    if family == "contains":
        k = rng.choice((1, -1, 2))
        w = x.conj(t) ** k * random_product(rng, gp, rng.randint(0, 2))
        nf = normal_form(X, w)
        chk.expect("t" not in nf.symbols() and Gp.automaton.member(nf), f"{label} {w}",
                   "an element of G'", nf)
    g = _random_nontrivial(rng, "ab", 1, 6)
    chk.expect(chk.verdict(closure.member(g)) == Gp.automaton.member(g), f"{label} {g}",
               Gp.automaton.member(g), closure.member(g))


# star suites over G = F(b, c)


def _ctx_star(params, mutate):
    return _star_context(params, mutate)


def _ctx_join(params, mutate):
    return _star_context(params, mutate, join_budget=params.get("budget", 3000))


def _relator_conjugate(rng, ctx) -> Word:
    i = rng.randrange(len(ctx["A"]))
    gens = ctx["A"][i].generators
    if not gens:
        return IDENTITY
    a = rng.choice(gens)
    t = Word.gen(ctx["letters"][i])
    rel = a.conj(t) * a.inverse()
    u = random_word(rng, ["b", "c"] + ctx["letters"], rng.randint(0, 4))
    return rel.conj(u)


def _sample_star_as_hnn(ctx, rng, chk):
    K, hnn = ctx["K"], ctx["hnn"]
    pk, ph = presentation(K), presentation(hnn)
    chk.expect(sorted(pk.generators) == sorted(ph.generators)
               and sorted(map(str, pk.relators)) == sorted(map(str, ph.relators)),
               "presentations", str(ph), str(pk))
    syms = ["b", "c"] + ctx["letters"]
    w = random_word(rng, syms, rng.randint(1, 10))
    a, b = is_trivial(K, w), is_trivial(hnn, w)
    if a.unknown or b.unknown:
        raise _Undecided(w)
    chk.expect(a.yes == b.yes, w, b, a)
    z = product(_relator_conjugate(rng, ctx) for _ in range(rng.randint(1, 3)))
    chk.expect(chk.verdict(is_trivial(K, z)), z, "Yes", "No")
    chk.expect(chk.verdict(is_trivial(hnn, z)), z, "Yes", "No")
    v = w * z
    chk.expect(chk.verdict(is_trivial(K, normal_form(hnn, v) * w.inverse())), v, "Yes", "No")


def _sample_g(rng, ctx) -> Word:
    if rng.random() < 0.5:
        return _element_of(rng, ctx["I"])
    return _random_nontrivial(rng, "bc", 1, 8)


def _sample_conjugate_intersection(ctx, rng, chk):
    K, by = ctx["K"], ctx["by"]
    g = _sample_g(rng, ctx)
    in_I = _in_all(ctx["A"], g)
    conj = g.conj(by)
    if in_I:
        chk.expect(chk.verdict(is_trivial(K, g.inverse() * conj)), g, "g = g^(t...)", "differs")
    else:
        nf = normal_form(K, conj)
        chk.expect(bool(nf.symbols() & ctx["stable"]), g, "stable letter survives", nf)
    LI = sg.Conjugated(ctx["GinK"], by)
    chk.expect(chk.verdict(LI.member(g)) == in_I, g, in_I, not in_I)


def _sample_conjugate_join(ctx, rng, chk):
    K, A, letters = ctx["K"], ctx["A"], ctx["letters"]
    # an element of J together with the visible witness in <G^t_i>
    pieces = []
    for _ in range(rng.randint(1, 4)):
        i = rng.randrange(len(A))
        if not A[i].generators:
            continue
        a = rng.choice(A[i].generators) ** rng.choice((1, -1))
        pieces.append((a, a.conj(Word.gen(letters[i]))))
    g = product(a for a, _ in pieces)
    wit = product(w for _, w in pieces)
    chk.expect(chk.verdict(is_trivial(K, wit * g.inverse())), g, f"= {wit}", "differs")
    # random products of conjugates landing in G must lie in J
    gens = [x.conj(Word.gen(t)) for t in letters for x in ctx["gens"]]
    for _ in range(4):
        p = random_product(rng, gens, rng.randint(1, 6))
        nf = normal_form(K, p)
        if not nf.symbols() & ctx["stable"]:
            chk.expect(ctx["J"].member(nf), p, "in J", nf)
    h = _random_nontrivial(rng, "bc", 1, 6)
    if not ctx["J"].member(h):
        chk.expect(not ctx["LJ"].member(h).yes, h, "not in the join", "found in L_J")


def _sample_intersection_witness(ctx, rng, chk):
    if "witness" not in ctx:
        ctx["witness"] = gd.benign_intersection(
            ctx["G"], [(ctx["G"], a) for a in ctx["A"]], ctx["letters"], A=ctx["A"])
    W = ctx["witness"]
    g = _sample_g(rng, ctx)
    chk.expect(chk.verdict(W.L.member(g)) == W.H.automaton.member(g), g,
               W.H.automaton.member(g), W.L.member(g))


def _sample_alternating(ctx, rng, chk):
    K, letters = ctx["K"], ctx["letters"]
    n = rng.randint(1, 6)
    i = rng.randrange(len(letters))
    w = IDENTITY
    for _ in range(n):
        x = _random_nontrivial(rng, "bc", 1, 4)
        w = w * x.conj(Word.gen(letters[i]))
        i = (i + rng.randrange(1, len(letters))) % len(letters) if len(letters) > 1 else i
    chk.expect(not chk.verdict(is_trivial(K, w)), w, "nontrivial", "trivial")


def _sample_equal_conjugates(ctx, rng, chk):
    K = ctx["K"]
    g = _random_nontrivial(rng, "bc", 1, 8)
    t1, t2 = (Word.gen(t) for t in ctx["letters"][:2])
    d = g.conj(t1) * g.conj(t2).inverse()
    chk.expect(chk.verdict(is_trivial(K, d)), g, "g^t1 = g^t2", normal_form(K, d))


# suites on the tails of the b_i


def _xi(m, mutate):
    if mutate != "drop-relator":
        return gd.Xi(m)
    X = gd.Xi(m)
    t, tp = X.stable_letters
    G = X.base
    b = Word.gen("b")
    phi = Morphism([b], [gd.b_index(1 - m)], G)
    A = sg.StallingsFree(G, [b])
    B = sg.StallingsFree(G, [gd.b_index(1 - m)])
    return Hnn(G, [Extension(t, A, B, phi), X.by_letter[tp]], name=f"Xi{m}")


def _ctx_tails(params, mutate):
    m = params["m"]
    X = _xi(m, mutate)
    check = mutate != "drop-relator"
    return {"m": m, "X": X, "L": gd.tail_closure(X, m, "up", check=check),
            "Ld": gd.tail_closure(X, m, "down", check=check), "stable": set(X.stable_letters)}


def _stable_free_word(rng, seed: Word, letters, tries=30, extra=()):
    """A word over ``seed`` and the stable letters whose reduced form is stable-free.

    Random words are tried first; the fallback multiplies conjugates of ``seed``
    by positive words in the stable letters, which always pinch.
    """
    t = [Word.gen(x) for x in letters]
    pool = [seed] + t + [Word.gen(x) for x in extra]
    for _ in range(tries):
        w = random_product(rng, pool, rng.randint(2, 8))
        yield w
    out = IDENTITY
    for _ in range(rng.randint(1, 4)):
        s = product(rng.choice(t) for _ in range(rng.randint(0, 3)))
        if extra and rng.random() < 0.3:
            out = out * Word.gen(rng.choice(extra), rng.choice((1, -1)))
        else:
            out = out * (seed ** rng.choice((1, -1))).conj(s)
    yield out


def _backward(ctx_X, rng, chk, seed, letters, stream_handle, stable, extra=()):
    checked = False
    for w in _stable_free_word(rng, seed, letters, extra=extra):
        nf = normal_form(ctx_X, w)
        if nf.symbols() & stable:
            continue
        checked = True
        chk.expect(stream_handle.member(nf).yes, w, "in the tail", nf)
        chk.expect(stream_handle.truncated_member(nf), w, "in the truncated tail", nf)
        break
    chk.expect(checked, seed, "a stable-free sample", "none")


def _sample_tails(ctx, rng, chk):
    m, X, L, Ld = ctx["m"], ctx["X"], ctx["L"], ctx["Ld"]
    names = X.stable_letters
    for lo, hi, handle, bad in ((m, m + 12, L, (m - 5, m - 1)), (m - 13, m - 1, Ld, (m, m + 4))):
        i = rng.randint(lo, hi)
        wit = gd.tail_witness(i, m, names=names)
        chk.expect(normal_form(X, wit) == gd.b_index(i), wit, gd.b_index(i), normal_form(X, wit))
        chk.expect(chk.verdict(handle.member(gd.b_index(i))), f"b_{i}", "Yes", "No")
        j = rng.randint(*bad)
        chk.expect(not chk.verdict(handle.member(gd.b_index(j))), f"b_{j}", "No", "Yes")
        _backward(X, rng, chk, handle.generators[0], names, handle.base_sub, ctx["stable"])


def _ctx_tails_with_a(params, mutate):
    ctx = _ctx_tails(params, mutate)
    m, X = ctx["m"], ctx["X"]
    theta = gd.Theta(m, X)
    ctx["theta"] = theta
    ctx["La"] = sg.AmalgamClosure(theta, sg.Whole(theta.left), ctx["L"])
    ctx["Gabc"] = Free(["a", "b", "c"], "Gabc")
    ctx["RHS"] = sg.StreamHandle(ctx["Gabc"], gd.tail_stream(m, "up", extras=("a",)))
    return ctx


def _sample_tails_with_a(ctx, rng, chk):
    m, theta, La, rhs = ctx["m"], ctx["theta"], ctx["La"], ctx["RHS"]
    names = ctx["X"].stable_letters
    h = wit = IDENTITY
    for _ in range(rng.randint(1, 5)):
        e = rng.choice((1, -1))
        if rng.random() < 0.4:
            h, wit = h * Word.gen("a", e), wit * Word.gen("a", e)
        else:
            i = rng.randint(m, m + 8)
            h = h * gd.b_index(i) ** e
            wit = wit * gd.tail_witness(i, m, names=names) ** e
    chk.expect(chk.verdict(La.member(h)), h, "Yes", "No")
    chk.expect(chk.verdict(is_trivial(theta, wit * h.inverse())), h, f"= {wit}", "differs")
    if rng.random() < 0.5:
        bad = h * gd.b_index(rng.randint(m - 5, m - 1))
    else:
        bad = h * Word.gen("a").conj(Word.gen("c", rng.choice((1, -1, 2))))
    expected = rhs.member(bad).yes
    chk.expect(chk.verdict(La.member(bad)) == expected, bad, expected, not expected)
    _backward(theta, rng, chk, gd.b_index(m), names, rhs, ctx["stable"], extra=("a",))


def _ctx_two_sided(params, mutate):
    m, with_a = params["m"], bool(params.get("a", 0))
    W = gd.two_sided_tail(m, with_a=with_a)
    if mutate == "drop-relator":
        # u no longer fixes b_m
        K1 = W.extra["K1"]
        L1 = W.extra["L1"]
        G = K1.base
        weak = sg.StableClosure(K1, sg.StreamHandle(G, gd.tail_stream(m + 1)), L1.letters,
                                [gd.b_index(m + 1)] + list(L1.generators[1:]), check=False)
        K = Star(G, [StarPart(K1, weak, "u"), StarPart(W.extra["K2"], W.extra["L2"], "v")],
                 name=W.K.name)
        if with_a:
            Fa = Free(["a"], "Fa")
            K = Amalgam(Fa, K, sg.Trivial(Fa), sg.Trivial(K), None, name=W.K.name)
        W = gd.BenignWitness(W.G, W.H, K, sg.BoundedSearch(K, W.L.generators), W.name, W.extra)
    return {"m": m, "a": with_a, "W": W, "stable": set(stable_letters(W.K))}


def _sample_two_sided(ctx, rng, chk):
    m, W, with_a = ctx["m"], ctx["W"], ctx["a"]
    K = W.K
    h = IDENTITY
    for _ in range(rng.randint(1, 3)):
        e = rng.choice((1, -1))
        r = rng.random()
        if with_a and r < 0.25:
            h = h * Word.gen("a", e)
        elif r < 0.6:
            h = h * gd.b_index(rng.randint(m, m + 6)) ** e
        else:
            h = h * gd.b_index(rng.randint(-6, -1)) ** e
    expr = gd.two_sided_witness(h, m, with_a)
    chk.expect(expr is not None, h, "a witness", "none")
    if expr is not None:
        val = W.L.evaluate(expr)
        chk.expect(chk.verdict(is_trivial(K, val * h.inverse())), h, f"= {expr}", "differs")
    # products of L-generators landing in G must lie in H
    gens = list(W.L.generators)
    u, v = Word.gen("u"), Word.gen("v")
    constructed = IDENTITY
    for _ in range(rng.randint(1, 4)):
        r = rng.random()
        if r < 0.4:
            constructed = constructed * gd.b_index(rng.randint(m, m + 6)).conj(u)
        elif r < 0.8:
            constructed = constructed * gd.b_index(rng.randint(-6, -1)).conj(v)
        else:
            g = rng.choice(gens)
            constructed = constructed * g * g.inverse()
    samples = [random_product(rng, gens, rng.randint(1, 6)), constructed]
    for i, p in enumerate(samples):
        nf = normal_form(K, p)
        if nf.symbols() & ctx["stable"]:
            chk.expect(i == 0, p, "stable-free", nf)
            continue
        chk.expect(W.H.member(nf).yes, p, "in H", nf)
        chk.expect(W.H.truncated_member(nf), p, "in truncated H", nf)
    # indices outside the tails are not fixed by u (resp. v)
    j = rng.randint(m - 5, m - 1)
    nf = normal_form(K, gd.b_index(j).conj(u))
    chk.expect("u" in nf.symbols(), f"b_{j}^u", "u survives", nf)
    j = rng.randint(0, 5)
    nf = normal_form(K, gd.b_index(j).conj(v))
    chk.expect("v" in nf.symbols(), f"b_{j}^v", "v survives", nf)


SUITES = {
    "lemma31": (_ctx_none, _sample_amalgam_closure),
    "lemma33": (_ctx_none, _sample_hnn_closure),
    "lemma42": (_ctx_star, _sample_star_as_hnn),
    "lemma43": (_ctx_star, _sample_conjugate_intersection),
    "lemma44": (_ctx_join, _sample_conjugate_join),
    "cor45": (_ctx_star, _sample_intersection_witness),
    "cor47": (_ctx_star, _sample_alternating),
    "remark48": (_ctx_star, _sample_equal_conjugates),
    "lemma51": (_ctx_tails, _sample_tails),
    "lemma52": (_ctx_tails_with_a, _sample_tails_with_a),
    "example54": (_ctx_two_sided, _sample_two_sided),
}

_STAR_SUITES = {"lemma42", "lemma43", "lemma44", "cor45", "cor47", "remark48"}


def suite_params(suite: str, r: int | None = None, m: int | None = None, A: str | None = None,
                 a: bool = False) -> dict:
    """Complete and check the parameters of a suite."""
    if suite not in SUITES:
        raise SuiteError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    if suite in _STAR_SUITES:
        if suite == "remark48":
            r = 2 if r is None else r
            A = A or ";".join(["b,c"] * r)
        elif suite == "cor47":
            r = 2 if r is None else r
            A = A or default_A(r)
        else:
            r = 2 if r is None else r
            A = A or default_A(r)
        if r < 1 or (suite in ("remark48", "cor47") and r < 2):
            raise SuiteError(f"{suite} needs r >= {2 if suite in ('remark48', 'cor47') else 1}")
        return {"r": r, "A": A}
    if suite in ("lemma51", "lemma52", "example54"):
        m = 0 if m is None else m
        if suite == "example54" and m < 0:
            raise SuiteError("example54 needs m >= 0")
        out = {"m": m}
        if suite == "example54":
            out["a"] = int(bool(a))
        return out
    return {}


def _run_one(suite, params, mutate, seed, index):
    ctx = _context(suite, params, mutate)
    rng = sample_rng(seed, index)
    chk = _Checks()
    try:
        SUITES[suite][1](ctx, rng, chk)
    except (_Undecided, UnsupportedMembership) as exc:
        return index, "unknown", [{"input": f"sample {index}", "expected": "decided", "got": str(exc)}]
    if chk.failures:
        return index, "fail", chk.failures
    return index, "pass", []


def _run_chunk(args):
    suite, params, mutate, seed, indices = args
    return [_run_one(suite, params, mutate, seed, i) for i in indices]


def run_suite(suite: str, params: dict | None = None, samples: int = 100, seed: int = 0,
              jobs: int = 1, mutate: str | None = None) -> VerificationReport:
    if suite not in SUITES:
        raise SuiteError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    params = dict(params) if params is not None else suite_params(suite)
    start = time.perf_counter()
    indices = list(range(samples))
    if jobs > 1 and samples > 1:
        chunks = [indices[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_run_chunk, [(suite, params, mutate, seed, c) for c in chunks if c])
            results = [r for part in parts for r in part]
    else:
        results = _run_chunk((suite, params, mutate, seed, indices))
    results.sort(key=lambda r: r[0])
    rep = VerificationReport(suite, params, samples, seed)
    for index, status, details in results:
        if status == "pass":
            rep.passed += 1
            continue
        if status == "fail":
            rep.failed += 1
        else:
            rep.unknown += 1
        for d in details:
            if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                rep.counterexamples.append({"sample": index, **d})
    rep.millis = int((time.perf_counter() - start) * 1000)
    return rep
