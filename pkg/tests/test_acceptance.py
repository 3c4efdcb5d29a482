"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import random
import time

import pytest

from fcw import gadgets, rewrite, stallings, subgroup as sg, verify
from fcw.rewrite import is_trivial, normal_form
from fcw.scheme import Extension, Free, Hnn, presentation
from fcw.words import IDENTITY, Word

from oracles import free_oracle, random_word


def _suite_clean(rep):
    return rep.failed == 0 and rep.unknown == 0


# 1. membership in free groups against independent oracles


def test_criterion_1_oracle_equivalence(record):
    rng = random.Random(20261017)
    F = Free(["a", "b"], "F")
    start = time.perf_counter()
    decided = agree = 0
    for _ in range(1000):
        gens = [random_word(rng, "ab", rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if g] or [Word.gen("a")]
        if rng.random() < 0.5:
            w = random_word(rng, "ab", rng.randint(0, 8))
        else:
            w = IDENTITY
            for _ in range(rng.randint(1, 3)):
                w = w * rng.choice(gens) ** rng.choice((1, -1))
            if len(list(w.letters())) > 8:
                w = random_word(rng, "ab", rng.randint(0, 8))
        expect = free_oracle(gens, w, "ab", rng)
        if expect is None:
            continue
        decided += 1
        agree += stallings.build(F, gens).member(w) == expect
    elapsed = time.perf_counter() - start
    ok = agree == decided and decided >= 900 and elapsed < 10
    record(1, ok, f"{agree}/{decided} oracle-decided pairs agree (1000 pairs), {elapsed:.2f}s")
    assert ok


# 2. word problem soundness


def _insert_relators(rng, node, w, rels, k=2):
    syms = sorted(node.alphabet)
    letters = list(w.letters())
    for _ in range(k):
        pos = rng.randint(0, len(letters))
        r = rng.choice(rels) ** rng.choice((1, -1))
        r = r.conj(random_word(rng, syms, rng.randint(0, 3)))
        letters[pos:pos] = list(r.letters())
    return Word(letters)


def _schemes():
    G = Free(["b", "c"], "G")
    Tb = Hnn(G, [Extension("t", sg.StallingsFree(G, [Word.gen("b")]),
                           sg.StallingsFree(G, [Word.gen("b")]))], "Gtb")
    return [Free(["b", "c"], "Fbc"), gadgets.Xi(0), gadgets.Xi(3), Tb,
            gadgets.two_sided_tail(2).K]


def test_criterion_2_word_problem(record):
    start = time.perf_counter()
    failures = unknowns = checks = 0
    for node in _schemes():
        rng = random.Random(node.name)
        rels = presentation(node).relators
        gens = sorted(node.alphabet)
        for _ in range(1000):
            w = random_word(rng, gens, rng.randint(0, 8))
            v = _insert_relators(rng, node, w, rels) if rels else w
            for x, want in ((w * w.inverse(), "yes"), (v * w.inverse(), "yes")):
                got = is_trivial(node, x)
                checks += 1
                unknowns += got.unknown
                failures += not getattr(got, want)
            g = Word.gen(rng.choice(gens))
            gv = _insert_relators(rng, node, g, rels) if rels else g
            for x in (g, gv):
                got = is_trivial(node, x)
                checks += 1
                unknowns += got.unknown
                failures += not got.no
    elapsed = time.perf_counter() - start
    ok = failures == 0 and unknowns == 0 and elapsed < 30
    record(2, ok, f"{checks} checks over 5 groups, {failures} failures, {unknowns} unknown, "
                  f"{elapsed:.2f}s")
    assert ok


# 3. intersections of conjugates of G


def test_criterion_3_intersection_suites(record):
    bad = []
    runs = 0
    for r in (1, 2, 3):
        for A in verify.configurations(r):
            for suite in ("lemma42", "lemma43"):
                rep = verify.run_suite(suite, {"r": r, "A": A}, samples=300, seed=r)
                runs += 1
                if not _suite_clean(rep):
                    bad.append((suite, A, rep.failed, rep.unknown))
    # r = 1: G & G^t = A, checked directly
    rng = random.Random(1)
    G = Free(["b", "c"], "G")
    direct = 0
    for spec in verify.A_MENU:
        A = sg.StallingsFree(G, verify._parse_subgroups(spec)[0])
        W = gadgets.benign_intersection(G, [(G, A)], ["t"], A=[A])
        for _ in range(300):
            g = random_word(rng, "bc", rng.randint(0, 8))
            if W.L.member(g).yes != A.automaton.member(g):
                bad.append(("G&G^t", spec, str(g)))
            direct += 1
    ok = not bad
    record(3, ok, f"{runs} suite runs x 300 samples, {direct} direct G&G^t=A checks, "
                  f"failures {bad[:3]}")
    assert ok


# 4. joins of conjugates


def test_criterion_4_join_suite(record):
    bad = []
    runs = 0
    for r in (1, 2, 3):
        for A in verify.configurations(r):
            rep = verify.run_suite("lemma44", {"r": r, "A": A}, samples=300, seed=r)
            runs += 1
            if not _suite_clean(rep):
                bad.append((A, rep.failed, rep.unknown))
    ok = not bad
    record(4, ok, f"{runs} configurations x 300 samples, failures {bad[:3]}")
    assert ok


# 5. tails of b_i in Xi(m)


def test_criterion_5_tails(record):
    bad = []
    stable_free = 0
    for m in (0, 1, 3):
        X = gadgets.Xi(m)
        up, down = gadgets.tail_closure(X, m, "up"), gadgets.tail_closure(X, m, "down")
        for handle, accept, reject in ((up, range(m, m + 13), range(m - 5, m)),
                                       (down, range(m - 13, m), range(m, m + 5))):
            for i in accept:
                wit = gadgets.tail_witness(i, m)
                if not (handle.member(gadgets.b_index(i)).yes
                        and is_trivial(X, wit * gadgets.b_index(i).inverse()).yes):
                    bad.append((m, handle.name, "accept", i))
            for i in reject:
                if not handle.member(gadgets.b_index(i)).no:
                    bad.append((m, handle.name, "reject", i))
        for suite in ("lemma51", "lemma52"):
            rep = verify.run_suite(suite, {"m": m}, samples=200, seed=m)
            if not _suite_clean(rep):
                bad.append((m, suite, rep.failed, rep.unknown))
            stable_free += rep.passed
    ok = not bad
    record(5, ok, f"m in (0,1,3): exact accept/reject ranges, {stable_free} suite samples "
                  f"with stable-free truncation checks, failures {bad[:3]}")
    assert ok


# 6. the two-sided tail end to end


@pytest.mark.parametrize("m", [0, 2])
def test_criterion_6_two_sided_tail(record, m):
    W = gadgets.two_sided_tail(m)
    K, L, H = W.K, W.L, W.H
    pres = presentation(K)
    rng = random.Random(m)
    accepted = 0
    for _ in range(100):
        h = IDENTITY
        for _ in range(rng.randint(1, 4)):
            i = rng.randint(m, m + 8) if rng.random() < 0.5 else rng.randint(-8, -1)
            h = h * gadgets.b_index(i) ** rng.choice((1, -1))
        v = L.member(h)
        if v.yes and is_trivial(K, L.evaluate(v.expr) * h.inverse()).yes:
            accepted += 1
    g1, g2, g3, g4 = (Word.gen(f"g{k}") for k in range(1, 5))
    confirmed = attempts = 0
    stable = set(rewrite.stable_letters(K))
    while confirmed < 100 and attempts < 2000:
        attempts += 1
        expr = IDENTITY
        for _ in range(rng.randint(1, 4)):
            r = rng.random()
            if r < 0.35:
                expr = expr * (g1 ** rng.choice((1, -1))).conj(g2 ** rng.randint(m, m + 6))
            elif r < 0.7:
                expr = expr * (g3 ** rng.choice((1, -1))).conj(g4 ** rng.randint(-6, -1))
            else:
                expr = expr * rng.choice((g1, g2, g3, g4)) ** rng.choice((1, -1))
        nf = normal_form(K, L.evaluate(expr))
        if nf.symbols() & stable:
            continue
        if H.member(nf).yes and H.truncated_member(nf):
            confirmed += 1
    ok = (accepted == 100 and confirmed == 100 and len(L.generators) == 4
          and len(pres.relators) == 14)
    record(6, ok, f"m={m}: {len(pres.generators)} generators, {len(pres.relators)} relators, "
                  f"L_J has {len(L.generators)} generators, {accepted}/100 H elements accepted "
                  f"with witnesses, {confirmed}/100 stable-free L_J words in truncated H")
    assert ok


# 7. negative control


def test_criterion_7_negative_control(record):
    same = verify.run_suite("remark48", {"r": 2, "A": "b,c;b,c"}, samples=100, seed=7)
    other = verify.run_suite("remark48", {"r": 2, "A": "b;c"}, samples=100, seed=7)
    ok = same.passed == 100 and _suite_clean(same) and other.failed > 0
    record(7, ok, f"A=G: {same.passed}/100 equal; A=<b>,<c>: {other.failed}/100 "
                  f"nontrivial differences found")
    assert ok


# 8. alternating words


def test_criterion_8_alternating_words(record):
    rep = verify.run_suite("cor47", {"r": 2, "A": "b;c"}, samples=200, seed=8)
    ok = rep.passed == 200 and _suite_clean(rep)
    record(8, ok, f"{rep.passed}/200 alternating words nontrivial")
    assert ok


# 9. exact closures against bounded search


def _product(rng, gens, n):
    out = IDENTITY
    for _ in range(n):
        out = out * rng.choice(gens) ** rng.choice((1, -1))
    return out


@pytest.mark.parametrize("m,direction", [(0, "up"), (3, "up"), (3, "down"), (1, "down")])
def test_criterion_9_closure_vs_search(record, m, direction):
    X = gadgets.Xi(m)
    C = gadgets.tail_closure(X, m, direction)
    B = sg.BoundedSearch(X, C.generators, depth=6, budget=20000)
    rng = random.Random(f"{m}{direction}")
    decided = agree = 0
    syms = sorted(X.alphabet)
    for k in range(600):
        if k % 3 == 2:
            w = random_word(rng, syms, rng.randint(1, 6))
        else:
            w = normal_form(X, _product(rng, C.generators, rng.randint(1, 5)))
        v = B.member(w)
        if v.unknown:
            continue
        decided += 1
        agree += C.member(w).yes and is_trivial(X, B.evaluate(v.expr) * w.inverse()).yes
    ok = decided >= 300 and agree == decided
    record(9, ok, f"Xi{m} {direction}: {agree}/{decided} decided queries agree")
    assert ok


# 10. determinism


def test_criterion_10_determinism(record):
    differing = []
    for suite in verify.SUITES:
        params = verify.suite_params(suite)
        a = verify.run_suite(suite, params, samples=40, seed=10, jobs=1).to_json()
        b = verify.run_suite(suite, params, samples=40, seed=10, jobs=1).to_json()
        c = verify.run_suite(suite, params, samples=40, seed=10, jobs=3).to_json()
        if not (a == b == c):
            differing.append(suite)
    ok = not differing
    record(10, ok, f"{len(verify.SUITES)} suites byte-identical across repeats and --jobs 1/3; "
                   f"differing {differing}")
    assert ok
