"""``fcw`` command line: workspaces, reductions, membership, suites, DOT, gadgets.

Exit codes: 0 success, 1 parse or validation error, 2 Unknown verdict,
3 suite failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import dsl, gadgets, rewrite, stallings
from . import subgroup as sg
from . import verify
from .scheme import Amalgam, Free, Hnn, Node, Star, presentation
from .words import Word, WordError, parse as parse_word

EXIT_OK, EXIT_INVALID, EXIT_UNKNOWN, EXIT_SUITE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


# built-in groups


def builtin(name: str) -> dsl.Workspace | None:
    """Workspaces for ``Xi<m>``, ``Theta<m>``, ``KJ<m>`` and ``aKJ<m>``."""
    ws = dsl.Workspace()
    if m := re.fullmatch(r"Xi(-?\d+)", name):
        k = int(m.group(1))
        X = gadgets.Xi(k, name=name)
        ws.groups[name] = X
        ws.subgroups["L"] = gadgets.tail_closure(X, k, "up")
        ws.subgroups["Ldown"] = gadgets.tail_closure(X, k, "down")
        ws.subgroups["G"] = sg.make_handle(X, [Word.gen("b"), Word.gen("c")], name="G")
        return ws
    if m := re.fullmatch(r"Theta(-?\d+)", name):
        k = int(m.group(1))
        T = gadgets.Theta(k, name=name)
        ws.groups[name] = T
        ws.subgroups["G"] = sg.make_handle(T, [Word.gen("b"), Word.gen("c")], name="G")
        return ws
    if m := re.fullmatch(r"(a?)KJ(\d+)", name):
        w = gadgets.two_sided_tail(int(m.group(2)), with_a=bool(m.group(1)))
        ws.groups[name] = w.K
        ws.subgroups["LJ"] = w.L
        ws.subgroups["H"] = w.H
        ws.subgroups["G"] = sg.make_handle(w.K, sg.node_generators(w.G), name="G")
        return ws
    return None


def load_workspace(files) -> dsl.Workspace:
    ws = dsl.Workspace()
    for path in files or ():
        try:
            if path == "-":
                dsl.parse(sys.stdin.read(), source="<stdin>", workspace=ws)
            else:
                dsl.load([path], workspace=ws)
        except OSError as exc:
            raise CliError(f"{path}: {exc.strerror}") from None
    diags = ws.diagnostics()
    if diags:
        raise CliError("\n".join(diags))
    return ws


def scope(args) -> tuple[dsl.Workspace, dsl.Workspace, Node]:
    """(loaded workspace, workspace holding the group, the group)."""
    ws = load_workspace(args.workspace)
    if args.group in ws.groups:
        home = ws
    else:
        home = builtin(args.group)
        if home is None:
            raise CliError(f"unknown group {args.group!r}")
    return ws, home, home.groups[args.group]


def find_subgroup(ws, home, G, name):
    H = home.subgroups.get(name) or ws.subgroups.get(name)
    if H is None:
        raise CliError(f"unknown subgroup {name!r}")
    if H.ambient is not G:
        raise CliError(f"subgroup {name!r} does not live in {G.name!r}")
    return H


def resolve(args, need_sub: bool = False):
    ws, home, G = scope(args)
    if not need_sub:
        return G, None
    if args.subgroup is None:
        raise CliError("a subgroup is required (-s)")
    return G, find_subgroup(ws, home, G, args.subgroup)


def read_word(G: Node, text: str) -> Word:
    try:
        w = parse_word(text, G.alphabet)
    except WordError as exc:
        raise CliError(f"bad word: {exc}") from None
    return w


# commands


def cmd_check(args, out) -> int:
    files = args.files or ["-"]
    ws = load_workspace(files)
    out.write(f"ok: {len(ws.groups)} groups, {len(ws.subgroups)} subgroups, "
              f"{len(ws.isos)} isomorphisms\n")
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    G, _ = resolve(args)
    w = read_word(G, args.word)
    try:
        form = rewrite.reduce_form(G, w)
    except rewrite.UnsupportedMembership as exc:
        out.write(f"Unknown: {exc}\n")
        return EXIT_UNKNOWN
    out.write(f"{form}\n")
    return EXIT_OK


def cmd_member(args, out) -> int:
    G, H = resolve(args, need_sub=True)
    w = read_word(G, args.word)
    try:
        v = H.member(w)
    except rewrite.UnsupportedMembership as exc:
        v = rewrite.Unknown(str(exc))
    out.write(f"{v}\n")
    if args.witness and v.yes and v.expr is not None:
        out.write(f"witness: {v.expr}\n")
        gens = H.generators or ()
        for i, g in enumerate(gens, 1):
            if f"g{i}" in {s for s in v.expr.symbols()}:
                out.write(f"  g{i} = {g}\n")
    if v.unknown:
        if v.note:
            out.write(f"note: {v.note}\n")
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_intersect(args, out) -> int:
    ws, home, G = scope(args)
    A, B = (find_subgroup(ws, home, G, n) for n in (args.A, args.B))
    for name, H in ((args.A, A), (args.B, B)):
        if not isinstance(H, sg.StallingsFree):
            raise CliError(f"{name!r} is not a finitely generated subgroup of a free group")
    I = stallings.intersect(A.automaton, B.automaton)
    basis = [str(g) for g in I.basis]
    if args.emit == "json":
        out.write(json.dumps({"rank": len(basis), "basis": basis}) + "\n")
    else:
        out.write(f"rank {len(basis)}\n")
        for g in basis:
            out.write(f"{g}\n")
    return EXIT_OK


def cmd_dot(args, out) -> int:
    if args.subgroup is None:
        G, _ = resolve(args)
        out.write(scheme_dot(G))
        return EXIT_OK
    G, H = resolve(args, need_sub=True)
    if isinstance(H, sg.StallingsFree):
        out.write(H.automaton.to_dot(args.subgroup))
    elif isinstance(H, sg.StreamHandle):
        out.write(H.window_automaton(args.radius).to_dot(args.subgroup))
    else:
        raise CliError(f"{args.subgroup!r} ({H.strategy}) has no automaton")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        params = verify.suite_params(args.suite, r=args.r, m=args.m, A=args.A, a=args.a)
        rep = verify.run_suite(args.suite, params, samples=args.samples, seed=args.seed,
                               jobs=args.jobs, mutate=args.mutate)
    except verify.SuiteError as exc:
        raise CliError(str(exc)) from None
    out.write(rep.to_json(timing=args.timing) + "\n")
    if rep.failed:
        return EXIT_SUITE
    if rep.unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_gadget(args, out) -> int:
    if args.name == "xi":
        X = gadgets.Xi(args.m)
        groups, subs = [X], [gadgets.tail_closure(X, args.m, "up"),
                             gadgets.tail_closure(X, args.m, "down")]
        header = (f"HNN-extension of <b, c> by t, t' with b^t = b_{1 - args.m}, "
                  f"b^t' = b_{-args.m}, c^t = c^t' = c^2, where b_i = c^-i b c^i")
    elif args.name == "theta":
        T = gadgets.Theta(args.m)
        groups, subs, header = [T], [], "<a> free product with Xi"
    else:
        if args.m < 0:
            raise CliError("example54 needs m >= 0")
        w = gadgets.two_sided_tail(args.m, with_a=args.a)
        groups, subs = [w.K], [w.L, w.H]
        header = (f"H = <b_i : i <= -1 or i >= {args.m}> equals <b, c> intersected with "
                  f"LJ in {w.K.name}")
    if args.emit == "dsl":
        out.write(dsl.emit(groups, subs, header=header))
    elif args.emit == "json":
        K = groups[0]
        pres = presentation(K)
        out.write(json.dumps({
            "group": K.name,
            "generators": list(pres.generators),
            "relators": [str(r) for r in pres.relators],
            "subgroups": {h.name: [str(g) for g in (h.generators or ())] for h in subs},
        }, sort_keys=True) + "\n")
    else:
        out.write(scheme_dot(groups[0]))
    return EXIT_OK


def scheme_dot(node: Node) -> str:
    """The construction tree of a scheme as a DOT graph."""
    lines = ["digraph scheme {"]
    seen: dict[int, str] = {}

    def visit(n: Node) -> str:
        if id(n) in seen:
            return seen[id(n)]
        nid = f"n{len(seen)}"
        seen[id(n)] = nid
        if isinstance(n, Free):
            label = f"{n.name} = F({', '.join(n.gens)})"
        elif isinstance(n, Hnn):
            label = f"{n.name} = HNN({', '.join(n.stable_letters)})"
        elif isinstance(n, Amalgam):
            label = f"{n.name} = amalgam"
        elif isinstance(n, Star):
            label = f"{n.name} = star({', '.join(p.t for p in n.parts)})"
        else:
            label = n.name
        lines.append(f'  {nid} [label="{label}"];')
        kids = []
        if isinstance(n, Hnn):
            kids = [n.base]
        elif isinstance(n, Amalgam):
            kids = [n.left, n.right]
        elif isinstance(n, Star):
            kids = [n.M] + [p.K for p in n.parts]
        for k in kids:
            lines.append(f"  {nid} -> {visit(k)};")
        return nid

    visit(node)
    lines.append("}")
    return "\n".join(lines) + "\n"


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fcw", description="Free groups, HNN-extensions, "
                                "amalgams and benign subgroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp, need_sub=False):
        sp.add_argument("-w", "--workspace", action="append", default=[],
                        help="DSL file to load (repeatable, '-' for stdin)")
        sp.add_argument("-g", "--group", required=True, help="group name (or Xi<m>, Theta<m>, KJ<m>)")
        if need_sub is not None:
            sp.add_argument("-s", "--subgroup", required=need_sub, help="subgroup name")

    sp = sub.add_parser("check", help="parse and validate DSL files")
    sp.add_argument("files", nargs="*", help="DSL files, '-' for stdin")
    sp.set_defaults(func=cmd_check, workspace=[])

    sp = sub.add_parser("reduce", help="print the reduced form of a word")
    group_args(sp, None)
    sp.add_argument("word")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("member", help="decide membership of a word in a subgroup")
    group_args(sp, True)
    sp.add_argument("--witness", action="store_true", help="print an expression over generators")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("intersect", help="basis of the intersection of two subgroups")
    group_args(sp, None)
    sp.add_argument("A")
    sp.add_argument("B")
    sp.add_argument("--emit", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_intersect)

    sp = sub.add_parser("dot", help="DOT export of a subgroup automaton or a scheme")
    group_args(sp, False)
    sp.add_argument("--radius", type=int, default=4, help="index window for stream subgroups")
    sp.set_defaults(func=cmd_dot)

    sp = sub.add_parser("verify", help="run a property suite and print a JSON report")
    sp.add_argument("suite", choices=sorted(verify.SUITES))
    sp.add_argument("--r", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--A", help="subgroups A_i as 'b;c;b,c^2'")
    sp.add_argument("--a", action="store_true", help="example54: adjoin the free letter a")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include wall time in the report")
    sp.add_argument("--mutate", choices=["drop-relator"], help="break the scheme on purpose")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gadget", help="print a built-in construction")
    sp.add_argument("name", choices=["xi", "theta", "example54"])
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--a", action="store_true", help="example54: adjoin the free letter a")
    sp.add_argument("--emit", choices=["dsl", "json", "dot"], default="dsl")
    sp.set_defaults(func=cmd_gadget)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except dsl.DslError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except (ValueError, TypeError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
