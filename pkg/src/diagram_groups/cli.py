"""Diagram groups over semigroup presentations, from the shell.

Exit codes: 0 success, 1 negative verdict, 2 usage or input error, 3 bound exceeded
or inconclusive search.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import abelian, diagram as dg, pl, squier, subgroups, thompson, wreath
from .presentation import (
    BoundExceeded,
    Equal,
    Limits,
    Presentation,
    PresentationError,
    parse_presentation,
    parse_word,
    words_equal_bounded,
)

OK, NEGATIVE, USAGE, BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _builtin(name: str):
    """(presentation, default base) for a builtin name."""
    if name == "thompson":
        return thompson.THOMPSON, ("x",)
    if name == "thompson_sq":
        return parse_presentation("x | x x = x", "thompson_sq"), ("x",)
    if name == "q_t26":
        return abelian.q_t26(), ("a0", "b0")
    if name == "wreath_z":
        p, base = squier.named_builder("wreath_with_Z")
        return Presentation(p.alphabet, p.relations, "wreath_z"), base
    if name in ("big_o", "big_O"):
        return squier.named_builder("big_O")
    if name in ("direct_power", "bullet", "direct_product", "free_product"):
        return squier.named_builder(name)
    return None


def load_presentation(src: str):
    got = _builtin(src)
    if got is not None:
        return got
    path = Path(src)
    if not path.exists():
        raise UsageError(f"no builtin or file named {src!r}")
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise UsageError(f"{src}: empty presentation file")
    return parse_presentation(lines[0], name=path.stem), None


def _read(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    return Path(src).read_text(encoding="utf-8")


def _limits(args) -> Limits:
    return Limits(max_word_len=args.max_len, max_visited=args.max_visited)


def _base(args, p, default):
    if args.base:
        return parse_word(args.base, p.alphabet)
    if default is None:
        raise UsageError("--base is required for this presentation")
    return default


def _load_diagram(args, src):
    p, _ = load_presentation(args.presentation)
    return dg.parse_diagram(_read(src), p)


def _emit_diagram(args, d):
    if args.format == "dot":
        print(dg.to_dot(d), end="")
    else:
        print(dg.to_text(d), end="")


# -- subcommands ------------------------------------------------------------------

def cmd_reduce(args):
    _emit_diagram(args, dg.reduce(_load_diagram(args, args.file)))
    return OK


def cmd_mul(args):
    d = _load_diagram(args, args.files[0])
    for f in args.files[1:]:
        d = dg.group_mul(d, _load_diagram(args, f))
    _emit_diagram(args, d)
    return OK


def cmd_inv(args):
    _emit_diagram(args, dg.group_inv(_load_diagram(args, args.file)))
    return OK


def cmd_eq(args):
    if args.words:
        p, _ = load_presentation(args.presentation)
        w1, w2 = (parse_word(w, p.alphabet) for w in (args.a, args.b))
        verdict = words_equal_bounded(p, w1, w2, _limits(args))
        if isinstance(verdict, Equal):
            print(f"equal ({len(verdict.witness.steps)} steps)")
            return OK
        if isinstance(verdict, BoundExceeded):
            print(f"bound exceeded after {verdict.visited} words")
            return BOUND
        print(f"not equal (class of {verdict.visited} words exhausted)")
        return NEGATIVE
    same = dg.equal(_load_diagram(args, args.a), _load_diagram(args, args.b))
    print("equal" if same else "not equal")
    return OK if same else NEGATIVE


def cmd_comp(args):
    d = _load_diagram(args, args.file)
    dec = dg.decompose_components(d)
    p = d.presentation
    print(f"comp {dec.comp()}")
    for part in dec.parts:
        print(f"  {p.fmt(part.top)}: {part.cell_count} cells")
    return OK


def cmd_nf(args):
    if args.diagram:
        d = _load_diagram(args, args.diagram)
        print(thompson.diagram_to_nf(d))
        return OK
    if args.word is None:
        raise UsageError("nf needs a word or --diagram FILE")
    f = thompson.parse_nf(args.word)
    if args.to_diagram:
        _emit_diagram(args, thompson.nf_to_diagram(f, args.k))
    else:
        print(f)
    return OK


def cmd_pl(args):
    f = pl.pl_from_nf(thompson.parse_nf(args.word))
    if args.halfline:
        f = pl.to_halfline(f)
    if args.eval is not None:
        print(pl.format_dyadic(pl.pl_eval(f, pl.parse_dyadic(args.eval))))
    elif args.support:
        parts = []
        for lo, hi in pl.support(f):
            hi_s = "inf" if hi == pl.INF else pl.format_dyadic(hi)
            parts.append(f"({pl.format_dyadic(lo)}, {hi_s})")
        print(" ".join(parts) if parts else "empty")
    elif args.format == "csv":
        print(pl.to_csv(f), end="")
    else:
        print(pl.to_text(f))
    return OK


def _thompson_diagram(args):
    if args.diagram:
        return _load_diagram(args, args.diagram)
    if args.word is None:
        raise UsageError("give a word in the x_i or --diagram FILE")
    return thompson.nf_to_diagram(thompson.parse_nf(args.word), args.k)


def cmd_rho(args):
    print(abelian.rho(_thompson_diagram(args)))
    return OK


def cmd_fprime(args):
    inside = abelian.in_derived_subgroup_F(_thompson_diagram(args))
    print("in F'" if inside else "not in F'")
    return OK if inside else NEGATIVE


def cmd_squier(args):
    p, default = load_presentation(args.presentation)
    base = _base(args, p, default)
    k = squier.build_component(p, base, max_depth=args.depth, max_word_len=args.max_len,
                               max_visited=args.max_visited)
    if args.format == "dot":
        print(squier.to_dot(k), end="")
        return OK
    if args.json:
        print(squier.to_json(k))
        return OK
    print(k.summary())
    g = squier.pi1_presentation(k, tietze=not args.no_tietze)
    print(f"pi1 {'of truncation ' if k.truncated else ''}{g}")
    for name, e in g.edges.items():
        pre, r, suf = e
        u, v = p.relations[r]
        print(f"  {name} = ({p.fmt(pre)}, {p.fmt(u)} -> {p.fmt(v)}, {p.fmt(suf)})")
    return OK


def cmd_build(args):
    if args.kind == "product":
        q, default = load_presentation(args.presentation)
        family = {}
        for spec in args.family or []:
            try:
                letter, src, base = spec.split(":")
            except ValueError:
                raise UsageError("--family wants LETTER:PRESENTATION:BASE") from None
            fp, _ = load_presentation(src)
            family[letter] = (fp, parse_word(base, fp.alphabet))
        base = _base(args, q, default)
        out = squier.diagram_product_presentation(q, base, family)
        print(out)
        print(f"base {out.fmt(base)}")
        return OK
    if args.kind == "f_wr_z":
        q, base, family = squier.f_wr_z_input()
        p = squier.diagram_product_presentation(q, base, family)
    else:
        p, base = squier.named_builder(args.kind, args.n)
    print(p)
    print(f"base {p.fmt(base)}")
    return OK


def cmd_zwrz(args):
    if args.action == "thm18":
        a, b = subgroups.thm18_generators(**subgroups.section4_data())
        rep = subgroups.verify_zwrz(a, b, args.depth)
    elif args.action == "verify":
        a, b = thompson.parse_nf(args.a), thompson.parse_nf(args.b)
        rep = subgroups.verify_zwrz(thompson.nf_to_diagram(a, 3), thompson.nf_to_diagram(b, 3), args.depth)
    else:
        p, default = load_presentation(args.presentation)
        w = _base(args, p, default)
        res = subgroups.thm24_witness_search(p, w, max_len=args.word_len, limits=_limits(args))
        if isinstance(res, subgroups.SearchNotFound):
            print(f"not found: {res.reason}")
            return BOUND
        print(f"x = {p.fmt(res.x)}, y = {p.fmt(res.y)}, z = {p.fmt(res.z)}")
        print(dg.to_text(res.delta), end="")
        return OK
    print(rep)
    return OK if rep.passed else NEGATIVE


def cmd_wreath(args):
    if args.action == "phi":
        print(wreath.phi_k(wreath.g_k_n(args.k, args.g)))
    elif args.action == "g":
        print(wreath.format_wreath(wreath.g_k_n(args.k, args.g)))
    else:
        g = wreath.g_k_n(2, args.g)
        print(wreath.relator_cost_zwrz(g))
    return OK


def cmd_distort(args):
    gens = lambda names: {n: thompson.parse_nf(n) for n in names.split(",")}
    X, Y = gens(args.x), gens(args.y)
    member = None
    if args.cyclic:
        (g,) = X.values()
        powers = {thompson.nf_pow(g, e) for e in range(-args.m, args.m + 1)}
        member = lambda h: h in powers
    t = subgroups.distortion_profile(X, Y, subgroups.NF_OPS, args.n, args.m, member)
    print(t.to_csv(), end="")
    return OK


def cmd_dot(args):
    print(dg.to_dot(_load_diagram(args, args.file)), end="")
    return OK


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--presentation", default="thompson", help="builtin name or presentation file")
    common.add_argument("--base", help="base word")
    common.add_argument("--max-len", type=int, default=12)
    common.add_argument("--max-visited", type=int, default=20000)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--format", choices=["text", "dot", "csv"], default="text")

    ap = argparse.ArgumentParser(prog="diagram-groups", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("reduce", parents=[common], help="reduced form of a diagram file")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("mul", parents=[common], help="product of spherical diagrams")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("inv", parents=[common], help="inverse of a spherical diagram")
    s.add_argument("file")
    s.set_defaults(func=cmd_inv)

    s = sub.add_parser("eq", parents=[common], help="diagram equality, or word equality with --words")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--words", action="store_true")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("comp", parents=[common], help="sum decomposition of a spherical diagram")
    s.add_argument("file")
    s.set_defaults(func=cmd_comp)

    s = sub.add_parser("nf", parents=[common], help="normal forms in F")
    s.add_argument("word", nargs="?")
    s.add_argument("--diagram", help="read a diagram file and print its normal form")
    s.add_argument("--to-diagram", action="store_true")
    s.add_argument("-k", type=int, default=3, help="base exponent for diagrams")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("pl", parents=[common], help="PL map of an element of F")
    s.add_argument("word")
    s.add_argument("--eval")
    s.add_argument("--support", action="store_true")
    s.add_argument("--halfline", action="store_true")
    s.set_defaults(func=cmd_pl)

    for name, func, msg in (("rho", cmd_rho, "abelianization vector of an element of F"),
                            ("fprime", cmd_fprime, "membership in the derived subgroup F'")):
        s = sub.add_parser(name, parents=[common], help=msg)
        s.add_argument("word", nargs="?")
        s.add_argument("--diagram")
        s.add_argument("-k", type=int, default=1)
        s.set_defaults(func=func)

    s = sub.add_parser("squier", parents=[common], help="bounded Squier component and its π1")
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-tietze", action="store_true")
    s.set_defaults(func=cmd_squier)

    s = sub.add_parser("build", parents=[common], help="diagram-product presentations")
    s.add_argument("kind", choices=["direct_product", "free_product", "bullet", "direct_power",
                                    "wreath_with_Z", "big_O", "f_wr_z", "product"])
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--family", action="append", help="LETTER:PRESENTATION:BASE")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("zwrz", parents=[common], help="Z wr Z certificates and witness search")
    s.add_argument("action", choices=["thm18", "verify", "search"])
    s.add_argument("--a", default=subgroups.EXAMPLE37_A)
    s.add_argument("--b", default=subgroups.EXAMPLE37_B)
    s.add_argument("--word-len", type=int, default=2)
    s.set_defaults(func=cmd_zwrz, depth=4)

    s = sub.add_parser("wreath", parents=[common], help="wreath tower computations")
    s.add_argument("action", choices=["phi", "g", "cost"])
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--g", type=int, default=1, help="the n in g_k(n)")
    s.set_defaults(func=cmd_wreath)

    s = sub.add_parser("distort", parents=[common], help="distortion profile inside F")
    s.add_argument("--x", default="x0")
    s.add_argument("--y", default="x0,x1")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--m", type=int, default=8)
    s.add_argument("--cyclic", action="store_true", help="X is one element; use exact membership")
    s.set_defaults(func=cmd_distort)

    s = sub.add_parser("dot", parents=[common], help="DOT export of a diagram file")
    s.add_argument("file")
    s.set_defaults(func=cmd_dot)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.max_len <= 0 or args.max_visited <= 0 or (args.depth is not None and args.depth < 0):
        ap.error("bounds must be positive")
    if args.cmd == "zwrz" and args.depth is None:
        args.depth = 4
    try:
        return args.func(args)
    except (UsageError, PresentationError, dg.DiagramError, pl.PLError, wreath.WreathError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
