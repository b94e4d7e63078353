"""Z wr Z certificates, F x F embeddings and distortion profiles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, NamedTuple

from .diagram import (
    Diagram,
    DiagramError,
    dsum,
    from_derivation,
    group_inv,
    group_mul,
    reduce,
    trivial,
)
from .presentation import Equal, Limits, Presentation, Step, words_equal_bounded
from .squier import build_component, loop_diagrams
from .thompson import (
    IDENTITY,
    THOMPSON,
    NormalForm,
    generator_diagram,
    nf_commutator,
    nf_inv,
    nf_mul,
    nf_pow,
    parse_nf,
    xword,
)
from . import wreath as W


class GroupOps(NamedTuple):
    mul: Callable
    inv: Callable
    identity: object
    key: Callable = lambda g: g

    def is_identity(self, g) -> bool:
        return self.key(g) == self.key(self.identity)

    def conj(self, g, by):
        return self.mul(self.mul(self.inv(by), g), by)

    def commutator(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def pow(self, g, n):
        out = self.identity
        base = g if n >= 0 else self.inv(g)
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out


NF_OPS = GroupOps(nf_mul, nf_inv, IDENTITY)


def diagram_ops(p: Presentation, base) -> GroupOps:
    return GroupOps(group_mul, group_inv, trivial(p, tuple(base)))


def wreath_ops(level: int) -> GroupOps:
    return GroupOps(W.w_mul, W.w_inv, W.w_identity(level))


# -- Z wr Z from a diagram triple ----------------------------------------------------------------------

def thm18_generators(p: Presentation, x, y, z, delta: Diagram, gamma1: Diagram, gamma2: Diagram,
                     limits: Limits = Limits()):
    """a = ε(x) + Δ + ε(z) and b = Γ1 + Γ2, checking every hypothesis first."""
    x, y, z = tuple(x), tuple(y), tuple(z)
    if not isinstance(words_equal_bounded(p, x + y, x, limits), Equal):
        raise DiagramError("xy = x is not certified modulo P")
    if not isinstance(words_equal_bounded(p, y + z, z, limits), Equal):
        raise DiagramError("yz = z is not certified modulo P")
    if delta.top != y or delta.bottom != y:
        raise DiagramError("Δ must be a (y, y)-diagram")
    if reduce(delta).cell_count == 0:
        raise DiagramError("Δ must be nontrivial")
    if gamma1.top != x + y or gamma1.bottom != x:
        raise DiagramError("Γ1 must be an (xy, x)-diagram")
    if gamma2.top != z or gamma2.bottom != y + z:
        raise DiagramError("Γ2 must be a (z, yz)-diagram")
    a = reduce(dsum(dsum(trivial(p, x), delta), trivial(p, z)))
    b = reduce(dsum(gamma1, gamma2))
    return a, b


def section4_data(delta: Diagram | None = None):
    """Z wr Z generator inputs over ⟨x | x = xx⟩ with x ↦ x², y = z = x (base x⁴)."""
    if delta is None:
        delta = generator_diagram(0, 1)
    merge_then_keep = from_derivation([Step(0, 0, -1)], THOMPSON, xword(3))
    split = from_derivation([Step(0, 0, 1)], THOMPSON, xword(1))
    return dict(p=THOMPSON, x=xword(2), y=xword(1), z=xword(1), delta=delta,
                gamma1=merge_then_keep, gamma2=split)


@dataclass
class ZwrZReport:
    depth: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def __str__(self):
        lines = [f"{'ok  ' if ok else 'FAIL'} {name}" for name, ok in self.checks]
        lines.append(f"{'PASS' if self.passed else 'FAIL'} at depth {self.depth}")
        return "\n".join(lines)


def verify_zwrz(a, b, depth: int = 4, ops: GroupOps | None = None, samples: int = 12, seed: int = 0) -> ZwrZReport:
    """Bounded evidence that a, b generate Z wr Z with a_i = a^{b^i} a free abelian basis."""
    if ops is None:
        if isinstance(a, Diagram):
            ops = diagram_ops(a.presentation, a.top)
        elif isinstance(a, NormalForm):
            ops = NF_OPS
        else:
            ops = wreath_ops(a.level)
    rep = ZwrZReport(depth)
    rep.checks.append(("[a, b] != 1", not ops.is_identity(ops.commutator(a, b))))
    conj = [a]
    for _ in range(depth):
        conj.append(ops.conj(conj[-1], b))
    for i in range(depth + 1):
        for j in range(i + 1, depth + 1):
            ok = ops.is_identity(ops.commutator(conj[i], conj[j]))
            rep.checks.append((f"[a^(b^{i}), a^(b^{j})] = 1", ok))
    rng = random.Random(seed)
    for _ in range(samples):
        exps = [0] * (depth + 1)
        while not any(exps):
            exps = [rng.randint(-2, 2) for _ in exps]
        g = ops.identity
        for c, e in zip(conj, exps):
            g = ops.mul(g, ops.pow(c, e))
        rep.checks.append((f"product with exponents {exps} != 1", not ops.is_identity(g)))
    return rep


# -- witness search ------------------------------------------------------------------

@dataclass(frozen=True)
class Thm24Witness:
    x: tuple
    y: tuple
    z: tuple
    delta: Diagram


@dataclass(frozen=True)
class SearchNotFound:
    reason: str


def _words(alphabet, max_len):
    for n in range(1, max_len + 1):
        yield from product(alphabet, repeat=n)


def nontrivial_spherical(p: Presentation, y, max_depth: int = 3, max_word_len: int = 8):
    """Smallest nontrivial reduced π1-generator diagram of the bounded component of y, or None."""
    k = build_component(p, y, max_depth=max_depth, max_word_len=max_word_len)
    best = None
    for d in loop_diagrams(k):
        if d.cell_count and (best is None or d.cell_count < best.cell_count):
            best = d
    return best


def thm24_witness_search(p: Presentation, w, max_len: int = 2, limits: Limits = Limits(8, 2000),
                         component_depth: int = 3):
    """Words x, y, z with xy = x, yz = z, xz = w modulo P and D(P, y) ≠ 1."""
    w = tuple(w)
    eq = lambda u, v: isinstance(words_equal_bounded(p, u, v, limits), Equal)
    found_delta = {}
    for y in _words(p.alphabet, max_len):
        for x in _words(p.alphabet, max_len):
            if not eq(x + y, x):
                continue
            for z in _words(p.alphabet, max_len):
                if not (eq(y + z, z) and eq(x + z, w)):
                    continue
                if y not in found_delta:
                    found_delta[y] = nontrivial_spherical(p, y, component_depth, limits.max_word_len)
                if found_delta[y] is not None:
                    return Thm24Witness(x, y, z, found_delta[y])
    return SearchNotFound(f"no witness with words of length ≤ {max_len}")


# -- F x F inside F -------------------------------------------------------------------------

FF_RULES = {
    "left": {0: "x1 x2 x1^-2", 1: "x1^2 x2 x1^-3"},
    "right": {0: "x2 x3 x2^-2", 1: "x2^2 x3 x2^-3"},
}

EXAMPLE37_A = "x1 x2 x1^-2"
EXAMPLE37_B = "x0"

EXAMPLE37_K = (
    "x1^2 x2^2 x6^2 x7^2 x8^-1 x7^-1 x6^-2 x3^-1 x2^-1 x1^-2",
    "x1 x2 x4 x5 x4^-2 x1^-2",
    "x1^3 x2^2 x5 x6 x5^-2 x3^-1 x2^-1 x1^-3",
)


def example37_generators():
    return tuple(parse_nf(s) for s in EXAMPLE37_K)


def ff_embed(g: NormalForm, side: str) -> NormalForm:
    """Image of g in the left or right factor of F × F ↪ F."""
    if side not in FF_RULES:
        raise ValueError("side must be 'left' or 'right'")
    img = {i: parse_nf(s) for i, s in FF_RULES[side].items()}
    out = IDENTITY
    for i, e in g.letters():
        if i <= 1:
            h = img[i]
        else:  # x_i = x0^{1-i} x1 x0^{i-1}
            h = nf_mul(nf_mul(nf_pow(img[0], 1 - i), img[1]), nf_pow(img[0], i - 1))
        out = nf_mul(out, h if e > 0 else nf_inv(h))
    return out


def ff_pair(g: NormalForm, h: NormalForm) -> NormalForm:
    return nf_mul(ff_embed(g, "left"), ff_embed(h, "right"))


def example37_from_rules():
    """(a, a), (b, b), ([a, b], 1) pushed through the F × F embedding."""
    a, b = parse_nf(EXAMPLE37_A), parse_nf(EXAMPLE37_B)
    return ff_pair(a, a), ff_pair(b, b), ff_pair(nf_commutator(a, b), IDENTITY)


# -- balls and distortion ------------------------------------------------------------------

def ball(gens: dict, ops: GroupOps, radius: int) -> dict:
    """Word-metric ball: canonical key -> (element, length, a shortest word)."""
    steps = []
    for name, g in gens.items():
        steps.append((name, g))
        steps.append((name + "^-1", ops.inv(g)))
    e = ops.identity
    out = {ops.key(e): (e, 0, ())}
    frontier = [e]
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            word = out[ops.key(g)][2]
            for name, s in steps:
                h = ops.mul(g, s)
                k = ops.key(h)
                if k not in out:
                    out[k] = (h, r, word + (name,))
                    nxt.append(h)
        frontier = nxt
    return out


@dataclass
class DistortionTable:
    rows: list  # (n, disto_lower, exact)
    X: tuple
    Y: tuple
    partial: bool = False

    def to_csv(self) -> str:
        lines = ["n,disto_lower,exact"]
        lines += [f"{n},{v},{str(ex).lower()}" for n, v, ex in self.rows]
        return "\n".join(lines) + "\n"


def distortion_profile(X: dict, Y: dict, ops: GroupOps, n_max: int, m_max: int,
                       member: Callable | None = None) -> DistortionTable:
    """disto(n) = max |g|_X over subgroup elements with |g|_Y ≤ n, from finite balls.

    A row is exact when ``member`` is given and every member of the Y-ball of
    radius n was found in the X-ball.
    """
    yb = ball(Y, ops, n_max)
    xb = ball(X, ops, m_max)
    rows = []
    best = 0
    for n in range(0, n_max + 1):
        exact = member is not None
        for k, (g, ly, _) in yb.items():
            if ly > n:
                continue
            if k in xb:
                best = max(best, xb[k][1])
            elif member is not None and member(g):
                exact = False
        rows.append((n, best, exact))
    return DistortionTable(rows, tuple(X), tuple(Y), partial=not all(r[2] for r in rows))
