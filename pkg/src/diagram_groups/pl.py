"""Dyadic piecewise-linear maps of [0,1] and [0,∞).

Functions act on the right: ``pl_compose(f, g)`` applies f first, then g,
so ``pl_from_nf`` is a homomorphism.  All arithmetic is exact.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union

from .diagram import Diagram, inverse
from .thompson import NormalForm, to_base

INF = math.inf


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def _is_pow2(q: Fraction) -> bool:
    n, d = q.numerator, q.denominator
    return n > 0 and n & (n - 1) == 0 and d & (d - 1) == 0


class PLError(ValueError):
    pass


class _PL:
    halfline = False
    __slots__ = ("breaks", "values")

    def __init__(self, breaks, values, check=True):
        b = tuple(Fraction(t) for t in breaks)
        v = tuple(Fraction(t) for t in values)
        self.breaks, self.values = _simplify(b, v, self.halfline)
        if check:
            self._validate()

    def _validate(self):
        b, v = self.breaks, self.values
        if len(b) != len(v) or not b:
            raise PLError("breakpoints and values must match")
        if b[0] != 0 or v[0] != 0:
            raise PLError("map must fix 0")
        if not self.halfline and (b[-1] != 1 or v[-1] != 1):
            raise PLError("map must fix 1")
        for q in b + v:
            if not _is_dyadic(q):
                raise PLError(f"{q} is not dyadic")
        for s in self.slopes():
            if not _is_pow2(s):
                raise PLError(f"slope {s} is not a power of 2")

    def slopes(self) -> list:
        b, v = self.breaks, self.values
        return [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1)]

    @property
    def tail(self) -> Fraction:
        return self.values[-1] - self.breaks[-1]

    def __call__(self, t):
        return pl_eval(self, t)

    def __eq__(self, other):
        return type(self) is type(other) and self.breaks == other.breaks and self.values == other.values

    def __hash__(self):
        return hash((self.halfline, self.breaks, self.values))

    def __repr__(self):
        return f"{type(self).__name__}({to_text(self)!r})"

    def __mul__(self, other):
        return pl_compose(self, other)

    def __invert__(self):
        return pl_inverse(self)

    def is_identity(self) -> bool:
        return self.breaks == self.values and (self.halfline or len(self.breaks) == 2)


class DyadicPL(_PL):
    """Increasing PL bijection of [0,1] with dyadic breaks and power-of-2 slopes."""

    halfline = False

    def slope_at_0(self):
        return self.slopes()[0]

    def slope_at_1(self):
        return self.slopes()[-1]


class HalflinePL(_PL):
    """Increasing PL bijection of [0,∞) that is t ↦ t + c beyond the last breakpoint."""

    halfline = True

    def slopes(self):
        return super().slopes() + [Fraction(1)]


PL = Union[DyadicPL, HalflinePL]


def _simplify(b, v, halfline):
    keep_b, keep_v = [b[0]], [v[0]]
    for i in range(1, len(b)):
        last = i == len(b) - 1
        if last and not halfline:
            keep_b.append(b[i]), keep_v.append(v[i])
            continue
        left = (v[i] - keep_v[-1]) / (b[i] - keep_b[-1])
        right = Fraction(1) if last else (v[i + 1] - v[i]) / (b[i + 1] - b[i])
        if left != right:
            keep_b.append(b[i]), keep_v.append(v[i])
    return tuple(keep_b), tuple(keep_v)


def identity(halfline: bool = False) -> PL:
    return HalflinePL([0], [0]) if halfline else DyadicPL([0, 1], [0, 1])


def _interp(xs, ys, t):
    if t < xs[0]:
        raise PLError(f"{t} is outside the domain")
    k = bisect_right(xs, t) - 1
    if k == len(xs) - 1:
        if t == xs[-1]:
            return ys[-1]
        return None
    return ys[k] + (ys[k + 1] - ys[k]) * (t - xs[k]) / (xs[k + 1] - xs[k])


def pl_eval(f: PL, t) -> Fraction:
    t = Fraction(t)
    y = _interp(f.breaks, f.values, t)
    if y is None:
        if not f.halfline:
            raise PLError(f"{t} is outside [0,1]")
        y = t + f.tail
    return y


def pl_inverse(f: PL) -> PL:
    return type(f)(f.values, f.breaks, check=False)


def _preimage(f: PL, y) -> Fraction:
    return pl_eval(pl_inverse(f), y)


def pl_compose(f: PL, g: PL) -> PL:
    """t ↦ (t f) g."""
    if type(f) is not type(g):
        raise PLError("cannot compose maps on different domains")
    pts = set(f.breaks)
    top = f.values[-1]
    for b in g.breaks:
        if f.halfline or b <= top:
            pts.add(_preimage(f, b))
    xs = sorted(pts)
    return type(f)(xs, [pl_eval(g, pl_eval(f, t)) for t in xs], check=False)


def pl_pow(f: PL, n: int) -> PL:
    out = identity(f.halfline)
    base = f if n >= 0 else pl_inverse(f)
    for _ in range(abs(n)):
        out = pl_compose(out, base)
    return out


def pl_conj(f: PL, by: PL) -> PL:
    """f^by = by^{-1} f by."""
    return pl_compose(pl_compose(pl_inverse(by), f), by)


def pl_commutator(f: PL, g: PL) -> PL:
    """[f, g] = f^{-1} g^{-1} f g."""
    return pl_compose(pl_compose(pl_inverse(f), pl_inverse(g)), pl_compose(f, g))


# -- F generators and conversions --------------------------------------------

def x_gen(n: int) -> DyadicPL:
    """x_n: identity on [0, 1-2^-n], a rescaled x0 on [1-2^-n, 1]."""
    a = 1 - Fraction(1, 2 ** n)
    w = Fraction(1, 2 ** n)
    xs = [a, a + w / 4, a + w / 2, 1]
    ys = [a, a + w / 2, a + 3 * w / 4, 1]
    if n:
        xs, ys = [0] + xs, [0] + ys
    return DyadicPL(xs, ys)


def pl_from_nf(f: NormalForm) -> DyadicPL:
    out = identity()
    for i, e in f.letters():
        g = x_gen(i)
        out = pl_compose(out, g if e > 0 else pl_inverse(g))
    return out


def _split_partition(d: Diagram) -> list:
    """Intervals of the middle word after all split cells of a reduced base-x diagram.

    Letters are read right to left: the first letter of a word is the
    rightmost interval.  This orientation makes the generator diagrams land
    on the maps of :func:`x_gen`.
    """
    cells, _, _ = d.cells()
    iv = {0: (Fraction(0), Fraction(1))}
    for c in cells:
        if c.sign > 0:
            lo, hi = iv.pop(c.consumed[0])
            mid = (lo + hi) / 2
            iv[c.produced[0]] = (mid, hi)
            iv[c.produced[1]] = (lo, mid)
    return sorted(iv.values())


def pl_from_diagram(d: Diagram) -> DyadicPL:
    """PL map of a spherical diagram over ⟨x | x = xx⟩ (top partition onto bottom partition)."""
    one = to_base(d, 1)
    src = _split_partition(one)
    dst = _split_partition(inverse(one))
    if len(src) != len(dst):  # pragma: no cover - reduced diagrams never do this
        raise PLError("split trees have different sizes")
    return DyadicPL([a for a, _ in src] + [1], [a for a, _ in dst] + [1])


# -- supports -------------------------------------------------------------------

def fixed_point_crossings(f: PL) -> list:
    """Critical points: breakpoints and isolated fixed points inside segments."""
    pts = set(f.breaks)
    b, v = f.breaks, f.values
    for i in range(len(b) - 1):
        g0, g1 = v[i] - b[i], v[i + 1] - b[i + 1]
        if (g0 < 0 < g1) or (g1 < 0 < g0):
            pts.add(b[i] + (b[i + 1] - b[i]) * g0 / (g0 - g1))
    return sorted(pts)


def support(f: PL) -> list:
    """Maximal open intervals on which t f ≠ t; an unbounded end is ``INF``."""
    pts = fixed_point_crossings(f)
    out = []
    cur = None
    for lo, hi in zip(pts, pts[1:]):
        moving = pl_eval(f, (lo + hi) / 2) != (lo + hi) / 2
        if moving:
            if cur is not None and pl_eval(f, lo) != lo:
                cur = (cur[0], hi)
            else:
                if cur is not None:
                    out.append(cur)
                cur = (lo, hi)
        elif cur is not None:
            out.append(cur)
            cur = None
    if f.halfline and f.tail != 0:
        last = pts[-1]
        if cur is not None and pl_eval(f, last) != last:
            cur = (cur[0], INF)
        else:
            if cur is not None:
                out.append(cur)
            cur = (last, INF)
    if cur is not None:
        out.append(cur)
    return out


# -- half-line --------------------------------------------------------------------

def _phi(u: Fraction) -> Fraction:
    """[0,1) → [0,∞), 1-2^-n ↦ n, linear in between."""
    if u >= 1:
        raise PLError("1 has no image on the half-line")
    n = 0
    while u >= 1 - Fraction(1, 2 ** (n + 1)):
        n += 1
    return n + (u - (1 - Fraction(1, 2 ** n))) * 2 ** (n + 1)


def _phi_inv(t: Fraction) -> Fraction:
    n = math.floor(t)
    return 1 - Fraction(1, 2 ** n) + (t - n) / 2 ** (n + 1)


def to_halfline(f: DyadicPL) -> HalflinePL:
    """Conjugate f by the standard identification [0,1) ≅ [0,∞)."""
    s = f.slope_at_1()
    e = s.numerator.bit_length() - 1 if s >= 1 else -(s.denominator.bit_length() - 1)
    last = f.breaks[-2]
    n0 = 0
    while 1 - Fraction(1, 2 ** n0) < last:
        n0 += 1
    top = max(n0, e, 0) + 1
    pts = {Fraction(n) for n in range(top + 1)}
    pts |= {_phi(b) for b in f.breaks[:-1]}
    for n in range(top + abs(e) + 3):
        u = _preimage(f, 1 - Fraction(1, 2 ** n))
        pts.add(_phi(u))
    xs = sorted(t for t in pts if t <= top)
    ys = [_phi(pl_eval(f, _phi_inv(t))) for t in xs]
    out = HalflinePL(xs, ys)
    if out.tail != -e:  # pragma: no cover - guards the tail argument above
        raise PLError("tail mismatch in half-line conversion")
    return out


def phi_k_embed(f: DyadicPL, k: int) -> HalflinePL:
    """Copy of f acting on [k, k+1], identity elsewhere."""
    if k < 0:
        raise PLError("k must be nonnegative")
    xs = [Fraction(0)] + [k + t for t in f.breaks]
    ys = [Fraction(0)] + [k + t for t in f.values]
    if k == 0:
        xs, ys = xs[1:], ys[1:]
    return HalflinePL(xs, ys)


def x0_halfline() -> HalflinePL:
    """t ↦ 2t on [0,1], t ↦ t + 1 beyond."""
    return HalflinePL([0, 1], [0, 2])


# -- Z wr Z witnesses -----------------------------------------------------------

@dataclass(frozen=True)
class WreathCertificate:
    h0: PL
    word: tuple
    w: PL
    interval: tuple
    depth: int


@dataclass(frozen=True)
class NotFound:
    reason: str


@dataclass(frozen=True)
class CommutingInput:
    pass


def _components(intervals):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo < out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _free_words(n):
    letters = "fgFG"
    inv = dict(zip("fgFG", "FGfg"))
    for length in range(1, n + 1):
        for w in product(letters, repeat=length):
            if all(inv[a] != b for a, b in zip(w, w[1:])):
                yield w


def wreath_witness(f: PL, g: PL, max_word_len: int = 8, check_depth: int = 4):
    """Search for w in ⟨f, g⟩ such that the conjugates of [f,g] by powers of w commute.

    Words use the letters f, g and F = f^{-1}, G = g^{-1}.
    """
    h0 = pl_commutator(f, g)
    if h0.is_identity():
        return CommutingInput()
    comps = _components(support(f) + support(g))
    hs = support(h0)
    first = hs[0]
    J = next(c for c in comps if c[0] <= first[0] and first[1] <= c[1])
    inside = [s for s in hs if J[0] <= s[0] and s[1] <= J[1]]
    c0, d0 = inside[0][0], max(s[1] for s in inside)
    maps = {"f": f, "g": g, "F": pl_inverse(f), "G": pl_inverse(g)}
    for word in _free_words(max_word_len):
        t = c0
        for a in word:
            t = pl_eval(maps[a], t)
        if not t > d0:
            continue
        w = identity(f.halfline)
        for a in word:
            w = pl_compose(w, maps[a])
        conj = [h0]
        for _ in range(check_depth):
            conj.append(pl_conj(conj[-1], w))
        if all(pl_commutator(conj[i], conj[j]).is_identity()
               for i in range(len(conj)) for j in range(i + 1, len(conj))):
            return WreathCertificate(h0, word, w, (c0, d0), check_depth)
    return NotFound(f"no word of length ≤ {max_word_len} passed the checks")


# -- text formats ---------------------------------------------------------------------

def format_dyadic(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/2^{q.denominator.bit_length() - 1}"


_NUM = re.compile(r"\s*(-?\d+)(?:\s*/\s*(?:2\^(\d+)|(\d+)))?\s*$")


def parse_dyadic(text: str) -> Fraction:
    m = _NUM.match(text)
    if not m:
        raise PLError(f"bad dyadic literal {text!r}")
    num = int(m.group(1))
    if m.group(2) is not None:
        return Fraction(num, 2 ** int(m.group(2)))
    if m.group(3) is not None:
        return Fraction(num, int(m.group(3)))
    return Fraction(num)


def to_text(f: PL) -> str:
    body = ";".join(f"{format_dyadic(b)}:{format_dyadic(v)}" for b, v in zip(f.breaks, f.values))
    if f.halfline:
        body += f";tail:{format_dyadic(f.tail)}"
    return body


def parse_pl(text: str) -> PL:
    pairs = [chunk.split(":") for chunk in text.strip().split(";") if chunk.strip()]
    halfline = any(k.strip() == "tail" for k, *_ in pairs)
    pairs = [p for p in pairs if p[0].strip() != "tail"]
    if any(len(p) != 2 for p in pairs):
        raise PLError("expected breakpoint:value pairs separated by ';'")
    xs = [parse_dyadic(a) for a, _ in pairs]
    ys = [parse_dyadic(b) for _, b in pairs]
    return (HalflinePL if halfline else DyadicPL)(xs, ys)


def to_csv(f: PL, samples: int = 64, upto=None) -> str:
    """Sampled graph as ``t,value`` rows (breakpoints included) for plotting."""
    hi = Fraction(1) if not f.halfline else Fraction(upto if upto is not None else f.breaks[-1] + 1)
    ts = {hi * k / samples for k in range(samples + 1)} | {b for b in f.breaks if b <= hi}
    rows = ["t,value"] + [f"{float(t)!r},{float(pl_eval(f, t))!r}" for t in sorted(ts)]
    return "\n".join(rows) + "\n"
