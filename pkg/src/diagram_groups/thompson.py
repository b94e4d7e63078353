"""Thompson's group F: normal forms and diagrams over ⟨x | x = xx⟩.

Normal forms are x_{i1}…x_{im} x_{jn}^{-1}…x_{j1}^{-1} with both index lists
ascending and the usual side condition (if x_i and x_i^{-1} both occur then
so does x_{i+1} or x_{i+1}^{-1}).  Relation index 0 is (x, xx), so a forward
step splits a letter and a backward step merges two.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby

from .diagram import (
    Diagram,
    DiagramError,
    compose,
    from_derivation,
    inverse,
    reduce,
)
from .presentation import Presentation, Step

THOMPSON = Presentation(("x",), ((("x",), ("x", "x")),), name="thompson")
SPLIT = 1
MERGE = -1


def xword(k: int) -> tuple:
    return ("x",) * k


# -- normal forms ------------------------------------------------------------

def _contract(pos: list, neg: list):
    """Apply the side-condition contraction until the form is normal."""
    while True:
        cp, cn = Counter(pos), Counter(neg)
        bad = [i for i in cp if i in cn and (i + 1) not in cp and (i + 1) not in cn]
        if not bad:
            return
        i = max(bad)
        pos.remove(i)
        neg.remove(i)
        pos[:] = [j - 1 if j > i else j for j in pos]
        neg[:] = [j - 1 if j > i else j for j in neg]


def _times_gen(pos: list, neg: list, k: int):
    """pos·neg^{-1} ← pos·neg^{-1}·x_k (seminormal, not contracted)."""
    for n, j in enumerate(neg):
        if j == k:
            del neg[n]
            return
        if j < k:
            k += 1
        else:
            neg[n:] = [t + 1 for t in neg[n:]]
            break
    pos[:] = [t + 1 if t > k else t for t in pos]
    pos.append(k)
    pos.sort()


def _times_inv(pos: list, neg: list, k: int):
    """pos·neg^{-1} ← pos·neg^{-1}·x_k^{-1}."""
    at = len(neg)
    for n, j in enumerate(neg):
        if j < k:
            k += 1
        else:
            at = n
            break
    neg.insert(at, k)


@dataclass(frozen=True, order=True)
class NormalForm:
    """An element of F; ``pos`` and ``neg`` are ascending index tuples with repeats."""

    pos: tuple = ()
    neg: tuple = ()

    @staticmethod
    def from_pairs(pos_pairs=(), neg_pairs=()) -> "NormalForm":
        return nf_from_word([(i, s) for i, s in pos_pairs] + [(j, -t) for j, t in reversed(list(neg_pairs))])

    @property
    def pos_pairs(self):
        return [(i, len(list(g))) for i, g in groupby(self.pos)]

    @property
    def neg_pairs(self):
        return [(j, len(list(g))) for j, g in groupby(self.neg)]

    def letters(self) -> list:
        """The word as (index, ±1) pairs."""
        return [(i, 1) for i in self.pos] + [(j, -1) for j in reversed(self.neg)]

    def is_identity(self) -> bool:
        return not self.pos and not self.neg

    def __len__(self):
        return len(self.pos) + len(self.neg)

    def __mul__(self, other):
        return nf_mul(self, other)

    def __invert__(self):
        return nf_inv(self)

    def __str__(self):
        return format_nf(self)

    def __repr__(self):
        return f"NormalForm({format_nf(self)!r})"


IDENTITY = NormalForm()


def satisfies_side_condition(f: NormalForm) -> bool:
    cp, cn = set(f.pos), set(f.neg)
    return all((i + 1) in cp or (i + 1) in cn for i in cp & cn)


def _letters(word):
    for item in word:
        if isinstance(item, str):
            yield from parse_letters(item)
        else:
            i, e = item
            yield i, e


def nf_from_word(word) -> NormalForm:
    """Normal form of a product of generators.

    ``word`` holds ``(index, exponent)`` pairs or strings such as ``"x1^-1"``.
    """
    if isinstance(word, str):
        word = parse_letters(word)
    pos, neg = [], []
    for i, e in _letters(word):
        if i < 0:
            raise ValueError(f"negative generator index {i}")
        step = _times_gen if e > 0 else _times_inv
        for _ in range(abs(e)):
            step(pos, neg, i)
    _contract(pos, neg)
    return NormalForm(tuple(pos), tuple(neg))


def nf_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    pos, neg = list(a.pos), list(a.neg)
    for i, e in b.letters():
        (_times_gen if e > 0 else _times_inv)(pos, neg, i)
    _contract(pos, neg)
    return NormalForm(tuple(pos), tuple(neg))


def nf_inv(a: NormalForm) -> NormalForm:
    return NormalForm(a.neg, a.pos)


def nf_pow(a: NormalForm, n: int) -> NormalForm:
    out = IDENTITY
    base = a if n >= 0 else nf_inv(a)
    for _ in range(abs(n)):
        out = nf_mul(out, base)
    return out


def nf_commutator(a: NormalForm, b: NormalForm) -> NormalForm:
    return nf_mul(nf_mul(nf_inv(a), nf_inv(b)), nf_mul(a, b))


def nf_conj(a: NormalForm, by: NormalForm) -> NormalForm:
    return nf_mul(nf_mul(nf_inv(by), a), by)


def gen(i: int, e: int = 1) -> NormalForm:
    return nf_from_word([(i, e)])


_TOKEN = re.compile(r"\s*x_?\{?(\d+)\}?(?:\^\{?\s*(-?\d+)\s*\}?)?\s*")


def parse_letters(text: str) -> list:
    text = text.strip()
    if text in ("", "1"):
        return []
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"position {pos}: expected a generator like x3 or x3^-1")
        out.append((int(m.group(1)), int(m.group(2) or 1)))
        pos = m.end()
    return out


def parse_nf(text: str) -> NormalForm:
    return nf_from_word(parse_letters(text))


def format_nf(f: NormalForm) -> str:
    if f.is_identity():
        return "1"
    parts = [f"x{i}" if s == 1 else f"x{i}^{s}" for i, s in f.pos_pairs]
    parts += [f"x{j}^-{t}" if t > 1 else f"x{j}^-1" for j, t in reversed(f.neg_pairs)]
    return " ".join(parts)


# -- diagrams ------------------------------------------------------------------

def _check_thompson(d: Diagram):
    if d.presentation != THOMPSON:
        raise DiagramError("expected a diagram over ⟨x | x = xx⟩")
    if not d.is_spherical():
        raise DiagramError("expected a spherical diagram")


@lru_cache(maxsize=None)
def comb(k: int) -> Diagram:
    """The fixed (x, x^k)-diagram used to change bases: split the leftmost letter k-1 times."""
    if k < 1:
        raise DiagramError("base exponent must be at least 1")
    return from_derivation([Step(0, 0, SPLIT)] * (k - 1), THOMPSON, xword(1))


def to_base(d: Diagram, k: int) -> Diagram:
    """Move a spherical diagram to base x^k by conjugating with :func:`comb`."""
    _check_thompson(d)
    m = len(d.top)
    if m == k:
        return reduce(d)
    one = reduce(compose(compose(comb(m), d), inverse(comb(m))))
    if k == 1:
        return one
    return reduce(compose(compose(inverse(comb(k)), one), comb(k)))


_BASE3 = {
    0: [Step(2, 0, SPLIT), Step(0, 0, MERGE)],
    1: [Step(1, 0, SPLIT), Step(0, 0, MERGE)],
}


@lru_cache(maxsize=None)
def _gen1(i: int, e: int) -> Diagram:
    if e < 0:
        return reduce(inverse(_gen1(i, 1)))
    if i in _BASE3:
        return to_base(from_derivation(_BASE3[i], THOMPSON, xword(3)), 1)
    # x_i = x0^{1-i} x1 x0^{i-1}
    steps = _gen1(0, -1).steps * (i - 1) + _gen1(1, 1).steps + _gen1(0, 1).steps * (i - 1)
    return reduce(from_derivation(steps, THOMPSON, xword(1)))


def generator_diagram(i: int, k: int = 3) -> Diagram:
    """Reduced (x^k, x^k)-diagram of x_i."""
    if k < 1:
        raise DiagramError("base exponent must be at least 1")
    if i < 0:
        raise DiagramError("generator index must be nonnegative")
    if k == 3 and i in _BASE3:
        return from_derivation(_BASE3[i], THOMPSON, xword(3))
    return to_base(_gen1(i, 1), k)


def nf_to_diagram(f: NormalForm, k: int = 1) -> Diagram:
    steps = []
    for i, e in f.letters():
        steps.extend(_gen1(i, e).steps)
    d = reduce(from_derivation(steps, THOMPSON, xword(1)))
    return d if k == 1 else to_base(d, k)


def _positive_labels(d: Diagram) -> list:
    """Labels of the split cells of a reduced base-x diagram, rightmost cell first."""
    cells, _, _ = d.cells()
    split = [c for c in range(len(cells)) if cells[c].sign == SPLIT]
    made = {x: c for c in split for x in cells[c].produced}
    waiting = {c: sum(1 for x in cells[c].consumed if x in made) for c in split}
    children = {c: [] for c in split}
    for c in split:
        for x in cells[c].consumed:
            if x in made:
                children[made[x]].append(c)
    ready = {c for c in split if waiting[c] == 0}
    frontier = list(range(len(d.top)))
    labels = []
    while ready:
        where = {x: n for n, x in enumerate(frontier)}
        c = max(ready, key=lambda c: where[cells[c].consumed[0]])
        ready.remove(c)
        o = where[cells[c].consumed[0]]
        if o:
            labels.append(len(frontier) - o - 1)
        frontier[o:o + 1] = cells[c].produced
        for ch in children[c]:
            waiting[ch] -= 1
            if waiting[ch] == 0:
                ready.add(ch)
    return labels


def diagram_to_nf(d: Diagram) -> NormalForm:
    """Read the normal form off a spherical diagram with base x^k."""
    _check_thompson(d)
    one = to_base(d, 1)
    plus = _positive_labels(one)
    minus = _positive_labels(inverse(one))
    word = [(i, 1) for i in plus] + [(j, -1) for j in reversed(minus)]
    return nf_from_word(word)


def cell_count_k(f: NormalForm, k: int) -> int:
    """#_k(f): cells in the reduced diagram of f with base x^k."""
    return nf_to_diagram(f, k).cell_count


def diagram_word(word, k: int = 3) -> Diagram:
    """Reduced base-x^k diagram of a word in the x_i (pairs or text)."""
    return nf_to_diagram(nf_from_word(word), k)
