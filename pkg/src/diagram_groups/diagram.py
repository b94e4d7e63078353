"""Semigroup diagrams stored as canonical derivations.

Two derivations give the same diagram exactly when they differ by
interchanges of independent elementary transformations.  Internally a
derivation is viewed as a heap of cells: every letter of every word gets an
identity, each cell consumes a segment of letters and produces fresh ones,
and a cell depends on another iff it consumes one of its letters.  The
canonical derivation is the greedy-leftmost linearization of that heap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .presentation import (
    Derivation,
    Presentation,
    Step,
    Word,
    apply_step,
    format_word,
    parse_word,
)


class DiagramError(ValueError):
    pass


class _Cell(NamedTuple):
    rel: int
    sign: int
    consumed: tuple
    produced: tuple


def _heap(p: Presentation, top: Word, steps: Sequence[Step]):
    """Replay ``steps`` from ``top`` with letter identities.

    Returns ``(cells, frontier, next_id)`` where ``frontier`` lists the ids of
    the final word.  Raises DiagramError naming the first bad step.
    """
    frontier = list(range(len(top)))
    labels = list(top)
    cells = []
    for k, s in enumerate(steps):
        if not 0 <= s.rel < len(p.relations) or s.sign not in (1, -1):
            raise DiagramError(f"step {k} {tuple(s)}: no such relation/direction")
        lhs, rhs = p.sides(s.rel, s.sign)
        seg = frontier[s.offset:s.offset + len(lhs)]
        if s.offset < 0 or tuple(labels[i] for i in seg) != lhs:
            word = format_word([labels[i] for i in frontier])
            raise DiagramError(f"step {k} {tuple(s)} does not apply to {word}")
        new = tuple(range(len(labels), len(labels) + len(rhs)))
        labels.extend(rhs)
        cells.append(_Cell(s.rel, s.sign, tuple(seg), new))
        frontier[s.offset:s.offset + len(lhs)] = new
    return cells, frontier, len(labels)


def _linearize(p: Presentation, ntop: int, cells: Sequence[_Cell]) -> tuple:
    """Greedy-leftmost order of a heap; returns the canonical step tuple."""
    producer = {}
    for c, cell in enumerate(cells):
        for i in cell.produced:
            producer[i] = c
    waiting = [0] * len(cells)
    children = [[] for _ in cells]
    for c, cell in enumerate(cells):
        parents = {producer[i] for i in cell.consumed if i in producer}
        waiting[c] = len(parents)
        for q in parents:
            children[q].append(c)
    ready = {c for c in range(len(cells)) if waiting[c] == 0}
    frontier = list(range(ntop))
    out = []
    while ready:
        where = {i: n for n, i in enumerate(frontier)}
        c = min(ready, key=lambda c: where[cells[c].consumed[0]])
        ready.remove(c)
        cell = cells[c]
        o = where[cell.consumed[0]]
        out.append(Step(o, cell.rel, cell.sign))
        frontier[o:o + len(cell.consumed)] = cell.produced
        for ch in children[c]:
            waiting[ch] -= 1
            if waiting[ch] == 0:
                ready.add(ch)
    if len(out) != len(cells):
        raise DiagramError("cyclic dependency between cells")
    return tuple(out)


class Diagram:
    """A diagram over ``presentation`` given by its canonical derivation.

    Build instances with :func:`from_derivation`, :func:`trivial` and the
    operations below; equality is isotopy (identical canonical data).
    """

    __slots__ = ("presentation", "top", "steps", "bottom", "_cells")

    def __init__(self, presentation, top, steps, bottom, cells=None):
        self.presentation = presentation
        self.top = tuple(top)
        self.steps = tuple(steps)
        self.bottom = tuple(bottom)
        self._cells = cells

    @property
    def cell_count(self) -> int:
        return len(self.steps)

    def is_spherical(self) -> bool:
        return self.top == self.bottom

    def cells(self):
        if self._cells is None:
            self._cells = _heap(self.presentation, self.top, self.steps)
        return self._cells

    def derivation(self) -> Derivation:
        return Derivation(self.top, self.steps)

    def key(self):
        return (self.top, self.steps)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.key() == other.key() and self.presentation == other.presentation

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        p = self.presentation
        return f"<Diagram {p.fmt(self.top)} => {p.fmt(self.bottom)}, {self.cell_count} cells>"

    def __str__(self):
        return to_text(self)

    # operator sugar: * is the group product, + the sum, @ composition
    def __add__(self, other):
        return dsum(self, other)

    def __matmul__(self, other):
        return compose(self, other)

    def __mul__(self, other):
        return group_mul(self, other)

    def __invert__(self):
        return inverse(self)


def _build(p: Presentation, top: Word, cells) -> Diagram:
    steps = _linearize(p, len(top), cells)
    bottom = top
    for s in steps:
        bottom = apply_step(bottom, p, s)
    return Diagram(p, top, steps, bottom)


def canonicalize(steps: Sequence[Step], top, p: Presentation) -> tuple:
    top = tuple(top)
    cells, _, _ = _heap(p, top, [Step(*s) for s in steps])
    return _linearize(p, len(top), cells)


def from_derivation(d: Derivation | Sequence, p: Presentation, top=None) -> Diagram:
    """Diagram of a derivation (or of a step list starting at ``top``)."""
    if isinstance(d, Derivation):
        top, steps = tuple(d.start), d.steps
    else:
        steps = d
    top = tuple(top)
    if not top:
        raise DiagramError("diagrams need a nonempty top word")
    steps = [Step(*s) for s in steps]
    cells, _, _ = _heap(p, top, steps)
    return _build(p, top, cells)


def trivial(p: Presentation, w) -> Diagram:
    w = tuple(w)
    if not w:
        raise DiagramError("ε(w) needs a nonempty word")
    bad = set(w) - set(p.alphabet)
    if bad:
        raise DiagramError(f"letters {sorted(bad)} not in alphabet")
    return Diagram(p, w, (), w)


def _same_presentation(d1: Diagram, d2: Diagram):
    if d1.presentation != d2.presentation:
        raise DiagramError("diagrams over different presentations")


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """Δ1 ∘ Δ2: glue the bottom of ``d1`` to the top of ``d2`` (no reduction)."""
    _same_presentation(d1, d2)
    if d1.bottom != d2.top:
        p = d1.presentation
        raise DiagramError(f"cannot compose: bottom {p.fmt(d1.bottom)} != top {p.fmt(d2.top)}")
    return from_derivation(d1.steps + d2.steps, d1.presentation, d1.top)


def dsum(d1: Diagram, d2: Diagram) -> Diagram:
    """Δ1 + Δ2: place ``d2`` to the right of ``d1``."""
    _same_presentation(d1, d2)
    shift = len(d1.bottom)
    steps = d1.steps + tuple(Step(s.offset + shift, s.rel, s.sign) for s in d2.steps)
    return from_derivation(steps, d1.presentation, d1.top + d2.top)


sum_ = dsum


def inverse(d: Diagram) -> Diagram:
    """Mirror image Δ^{-1}."""
    steps = [s.flipped() for s in reversed(d.steps)]
    return from_derivation(steps, d.presentation, d.bottom)


# -- dipoles ---------------------------------------------------------------

def _dipole_partner(cells, consumer, i):
    c = cells[i]
    j = consumer.get(c.produced[0])
    if j is None:
        return None
    cj = cells[j]
    if cj.rel == c.rel and cj.sign == -c.sign and cj.consumed == c.produced:
        return j
    return None


def _consumers(cells):
    consumer = {}
    for j, c in enumerate(cells):
        for x in c.consumed:
            consumer[x] = j
    return consumer


def find_dipole(d: Diagram):
    """Least pair ``(i, j)`` of canonical positions forming a dipole, or None."""
    cells, _, _ = d.cells()
    consumer = _consumers(cells)
    for i in range(len(cells)):
        j = _dipole_partner(cells, consumer, i)
        if j is not None:
            return (i, j)
    return None


def find_all_dipoles(d: Diagram) -> list:
    cells, _, _ = d.cells()
    consumer = _consumers(cells)
    out = []
    for i in range(len(cells)):
        j = _dipole_partner(cells, consumer, i)
        if j is not None:
            out.append((i, j))
    return out


def _cancel(cells: dict, frontier: list, i: int, j: int):
    """Remove dipole (i, j) from a heap held as {index: cell}."""
    ci, cj = cells.pop(i), cells.pop(j)
    ren = dict(zip(cj.produced, ci.consumed))
    for k, c in cells.items():
        if any(x in ren for x in c.consumed):
            cells[k] = c._replace(consumed=tuple(ren.get(x, x) for x in c.consumed))
    frontier[:] = [ren.get(x, x) for x in frontier]
    return ci.consumed


def remove_dipole(d: Diagram, pair) -> Diagram:
    i, j = pair
    cells, frontier, _ = d.cells()
    consumer = _consumers(cells)
    if _dipole_partner(cells, consumer, i) != j:
        raise DiagramError(f"{pair} is not a dipole")
    heap = dict(enumerate(cells))
    _cancel(heap, list(frontier), i, j)
    return _build(d.presentation, d.top, [heap[k] for k in sorted(heap)])


def reduce(d: Diagram, rng: random.Random | None = None) -> Diagram:
    """Unique reduced form.

    Without ``rng`` dipoles are cancelled from a worklist; with ``rng`` a
    uniformly random dipole is cancelled at every stage.  Either way the
    result is the same.
    """
    cells, frontier, _ = d.cells()
    if not cells:
        return d
    heap = dict(enumerate(cells))
    frontier = list(frontier)
    producer = {x: k for k, c in heap.items() for x in c.produced}
    consumer = {x: k for k, c in heap.items() for x in c.consumed}

    def partner(i):
        c = heap[i]
        j = consumer.get(c.produced[0])
        if j is None or j not in heap:
            return None
        cj = heap[j]
        if cj.rel == c.rel and cj.sign == -c.sign and cj.consumed == c.produced:
            return j
        return None

    def cancel(i, j):
        ci, cj = heap[i], heap[j]
        for x in ci.produced:
            consumer.pop(x, None)
        for x in cj.produced:
            producer.pop(x, None)
        downstream = {consumer[x] for x in cj.produced if x in consumer}
        _cancel(heap, frontier, i, j)
        for x in ci.consumed:
            consumer.pop(x, None)
        for k in downstream:
            for x in heap[k].consumed:
                consumer[x] = k
        return {producer[x] for x in ci.consumed if x in producer}

    if rng is None:
        work = sorted(heap)
        while work:
            i = work.pop()
            if i not in heap:
                continue
            j = partner(i)
            if j is not None:
                work.extend(cancel(i, j))
    else:
        while True:
            pairs = [(i, j) for i in sorted(heap) for j in [partner(i)] if j is not None]
            if not pairs:
                break
            cancel(*rng.choice(pairs))
    if len(heap) == len(cells):
        return d
    return _build(d.presentation, d.top, [heap[k] for k in sorted(heap)])


def is_reduced(d: Diagram) -> bool:
    return find_dipole(d) is None


def equal(d1: Diagram, d2: Diagram) -> bool:
    _same_presentation(d1, d2)
    return reduce(d1) == reduce(d2)


# -- the group D(P, w) -------------------------------------------------------

def _check_spherical(*ds):
    base = ds[0].top
    for d in ds:
        if not d.is_spherical():
            raise DiagramError("diagram is not spherical")
        if d.top != base:
            raise DiagramError("spherical diagrams have different bases")


def group_mul(d1: Diagram, d2: Diagram) -> Diagram:
    _check_spherical(d1, d2)
    return reduce(compose(d1, d2))


def group_inv(d: Diagram) -> Diagram:
    _check_spherical(d)
    return reduce(inverse(d))


def identity(p: Presentation, w) -> Diagram:
    return trivial(p, w)


def group_pow(d: Diagram, n: int) -> Diagram:
    _check_spherical(d)
    out = trivial(d.presentation, d.top)
    base = reduce(d) if n >= 0 else group_inv(d)
    for _ in range(abs(n)):
        out = group_mul(out, base)
    return out


def conj(d: Diagram, by: Diagram) -> Diagram:
    """d^by = by^{-1} d by."""
    return group_mul(group_mul(group_inv(by), d), by)


def commutator(a: Diagram, b: Diagram) -> Diagram:
    """[a, b] = a^{-1} b^{-1} a b."""
    return group_mul(group_mul(group_inv(a), group_inv(b)), group_mul(a, b))


def is_identity(d: Diagram) -> bool:
    return reduce(d).cell_count == 0


# -- components ---------------------------------------------------------------

@dataclass(frozen=True)
class SumDecomposition:
    parts: tuple
    seams: tuple

    def comp(self) -> int:
        return sum(1 for part in self.parts if part.cell_count)


def _seam_survives(d: Diagram, k: int):
    p = d.presentation
    for s in d.steps:
        lhs, rhs = p.sides(s.rel, s.sign)
        if s.offset + len(lhs) <= k:
            k += len(rhs) - len(lhs)
        elif s.offset < k:
            return None
    return k


def seams(d: Diagram, spherical: bool = True) -> list:
    """Initial seam positions that no cell crosses."""
    out = []
    for k in range(1, len(d.top)):
        end = _seam_survives(d, k)
        if end is not None and (end == k or not spherical):
            out.append(k)
    return out


def decompose_components(d: Diagram) -> SumDecomposition:
    _check_spherical(d)
    p = d.presentation
    cuts = seams(d)
    bounds = [0] + cuts + [len(d.top)]
    parts = [[] for _ in range(len(bounds) - 1)]
    for s in d.steps:
        lhs, rhs = p.sides(s.rel, s.sign)
        for q in range(len(parts)):
            if bounds[q] <= s.offset and s.offset + len(lhs) <= bounds[q + 1]:
                break
        else:  # pragma: no cover - excluded by seam survival
            raise DiagramError("cell crosses a seam")
        parts[q].append(Step(s.offset - bounds[q], s.rel, s.sign))
        for r in range(q + 1, len(bounds)):
            bounds[r] += len(rhs) - len(lhs)
    tops = [d.top[a:b] for a, b in zip([0] + cuts, cuts + [len(d.top)])]
    diagrams = tuple(from_derivation(st, p, t) for st, t in zip(parts, tops))
    return SumDecomposition(diagrams, tuple(cuts))


def comp(d: Diagram) -> int:
    return decompose_components(d).comp()


# -- label substitution ---------------------------------------------------------

@dataclass(frozen=True)
class LabelMorphism:
    source: Presentation
    target: Presentation
    letter_map: dict
    relation_map: dict = field(default_factory=dict)

    def __post_init__(self):
        lm = {a: tuple(w) for a, w in self.letter_map.items()}
        object.__setattr__(self, "letter_map", lm)
        for a in self.source.alphabet:
            if not lm.get(a):
                raise DiagramError(f"letter {a!r} has no nonempty image")
        for k, (u, v) in enumerate(self.source.relations):
            img = self.relation_map.get(k)
            if img is None:
                if self.image(u) != self.image(v):
                    raise DiagramError(f"relation {k} needs a filling diagram")
                continue
            if img.presentation != self.target:
                raise DiagramError(f"relation {k}: filling is over another presentation")
            if img.top != self.image(u) or img.bottom != self.image(v):
                raise DiagramError(f"relation {k}: filling has the wrong boundary")

    def image(self, w) -> Word:
        return tuple(a for x in w for a in self.letter_map[x])


def substitute(d: Diagram, m: LabelMorphism) -> Diagram:
    """Relabel ``d`` through ``m``, filling each cell with its image diagram."""
    if d.presentation != m.source:
        raise DiagramError("diagram is not over the morphism's source")
    p = d.presentation
    word = d.top
    steps = []
    for s in d.steps:
        off = len(m.image(word[:s.offset]))
        fill = m.relation_map.get(s.rel)
        if fill is not None:
            inner = fill.steps if s.sign > 0 else inverse(fill).steps
            steps.extend(Step(t.offset + off, t.rel, t.sign) for t in inner)
        word = apply_step(word, p, s)
    return from_derivation(steps, m.target, m.image(d.top))


# -- text and DOT -------------------------------------------------------------

def _edge_text(p: Presentation, word: Word, s: Step) -> str:
    lhs, rhs = p.sides(s.rel, s.sign)
    pre, suf = word[:s.offset], word[s.offset + len(lhs):]
    return f"({p.fmt(pre)}, {p.fmt(lhs)} -> {p.fmt(rhs)}, {p.fmt(suf)})"


def to_text(d: Diagram) -> str:
    p = d.presentation
    lines = [f"diagram over {p.name}: {p.fmt(d.top)} => {p.fmt(d.bottom)}"]
    word = d.top
    for s in d.steps:
        lines.append(_edge_text(p, word, s))
        word = apply_step(word, p, s)
    return "\n".join(lines) + "\n"


def parse_diagram(text: str, p: Presentation) -> Diagram:
    """Read the format written by :func:`to_text`; steps may be in any valid order."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("diagram over"):
        raise DiagramError("line 1: expected 'diagram over <name>: <top> => <bottom>'")
    try:
        _, rest = lines[0].split(":", 1)
        top_s, bot_s = rest.split("=>")
    except ValueError:
        raise DiagramError("line 1: malformed header") from None
    top = parse_word(top_s, p.alphabet)
    steps = []
    word = top
    for n, ln in enumerate(lines[1:], start=2):
        if not (ln.startswith("(") and ln.endswith(")")):
            raise DiagramError(f"line {n}: expected (prefix, lhs -> rhs, suffix)")
        try:
            pre_s, mid, suf_s = ln[1:-1].split(",")
            lhs_s, rhs_s = mid.split("->")
        except ValueError:
            raise DiagramError(f"line {n}: expected (prefix, lhs -> rhs, suffix)") from None
        pre, lhs, rhs, suf = (parse_word(t, p.alphabet) for t in (pre_s, lhs_s, rhs_s, suf_s))
        if (lhs, rhs) in p.relations:
            s = Step(len(pre), p.relations.index((lhs, rhs)), 1)
        elif (rhs, lhs) in p.relations:
            s = Step(len(pre), p.relations.index((rhs, lhs)), -1)
        else:
            raise DiagramError(f"line {n}: {ln} is not a relation of {p.name}")
        if pre + lhs + suf != word:
            raise DiagramError(f"line {n}: edge starts at {p.fmt(pre + lhs + suf)}, not {p.fmt(word)}")
        steps.append(s)
        word = apply_step(word, p, s)
    bottom = parse_word(bot_s, p.alphabet)
    if word != bottom:
        raise DiagramError(f"derivation ends at {p.fmt(word)}, header says {p.fmt(bottom)}")
    return from_derivation(steps, p, top)


def to_dot(d: Diagram, name: str = "diagram") -> str:
    """Plane graph of ``d``: one edge per letter, cells as clusters."""
    p = d.presentation
    cells, _, _ = d.cells()
    verts = list(range(len(d.top) + 1))
    nv = len(verts)
    ends = {}
    labels = {}
    for i, a in enumerate(d.top):
        ends[i] = (i, i + 1)
        labels[i] = a
    out = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=point];"]
    for k, (c, s) in enumerate(zip(cells, d.steps)):
        lhs, rhs = p.sides(s.rel, s.sign)
        start = ends[c.consumed[0]][0]
        stop = ends[c.consumed[-1]][1]
        inner = list(range(nv, nv + len(rhs) - 1))
        nv += len(inner)
        chain = [start] + inner + [stop]
        for x, a, u, v in zip(c.produced, rhs, chain, chain[1:]):
            ends[x] = (u, v)
            labels[x] = a
        out.append(f"  subgraph cluster_{k} {{")
        out.append(f'    label="{p.fmt(lhs)} -> {p.fmt(rhs)}";')
        out.append(f'    c{k} [shape=box, label="{k}"];')
        for v in inner:
            out.append(f"    v{v};")
        out.append("  }")
        out.append(f"  v{start} -> c{k} [style=dotted, arrowhead=none];")
    for v in range(nv):
        out.append(f"  v{v};")
    for x in sorted(ends):
        u, v = ends[x]
        out.append(f'  v{u} -> v{v} [label="{labels[x]}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# -- random generation (used by tests and demos) ----------------------------------

def random_derivation(p: Presentation, top, n: int, rng: random.Random, max_len: int = 12) -> Derivation:
    word = tuple(top)
    steps = []
    for _ in range(n):
        options = [s for s in p.steps_at(word) if len(apply_step(word, p, s)) <= max_len]
        if not options:
            break
        s = rng.choice(options)
        steps.append(s)
        word = apply_step(word, p, s)
    return Derivation(tuple(top), tuple(steps))


def random_diagram(p: Presentation, top, n: int, rng: random.Random, max_len: int = 12) -> Diagram:
    return from_derivation(random_derivation(p, top, n, rng, max_len), p)
