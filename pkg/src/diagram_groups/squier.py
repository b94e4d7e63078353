"""Bounded Squier complexes, their fundamental groups, and diagram-product presentations.

Positive edges are triples (prefix, relation index, suffix) read as
prefix·u·suffix → prefix·v·suffix.  A 2-cell is a 5-tuple
(u, r1, z, r2, v) of two independent positive applications.  π1 of the
component of w is the diagram group D(P, w); on a truncated
component we only get π1 of the truncation, and the complex says so.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field

from .diagram import Diagram, DiagramError, from_derivation, group_mul, inverse, reduce, trivial
from .presentation import Presentation, PresentationError, Step, apply_step


@dataclass
class SquierComplex:
    presentation: Presentation
    base: tuple
    vertices: list  # discovery order
    depth: dict
    pos_edges: list
    two_cells: list
    truncated: bool
    parent: dict = field(default_factory=dict)  # vertex -> (edge, direction) of its tree edge

    def edge_ends(self, e):
        pre, r, suf = e
        u, v = self.presentation.relations[r]
        return pre + u + suf, pre + v + suf

    def summary(self) -> str:
        return (f"{len(self.vertices)} vertices, {len(self.pos_edges)} edges, "
                f"{len(self.two_cells)} 2-cells, truncated={self.truncated}")


def _edge_of(w, s: Step, p: Presentation):
    lhs, _ = p.sides(s.rel, s.sign)
    pre, suf = w[:s.offset], w[s.offset + len(lhs):]
    return (pre, s.rel, suf)


def build_component(p: Presentation, w, max_depth: int | None = None,
                    max_word_len: int = 12, max_visited: int = 5000) -> SquierComplex:
    """Breadth-first closure of the component of ``w`` within the bounds."""
    w = tuple(w)
    if not w:
        raise PresentationError("base word must be nonempty")
    depth = {w: 0}
    order = [w]
    parent = {}
    queue = deque([w])
    truncated = False
    while queue:
        cur = queue.popleft()
        for s in p.steps_at(cur):
            nxt = apply_step(cur, p, s)
            if nxt in depth:
                continue
            if ((max_depth is not None and depth[cur] + 1 > max_depth)
                    or len(nxt) > max_word_len or len(order) >= max_visited):
                truncated = True
                continue
            depth[nxt] = depth[cur] + 1
            order.append(nxt)
            parent[nxt] = (_edge_of(cur, s, p), s.sign)
            queue.append(nxt)
    edges = []
    cells = []
    for cur in order:
        fwd = [s for s in p.steps_at(cur) if s.sign > 0]
        for s in fwd:
            if apply_step(cur, p, s) in depth:
                edges.append(_edge_of(cur, s, p))
        for s1 in fwd:
            u1, v1 = p.relations[s1.rel]
            for s2 in fwd:
                if s2.offset < s1.offset + len(u1):
                    continue
                a = apply_step(cur, p, s1)
                b = apply_step(cur, p, s2)
                c = apply_step(a, p, Step(s2.offset + len(v1) - len(u1), s2.rel, 1))
                if a in depth and b in depth and c in depth:
                    u2 = p.relations[s2.rel][0]
                    cells.append((cur[:s1.offset], s1.rel, cur[s1.offset + len(u1):s2.offset],
                                  s2.rel, cur[s2.offset + len(u2):]))
    return SquierComplex(p, w, order, depth, edges, cells, truncated, parent)


def spanning_tree(k: SquierComplex) -> set:
    """Edges of the breadth-first tree rooted at the base."""
    return {e for e, _ in k.parent.values()}


def tree_path(k: SquierComplex, v) -> list:
    """Path from the base to ``v`` inside the spanning tree, as (edge, direction) pairs."""
    out = []
    while v != k.base:
        e, sign = k.parent[v]
        out.append((e, sign))
        a, b = k.edge_ends(e)
        v = a if sign > 0 else b
    return out[::-1]


def reverse_path(path) -> list:
    return [(e, -s) for e, s in reversed(path)]


def path_to_diagram(k: SquierComplex | Presentation, path, start=None) -> Diagram:
    p = k.presentation if isinstance(k, SquierComplex) else k
    if start is None:
        if path:
            e, s = path[0]
            pre, r, suf = e
            u, v = p.relations[r]
            start = pre + (u if s > 0 else v) + suf
        elif isinstance(k, SquierComplex):
            start = k.base
        else:
            raise DiagramError("empty path needs a start word")
    word = tuple(start)
    steps = []
    for n, (e, s) in enumerate(path):
        pre, r, suf = e
        u, v = p.relations[r]
        if word != pre + (u if s > 0 else v) + suf:
            raise DiagramError(f"path breaks at edge {n}")
        st = Step(len(pre), r, s)
        steps.append(st)
        word = apply_step(word, p, st)
    return from_derivation(steps, p, tuple(start))


def cell_boundary(k: SquierComplex, cell):
    """The two positive paths around a 2-cell, from its top corner to its bottom corner."""
    p = k.presentation
    u, r1, z, r2, v = cell
    l1, t1 = p.relations[r1]
    l2, t2 = p.relations[r2]
    first = [((u, r1, z + l2 + v), 1), ((u + t1 + z, r2, v), 1)]
    second = [((u + l1 + z, r2, v), 1), ((u, r1, z + t2 + v), 1)]
    return first, second


# -- fundamental group ------------------------------------------------------------

def free_reduce(word) -> tuple:
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def _canonical_relator(word):
    """Least rotation of the word or of its inverse, so duplicates collapse."""
    w = cyclic_reduce(word)
    if not w:
        return w
    inv = tuple((g, -e) for g, e in reversed(w))
    rots = [c[i:] + c[:i] for c in (w, inv) for i in range(len(c))]
    return min(rots)


@dataclass
class GroupPresentationOut:
    generators: list
    relators: list  # words of (generator name, ±1)
    tietze_reduced: bool
    edges: dict  # generator name -> positive edge

    def rank_if_free(self):
        return None if self.relators else len(self.generators)

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(format_group_word(r) for r in self.relators)
        return f"⟨{gens} ∣ {rels}⟩" if rels else f"⟨{gens} ∣ ∅⟩"

    def to_text(self) -> str:
        rels = " , ".join(f"{format_group_word(r)} = 1" for r in self.relators)
        return f"{' '.join(self.generators)} | {rels}".rstrip()


def format_group_word(w) -> str:
    if not w:
        return "1"
    return " ".join(g if e > 0 else f"{g}^-1" for g, e in w)


def _tietze(gens: list, rels: list):
    gens = list(gens)
    rels = [_canonical_relator(r) for r in rels]
    while True:
        rels = sorted({r for r in rels if r})
        target = None
        for r in rels:
            if len(r) == 1:
                target = (r[0][0], ())
                break
            if len(r) == 2 and r[0][0] != r[1][0]:
                (g, eg), (h, eh) = r
                # eliminate the later generator
                if gens.index(g) > gens.index(h):
                    (g, eg), (h, eh) = (h, eh), (g, eg)
                # g^eg h^eh = 1  =>  h = g^(-eg*eh)
                target = (h, ((g, -eg * eh),))
                break
        if target is None:
            return gens, rels
        h, image = target
        gens.remove(h)
        inv_image = tuple((g, -e) for g, e in reversed(image))
        new = []
        for r in rels:
            w = []
            for g, e in r:
                if g == h:
                    w.extend(image if e > 0 else inv_image)
                else:
                    w.append((g, e))
            new.append(_canonical_relator(w))
        rels = new


def pi1_presentation(k: SquierComplex, tietze: bool = True) -> GroupPresentationOut:
    tree = spanning_tree(k)
    names = {}
    for e in k.pos_edges:
        if e not in tree:
            names[e] = f"g{len(names)}"
    rels = []
    for cell in k.two_cells:
        first, second = cell_boundary(k, cell)
        loop = first + reverse_path(second)
        rels.append([(names[e], s) for e, s in loop if e in names])
    gens = list(names.values())
    if tietze:
        gens, rels = _tietze(gens, rels)
    else:
        rels = [cyclic_reduce(r) for r in rels]
        rels = [r for r in rels if r]
    edges = {g: e for e, g in names.items() if g in gens}
    return GroupPresentationOut(gens, list(rels), tietze, edges)


def generator_loops(k: SquierComplex) -> list:
    """For every non-tree edge, the loop tree·edge·tree^{-1} at the base."""
    tree = spanning_tree(k)
    out = []
    for e in k.pos_edges:
        if e in tree:
            continue
        a, b = k.edge_ends(e)
        out.append(tree_path(k, a) + [(e, 1)] + reverse_path(tree_path(k, b)))
    return out


def loop_diagrams(k: SquierComplex) -> list:
    """Reduced diagrams of :func:`generator_loops`; these generate π1 of the truncation."""
    return [reduce(path_to_diagram(k, loop, k.base)) for loop in generator_loops(k)]


def random_spherical(k: SquierComplex, rng: random.Random, factors: int = 4) -> Diagram:
    gens = loop_diagrams(k)
    out = trivial(k.presentation, k.base)
    if not gens:
        return out
    for _ in range(factors):
        g = rng.choice(gens)
        out = group_mul(out, g if rng.random() < 0.5 else reduce(inverse(g)))
    return out


# -- export -------------------------------------------------------------------------

def _w(p, word):
    return p.fmt(word)


def to_json(k: SquierComplex) -> str:
    p = k.presentation

    def edge(e):
        pre, r, suf = e
        u, v = p.relations[r]
        return [_w(p, pre), f"{_w(p, u)} -> {_w(p, v)}", _w(p, suf)]

    def cell(c):
        u, r1, z, r2, v = c
        return [_w(p, u), r1, _w(p, z), r2, _w(p, v)]

    data = {
        "presentation": p.to_text(),
        "base": _w(p, k.base),
        "truncated": k.truncated,
        "vertices": sorted(_w(p, v) for v in k.vertices),
        "edges": sorted(edge(e) for e in k.pos_edges),
        "two_cells": sorted(cell(c) for c in k.two_cells),
    }
    return json.dumps(data, indent=1, ensure_ascii=False, sort_keys=True)


def to_dot(k: SquierComplex) -> str:
    p = k.presentation
    ids = {v: n for n, v in enumerate(k.vertices)}
    tree = spanning_tree(k)
    out = ["graph squier {"]
    for v, n in ids.items():
        out.append(f'  v{n} [label="{_w(p, v)}"];')
    for e in k.pos_edges:
        a, b = k.edge_ends(e)
        style = "bold" if e in tree else "solid"
        u, w = p.relations[e[1]]
        out.append(f'  v{ids[a]} -- v{ids[b]} [label="{_w(p, u)}→{_w(p, w)}", style={style}];')
    out.append("}")
    return "\n".join(out) + "\n"


# -- diagram products ------------------------------------------------------------------

def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "_"
    return name


def diagram_product_presentation(q: Presentation, w, family: dict) -> Presentation:
    """⟨X ∪ A ∪ Σ | S ∪ W ∪ R⟩ with W = {x = a_x w_x a_x}.

    ``family`` maps letters of q to (presentation, base word).  Letters
    outside the family carry the trivial group and get no new relations.
    Clashing letters of the family presentations are renamed.
    """
    taken = set(q.alphabet)
    members = [x for x in q.alphabet if x in family]
    a_names = {}
    for x in members:
        a = _fresh("a" if len(members) == 1 else f"a_{x}", taken)
        taken.add(a)
        a_names[x] = a
    sigma = []
    extra = []
    for x in members:
        fp, base = family[x]
        ren = {}
        for c in fp.alphabet:
            new = _fresh(c, taken)
            taken.add(new)
            ren[c] = new
            sigma.append(new)
        image = lambda word: tuple(ren[c] for c in word)
        a = a_names[x]
        extra.append(((x,), (a,) + image(tuple(base)) + (a,)))
        extra.extend((image(u), image(v)) for u, v in fp.relations)
    alphabet = tuple(q.alphabet) + tuple(a_names[x] for x in members) + tuple(sigma)
    return Presentation(alphabet, tuple(q.relations) + tuple(extra), name=f"{q.name}_product")


def _p(letters, rels, name):
    return Presentation(tuple(letters), tuple((tuple(u), tuple(v)) for u, v in rels), name=name)


def named_builder(kind: str, n: int = 3):
    """(Q, base) for the standard diagram-product examples."""
    if kind == "direct_product":
        xs = [f"x{i}" for i in range(1, n + 1)]
        return _p(xs, [], f"direct_product{n}"), tuple(xs)
    if kind == "free_product":
        xs = ["x"] + [f"x{i}" for i in range(1, n + 1)]
        return _p(xs, [(("x",), (x,)) for x in xs[1:]], f"free_product{n}"), ("x",)
    if kind in ("bullet", "wreath_with_Z"):
        return _p("xyz", [("x", "xy"), ("z", "yz")], kind), ("x", "z")
    if kind == "direct_power":
        return _p("xy", [("x", "xy")], kind), ("x",)
    if kind == "big_O":
        yb = "ȳ"
        rels = [(("x",), ("x", "y", "p")), (("z",), ("r", yb, "z")), (("p", "y", "q"), ("q", yb, "r"))]
        return _p(["x", "y", yb, "z", "p", "q", "r"], rels, kind), ("x", "y", "q", yb, "z")
    raise ValueError(f"unknown builder {kind!r}")


def f_wr_z_input():
    """(Q, base, family) whose diagram product is F wr Z."""
    q = _p("xyz", [("xy", "x"), ("yz", "z")], "f_wr_z")
    u = _p("u", [("uu", "u")], "thompson_u")
    return q, ("x", "z"), {"y": (u, ("u",))}
