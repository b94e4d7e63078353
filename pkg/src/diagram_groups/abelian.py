"""The homomorphism ρ to the free abelian group on M × R × M.

Each cell (x, u → v, y) of a spherical diagram contributes ±(x̄, u=v, ȳ),
where x̄, ȳ are the images of the prefix and suffix in the monoid M presented
by P.  For ⟨x | x = xx⟩ the monoid is {1, x} and ker ρ is F′.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .diagram import (
    Diagram,
    DiagramError,
    LabelMorphism,
    from_derivation,
    substitute,
)
from .presentation import Presentation, Step, apply_step
from .thompson import THOMPSON, NormalForm, nf_inv, nf_mul, nf_to_diagram


@dataclass(frozen=True)
class MonoidOracle:
    """Canonical form on words of the monoid presented by ``presentation``."""

    presentation: Presentation
    canon: Callable = field(compare=False)

    def __call__(self, w) -> str:
        return self.canon(tuple(w))


def _idempotent_canon(w):
    return "x" if w else "1"


THOMPSON_ORACLE = MonoidOracle(THOMPSON, _idempotent_canon)


class AbelianVector:
    """Finitely supported integer combination of basis triples (m, relation, m′)."""

    __slots__ = ("counts", "names")

    def __init__(self, counts=None, names=()):
        self.counts = Counter({k: v for k, v in (counts or {}).items() if v})
        self.names = tuple(names)

    def __add__(self, other):
        c = Counter(self.counts)
        for k, v in other.counts.items():
            c[k] += v
        return AbelianVector(c, self.names or other.names)

    def __neg__(self):
        return AbelianVector({k: -v for k, v in self.counts.items()}, self.names)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.counts
        return isinstance(other, AbelianVector) and self.counts == other.counts

    def __hash__(self):
        return hash(frozenset(self.counts.items()))

    def __bool__(self):
        return bool(self.counts)

    def is_zero(self):
        return not self.counts

    def _basis(self, key):
        left, rel, right = key
        name = self.names[rel] if rel < len(self.names) else f"r{rel}"
        return f"({left}, {name}, {right})"

    def __str__(self):
        if not self.counts:
            return "0"
        terms = sorted((self._basis(k), v) for k, v in self.counts.items())
        out = []
        for text, v in terms:
            sign = "+" if v > 0 else "-"
            mag = "" if abs(v) == 1 else f"{abs(v)} "
            out.append(f"{sign} {mag}{text}")
        return " ".join(out)

    def __repr__(self):
        return f"AbelianVector({str(self)!r})"


def _relation_names(p: Presentation):
    return tuple(f"{p.fmt(u)}={p.fmt(v)}" for u, v in p.relations)


def rho(d: Diagram, oracle: MonoidOracle | None = None) -> AbelianVector:
    p = d.presentation
    if oracle is None:
        if p != THOMPSON:
            raise DiagramError(f"ρ over {p.name} needs a monoid oracle")
        oracle = THOMPSON_ORACLE
    if oracle.presentation != p:
        raise DiagramError("oracle belongs to another presentation")
    if not d.is_spherical():
        raise DiagramError("ρ is defined on spherical diagrams")
    counts = Counter()
    word = d.top
    for s in d.steps:
        lhs, _ = p.sides(s.rel, s.sign)
        key = (oracle(word[:s.offset]), s.rel, oracle(word[s.offset + len(lhs):]))
        counts[key] += s.sign
        word = apply_step(word, p, s)
    return AbelianVector(counts, _relation_names(p))


def in_derived_subgroup_F(f) -> bool:
    d = nf_to_diagram(f, 1) if isinstance(f, NormalForm) else f
    return rho(d).is_zero()


# -- Q = ⟨x, a_i, b_i | x = xx, a_i = a_{i+1} x, b_i = x b_{i+1}⟩ ----------------

def q_t26(bound: int = 64) -> Presentation:
    """Finite part of Q using indices 0..bound."""
    letters = ["x"] + [f"a{i}" for i in range(bound + 1)] + [f"b{i}" for i in range(bound + 1)]
    rels = [(("x",), ("x", "x"))]
    for i in range(bound):
        rels.append(((f"a{i}",), (f"a{i + 1}", "x")))
        rels.append(((f"b{i}",), ("x", f"b{i + 1}")))
    return Presentation(tuple(letters), tuple(rels), name=f"q_t26[{bound}]")


def psi_morphism(q: Presentation) -> LabelMorphism:
    split = from_derivation([Step(0, 0, 1)], THOMPSON, ("x",))
    return LabelMorphism(
        q, THOMPSON,
        {a: ("x",) for a in q.alphabet},
        {k: split for k in range(len(q.relations))},
    )


def psi_relabel(d: Diagram) -> Diagram:
    """Send every label to x and every cell to the single x = xx cell."""
    q = d.presentation
    if len(q.alphabet) < 3 or len(q.alphabet) % 2 == 0 or q != q_t26(len(q.alphabet) // 2 - 1):
        raise DiagramError("ψ is defined on diagrams over Q")
    return substitute(d, psi_morphism(q))


# -- Mikhailova-style membership -------------------------------------------------------

def mikhailova_membership(kind: str, g, h) -> bool:
    """Is (g, h) in the subgroup generated by the diagonal and (r, 1)?"""
    if kind == "F_mod_commutator":
        return in_derived_subgroup_F(nf_mul(g, nf_inv(h)))
    if kind == "ZwrZ_mod_commutator":
        from .wreath import base_exponents, w_inv, w_mul

        q = w_mul(g, w_inv(h))
        return q.top == 0 and sum(base_exponents(q).values()) == 0
    raise ValueError(f"unsupported subgroup kind {kind!r}")
