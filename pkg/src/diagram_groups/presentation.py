"""Words, semigroup presentations and elementary transformations.

A word is a tuple of letters (strings).  A presentation is an alphabet plus
an ordered list of defining relations ``(u, v)``; an elementary
transformation ``(x, u -> v, y)`` is encoded as a :class:`Step` carrying the
offset ``len(x)``, the relation index and a sign (+1 applies ``u -> v``,
-1 applies ``v -> u``).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

Word = tuple  # tuple[str, ...]

_LETTER = re.compile(r"[^\W\d]\w*")


class PresentationError(ValueError):
    pass


class NotApplicable(ValueError):
    pass


class Step(NamedTuple):
    offset: int
    rel: int
    sign: int = 1

    def flipped(self) -> "Step":
        return Step(self.offset, self.rel, -self.sign)


def format_word(w: Sequence[str], sep: str | None = None) -> str:
    """Render a word; the empty word prints as ``1``."""
    if not w:
        return "1"
    if sep is None:
        sep = "" if all(len(a) == 1 for a in w) else " "
    return sep.join(w)


def parse_word(text: str | Sequence[str], alphabet: Iterable[str] | None = None) -> Word:
    """Turn ``text`` into a word.

    Whitespace-separated tokens are letters.  A single token is split by
    longest match against ``alphabet`` when one is given, otherwise into
    characters.  ``"1"`` and ``""`` are the empty word.
    """
    if not isinstance(text, str):
        return tuple(text)
    text = text.strip()
    if text in ("", "1"):
        return ()
    parts = text.split()
    if len(parts) > 1:
        return tuple(parts)
    token = parts[0]
    if alphabet is None:
        return tuple(token)
    letters = sorted(set(alphabet), key=len, reverse=True)
    if token in letters:
        return (token,)
    out = []
    i = 0
    while i < len(token):
        for a in letters:
            if token.startswith(a, i):
                out.append(a)
                i += len(a)
                break
        else:
            raise PresentationError(f"cannot split {token!r} at position {i} into letters")
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple
    relations: tuple
    name: str = field(default="P", compare=False)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        rels = tuple((tuple(u), tuple(v)) for u, v in self.relations)
        if len(set(alphabet)) != len(alphabet):
            raise PresentationError("repeated letter in alphabet")
        letters = set(alphabet)
        seen = set()
        for k, (u, v) in enumerate(rels):
            if not u or not v:
                raise PresentationError(f"relation {k}: defining words must be nonempty")
            if u == v:
                raise PresentationError(f"relation {k}: u = u is not allowed")
            if (v, u) in seen:
                raise PresentationError(f"relation {k}: presentation must be antisymmetric")
            if (u, v) in seen:
                raise PresentationError(f"relation {k}: duplicate relation")
            seen.add((u, v))
            bad = (set(u) | set(v)) - letters
            if bad:
                raise PresentationError(f"relation {k}: letters {sorted(bad)} not in alphabet")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relations", rels)
        # first letter of a defining word -> [(rel, sign)], in exploration order
        index: dict = {}
        for k, (u, v) in enumerate(rels):
            index.setdefault(u[0], []).append((k, 1))
            index.setdefault(v[0], []).append((k, -1))
        for lst in index.values():
            lst.sort()
        object.__setattr__(self, "_by_first", index)

    def sides(self, rel: int, sign: int) -> tuple:
        """``(lhs, rhs)`` of relation ``rel`` applied in direction ``sign``."""
        u, v = self.relations[rel]
        return (u, v) if sign > 0 else (v, u)

    def single_letters(self) -> bool:
        return all(len(a) == 1 for a in self.alphabet)

    def fmt(self, w: Sequence[str]) -> str:
        return format_word(w, "" if self.single_letters() else " ")

    def steps_at(self, w: Word) -> Iterator[Step]:
        """All steps applicable to ``w``: offset, then relation, forward first."""
        for o, a in enumerate(w):
            for rel, sign in self._by_first.get(a, ()):
                lhs = self.relations[rel][0] if sign > 0 else self.relations[rel][1]
                if w[o:o + len(lhs)] == lhs:
                    yield Step(o, rel, sign)

    def apply(self, w: Word, s: Step) -> Word:
        return apply_step(w, self, s)

    def __str__(self):
        gens = ", ".join(self.alphabet)
        rels = ", ".join(f"{self.fmt(u)} = {self.fmt(v)}" for u, v in self.relations)
        return f"⟨{gens} ∣ {rels}⟩" if rels else f"⟨{gens} ∣ ∅⟩"

    def to_text(self) -> str:
        rels = " , ".join(f"{' '.join(u)} = {' '.join(v)}" for u, v in self.relations)
        return f"{' '.join(self.alphabet)} | {rels}".rstrip()


def parse_presentation(text: str, name: str = "P") -> Presentation:
    """Parse ``a b | a b = b a , ...``; errors carry the character position."""
    if "|" not in text:
        raise PresentationError("position 0: expected '|' separating letters from relations")
    bar = text.index("|")
    head, body = text[:bar], text[bar + 1:]
    alphabet = []
    for m in re.finditer(r"\S+", head):
        if not _LETTER.fullmatch(m.group()):
            raise PresentationError(f"position {m.start()}: bad letter {m.group()!r}")
        alphabet.append(m.group())
    relations = []
    pos = bar + 1
    if body.strip():
        for chunk in body.split(","):
            if chunk.count("=") != 1:
                raise PresentationError(f"position {pos}: expected exactly one '=' in {chunk.strip()!r}")
            lhs, rhs = chunk.split("=")
            words = []
            off = pos
            for side in (lhs, rhs):
                toks = side.split()
                for t in toks:
                    if not _LETTER.fullmatch(t):
                        raise PresentationError(f"position {off + side.index(t)}: bad letter {t!r}")
                if not toks:
                    raise PresentationError(f"position {off}: empty defining word")
                words.append(tuple(toks))
                off += len(side) + 1
            relations.append((words[0], words[1]))
            pos += len(chunk) + 1
    return Presentation(tuple(alphabet), tuple(relations), name=name)


def apply_step(w: Word, p: Presentation, s: Step) -> Word:
    if not 0 <= s.rel < len(p.relations):
        raise NotApplicable(f"no relation {s.rel}")
    lhs, rhs = p.sides(s.rel, s.sign)
    if s.offset < 0 or w[s.offset:s.offset + len(lhs)] != lhs:
        raise NotApplicable(f"{s} does not apply to {format_word(w)}")
    return w[:s.offset] + rhs + w[s.offset + len(lhs):]


@dataclass(frozen=True)
class Derivation:
    start: Word
    steps: tuple = ()

    def replay(self, p: Presentation) -> list:
        words = [tuple(self.start)]
        for k, s in enumerate(self.steps):
            try:
                words.append(apply_step(words[-1], p, s))
            except NotApplicable as exc:
                raise NotApplicable(f"step {k} {tuple(s)}: {exc}") from None
        return words

    def end(self, p: Presentation) -> Word:
        return self.replay(p)[-1]


class Equal(NamedTuple):
    witness: Derivation


class NotEqualWithinBound(NamedTuple):
    visited: int


class BoundExceeded(NamedTuple):
    visited: int


EqualityVerdict = Union[Equal, NotEqualWithinBound, BoundExceeded]


@dataclass(frozen=True)
class Limits:
    max_word_len: int = 12
    max_visited: int = 20000


def words_equal_bounded(p: Presentation, w1, w2, limits: Limits = Limits()) -> EqualityVerdict:
    """Breadth-first search in the graph of elementary transformations."""
    w1, w2 = tuple(w1), tuple(w2)
    if not w1 or not w2:
        raise ValueError("words must be nonempty")
    parent = {w1: None}
    queue = deque([w1])
    truncated = False
    while queue:
        w = queue.popleft()
        if w == w2:
            steps = []
            while parent[w] is not None:
                prev, s = parent[w]
                steps.append(s)
                w = prev
            return Equal(Derivation(w1, tuple(reversed(steps))))
        for s in p.steps_at(w):
            nxt = apply_step(w, p, s)
            if nxt in parent:
                continue
            if len(nxt) > limits.max_word_len or len(parent) >= limits.max_visited:
                truncated = True
                continue
            parent[nxt] = (w, s)
            queue.append(nxt)
    if truncated:
        return BoundExceeded(len(parent))
    return NotEqualWithinBound(len(parent))


def equal_modulo(p: Presentation, w1, w2, limits: Limits = Limits()) -> bool:
    return isinstance(words_equal_bounded(p, w1, w2, limits), Equal)
