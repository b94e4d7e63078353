import sys
import random
from collections import deque
from pathlib import Path

import pytest

from diagram_groups.diagram import compose, from_derivation, inverse, random_derivation
from diagram_groups.presentation import Presentation, Step, apply_step

DATA = Path(__file__).parent / "data"


def random_presentation(rng: random.Random, name="R") -> Presentation:
    """Small antisymmetric presentation on 2 or 3 letters."""
    letters = "abc"[: rng.choice([2, 3])]
    rels = []
    seen = set()
    while len(rels) < rng.choice([1, 2, 3]):
        u = tuple(rng.choice(letters) for _ in range(rng.randint(1, 2)))
        v = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        if u == v or (u, v) in seen or (v, u) in seen:
            continue
        seen.add((u, v))
        rels.append((u, v))
    return Presentation(tuple(letters), tuple(rels), name=name)


def random_word(rng, p, n):
    return tuple(rng.choice(p.alphabet) for _ in range(n))


def sandwich(rng, p, top, max_len=9):
    """X∘Z∘Z⁻¹∘X⁻¹∘W with at most 30 cells; it reduces like W."""
    x = from_derivation(random_derivation(p, top, rng.randint(0, 8), rng, max_len), p)
    z = from_derivation(random_derivation(p, x.bottom, rng.randint(0, 4), rng, max_len), p)
    w = from_derivation(random_derivation(p, top, rng.randint(0, 6), rng, max_len), p)
    d = compose(compose(compose(compose(x, z), inverse(z)), inverse(x)), w)
    return d, w


def swap_class(p, top, steps, limit=5000):
    """All derivations reachable by the interchange moves on adjacent steps."""
    lens = lambda s: tuple(len(t) for t in p.sides(s.rel, s.sign))
    start = tuple(steps)
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < limit:
        cur = queue.popleft()
        for k in range(len(cur) - 1):
            s1, s2 = cur[k], cur[k + 1]
            a1, b1 = lens(s1)
            a2, b2 = lens(s2)
            if s2.offset >= s1.offset + b1:
                new = (Step(s2.offset - (b1 - a1), s2.rel, s2.sign), s1)
            elif s2.offset + a2 <= s1.offset:
                new = (s2, Step(s1.offset + (b2 - a2), s1.rel, s1.sign))
            else:
                continue
            nxt = cur[:k] + new + cur[k + 2:]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def replay(p, top, steps):
    w = tuple(top)
    for s in steps:
        w = apply_step(w, p, s)
    return w


@pytest.fixture
def rng():
    return random.Random(20261016)


def free_words(radius, gens=(0, 1)):
    """Freely reduced words over x_i^{±1}, i in gens, of length ≤ radius."""
    letters = [(i, e) for i in gens for e in (1, -1)]
    out = [()]
    layer = [()]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[-1] == (a[0], -a[1]):
                    continue
                nxt.append(w + (a,))
        out += nxt
        layer = nxt
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
