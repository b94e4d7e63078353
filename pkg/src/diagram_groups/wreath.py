"""The iterated wreath products H_0 = 1, H_{k+1} = H_k wr ⟨a_{k+1}⟩.

A level-k element is a finitely supported map ℓ ↦ (level k-1 element) plus
an exponent of a_k.  Products follow

    (f, m)·(g, n) = (ℓ ↦ f(ℓ - n)·g(ℓ), m + n),

so conjugating by a_k moves fiber ℓ to fiber ℓ + 1.  Z wr Z is level 2 with
a = a_1, b = a_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class WreathError(ValueError):
    pass


class NotInM(WreathError):
    pass


class NotInN(WreathError):
    pass


@dataclass(frozen=True)
class WreathElement:
    level: int
    support: tuple = ()  # sorted (fiber, element) pairs, no identities
    top: int = 0

    def fiber(self, ell: int) -> "WreathElement":
        for k, v in self.support:
            if k == ell:
                return v
        return w_identity(self.level - 1)

    def is_identity(self) -> bool:
        return not self.support and self.top == 0

    def __mul__(self, other):
        return w_mul(self, other)

    def __invert__(self):
        return w_inv(self)

    def __str__(self):
        return format_wreath(self)


@lru_cache(maxsize=None)
def w_identity(level: int) -> WreathElement:
    if level < 0:
        raise WreathError("level must be nonnegative")
    return WreathElement(level)


def _make(level, fibers: dict, top: int) -> WreathElement:
    return WreathElement(level, tuple(sorted((k, v) for k, v in fibers.items() if not v.is_identity())), top)


def w_mul(a: WreathElement, b: WreathElement) -> WreathElement:
    if a.level != b.level:
        raise WreathError(f"level mismatch: {a.level} vs {b.level}")
    if a.level == 0:
        return a
    fibers = {k + b.top: v for k, v in a.support}
    for k, v in b.support:
        fibers[k] = w_mul(fibers[k], v) if k in fibers else v
    return _make(a.level, fibers, a.top + b.top)


def w_inv(a: WreathElement) -> WreathElement:
    if a.level == 0:
        return a
    return _make(a.level, {k - a.top: w_inv(v) for k, v in a.support}, -a.top)


def w_pow(a: WreathElement, n: int) -> WreathElement:
    out = w_identity(a.level)
    base = a if n >= 0 else w_inv(a)
    for _ in range(abs(n)):
        out = w_mul(out, base)
    return out


def w_conj(x: WreathElement, by: WreathElement) -> WreathElement:
    """x^by = by^{-1} x by."""
    return w_mul(w_mul(w_inv(by), x), by)


def w_commutator(x: WreathElement, y: WreathElement) -> WreathElement:
    """[x, y] = x^{-1} y^{-1} x y."""
    return w_mul(w_mul(w_inv(x), w_inv(y)), w_mul(x, y))


def embed(x: WreathElement, level: int) -> WreathElement:
    """Include H_k into H_level as the fiber-0 copy."""
    if level < x.level:
        raise WreathError("cannot embed into a lower level")
    while x.level < level:
        x = _make(x.level + 1, {0: x}, 0)
    return x


def a_gen(i: int, level: int) -> WreathElement:
    """The generator a_i of H_level."""
    if not 1 <= i <= level:
        raise WreathError(f"a_{i} does not exist at level {level}")
    return embed(WreathElement(i, (), 1), level)


def basic(i: int, ts=(), level: int | None = None) -> WreathElement:
    """a_i(t_1, …, t_r) = a_i^{a_{i+1}^{t_1} … a_{i+r}^{t_r}}."""
    ts = list(ts)
    level = i + len(ts) if level is None else level
    if i < 1 or i + len(ts) > level:
        raise WreathError(f"basic element a_{i}{tuple(ts)} does not fit level {level}")
    x = a_gen(i, level)
    for r, t in enumerate(ts, start=1):
        x = w_conj(x, w_pow(a_gen(i + r, level), t))
    return x


def g_k_n(k: int, n: int, level: int | None = None) -> WreathElement:
    """g_1(n) = a_1^n, g_{k+1}(n) = [g_k(n), a_{k+1}^n]."""
    level = k if level is None else level
    if k < 1 or k > level:
        raise WreathError("need 1 ≤ k ≤ level")
    g = w_pow(a_gen(1, level), n)
    for j in range(2, k + 1):
        g = w_commutator(g, w_pow(a_gen(j, level), n))
    return g


def g_word(d: int, n: int) -> list:
    """An explicit word for g_d(n) over a_1..a_d as (index, ±1) letters."""
    word = [(1, 1)] * n
    for k in range(2, d + 1):
        inv = [(i, -e) for i, e in reversed(word)]
        word = inv + [(k, -1)] * n + word + [(k, 1)] * n
    return word


def eval_word(word, level: int) -> WreathElement:
    out = w_identity(level)
    for i, e in word:
        out = w_mul(out, w_pow(a_gen(i, level), e))
    return out


def in_M(x: WreathElement) -> bool:
    """Membership in the normal closure M_k of a_1 in H_k."""
    if x.level <= 1:
        return True
    return x.top == 0 and all(in_M(v) for _, v in x.support)


def phi_k(x: WreathElement) -> int:
    """φ_k on M_k: φ_1(a_1^t) = t, φ_k(x) = Σ ℓ·φ_{k-1}(x(ℓ))."""
    if x.level == 0:
        return 0
    if x.level == 1:
        return x.top
    if x.top != 0:
        raise NotInM(f"top exponent {x.top} at level {x.level}")
    return sum(k * phi_k(v) for k, v in x.support)


# -- Z wr Z ----------------------------------------------------------------------

def zwrz(base: dict | None = None, top: int = 0) -> WreathElement:
    """Z wr Z element from fiber exponents of a and the exponent of b."""
    fibers = {k: WreathElement(1, (), e) for k, e in (base or {}).items()}
    return _make(2, fibers, top)


ZA = a_gen(1, 2)
ZB = a_gen(2, 2)


def c_gen(i: int) -> WreathElement:
    """c_i = a_i^{-1} a_{i+1} where a_i = a^{b^i}."""
    return zwrz({i: -1, i + 1: 1})


def base_exponents(g: WreathElement) -> dict:
    if g.level != 2:
        raise WreathError("expected a level-2 element")
    return {k: v.top for k, v in g.support}


def relator_cost_zwrz(g: WreathElement) -> int:
    """Least number of conjugates of [a,b]^{±1} whose product is g."""
    e = base_exponents(g)
    if g.top != 0 or sum(e.values()) != 0:
        raise NotInN("element is not in the normal closure of [a, b]")
    if not e:
        return 0
    total = 0
    partial = 0
    for i in range(min(e), max(e) + 1):
        partial -= e.get(i, 0)
        total += abs(partial)
    return total


def format_wreath(x: WreathElement) -> str:
    if x.level == 0:
        return "1"
    if x.level == 1:
        return f"a_1^{x.top}"
    inner = ", ".join(f"{k}:{format_wreath(v)}" for k, v in x.support)
    return f"({inner})^a_{x.level}^{x.top}"
