"""Acceptance criteria C1..C10, each timed against its budget.

Every criterion records one PASS/FAIL line; conftest prints them at the end of
the run. ``python3 tests/test_acceptance.py`` runs them without pytest.
"""
import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import free_words, random_presentation, random_word, sandwich
from diagram_groups.abelian import in_derived_subgroup_F, psi_relabel, q_t26, rho
from diagram_groups.diagram import (
    compose,
    dsum,
    equal,
    group_inv,
    group_mul,
    identity,
    inverse,
    is_reduced,
    random_diagram,
    reduce,
    to_text,
)
from diagram_groups.pl import identity as pl_identity
from diagram_groups.pl import pl_compose, pl_from_diagram, pl_from_nf, pl_inverse, to_text as pl_text, x_gen
from diagram_groups.presentation import parse_presentation
from diagram_groups.squier import (
    build_component,
    cell_boundary,
    diagram_product_presentation,
    f_wr_z_input,
    named_builder,
    path_to_diagram,
    pi1_presentation,
    random_spherical,
)
from diagram_groups.subgroups import (
    EXAMPLE37_A,
    EXAMPLE37_B,
    NF_OPS,
    ball,
    distortion_profile,
    ff_embed,
    section4_data,
    thm18_generators,
    verify_zwrz,
)
from diagram_groups.thompson import (
    IDENTITY,
    THOMPSON as T,
    cell_count_k,
    gen,
    generator_diagram,
    nf_commutator,
    nf_conj,
    nf_from_word,
    parse_nf,
    xword,
)
from diagram_groups import wreath as W

RESULTS = []


@contextmanager
def criterion(name, budget, what):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        dt = time.perf_counter() - t0
        RESULTS.append(f"{name} FAIL {dt:6.2f}s/{budget}s  {what}  ({type(exc).__name__}: {exc})")
        raise
    dt = time.perf_counter() - t0
    ok = dt < budget
    RESULTS.append(f"{name} {'PASS' if ok else 'FAIL'} {dt:6.2f}s/{budget}s  {what}")
    assert ok, f"{name} took {dt:.1f}s, budget {budget}s"


def word_diagram(word, k=3):
    d = identity(T, xword(k))
    for i, e in word:
        g = generator_diagram(i, k)
        d = group_mul(d, g if e > 0 else group_inv(g))
    return d


def word_pl(word):
    f = pl_identity()
    for i, e in word:
        g = x_gen(i)
        f = pl_compose(f, g if e > 0 else pl_inverse(g))
    return f


def test_c1_unique_reduced_form():
    with criterion("C1", 30, "500 diagrams x 10 removal orders give one reduced form"):
        rng = random.Random(1)
        checked = 0
        for j in range(5):
            p = random_presentation(rng, f"R{j}")
            for _ in range(100):
                top = random_word(rng, p, rng.randint(1, 4))
                d, w = sandwich(rng, p, top)
                assert d.cell_count <= 30
                forms = {to_text(reduce(d, random.Random(rng.random()))) for _ in range(10)}
                forms.add(to_text(reduce(d)))
                assert forms == {to_text(reduce(w))}
                checked += 1
        assert checked == 500


def test_c2_group_axioms_and_interchange():
    with criterion("C2", 10, "group axioms and interchange law on 200 tuples"):
        rng = random.Random(2)
        pool = []
        while len(pool) < 5:
            p = random_presentation(rng)
            u = random_word(rng, p, 2)
            k = build_component(p, u, max_depth=3, max_word_len=7)
            if k.pos_edges:
                pool.append((p, u, k))
        for j in range(200):
            p, u, k = pool[j % 5]
            v = random_word(rng, p, 2)
            d1 = random_diagram(p, u, rng.randint(0, 3), rng, 8)
            d2 = random_diagram(p, v, rng.randint(0, 3), rng, 8)
            d3 = random_diagram(p, d1.bottom, rng.randint(0, 3), rng, 8)
            d4 = random_diagram(p, d2.bottom, rng.randint(0, 3), rng, 8)
            assert equal(compose(dsum(d1, d2), dsum(d3, d4)), dsum(compose(d1, d3), compose(d2, d4)))
            assert equal(compose(compose(d1, d3), inverse(d3)), d1)
            a, b, c = (random_spherical(k, rng, factors=2) for _ in range(3))
            e = identity(p, u)
            assert equal(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c)))
            assert equal(group_mul(a, group_inv(a)), e) and equal(group_mul(group_inv(a), a), e)
            assert equal(group_mul(a, e), a) and equal(group_mul(e, a), a)


def test_c3_three_representations():
    with criterion("C3", 60, "diagram, normal form and PL agree on the radius-4 ball"):
        words = free_words(4)
        keys = []
        for word in words:
            d = word_diagram(word)
            f = nf_from_word(word)
            g = word_pl(word)
            assert pl_text(pl_from_diagram(d)) == pl_text(g) == pl_text(pl_from_nf(f))
            keys.append((d.key(), f, pl_text(g)))
        # the three equivalence relations on words coincide
        for a in range(3):
            for b in range(a + 1, 3):
                pairs = {(k[a], k[b]) for k in keys}
                assert len(pairs) == len({k[a] for k in keys}) == len({k[b] for k in keys})
        for i in range(6):
            for j in range(i + 1, 6):
                w = [(i, -1), (j, 1), (i, 1)]
                assert equal(word_diagram(w, 7), generator_diagram(j + 1, 7))
                assert nf_conj(gen(j), gen(i)) == gen(j + 1)
                assert pl_text(word_pl(w)) == pl_text(x_gen(j + 1))


def test_c4_cell_count_bounds():
    with criterion("C4", 300, "|g|/3 <= #3(g) <= 2|g| on radius 6, k-variation on radius 4"):
        b = ball({"x0": gen(0), "x1": gen(1)}, NF_OPS, 6)
        assert len(b) > 1000
        for f, length, _ in b.values():
            c3 = cell_count_k(f, 3)
            assert length <= 3 * c3 and c3 <= 2 * length
            if length <= 4:
                for k in range(1, 7):
                    assert abs(cell_count_k(f, k) - c3) <= 2 * abs(k - 3)


def test_c5_rho_kernel():
    with criterion("C5", 120, "ker rho = F' on radius 5, psi lands in ker rho and keeps reducedness"):
        for word in free_words(5):
            f = nf_from_word(word)
            pl = pl_from_nf(f)
            assert in_derived_subgroup_F(f) == (pl.slope_at_0() == 1 and pl.slope_at_1() == 1)
            assert (rho(word_diagram(word)) == 0) == in_derived_subgroup_F(f)
        q = q_t26()
        k = build_component(q, ("a0", "b0"), max_depth=4, max_word_len=7)
        rng = random.Random(5)
        nontrivial = 0
        for _ in range(100):
            d = random_spherical(k, rng, factors=3)
            img = psi_relabel(d)
            assert img.is_spherical() and rho(img) == 0
            nontrivial += bool(d.cell_count)
        assert nontrivial >= 50
        for _ in range(100):
            d = reduce(random_diagram(q, ("a0", "b0"), rng.randint(1, 20), rng, max_len=9))
            assert is_reduced(psi_relabel(d))


def test_c6_squier_goldens():
    with criterion("C6", 30, "pi1 of the power, wreath and free complexes"):
        power = parse_presentation("x y | x = x y")
        g = pi1_presentation(build_component(power, "x", max_word_len=11))
        assert g.generators == [] and g.relators == []
        bullet = parse_presentation("x y z | x = x y , z = y z")
        for depth in range(1, 9):
            k = build_component(bullet, "xz", max_depth=depth, max_word_len=20)
            g = pi1_presentation(k)
            assert len(g.generators) == 1 and g.relators == []
            raw = pi1_presentation(k, tietze=False)
            assert all(len(r) == 2 for r in raw.relators)
            for cell in k.two_cells:
                first, second = cell_boundary(k, cell)
                assert equal(path_to_diagram(k, first), path_to_diagram(k, second))
        k = build_component(parse_presentation("x y | "), "xy")
        assert k.vertices == [("x", "y")] and k.pos_edges == []
        for p, w in ((parse_presentation("x | x = x x"), "xx"), (parse_presentation("a b | a b = b a , a = a a"), "ab")):
            k = build_component(p, w, max_depth=3, max_word_len=6)
            for cell in k.two_cells:
                first, second = cell_boundary(k, cell)
                assert equal(path_to_diagram(k, first), path_to_diagram(k, second))


def test_c7_builder_goldens():
    with criterion("C7", 1, "F wr Z product and O(G,H) scaffold strings"):
        q, base, family = f_wr_z_input()
        p = diagram_product_presentation(q, base, family)
        assert str(p) == "⟨x, y, z, a, u ∣ xy = x, yz = z, y = aua, uu = u⟩"
        assert p.fmt(base) == "xz"
        o, ob = named_builder("big_O")
        assert str(o) == "⟨x, y, ȳ, z, p, q, r ∣ x = xyp, z = rȳz, pyq = qȳr⟩"
        assert o.fmt(ob) == "xyqȳz"


def test_c8_zwrz_certificates():
    with criterion("C8", 180, "Z wr Z certificates and commuting F x F factors"):
        a, b = thm18_generators(**section4_data())
        assert verify_zwrz(a, b, 4).passed
        assert verify_zwrz(parse_nf(EXAMPLE37_A), parse_nf(EXAMPLE37_B), 4).passed
        words = [nf_from_word(w) for w in free_words(3)]
        left = [ff_embed(g, "left") for g in words]
        right = [ff_embed(h, "right") for h in words]
        for lg in left:
            for rh in right:
                assert nf_commutator(lg, rh) == IDENTITY


def test_c9_wreath_quantitative():
    with criterion("C9", 60, "phi_k values, relator cost n^2 and word-length bound"):
        for k in range(1, 5):
            for n in range(1, 6):
                assert W.phi_k(W.g_k_n(k, n)) == n ** k
        rng = random.Random(9)
        for k in range(1, 4):
            for _ in range(50):
                word = [(rng.randint(1, k), rng.choice([1, -1])) for _ in range(6)]
                h = W.eval_word(word, k)
                assert W.phi_k(W.w_conj(W.g_k_n(k, 1), h)) == 1
        for n in range(1, 7):
            g = W.w_commutator(W.w_pow(W.ZA, n), W.w_pow(W.ZB, n))
            assert W.relator_cost_zwrz(g) == n * n
        for d in range(1, 5):
            for n in range(1, 6):
                word = W.g_word(d, n)
                assert len(word) <= (3 * 2 ** (d - 1) - 2) * n
                assert W.eval_word(word, d) == W.g_k_n(d, n)


def test_c10_cyclic_undistorted():
    with criterion("C10", 120, "<x0> in F has linear distortion up to 6"):
        def member(h):  # x0^n exactly when the normal form only uses x0
            return set(h.pos) <= {0} and set(h.neg) <= {0}
        t = distortion_profile({"x0": gen(0)}, {"x0": gen(0), "x1": gen(1)}, NF_OPS, 6, 8, member=member)
        assert t.rows == [(n, n, True) for n in range(7)]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except BaseException:
                failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
