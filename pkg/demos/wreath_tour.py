"""Z wr Z inside F and the relator cost of g_n = [a^n, b^n]."""
from diagram_groups import wreath as W
from diagram_groups.subgroups import EXAMPLE37_A, EXAMPLE37_B, section4_data, thm18_generators, verify_zwrz
from diagram_groups.thompson import parse_nf

a, b = thm18_generators(**section4_data())
print("diagram pair:", "PASS" if verify_zwrz(a, b, 4).passed else "FAIL")
print("normal form pair:", "PASS" if verify_zwrz(parse_nf(EXAMPLE37_A), parse_nf(EXAMPLE37_B), 4).passed else "FAIL")

for n in range(1, 6):
    g = W.w_commutator(W.w_pow(W.ZA, n), W.w_pow(W.ZB, n))
    print(f"n={n}  relator cost {W.relator_cost_zwrz(g)}  phi_2 {W.phi_k(W.g_k_n(2, n))}")
