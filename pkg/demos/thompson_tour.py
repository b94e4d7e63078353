"""Thompson's group F three ways: diagrams, normal forms and PL maps."""
from diagram_groups.abelian import rho
from diagram_groups.diagram import group_mul, to_text
from diagram_groups.pl import format_dyadic, pl_from_diagram, support, to_text as pl_text
from diagram_groups.thompson import cell_count_k, diagram_to_nf, format_nf, generator_diagram, nf_from_word

x0, x1 = generator_diagram(0, 3), generator_diagram(1, 3)
print("x0 over base xxx:")
print(to_text(x0))

d = group_mul(x1, x0)
print("x1 x0 reads back as", format_nf(diagram_to_nf(d)))

f = pl_from_diagram(d)
print("as a PL map:", pl_text(f))
print("support:", ", ".join(f"({format_dyadic(a)}, {format_dyadic(b)})" for a, b in support(f)))

comm = nf_from_word("x0^-1 x1^-1 x0 x1")
print("[x0, x1] =", format_nf(comm), "with", cell_count_k(comm, 3), "cells at base xxx")
print("rho(x0) =", rho(x0))
