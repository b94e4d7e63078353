"""Fundamental groups of truncated Squier complexes."""
from diagram_groups.presentation import parse_presentation
from diagram_groups.squier import build_component, pi1_presentation

cases = [
    ("x y | x = x y", "x", "direct power scaffold, trivial"),
    ("x y z | x = x y , z = y z", "xz", "Z wr Z scaffold, infinite cyclic"),
    ("a b | a b = b a", "abab", "commuting letters"),
]
for text, base, label in cases:
    p = parse_presentation(text)
    k = build_component(p, base, max_depth=6, max_word_len=12)
    print(f"{label}: {len(k.vertices)} vertices, {len(k.two_cells)} 2-cells, pi1 {pi1_presentation(k)}")
