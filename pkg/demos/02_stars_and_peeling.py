"""Star-free colorings: greedy, exact, and the peeling trace on top of them."""

from nofbench.functions import gen_latin, gen_random
from nofbench.stars import chi_star_exact, color_greedy, enumerate_stars, peel

A = gen_random(2, 4, 3, seed=7)
print(A.table)
found = enumerate_stars(A)
print(f"{len(found)} stars, first: {found[0].entries}")

greedy = color_greedy(A)
exact = chi_star_exact(A)
print(f"greedy uses {greedy.colors_used} colors, the minimum is {exact.value}")
print(exact.coloring.table)

for name, B in [("latin 6", gen_latin(6)), ("random 12", gen_random(2, 12, 4, seed=3))]:
    coloring = color_greedy(B)
    trace = peel(B, coloring)
    print(f"\n{name}: {coloring.colors_used} greedy colors, {trace.iterations} peeling rounds")
    for t, s in enumerate(trace.steps, 1):
        print(f"  round {t}: {len(s.rows)}x{len(s.cols)} block, value {s.value}, "
              f"color {s.color}, support {len(s.support)}, ratio {float(s.ratio):.2f}")
