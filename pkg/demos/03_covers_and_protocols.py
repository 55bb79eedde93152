"""Monochromatic rectangle covers and the protocol that announces a cover member."""

from nofbench.cylinders import cover_cc, det_sim_bound, min_mono_cover, simulate_cover_protocol
from nofbench.functions import gen_latin, gen_random
from nofbench.help import det_cc_exact_2p

A = gen_random(2, 4, 3, seed=2)
print(A.table)
cover = min_mono_cover(A)
print(f"minimum cover: {cover.chi} rectangles, log-size bound {cover_cc(cover)}")
for R, v in cover.members:
    print(f"  rows {R.row_set} x cols {R.col_set} -> {v}")

run = simulate_cover_protocol(A, None, cover, (1, 2))
print(f"protocol on (1, 2): output {run.output}, {run.cost} bits, transcript {run.transcript}")
print(f"exact two-party complexity: {det_cc_exact_2p(A)}")

# The cover only has to agree with A on the scope, so the anti-diagonal scope of a Latin
# square (constant there) is covered by a single rectangle.
anti = [(i, 2 - i) for i in range(3)]
print(f"\nLatin 3 on its anti-diagonal: cover size {min_mono_cover(gen_latin(3), anti).chi}")
print(f"simulation bound for k=3, c=2: {det_sim_bound(3, 2)}")
