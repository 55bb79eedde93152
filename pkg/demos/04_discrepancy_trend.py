"""Rectangle discrepancy, exact and sampled, and its trend on trace functions."""

from nofbench.discrepancy import bhk_bound, disc_rect_exact, disc_rect_sampled, format_trend, tmp_trend
from nofbench.functions import gen_random

A = gen_random(2, 8, 2, seed=4)
exact = disc_rect_exact(A)
sampled = disc_rect_sampled(A, 300, seed=0)
print(f"exact disc {exact.value} at rows {exact.rect.row_set}, cols {exact.rect.col_set}")
print(f"sampled lower bound {sampled.value}")
print(f"implied lower bound on two-party cost: {bhk_bound(exact.value, 0, A.colors):.3f}")

print()
print(format_trend(tmp_trend([2, 3], [1, 2], k=2, samples=2000, seed=0)))
