"""Help bits as domain partitions, and the full inequality harness."""

from nofbench.bounds import bound_evaluators
from nofbench.functions import gen_random
from nofbench.harness import harness_verify
from nofbench.help import best_partition_micro, pad_help_bits, value_bucket_partition, partition_cost

A = gen_random(2, 3, 4, seed=11)
print(A.table)
for b in (0, 1, 2):
    p = value_bucket_partition(A, b)
    print(f"b={b}: value buckets cost det={partition_cost(A, p, 'det')} "
          f"nondet={partition_cost(A, p, 'nondet')}")
best = best_partition_micro(A, 1, "det")
print(f"best one-bit partition: cost {best.cost}, exhaustive={best.exhaustive}")
print(f"padding 1 help bit + 3 protocol bits to b=2: {pad_help_bits(1, 3, 2)}")

rep = harness_verify(A)
for c in rep.summary():
    print(f"[{c.verdict}] relation {c.relation}: lhs={c.lhs} rhs={c.rhs}")
print(bound_evaluators(dh=rep.partition_values["det_b1"], k=3, N=A.colors, b=1))
