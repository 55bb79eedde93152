"""Build base functions and move between them and their boolean lifts."""

from nofbench.functions import LiftKind, base_of, gen_latin, gen_random, gen_trace, lift, serialize

latin = gen_latin(3)
print("Latin square of side 3:")
print(latin.table)

# Trace of a product of 1x1 matrices over GF(2) is plain multiplication.
print("\ntrace function q=2 d=1 k=2 (the AND table):")
print(gen_trace(2, 1, 2).table)

A = gen_random(2, 3, 4, seed=1)
print("\nrandom base function, 4 values:")
print(A.table)
for kind in LiftKind:
    f = lift(A, kind)
    print(f"{kind.value:>6} lift, fiber at (0, 0): {f.fiber((0, 0))}")
    assert base_of(f) == A

print("\non-disk form:")
print(serialize(A).decode(), end="")
