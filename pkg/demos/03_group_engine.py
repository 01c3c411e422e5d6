"""A tour of the group engine: collection, centers, closures, oracles.

Everything lives in central extensions of (Z_p)^{2n} by Z_p described by an
anti-symmetric pairing matrix A and a power vector eps.  The engine keeps
elements in collected normal form, so huge groups (order 5^9 and beyond)
cost nothing until you actually enumerate them.
"""

import random

from dkodaira import (
    FieldMatrix,
    FieldVector,
    GroupDescriptor,
    center_rank,
    classify_extra_special,
    heis_oracle_check,
    span_closure,
    subgroup_closure,
)

print("=" * 70)
print("1. Exact arithmetic mod p and the standard pairing matrix")
print("=" * 70)
d = GroupDescriptor.exponent_p(2, 3)
print("pairing matrix of the order-3^5 group:")
for row in d.matrix.entries:
    print("   ", row)
print(f"det = {d.matrix.determinant().value}, anti-symmetric: {d.matrix.is_antisymmetric()}")

print()
print("=" * 70)
print("2. Collected normal forms: multiplication deposits central exponents")
print("=" * 70)
x0, x1 = d.generator(0), d.generator(1)
g = x1 * x0
print(f"x1 * x0 = (t = {g.t}, s = {g.s})   [swapping past a pair costs one z]")
c = x0.commutator(x1)
print(f"[x0, x1] = (t = {c.t}, s = {c.s})   [s = -1 mod 3]")
print(f"x0^3 = identity: {(x0 ** 3).is_identity}")

g55 = GroupDescriptor.exponent_p_squared(2, 5)
x3 = g55.generator(3)
print(f"in the exponent-25 group, x3^5 = z: {(x3 ** 5) == g55.central(1)}")
print(f"and the order of x3 is {x3.order()}")

print()
print("=" * 70)
print("3. Centers and the extra-special criterion")
print("=" * 70)
print(f"center of the 3^5 group: order {center_rank(d)[0]}, cyclic: {center_rank(d)[1]}")
print(f"classification: {classify_extra_special(d).value}")
print(f"classification of the twin: {classify_extra_special(g55).value}")
abelian = GroupDescriptor(FieldMatrix.zeros(4, 4, 3), FieldVector.zeros(4, 3))
print(f"zero pairing matrix: {classify_extra_special(abelian).value}")
print(f"  (its center has order {center_rank(abelian)[0]} = the whole group)")

print()
print("=" * 70)
print("4. Subgroup closures: breadth-first search vs the span shortcut")
print("=" * 70)
rng = random.Random(0)
gens = [d.element([rng.randrange(3) for _ in range(4)], rng.randrange(3)) for _ in range(2)]
bfs = subgroup_closure(gens)
print(f"random 2-generator subgroup: BFS found {bfs.order} elements,")
print(f"the span shortcut predicted {bfs.span_order} (dim {bfs.span_dim}, z inside: {bfs.contains_z})")
big = span_closure([g55.generator(j) for j in range(4)])
print(f"full group of order 5^5 via the shortcut alone: {big.order}")

print()
print("=" * 70)
print("5. The matrix model as an independent oracle")
print("=" * 70)
print(f"exhaustive agreement over all 243^2 pairs (b=2, p=3): {heis_oracle_check(2, 3)}")
print(f"sampled agreement (b=3, p=3): {heis_oracle_check(3, 3, samples=2000, seed=1)}")

rows = [list(r) for r in d.matrix.entries]
rows[0][1], rows[1][0] = rows[1][0], rows[0][1]  # flip one sign pair
bad = GroupDescriptor(FieldMatrix.from_rows(rows, 3), d.epsilon)
print(f"after corrupting one sign in the pairing matrix: {heis_oracle_check(2, 3, descriptor=bad)}")
