"""Non-strong structures and the slope record 2 + 12/35.

For every prime p >= 5 there is a structure of type (2, p) on the
extra-special group of order p^9 whose halves generate proper subgroups of
index p^4.  The resulting surfaces have slope above 2 + 1/3, with the
maximum 2 + 12/35 attained exactly twice, at p = 5 and p = 7.
"""

from fractions import Fraction

from dkodaira import (
    build_omega,
    construct_nonstrong,
    enumerate_lambda_mu,
    select_lambda_mu,
    slope_table,
    verify_full,
)
from dkodaira.zpfield import is_prime

print("=" * 70)
print("1. Weight vectors: non-zero entries, unit sums, products avoiding 1")
print("=" * 70)
choice = select_lambda_mu(2, 5)
print(f"first valid choice mod 5: lambda = {choice.lam.entries}, mu = {choice.mu.entries}")
print(f"number of valid choices mod 5: {len(enumerate_lambda_mu(2, 5))}")
print(f"number of valid choices mod 3: {len(enumerate_lambda_mu(2, 3))} (none exist below 5)")

omega = build_omega(choice.lam, choice.mu)
det = omega.determinant().value
prod = 1
for a, m in zip(choice.lam.entries, choice.mu.entries):
    prod = prod * (1 - a * m) ** 2 % 5
print(f"det of the 8x8 pairing block matrix: {det}, product formula gives {prod}")

print()
print("=" * 70)
print("2. The structure on the group of order 5^9")
print("=" * 70)
s = construct_nonstrong(2, 5, "H")
report = verify_full(s)
print(f"passed: {report.passed}, strength: {report.strength.value}")
print(f"half-subgroup orders: {report.k1_order} = {report.k2_order} = 5^5")
print(f"index of each half: {s.descriptor.order // report.k1_order} = 5^4")

print()
print("=" * 70)
print("3. Slope and signature along the prime family (b = 2)")
print("=" * 70)
table = slope_table(2, [p for p in range(5, 60) if is_prime(p)])
print(f"{'p':>4}  {'slope':>10}  {'slope - 7/3':>12}  sigma")
for row in table.rows:
    gap = row.slope - Fraction(7, 3)
    print(f"{row.p:>4}  {str(row.slope):>10}  {str(gap):>12}  {row.sigma}")
print(f"strictly decreasing from p = 7 on: {table.strictly_decreasing_from_7}")
print("the two equal maxima at p = 5, 7 are 2 + 12/35 = 0.342857...,")
print("and every row stays above the limit 2 + 1/3.")
