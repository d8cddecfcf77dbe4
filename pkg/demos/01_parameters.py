"""Walk through the parameter algebra for SR graphs with lambda_1 = e.

Run with ``python3 demos/01_parameters.py``.
"""
from srgkit import params

print("Parameters are indexed by (a, c, e), where e is the positive eigenvalue.")
d = params.derive(0, 1, 1)
print(f"(a, c, e) = (0, 1, 1) gives SR({d.n}, {d.k}, {d.a}, {d.c}) with multiplicities {d.m1}, {d.m2}.")
print("That is the Petersen graph.\n")

print("Krein's condition bounds c once a and e are fixed:")
for e in range(1, 5):
    print(f"  a = 1, e = {e}: c <= {params.krein_c_max(1, e)}")

print("\nSurvivors of every arithmetic test for a = 1, e = 4:")
for c, d in params.feasible_c_list(1, 4):
    print(f"  c = {c:>2}: SR({d.n}, {d.k}, {d.a}, {d.c})")

verdict, d = params.feasibility(1, 11, 1)
print(f"\n(1, 11, 1) is rejected with {verdict.status} (K2 = {d.K2}).")

print("\nThe window of possible vertex counts for triangle-free graphs (a = 0):")
for e in range(1, 8):
    lo, hi = params.n_bounds(0, e)
    print(f"  e = {e}: {lo} <= n <= {hi}")

found = [d for d in params.scan(100) if d.a == 0]
print("\nTriangle-free feasible sets with n <= 100:")
for d in found:
    print(f"  SR({d.n}, {d.k}, 0, {d.c})")

fam = params.algebraic_family(1, 2)
print(f"\nThe c = e(e+1) family at a = 1, e = 2 is SR({fam.n}, {fam.k}, {fam.a}, {fam.c}), where m2 = k = {fam.m2}.")
