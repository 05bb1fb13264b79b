"""Minimal models of Stiefel manifolds V_m(R^{m+k}).

The model depends on the parities of m and k: generators x_i of degree
4i-1 over a parity-dependent index range, an Euler-class generator e_k
with d(x_s) = e_k^2 when k = 2s is even, and a top generator of degree
m+k-1 when m+k is even.
"""

from ratimm import cohomology, stiefel_model

# The four parity cases at a glance:
for m, k in [(3, 3), (2, 3), (3, 2), (2, 2)]:
    v = stiefel_model(m, k)
    gens = ", ".join(f"{g.name}({g.degree})" for g in v.algebra.generators)
    diffs = {g.name: str(v.differential_of_generator(g.name))
             for g in v.algebra.generators
             if not v.differential_of_generator(g.name).is_zero()}
    print(f"V_{m}(R^{m + k}): generators {gens}; differentials {diffs or 'zero'}")

print()
print("Betti supports on a small grid (cutoff 20):")
for m in range(1, 6):
    row = []
    for k in range(2, 6):
        table = cohomology(stiefel_model(m, k), 20, representatives=False)
        row.append(f"V_{m}(R^{m + k}): {table.support()}")
    print("   ".join(row))

# Familiar low-dimensional cases: V_1(R^{k+1}) is the k-sphere, and
# V_2(R^4) has the rational cohomology of S^2 x S^3.
print()
print("V_2(R^4) table:", cohomology(stiefel_model(2, 2), 6,
                                    representatives=False).dims)
