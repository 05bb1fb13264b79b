"""Component descriptions of immersion spaces and growth of Betti numbers.

The full pipeline: hypothesis checks, factor assembly from the Stiefel
fiber generators, Poincare-series products with exact closed forms, and
the polynomial-growth classification.
"""

from ratimm import (complex_projective_plane, description_to_json,
                    growth_degree, immersion_components, sphere_manifold,
                    verify_growth_bounds)


def show(desc):
    print(f"--- Imm({desc.manifold}, R^{desc.m + desc.k})  [k={desc.k}] ---")
    for h in desc.hypotheses:
        print(f"  {h.name}: {h.status}")
    print(f"  connectivity: {desc.connectivity}")
    if desc.status == "hypothesis-failed":
        print("  no description (hypotheses failed)")
        print()
        return
    for f in desc.em_factors:
        print(f"  factor {f}")
    if desc.sphere_factor:
        print(f"  factor Map(M, S^{desc.sphere_factor.k}) "
              f"[{desc.sphere_factor.status}]")
    if desc.series is not None:
        print(f"  series {desc.series}")
    else:
        print(f"  series (EM part only) {desc.em_part_series}")
    print(f"  growth {desc.growth}")
    print()


# k odd: a product of Eilenberg-MacLane spaces determined by the Betti
# numbers of the source; for S^2 in R^5 the series is (1+t^5)(1+t^7).
show(immersion_components(sphere_manifold(2), 3, 15))

# k even with H^k(M) = 0: the sphere factor resolves at the constant
# component and the total series gets an exact closed form.
show(immersion_components(sphere_manifold(3), 2, 12))

# k even with H^k(M) != 0: the essential components' sphere factor stays
# symbolic; the EM part is still reported.
show(immersion_components(sphere_manifold(2), 2, 10))

# Pontryagin obstruction: CP^2 has p1 = 3a^2, which violates the
# vanishing hypothesis at codimension 2 (threshold i >= 1)...
show(immersion_components(complex_projective_plane(), 2, 10))

# ...but is harmless at codimension 5, where the threshold is i >= 3.
show(immersion_components(complex_projective_plane(), 5, 12))

# Growth: the coefficient bound b_j <= C j^d is checkable out to high
# degree through the closed form, entirely in series arithmetic.
desc = immersion_components(sphere_manifold(3), 4, 12)
growth = growth_degree(desc)
print(f"Imm(S^3, R^7) grows like j^{growth.degree}:",
      verify_growth_bounds(desc.series, growth, upto=200))
print("coefficients to degree 40:", desc.series.extend(40))
print()

# Reports serialize deterministically for diffing and machine use.
print(description_to_json(immersion_components(sphere_manifold(2), 3, 10)))
