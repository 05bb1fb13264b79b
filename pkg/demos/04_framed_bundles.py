"""Framed-bundle models, the reduction quasi-isomorphism, triviality.

The framed frame bundle of a rank-m bundle has Stiefel fiber; its
relative model twists the fiber differential by the Pontryagin cocycles
of the bundle.  The unreduced (Borel-style) model carries auxiliary
generators b_i that cancel against the low x_i, and the cancellation map
is checked to be a quasi-isomorphism degree by degree.
"""

from ratimm import (bso_model, cohomology, complex_projective_plane,
                    framed_bundle_model, is_quasi_iso, is_rationally_trivial,
                    sphere_manifold, unreduced_framed_model)

# Classifying-space input: H*(BSO(n)) as a polynomial algebra.
for n in (2, 3, 4, 5):
    b = bso_model(n)
    print(f"BSO({n}):", ", ".join(f"{g.name}({g.degree})"
                                  for g in b.algebra.generators))
print()

# CP^2 with its tangent Pontryagin class p1 = 3a^2, codimension 2.
cp2 = complex_projective_plane()
model = framed_bundle_model(cp2, 2)
print("framed model of CP^2 at k=2; fiber differentials:")
for g in model.fiber.generators:
    print(f"  D({g.name}) = {model.twist_of(g.name)}")
print("Betti to 12:", cohomology(model, 12, representatives=False).dims)
print()

# The unreduced model and its reduction morphism.
big, phi = unreduced_framed_model(cp2, 2)
print("unreduced fiber:", ", ".join(f"{g.name}({g.degree})"
                                    for g in big.fiber.generators))
report = is_quasi_iso(phi, 14)
print("reduction is a quasi-isomorphism up to degree 14:", report.ok)
print()

# Rational triviality is a one-sided verdict: a sufficient vanishing
# condition plus a Kunneth certificate, or "not-established".
cases = [("S^2", sphere_manifold(2), 3), ("CP^2 (p1 = 3a^2)", cp2, 2),
         ("CP^2 with p1 zeroed", complex_projective_plane(p1=0), 2)]
for label, M, k in cases:
    verdict = is_rationally_trivial(M, k, cutoff=14)
    extra = f" ({verdict.failures[0]})" if verdict.failures else ""
    print(f"{label} at k={k}: {verdict.status}{extra}")
