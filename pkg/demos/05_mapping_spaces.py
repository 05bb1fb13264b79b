"""Mapping spaces out of a manifold: EM products and even-sphere models.

Maps into odd spheres (rationally Eilenberg-MacLane) reduce to factor
lists read off the Betti numbers of the source.  Maps into even spheres
get a genuine model for the constant-map component, built on one
generator per (sphere generator, dual basis class) pair in positive
degree.
"""

from ratimm import (CdgaMorphism, cohomology, em_mapping_space,
                    odd_sphere_mapping, sigma_normalize, sphere_manifold,
                    sphere_map_null_model, sphere_model)
from ratimm.errors import ComponentObstruction

s2 = sphere_manifold(2)

# Maps into Eilenberg-MacLane spaces / odd spheres: pure bookkeeping.
print("Map(S2, K(Q,3)):", [str(f) for f in em_mapping_space(s2.betti(3), 3)])
print("Map(S2, S7):    ", [str(f) for f in odd_sphere_mapping(s2.betti(7), 7)])
print()

# The even-sphere null component needs a model.  Map(S2, S2, 0):
model = sphere_map_null_model(s2.model, 2)
print("Map(S2,S2,0) generators:",
      ", ".join(f"{g.name}({g.degree})" for g in model.algebra.generators))
for g in model.algebra.generators:
    d = model.differential_of_generator(g.name)
    if not d.is_zero():
        print(f"  D({g.name}) = {d}")
print("Betti:", cohomology(model, 10, representatives=False).dims)
print()

# Map(S3, S2, 0) is a rational 2-sphere:
model3 = sphere_map_null_model(sphere_manifold(3).model, 2)
print("Map(S3,S2,0) Betti:", cohomology(model3, 8, representatives=False).dims)
print()

# Components: a map into an even sphere normalizes onto the constant
# component exactly when its degree-k image is exact.  On S^3 every
# degree-2 class vanishes, so every map normalizes:
s3 = sphere_manifold(3)
sigma = CdgaMorphism(sphere_model(2), s3.model, {"x": "0", "y": "a3"})
result = sigma_normalize(sigma)
print("normalized with absorbed cocycle:", result.absorbed)

# On S^2 the identity-like map hits the fundamental class: obstruction.
try:
    sigma_normalize(CdgaMorphism(sphere_model(2), s2.model,
                                 {"x": "a2", "y": "0"}))
except ComponentObstruction as exc:
    print("component obstruction:", exc)
