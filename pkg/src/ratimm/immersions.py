"""Betti data and growth classification for components of immersion spaces.

An immersion space of a simply-connected m-manifold into R^{m+k} is,
component by component and under the Pontryagin-vanishing hypothesis, a
product of Eilenberg-MacLane spaces (odd fiber generators, via the
Betti numbers of the source) and, for k even, a mapping-space factor
into S^k.  This module checks the hypotheses, assembles the factor
list, multiplies the Poincaré series, and classifies coefficient growth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .bundles import (ManifoldModel, check_pontryagin_hypothesis, stiefel_model)
from .cdga import FiniteCdga, FreeCdga, cohomology
from .mapping import (EMFactor, SphereFactor, em_mapping_space,
                      sphere_map_null_model)
from .series import (PoincareSeries, RationalForm, em_series,
                     reconstruct_rational_series, series_product)

__all__ = [
    "HypothesisCheck", "ImmersionDescription", "Growth",
    "connectivity_verdict", "immersion_components", "growth_degree",
    "verify_growth_bounds", "description_to_dict", "description_to_json",
    "report_from_json",
]


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    status: str  # "passed" | "failed"
    detail: str = ""


@dataclass(frozen=True)
class Growth:
    kind: str  # "finite" | "polynomial"
    degree: int | None = None

    def __str__(self):
        return self.kind if self.kind == "finite" else f"polynomial({self.degree})"


@dataclass
class ImmersionDescription:
    manifold: str
    m: int
    k: int
    cutoff: int
    status: str  # "resolved" | "symbolic-sphere" | "hypothesis-failed"
    hypotheses: list[HypothesisCheck]
    connectivity: str
    em_factors: list[EMFactor] = field(default_factory=list)
    sphere_factor: SphereFactor | None = None
    sphere_model: FreeCdga | None = field(default=None, compare=False)
    sphere_series: PoincareSeries | None = None
    em_part_series: PoincareSeries | None = None
    series: PoincareSeries | None = None
    growth: str = "none"

    @property
    def hypotheses_ok(self) -> bool:
        return all(h.status == "passed" for h in self.hypotheses)


def connectivity_verdict(m: int, k: int) -> str:
    """"connected" when the fiber connectivity exceeds dim M (k >= m+1)."""
    if k < 2:
        raise ValueError(f"codimension must be >= 2, got {k}")
    return "connected" if k >= m + 1 else "components-indexed"


def _sphere_series(model: FreeCdga, cutoff: int) -> PoincareSeries:
    """Betti series of a mapping-space model, with a verified closed form.

    The cohomology is computed past the requested cutoff and fitted to
    P(t)/prod(1-t^d) over the even generator degrees of the model; the
    extra computed coefficients validate the fit.  Without a verified
    fit the series is returned cutoff-only (no growth classification).
    """
    even_degrees = [g.degree for g in model.algebra.generators
                    if g.degree % 2 == 0]
    span = sum(even_degrees)
    if even_degrees:
        recon_cutoff = max(cutoff, 3 * span + 16)
    else:
        # all generators odd: the model is finite-dimensional, so computing
        # past its top degree makes the polynomial form exact
        recon_cutoff = max(cutoff, sum(g.degree for g in model.algebra.generators))
    table = cohomology(model, recon_cutoff, representatives=False)
    coeffs = table.dims
    if not even_degrees:
        form = RationalForm.polynomial(coeffs)
        return PoincareSeries(coeffs[:cutoff + 1], cutoff, form)
    form = reconstruct_rational_series(coeffs, even_degrees,
                                       verify_from=recon_cutoff - 8)
    return PoincareSeries(coeffs[:cutoff + 1], cutoff, form)


def immersion_components(M: ManifoldModel, k: int, cutoff: int = 20) -> ImmersionDescription:
    """Description of a component of Imm(M, R^{m+k}) up to the cutoff.

    Checks the Pontryagin-vanishing hypothesis first (failure is reported
    in the returned record, not raised).  Odd fiber generators of the
    Stiefel model contribute Eilenberg-MacLane factors computed from the
    Betti numbers of M; for k even the (e_k, x_s) pair contributes the
    mapping-space factor into S^k, resolved at the constant-map component
    when H^k(M;Q) = 0 (in particular whenever k >= m+1) and reported
    symbolically otherwise.
    """
    if k < 2:
        raise ValueError(f"codimension must be >= 2, got {k}")
    m = M.dimension
    connectivity = connectivity_verdict(m, k)
    threshold, failures = check_pontryagin_hypothesis(M, k)
    checks = [HypothesisCheck(
        "simply-connected", "passed", "H^0 = Q and H^1 = 0 verified")]
    if failures:
        checks.append(HypothesisCheck(
            "pontryagin-vanishing", "failed",
            f"p_i must vanish for all i >= {threshold}; "
            f"nonzero at {', '.join('p_' + str(i) for i in failures)}"))
        return ImmersionDescription(
            manifold=M.name, m=m, k=k, cutoff=cutoff,
            status="hypothesis-failed", hypotheses=checks,
            connectivity=connectivity)
    checks.append(HypothesisCheck(
        "pontryagin-vanishing", "passed",
        f"p_i = 0 for all i >= {threshold}"))

    fiber = stiefel_model(m, k)
    gens = list(fiber.algebra.generators)
    s = k // 2
    sphere_gen_names = {f"x{s}", f"e{k}"} if k % 2 == 0 else set()
    em_degrees = [g.degree for g in gens if g.name not in sphere_gen_names]
    betti_need = max(em_degrees + [k])
    bettiM = M.betti(betti_need)

    em_factors: list[EMFactor] = []
    for n in sorted(em_degrees):
        em_factors.extend(em_mapping_space(bettiM, n))
    em_factors.sort(key=lambda f: (f.degree, -f.coefficient_dim))

    em_part = PoincareSeries.one(cutoff)
    for f in em_factors:
        em_part = series_product(em_part, em_series(f.degree, f.coefficient_dim, cutoff))

    sphere_factor = None
    sphere_model_ = None
    sphere_series = None
    status = "resolved"
    if k % 2 == 0:
        hk = bettiM.dims[k] if k <= bettiM.cutoff else 0
        if hk == 0:
            if not isinstance(M.model, FiniteCdga):
                raise TypeError(
                    "resolving the even-sphere mapping factor needs a "
                    "finite-dimensional model of the manifold")
            sphere_factor = SphereFactor(k, "resolved-null")
            sphere_model_ = sphere_map_null_model(M.model, k)
            sphere_series = _sphere_series(sphere_model_, cutoff)
        else:
            sphere_factor = SphereFactor(k, "symbolic")
            status = "symbolic-sphere"

    if status == "resolved" and (sphere_factor is None or sphere_series is not None):
        total = em_part if sphere_series is None else series_product(em_part, sphere_series)
    else:
        total = None

    desc = ImmersionDescription(
        manifold=M.name, m=m, k=k, cutoff=cutoff, status=status,
        hypotheses=checks, connectivity=connectivity,
        em_factors=em_factors, sphere_factor=sphere_factor,
        sphere_model=sphere_model_, sphere_series=sphere_series,
        em_part_series=em_part, series=total)
    if status == "symbolic-sphere":
        desc.growth = "symbolic"
    else:
        try:
            desc.growth = str(growth_degree(desc))
        except ValueError:
            desc.growth = "undetermined"
    return desc


def growth_degree(description: ImmersionDescription) -> Growth:
    """Coefficient growth of the component's Betti numbers.

    The total series is a product of (1 +- t^n)^{+-1} factors, so its
    coefficients grow like j^(E-1) with E the pole order at t = 1;
    E = 0 means a finite-dimensional answer.  Exponential growth cannot
    occur for these descriptions.
    """
    if description.status == "symbolic-sphere":
        raise ValueError("growth is undefined while the sphere factor is symbolic")
    if description.status == "hypothesis-failed":
        raise ValueError("no description: hypotheses failed")
    series = description.series
    if series is None or series.form is None:
        raise ValueError("series has no verified closed form; growth undetermined")
    pole = series.form.pole_order_at_one()
    if pole == 0:
        return Growth("finite")
    return Growth("polynomial", pole - 1)


def verify_growth_bounds(series: PoincareSeries, growth: Growth,
                         upto: int = 200) -> bool:
    """Numeric check of the growth classification on degrees <= upto.

    finite: coefficients vanish from some point on.  polynomial(d):
    b_j / j^d stays bounded (windowed sup comparison) and, for d >= 1,
    b_j / j^{d-1} keeps growing.  Series arithmetic only.
    """
    coeffs = series.extend(upto)
    if growth.kind == "finite":
        support = [j for j, c in enumerate(coeffs) if c]
        return not support or max(support) <= len(series.form.numerator)

    d = growth.degree

    def windowed_sup(power: int, lo: int, hi: int) -> Fraction:
        best = Fraction(0)
        for j in range(max(lo, 1), hi + 1):
            val = Fraction(coeffs[j], j ** power) if power else Fraction(coeffs[j])
            if val > best:
                best = val
        return best

    head = windowed_sup(d, upto // 4, upto // 2)
    tail = windowed_sup(d, upto // 2 + 1, upto)
    if tail > head * Fraction(27, 20):
        return False  # still growing relative to j^d: d underestimates
    if d >= 1:
        head1 = windowed_sup(d - 1, upto // 4, upto // 2)
        tail1 = windowed_sup(d - 1, upto // 2 + 1, upto)
        if tail1 == 0 or tail1 < head1 * Fraction(7, 5):
            return False  # not actually unbounded at exponent d-1
    return True


# ---------------------------------------------------------------------------
# Report serialization (stable field order for diffing)
# ---------------------------------------------------------------------------

def description_to_dict(description: ImmersionDescription) -> dict:
    factors = [{"kind": "em", "degree": f.degree,
                "multiplicity": f.coefficient_dim, "status": "resolved"}
               for f in description.em_factors]
    if description.sphere_factor is not None:
        factors.append({"kind": "sphere", "degree": description.sphere_factor.k,
                        "multiplicity": 1,
                        "status": description.sphere_factor.status})
    return {
        "manifold": description.manifold,
        "m": description.m,
        "k": description.k,
        "max_degree": description.cutoff,
        "status": description.status,
        "hypotheses": [{"name": h.name, "status": h.status, "detail": h.detail}
                       for h in description.hypotheses],
        "connectivity": description.connectivity,
        "factors": factors,
        "series": list(description.series.coeffs) if description.series else None,
        "em_series": (list(description.em_part_series.coeffs)
                      if description.em_part_series else None),
        "growth": description.growth,
    }


def description_to_json(description: ImmersionDescription) -> str:
    return json.dumps(description_to_dict(description), indent=2) + "\n"


def report_from_json(text: str) -> dict:
    """Inverse of description_to_json at the dict level (round-trip check)."""
    return json.loads(text)
