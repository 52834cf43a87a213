"""Hilbert functions and postulational invariants of fat flat ideals.

alpha (initial degree), tau/sigma (where the Hilbert function meets the
Hilbert polynomial), satdeg, reg, omega (top generator degree), and
two-sided brackets for the Waldschmidt-type constant

    gamma(I) = lim_m alpha(I^(m)) / m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .ideal import (
    DEFAULT_BUDGET,
    Budget,
    Ideal,
    ResourceError,
    hilbert_function_gb,
    hilbert_function_linear,
    krull_dimension,
    minimal_generator_degrees,
    saturate,
)
from .ring import count_monomials
from .schemes import (
    ConsistencyError,
    FatFlatScheme,
    SchemeError,
    SchemeSource,
    alpha_scan,
    consensus,
    derive_seeds,
    interpolated_generators,
    piece_dimension,
    scheme_degree,
    symbolic_power,
    tau_scan,
)

# n * eps(2, n) for n generic points of P^2, n <= 9; 1, 2 and 4 points are
# complete intersections, where the constant equals alpha.
PLANE_SESHADRI_TABLE = {
    1: Fraction(1),
    2: Fraction(1),
    3: Fraction(3, 2),
    4: Fraction(2),
    5: Fraction(2),
    6: Fraction(12, 5),
    7: Fraction(21, 8),
    8: Fraction(48, 17),
    9: Fraction(3),
}

# Sharper lower bounds for eps(2, n) quoted for three small nonsquare counts.
QUOTED_EPSILON_BOUNDS = {17: Fraction(4, 17), 22: Fraction(7, 33), 37: Fraction(6, 37)}


class UnsupportedError(ValueError):
    """The invariant is not computed for this kind of input."""


# ---------------------------------------------------------------------------
# Hilbert functions


@dataclass
class HilbertTable:
    """Values of h_I(t) on a range of degrees, plus the Hilbert polynomial for fat points."""

    values: dict
    N: int
    degree: int | None = None

    def polynomial(self, t: int) -> int | None:
        if self.degree is None:
            return None
        return math.comb(t + self.N, self.N) - self.degree


def hilbert_function(obj, t: int, m: int = 1, strategy: str = "auto",
                     budget: Budget = DEFAULT_BUDGET) -> int:
    """dim of the degree-t piece of an ideal, or of I(Z)^(m) for a scheme Z.

    ``eval_matrix`` counts forms through the rank of the vanishing conditions
    (Hasse derivatives at points, a linear coordinate change for other flats);
    ``groebner`` counts monomials in the initial ideal of a basis.
    """
    if t < 0:
        return 0
    if isinstance(obj, FatFlatScheme):
        if strategy in ("auto", "eval_matrix"):
            return piece_dimension(obj.scaled(m), t)
        if strategy == "groebner":
            return hilbert_function_gb(symbolic_power(obj, m, "intersection", budget), t, budget)
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(obj, Ideal):
        if strategy in ("auto", "groebner"):
            return hilbert_function_gb(obj, t, budget)
        if strategy == "linear":
            return hilbert_function_linear(obj, t)
        raise UnsupportedError("eval_matrix needs scheme data, not bare generators")
    raise TypeError(f"cannot take a Hilbert function of {type(obj).__name__}")


def hilbert_table(Z: FatFlatScheme, degrees: Sequence[int], m: int = 1) -> HilbertTable:
    mZ = Z.scaled(m)
    deg = scheme_degree(mZ) if Z.is_fat_points() else None
    return HilbertTable({t: piece_dimension(mZ, t) for t in degrees}, Z.N, deg)


# ---------------------------------------------------------------------------
# single invariants


def alpha(obj, m: int = 1, budget: Budget = DEFAULT_BUDGET) -> int:
    """Least degree of a nonzero form in the ideal (of I(Z)^(m) for a scheme)."""
    if isinstance(obj, Ideal):
        if obj.is_zero():
            raise ValueError("alpha of the zero ideal is undefined")
        if not obj.is_homogeneous():
            raise UnsupportedError("alpha needs a homogeneous ideal")
        return min(obj.generator_degrees())
    a = alpha_scan(obj.scaled(m))
    if a > budget.max_degree:
        raise ResourceError(f"alpha = {a} exceeds max_degree={budget.max_degree}")
    return a


def tau_sigma(obj, m: int = 1, budget: Budget = DEFAULT_BUDGET) -> tuple:
    """(tau, sigma) with sigma = tau + 1, for fat points or a saturated 0-dimensional ideal."""
    if isinstance(obj, FatFlatScheme):
        if not obj.is_fat_points():
            raise UnsupportedError("tau is computed for fat points only")
        tau = tau_scan(obj.scaled(m))
        if tau > budget.max_degree:
            raise ResourceError(f"tau = {tau} exceeds max_degree={budget.max_degree}")
        return tau, tau + 1
    return _tau_sigma_saturated(obj, budget)


def _quotient_hf(I: Ideal, t: int, budget: Budget) -> int:
    return count_monomials(I.ring.nvars, t) - hilbert_function_gb(I, t, budget)


def _tau_sigma_saturated(I: Ideal, budget: Budget) -> tuple:
    # For a saturated 0-dimensional ideal h_{R/I} increases to deg and then stays flat.
    _require_zero_dimensional(I, budget)
    t = 0
    while _quotient_hf(I, t, budget) != _quotient_hf(I, t + 1, budget):
        t += 1
        if t > budget.max_degree:
            raise ResourceError("Hilbert function did not stabilize below max_degree")
    return t, t + 1


def _require_zero_dimensional(I: Ideal, budget: Budget):
    if not I.is_homogeneous():
        raise UnsupportedError("need a homogeneous ideal")
    if krull_dimension(I, budget) > 1:
        raise UnsupportedError("ideal does not define a 0-dimensional subscheme")


def satdeg(I: Ideal, sat: Ideal | None = None, budget: Budget = DEFAULT_BUDGET) -> int:
    """Least t with I_j = sat(I)_j for every j >= t."""
    sat = saturate(I, budget=budget) if sat is None else sat
    if sat.is_zero():
        return 0
    top = max(sat.generator_degrees())
    # once the pieces agree at some j >= top they agree from then on
    j = top
    while hilbert_function_gb(I, j, budget) != hilbert_function_gb(sat, j, budget):
        j += 1
        if j > budget.max_degree:
            raise ResourceError("saturation degree exceeds max_degree")
    last_diff = -1
    for k in range(j):
        if hilbert_function_gb(I, k, budget) != hilbert_function_gb(sat, k, budget):
            last_diff = k
    return last_diff + 1


def regularity(obj, budget: Budget = DEFAULT_BUDGET) -> int:
    """reg = max(satdeg(I), sigma(sat(I))) for an ideal of a 0-dimensional scheme."""
    if isinstance(obj, FatFlatScheme):
        if not obj.is_fat_points():
            raise UnsupportedError("regularity is computed for 0-dimensional schemes only")
        return tau_sigma(obj, budget=budget)[1]
    _require_zero_dimensional(obj, budget)
    sat = saturate(obj, budget=budget)
    return max(satdeg(obj, sat, budget), _tau_sigma_saturated(sat, budget)[1])


def omega(obj, m: int = 1, budget: Budget = DEFAULT_BUDGET) -> int:
    """Largest degree of a minimal homogeneous generator."""
    if isinstance(obj, FatFlatScheme):
        if obj.is_fat_points():
            return max(d for d, _ in interpolated_generators(obj.scaled(m)))
        obj = symbolic_power(obj, m, "intersection", budget)
    if obj.is_zero():
        raise ValueError("omega of the zero ideal is undefined")
    return max(minimal_generator_degrees(obj))


# ---------------------------------------------------------------------------
# reports


@dataclass
class InvariantReport:
    alpha: int
    tau: int | None = None
    sigma: int | None = None
    satdeg: int | None = None
    reg: int | None = None
    omega: int | None = None
    degree: int | None = None
    source: SchemeSource | None = None

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in ("alpha", "tau", "sigma", "satdeg", "reg", "omega", "degree")}
        out["source"] = self.source.to_json() if self.source else None
        return out


def invariant_report(Z: FatFlatScheme, budget: Budget = DEFAULT_BUDGET) -> InvariantReport:
    a = alpha(Z, budget=budget)
    w = omega(Z, budget=budget)
    if not Z.is_fat_points():
        return InvariantReport(alpha=a, omega=w, source=Z.source)
    tau, sigma = tau_sigma(Z, budget=budget)
    # the ideal of a scheme is saturated, so satdeg is 0 and reg = sigma
    return InvariantReport(alpha=a, tau=tau, sigma=sigma, satdeg=0, reg=sigma, omega=w,
                           degree=scheme_degree(Z), source=Z.source)


def seeded_consensus(build: Callable[[int], FatFlatScheme], fn: Callable, seed: int = 0,
                     count: int = 3) -> tuple:
    """Evaluate ``fn(build(s))`` on ``count`` derived seeds; return (majority, agreed, values)."""
    values = [fn(build(s)) for s in derive_seeds(seed, count)]
    value, agreed = consensus(values)
    return value, agreed, values


# ---------------------------------------------------------------------------
# gamma brackets


@dataclass
class GammaBracket:
    lower: Fraction
    upper: Fraction
    samples: tuple = ()
    lower_provenance: str = "trivial-one"

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "lower": str(self.lower),
            "upper": str(self.upper),
            "samples": [[m, a] for m, a in self.samples],
            "lower_provenance": self.lower_provenance,
        }


def plane_seshadri_lower(n: int) -> Fraction:
    """Rational lower bound for n * eps(2, n), n >= 10 generic points.

    With s = floor(sqrt n) write n = s^2 + 2t or s^2 + 2t + 1; the curve
    classes of degree s and s^2 + t give n*s/(s^2+t) or (s^2+t)/s, both at
    least sqrt(n - 1), and equal to sqrt(n) when n is a square.
    """
    s = math.isqrt(n)
    rest = n - s * s
    t, odd = divmod(rest, 2)
    r = s * s + t
    bound = Fraction(r, s) if odd else Fraction(n * s, r)
    if n in QUOTED_EPSILON_BOUNDS:
        bound = max(bound, n * QUOTED_EPSILON_BOUNDS[n])
    return bound


def _source_gamma_lower(src: SchemeSource | None, N: int, n: int) -> tuple:
    if src is None:
        return Fraction(1), "trivial-one"
    if src.kind == "cone" and src.inner is not None:
        # the cone's symbolic powers are extended from the base, so alpha is unchanged
        return _source_gamma_lower(src.inner, N - 1, n)
    if src.kind == "skeleton":
        return Fraction(src.get("s"), src.get("e")), "skeleton-formula"
    if src.kind == "generic_points" and N == 2:
        if n in PLANE_SESHADRI_TABLE:
            return PLANE_SESHADRI_TABLE[n], "seshadri-table"
        return plane_seshadri_lower(n), "seshadri-sqrt-bound"
    return Fraction(1), "trivial-one"


def known_gamma_lower(Z: FatFlatScheme) -> tuple:
    """Best lower bound for gamma(Z) justified by the scheme's provenance."""
    mults = set(Z.multiplicities)
    if len(mults) != 1:
        return Fraction(1), "trivial-one"
    # I(kZ)^(m) = I(Z)^(km), so a uniform multiplicity scales gamma
    k = mults.pop()
    lower, prov = _source_gamma_lower(Z.source, Z.N, Z.n)
    if prov == "trivial-one":
        return Fraction(1), prov
    return k * lower, prov


def gamma_bracket(Z: FatFlatScheme, m_max: int = 8, budget: Budget = DEFAULT_BUDGET) -> GammaBracket:
    """[lower, upper] around gamma(Z); upper = min over m <= m_max of alpha(I^(m))/m."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    samples = tuple((m, alpha(Z, m, budget)) for m in range(1, m_max + 1))
    upper = min(Fraction(a, m) for m, a in samples)
    lower, prov = known_gamma_lower(Z)
    if lower < 1:
        lower, prov = Fraction(1), "trivial-one"
    if lower > upper:
        raise ConsistencyError(
            f"sampled alpha ratios ({upper}) fall below the {prov} bound {lower}: degenerate sample")
    return GammaBracket(lower, upper, samples, prov)
