"""Fat flat schemes: generic points, linear skeleta, cones, and their ideals.

A scheme is a list of (linear flat, multiplicity) pairs in P^N. Its ideal is
the intersection of the powers of the flats' ideals, and the m-th symbolic
power is the ideal of the same flats with every multiplicity scaled by m.

Besides Gröbner-basis routes, every degree-t piece of a fat flat ideal is
computable by linear algebra: a form lies in I(L)^k iff its Taylor
coefficients of order < k along L vanish.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .ideal import (
    DEFAULT_BUDGET,
    Budget,
    Ideal,
    ideal_equal,
    ideal_power,
    intersect_all,
    multiply_by_variables,
    saturate,
)
from .linalg import (
    complete_basis,
    independent_rows,
    inverse_mod_p,
    nullspace_mod_p,
    rank_mod_p,
    row_reduce,
)
from .ring import (
    DEFAULT_PRIME,
    Polynomial,
    PolynomialRing,
    count_monomials,
    monomial_index,
    monomials_of_degree,
    parse_polynomial,
)

MAX_DRAWS = 20


class SchemeError(ValueError):
    """Invalid scheme data or an operation the scheme type does not support."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree did not."""


# ---------------------------------------------------------------------------
# linear flats


@dataclass(frozen=True)
class LinearFlat:
    """A linear subspace of P^N cut out by independent linear forms.

    ``matrix`` holds the coefficient rows of the defining forms, stored in
    reduced echelon form so equal flats compare equal.
    """

    ambient_dim: int
    matrix: tuple
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        n = self.ambient_dim + 1
        rows = [tuple(int(c) % self.p for c in r) for r in self.matrix]
        if not rows or any(len(r) != n for r in rows):
            raise SchemeError("defining forms must have N+1 coefficients each")
        R, pivots = row_reduce(np.array(rows, dtype=np.int64), self.p)
        if len(pivots) != len(rows):
            raise SchemeError("defining forms are linearly dependent")
        if len(rows) > self.ambient_dim:
            raise SchemeError("codimension exceeds N: the forms cut out the empty set")
        object.__setattr__(self, "matrix", tuple(tuple(int(c) for c in r) for r in R))

    @classmethod
    def from_point(cls, coords: Sequence[int], p: int = DEFAULT_PRIME) -> LinearFlat:
        v = np.array([[int(c) % p for c in coords]], dtype=np.int64)
        if not v.any():
            raise SchemeError("the zero vector is not a projective point")
        forms = nullspace_mod_p(v, p)
        return cls(len(coords) - 1, tuple(map(tuple, forms)), p)

    @classmethod
    def from_forms(cls, forms: Sequence[Polynomial]) -> LinearFlat:
        ring = forms[0].ring
        rows = []
        for f in forms:
            if not f.is_homogeneous() or f.degree() != 1:
                raise SchemeError(f"{f} is not a linear form")
            row = [0] * ring.nvars
            for e, c in f.terms.items():
                row[e.index(1)] = c
            rows.append(tuple(row))
        return cls(ring.nvars - 1, tuple(rows), ring.p)

    @property
    def codim(self) -> int:
        return len(self.matrix)

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim

    def is_point(self) -> bool:
        return self.codim == self.ambient_dim

    @property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.ambient_dim + 1, self.p)

    @property
    def forms(self) -> list:
        ring = self.ring
        return [ring.linear_form(r) for r in self.matrix]

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.forms)

    def point(self) -> tuple:
        """Coordinates of a point flat, scaled so the first nonzero entry is 1."""
        if not self.is_point():
            raise SchemeError("flat is not a point")
        v = nullspace_mod_p(np.array(self.matrix, dtype=np.int64), self.p)[0]
        j = int(np.flatnonzero(v)[0])
        inv = pow(int(v[j]), -1, self.p)
        return tuple(int(x) * inv % self.p for x in v)

    def contains(self, other: LinearFlat) -> bool:
        """True if ``other`` ⊆ self as subspaces."""
        stacked = np.array(self.matrix + other.matrix, dtype=np.int64)
        return rank_mod_p(stacked, self.p) == other.codim

    def cone(self) -> LinearFlat:
        return LinearFlat(self.ambient_dim + 1, tuple(r + (0,) for r in self.matrix), self.p)

    def to_json(self) -> list:
        return [str(f) for f in self.forms]


# ---------------------------------------------------------------------------
# schemes


@dataclass(frozen=True)
class SkeletonSpec:
    """The e-wise intersections of s general hypersurfaces of degrees d in P^N."""

    N: int
    e: int
    s: int
    degrees: tuple = ()
    seed: int = 0

    def __post_init__(self):
        degs = tuple(self.degrees) or (1,) * self.s
        object.__setattr__(self, "degrees", degs)
        if not 1 <= self.e <= self.N:
            raise SchemeError("need 1 <= e <= N")
        if self.s < self.e:
            raise SchemeError("need s >= e")
        if len(degs) != self.s or any(d < 1 for d in degs) or list(degs) != sorted(degs):
            raise SchemeError("degrees must be s positive nondecreasing integers")


@dataclass(frozen=True)
class SchemeSource:
    """How a scheme was built; drives which closed-form facts apply to it."""

    kind: str
    params: tuple = ()
    inner: SchemeSource | None = None

    def get(self, name, default=None):
        return dict(self.params).get(name, default)

    def to_json(self) -> dict:
        d = {"kind": self.kind, **dict(self.params)}
        if self.inner is not None:
            d["inner"] = self.inner.to_json()
        return d


@dataclass(frozen=True)
class FatFlatScheme:
    """Z = m_1 L_1 + ... + m_n L_n in P^N."""

    ambient_dim: int
    components: tuple
    p: int = DEFAULT_PRIME
    source: SchemeSource | None = field(default=None, compare=False)

    def __post_init__(self):
        comps = tuple((flat, int(m)) for flat, m in self.components)
        if not comps:
            raise SchemeError("a scheme needs at least one component")
        for flat, m in comps:
            if m < 1:
                raise SchemeError("multiplicities must be positive")
            if flat.ambient_dim != self.ambient_dim or flat.p != self.p:
                raise SchemeError("component lives in a different ambient space")
        for (a, _), (b, _) in itertools.combinations(comps, 2):
            if a.contains(b) or b.contains(a):
                raise SchemeError("one flat contains another")
        object.__setattr__(self, "components", comps)

    @property
    def N(self) -> int:
        return self.ambient_dim

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.ambient_dim + 1, self.p)

    @property
    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.components)

    def is_fat_points(self) -> bool:
        return all(flat.is_point() for flat, _ in self.components)

    def is_reduced(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    def big_height(self) -> int:
        """Largest codimension of a component."""
        return max(flat.codim for flat, _ in self.components)

    def scaled(self, m: int) -> FatFlatScheme:
        if m < 1:
            raise SchemeError("scale must be positive")
        if m == 1:
            return self
        return FatFlatScheme(self.ambient_dim, tuple((f, k * m) for f, k in self.components),
                             self.p, self.source)

    def to_json(self) -> dict:
        d = {"N": self.N}
        if self.source is not None:
            d.update(self.source.to_json())
        else:
            d["kind"] = "explicit"
        d["components"] = [{"forms": flat.to_json(), "mult": m} for flat, m in self.components]
        return d


def derive_seeds(seed: int, count: int) -> list:
    """Deterministic sub-seeds for consensus reruns."""
    ss = np.random.SeedSequence(seed)
    return [int(s.generate_state(1, dtype=np.uint64)[0]) for s in ss.spawn(count)]


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def generic_points(N: int, n: int, seed: int = 0, p: int = DEFAULT_PRIME, mult: int = 1) -> FatFlatScheme:
    """n pseudorandom points of P^N over F_p, all with multiplicity ``mult``."""
    if n < 1:
        raise SchemeError("need at least one point")
    if N < 1:
        raise SchemeError("need N >= 1")
    rng = _rng(seed)
    flats = []
    seen = set()
    draws = 0
    while len(flats) < n:
        coords = tuple(int(c) for c in rng.integers(1, p, size=N + 1))
        flat = LinearFlat.from_point(coords, p)
        if flat in seen:
            draws += 1
            if draws > MAX_DRAWS:
                raise SchemeError("too many coordinate collisions; use a larger prime")
            continue
        seen.add(flat)
        flats.append(flat)
    params = (("N", N), ("n", n), ("seed", seed)) + ((("mult", mult),) if mult != 1 else ())
    source = SchemeSource("generic_points", params)
    return FatFlatScheme(N, tuple((f, mult) for f in flats), p, source)


def _draw_hyperplanes(spec: SkeletonSpec, p: int) -> list:
    """Random hyperplanes whose e-subsets are all independent and pairwise distinct flats."""
    seed = spec.seed
    for attempt in range(MAX_DRAWS):
        rng = _rng(seed)
        hyper = [tuple(int(c) for c in rng.integers(0, p, size=spec.N + 1)) for _ in range(spec.s)]
        try:
            flats = [LinearFlat(spec.N, tuple(hyper[i] for i in sub), p)
                     for sub in itertools.combinations(range(spec.s), spec.e)]
            FatFlatScheme(spec.N, tuple((f, 1) for f in flats), p)
        except SchemeError:
            seed = derive_seeds(seed, 1)[0]
            warnings.warn(f"degenerate hyperplane sample, re-seeding (attempt {attempt + 1})")
            continue
        return hyper
    raise SchemeError("could not draw general hyperplanes")


def skeleton_scheme(spec: SkeletonSpec, p: int = DEFAULT_PRIME) -> FatFlatScheme:
    """S_N(e, s): the e-wise intersections of s random hyperplanes, reduced."""
    if any(d != 1 for d in spec.degrees):
        raise SchemeError("only linear skeleta (all degrees 1) can be built as fat flats")
    hyper = _draw_hyperplanes(spec, p)
    flats = [LinearFlat(spec.N, tuple(hyper[i] for i in sub), p)
             for sub in itertools.combinations(range(spec.s), spec.e)]
    source = SchemeSource("skeleton", (("N", spec.N), ("e", spec.e), ("s", spec.s),
                                       ("seed", spec.seed)))
    return FatFlatScheme(spec.N, tuple((f, 1) for f in flats), p, source)


def skeleton_hyperplanes(spec: SkeletonSpec, p: int = DEFAULT_PRIME) -> list:
    """The hyperplanes behind ``skeleton_scheme(spec)``, as linear forms."""
    ring = PolynomialRing(spec.N + 1, p)
    return [ring.linear_form(r) for r in _draw_hyperplanes(spec, p)]


def cone_scheme(Z: FatFlatScheme) -> FatFlatScheme:
    """The projective cone over Z in P^(N+1); the new variable is x_{N+1}."""
    comps = tuple((flat.cone(), m) for flat, m in Z.components)
    return FatFlatScheme(Z.N + 1, comps, Z.p, SchemeSource("cone", inner=Z.source))


def explicit_points(coords: Sequence[Sequence[int]], mults: Sequence[int] | None = None,
                    p: int = DEFAULT_PRIME, name: str | None = None) -> FatFlatScheme:
    mults = mults or [1] * len(coords)
    N = len(coords[0]) - 1
    comps = tuple((LinearFlat.from_point(c, p), m) for c, m in zip(coords, mults))
    params = (("fixture", name),) if name else ()
    return FatFlatScheme(N, comps, p, SchemeSource("explicit", params))


def collinear_fixture(p: int = DEFAULT_PRIME) -> FatFlatScheme:
    """Three points on a line plus one point off it, in P^2."""
    return explicit_points([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)], p=p,
                           name="collinear_3_plus_1")


def scheme_degree(Z: FatFlatScheme) -> int:
    """sum_i C(m_i + N - 1, N) for a fat point scheme."""
    if not Z.is_fat_points():
        raise SchemeError("degree is only defined here for fat points")
    N = Z.N
    return sum(math.comb(m + N - 1, N) for m in Z.multiplicities)


# ---------------------------------------------------------------------------
# vanishing conditions in a fixed degree


@lru_cache(maxsize=None)
def _pascal(top: int, p: int) -> np.ndarray:
    B = np.zeros((top + 1, top + 1), dtype=np.int64)
    for a in range(top + 1):
        B[a, 0] = 1
        for b in range(1, a + 1):
            B[a, b] = (B[a - 1, b - 1] + B[a - 1, b]) % p
    return B


@lru_cache(maxsize=4096)
def point_conditions(flat: LinearFlat, k: int, t: int) -> np.ndarray:
    """Rows: Hasse derivatives of order < k at the point, as functionals on degree-t forms.

    The point is scaled so one coordinate x_j equals 1, and derivatives are
    taken in the other N variables (the Taylor coefficients in that chart).
    """
    p = flat.p
    n = flat.ambient_dim + 1
    pt = flat.point()
    j = next(i for i, c in enumerate(pt) if c)
    others = [i for i in range(n) if i != j]
    mons = np.array(monomials_of_degree(n, t), dtype=np.int64).reshape(-1, n)
    B = _pascal(max(t, k), p)
    pw = np.ones((n, t + 1), dtype=np.int64)
    for i in range(n):
        for e in range(1, t + 1):
            pw[i, e] = pw[i, e - 1] * pt[i] % p
    rows = []
    for d in range(k):
        for b in monomials_of_degree(n - 1, d):
            val = np.ones(mons.shape[0], dtype=np.int64)
            for bi, i in zip(b, others):
                a = mons[:, i]
                ok = a >= bi
                shifted = np.where(ok, a - bi, 0)
                term = np.where(ok, B[a, bi] * pw[i, shifted] % p, 0)
                val = val * term % p
            rows.append(val)
    return np.array(rows, dtype=np.int64).reshape(len(rows), mons.shape[0])


@lru_cache(maxsize=512)
def substitution_matrix(B: tuple, t: int, p: int) -> np.ndarray:
    """Row a: coefficients, over degree-t y-monomials, of x^a after x = B y."""
    n = len(B)
    if t == 0:
        return np.ones((1, 1), dtype=np.int64)
    prev = substitution_matrix(B, t - 1, p)
    Bm = np.array(B, dtype=np.int64)
    src = monomials_of_degree(n, t - 1)
    src_idx = monomial_index(n, t - 1)
    dst_idx = monomial_index(n, t)
    mons = monomials_of_degree(n, t)
    ivar = np.array([next(i for i, a in enumerate(m) if a) for m in mons], dtype=np.int64)
    parent = np.array([src_idx[m[:i] + (m[i] - 1,) + m[i + 1:]] for m, i in zip(mons, ivar)],
                      dtype=np.int64)
    V = np.zeros((len(mons), len(mons)), dtype=np.int64)
    base = prev[parent]
    for j in range(n):
        shift = np.array([dst_idx[u[:j] + (u[j] + 1,) + u[j + 1:]] for u in src], dtype=np.int64)
        coef = Bm[ivar, j][:, None]
        V[:, shift] = (V[:, shift] + coef * base % p) % p
    return V


@lru_cache(maxsize=4096)
def flat_conditions(flat: LinearFlat, k: int, t: int) -> np.ndarray:
    """Rows: coefficients that must vanish for a degree-t form to lie in I(L)^k.

    Coordinates y = A x with the first c rows of A the defining forms; a form
    lies in (y_0..y_{c-1})^k iff its y-monomials of low normal degree vanish.
    """
    p = flat.p
    n = flat.ambient_dim + 1
    c = flat.codim
    A = complete_basis(np.array(flat.matrix, dtype=np.int64), p)
    Binv = inverse_mod_p(A, p)
    V = substitution_matrix(tuple(map(tuple, Binv.tolist())), t, p)
    ymons = monomials_of_degree(n, t)
    sel = [i for i, u in enumerate(ymons) if sum(u[:c]) < k]
    return np.ascontiguousarray(V[:, sel].T)


def component_conditions(flat: LinearFlat, k: int, t: int, method: str = "auto") -> np.ndarray:
    if method == "hasse" or (method == "auto" and flat.is_point()):
        return point_conditions(flat, k, t)
    return flat_conditions(flat, k, t)


def conditions(Z: FatFlatScheme, t: int, method: str = "auto") -> np.ndarray:
    cols = count_monomials(Z.N + 1, t)
    blocks = [component_conditions(flat, m, t, method) for flat, m in Z.components]
    blocks = [b for b in blocks if b.size]
    if not blocks:
        return np.zeros((0, cols), dtype=np.int64)
    return np.vstack(blocks)


@lru_cache(maxsize=None)
def conditions_rank(Z: FatFlatScheme, t: int, method: str = "auto") -> int:
    if t < 0:
        return 0
    return rank_mod_p(conditions(Z, t, method), Z.p)


def piece_dimension(Z: FatFlatScheme, t: int, method: str = "auto") -> int:
    """dim I(Z)_t."""
    if t < 0:
        return 0
    return count_monomials(Z.N + 1, t) - conditions_rank(Z, t, method)


def piece_basis(Z: FatFlatScheme, t: int) -> np.ndarray:
    """Rows span I(Z)_t in ``monomials_of_degree`` coordinates."""
    return nullspace_mod_p(conditions(Z, t), Z.p)


def alpha_scan(Z: FatFlatScheme) -> int:
    """Least t with I(Z)_t != 0, by bisection (nonvanishing persists upward)."""
    hi = sum(Z.multiplicities)  # product of one form per component, to its multiplicity
    if Z.is_fat_points():
        d = scheme_degree(Z)
        t = 0
        while count_monomials(Z.N + 1, t) <= d:
            t += 1
        hi = min(hi, t)
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if piece_dimension(Z, mid) > 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def tau_scan(Z: FatFlatScheme) -> int:
    """Least t where a fat point scheme imposes independent conditions."""
    d = scheme_degree(Z)
    t = 0
    while count_monomials(Z.N + 1, t) < d:
        t += 1
    while conditions_rank(Z, t) < d:
        t += 1
    return t


# ---------------------------------------------------------------------------
# ideals of schemes


def _poly_from_vector(v: np.ndarray, ring: PolynomialRing, t: int) -> Polynomial:
    mons = monomials_of_degree(ring.nvars, t)
    return Polynomial(ring, {mons[i]: int(v[i]) for i in np.flatnonzero(v)}, _clean=True)


def interpolated_generators(Z: FatFlatScheme) -> list:
    """A minimal homogeneous generating set of I(Z) for fat points, as (degree, form)."""
    if not Z.is_fat_points():
        raise SchemeError("interpolation route needs a regularity bound: fat points only")
    ring = Z.ring
    n, p = ring.nvars, ring.p
    a = alpha_scan(Z)
    sigma = tau_scan(Z) + 1
    out = []
    prev = None
    for t in range(a, max(a, sigma) + 1):
        K = piece_basis(Z, t)
        if prev is None or prev.shape[0] == 0:
            span = np.zeros((0, K.shape[1]), dtype=np.int64)
        else:
            span = multiply_by_variables(prev, n, t - 1, p)
        stacked = np.vstack([span, K]) if span.size else K
        picked = independent_rows(stacked, p)
        for i in picked:
            if i >= span.shape[0]:
                out.append((t, _poly_from_vector(K[i - span.shape[0]], ring, t)))
        prev = K
    return out


def _flat_power(flat: LinearFlat, k: int) -> Ideal:
    return ideal_power(flat.ideal(), k)


@lru_cache(maxsize=256)
def symbolic_power(Z: FatFlatScheme, m: int = 1, route: str = "auto",
                   budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I(Z)^(m) = I(mZ).

    Routes: ``intersection`` intersects the powers I(L_i)^(m m_i);
    ``saturation`` saturates I(Z)^m (fat points only); ``interpolation``
    assembles minimal generators degree by degree from kernels of the
    vanishing conditions (fat points only); ``auto`` uses interpolation for
    fat points and intersection otherwise.
    """
    if m < 1:
        raise SchemeError("symbolic power needs m >= 1")
    if route == "auto":
        route = "interpolation" if Z.is_fat_points() else "intersection"
    if route == "intersection":
        return intersect_all([_flat_power(f, k * m) for f, k in Z.components], budget)
    if route == "saturation":
        if not Z.is_fat_points():
            raise SchemeError("saturation route is only valid for fat points")
        base = symbolic_power(Z, 1, "intersection", budget)
        return saturate(ideal_power(base, m), budget=budget)
    if route == "interpolation":
        gens = interpolated_generators(Z.scaled(m))
        return Ideal(Z.ring, [g for _, g in gens])
    raise SchemeError(f"unknown route {route!r}")


def scheme_ideal(Z: FatFlatScheme, route: str = "auto", budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I(Z) = ∩ I(L_i)^(m_i)."""
    return symbolic_power(Z, 1, route, budget)


def cross_check_routes(Z: FatFlatScheme, m: int, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """Symbolic power by intersection, verified equal to the saturation route."""
    a = symbolic_power(Z, m, "intersection", budget)
    if Z.is_fat_points():
        b = symbolic_power(Z, m, "saturation", budget)
        if not ideal_equal(a, b, budget):
            raise ConsistencyError(f"intersection and saturation routes differ for m={m}")
    return a


def consensus(values: Sequence):
    """Majority value and whether all samples agreed."""
    counts = Counter(values)
    value, _ = counts.most_common(1)[0]
    return value, len(counts) == 1


# ---------------------------------------------------------------------------
# JSON


def _parse_forms(forms, ring: PolynomialRing) -> LinearFlat:
    return LinearFlat.from_forms([parse_polynomial(f, ring) for f in forms])


def scheme_from_json(data, p: int = DEFAULT_PRIME) -> FatFlatScheme:
    """Build a scheme from the JSON description (dict or string)."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise SchemeError("scheme JSON must be an object")
    kind = data.get("kind", "explicit")
    try:
        if kind == "generic_points":
            return generic_points(int(data["N"]), int(data["n"]), int(data.get("seed", 0)), p,
                                  int(data.get("mult", 1)))
        if kind == "skeleton":
            spec = SkeletonSpec(int(data["N"]), int(data["e"]), int(data["s"]),
                                tuple(data.get("degrees", ())), int(data.get("seed", 0)))
            return skeleton_scheme(spec, p)
        if kind == "cone":
            return cone_scheme(scheme_from_json(data["inner"], p))
        if kind == "explicit":
            if data.get("fixture") == "collinear_3_plus_1":
                return collinear_fixture(p)
            N = int(data["N"])
            ring = PolynomialRing(N + 1, p)
            comps = []
            for comp in data["components"]:
                if "point" in comp:
                    flat = LinearFlat.from_point(comp["point"], p)
                else:
                    flat = _parse_forms(comp["forms"], ring)
                comps.append((flat, int(comp.get("mult", 1))))
            params = (("fixture", data["fixture"]),) if data.get("fixture") else ()
            return FatFlatScheme(N, tuple(comps), p, SchemeSource("explicit", params))
    except KeyError as exc:
        raise SchemeError(f"missing field {exc.args[0]!r} for kind {kind!r}") from None
    raise SchemeError(f"unknown scheme kind {kind!r}")
