"""Containment decisions I^(m) ⊆ I^r, resurgence brackets and closed forms.

The cascade tries cheap postulational tests before falling back to a
Groebner membership check:

    trivial (r = 1) -> postcrit1 -> postcrit2 -> chardin -> els-hh -> direct

postcrit1: r*alpha(I) > alpha(I^(m)) gives noncontainment.
postcrit2: r*reg(I) <= alpha(I^(m)) gives containment (0-dimensional Z).
chardin:   alpha(I^(m)) >= r*omega + 2*(reg - omega), r >= 2, gives containment.
els-hh:    m >= h*r with h the big height gives containment.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ideal import DEFAULT_BUDGET, Budget, ResourceError, ideal_power, normal_form
from .invariants import (
    PLANE_SESHADRI_TABLE,
    QUOTED_EPSILON_BOUNDS,
    alpha,
    gamma_bracket,
    omega,
    plane_seshadri_lower,
    seeded_consensus,
    tau_sigma,
)
from .schemes import ConsistencyError, FatFlatScheme, generic_points, scheme_ideal, symbolic_power

CONTAINED = "Contained"
NOT_CONTAINED = "NotContained"
UNKNOWN = "Unknown"

# points are generic only up to a cap on n that keeps rank checks at desk scale
MAX_GENERIC_POINTS = 200


@dataclass
class ContainmentVerdict:
    m: int
    r: int
    verdict: str
    criterion: str
    witness: str = ""
    witness_degree: int | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "verdict": self.verdict,
            "criterion": self.criterion,
            "witness": self.witness,
            "witness_degree": self.witness_degree,
            "notes": list(self.notes),
        }


@dataclass
class _Data:
    """Invariants the cascade reads; None where they do not apply."""

    alpha1: int
    alpha_m: int
    reg: int | None
    omega: int | None
    height: int


def _gather(Z: FatFlatScheme, m: int, budget: Budget) -> _Data:
    a1 = alpha(Z, 1, budget)
    am = alpha(Z, m, budget)
    reg = w = None
    if Z.is_fat_points():
        reg = tau_sigma(Z, budget=budget)[1]
        w = omega(Z, budget=budget)
    return _Data(a1, am, reg, w, Z.big_height())


def _postcrit1(d: _Data, m: int, r: int):
    if r * d.alpha1 > d.alpha_m:
        return NOT_CONTAINED, f"r*alpha(I) = {r * d.alpha1} > alpha(I^(m)) = {d.alpha_m}", d.alpha_m
    return None


def _postcrit2(d: _Data, m: int, r: int):
    if d.reg is not None and r * d.reg <= d.alpha_m:
        return CONTAINED, f"r*reg(I) = {r * d.reg} <= alpha(I^(m)) = {d.alpha_m}", None
    return None


def _chardin(d: _Data, m: int, r: int):
    if d.reg is None or r < 2:
        return None
    bound = r * d.omega + 2 * (d.reg - d.omega)
    if d.alpha_m >= bound:
        return CONTAINED, (f"alpha(I^(m)) = {d.alpha_m} >= r*omega + 2(reg - omega) = {bound}"
                           f" (omega = {d.omega}, reg = {d.reg})"), None
    return None


def _els_hh(d: _Data, m: int, r: int):
    if m >= d.height * r:
        return CONTAINED, f"m = {m} >= h*r = {d.height * r} (big height h = {d.height})", None
    return None


CASCADE = (("postcrit1", _postcrit1), ("postcrit2", _postcrit2), ("chardin", _chardin),
           ("els-hh", _els_hh))


def direct_containment(Z: FatFlatScheme, m: int, r: int, budget: Budget = DEFAULT_BUDGET):
    """Groebner membership test of I^(m) ⊆ I^r.

    Returns (contained, detail) where detail is the number of generators of
    I^(m) checked, or the degree of the first generator outside I^r.
    """
    sym = symbolic_power(Z, m, "auto", budget)
    power = ideal_power(scheme_ideal(Z, budget=budget), r)
    gens = sorted(sym.generators, key=lambda g: g.degree())
    basis = power.truncated_basis(gens[-1].degree(), budget)
    for g in gens:
        if normal_form(g, basis):
            return False, g.degree()
    return True, len(gens)


def _hint(d: _Data | None, m: int, r: int) -> str:
    if d is None:
        return "alpha(I^(m)) could not be computed within the budget"
    parts = [f"postcrit1 needs alpha(I^(m)) < {r * d.alpha1}"]
    if d.reg is not None:
        parts.append(f"postcrit2 needs alpha(I^(m)) >= {r * d.reg}")
    parts.append(f"els-hh needs m >= {d.height * r}")
    return f"alpha(I^(m)) = {d.alpha_m}; " + ", ".join(parts)


def check_containment(Z: FatFlatScheme, m: int, r: int, budget: Budget = DEFAULT_BUDGET,
                      direct: bool = True) -> ContainmentVerdict:
    """Decide I(Z)^(m) ⊆ I(Z)^r by the first criterion that fires.

    Every other postulational criterion that also fires is listed in ``notes``.
    A resource error becomes an Unknown verdict, never a guess.
    """
    if m < 1 or r < 1:
        raise ValueError("m and r must be positive")
    if r == 1:
        return ContainmentVerdict(m, r, CONTAINED, "trivial", "I^(m) ⊆ I for m >= 1")
    try:
        d = _gather(Z, m, budget)
    except ResourceError as exc:
        return ContainmentVerdict(m, r, UNKNOWN, "none", notes=[f"resource: {exc}", _hint(None, m, r)])
    fired = [(name, out) for name, test in CASCADE if (out := test(d, m, r)) is not None]
    if fired:
        name, (verdict, witness, degree) = fired[0]
        notes = [f"also: {other}" for other, _ in fired[1:]]
        return ContainmentVerdict(m, r, verdict, name, witness, degree, notes)
    if not direct:
        return ContainmentVerdict(m, r, UNKNOWN, "none", notes=[_hint(d, m, r)])
    try:
        contained, detail = direct_containment(Z, m, r, budget)
    except ResourceError as exc:
        return ContainmentVerdict(m, r, UNKNOWN, "none", notes=[f"resource: {exc}", _hint(d, m, r)])
    if contained:
        return ContainmentVerdict(m, r, CONTAINED, "direct",
                                  f"all {detail} generators of I^(m) reduce to 0 mod I^r")
    return ContainmentVerdict(m, r, NOT_CONTAINED, "direct",
                              f"a generator of I^(m) of degree {detail} is not in I^r", detail)


# ---------------------------------------------------------------------------
# grids


def sweep(Z: FatFlatScheme, m_max: int, r_max: int, budget: Budget = DEFAULT_BUDGET) -> list:
    """Verdicts for 1 <= m <= m_max, 1 <= r <= r_max, checked for consistency."""
    if m_max < 1 or r_max < 1:
        raise ValueError("grid bounds must be positive")
    grid = [check_containment(Z, m, r, budget) for m in range(1, m_max + 1)
            for r in range(1, r_max + 1)]
    validate_grid(grid)
    return grid


def validate_grid(grid: Sequence[ContainmentVerdict]):
    """Contained needs m >= r, and must persist to (m+1, r) and (m, r-1)."""
    cell = {(v.m, v.r): v.verdict for v in grid}
    for (m, r), verdict in cell.items():
        if verdict != CONTAINED:
            continue
        if m < r:
            raise ConsistencyError(f"Contained at (m={m}, r={r}) with m < r")
        for nb in ((m + 1, r), (m, r - 1)):
            if cell.get(nb) == NOT_CONTAINED:
                raise ConsistencyError(f"Contained at {(m, r)} but NotContained at {nb}")


def grid_to_csv(grid: Sequence[ContainmentVerdict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "r", "verdict", "criterion", "witness_degree"])
    for v in grid:
        w.writerow([v.m, v.r, v.verdict, v.criterion, "" if v.witness_degree is None else v.witness_degree])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# resurgence


@dataclass
class ResurgenceBracket:
    lower: Fraction
    upper: Fraction | None
    lower_src: str
    upper_src: str

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "lower": str(self.lower),
            "upper": None if self.upper is None else str(self.upper),
            "lower_src": self.lower_src,
            "upper_src": self.upper_src,
        }


def resurgence_bracket(Z: FatFlatScheme, m_max: int = 8, budget: Budget = DEFAULT_BUDGET) -> ResurgenceBracket:
    """alpha/gamma <= rho <= reg/gamma, with rho <= big height always."""
    gb = gamma_bracket(Z, m_max, budget)
    a = alpha(Z, 1, budget)
    lower = max(Fraction(1), Fraction(a) / gb.upper)
    lower_src = f"alpha/gamma_upper ({gb.lower_provenance} lower)"
    h = Z.big_height()
    upper, upper_src = Fraction(h), "big-height"
    if Z.is_fat_points():
        reg = tau_sigma(Z, budget=budget)[1]
        cand = Fraction(reg) / gb.lower
        if cand < upper:
            upper, upper_src = cand, f"reg/gamma_lower ({gb.lower_provenance})"
    if lower > upper:
        raise ConsistencyError(f"resurgence bracket [{lower}, {upper}] is empty")
    return ResurgenceBracket(lower, upper, lower_src, upper_src)


@dataclass
class RhoValue:
    value: Fraction
    exact: bool
    formula: str


def rho_skeleton(N: int | None, e: int, s: int, d: Sequence[int] | None = None) -> RhoValue:
    """Resurgence of the skeleton S_N(e, s, d): exact for e = N linear, else a lower bound."""
    N = e if N is None else N
    degs = tuple(d) if d else (1,) * s
    if not (1 <= e <= N and e <= s):
        raise ValueError("need 1 <= e <= N and e <= s")
    if len(degs) != s or any(x < 1 for x in degs) or list(degs) != sorted(degs):
        raise ValueError("d must be s positive nondecreasing degrees")
    if all(x == 1 for x in degs):
        if e == N:
            return RhoValue(Fraction(N * (s - N + 1), s), True, "a")
        return RhoValue(Fraction(e * (s - e + 1), s), False, "b")
    return RhoValue(Fraction(e * sum(degs[: s - e + 1]), sum(degs)), False, "c")


# ---------------------------------------------------------------------------
# Seshadri constants and square binomials


@dataclass
class SeshadriEntry:
    n: int
    N: int
    value_or_bound: Fraction
    is_exact: bool
    source: str


def seshadri_entry(n: int) -> SeshadriEntry:
    """eps(2, n) for n generic plane points: exact when tabulated or n square."""
    if n < 1:
        raise ValueError("n must be positive")
    if n in PLANE_SESHADRI_TABLE:
        return SeshadriEntry(n, 2, PLANE_SESHADRI_TABLE[n] / n, True, "seshadri-table")
    root = math.isqrt(n)
    if root * root == n:
        return SeshadriEntry(n, 2, Fraction(1, root), True, "square")
    return SeshadriEntry(n, 2, plane_seshadri_lower(n) / n, False, "seshadri-sqrt-bound")


def pell_square_binomials(count: int) -> list:
    """The first ``count`` s >= 0 with C(s+2, 2) a perfect square.

    C(s+2,2) = (s+1)(s+2)/2 with coprime factors, so one of s+1, s+2 is 2x^2
    and the other a square; the solutions are s = 2P^2 - 2 (k odd) and
    s = 2P^2 - 1 (k even) for the Pell numbers P = P_k, k >= 1.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    prev, cur, k = 0, 1, 1
    while len(out) < count:
        out.append(2 * cur * cur - (2 if k % 2 else 1))
        prev, cur, k = cur, 2 * cur + prev, k + 1
    return out


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass
class SccorValue:
    s: int
    N: int
    n: int
    value: Fraction | None
    symbolic: str | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None


def sccor_rho(s: int, N: int = 2) -> SccorValue:
    """rho for n = C(s+N, N) generic points: (s+1)/sqrt(n) when N = 2 and n is a square."""
    n = math.comb(s + N, N)
    if N == 2 and is_square(n):
        return SccorValue(s, N, n, Fraction(s + 1, math.isqrt(n)))
    return SccorValue(s, N, n, None, f"({s + 1})/({n}*eps({N},{n})^{N - 1})")


def sccor_identity(s: int) -> bool:
    """(s+1)/sqrt(n) = sqrt(2) sqrt((s+1)/(s+2)) for n = C(s+2, 2), compared squared."""
    n = math.comb(s + 2, 2)
    return Fraction((s + 1) ** 2, n) == 2 * Fraction(s + 1, s + 2)


# ---------------------------------------------------------------------------
# generic plane points


def _generic_invariant(n: int, fn, seed: int, count: int):
    if n > MAX_GENERIC_POINTS:
        raise ResourceError(f"n = {n} exceeds the cap of {MAX_GENERIC_POINTS} generic points")
    value, _, values = seeded_consensus(lambda sd: generic_points(2, n, sd), fn, seed, count)
    # a minority of degenerate draws is expected at rate about 1/p; no majority is not
    if 2 * values.count(value) <= len(values):
        raise ConsistencyError(f"no majority among seeds for n = {n}: {values}")
    return value


def generic_sigma(n: int, seed: int = 0, count: int = 3) -> int:
    return _generic_invariant(n, lambda Z: tau_sigma(Z)[1], seed, count)


@dataclass
class HunekeRow:
    n: int
    sigma: int
    alpha3: int
    verdict: str
    basis: str
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"n": self.n, "sigma": self.sigma, "alpha3": self.alpha3, "verdict": self.verdict,
                "basis": self.basis, "notes": list(self.notes)}


def huneke_row(n: int, seed: int = 0, count: int = 3) -> HunekeRow:
    """Is I^(3) ⊆ I^2 for n generic plane points?  Decided by 2*sigma <= alpha(I^(3))."""
    if n < 1:
        raise ValueError("n must be positive")
    sigma, a3 = _generic_invariant(n, lambda Z: (tau_sigma(Z)[1], alpha(Z, 3)), seed, count)
    notes = []
    if n in (1, 2, 4):
        return HunekeRow(n, sigma, a3, CONTAINED, "complete-intersection",
                         ["I^(3) = I^3 ⊆ I^2"])
    if n >= 10:
        t = sigma
        lhs, mid, rhs = math.comb(2 * t + 1, 2), 3 * t * t - 3 * t, 6 * n
        chain = lhs <= mid < rhs
        notes.append(f"C(2t+1,2) = {lhs} <= 3t^2-3t = {mid} < 6n = {rhs}: {chain}")
        if not chain:
            raise ConsistencyError(f"inequality chain fails for n = {n}")
    verdict = CONTAINED if 2 * sigma <= a3 else UNKNOWN
    return HunekeRow(n, sigma, a3, verdict, "postcrit2", notes)


def huneke_table(n_list: Sequence[int], seed: int = 0, count: int = 3) -> list:
    return [huneke_row(n, seed, count) for n in n_list]


@dataclass
class GenTheoremRow:
    n: int
    n_eps: Fraction
    n_eps_exact: bool
    sigma: int
    ratio: Fraction
    bound: Fraction
    basis: str
    holds: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"n": self.n, "n_eps": str(self.n_eps), "n_eps_exact": self.n_eps_exact,
                "sigma": self.sigma, "ratio": str(self.ratio), "bound": str(self.bound),
                "basis": self.basis, "holds": self.holds, "notes": list(self.notes)}


THREE_HALVES = Fraction(3, 2)


def _seven_point_refinement(Z: FatFlatScheme) -> tuple:
    """rho(S_7) <= 6/5: for m/r > 6/5 check alpha(I^(m)) >= 3r + 2 (omega = 3, reg = 4)."""
    w, reg = omega(Z), tau_sigma(Z)[1]
    notes = [f"omega = {w}, reg = {reg}"]
    ok = (w, reg) == (3, 4)
    for r in range(2, 7):
        m = 6 * r // 5 + 1
        a = alpha(Z, m)
        need = r * w + 2 * (reg - w)
        notes.append(f"r = {r}, m = {m}: alpha = {a} >= {need}: {a >= need}")
        ok &= a >= need
    # r >= 7: alpha(I^(m)) >= 21m/8 and m/r > 6/5 give 21m/8 > 3r + 1
    ok &= all(Fraction(21, 8) * Fraction(6 * r, 5) >= 3 * r + 1 for r in range(7, 200))
    tight = alpha(Z, 6)
    notes.append(f"m = 6, r = 5 gives alpha = {tight} < 17, so 6/5 is the limit of this argument")
    return ok and tight < 17, tuple(notes)


def _eleven_point_refinement(Z: FatFlatScheme) -> tuple:
    """rho(S_11) <= 1.43 from c > (2 reg - 1)/(2 sqrt(n - 1))."""
    w, reg = omega(Z), tau_sigma(Z)[1]
    c = Fraction(143, 100)
    ok = (w, reg) == (4, 5) and (2 * c) ** 2 * 10 > (2 * reg - 1) ** 2
    return ok, (f"omega = {w}, reg = {reg}", f"c = {c} > (2reg-1)/(2 sqrt(10)): {ok}")


def gen_theorem_report(n: int, seed: int = 0, count: int = 3) -> GenTheoremRow:
    """Check rho(S_n) <= 3/2 through sigma/(n eps) with the sharpest available n eps."""
    if n < 1:
        raise ValueError("n must be positive")
    if n in (1, 2, 4):
        sigma = generic_sigma(n, seed, count)
        ne = PLANE_SESHADRI_TABLE[n]
        return GenTheoremRow(n, ne, True, sigma, sigma / ne, Fraction(1), "complete-intersection",
                             True, ["rho = 1 since I^(m) = I^m"])
    if n <= 9:
        sigma = generic_sigma(n, seed, count)
        ne = PLANE_SESHADRI_TABLE[n]
        ratio = sigma / ne
        if ratio <= THREE_HALVES:
            return GenTheoremRow(n, ne, True, sigma, ratio, ratio, "sigma/n_eps", True)
        ok, notes = _generic_invariant(7, _seven_point_refinement, seed, count) if n == 7 else (False, ())
        return GenTheoremRow(n, ne, True, sigma, ratio, Fraction(6, 5), "chardin-refinement", ok, list(notes))
    sigma = generic_sigma(n, seed, count)
    if n >= 52:
        ne = plane_seshadri_lower(n)
        holds = 4 * sigma * sigma <= 9 * (n - 1)
        analytic = ((math.sqrt(8 * n + 1) - 3) / 2 + 2) / math.sqrt(n - 1)
        return GenTheoremRow(n, ne, is_square(n), sigma, sigma / ne, THREE_HALVES, "sqrt(n-1)", holds,
                             [f"sigma^2 = {sigma * sigma} <= 9(n-1)/4 = {Fraction(9 * (n - 1), 4)}",
                              f"analytic bound {analytic:.4f} < 1.5: {analytic < 1.5}"])
    entry = seshadri_entry(n)
    ne = n * entry.value_or_bound
    ratio = sigma / ne
    basis = "quoted-bound" if n in QUOTED_EPSILON_BOUNDS else "sigma/n_eps"
    if ratio <= THREE_HALVES:
        return GenTheoremRow(n, ne, entry.is_exact, sigma, ratio, ratio, basis, True)
    ok, notes = _generic_invariant(11, _eleven_point_refinement, seed, count) if n == 11 else (False, ())
    return GenTheoremRow(n, ne, entry.is_exact, sigma, ratio, Fraction(143, 100), "chardin-refinement",
                         ok, list(notes))


@dataclass
class GenPropCheck:
    n: int
    d: int
    i: int
    applies: bool
    sigma: int | None = None
    holds: bool | None = None


def genprop_check(n: int, seed: int = 0, count: int = 3) -> GenPropCheck:
    """For n = C(d+2,2) + i >= 10 with (d+4)/2 <= i <= d+2: sigma = d+2 and sigma^2 <= 2(n-1)."""
    d = 0
    while math.comb(d + 3, 2) < n:
        d += 1
    i = n - math.comb(d + 2, 2)
    applies = n >= 10 and d + 4 <= 2 * i and i <= d + 2
    if not applies:
        return GenPropCheck(n, d, i, False)
    sigma = generic_sigma(n, seed, count)
    return GenPropCheck(n, d, i, True, sigma, sigma == d + 2 and sigma * sigma <= 2 * (n - 1))
