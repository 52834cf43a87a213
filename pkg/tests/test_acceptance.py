"""Acceptance criteria, one check per criterion.

Each check returns (ok, detail) and is held to its time limit. Running this
file directly prints one PASS/FAIL line per criterion; under pytest the same
lines are printed as the checks run.
"""

import itertools
import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from resurgence.criteria import (
    CONTAINED,
    NOT_CONTAINED,
    check_containment,
    direct_containment,
    gen_theorem_report,
    huneke_table,
    pell_square_binomials,
    resurgence_bracket,
    rho_skeleton,
    sccor_rho,
    sweep,
)
from resurgence.ideal import ideal_equal, ideal_power, ideal_subset
from resurgence.invariants import alpha, gamma_bracket, hilbert_function
from resurgence.schemes import (
    SkeletonSpec,
    collinear_fixture,
    cone_scheme,
    generic_points,
    skeleton_scheme,
    symbolic_power,
)


def lines(s):
    return skeleton_scheme(SkeletonSpec(2, 2, s))


def crit1_theorem8_table():
    expected = {3: (2, 5), 5: (3, 6), 6: (3, 8), 7: (4, 8), 8: (4, 9), 9: (4, 9)}
    rows = huneke_table(sorted(expected), seed=0, count=3)
    got = {r.n: (r.sigma, r.alpha3) for r in rows}
    return got == expected, f"(sigma, alpha(I^(3))) = {got}"


def crit2_direct_containment():
    got = {}
    for n in (3, 5, 6):
        Z = generic_points(2, n)
        I = symbolic_power(Z, 1, "intersection")
        got[n] = ideal_subset(symbolic_power(Z, 3, "intersection"), ideal_power(I, 2))
    return all(got.values()), f"I^(3) in I^2: {got}"


def crit3_genthm_table():
    expected = {3: Fraction(4, 3), 5: Fraction(3, 2), 6: Fraction(5, 4), 7: Fraction(32, 21),
                8: Fraction(17, 12), 9: Fraction(4, 3)}
    got = {n: gen_theorem_report(n).ratio for n in expected}
    return got == expected, "sigma/(n eps) = " + ", ".join(f"{n}: {v}" for n, v in got.items())


def crit4_skeleton_formulas():
    ok = True
    parts = []
    for s in (3, 4, 5):
        Z = lines(s)
        a = alpha(Z)
        a2 = [alpha(Z, 2 * r) for r in (1, 2)]
        ok &= a == s - 1 and a2 == [r * s for r in (1, 2)]
        ok &= rho_skeleton(2, 2, s).value == Fraction(2 * (s - 1), s)
        parts.append(f"s={s}: alpha={a}, alpha(I^(2r))={a2}")
    b = resurgence_bracket(lines(3))
    ok &= (b.lower, b.upper) == (Fraction(4, 3), Fraction(4, 3)) == (rho_skeleton(2, 2, 3).value,) * 2
    parts.append(f"s=3 bracket [{b.lower}, {b.upper}]")
    return ok, "; ".join(parts)


def crit5_lines_example():
    ok = True
    parts = []
    for s in (4, 5):
        Z = lines(s)
        a3 = alpha(Z, 3)
        v32 = check_containment(Z, 3, 2).verdict
        v43 = check_containment(Z, 4, 3).verdict
        ok &= a3 == 2 * s - 1 and v32 == CONTAINED and v43 == NOT_CONTAINED
        text = f"s={s}: alpha(I^(3))={a3}, (3,2) {v32}, (4,3) {v43}"
        if s == 5:
            v64 = check_containment(Z, 6, 4).verdict
            ok &= v64 == NOT_CONTAINED
            text += f", (6,4) {v64}"
        parts.append(text)
    return ok, "; ".join(parts)


def crit6_pell():
    got = pell_square_binomials(6)
    squares = all(math.isqrt(math.comb(s + 2, 2)) ** 2 == math.comb(s + 2, 2) for s in got)
    return got == [0, 7, 48, 287, 1680, 9799] and squares, f"{got}, all C(s+2,2) square: {squares}"


def crit7_sccor():
    v = sccor_rho(7)
    identity = 2 * Fraction(8, 9) == v.value ** 2 == Fraction(4, 3) ** 2
    return (v.n, v.value) == (36, Fraction(4, 3)) and identity, f"n={v.n}, rho={v.value}, (sqrt2 sqrt(8/9))^2 = rho^2: {identity}"


def _plane_fixtures():
    return {"3 points": generic_points(2, 3), "5 points": generic_points(2, 5), "6 points": generic_points(2, 6),
            "collinear": collinear_fixture(), "4 lines": lines(4)}


def crit8_property_suites():
    notes = []
    # subadditivity of alpha on symbolic powers, m <= 6
    fixtures = {"6 points": generic_points(2, 6), "collinear": collinear_fixture(), "4 lines": lines(4),
                "cone over 3 points": cone_scheme(generic_points(2, 3))}
    sub_ok = True
    for Z in fixtures.values():
        a = {m: alpha(Z, m) for m in range(1, 7)}
        sub_ok &= all(a[x + y] <= a[x] + a[y] for x in range(1, 6) for y in range(1, 7 - x))
    notes.append(f"subadditivity {sub_ok}")

    # two symbolic-power routes, n <= 6, m <= 3
    routes_ok = True
    for n, m in itertools.product(range(1, 7), range(1, 4)):
        Z = generic_points(2, n)
        ref = symbolic_power(Z, m, "intersection")
        routes_ok &= ideal_equal(ref, symbolic_power(Z, m, "saturation"))
        routes_ok &= ideal_equal(ref, symbolic_power(Z, m, "interpolation"))
    notes.append(f"routes {routes_ok}")

    # I^(2r) in I^r by direct membership on five plane schemes
    els_ok = all(direct_containment(Z, 2 * r, r)[0] for Z in _plane_fixtures().values() for r in (1, 2))
    notes.append(f"I^(2r) in I^r {els_ok}")

    # Contained implies m >= r on every emitted verdict
    verdicts = [v for Z in _plane_fixtures().values() for v in sweep(Z, 6, 4)]
    order_ok = all(v.m >= v.r for v in verdicts if v.verdict == CONTAINED)
    notes.append(f"Contained => m >= r on {len(verdicts)} verdicts {order_ok}")

    # Hilbert function, rank of conditions against Groebner standard monomials
    rng = np.random.default_rng(2024)
    pool = [generic_points(2, n, seed=int(rng.integers(1 << 30)), mult=k) for n in range(1, 9) for k in (1, 2)]
    pool += [generic_points(3, n, seed=n) for n in (2, 4, 5)]
    pool += [lines(4), lines(5), collinear_fixture(), skeleton_scheme(SkeletonSpec(3, 2, 4)),
             cone_scheme(generic_points(2, 4))]
    pairs = [(pool[int(rng.integers(len(pool)))], int(rng.integers(0, 8)), int(rng.integers(1, 3)))
             for _ in range(50)]
    hf_ok = all(hilbert_function(Z, t, m, "eval_matrix") == hilbert_function(Z, t, m, "groebner")
                for Z, t, m in pairs)
    notes.append(f"Hilbert strategies on {len(pairs)} pairs {hf_ok}")
    return sub_ok and routes_ok and els_ok and order_ok and hf_ok, "; ".join(notes)


def crit9_collinear():
    Z = collinear_fixture()
    a3 = alpha(Z, 3)
    b = gamma_bracket(Z, 6)
    ok = a3 == 5 and b.upper == Fraction(5, 3) > Fraction(4, 3)
    return ok, f"alpha(I^(3)) = {a3}, gamma upper {b.upper} > 4/3"


def crit10_cone_transport():
    Z = generic_points(2, 5)
    C = cone_scheme(Z)
    ok = True
    parts = []
    for m, r in ((2, 1), (3, 2)):
        vz, vc = check_containment(Z, m, r), check_containment(C, m, r)
        dz, dc = direct_containment(Z, m, r)[0], direct_containment(C, m, r)[0]
        ok &= vz.verdict == vc.verdict and dz == dc == (vz.verdict == CONTAINED)
        parts.append(f"({m},{r}): Z {vz.verdict} [{vz.criterion}], C(Z) {vc.verdict} [{vc.criterion}]")
    return ok, "; ".join(parts)


CRITERIA = [
    (1, "generic points (sigma, alpha(I^(3))) table", crit1_theorem8_table, 60),
    (2, "direct I^(3) in I^2 for n = 3, 5, 6", crit2_direct_containment, 300),
    (3, "generic points sigma/(n eps) table", crit3_genthm_table, 60),
    (4, "skeleton alpha and rho formulas", crit4_skeleton_formulas, 60),
    (5, "lines example", crit5_lines_example, 300),
    (6, "Pell enumeration", crit6_pell, 5),
    (7, "square-count rho value and identity", crit7_sccor, 5),
    (8, "property suites", crit8_property_suites, 600),
    (9, "collinear fixture", crit9_collinear, 60),
    (10, "cone transport", crit10_cone_transport, 600),
]


def evaluate(number, title, check, limit):
    start = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as exc:  # a crash is a failed criterion, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    within = elapsed <= limit
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {number:>2} {title}: {detail} [{elapsed:.2f}s, limit {limit}s]"
    return ok and within, line


@pytest.mark.parametrize("number,title,check,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, limit, capsys):
    ok, line = evaluate(number, title, check, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
