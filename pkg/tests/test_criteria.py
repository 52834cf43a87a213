import itertools
import math
from fractions import Fraction

import pytest

from resurgence.criteria import (
    CONTAINED,
    NOT_CONTAINED,
    UNKNOWN,
    ContainmentVerdict,
    check_containment,
    direct_containment,
    gen_theorem_report,
    genprop_check,
    grid_to_csv,
    huneke_row,
    pell_square_binomials,
    resurgence_bracket,
    rho_skeleton,
    sccor_identity,
    sccor_rho,
    seshadri_entry,
    sweep,
    validate_grid,
)
from resurgence.ideal import Budget
from resurgence.schemes import ConsistencyError, SkeletonSpec, generic_points, skeleton_scheme


def test_cascade_examples(plane_points, lines4):
    v = check_containment(plane_points[5], 3, 2)
    assert (v.verdict, v.criterion) == (CONTAINED, "postcrit2")
    assert "6 <= alpha(I^(m)) = 6" in v.witness

    v = check_containment(lines4, 4, 3)
    assert (v.verdict, v.criterion, v.witness_degree) == (NOT_CONTAINED, "postcrit1", 8)

    assert check_containment(plane_points[4], 1, 1).verdict == CONTAINED


def test_examples_whose_named_criterion_is_preempted(plane_points):
    # postcrit2 fires first; the named criterion must also hold
    v = check_containment(plane_points[7], 3, 2)
    assert v.verdict == CONTAINED and "also: chardin" in v.notes
    v = check_containment(plane_points[4], 4, 2)
    assert v.verdict == CONTAINED and "also: els-hh" in v.notes


def test_small_m_large_r_not_contained(plane_points, lines4, collinear):
    for Z in (plane_points[1], plane_points[6], lines4, collinear):
        v = check_containment(Z, 2, 5)
        assert (v.verdict, v.criterion) == (NOT_CONTAINED, "postcrit1")


def test_not_contained_witness_degree(plane_points):
    from resurgence.invariants import alpha, hilbert_function

    Z = plane_points[6]
    for m, r in [(2, 2), (3, 3), (4, 4)]:
        v = check_containment(Z, m, r)
        if v.criterion == "postcrit1":
            t = v.witness_degree
            assert hilbert_function(Z, t, m) > 0
            assert t < r * alpha(Z)


def test_direct_fallback_on_flats(cone5):
    v = check_containment(cone5, 3, 2)
    assert (v.verdict, v.criterion) == (CONTAINED, "direct")
    assert "generators" in v.witness


def test_resource_error_is_unknown(cone5):
    v = check_containment(cone5, 3, 2, Budget(max_spairs=3))
    assert v.verdict == UNKNOWN and any(n.startswith("resource") for n in v.notes)
    v = check_containment(generic_points(2, 9), 5, 4, Budget(max_degree=4))
    assert v.verdict == UNKNOWN


def test_no_direct_gives_unknown_with_hint(cone5):
    v = check_containment(cone5, 3, 2, direct=False)
    assert v.verdict == UNKNOWN and "needs" in v.notes[0]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_criteria_are_sound(n):
    Z = generic_points(2, n, seed=2)
    for m, r in itertools.product(range(1, 5), range(1, 4)):
        v = check_containment(Z, m, r)
        assert v.verdict != UNKNOWN
        contained, _ = direct_containment(Z, m, r)
        assert (v.verdict == CONTAINED) == contained, (m, r, v)


def test_grid_monotone_and_csv(plane_points, lines4):
    for Z in (plane_points[3], lines4):
        grid = sweep(Z, 5, 3)
        cells = {(v.m, v.r): v.verdict for v in grid}
        assert all(cells[(m, 1)] == CONTAINED for m in range(1, 6))
        assert all(m >= r for (m, r), verdict in cells.items() if verdict == CONTAINED)
        text = grid_to_csv(grid)
        assert text.splitlines()[0] == "m,r,verdict,criterion,witness_degree"
        assert len(text.splitlines()) == 16
    cells = {(v.m, v.r): v for v in sweep(plane_points[3], 4, 3)}
    assert cells[(4, 3)].verdict == CONTAINED
    cells = {(v.m, v.r): v.verdict for v in sweep(lines4, 4, 3)}
    assert cells[(2, 1)] == CONTAINED and cells[(4, 3)] == NOT_CONTAINED


def test_validate_grid_rejects_inconsistency():
    bad = [ContainmentVerdict(3, 2, CONTAINED, "x"), ContainmentVerdict(4, 2, NOT_CONTAINED, "x")]
    with pytest.raises(ConsistencyError):
        validate_grid(bad)
    with pytest.raises(ConsistencyError):
        validate_grid([ContainmentVerdict(1, 2, CONTAINED, "x")])


def test_resurgence_brackets(plane_points):
    b = resurgence_bracket(plane_points[3])
    assert (b.lower, b.upper) == (Fraction(4, 3), Fraction(4, 3)) and b.exact
    b = resurgence_bracket(plane_points[6])
    assert (b.lower, b.upper) == (Fraction(5, 4), Fraction(5, 4))
    b = resurgence_bracket(plane_points[9])
    assert (b.lower, b.upper) == (1, Fraction(4, 3))
    flats = resurgence_bracket(skeleton_scheme(SkeletonSpec(3, 2, 4)), 4)
    assert flats.upper == 2 and flats.upper_src == "big-height"
    assert flats.to_json()["upper"] == "2"


@pytest.mark.parametrize("n", [3, 5, 6])
def test_bracket_is_consistent_with_verdicts(n, plane_points):
    Z = plane_points[n]
    b = resurgence_bracket(Z)
    assert 1 <= b.lower <= b.upper <= 2
    for m, r in itertools.product(range(1, 7), range(1, 5)):
        v = check_containment(Z, m, r)
        if Fraction(m, r) > b.upper:
            assert v.verdict == CONTAINED
        if v.verdict == NOT_CONTAINED:
            assert Fraction(m, r) <= b.upper


def test_doubling_does_not_raise_the_bracket(plane_points):
    b1 = resurgence_bracket(plane_points[3])
    b2 = resurgence_bracket(generic_points(2, 3, mult=2), 4)
    assert b2.lower <= b1.upper


def test_rho_skeleton():
    assert (rho_skeleton(2, 2, 5).value, rho_skeleton(2, 2, 5).exact) == (Fraction(8, 5), True)
    r = rho_skeleton(3, 2, 4)
    assert (r.value, r.exact, r.formula) == (Fraction(3, 2), False, "b")
    r = rho_skeleton(None, 2, 3, (1, 2, 3))
    assert (r.value, r.exact, r.formula) == (1, False, "c")
    with pytest.raises(ValueError):
        rho_skeleton(2, 3, 4)
    with pytest.raises(ValueError):
        rho_skeleton(2, 2, 3, (2, 1, 1))


def test_sccor():
    v = sccor_rho(7)
    assert (v.n, v.value) == (36, Fraction(4, 3))
    assert sccor_rho(0).value == 1
    v = sccor_rho(48)
    assert (v.n, v.value) == (1225, Fraction(7, 5))
    assert not sccor_rho(2).exact and sccor_rho(2).symbolic
    assert not sccor_rho(3, N=3).exact
    # sqrt(2) * sqrt(8/9) = 4/3 compared squared
    assert 2 * Fraction(8, 9) == Fraction(4, 3) ** 2
    assert all(sccor_identity(s) for s in range(50))


def test_pell_against_brute_force():
    brute = [s for s in range(10**6 + 1) if math.isqrt(math.comb(s + 2, 2)) ** 2 == math.comb(s + 2, 2)]
    got = pell_square_binomials(len(brute) + 1)
    assert got[:6] == [0, 7, 48, 287, 1680, 9799]
    assert got[: len(brute)] == brute
    assert got[len(brute)] > 10**6
    assert got[6] == brute[6] == 57120


def test_seshadri_entries():
    assert seshadri_entry(7).value_or_bound == Fraction(21, 8) / 7
    e = seshadri_entry(16)
    assert e.is_exact and e.value_or_bound == Fraction(1, 4)
    e = seshadri_entry(22)
    assert not e.is_exact and e.value_or_bound == Fraction(7, 33)


def test_huneke_rows():
    r = huneke_row(6)
    assert (r.sigma, r.alpha3, r.verdict) == (3, 8, CONTAINED)
    r = huneke_row(4)
    assert r.basis == "complete-intersection" and r.verdict == CONTAINED
    r = huneke_row(10)
    assert (r.sigma, r.alpha3, r.verdict) == (4, 10, CONTAINED)
    assert "36 <= 3t^2-3t = 36 < 6n = 60: True" in r.notes[0]


def test_gen_theorem():
    g = gen_theorem_report(8)
    assert g.ratio == Fraction(17, 12) and g.holds
    g = gen_theorem_report(7)
    assert g.ratio == Fraction(32, 21) and g.bound == Fraction(6, 5) and g.holds
    assert any("m = 6, r = 5" in note for note in g.notes)
    g = gen_theorem_report(11)
    assert g.basis == "chardin-refinement" and g.holds and g.bound == Fraction(143, 100)
    g = gen_theorem_report(52)
    assert g.holds and g.basis == "sqrt(n-1)"
    assert ((math.sqrt(8 * 52 + 1) - 3) / 2 + 2) / math.sqrt(51) < 1.5
    for n in (17, 22, 37):
        assert gen_theorem_report(n).ratio == Fraction(3, 2)


@pytest.mark.parametrize("n", range(10, 52))
def test_gen_theorem_small_n_range(n):
    assert gen_theorem_report(n).holds


def test_genprop():
    # 13 = 10 + 3 has i = 3 < (d+4)/2 = 3.5: outside the hypothesis
    assert not genprop_check(13).applies
    for n in (14, 15, 20, 21, 27, 28):
        c = genprop_check(n)
        assert c.applies and c.sigma == c.d + 2 and c.holds
