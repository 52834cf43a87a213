import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resurgence.ideal import (
    Budget,
    Ideal,
    ResourceError,
    eliminate,
    groebner_basis,
    hilbert_function_gb,
    hilbert_function_linear,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_quotient_saturate,
    ideal_subset,
    krull_dimension,
    minimal_generator_degrees,
    normal_form,
    saturate,
)
from resurgence.ring import LEX, Polynomial, PolynomialRing, block_order, monomials_of_degree
from resurgence.schemes import explicit_points, generic_points, piece_dimension, symbolic_power

R2 = PolynomialRing(2)
R3 = PolynomialRing(3)


def I_(ring, *gens):
    return Ideal.from_strings(ring, gens)


def random_form(ring, t, rng, density=0.5):
    mons = monomials_of_degree(ring.nvars, t)
    terms = {m: int(rng.integers(1, ring.p)) for m in mons if rng.random() < density}
    return Polynomial(ring, terms)


@st.composite
def homogeneous_ideals(draw, ring=R3):
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    k = draw(st.integers(1, 3))
    gens = [random_form(ring, int(rng.integers(1, 4)), rng) for _ in range(k)]
    gens = [g for g in gens if g] or [ring.var(0)]
    return Ideal(ring, gens), rng


def test_small_bases():
    assert set(groebner_basis(I_(R2, "x0+x1", "x0-x1"))) == {R2.var(0), R2.var(1)}
    f = R3.parse("3*x0^2 + x1*x2")
    assert groebner_basis(Ideal(R3, [f])) == [f.monic()]


def test_basis_is_deterministic_and_reduced():
    gens = ["x0^2 - x1*x2", "x1^2 - x0*x2", "x2^2 - x0*x1"]
    a = groebner_basis(I_(R3, *gens))
    b = groebner_basis(I_(R3, *reversed(gens)))
    assert [str(g) for g in a] == [str(g) for g in b]
    lms = [g.leading_monomial() for g in a]
    for g in a:
        assert g.leading_coefficient() == 1
        for e in g.terms:
            others = [m for m in lms if m != g.leading_monomial()]
            assert not any(all(x <= y for x, y in zip(m, e)) for m in others)


def test_two_points_hilbert_cross_check():
    Z = generic_points(2, 2, seed=3)
    I = symbolic_power(Z, 1, "intersection")
    for t in range(5):
        assert hilbert_function_gb(I, t) == piece_dimension(Z, t)


def test_subset_examples(plane_points):
    assert ideal_subset(I_(R2, "x0^2"), I_(R2, "x0"))
    assert not ideal_subset(I_(R2, "x0"), I_(R2, "x0^2"))
    Z = plane_points[5]
    I = symbolic_power(Z, 1, "intersection")
    assert ideal_subset(symbolic_power(Z, 3, "intersection"), ideal_power(I, 2))


def test_power_examples(plane_points):
    I = I_(R3, "x0", "x1")
    assert ideal_power(I, 1) is I
    assert ideal_equal(ideal_power(I, 2), I_(R3, "x0^2", "x0*x1", "x1^2"))
    J = symbolic_power(plane_points[3], 1, "intersection")
    assert min(ideal_power(J, 2).generator_degrees()) == 4


@settings(max_examples=25)
@given(homogeneous_ideals(), st.integers(1, 2), st.integers(1, 2))
def test_power_is_multiplicative(data, a, b):
    I, _ = data
    assert ideal_equal(ideal_power(I, a + b), ideal_product(ideal_power(I, a), ideal_power(I, b)))


def test_intersection_examples():
    assert ideal_equal(ideal_intersect(I_(R3, "x0"), I_(R3, "x1")), I_(R3, "x0*x1"))
    I = I_(R3, "x0^2 + x1*x2", "x1^3")
    assert ideal_equal(ideal_intersect(I, I), I)
    # doubled ideals of [1:0:0] and [0:1:0]: the double line x2^2 is the only conic
    p, q = I_(R3, "x1", "x2"), I_(R3, "x0", "x2")
    both = ideal_intersect(ideal_power(p, 2), ideal_power(q, 2))
    Z = explicit_points([(1, 0, 0), (0, 1, 0)], [2, 2])
    assert [piece_dimension(Z, t) for t in range(3)] == [0, 0, 1]
    assert min(both.generator_degrees()) == 2
    assert both.contains(R3.parse("x2^2"))


monomials3 = st.lists(st.tuples(*[st.integers(0, 3)] * 3).filter(any), min_size=1, max_size=3)


@settings(max_examples=30)
@given(monomials3, monomials3)
def test_intersection_of_monomial_ideals_is_lcm(A, B):
    I = Ideal(R3, [R3.monomial(a) for a in A])
    J = Ideal(R3, [R3.monomial(b) for b in B])
    lcms = Ideal(R3, [R3.monomial(tuple(map(max, a, b))) for a in A for b in B])
    meet = ideal_intersect(I, J)
    assert ideal_equal(meet, lcms)
    assert ideal_equal(meet, ideal_intersect(J, I))
    assert ideal_subset(meet, I) and ideal_subset(meet, J)


@settings(max_examples=30)
@given(homogeneous_ideals(), st.integers(0, 2**32 - 1))
def test_normal_form_is_linear_and_detects_members(data, seed):
    I, rng = data
    basis = groebner_basis(I)
    f, g = random_form(R3, 3, rng), random_form(R3, 3, rng)
    a, b = int(rng.integers(1, R3.p)), int(rng.integers(1, R3.p))
    lhs = normal_form(f.scale(a) + g.scale(b), basis)
    assert lhs == normal_form(f, basis).scale(a) + normal_form(g, basis).scale(b)
    member = R3.zero()
    for gen in I.generators:
        member = member + gen * random_form(R3, 4 - gen.degree(), rng, 0.7) if gen.degree() <= 4 else member
    assert not normal_form(member, basis)
    assert I.contains(member)


@settings(max_examples=30)
@given(homogeneous_ideals())
def test_hilbert_strategies_agree_on_ideals(data):
    I, _ = data
    for t in range(5):
        assert hilbert_function_gb(I, t) == hilbert_function_linear(I, t)


def test_saturation_examples(plane_points):
    I = I_(R2, "x0^2", "x0*x1")
    assert ideal_equal(saturate(I), I_(R2, "x0"))
    assert ideal_equal(ideal_quotient_saturate(I, mode="saturation"), I_(R2, "x0"))
    # explicit J takes the iterated quotient path
    assert ideal_equal(saturate(I, Ideal.maximal(R2)), I_(R2, "x0"))
    Z = plane_points[3]
    fat = symbolic_power(Z, 2, "intersection")
    assert ideal_equal(saturate(fat), fat)
    base = symbolic_power(Z, 1, "intersection")
    assert ideal_equal(saturate(ideal_power(base, 2)), fat)


@settings(max_examples=20)
@given(homogeneous_ideals())
def test_saturation_is_idempotent(data):
    I, _ = data
    S = saturate(I)
    assert ideal_subset(I, S)
    assert ideal_equal(saturate(S), S)


def test_quotient():
    I = I_(R3, "x0^2*x1", "x2^3")
    Q = ideal_quotient(I, I_(R3, "x0"))
    assert ideal_equal(Q, I_(R3, "x0*x1", "x2^3"))
    J = I_(R3, "x0 + x1")
    Q = ideal_quotient_saturate(I, J, mode="quotient")
    assert ideal_subset(ideal_product(Q, J), I)


def test_eliminate():
    R = PolynomialRing(3)  # t, x, y
    E = eliminate(I_(R, "x0*x1", "x2 - x0*x2"), 1)
    assert E.ring.nvars == 2
    assert E.contains(R2.parse("x0*x1"))
    assert eliminate(I_(R2, "x0"), 1).is_zero()
    # cone over an ideal: eliminating the cone variable from I' + (x) restores I
    base = I_(R2, "x0^2 - x1^2")
    cone = Ideal(R3, [g.embed(R3, (1, 2)) for g in base.generators] + [R3.var(0)])
    assert ideal_equal(eliminate(cone, 1), base)


def test_lex_and_block_orders_give_bases():
    I = I_(R3, "x0 - x1^2", "x1 - x2^3")
    lex = groebner_basis(I, LEX)
    assert any(all(e[0] == 0 for e in g.terms) for g in lex)
    assert all(not normal_form(g, lex, LEX) for g in I.generators)
    blk = groebner_basis(I, block_order(1))
    assert all(not normal_form(g, blk, block_order(1)) for g in I.generators)


def test_resource_error_carries_partial():
    gens = ["x0^3 + x1*x2^2", "x1^3 - x0*x2^2 + x0^2*x1", "x2^3 + x0*x1*x2"]
    with pytest.raises(ResourceError) as err:
        groebner_basis(I_(R3, *gens), budget=Budget(max_spairs=1))
    assert err.value.partial is not None
    with pytest.raises(ResourceError):
        groebner_basis(I_(R3, *gens), budget=Budget(max_degree=3))


def test_json_roundtrip():
    I = I_(R3, "x0^2 + 2*x1*x2", "x2^3")
    data = json.loads(json.dumps(I.to_json()))
    assert data["ring_dim"] == 3
    assert ideal_equal(Ideal.from_json(data), I)


def test_dimension_and_minimal_generators(plane_points):
    I = symbolic_power(plane_points[7], 1, "intersection")
    assert krull_dimension(I) == 1
    assert krull_dimension(I_(R3, "x0")) == 2
    assert max(minimal_generator_degrees(I)) == 3
    assert minimal_generator_degrees(I_(R3, "x0^2", "x0^3", "x1^2")) == [2, 2]
