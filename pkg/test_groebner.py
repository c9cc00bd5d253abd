#!/usr/bin/env python3
"""
Tests for the Gröbner kernel, ideal operations and Hilbert data
"""

import random
from fractions import Fraction

import pytest

from error_handler import BudgetExceededError, NonHomogeneousError, RingMismatchError
from groebner import (
    HilbertData,
    Ideal,
    StepBudget,
    buchberger,
    eliminate,
    graded_span_rank,
    hf_values,
    hilbert,
    hilbert_from_monomials,
    ideal_piece_dimension,
    ideals_equal,
    initial_ideal,
    intersect,
    intersect_all,
    is_groebner,
    kpolynomial,
    member,
    modular_screen,
    monomials_of_degree,
    normal_form,
    sampled_orders,
)
from polyring import MonomialOrder, Polynomial, VarRing, power_map, substitute

R2 = VarRing(("x", "y"))
R3 = VarRing.standard(3)
R4 = VarRing.standard(4)

IDEALS = [
    (R3, ["x1^2 - x2", "x1*x2 - x3"]),
    (R3, ["x1*x2 - x3^2", "x1^2*x3 - x2^3 + x1"]),
    (R3, ["x1 + x2 + x3", "x1*x2 + x2*x3 + x1*x3", "x1*x2*x3 - 1"]),
    (R4, ["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]),
    (R3, ["1/2*x1^2 - 3*x2*x3", "x2^2 - 5/7*x1*x3"]),
]

HOMOGENEOUS = [
    (R3, ["x1*x2 - x3^2", "x1^3 - x2^2*x3"]),
    (R4, ["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]),
    (R3, ["x1^2 - x2^2", "x2^2 - x3^2"]),
    (R4, ["x1*x2 - x3*x4", "x1^2 + x2^2 + x3^2"]),
    (R3, ["x1*x2", "x2*x3", "x1^3 - x3^3"]),
]


def _ideal(ring, texts):
    return Ideal.from_texts(ring, texts)


def test_reduced_basis_is_monic_and_sorted():
    ideal = _ideal(R2, ["x^2 - y", "x*y - 1"])
    order = MonomialOrder.lex(R2)
    basis = ideal.groebner(order)
    assert [str(g) for g in basis] == ["-y^2 + x", "y^3 - 1"]
    assert all(g.leading_term(order).coeff == 1 for g in basis)
    assert is_groebner(basis, order)
    assert not is_groebner(ideal.gens, order)


@pytest.mark.parametrize("ring, texts", IDEALS)
def test_reduced_basis_is_independent_of_generator_order(ring, texts):
    rng = random.Random(2024)
    gens = [ring.parse(t) for t in texts]
    for order in (MonomialOrder.grevlex(ring), MonomialOrder.lex(ring)):
        expected = buchberger(gens, order)
        for _ in range(100 // 5):
            shuffled = [g.scale(rng.choice([1, -2, Fraction(3, 5)])) for g in rng.sample(gens, len(gens))]
            assert buchberger(shuffled, order) == expected


@pytest.mark.parametrize("ring, texts", IDEALS)
@pytest.mark.parametrize("kind", ["grevlex", "lex"])
def test_reduced_basis_matches_sympy(ring, texts, kind):
    sympy = pytest.importorskip("sympy")
    symbols = sympy.symbols(ring.names)

    def monic(expr):
        return sympy.Poly(expr, *symbols, domain='QQ').monic().as_expr()

    exprs = [sympy.sympify(t.replace('^', '**')) for t in texts]
    oracle = sympy.groebner(exprs, *symbols, order=kind, domain='QQ')
    order = MonomialOrder.grevlex(ring) if kind == "grevlex" else MonomialOrder.lex(ring)
    ours = _ideal(ring, texts).groebner(order)
    assert {monic(sympy.sympify(str(g).replace('^', '**'))) for g in ours} == {monic(g) for g in oracle.exprs}


def test_normal_form_and_membership():
    ideal = _ideal(R3, ["x1 - x2", "x2 - x3"])
    assert member(R3.parse("x1^2 - x3^2"), ideal)
    assert not member(R3.parse("x1 + x3"), ideal)
    assert ideal.normal_form(R3.parse("x1 + x3")) == R3.parse("2*x3")
    assert normal_form(R3.parse("x1*x2"), [R3.parse("x1")]).is_zero()
    with pytest.raises(RingMismatchError):
        ideal.contains(R4.parse("x1"))


def test_unit_and_zero_ideals():
    unit = _ideal(R2, ["x*y - 1", "x"])
    assert unit.is_unit()
    assert [str(g) for g in unit.groebner()] == ["1"]
    data = hilbert(_ideal(R2, ["1"]))
    assert (data.dim, data.degree) == (-1, 0)
    zero = Ideal(R2, [R2.zero()])
    assert zero.is_zero() and zero.groebner() == []
    assert hilbert(zero).dim == 2


def test_basis_cache_per_order():
    ideal = _ideal(R3, ["x1^2 - x2", "x1*x2 - x3"])
    grevlex = MonomialOrder.grevlex(R3)
    lex = MonomialOrder.lex(R3)
    first = ideal.groebner(grevlex)
    ideal.groebner(lex)
    assert set(ideal.cached_orders()) == {grevlex, lex}
    assert ideal.groebner(grevlex) == first


def test_elimination():
    ring = VarRing(("t", "x1", "x2"))
    ideal = _ideal(ring, ["x1 - t", "x2 - t^2"])
    result = eliminate(ideal, ["t"])
    assert result.ring.names == ("x1", "x2")
    assert [str(g) for g in result.groebner()] == ["x1^2 - x2"]
    assert MonomialOrder.default(result.ring) in result.cached_orders()


def test_intersection_of_coordinate_ideals():
    result = intersect(_ideal(R3, ["x1"]), _ideal(R3, ["x2"]))
    assert [str(g) for g in result.groebner()] == ["x1*x2"]
    folded = intersect_all([_ideal(R3, ["x1"]), _ideal(R3, ["x2"]), _ideal(R3, ["x3"])])
    assert [str(g) for g in folded.groebner()] == ["x1*x2*x3"]
    with pytest.raises(RingMismatchError):
        intersect(_ideal(R3, ["x1"]), _ideal(R4, ["x1"]))


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("first, second", [
    (["x1 - x2"], ["x2 - x3", "x1"]),
    (["x1 - x2", "x3"], ["x1 + x3", "x2^2"]),
])
def test_intersection_commutes_with_power_substitution(m, first, second):
    phi = power_map(R3, m)
    I, J = _ideal(R3, first), _ideal(R3, second)

    def pushed(ideal):
        return Ideal(R3, [substitute(g, phi) for g in ideal.gens])

    image_of_meet = pushed(intersect(I, J))
    meet_of_images = intersect(pushed(I), pushed(J))
    assert ideals_equal(image_of_meet, meet_of_images)


def test_intersection_agrees_with_membership():
    rng = random.Random(50)
    first = _ideal(R3, ["x1 - x2", "x3^2"])
    second = _ideal(R3, ["x1*x3 - x2", "x2^2 - x3"])
    both = intersect(first, second)
    monomials = [m for d in range(3) for m in monomials_of_degree(3, d)]
    for _ in range(50):
        coeffs = {m: rng.randint(-2, 2) for m in rng.sample(monomials, 3)}
        f = Polynomial(R3, coeffs)
        choice = rng.random()
        if choice < 0.3:
            f = f * first.gens[rng.randrange(2)] * second.gens[rng.randrange(2)]
        elif choice < 0.6:
            f = f * rng.choice(first.gens + second.gens)
        assert member(f, both) == (member(f, first) and member(f, second))


def test_ideal_equality_is_order_independent():
    first = _ideal(R3, ["x1^2 - x2", "x1*x2 - x3"])
    second = Ideal(R3, first.groebner(MonomialOrder.lex(R3)))
    for order in sampled_orders(R3, 3, seed=1):
        assert ideals_equal(first, second, order)
    assert not ideals_equal(first, _ideal(R3, ["x1^2 - x2"]))


def test_modular_screen():
    first = _ideal(R3, ["x1^2 - x2", "x1*x2 - x3"])
    second = Ideal(R3, first.groebner())
    assert modular_screen(first, second) is True
    assert modular_screen(first, _ideal(R3, ["x1 - x2"])) is False
    assert modular_screen(_ideal(R3, ["1/32003*x1"]), first) is None


def test_step_budget():
    ideal = _ideal(R2, ["x^2 - y", "x*y - 1"])
    with pytest.raises(BudgetExceededError):
        ideal.groebner(MonomialOrder.lex(R2), StepBudget(0))
    budget = StepBudget(1000)
    ideal.groebner(MonomialOrder.grevlex(R2), budget)
    assert 0 < budget.used <= 1000
    assert budget.remaining == 1000 - budget.used


def test_intersection_fold_keeps_partial_result():
    ideals = [_ideal(R3, [f"x1 - {k}*x2", f"x3 - {k + 1}*x2"]) for k in range(1, 6)]
    with pytest.raises(BudgetExceededError) as excinfo:
        intersect_all(ideals, None, StepBudget(3))
    assert isinstance(excinfo.value.partial, Ideal)


def test_kpolynomial_of_monomial_ideals():
    assert kpolynomial([(2, 0), (0, 2)], 2) == [1, 0, -2, 0, 1]
    assert kpolynomial([(1, 1)], 2) == [1, 0, -1]
    assert kpolynomial([], 3) == [1]
    assert kpolynomial([(0, 0, 0)], 3) == []
    data = hilbert_from_monomials([(2, 0, 0), (0, 2, 0), (1, 1, 1)], 3)
    assert data == HilbertData.from_numerator(kpolynomial([(2, 0, 0), (0, 2, 0), (1, 1, 1)], 3), 3)
    assert (data.codim, data.dim) == (2, 1)


def test_hilbert_data_of_hypersurface():
    data = hilbert(_ideal(R3, ["x1*x2"]))
    assert data.numerator == (1, 0, -1)
    assert data.reduced == (1, 1)
    assert (data.codim, data.dim, data.degree) == (1, 2, 2)
    assert data.values(3) == [1, 3, 5, 7]


def test_twisted_cubic():
    data = hilbert(_ideal(R4, ["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]))
    assert (data.dim, data.degree) == (2, 3)
    assert data.values(4) == [1, 4, 7, 10, 13]


@pytest.mark.parametrize("ring, texts", HOMOGENEOUS)
def test_hilbert_function_equals_initial_ideal(ring, texts):
    ideal = _ideal(ring, texts)
    for order in (MonomialOrder.grevlex(ring), MonomialOrder.lex(ring)):
        initial = initial_ideal(ideal, order)
        assert hf_values(ideal, order, 8) == hf_values(initial, order, 8)
        for d in range(5):
            assert ideal_piece_dimension(ideal, d) == graded_span_rank(ideal.gens, d)


def test_hilbert_needs_homogeneous_input():
    with pytest.raises(NonHomogeneousError):
        hilbert(_ideal(R2, ["x^2 - y"]))


def test_graded_span_rank():
    gens = [R3.parse("x1"), R3.parse("x2")]
    assert graded_span_rank(gens, 2) == 5
    assert ideal_piece_dimension(Ideal(R3, gens), 2) == 5
    assert len(list(monomials_of_degree(4, 3))) == 20
