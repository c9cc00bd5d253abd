#!/usr/bin/env python3
"""
Tests for set partitions, family generators, components and family verification
"""

from fractions import Fraction

import pytest

from arrangements import (
    Family,
    FamilySpec,
    LinearSubspace,
    SetPartition,
    ci_decomposition,
    ci_identity,
    components,
    cube_example_report,
    expected_component_count,
    expected_generator_degrees,
    factored_component_products,
    family_generators,
    partitions,
    power_component_ideals,
    regular_sequence_transport,
    sample_points,
    skeleton_initial_ideal,
    stirling2,
    truncation,
    truncation_example_report,
    truncation_rank_test,
    unique_block_partitions,
    verify_family,
)
from error_handler import (
    FactorMismatchError,
    HypothesisViolationError,
    InvalidSpecError,
    UnsupportedComponentsError,
)
from groebner import Ideal, StepBudget, hilbert
from output_formatter import EXIT_BUDGET, PASS, SKIPPED
from polyring import VarRing


def _statuses(report):
    return {c.name: c.status for c in report.checks}


def test_partitions_in_growth_string_order():
    assert [str(lam) for lam in partitions(3, 2)] == ["{1,2}{3}", "{1,3}{2}", "{1}{2,3}"]
    for n in range(1, 7):
        for k in range(1, n + 1):
            found = partitions(n, k)
            assert len(found) == stirling2(n, k)
            assert len(set(found)) == len(found)
            assert all(len(lam) == k and lam.n == n for lam in found)


def test_stirling_numbers():
    assert [stirling2(5, k) for k in range(1, 6)] == [1, 15, 25, 10, 1]
    assert stirling2(4, 2) == 7


def test_unique_block_partitions():
    found = unique_block_partitions(4, 3)
    assert len(found) == 4
    assert str(found[0]) == "{1,2,3}{4}"
    with pytest.raises(InvalidSpecError):
        unique_block_partitions(4, 1)


def test_set_partition_validation():
    lam = SetPartition(((3, 1), (2,)))
    assert str(lam) == "{1,3}{2}"
    assert lam.same_block(1, 3) and not lam.same_block(1, 2)
    assert lam.within_block_pairs() == [(1, 3)]
    with pytest.raises(InvalidSpecError):
        SetPartition(((1, 2), (4,)))


def test_family_spec_validation():
    with pytest.raises(InvalidSpecError):
        FamilySpec(Family.LILI, 3, 1)
    with pytest.raises(InvalidSpecError):
        FamilySpec(Family.KL, 3, 3)
    with pytest.raises(InvalidSpecError):
        FamilySpec(Family.SKELETON, 3, 3)
    with pytest.raises(InvalidSpecError):
        Family.parse("Braid")
    assert FamilySpec(Family.SKELETON, 3, 1, 5).m == 2
    assert FamilySpec(Family.STANLEY_REISNER, 3, 1, 5).m == 1


def test_family_spec_tokens():
    spec = FamilySpec.from_tokens("family=lili n=3 p=2 m=2")
    assert spec == FamilySpec(Family.LILI, 3, 2, 2)
    assert spec.to_tokens() == "family=LiLi n=3 p=2 m=2"
    assert FamilySpec.from_tokens(spec.to_tokens()) == spec
    for bad in ("family=LiLi n=3", "family=LiLi n=x p=2", "family=LiLi n=3 p=2 q=1"):
        with pytest.raises(InvalidSpecError):
            FamilySpec.from_tokens(bad)
    assert str(FamilySpec(Family.SKELETON, 2, 0).ring()) == "x0 x1 x2"


def test_skeleton_generators_in_canonical_text():
    gens = family_generators(FamilySpec(Family.SKELETON, 3, 1))
    assert len(gens) == 3
    assert str(gens[0]) == "x1^2*x2^2 - x0^2*x1^2 - x0^2*x2^2 + x0^4"
    assert expected_generator_degrees(FamilySpec(Family.SKELETON, 3, 1)) == [4, 4, 4]


def test_lili_and_kl_generators():
    lili = family_generators(FamilySpec(Family.LILI, 3, 2))
    ring = lili[0].ring
    assert lili == [ring.parse("(x1 - x2)*(x1 - x3)*(x2 - x3)")]
    kl = family_generators(FamilySpec(Family.KL, 3, 1))
    assert kl == [ring.parse(t) for t in ("x1 - x2", "x1 - x3", "x2 - x3")]
    kl2 = family_generators(FamilySpec(Family.KL, 3, 1, 2))
    assert kl2[1] == ring.parse("x1^2 - x3^2")
    spec = FamilySpec(Family.LILI, 4, 3, 2)
    assert [g.total_degree() for g in family_generators(spec)] == expected_generator_degrees(spec)


@pytest.mark.parametrize("spec, count", [
    (FamilySpec(Family.LILI, 3, 2, 1), 3),
    (FamilySpec(Family.LILI, 3, 2, 2), 6),
    (FamilySpec(Family.LILI, 4, 3, 2), 16),
    (FamilySpec(Family.KL, 3, 1, 1), 1),
    (FamilySpec(Family.KL, 3, 1, 2), 4),
    (FamilySpec(Family.KL, 4, 2, 2), 28),
    (FamilySpec(Family.SKELETON, 3, 1), 12),
    (FamilySpec(Family.SKELETON, 2, 0), 4),
    (FamilySpec(Family.STANLEY_REISNER, 3, 1), 3),
])
def test_component_counts(spec, count):
    comps = components(spec)
    assert len(comps) == count == expected_component_count(spec)
    assert len({c.key() for c in comps}) == count
    gens = family_generators(spec)
    for comp in comps:
        for point in sample_points(comp, 3):
            assert all(g.evaluate(point) == 0 for g in gens)


def test_component_labels_are_sorted_subsets():
    assert [c.label for c in components(FamilySpec(Family.LILI, 3, 2, 1))] == ["{1,2}", "{1,3}", "{2,3}"]
    assert [c.label for c in components(FamilySpec(Family.STANLEY_REISNER, 4, 1))][0] == "{1,2,3}"
    assert [c.label for c in components(FamilySpec(Family.SKELETON, 2, 0))] == [
        "{1,2} ++", "{1,2} +-", "{1,2} -+", "{1,2} --"]


def test_components_need_rational_roots():
    with pytest.raises(UnsupportedComponentsError):
        components(FamilySpec(Family.LILI, 3, 2, 3))


def test_power_component_ideals_are_complete_intersections():
    for piece in power_component_ideals(FamilySpec(Family.KL, 4, 2, 3)):
        data = hilbert(piece)
        assert data.codim == len(piece.gens)
        assert data.degree == 3 ** len(piece.gens)


def test_linear_subspace():
    ring = VarRing.standard(3)
    first = LinearSubspace.from_forms(ring, [ring.parse("x1 - x2"), ring.parse("x2 - x3")])
    second = LinearSubspace.from_forms(ring, [ring.parse("x1 - x3"), ring.parse("x1 + x2 - 2*x3")])
    assert first.key() == second.key()
    assert first.codim == 2 and first.params == ((1, 1, 1),)
    assert first.contains([Fraction(2)] * 3)
    with pytest.raises(InvalidSpecError):
        LinearSubspace.from_forms(ring, [ring.parse("x1 - x2"), ring.parse("2*x2 - 2*x1")])
    with pytest.raises(InvalidSpecError):
        LinearSubspace.from_forms(ring, [ring.parse("x1^2")])


def test_ci_decomposition():
    ring = VarRing.standard(3)
    q1 = ring.parse("x1^2 - x2^2")
    q2 = ring.parse("x3")
    pieces = ci_decomposition([(q1, [ring.parse("x1 - x2"), ring.parse("x1 + x2")]), (q2, [q2])])
    assert len(pieces) == 2
    with pytest.raises(FactorMismatchError):
        ci_decomposition([(q1, [ring.parse("x1 - x2")])])
    with pytest.raises(HypothesisViolationError):
        xy = ring.parse("x1*x2")
        ci_decomposition([(xy, [ring.var("x1"), ring.var("x2")]), (xy, [ring.var("x1"), ring.var("x2")])])


def test_choice_ideals_of_the_square_vertices():
    ring = VarRing.standard(2, with_x0=True)
    factored = [(ring.parse(f"x{i}^2 - x0^2"), [ring.parse(f"x{i} - x0"), ring.parse(f"x{i} + x0")])
                for i in (1, 2)]
    equal, choices = ci_identity(factored)
    assert equal
    assert len(choices) == 4
    vertices = components(FamilySpec(Family.SKELETON, 2, 0))
    assert {c.key() for c in choices} == {c.key() for c in vertices}


def test_choice_ideals_of_squared_differences():
    ring = VarRing.standard(3)
    factored = [(ring.parse(f"x1^2 - x{j}^2"), [ring.parse(f"x1 - x{j}"), ring.parse(f"x1 + x{j}")])
                for j in (2, 3)]
    equal, choices = ci_identity(factored)
    assert equal
    assert len(choices) == 4
    assert len({c.key() for c in choices}) == 4
    data = hilbert(Ideal(ring, [q for q, _ in factored]))
    assert (data.codim, data.degree) == (2, 4)


def test_factored_component_products_cover_rational_families():
    specs = [FamilySpec(Family.LILI, 3, 2, 2), FamilySpec(Family.KL, 4, 1, 2), FamilySpec(Family.SKELETON, 3, 1)]
    for spec in specs:
        pieces = factored_component_products(spec)
        assert [Ideal(spec.ring(), [q for q, _ in piece]).gens for piece in pieces] == \
            [piece.gens for piece in power_component_ideals(spec)]
        assert all(ci_identity(piece)[0] for piece in pieces)
    with pytest.raises(UnsupportedComponentsError):
        factored_component_products(FamilySpec(Family.LILI, 3, 2, 3))


def test_truncation_rank_test():
    assert truncation_rank_test(3, 2, 1, [1, -1, 1])
    assert not truncation_rank_test(3, 2, 1, [0, 0, 1])
    assert truncation_rank_test(3, 1, 2, [1, 2, 3]) is False
    with pytest.raises(InvalidSpecError):
        truncation_rank_test(3, 2, 1, [0, 1])


def test_truncation_of_braid_arrangement():
    ring = VarRing.standard(3)
    hyperplanes = [ring.parse(t) for t in ("x1 - x2", "x1 - x3", "x2 - x3")]
    flats = truncation(hyperplanes, 2)
    assert len(flats) == 1
    assert flats[0].params == ((1, 1, 1),)


def test_regular_sequence_transport():
    sr = family_generators(FamilySpec(Family.STANLEY_REISNER, 2, 0))
    skeleton = family_generators(FamilySpec(Family.SKELETON, 2, 0))
    ring = skeleton[0].ring
    images = {f"x{i}": ring.parse(f"x{i}^2 - x0^2") for i in (1, 2)}
    transported, regular = regular_sequence_transport(sr, images)
    assert regular and transported == skeleton
    r3 = VarRing.standard(3)
    _, regular = regular_sequence_transport(sr, {"x1": r3.parse("x1*x2"), "x2": r3.parse("x1*x3")})
    assert not regular


def test_skeleton_initial_ideal():
    initial = skeleton_initial_ideal(3, 1)
    assert [str(g) for g in initial.gens] == ["x1^2*x2^2", "x1^2*x3^2", "x2^2*x3^2"]


@pytest.mark.parametrize("spec", [
    FamilySpec(Family.KL, 3, 1, 1),
    FamilySpec(Family.KL, 3, 2, 1),
    FamilySpec(Family.LILI, 3, 2, 1),
    FamilySpec(Family.LILI, 3, 3, 1),
    FamilySpec(Family.LILI, 3, 2, 2),
    FamilySpec(Family.KL, 3, 1, 2),
    FamilySpec(Family.STANLEY_REISNER, 3, 1),
    FamilySpec(Family.SKELETON, 2, 0),
    FamilySpec(Family.SKELETON, 2, 1),
    FamilySpec(Family.SKELETON, 3, 2),
])
def test_verify_family_passes(spec):
    report = verify_family(spec)
    assert report.passed, [c.to_dict() for c in report.failures]
    assert report.exit_code == 0
    statuses = _statuses(report)
    assert statuses["generator-degrees"] == PASS
    assert statuses["oracle-equality"] == PASS
    assert statuses["choice-ideal-identity"] == PASS


@pytest.mark.parametrize("spec", [FamilySpec(Family.LILI, 3, 2, 3), FamilySpec(Family.KL, 3, 1, 3)])
def test_verify_family_for_m3_uses_rational_surrogates(spec):
    report = verify_family(spec)
    statuses = _statuses(report)
    assert report.passed
    assert statuses["oracle-equality"] == SKIPPED
    assert statuses["power-component-identity"] == PASS
    assert statuses["complete-intersection-components"] == PASS
    assert statuses["substitution-transport"] == PASS


def test_skeleton_universal_groebner_sample():
    report = verify_family(FamilySpec(Family.SKELETON, 3, 1), sample_orders=4, seed=9)
    groebner_checks = [c for c in report.checks if c.name.startswith("groebner[")]
    assert len(groebner_checks) == 6
    assert all(c.status == PASS for c in groebner_checks)
    assert _statuses(report)["hilbert-function"] == PASS
    assert _statuses(report)["stanley-reisner-transport"] == PASS
    assert report.data['sample_orders'] == {'count': 4, 'seed': 9}


def test_verify_family_reports_exhausted_budget():
    report = verify_family(FamilySpec(Family.LILI, 3, 2, 1), budget=StepBudget(0))
    assert _statuses(report)["oracle-equality"] == SKIPPED
    assert report.budget_exceeded
    assert report.exit_code == EXIT_BUDGET


def _desk_scale_specs(max_n=4):
    for n in range(2, max_n + 1):
        for m in (1, 2):
            specs = [FamilySpec(Family.LILI, n, p, m) for p in range(2, n + 1)]
            specs += [FamilySpec(Family.KL, n, p, m) for p in range(1, n)]
            yield from specs
        for p in range(n):
            yield FamilySpec(Family.SKELETON, n, p)
            yield FamilySpec(Family.STANLEY_REISNER, n, p)


@pytest.mark.slow
@pytest.mark.parametrize("spec", list(_desk_scale_specs()), ids=str)
def test_every_desk_scale_family_verifies(spec):
    report = verify_family(spec, sample_orders=20, seed=0)
    assert report.passed, [c.to_dict() for c in report.failures]
    statuses = _statuses(report)
    assert statuses["oracle-equality"] == PASS
    assert statuses["choice-ideal-identity"] == PASS


def test_cube_example():
    report = cube_example_report()
    assert report.passed
    assert len(report.data['truncation_points']) == 6
    extra = [c for c in report.checks if c.name.startswith("extra-point-off-variety")]
    assert len(extra) == 2 and all(c.witness for c in extra)


def test_truncation_example():
    report = truncation_example_report()
    assert report.passed
    statuses = _statuses(report)
    assert statuses["rank-test-rejects-point"] == PASS
    assert statuses["generator-nonzero"] == PASS
    assert statuses["variety-misses-point"] == PASS
