#!/usr/bin/env python3
"""
Subspace arrangements: set partitions, the generator families, their linear
components, the brute-force intersection oracle and the structured
decompositions used to verify the families.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from config import config, get_sample_coefficients
from error_handler import (
    BudgetExceededError,
    FactorMismatchError,
    HypothesisViolationError,
    InvalidSpecError,
    UnsupportedComponentsError,
    handle_errors,
    monitor_performance,
)
from groebner import (
    Ideal,
    StepBudget,
    hilbert,
    hilbert_from_monomials,
    ideals_equal,
    intersect_all,
    is_groebner,
    sampled_orders,
)
from linalg import rank, rref, nullspace
from output_formatter import VerificationReport
from performance_monitor import PerformanceMonitor
from polyring import MonomialOrder, Polynomial, VarRing, power_map, product

logger = logging.getLogger("arrangements.families")


# ---------- Set partitions ----------
@dataclass(frozen=True)
class SetPartition:
    """Partition of {1..n}; blocks sorted internally and by least element"""

    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(not b for b in blocks):
            raise InvalidSpecError("partition blocks must be nonempty")
        elements = [i for b in blocks for i in b]
        if sorted(elements) != list(range(1, len(elements) + 1)):
            raise InvalidSpecError(f"blocks {blocks} do not partition 1..{len(elements)}")
        object.__setattr__(self, 'blocks', blocks)

    @classmethod
    def from_growth_string(cls, rgs: Sequence[int]) -> "SetPartition":
        blocks: Dict[int, List[int]] = {}
        for element, label in enumerate(rgs, 1):
            blocks.setdefault(label, []).append(element)
        return cls(tuple(tuple(b) for b in blocks.values()))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def same_block(self, i: int, j: int) -> bool:
        return any(i in b and j in b for b in self.blocks)

    def within_block_pairs(self) -> List[Tuple[int, int]]:
        return [pair for b in self.blocks for pair in itertools.combinations(b, 2)]

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _growth_strings(n: int, blocks: int) -> Iterator[List[int]]:
    """Restricted growth strings of length n using exactly `blocks` labels, in lex order"""
    rgs = [0] * n

    def extend(position: int, used: int) -> Iterator[List[int]]:
        if position == n:
            if used == blocks:
                yield list(rgs)
            return
        # remaining positions must still be able to open the missing labels
        if blocks - used > n - position:
            return
        for label in range(min(used + 1, blocks)):
            rgs[position] = label
            yield from extend(position + 1, max(used, label + 1))

    if n == 0:
        return
    yield from extend(1, 1)


def partitions(n: int, blocks: int) -> List[SetPartition]:
    """All partitions of {1..n} into exactly `blocks` blocks"""
    if not 1 <= blocks <= n:
        raise InvalidSpecError(f"block count {blocks} outside 1..{n}")
    return [SetPartition.from_growth_string(rgs) for rgs in _growth_strings(n, blocks)]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind"""
    row = [1] + [0] * k
    for _ in range(n):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, k + 1)]
    return row[k]


def unique_block_partitions(n: int, size: int) -> List[SetPartition]:
    """Partitions whose only nonsingleton block has the given size"""
    if not 2 <= size <= n:
        raise InvalidSpecError(f"block size {size} outside 2..{n}")
    result = []
    for block in itertools.combinations(range(1, n + 1), size):
        singles = tuple((i,) for i in range(1, n + 1) if i not in block)
        result.append(SetPartition((block,) + singles))
    return result


# ---------- Family specifications ----------
class Family(Enum):
    LILI = "LiLi"
    KL = "KL"
    SKELETON = "Skeleton"
    STANLEY_REISNER = "StanleyReisner"

    @classmethod
    def parse(cls, text: str) -> "Family":
        for family in cls:
            if family.value.lower() == text.strip().lower():
                return family
        raise InvalidSpecError(f"unknown family {text!r} (expected one of {', '.join(f.value for f in cls)})")


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int
    p: int
    m: int = 1

    def __post_init__(self):
        family = self.family if isinstance(self.family, Family) else Family.parse(str(self.family))
        object.__setattr__(self, 'family', family)
        n, p, m = self.n, self.p, self.m
        if n < 1:
            raise InvalidSpecError(f"n must be positive, got {n}")
        if m < 1:
            raise InvalidSpecError(f"m must be at least 1, got {m}")
        if family is Family.LILI and not 2 <= p <= n:
            raise InvalidSpecError(f"LiLi needs 2 <= p <= n, got n={n} p={p}")
        if family is Family.KL and not 1 <= p < n:
            raise InvalidSpecError(f"KL needs 1 <= p < n, got n={n} p={p}")
        if family in (Family.SKELETON, Family.STANLEY_REISNER) and not 0 <= p < n:
            raise InvalidSpecError(f"{family.value} needs 0 <= p < n, got n={n} p={p}")
        if family is Family.SKELETON:
            object.__setattr__(self, 'm', 2)
        elif family is Family.STANLEY_REISNER:
            object.__setattr__(self, 'm', 1)

    @classmethod
    def from_tokens(cls, tokens: Union[str, Iterable[str]]) -> "FamilySpec":
        """Parse `family=LiLi n=3 p=2 m=2`"""
        if isinstance(tokens, str):
            tokens = tokens.split()
        fields: Dict[str, str] = {}
        for token in tokens:
            key, sep, value = token.partition('=')
            if not sep or key not in ('family', 'n', 'p', 'm'):
                raise InvalidSpecError(f"bad family token {token!r}")
            fields[key] = value
        if not {'family', 'n', 'p'} <= fields.keys():
            raise InvalidSpecError("family, n and p are required")
        try:
            return cls(Family.parse(fields['family']), int(fields['n']), int(fields['p']),
                       int(fields.get('m', 1)))
        except ValueError as e:
            if isinstance(e, InvalidSpecError):
                raise
            raise InvalidSpecError(f"non-integer parameter in {' '.join(tokens)}") from None

    def to_tokens(self) -> str:
        return f"family={self.family.value} n={self.n} p={self.p} m={self.m}"

    def ring(self) -> VarRing:
        return VarRing.standard(self.n, with_x0=self.family is Family.SKELETON)

    def __str__(self) -> str:
        return self.to_tokens()


# ---------- Generators ----------
def _pair_product(ring: VarRing, pairs: Iterable[Tuple[int, int]], m: int) -> Polynomial:
    return product((ring.var(f"x{i}") ** m - ring.var(f"x{j}") ** m for i, j in pairs), ring)


def generator_partitions(spec: FamilySpec) -> List[SetPartition]:
    """Index partitions of the LiLi and KL generators"""
    if spec.family is Family.LILI:
        return partitions(spec.n, spec.p - 1)
    if spec.family is Family.KL:
        return unique_block_partitions(spec.n, spec.p + 1)
    raise InvalidSpecError(f"{spec.family.value} generators are not indexed by partitions")


def skeleton_factor(ring: VarRing, i: int) -> Polynomial:
    """F_i = x_i^2 - x0^2"""
    return ring.var(f"x{i}") ** 2 - ring.var("x0") ** 2


def family_generators(spec: FamilySpec) -> List[Polynomial]:
    ring = spec.ring()
    if spec.family in (Family.LILI, Family.KL):
        return [_pair_product(ring, lam.within_block_pairs(), spec.m) for lam in generator_partitions(spec)]
    subsets = itertools.combinations(range(1, spec.n + 1), spec.p + 1)
    if spec.family is Family.SKELETON:
        return [product((skeleton_factor(ring, i) for i in sigma), ring) for sigma in subsets]
    return [product((ring.var(f"x{i}") for i in sigma), ring) for sigma in subsets]


def expected_generator_degrees(spec: FamilySpec) -> List[int]:
    if spec.family in (Family.LILI, Family.KL):
        return [spec.m * sum(comb(len(b), 2) for b in lam.blocks) for lam in generator_partitions(spec)]
    count = comb(spec.n, spec.p + 1)
    step = 2 if spec.family is Family.SKELETON else 1
    return [step * (spec.p + 1)] * count


def skeleton_initial_ideal(n: int, p: int) -> Ideal:
    """<prod_{i in sigma} x_i^2 : |sigma| = p+1> in k[x0..xn], the squared Stanley-Reisner monomials"""
    ring = VarRing.standard(n, with_x0=True)
    gens = [product((ring.var(f"x{i}") ** 2 for i in sigma), ring)
            for sigma in itertools.combinations(range(1, n + 1), p + 1)]
    return Ideal(ring, gens)


# ---------- Linear components ----------
@dataclass(frozen=True)
class LinearSubspace:
    """Linear subspace cut out by independent linear forms; params span its points"""

    ring: VarRing
    forms: Tuple[Polynomial, ...]
    params: Optional[Tuple[Tuple[int, ...], ...]] = None
    label: str = ""

    def __post_init__(self):
        for form in self.forms:
            if form.ring != self.ring or form.total_degree() != 1 or not form.is_homogeneous():
                raise InvalidSpecError(f"{form} is not a linear form over [{self.ring}]")
        if rank(self.coefficient_matrix()) != len(self.forms):
            raise InvalidSpecError(f"forms {', '.join(map(str, self.forms))} are dependent")

    @classmethod
    def from_forms(cls, ring: VarRing, forms: Sequence[Polynomial], label: str = "") -> "LinearSubspace":
        matrix = [cls._row(ring, f) for f in forms]
        basis = nullspace(matrix, ring.count) if matrix else [
            [1 if k == i else 0 for k in range(ring.count)] for i in range(ring.count)]
        return cls(ring, tuple(forms), tuple(tuple(v) for v in basis), label)

    @staticmethod
    def _row(ring: VarRing, form: Polynomial) -> List[Fraction]:
        row = [Fraction(0)] * ring.count
        for mono, c in form.coeffs.items():
            if sum(mono) != 1:
                raise InvalidSpecError(f"{form} is not a linear form over [{ring}]")
            row[mono.index(1)] = c
        return row

    def coefficient_matrix(self) -> List[List[Fraction]]:
        return [self._row(self.ring, f) for f in self.forms]

    @property
    def codim(self) -> int:
        return len(self.forms)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.forms)

    def key(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Canonical reduced-echelon identity of the subspace"""
        reduced, _ = rref(self.coefficient_matrix())
        return tuple(tuple(row) for row in reduced)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(f.evaluate(point) == 0 for f in self.forms)

    def __str__(self) -> str:
        return "<" + ", ".join(str(f) for f in self.forms) + ">"


def _linear(ring: VarRing, coeffs: Dict[str, int]) -> Polynomial:
    exps = {}
    for name, c in coeffs.items():
        mono = [0] * ring.count
        mono[ring.index(name)] = 1
        exps[tuple(mono)] = c
    return Polynomial(ring, exps)


def _sign_vectors(length: int) -> Iterator[Tuple[int, ...]]:
    return itertools.product((1, -1), repeat=length)


def _block_forms(ring: VarRing, block: Sequence[int], signs: Optional[Sequence[int]] = None) -> List[Polynomial]:
    """Forms making the coordinates of a block equal (m=1) or equal up to the given signs (m=2)"""
    if signs is None:
        return [_linear(ring, {f"x{a}": 1, f"x{b}": -1}) for a, b in zip(block, block[1:])]
    head = block[0]
    return [_linear(ring, {f"x{head}": 1, f"x{b}": -s}) for b, s in zip(block[1:], signs)]


def _subset_label(sigma: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(sigma))) + "}"


def _sign_label(signs: Sequence[int]) -> str:
    return "".join('+' if s > 0 else '-' for s in signs)


def components(spec: FamilySpec) -> List[LinearSubspace]:
    """Linear components of the arrangement; rational only for m <= 2"""
    ring = spec.ring()
    n, p, m = spec.n, spec.p, spec.m
    if spec.family in (Family.LILI, Family.KL) and m >= 3:
        raise UnsupportedComponentsError(
            f"components for m={m} need primitive {m}-th roots of unity")
    result = []
    if spec.family is Family.LILI:
        for sigma in itertools.combinations(range(1, n + 1), p):
            if m == 1:
                result.append(LinearSubspace.from_forms(ring, _block_forms(ring, sigma), _subset_label(sigma)))
                continue
            for signs in _sign_vectors(p - 1):
                result.append(LinearSubspace.from_forms(
                    ring, _block_forms(ring, sigma, signs), f"{_subset_label(sigma)} {_sign_label(signs)}"))
    elif spec.family is Family.KL:
        for lam in partitions(n, p):
            if m == 1:
                forms = [f for b in lam.blocks for f in _block_forms(ring, b)]
                result.append(LinearSubspace.from_forms(ring, forms, str(lam)))
                continue
            sizes = [len(b) - 1 for b in lam.blocks]
            for signs in _sign_vectors(sum(sizes)):
                forms, offset = [], 0
                for b, size in zip(lam.blocks, sizes):
                    forms.extend(_block_forms(ring, b, signs[offset:offset + size]))
                    offset += size
                result.append(LinearSubspace.from_forms(ring, forms, f"{lam} {_sign_label(signs)}"))
    elif spec.family is Family.SKELETON:
        for sigma in itertools.combinations(range(1, n + 1), n - p):
            for signs in _sign_vectors(len(sigma)):
                forms = [_linear(ring, {f"x{i}": 1, "x0": -s}) for i, s in zip(sigma, signs)]
                result.append(LinearSubspace.from_forms(ring, forms, f"{_subset_label(sigma)} {_sign_label(signs)}"))
    else:
        for sigma in itertools.combinations(range(1, n + 1), n - p):
            forms = [ring.var(f"x{i}") for i in sigma]
            result.append(LinearSubspace.from_forms(ring, forms, _subset_label(sigma)))
    return result


def expected_component_count(spec: FamilySpec) -> int:
    n, p, m = spec.n, spec.p, spec.m
    if spec.family is Family.LILI:
        return comb(n, p) * 2 ** ((p - 1) * (m - 1))
    if spec.family is Family.KL:
        return stirling2(n, p) * 2 ** ((n - p) * (m - 1))
    if spec.family is Family.SKELETON:
        return 2 ** (n - p) * comb(n, p)
    return comb(n, p)


def power_component_ideals(spec: FamilySpec) -> List[Ideal]:
    """Rational ideals whose intersection the generators should cut out, for any m.

    LiLi: <x_i^m - x_j^m : i, j in sigma> per p-subset; KL: the same per block of
    each p-block partition; Skeleton: <x_i^2 - x0^2 : i in sigma>; Stanley-Reisner:
    the coordinate subspaces.
    """
    ring = spec.ring()
    n, p, m = spec.n, spec.p, spec.m

    def chain(block: Sequence[int]) -> List[Polynomial]:
        return [ring.var(f"x{a}") ** m - ring.var(f"x{b}") ** m for a, b in zip(block, block[1:])]

    if spec.family is Family.LILI:
        return [Ideal(ring, chain(sigma)) for sigma in itertools.combinations(range(1, n + 1), p)]
    if spec.family is Family.KL:
        return [Ideal(ring, [f for b in lam.blocks for f in chain(b)]) for lam in partitions(n, p)]
    subsets = itertools.combinations(range(1, n + 1), n - p)
    if spec.family is Family.SKELETON:
        return [Ideal(ring, [skeleton_factor(ring, i) for i in sigma]) for sigma in subsets]
    return [Ideal(ring, [ring.var(f"x{i}") for i in sigma]) for sigma in subsets]


Factored = List[Tuple[Polynomial, List[Polynomial]]]


def factored_component_products(spec: FamilySpec) -> List[Factored]:
    """The generators of each rational component ideal, paired with their linear factors"""
    ring = spec.ring()
    n, p, m = spec.n, spec.p, spec.m
    if spec.family in (Family.LILI, Family.KL) and m >= 3:
        raise UnsupportedComponentsError(
            f"x_i^{m} - x_j^{m} only splits over primitive {m}-th roots of unity")

    def chain(block: Sequence[int]) -> Factored:
        result = []
        for a, b in zip(block, block[1:]):
            minus = _linear(ring, {f"x{a}": 1, f"x{b}": -1})
            if m == 1:
                result.append((minus, [minus]))
            else:
                result.append((minus * _linear(ring, {f"x{a}": 1, f"x{b}": 1}),
                               [minus, _linear(ring, {f"x{a}": 1, f"x{b}": 1})]))
        return result

    if spec.family is Family.LILI:
        pieces = [chain(sigma) for sigma in itertools.combinations(range(1, n + 1), p)]
    elif spec.family is Family.KL:
        pieces = [[q for b in lam.blocks for q in chain(b)] for lam in partitions(n, p)]
    elif spec.family is Family.SKELETON:
        pieces = [[(skeleton_factor(ring, i), [_linear(ring, {f"x{i}": 1, "x0": -1}),
                                               _linear(ring, {f"x{i}": 1, "x0": 1})]) for i in sigma]
                  for sigma in itertools.combinations(range(1, n + 1), n - p)]
    else:
        pieces = [[(ring.var(f"x{i}"), [ring.var(f"x{i}")]) for i in sigma]
                  for sigma in itertools.combinations(range(1, n + 1), n - p)]
    return [piece for piece in pieces if piece]


def brute_force_ideal(comps: Sequence[LinearSubspace], order: Optional[MonomialOrder] = None,
                      budget: Optional[StepBudget] = None) -> Ideal:
    """Vanishing ideal of the union: the intersection of the component ideals"""
    if not comps:
        raise InvalidSpecError("brute-force oracle needs at least one component")
    return intersect_all([c.ideal() for c in comps], order, budget)


def sample_points(component: LinearSubspace, count: int,
                  coefficients: Optional[Sequence[int]] = None) -> List[List[Fraction]]:
    """Integer combinations of the parametric basis with coefficients from a fixed list"""
    if component.params is None:
        raise InvalidSpecError(f"component {component} has no parametric description")
    coefficients = list(coefficients or get_sample_coefficients())
    basis = component.params
    points: List[List[Fraction]] = []
    if count <= 0:
        return points
    for combo in itertools.product(coefficients, repeat=len(basis)):
        point = [Fraction(sum(a * v[k] for a, v in zip(combo, basis))) for k in range(component.ring.count)]
        points.append(point)
        if len(points) >= count:
            break
    return points


# ---------- Structured decompositions ----------
def ci_decomposition(factored: Sequence[Tuple[Polynomial, Sequence[Polynomial]]]) -> List[LinearSubspace]:
    """Choice ideals, one linear factor picked from each product.

    Each entry pairs a product with its linear factors; the choice ideals must be
    pairwise distinct.
    """
    if not factored:
        raise InvalidSpecError("no products given")
    ring = factored[0][0].ring
    for q, factors in factored:
        expanded = product(factors, ring)
        if not q or not expanded or expanded.scale(q.terms[0].coeff / expanded.terms[0].coeff) != q:
            raise FactorMismatchError(f"product of the given factors is not {q}")
        for f in factors:
            if f.total_degree() != 1 or not f.is_homogeneous():
                raise FactorMismatchError(f"factor {f} of {q} is not a linear form")
    result: List[LinearSubspace] = []
    seen = set()
    for choice in itertools.product(*(factors for _, factors in factored)):
        try:
            subspace = LinearSubspace.from_forms(ring, list(choice), " ".join(f"({f})" for f in choice))
        except InvalidSpecError:
            raise HypothesisViolationError(
                f"factors {', '.join(map(str, choice))} are dependent; the products are not a regular sequence"
            ) from None
        key = subspace.key()
        if key in seen:
            raise HypothesisViolationError(f"choice ideal {subspace} occurs twice")
        seen.add(key)
        result.append(subspace)
    return result


def ci_identity(factored: Factored, order: Optional[MonomialOrder] = None,
                budget: Optional[StepBudget] = None) -> Tuple[bool, List[LinearSubspace]]:
    """Whether the products generate the intersection of their choice ideals"""
    choices = ci_decomposition(factored)
    products = Ideal(choices[0].ring, [q for q, _ in factored])
    return ideals_equal(products, brute_force_ideal(choices, order, budget), order), choices


def truncation_rank_test(n: int, m: int, p: int, point: Sequence[Fraction]) -> bool:
    """True iff the rows (1, x_i^m, ..., x_i^{pm}) at point have rank <= p"""
    if len(point) != n:
        raise InvalidSpecError(f"point has {len(point)} coordinates, expected {n}")
    matrix = [[Fraction(x) ** (k * m) for k in range(p + 1)] for x in point]
    return rank(matrix) <= p


def truncation(hyperplanes: Sequence[Polynomial], codim: int) -> List[LinearSubspace]:
    """Codimension-`codim` flats of a central hyperplane arrangement"""
    if not hyperplanes:
        return []
    ring = hyperplanes[0].ring
    result, seen = [], set()
    for choice in itertools.combinations(hyperplanes, codim):
        matrix = [LinearSubspace._row(ring, h) for h in choice]
        if rank(matrix) != codim:
            continue
        reduced, _ = rref(matrix)
        key = tuple(tuple(row) for row in reduced)
        if key in seen:
            continue
        seen.add(key)
        forms = [Polynomial(ring, {tuple(1 if k == j else 0 for k in range(ring.count)): c
                                   for j, c in enumerate(row) if c}) for row in reduced]
        result.append(LinearSubspace.from_forms(ring, forms))
    return result


def regular_sequence_transport(gens: Sequence[Polynomial], images: Dict[str, Polynomial]) -> Tuple[List[Polynomial], bool]:
    """Substitute `images` for the variables of gens; also report whether the
    images form a regular sequence (homogeneous: codim equals their number)"""
    transported = [g.substitute(images) for g in gens]
    targets = list(images.values())
    ring = targets[0].ring
    data = hilbert(Ideal(ring, targets))
    return transported, data.codim == len(targets)


# ---------- Verification ----------
def _difference_witness(first: Ideal, second: Ideal, order: Optional[MonomialOrder]) -> Optional[str]:
    for g in second.groebner(order):
        if not first.contains(g, order):
            return str(g)
    for g in first.groebner(order):
        if not second.contains(g, order):
            return str(g)
    return None


def _check_equal(report: VerificationReport, name: str, first: Ideal, second: Ideal,
                 order: Optional[MonomialOrder], detail: str):
    equal = ideals_equal(first, second, order)
    report.add(name, equal, None if equal else _difference_witness(first, second, order), detail)


@handle_errors("verify_family")
@monitor_performance("verify_family")
def verify_family(spec: FamilySpec, order: Optional[MonomialOrder] = None, sample_orders: int = 0,
                  seed: int = 0, budget: Optional[StepBudget] = None) -> VerificationReport:
    """Exact checks of a family's generators against its arrangement"""
    report = VerificationReport(spec.to_tokens())
    monitor = PerformanceMonitor()
    ring = spec.ring()
    order = order or MonomialOrder.default(ring)
    budget = budget or StepBudget.from_config()

    with monitor.phase("construct"):
        gens = family_generators(spec)
    ideal = Ideal(ring, gens)
    report.data['ring'] = str(ring)
    report.data['order'] = order.describe(ring)
    report.data['generators'] = [str(g) for g in gens]

    degrees = [g.total_degree() for g in gens]
    report.add("generator-degrees", degrees == expected_generator_degrees(spec),
               detail=f"{len(gens)} generators of degrees {sorted(set(degrees))}")

    rational = spec.family in (Family.SKELETON, Family.STANLEY_REISNER) or spec.m <= 2
    if rational:
        with monitor.phase("components"):
            comps = components(spec)
        expected = expected_component_count(spec)
        report.add("component-count", len(comps) == expected,
                   detail=f"{len(comps)} subspaces, expected {expected}")
        report.data['components'] = [str(c) for c in comps]
        with monitor.phase("vanishing"):
            per_component = int(config.get("arrangements.samples_per_component", 5))
            failure = None
            for comp in comps:
                for point in sample_points(comp, per_component):
                    bad = next((g for g in gens if g.evaluate(point) != 0), None)
                    if bad is not None:
                        failure = (bad, comp, point)
                        break
                if failure:
                    break
            report.add("vanishing", failure is None,
                       witness=str(failure[0]) if failure else None,
                       detail=(f"nonzero on {failure[1]} at {[str(x) for x in failure[2]]}" if failure
                               else f"{per_component} samples on each of {len(comps)} components"))
        with monitor.phase("oracle"):
            try:
                oracle = brute_force_ideal(comps, order, budget)
                _check_equal(report, "oracle-equality", ideal, oracle, order,
                             "generators vs intersection of component ideals")
            except BudgetExceededError as exc:
                report.budget("oracle-equality", str(exc))
        with monitor.phase("choice-ideals"):
            try:
                broken = None
                pieces = factored_component_products(spec)
                for piece in pieces:
                    equal, _ = ci_identity(piece, order, budget)
                    if not equal:
                        broken = piece
                        break
                report.add("choice-ideal-identity", broken is None,
                           witness=", ".join(str(q) for q, _ in broken) if broken else None,
                           detail=f"{len(pieces)} component ideals vs the intersection of their choice ideals")
            except BudgetExceededError as exc:
                report.budget("choice-ideal-identity", str(exc))
    else:
        report.skip("oracle-equality", f"components for m={spec.m} are not rational")
        report.notes.append(f"m={spec.m}: verified through the rational ideals <x_i^m - x_j^m>")

    with monitor.phase("power-components"):
        pieces = power_component_ideals(spec)
        bad_piece = None
        for piece in pieces:
            data = hilbert(piece)
            expected_degree = prod(g.total_degree() for g in piece.gens)
            if data.codim != len(piece.gens) or data.degree != expected_degree:
                bad_piece = (piece, data, expected_degree)
                break
        report.add("complete-intersection-components", bad_piece is None,
                   witness=", ".join(str(g) for g in bad_piece[0].gens) if bad_piece else None,
                   detail=(f"codim {bad_piece[1].codim}, degree {bad_piece[1].degree}, expected degree {bad_piece[2]}"
                           if bad_piece else f"{len(pieces)} ideals with codim = #generators and degree = product of degrees"))
        if spec.m == 1 and spec.family is not Family.SKELETON:
            report.skip("power-component-identity", "m=1: coincides with oracle-equality")
        else:
            try:
                folded = intersect_all(pieces, order, budget)
                _check_equal(report, "power-component-identity", ideal, folded, order,
                             "generators vs intersection of the rational component ideals")
            except BudgetExceededError as exc:
                report.budget("power-component-identity", str(exc))

    if spec.family in (Family.LILI, Family.KL) and spec.m > 1:
        base = family_generators(FamilySpec(spec.family, spec.n, spec.p, 1))
        images = power_map(ring, spec.m)
        transported = [g.substitute(images) for g in base]
        mismatch = next((g for g, h in zip(gens, transported) if g != h), None)
        report.add("substitution-transport", mismatch is None and len(base) == len(gens),
                   witness=str(mismatch) if mismatch is not None else None,
                   detail=f"generators for m={spec.m} vs x_i -> x_i^{spec.m} applied to m=1")

    if spec.family is Family.SKELETON:
        with monitor.phase("skeleton"):
            _skeleton_checks(report, spec, gens, sample_orders, seed)

    report.timings = monitor.summary()
    logger.info(f"{spec}: {report.counts()}")
    return report


def _skeleton_checks(report: VerificationReport, spec: FamilySpec, gens: List[Polynomial],
                     sample_orders: int, seed: int):
    ring = spec.ring()
    n, p = spec.n, spec.p
    x0_least = MonomialOrder.x0_least(ring)

    sigmas = list(itertools.combinations(range(1, n + 1), p + 1))
    squares = [product((ring.var(f"x{i}") ** 2 for i in sigma), ring) for sigma in sigmas]
    wrong = next((g for g, sq in zip(gens, squares)
                  if g.leading_monomial(x0_least) != sq.leading_monomial(x0_least)), None)
    report.add("initial-terms", wrong is None, witness=str(wrong) if wrong is not None else None,
               detail="leading monomial of each generator is prod x_i^2")

    for order in sampled_orders(ring, sample_orders, seed):
        report.add(f"groebner[{order.describe(ring)}]", is_groebner(gens, order))
    if sample_orders:
        report.data['sample_orders'] = {'count': sample_orders, 'seed': seed}

    D = 2 * n + 2
    skeleton_hf = hilbert(Ideal(ring, gens), x0_least).values(D)
    initial = skeleton_initial_ideal(n, p)
    monomial_hf = hilbert_from_monomials([g.leading_monomial() for g in initial.gens], ring.count).values(D)
    report.add("hilbert-function", skeleton_hf == monomial_hf,
               witness=None if skeleton_hf == monomial_hf else f"{skeleton_hf} vs {monomial_hf}",
               detail=f"HF of the skeleton ideal and its squared monomial ideal agree in degrees 0..{D}")
    report.data['hilbert_function'] = skeleton_hf

    sr = family_generators(FamilySpec(Family.STANLEY_REISNER, n, p))
    images = {f"x{i}": skeleton_factor(ring, i) for i in range(1, n + 1)}
    transported, regular = regular_sequence_transport(sr, images)
    report.add("stanley-reisner-transport", regular and transported == gens,
               detail="x_i -> x_i^2 - x0^2 carries the squarefree generators onto the skeleton generators")


# ---------- Worked examples ----------
def cube_example_report() -> VerificationReport:
    """The square's vertices against the 2-truncation of its four edge lines"""
    report = VerificationReport("cube-example n=2 p=0")
    monitor = PerformanceMonitor()
    spec = FamilySpec(Family.SKELETON, 2, 0)
    ring = spec.ring()
    gens = family_generators(spec)
    with monitor.phase("points"):
        points = components(spec)
        report.add("skeleton-points", len(points) == 4,
                   detail=", ".join(f"[{':'.join(map(str, c.params[0]))}]" for c in points))
        _check_equal(report, "skeleton-ideal", Ideal(ring, gens), brute_force_ideal(points), None,
                     "skeleton ideal vs the four point ideals")

    with monitor.phase("truncation"):
        lines = [_linear(ring, {f"x{i}": 1, "x0": -s}) for i in (1, 2) for s in (1, -1)]
        flats = truncation(lines, 2)
        projective = [tuple(c.params[0]) for c in flats]
        report.data['truncation_points'] = [f"[{':'.join(map(str, pt))}]" for pt in projective]
        report.add("truncation-points", len(flats) == 6, detail=f"{len(flats)} points")
        report.add("contains-[0:0:1]", (0, 0, 1) in projective)
        report.add("contains-[0:1:0]", (0, 1, 0) in projective)
        vertex_keys = {c.key() for c in points}
        extra = [c for c in flats if c.key() not in vertex_keys]
        for c in extra:
            point = [Fraction(x) for x in c.params[0]]
            witness = next((g for g in gens if g.evaluate(point) != 0), None)
            label = f"[{':'.join(map(str, c.params[0]))}]"
            report.add(f"extra-point-off-variety{label}", witness is not None,
                       witness=str(witness) if witness is not None else None)
    report.timings = monitor.summary()
    return report


def truncation_example_report() -> VerificationReport:
    """Points of the truncation of x_i = ±x_j that miss the KL(3,1,2) variety"""
    report = VerificationReport("truncation-example n=3 m=2 p=1")
    monitor = PerformanceMonitor()
    spec = FamilySpec(Family.KL, 3, 1, 2)
    ring = spec.ring()
    gens = family_generators(spec)
    point = [Fraction(0), Fraction(0), Fraction(1)]
    with monitor.phase("truncation"):
        hyperplanes = [_linear(ring, {f"x{i}": 1, f"x{j}": -s})
                       for i, j in itertools.combinations(range(1, 4), 2) for s in (1, -1)]
        flats = truncation(hyperplanes, spec.n - spec.p)
        axis = LinearSubspace.from_forms(ring, [ring.var("x1"), ring.var("x2")])
        report.data['truncation_components'] = [str(c) for c in flats]
        report.add("truncation-contains-<x1, x2>", axis.key() in {c.key() for c in flats})
        report.add("point-on-truncation", axis.contains(point), detail="(0,0,1) lies on <x1, x2>")
    with monitor.phase("rank-test"):
        rank_ok = truncation_rank_test(3, 2, 1, point)
        report.add("rank-test-rejects-point", not rank_ok,
                   detail="rows (1, x_i^2) at (0,0,1) have rank 2")
        witness = next((g for g in gens if g.evaluate(point) != 0), None)
        value = witness.evaluate(point) if witness is not None else None
        report.add("generator-nonzero", value == -1, witness=str(witness) if witness is not None else None,
                   detail=f"value {value}")
        variety = components(spec)
        report.data['variety_components'] = [str(c) for c in variety]
        report.add("variety-misses-point", not any(c.contains(point) for c in variety),
                   detail=f"{len(variety)} lines of the arrangement vs {len(flats)} truncation flats")
    report.timings = monitor.summary()
    return report
