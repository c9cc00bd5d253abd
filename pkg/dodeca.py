#!/usr/bin/env python3
"""
The skew dodecahedron

Twelve facet half-spaces, the thirty projective lines through its edges, the
facet-cover search showing that no product of eight facet planes vanishes on
all edge lines, and the ideal of the thirty lines with its minimal generator
degrees.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from arrangements import LinearSubspace, sample_points
from config import config, get_dodeca_budget
from error_handler import BudgetExceededError, GeometryError, InvalidSpecError, handle_errors, monitor_performance
from groebner import (
    Ideal,
    StepBudget,
    graded_span_rank,
    hilbert,
    ideal_piece_dimension,
    intersect_all,
    monomials_of_degree,
)
from linalg import nullspace, solve
from output_formatter import VerificationReport
from performance_monitor import PerformanceMonitor
from polyring import MonomialOrder, Polynomial, VarRing, product

logger = logging.getLogger("arrangements.dodeca")

AFFINE = VarRing(("x1", "x2", "x3"))
PROJECTIVE = VarRing(("x0", "x1", "x2", "x3"))

# constant, x1, x2, x3 coefficients of the twelve facet forms; facet i is L_i >= 0
PLANE_DATA = (
    (5, 0, -3, -2),
    (6, 0, 3, -2),
    (5, -2, 0, -3),
    (4, -2, 0, 3),
    (5, -3, -2, 0),
    (5, 3, -2, 0),
    (6, 0, 3, 2),
    (5, 0, -3, 2),
    (6, 2, 0, 3),
    (5, 2, 0, -3),
    (4, 3, 2, 0),
    (6, -3, 2, 0),
)

EXPECTED_EDGES = 30
EXPECTED_GENERATOR_DEGREE = 8
EXPECTED_GENERATORS = 10


def _cross(u: Sequence[int], v: Sequence[int]) -> Tuple[int, int, int]:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class HalfSpace:
    index: int
    constant: int
    normal: Tuple[int, int, int]

    def form(self) -> Polynomial:
        """Affine facet form in x1, x2, x3"""
        coeffs = {(0, 0, 0): self.constant}
        for k, a in enumerate(self.normal):
            mono = [0, 0, 0]
            mono[k] = 1
            coeffs[tuple(mono)] = a
        return Polynomial(AFFINE, coeffs)

    def homogenized(self) -> Polynomial:
        return self.form().embed(PROJECTIVE).homogenize("x0")

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return self.constant + _dot(self.normal, point)

    def is_parallel(self, other: "HalfSpace") -> bool:
        return _cross(self.normal, other.normal) == (0, 0, 0)

    def __str__(self) -> str:
        return f"L{self.index} = {self.form()}"


@dataclass(frozen=True)
class ProjLine:
    """Projective closure of the edge line where two facet planes meet"""

    facets: Tuple[int, int]
    forms: Tuple[Polynomial, Polynomial]
    point: Tuple[Fraction, Fraction, Fraction]
    direction: Tuple[int, int, int]
    segment: Tuple[Fraction, Fraction]

    def subspace(self) -> LinearSubspace:
        return LinearSubspace.from_forms(PROJECTIVE, list(self.forms), f"L{self.facets[0]} ∩ L{self.facets[1]}")

    def ideal(self) -> Ideal:
        return Ideal(PROJECTIVE, self.forms)

    def points(self, count: int) -> List[List[Fraction]]:
        """`count` distinct affine points (1 : P + s·d), s = 0, 1, ..."""
        return [[Fraction(1)] + [c + s * d for c, d in zip(self.point, self.direction)] for s in range(count)]

    def endpoints(self) -> List[Tuple[Fraction, ...]]:
        return [tuple(c + s * d for c, d in zip(self.point, self.direction)) for s in self.segment]

    def __str__(self) -> str:
        return f"L{self.facets[0]}/L{self.facets[1]}: <{self.forms[0]}, {self.forms[1]}>"


@lru_cache(maxsize=None)
def _planes() -> Tuple[HalfSpace, ...]:
    return tuple(HalfSpace(i, c, (a, b, d)) for i, (c, a, b, d) in enumerate(PLANE_DATA, 1))


def dodeca_planes() -> List[HalfSpace]:
    return list(_planes())


def opposite_pairs() -> List[Tuple[int, int]]:
    return [(i, i + 6) for i in range(1, 7)]


def _edge_segment(a: HalfSpace, b: HalfSpace, planes: Sequence[HalfSpace]) -> Optional[ProjLine]:
    direction = _cross(a.normal, b.normal)
    point = tuple(solve([list(map(Fraction, a.normal)), list(map(Fraction, b.normal))],
                        [Fraction(-a.constant), Fraction(-b.constant)]))
    low: Optional[Fraction] = None
    high: Optional[Fraction] = None
    for h in planes:
        base = h.value(point)
        slope = _dot(h.normal, direction)
        if slope == 0:
            if base < 0:
                return None
            continue
        bound = -base / slope
        if slope > 0:
            low = bound if low is None else max(low, bound)
        else:
            high = bound if high is None else min(high, bound)
    if low is None or high is None or low >= high:
        return None
    return ProjLine((a.index, b.index), (a.homogenized(), b.homogenized()), point, direction, (low, high))


@lru_cache(maxsize=None)
def _edge_lines() -> Tuple[ProjLine, ...]:
    planes = _planes()
    lines = []
    for a, b in itertools.combinations(planes, 2):
        if a.is_parallel(b):
            continue
        line = _edge_segment(a, b, planes)
        if line is not None:
            lines.append(line)
    if len(lines) != EXPECTED_EDGES:
        raise GeometryError(f"found {len(lines)} edge lines, expected {EXPECTED_EDGES}")
    return tuple(lines)


def edge_lines() -> List[ProjLine]:
    """Lines meeting the polytope in a segment of positive length, sorted by facet pair"""
    return list(_edge_lines())


def incidence_matrix() -> np.ndarray:
    """12 x 30 facet-line incidence"""
    lines = edge_lines()
    matrix = np.zeros((len(PLANE_DATA), len(lines)), dtype=int)
    for col, line in enumerate(lines):
        for facet in line.facets:
            matrix[facet - 1, col] = 1
    return matrix


def facet_neighbours() -> Dict[int, List[int]]:
    neighbours: Dict[int, List[int]] = {i: [] for i in range(1, len(PLANE_DATA) + 1)}
    for line in edge_lines():
        a, b = line.facets
        neighbours[a].append(b)
        neighbours[b].append(a)
    return {k: sorted(v) for k, v in neighbours.items()}


def cover_search(k: int) -> List[Tuple[int, ...]]:
    """Every k-set of facets that contains a facet of each edge line"""
    if not 0 <= k <= len(PLANE_DATA):
        raise InvalidSpecError(f"cover size {k} outside 0..{len(PLANE_DATA)}")
    lines = edge_lines()
    masks = [0] * len(PLANE_DATA)
    for bit, line in enumerate(lines):
        for facet in line.facets:
            masks[facet - 1] |= 1 << bit
    full = (1 << len(lines)) - 1
    covers = []
    for subset in itertools.combinations(range(len(PLANE_DATA)), k):
        covered = 0
        for f in subset:
            covered |= masks[f]
        if covered == full:
            covers.append(tuple(f + 1 for f in subset))
    return covers


def opposite_facet_argument(cover: Sequence[int]) -> bool:
    """Every facet left out of the cover has all its neighbours in it"""
    chosen = set(cover)
    neighbours = facet_neighbours()
    return all(set(neighbours[f]) <= chosen for f in neighbours if f not in chosen)


def vanishes_on_lines(poly: Polynomial, lines: Sequence[ProjLine]) -> bool:
    """Exact test: a form of degree d vanishes on a line iff it does at d+1 of its points"""
    d = max(poly.total_degree(), 0)
    return all(poly.evaluate(pt) == 0 for line in lines for pt in line.points(d + 1))


# ---------- ideal of the thirty lines ----------
def interpolation_piece(lines: Sequence[ProjLine], degree: int) -> List[Polynomial]:
    """Basis of the degree-`degree` forms vanishing on every line"""
    monos = list(monomials_of_degree(PROJECTIVE.count, degree))
    rows = []
    for line in lines:
        for pt in line.points(degree + 1):
            rows.append([_monomial_value(pt, m) for m in monos])
    return [Polynomial(PROJECTIVE, {monos[k]: v for k, v in enumerate(vec) if v})
            for vec in nullspace(rows, len(monos))]


def _monomial_value(point: Sequence[Fraction], mono: Sequence[int]) -> Fraction:
    value = Fraction(1)
    for x, e in zip(point, mono):
        if e:
            value *= x ** e
    return value


def interpolation_profile(lines: Sequence[ProjLine], maxdeg: int) -> Tuple[Dict[int, int], Dict[int, List[Polynomial]]]:
    """β_{0,j} from the pieces I_j, j = 0..maxdeg"""
    pieces: Dict[int, List[Polynomial]] = {}
    profile: Dict[int, int] = {}
    for j in range(maxdeg + 1):
        pieces[j] = interpolation_piece(lines, j)
        spanned = graded_span_rank(pieces[j - 1], j) if j > 0 else 0
        profile[j] = len(pieces[j]) - spanned
    return profile, pieces


def fold_profile(ideal: Ideal, maxdeg: int) -> Dict[int, int]:
    """β_{0,j}: dim I_j minus the span of multiples of the basis elements of lower degree"""
    order = MonomialOrder.default(ideal.ring)
    basis = ideal.groebner(order)
    top = max([maxdeg] + [g.total_degree() for g in basis])
    profile = {}
    for j in range(top + 1):
        lower = [g for g in basis if g.total_degree() < j]
        profile[j] = ideal_piece_dimension(ideal, j, order) - graded_span_rank(lower, j)
    return profile


@dataclass
class DodecaIdeal:
    method: str
    profile: Dict[int, int]
    generators: List[Polynomial] = field(default_factory=list)
    ideal: Optional[Ideal] = None


@handle_errors("dodeca_ideal")
@monitor_performance("dodeca_ideal")
def dodeca_ideal(method: Optional[str] = None, budget: Optional[StepBudget] = None,
                 maxdeg: int = EXPECTED_GENERATOR_DEGREE + 1) -> DodecaIdeal:
    """Ideal of the thirty edge lines and its minimal generator degree profile.

    `fold` intersects the line ideals (may raise BudgetExceededError with the
    partial fold); `interpolation` computes the pieces I_j directly.
    """
    method = method or config.get("dodeca.method", "fold")
    lines = edge_lines()
    if method == "interpolation":
        profile, pieces = interpolation_profile(lines, maxdeg)
        first = next((j for j in sorted(pieces) if pieces[j]), None)
        return DodecaIdeal(method, profile, pieces[first] if first is not None else [])
    if method != "fold":
        raise InvalidSpecError(f"unknown method {method!r} (expected fold or interpolation)")
    budget = budget or StepBudget(get_dodeca_budget())
    ideal = intersect_all([line.ideal() for line in lines], None, budget)
    logger.info(f"30-line fold finished after {budget.used} S-pair reductions")
    return DodecaIdeal(method, fold_profile(ideal, maxdeg), ideal.groebner(), ideal)


def _profile_ok(profile: Dict[int, int]) -> bool:
    return (all(profile.get(j, 0) == 0 for j in profile if j != EXPECTED_GENERATOR_DEGREE)
            and profile.get(EXPECTED_GENERATOR_DEGREE) == EXPECTED_GENERATORS)


def dodeca_report(method: Optional[str] = None, budget: Optional[StepBudget] = None,
                  seed: int = 0) -> VerificationReport:
    """Combinatorics, cover search and the line ideal, as one report"""
    method = method or config.get("dodeca.method", "fold")
    report = VerificationReport(f"dodeca method={method}")
    monitor = PerformanceMonitor()

    with monitor.phase("planes"):
        planes = dodeca_planes()
        report.data['planes'] = [str(h) for h in planes]
        parallel = [(a.index, b.index) for a, b in itertools.combinations(planes, 2) if a.is_parallel(b)]
        report.add("opposite-facets-parallel", parallel == opposite_pairs(), detail=str(parallel))
        report.add("origin-interior", all(h.constant > 0 for h in planes))

    with monitor.phase("edges"):
        try:
            lines = edge_lines()
        except GeometryError as exc:
            report.add("edge-lines", False, detail=str(exc))
            report.timings = monitor.summary()
            return report
        pairs = len(planes) * (len(planes) - 1) // 2
        report.add("edge-lines", len(lines) == EXPECTED_EDGES,
                   detail=f"{pairs} plane pairs, {len(parallel)} parallel, "
                          f"{pairs - len(parallel)} intersection lines, {len(lines)} through edges")
        incidence = incidence_matrix()
        report.data['incidence'] = incidence.tolist()
        report.add("facet-incidence", bool(np.all(incidence.sum(axis=1) == 5) and np.all(incidence.sum(axis=0) == 2)),
                   detail="5 lines per facet, 2 facets per line")
        shared = incidence @ incidence.T
        off_diagonal = shared[~np.eye(len(planes), dtype=bool)]
        opposite_ok = all(shared[a - 1, b - 1] == 0 for a, b in opposite_pairs())
        report.add("facets-share-at-most-one-line", bool(np.all(off_diagonal <= 1)) and opposite_ok)
        report.notes.append(
            f"the {pairs - len(parallel)} pairwise plane intersections are lines; only the "
            f"{len(lines)} meeting the polytope in an edge are used")

    with monitor.phase("covers"):
        eight = cover_search(8)
        nine = cover_search(9)
        report.add("no-8-cover", not eight, detail=f"{len(eight)} of 495 subsets cover")
        report.add("9-cover-exists", bool(nine), witness=str(list(nine[0])) if nine else None,
                   detail=f"{len(nine)} covers of size 9")
        report.add("opposite-facet-argument", all(opposite_facet_argument(c) for c in nine))
        report.data['covers'] = {'8': len(eight), '9': [list(c) for c in nine]}

    with monitor.phase("ideal"):
        try:
            result = dodeca_ideal(method, budget)
        except BudgetExceededError as exc:
            report.budget("minimal-generators", str(exc))
            if isinstance(exc.partial, Ideal):
                report.data['partial_fold_generators'] = len(exc.partial.gens)
            result = None
        if result is not None:
            report.data['generator_profile'] = {str(j): v for j, v in result.profile.items() if v}
            report.add("minimal-generators", _profile_ok(result.profile),
                       detail=f"{result.profile.get(EXPECTED_GENERATOR_DEGREE, 0)} in degree "
                              f"{EXPECTED_GENERATOR_DEGREE}, profile {result.profile}")
            per_line = 3
            bad = next((g for g in result.generators
                        if any(g.evaluate(pt) != 0 for line in lines
                               for pt in sample_points(line.subspace(), per_line))), None)
            report.add("generators-vanish", bad is None, witness=str(bad) if bad is not None else None,
                       detail=f"{len(result.generators)} generators at {per_line} points of each line")
            rng = random.Random(seed)
            products = rng.sample(list(itertools.combinations(planes, 8)), 20)
            vanishing = [p for p in products
                         if vanishes_on_lines(product((h.homogenized() for h in p), PROJECTIVE), lines)]
            if result.ideal is not None:
                members = [p for p in products
                           if result.ideal.contains(product((h.homogenized() for h in p), PROJECTIVE))]
                vanishing.extend(p for p in members if p not in vanishing)
            report.add("8-products-outside-ideal", not vanishing,
                       witness=str([h.index for h in vanishing[0]]) if vanishing else None,
                       detail=f"20 seeded products (seed {seed})")
            if result.ideal is not None:
                data = hilbert(result.ideal)
                report.add("dimension-and-degree", data.dim == 2 and data.degree == EXPECTED_EDGES,
                           detail=f"dim {data.dim}, degree {data.degree}")
                profile, _ = interpolation_profile(lines, max(result.profile))
                report.add("profile-cross-check", profile == result.profile,
                           detail="fold vs interpolation")

    report.timings = monitor.summary()
    return report
