#!/usr/bin/env python3
"""
Graded Betti numbers by Koszul homology, with pure-type, regularity,
Herzog-Kühl and substitution-transport checks for the skeleton ideals
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from arrangements import Family, FamilySpec, family_generators, skeleton_initial_ideal
from config import get_betti_maxdeg, get_max_betti_variables
from error_handler import (
    HypothesisViolationError,
    LimitsExceededError,
    NonHomogeneousError,
    SingularSystemError,
    handle_errors,
    monitor_performance,
)
from groebner import Ideal, hilbert, monomials_of_degree, normal_form
from linalg import solve_unique, sparse_rank
from output_formatter import VerificationReport
from performance_monitor import PerformanceMonitor
from polyring import Monomial, MonomialOrder, Polynomial, VarRing, mono_divides

logger = logging.getLogger("arrangements.invariants")


@dataclass
class BettiTable:
    """β_{i,j}(I): rank of the i-th syzygy module of I in internal degree j.

    Only degrees j <= maxdeg were computed.
    """

    ring: VarRing
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    maxdeg: int = 0

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def homological_degrees(self) -> List[int]:
        return sorted({i for i, _ in self.entries})

    def degrees_at(self, i: int) -> List[int]:
        return sorted(j for (k, j) in self.entries if k == i)

    def totals(self) -> List[int]:
        top = max(self.homological_degrees(), default=-1)
        return [sum(r for (k, _), r in self.entries.items() if k == i) for i in range(top + 1)]

    def doubled(self) -> "BettiTable":
        """Table after a substitution that doubles every internal degree"""
        return BettiTable(self.ring, {(i, 2 * j): r for (i, j), r in self.entries.items()}, 2 * self.maxdeg)

    def same_entries(self, other: "BettiTable", upto: Optional[int] = None) -> bool:
        bound = min(self.maxdeg, other.maxdeg) if upto is None else upto
        mine = {k: v for k, v in self.entries.items() if k[1] <= bound}
        theirs = {k: v for k, v in other.entries.items() if k[1] <= bound}
        return mine == theirs

    def to_entries(self) -> List[Dict[str, int]]:
        return [{'i': i, 'j': j, 'rank': r} for (i, j), r in sorted(self.entries.items())]

    def matrix(self) -> np.ndarray:
        """Rows j - i, columns i"""
        if not self.entries:
            return np.zeros((0, 0), dtype=int)
        rows = max(j - i for i, j in self.entries) + 1
        low = min(j - i for i, j in self.entries)
        cols = max(i for i, _ in self.entries) + 1
        table = np.zeros((rows - low, cols), dtype=int)
        for (i, j), r in self.entries.items():
            table[j - i - low, i] = r
        return table

    def staircase(self) -> str:
        """Staircase layout: column i, row j - i, '.' for zero"""
        if not self.entries:
            return "(zero table)"
        table = self.matrix()
        low = min(j - i for i, j in self.entries)
        cells = [[str(v) if v else '.' for v in row] for row in table.tolist()]
        totals = [str(v) for v in table.sum(axis=0).tolist()]
        width = max(len(c) for c in [*totals, *(c for row in cells for c in row), str(table.shape[1] - 1)])
        label_width = max(6, len(f"{low + table.shape[0] - 1}:"))
        lines = [' ' * label_width + ' ' + ' '.join(f"{k:>{width}}" for k in range(table.shape[1])),
                 f"{'total:':>{label_width}} " + ' '.join(f"{t:>{width}}" for t in totals)]
        for offset, row in enumerate(cells):
            lines.append(f"{f'{low + offset}:':>{label_width}} " + ' '.join(f"{c:>{width}}" for c in row))
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.staircase()


class KoszulComplex:
    """Koszul complex of the variables on S/I, graded pieces over standard monomials"""

    def __init__(self, ideal: Ideal, order: Optional[MonomialOrder] = None):
        self.ring = ideal.ring
        self.order = order or MonomialOrder.default(self.ring)
        self.basis = ideal.groebner(self.order)
        self.leads = [g.leading_monomial(self.order) for g in self.basis]
        self.nvars = self.ring.count
        self._standard: Dict[int, List[Monomial]] = {}
        self._normal_forms: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        self._ranks: Dict[Tuple[int, int], int] = {}
        self.subsets = {i: list(itertools.combinations(range(self.nvars), i)) for i in range(self.nvars + 1)}

    def standard_monomials(self, d: int) -> List[Monomial]:
        if d not in self._standard:
            self._standard[d] = [u for u in monomials_of_degree(self.nvars, d)
                                 if not any(mono_divides(l, u) for l in self.leads)]
        return self._standard[d]

    def _normal_form(self, mono: Monomial) -> Dict[Monomial, Fraction]:
        cached = self._normal_forms.get(mono)
        if cached is None:
            if any(mono_divides(l, mono) for l in self.leads):
                poly = Polynomial._raw(self.ring, {mono: Fraction(1)})
                cached = dict(normal_form(poly, self.basis, self.order).coeffs)
            else:
                cached = {mono: Fraction(1)}
            self._normal_forms[mono] = cached
        return cached

    def dimension(self, i: int, j: int) -> int:
        if i < 0 or i > self.nvars or j - i < 0:
            return 0
        return len(self.subsets[i]) * len(self.standard_monomials(j - i))

    def differential_rank(self, i: int, j: int) -> int:
        """Rank of d: K_{i,j} -> K_{i-1,j}"""
        if i <= 0 or i > self.nvars or j - i < 0:
            return 0
        key = (i, j)
        if key in self._ranks:
            return self._ranks[key]
        target_index: Dict[Tuple[Tuple[int, ...], Monomial], int] = {}
        rows = []
        for subset in self.subsets[i]:
            for u in self.standard_monomials(j - i):
                row: Dict[int, Fraction] = {}
                for k, a in enumerate(subset):
                    sign = -1 if k % 2 else 1
                    face = subset[:k] + subset[k + 1:]
                    shifted = list(u)
                    shifted[a] += 1
                    for mono, c in self._normal_form(tuple(shifted)).items():
                        col = target_index.setdefault((face, mono), len(target_index))
                        value = row.get(col, 0) + sign * c
                        if value:
                            row[col] = value
                        else:
                            row.pop(col, None)
                if row:
                    rows.append(row)
        result = sparse_rank(rows)
        self._ranks[key] = result
        return result

    def homology(self, i: int, j: int) -> int:
        """β_{i,j}(S/I)"""
        return self.dimension(i, j) - self.differential_rank(i, j) - self.differential_rank(i + 1, j)


@handle_errors("betti_table")
@monitor_performance("betti_table")
def betti_table(ideal: Ideal, maxdeg: Optional[int] = None,
                order: Optional[MonomialOrder] = None) -> BettiTable:
    """Graded Betti numbers of I in internal degrees <= maxdeg"""
    n = ideal.ring.count
    if not ideal.is_homogeneous():
        raise NonHomogeneousError("Betti tables need a homogeneous ideal")
    if n > get_max_betti_variables():
        raise LimitsExceededError(f"{n} variables exceeds the limit of {get_max_betti_variables()}")
    bound = 2 * n + 2
    maxdeg = get_betti_maxdeg(n) if maxdeg is None else maxdeg
    if maxdeg > bound:
        raise LimitsExceededError(f"maxdeg {maxdeg} exceeds {bound} for {n} variables")
    complex_ = KoszulComplex(ideal, order)
    entries = {}
    for j in range(maxdeg + 1):
        for i in range(1, n + 1):
            value = complex_.homology(i, j)
            if value:
                entries[(i - 1, j)] = value
    logger.debug(f"Betti table over [{ideal.ring}] up to degree {maxdeg}: {entries}")
    return BettiTable(ideal.ring, entries, maxdeg)


def pure_type(table: BettiTable) -> Optional[List[int]]:
    """Degree list if each homological degree has a single internal degree, else None"""
    degrees = []
    for i in range(len(table.totals())):
        at = table.degrees_at(i)
        if len(at) != 1:
            return None
        degrees.append(at[0])
    return degrees if degrees else None


def regularity(table: BettiTable) -> int:
    if not table.entries:
        raise HypothesisViolationError("an empty Betti table has no regularity")
    return max(j - i for i, j in table.entries)


def euler_numerator(table: BettiTable) -> List[int]:
    """Σ_i (-1)^i β_{i,j}(S/I) t^j, coefficient list up to maxdeg"""
    coeffs = [0] * (table.maxdeg + 1)
    coeffs[0] = 1
    for (i, j), r in table.entries.items():
        if j <= table.maxdeg:
            coeffs[j] += (-1) ** (i + 1) * r
    return coeffs


def herzog_kuhl_degree(degrees: Sequence[int]) -> Fraction:
    """Multiplicity of a Cohen-Macaulay module with a pure resolution of this type"""
    return Fraction(prod(degrees), factorial(len(degrees)))


def herzog_kuhl(degrees: Sequence[int], codim: int, degree: Optional[int] = None) -> List[int]:
    """Betti ranks β_1..β_c of S/I forced by a pure type of a Cohen-Macaulay quotient.

    Solves Σ_{i=0}^{c} (-1)^i β_i d_i^k = 0 for k < c with β_0 = 1, d_0 = 0.
    """
    degrees = list(degrees)
    if len(degrees) != codim or any(b <= a for a, b in zip(degrees, degrees[1:])) or (degrees and degrees[0] <= 0):
        raise SingularSystemError(f"type {degrees} is not a strictly increasing positive list of length {codim}")
    if codim == 0:
        return []
    matrix = [[Fraction((-1) ** i * d ** k) for i, d in enumerate(degrees, 1)] for k in range(codim)]
    rhs = [Fraction(-1) if k == 0 else Fraction(0) for k in range(codim)]
    solution = solve_unique(matrix, rhs)
    if any(v.denominator != 1 or v < 0 for v in solution):
        raise HypothesisViolationError(f"type {degrees} forces non-integral ranks {[str(v) for v in solution]}")
    if degree is not None and herzog_kuhl_degree(degrees) != degree:
        raise HypothesisViolationError(
            f"type {degrees} forces degree {herzog_kuhl_degree(degrees)}, not {degree}")
    return [int(v) for v in solution]


def skeleton_ideal(n: int, p: int) -> Ideal:
    spec = FamilySpec(Family.SKELETON, n, p)
    return Ideal(spec.ring(), family_generators(spec))


def stanley_reisner_ideal(n: int, p: int, ring: Optional[VarRing] = None) -> Ideal:
    """Squarefree degree-(p+1) monomials, optionally extended to a larger ring"""
    gens = family_generators(FamilySpec(Family.STANLEY_REISNER, n, p))
    if ring is None:
        return Ideal(gens[0].ring, gens)
    return Ideal(ring, [g.embed(ring) for g in gens])


@handle_errors("transport_check")
def transport_check(n: int, p: int, maxdeg: Optional[int] = None,
                    skeleton: Optional[BettiTable] = None) -> VerificationReport:
    """Betti tables of the skeleton ideal and its initial ideal against the doubled Stanley-Reisner table"""
    if n > 4:
        raise LimitsExceededError(f"transport check is limited to n <= 4, got {n}")
    report = VerificationReport(f"transport n={n} p={p}")
    monitor = PerformanceMonitor()
    ring = VarRing.standard(n, with_x0=True)
    maxdeg = get_betti_maxdeg(ring.count) if maxdeg is None else maxdeg
    with monitor.phase("stanley-reisner"):
        sr = betti_table(stanley_reisner_ideal(n, p, ring), maxdeg // 2)
    if skeleton is None:
        with monitor.phase("skeleton"):
            skeleton = betti_table(skeleton_ideal(n, p), maxdeg)
    with monitor.phase("initial-ideal"):
        initial = betti_table(skeleton_initial_ideal(n, p), maxdeg)
    doubled = sr.doubled()
    for name, table in (("skeleton-vs-doubled-stanley-reisner", skeleton),
                        ("initial-ideal-vs-doubled-stanley-reisner", initial)):
        same = table.same_entries(doubled, upto=min(maxdeg, doubled.maxdeg))
        report.add(name, same, witness=None if same else f"{table.to_entries()} vs {doubled.to_entries()}")
    report.data['stanley_reisner'] = sr.staircase()
    report.data['skeleton'] = skeleton.staircase()
    report.data['stanley_reisner_type'] = pure_type(sr)
    report.data['skeleton_type'] = pure_type(skeleton)
    report.timings = monitor.summary()
    return report


@handle_errors("skeleton_checks")
def skeleton_checks(n: int, p: int, maxdeg: Optional[int] = None) -> VerificationReport:
    """Pure type, Herzog-Kühl ranks, regularity, generator degrees, Euler
    characteristic and transport for the skeleton ideal"""
    report = VerificationReport(f"skeleton-invariants n={n} p={p}")
    monitor = PerformanceMonitor()
    ideal = skeleton_ideal(n, p)
    maxdeg = get_betti_maxdeg(ideal.ring.count) if maxdeg is None else maxdeg
    with monitor.phase("betti"):
        table = betti_table(ideal, maxdeg)
    report.data['betti'] = table.staircase()
    report.data['betti_entries'] = table.to_entries()

    expected_type = [2 * k for k in range(p + 1, n + 1)]
    found = pure_type(table)
    report.add("pure-type", found == expected_type, witness=None if found == expected_type else str(found),
               detail=f"expected {expected_type}")

    codim, degree = n - p, 2 ** (n - p) * comb(n, p)
    with monitor.phase("herzog-kuhl"):
        try:
            predicted = herzog_kuhl(expected_type, codim, degree)
            actual = [table.rank(i, d) for i, d in enumerate(expected_type)]
            report.add("herzog-kuhl", predicted == actual, detail=f"predicted {predicted}, computed {actual}")
        except (SingularSystemError, HypothesisViolationError) as exc:
            report.add("herzog-kuhl", False, detail=str(exc))

    reg = regularity(table)
    report.add("regularity", reg == n + p + 1, detail=f"{reg}, expected {n + p + 1}")
    report.add("regularity-below-degree", n + p + 1 <= degree, detail=f"{n + p + 1} <= {degree}")

    generators = {j: table.rank(0, j) for j in table.degrees_at(0)}
    report.add("generator-degrees", generators == {2 * (p + 1): comb(n, p + 1)}, detail=str(generators))

    with monitor.phase("euler"):
        numerator = list(hilbert(ideal).numerator)
        numerator += [0] * (maxdeg + 1 - len(numerator))
        euler = euler_numerator(table)
        report.add("euler-characteristic", euler == numerator[:maxdeg + 1],
                   witness=None if euler == numerator[:maxdeg + 1] else f"{euler} vs {numerator[:maxdeg + 1]}")

    report.timings = monitor.summary()
    if n <= 4:
        report.merge(transport_check(n, p, maxdeg, skeleton=table), prefix="transport")
    return report
