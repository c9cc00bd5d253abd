#!/usr/bin/env python3
"""
Gröbner bases and the ideal operations built on them

Normal forms, Buchberger completion (sugar selection, coprime and chain
criteria), elimination, intersection through a tag variable, equality of
ideals via reduced bases, and Hilbert series of S/I from the initial ideal.
"""

import heapq
import itertools
import logging
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config import get_prime_modulus, get_step_budget
from error_handler import (
    BudgetExceededError,
    NonHomogeneousError,
    RingMismatchError,
    handle_errors,
    monitor_performance,
)
from linalg import sparse_rank
from polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    VarRing,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    random_weight_order,
)

logger = logging.getLogger("arrangements.groebner")

Terms = Dict[Monomial, object]


class StepBudget:
    """Counts S-pair reductions, shared across the runs it is passed to"""

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit
        self.used = 0

    @classmethod
    def from_config(cls) -> "StepBudget":
        return cls(get_step_budget())

    def charge(self, steps: int = 1):
        self.used += steps
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceededError(
                f"step budget of {self.limit} S-pair reductions exhausted", steps=self.used)

    @property
    def remaining(self) -> Optional[int]:
        return None if self.limit is None else max(self.limit - self.used, 0)


# ---------- coefficient fields ----------
class _Rationals:
    modulus = None

    @staticmethod
    def convert(c: Fraction):
        return c

    @staticmethod
    def divide(a, b):
        return a / b

    @staticmethod
    def normalize(c):
        return c


class _PrimeField:
    def __init__(self, modulus: int):
        self.modulus = modulus

    def convert(self, c: Fraction) -> int:
        den = c.denominator % self.modulus
        if den == 0:
            raise ZeroDivisionError(f"denominator {c.denominator} vanishes modulo {self.modulus}")
        return c.numerator * pow(den, -1, self.modulus) % self.modulus

    def divide(self, a: int, b: int) -> int:
        return a * pow(b, -1, self.modulus) % self.modulus

    def normalize(self, c: int) -> int:
        return c % self.modulus


RATIONALS = _Rationals()


# ---------- term-level kernel ----------
class _Entry:
    """Basis element with its leading data split off"""

    __slots__ = ('lm', 'lc', 'tail', 'sugar')

    def __init__(self, terms: Terms, order: MonomialOrder, sugar: int = 0):
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        self.tail = [(m, c) for m, c in terms.items() if m != self.lm]
        self.sugar = sugar

    def terms(self) -> Terms:
        result = dict(self.tail)
        result[self.lm] = self.lc
        return result


def _to_terms(p: Polynomial, field) -> Terms:
    terms = {}
    for m, c in p.coeffs.items():
        value = field.convert(c)
        if value:
            terms[m] = value
    return terms


def _from_terms(ring: VarRing, terms: Terms) -> Polynomial:
    return Polynomial._raw(ring, {m: Fraction(c) for m, c in terms.items()})


def _monic(terms: Terms, order: MonomialOrder, field) -> Terms:
    lc = terms[max(terms, key=order.key)]
    if lc == 1:
        return terms
    return {m: field.divide(c, lc) for m, c in terms.items()}


def _neg_key(order: MonomialOrder, m: Monomial) -> tuple:
    return tuple(-k for k in order.key(m))


def _reduce(terms: Terms, basis: Sequence[_Entry], order: MonomialOrder, field) -> Terms:
    """Full reduction: no monomial of the result is divisible by a basis leading monomial"""
    f = dict(terms)
    heap = [(_neg_key(order, m), m) for m in f]
    heapq.heapify(heap)
    remainder: Terms = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if mono_divides(g.lm, m):
                q = mono_div(m, g.lm)
                factor = field.divide(c, g.lc)
                for gm, gc in g.tail:
                    nm = mono_mul(gm, q)
                    old = f.get(nm)
                    if old is None:
                        value = field.normalize(-factor * gc)
                        heapq.heappush(heap, (_neg_key(order, nm), nm))
                    else:
                        value = field.normalize(old - factor * gc)
                    if value:
                        f[nm] = value
                    elif old is not None:
                        del f[nm]
                break
        else:
            remainder[m] = c
    return remainder


def _spoly(a: _Entry, b: _Entry, lcm: Monomial, field) -> Terms:
    qa, qb = mono_div(lcm, a.lm), mono_div(lcm, b.lm)
    result: Terms = {}
    for m, c in a.tail:
        result[mono_mul(m, qa)] = field.divide(c, a.lc)
    for m, c in b.tail:
        nm = mono_mul(m, qb)
        value = field.normalize(result.get(nm, 0) - field.divide(c, b.lc))
        if value:
            result[nm] = value
        else:
            result.pop(nm, None)
    return result


def _pair(i: int, j: int) -> Tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _chain_skip(i: int, j: int, lcm: Monomial, basis: Sequence[_Entry], open_pairs) -> bool:
    for k, g in enumerate(basis):
        if k == i or k == j or not mono_divides(g.lm, lcm):
            continue
        if _pair(i, k) not in open_pairs and _pair(j, k) not in open_pairs:
            return True
    return False


def _complete(inputs: Sequence[Terms], order: MonomialOrder, field,
              budget: Optional[StepBudget]) -> List[Terms]:
    """Reduced monic Gröbner basis of the term dicts, sorted by descending leading monomial"""
    inputs = [t for t in inputs if t]
    if not inputs:
        return []
    nvars = len(next(iter(inputs[0])))
    unit = [{(0,) * nvars: 1}]
    basis: List[_Entry] = []
    queue: list = []
    open_pairs = set()
    counter = itertools.count()

    def add(terms: Terms, sugar: int) -> bool:
        entry = _Entry(_monic(terms, order, field), order, sugar)
        if not any(entry.lm):
            return True
        k = len(basis)
        basis.append(entry)
        for i in range(k):
            other = basis[i]
            lcm = mono_lcm(other.lm, entry.lm)
            d = mono_degree(lcm)
            pair_sugar = max(other.sugar + d - mono_degree(other.lm), sugar + d - mono_degree(entry.lm))
            heapq.heappush(queue, (pair_sugar, order.key(lcm), next(counter), i, k))
            open_pairs.add((i, k))
        return False

    for terms in sorted(inputs, key=lambda t: (max(map(sum, t)), len(t))):
        reduced = _reduce(terms, basis, order, field) if basis else terms
        if reduced and add(reduced, max(map(sum, terms))):
            return unit

    reductions = 0
    while queue:
        pair_sugar, _, _, i, j = heapq.heappop(queue)
        open_pairs.discard((i, j))
        a, b = basis[i], basis[j]
        if mono_coprime(a.lm, b.lm):
            continue
        lcm = mono_lcm(a.lm, b.lm)
        if _chain_skip(i, j, lcm, basis, open_pairs):
            continue
        if budget is not None:
            budget.charge()
        reductions += 1
        remainder = _reduce(_spoly(a, b, lcm, field), basis, order, field)
        if remainder and add(remainder, pair_sugar):
            return unit
    logger.debug(f"completion: {len(basis)} elements after {reductions} S-pair reductions")
    return _interreduce(basis, order, field)


def _interreduce(basis: Sequence[_Entry], order: MonomialOrder, field) -> List[Terms]:
    minimal: List[_Entry] = []
    for entry in sorted(basis, key=lambda e: order.key(e.lm)):
        if not any(mono_divides(g.lm, entry.lm) for g in minimal):
            minimal.append(entry)
    reduced = []
    for entry in minimal:
        others = [g for g in minimal if g is not entry]
        terms = _reduce(dict(entry.tail), others, order, field)
        terms[entry.lm] = entry.lc
        reduced.append(_monic(terms, order, field))
    reduced.sort(key=lambda t: order.key(max(t, key=order.key)), reverse=True)
    return reduced


def _common_ring(polys: Sequence[Polynomial]) -> Optional[VarRing]:
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise RingMismatchError("generators live in different rings")
    return rings.pop() if rings else None


# ---------- public kernel ----------
def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> Polynomial:
    """Remainder of f on full division by basis (in the given sequence order)"""
    order = order or MonomialOrder.default(f.ring)
    entries = []
    for g in basis:
        if g.ring != f.ring:
            raise RingMismatchError(f"ring mismatch: [{f.ring}] vs [{g.ring}]")
        if g:
            entries.append(_Entry(dict(g.coeffs), order))
    return _from_terms(f.ring, _reduce(dict(f.coeffs), entries, order, RATIONALS))


@monitor_performance("buchberger")
def buchberger(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
               budget: Optional[StepBudget] = None) -> List[Polynomial]:
    """Reduced Gröbner basis, monic, sorted by descending leading monomial"""
    ring = _common_ring(gens)
    if ring is None:
        return []
    order = order or MonomialOrder.default(ring)
    result = _complete([dict(g.coeffs) for g in gens if g], order, RATIONALS, budget)
    return [_from_terms(ring, t) for t in result]


def is_groebner(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> bool:
    """Buchberger criterion on the generators as given"""
    gens = [g for g in gens if g]
    ring = _common_ring(gens)
    if ring is None:
        return True
    order = order or MonomialOrder.default(ring)
    entries = [_Entry(dict(g.coeffs), order) for g in gens]
    pairs = sorted(itertools.combinations(range(len(entries)), 2),
                   key=lambda ij: order.key(mono_lcm(entries[ij[0]].lm, entries[ij[1]].lm)))
    open_pairs = set(pairs)
    for i, j in pairs:
        open_pairs.discard((i, j))
        a, b = entries[i], entries[j]
        if mono_coprime(a.lm, b.lm):
            continue
        lcm = mono_lcm(a.lm, b.lm)
        if _chain_skip(i, j, lcm, entries, open_pairs):
            continue
        if _reduce(_spoly(a, b, lcm, RATIONALS), entries, order, RATIONALS):
            return False
    return True


class Ideal:
    """Generators plus a compute-once cache of reduced Gröbner bases per order"""

    def __init__(self, ring: VarRing, gens: Iterable[Polynomial] = ()):
        checked = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} is not in [{ring}]")
            if g:
                checked.append(g)
        self.ring = ring
        self.gens: Tuple[Polynomial, ...] = tuple(checked)
        self._cache: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_texts(cls, ring: VarRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(text) for text in texts])

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __repr__(self) -> str:
        return f"Ideal([{self.ring}], {len(self.gens)} generators)"

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def groebner(self, order: Optional[MonomialOrder] = None,
                 budget: Optional[StepBudget] = None) -> List[Polynomial]:
        order = order or MonomialOrder.default(self.ring)
        with self._lock:
            basis = self._cache.get(order)
            if basis is None:
                basis = tuple(buchberger(self.gens, order, budget))
                self._cache[order] = basis
        return list(basis)

    def seed(self, order: MonomialOrder, basis: Sequence[Polynomial]):
        """Record a basis known to be the reduced Gröbner basis under order"""
        ordered = sorted(basis, key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
        with self._lock:
            self._cache.setdefault(order, tuple(ordered))

    def cached_orders(self) -> List[MonomialOrder]:
        return list(self._cache)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self, order: Optional[MonomialOrder] = None) -> bool:
        basis = self.groebner(order)
        return len(basis) == 1 and basis[0].is_constant()

    def normal_form(self, f: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: Polynomial, order: Optional[MonomialOrder] = None) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} is not in [{self.ring}]")
        return self.normal_form(f, order).is_zero()

    def initial_monomials(self, order: Optional[MonomialOrder] = None) -> List[Monomial]:
        order = order or MonomialOrder.default(self.ring)
        return [g.leading_monomial(order) for g in self.groebner(order)]


def member(f: Polynomial, ideal: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    return ideal.contains(f, order)


def initial_ideal(ideal: Ideal, order: Optional[MonomialOrder] = None) -> Ideal:
    """Monomial ideal of leading monomials"""
    monos = ideal.initial_monomials(order)
    return Ideal(ideal.ring, [Polynomial._raw(ideal.ring, {m: Fraction(1)}) for m in monos])


def eliminate(ideal: Ideal, names: Iterable[str], order: Optional[MonomialOrder] = None,
              budget: Optional[StepBudget] = None) -> Ideal:
    """Ideal ∩ k[remaining variables], via a block order with `names` leading.

    `order` supplies the precedence of the remaining variables; the result's
    reduced basis under the restricted grevlex order is cached on it.
    """
    names = list(names)
    for name in names:
        ideal.ring.index(name)
    if not names:
        ideal.groebner(order, budget)
        return ideal
    block = MonomialOrder.elimination(ideal.ring, names, order)
    sub = VarRing(tuple(n for n in ideal.ring.names if n not in names))
    dropped = [ideal.ring.index(n) for n in names]
    restricted = MonomialOrder('grevlex', tuple(sub.index(ideal.ring.names[i])
                                                for i in block.varperm[block.split:]))
    kept = [g.embed(sub) for g in ideal.groebner(block, budget)
            if not any(m[i] for m in g.coeffs for i in dropped)]
    result = Ideal(sub, kept)
    result.seed(restricted, kept)
    return result


@monitor_performance("intersect")
def intersect(first: Ideal, second: Ideal, order: Optional[MonomialOrder] = None,
              budget: Optional[StepBudget] = None) -> Ideal:
    """I ∩ J as the t-free part of t·I + (1 - t)·J"""
    if first.ring != second.ring:
        raise RingMismatchError(f"ring mismatch: [{first.ring}] vs [{second.ring}]")
    ring = first.ring
    if first.is_zero() or second.is_zero():
        return Ideal(ring, [])
    order = order or MonomialOrder.default(ring)
    tag = ring.fresh_name("t")
    tagged = ring.extend(tag)
    t = tagged.var(tag)
    gens = ([t * f.embed(tagged) for f in first.gens]
            + [(1 - t) * g.embed(tagged) for g in second.gens])
    return eliminate(Ideal(tagged, gens), [tag], order, budget)


@handle_errors("intersect_all")
def intersect_all(ideals: Sequence[Ideal], order: Optional[MonomialOrder] = None,
                  budget: Optional[StepBudget] = None) -> Ideal:
    """Left fold of intersect; a budget overrun keeps the fold so far as `partial`"""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("nothing to intersect")
    result = ideals[0]
    for k, ideal in enumerate(ideals[1:], start=1):
        try:
            result = intersect(result, ideal, order, budget)
        except BudgetExceededError as exc:
            raise BudgetExceededError(f"{exc} after folding {k} of {len(ideals)} ideals",
                                      partial=result, steps=exc.steps) from exc
        logger.debug(f"fold {k}/{len(ideals) - 1}: {len(result.gens)} generators")
    return result


def ideals_equal(first: Ideal, second: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    if first.ring != second.ring:
        raise RingMismatchError(f"ring mismatch: [{first.ring}] vs [{second.ring}]")
    return first.groebner(order) == second.groebner(order)


def modular_screen(first: Ideal, second: Ideal, order: Optional[MonomialOrder] = None,
                   modulus: Optional[int] = None) -> Optional[bool]:
    """Compare reduced bases over GF(modulus); None when a coefficient has no image there.

    A quick pre-screen only; agreement modulo a prime does not prove equality.
    """
    order = order or MonomialOrder.default(first.ring)
    field = _PrimeField(modulus or get_prime_modulus())
    try:
        bases = [_complete([_to_terms(g, field) for g in ideal.gens], order, field, None)
                 for ideal in (first, second)]
    except ZeroDivisionError as exc:
        logger.info(f"modular screen inconclusive: {exc}")
        return None
    return bases[0] == bases[1]


def sampled_orders(ring: VarRing, count: int, seed: int) -> List[MonomialOrder]:
    """x0-least grevlex and lex, then `count` seeded weight orders with x0 of minimal weight"""
    orders = [MonomialOrder.x0_least(ring, 'grevlex'), MonomialOrder.x0_least(ring, 'lex')]
    rng = random.Random(seed)
    orders.extend(random_weight_order(ring, rng) for _ in range(count))
    return orders


# ---------- Hilbert series ----------
def _pstrip(poly: List[int]) -> List[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _padd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    result = [0] * max(len(a), len(b))
    for k, v in enumerate(a):
        result[k] += v
    for k, v in enumerate(b):
        result[k] += v
    return _pstrip(result)


def _pshift(a: Sequence[int], e: int) -> List[int]:
    return [0] * e + list(a) if a else []


def _pmul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    result = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            result[i + j] += u * v
    return _pstrip(result)


def minimalize(A: np.ndarray) -> np.ndarray:
    """Minimal generators of the monomial ideal with exponent rows A"""
    kept: List[np.ndarray] = []
    for row in sorted(map(tuple, A), key=sum):
        m = np.array(row, dtype=np.int64)
        if not any(np.all(m >= g) for g in kept):
            kept.append(m)
    return np.array(kept, dtype=np.int64).reshape(len(kept), A.shape[1])


def _pivot(A: np.ndarray, p: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Generators of <I, p> and of I : p"""
    left = [m for m in A if not np.all(m >= p)]
    left.append(p)
    right = np.maximum(A - p, 0)
    return minimalize(np.array(left)), minimalize(right)


def _kpoly(A: np.ndarray, memo: Dict[frozenset, List[int]]) -> List[int]:
    key = frozenset(map(tuple, A))
    cached = memo.get(key)
    if cached is not None:
        return cached
    if len(A) == 0:
        result = [1]
    elif not np.all(A.any(axis=1)):
        result = []
    else:
        support = np.count_nonzero(A, axis=1)
        mixed = A[support > 1]
        if len(mixed) == 0:
            result = [1]
            for row in A:
                result = _pmul(result, _padd([1], _pshift([-1], int(row.sum()))))
        else:
            v = int(np.argmax(np.count_nonzero(mixed, axis=0)))
            column = mixed[:, v]
            e = int(column[column > 0].min())
            p = np.zeros(A.shape[1], dtype=np.int64)
            p[v] = e
            left, right = _pivot(A, p)
            result = _padd(_kpoly(left, memo), _pshift(_kpoly(right, memo), e))
    memo[key] = result
    return result


def kpolynomial(monomials: Sequence[Monomial], nvars: int) -> List[int]:
    """Numerator of the Hilbert series of S/⟨monomials⟩ over (1-t)^nvars"""
    A = np.array(list(monomials), dtype=np.int64).reshape(len(monomials), nvars)
    return _kpoly(minimalize(A), {})


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series of S/I as K(t)/(1-t)^N, with the (1-t) factors cancelled"""

    variables: int
    numerator: Tuple[int, ...]
    reduced: Tuple[int, ...]
    codim: int
    dim: int
    degree: int

    @classmethod
    def from_numerator(cls, numerator: Sequence[int], variables: int) -> "HilbertData":
        poly = _pstrip(list(numerator))
        if not poly:
            return cls(variables, (), (), variables + 1, -1, 0)
        codim = 0
        while sum(poly) == 0:
            quotient, running = [], 0
            for c in poly[:-1]:
                running += c
                quotient.append(running)
            poly = _pstrip(quotient)
            codim += 1
        return cls(variables, tuple(_pstrip(list(numerator))), tuple(poly), codim,
                   variables - codim, abs(sum(poly)))

    def value(self, d: int) -> int:
        n = self.variables
        return sum(c * comb(d - k + n - 1, n - 1) for k, c in enumerate(self.numerator) if d >= k)

    def values(self, D: int) -> List[int]:
        return [self.value(d) for d in range(D + 1)]

    def to_dict(self) -> Dict[str, object]:
        return {
            'numerator': list(self.numerator),
            'reduced_numerator': list(self.reduced),
            'codim': self.codim,
            'dim': self.dim,
            'degree': self.degree,
        }


def hilbert_from_monomials(monomials: Sequence[Monomial], nvars: int) -> HilbertData:
    return HilbertData.from_numerator(kpolynomial(monomials, nvars), nvars)


def hilbert(ideal: Ideal, order: Optional[MonomialOrder] = None) -> HilbertData:
    """Hilbert data of S/I, read from the initial ideal"""
    if not ideal.is_homogeneous():
        raise NonHomogeneousError("Hilbert series needs a homogeneous ideal")
    return hilbert_from_monomials(ideal.initial_monomials(order), ideal.ring.count)


def hf_values(ideal: Ideal, order: Optional[MonomialOrder], D: int) -> List[int]:
    """Hilbert function of S/I in degrees 0..D"""
    return hilbert(ideal, order).values(D)


# ---------- graded pieces ----------
def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree d"""
    if d < 0:
        return
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def graded_span_rows(polys: Sequence[Polynomial], d: int,
                     columns: Optional[Dict[Monomial, int]] = None) -> List[Dict[int, Fraction]]:
    """Sparse rows of every multiple u·f of degree d, columns indexed by monomial"""
    columns = {} if columns is None else columns
    rows = []
    for f in polys:
        if not f:
            continue
        if not f.is_homogeneous():
            raise NonHomogeneousError(f"{f} is not homogeneous")
        shift = d - f.total_degree()
        for u in monomials_of_degree(f.ring.count, shift):
            row = {}
            for m, c in f.coeffs.items():
                row[columns.setdefault(mono_mul(m, u), len(columns))] = c
            rows.append(row)
    return rows


def graded_span_rank(polys: Sequence[Polynomial], d: int) -> int:
    """Dimension of the degree-d piece of the ideal the homogeneous polys generate"""
    return sparse_rank(graded_span_rows(polys, d))


def ideal_piece_dimension(ideal: Ideal, d: int, order: Optional[MonomialOrder] = None) -> int:
    n = ideal.ring.count
    return comb(d + n - 1, n - 1) - hilbert(ideal, order).value(d)
