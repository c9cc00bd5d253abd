#!/usr/bin/env python3
"""
Exact sparse multivariate polynomials over the rationals.

Monomials are exponent tuples, coefficients are `fractions.Fraction`, and a
Polynomial is an immutable mapping monomial -> nonzero coefficient. Terms are
listed strictly descending under the ring's canonical order: graded reverse
lexicographic in ring-name order, with x0 moved to the least position when the
ring has an x0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from error_handler import (
    HypothesisViolationError,
    MissingImageError,
    PolynomialSyntaxError,
    RingMismatchError,
    UnknownVariableError,
    ZeroPolynomialError,
)

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r'[A-Za-z_][A-Za-z0-9_]*\Z')
# sort keys memoised per order; the memo is dropped whole when it fills
KEY_CACHE_LIMIT = 200_000


# ---------- Rings ----------
@dataclass(frozen=True)
class VarRing:
    """Ordered list of variable names; k[names]"""

    names: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, '_index', {name: i for i, name in enumerate(names)})

    @classmethod
    def standard(cls, n: int, with_x0: bool = False) -> "VarRing":
        """k[x1..xn], or k[x0..xn] when with_x0"""
        start = 0 if with_x0 else 1
        return cls(tuple(f"x{i}" for i in range(start, n + 1)))

    @classmethod
    def from_names(cls, text: str) -> "VarRing":
        return cls(tuple(text.replace(',', ' ').split()))

    @property
    def count(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r} in ring {self}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def extend(self, name: str) -> "VarRing":
        """Ring with one more variable appended"""
        return VarRing(self.names + (name,))

    def fresh_name(self, stem: str = "t") -> str:
        candidate, k = stem, 0
        while candidate in self._index:
            k += 1
            candidate = f"{stem}{k}"
        return candidate

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.count: value})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.count
        exps[self.index(name)] = 1
        return Polynomial._raw(self, {tuple(exps): Fraction(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.var(name) for name in self.names]

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return '*'.join(parts)

    def __str__(self) -> str:
        return ' '.join(self.names)


# ---------- Monomial helpers ----------
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b"""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a | b"""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Term(NamedTuple):
    coeff: Fraction
    mono: Monomial


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


# ---------- Monomial orders ----------
@dataclass(frozen=True)
class MonomialOrder:
    """Multiplicative well-order on exponent vectors.

    `varperm` lists variable indices from most to least significant.
    `weights` (weight kind) are indexed by variable index; ties fall back to
    grevlex under `varperm`. The block kind compares the first `split`
    variables of `varperm` by grevlex, then the rest by grevlex.
    """

    kind: str
    varperm: Tuple[int, ...]
    weights: Tuple[int, ...] = ()
    split: int = 0
    _keys: Dict[Monomial, tuple] = field(default_factory=dict, init=False, compare=False,
                                         hash=False, repr=False)

    KINDS = ('lex', 'grevlex', 'weight', 'block')

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        perm = tuple(self.varperm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"varperm {perm} is not a permutation")
        object.__setattr__(self, 'varperm', perm)
        if self.kind == 'weight':
            weights = tuple(int(w) for w in self.weights)
            if len(weights) != len(perm) or any(w < 1 for w in weights):
                raise ValueError("weights must be positive integers, one per variable")
            object.__setattr__(self, 'weights', weights)
        if self.kind == 'block' and not 0 <= self.split <= len(perm):
            raise ValueError(f"block split {self.split} out of range")

    @property
    def count(self) -> int:
        return len(self.varperm)

    # --- constructors ---
    @staticmethod
    def precedence(ring: VarRing, least: Optional[str] = None) -> Tuple[int, ...]:
        order = list(range(ring.count))
        if least is not None and least in ring:
            order.remove(ring.index(least))
            order.append(ring.index(least))
        return tuple(order)

    @classmethod
    def grevlex(cls, ring: VarRing, least: Optional[str] = None) -> "MonomialOrder":
        return cls('grevlex', cls.precedence(ring, least))

    @classmethod
    def lex(cls, ring: VarRing, least: Optional[str] = None) -> "MonomialOrder":
        return cls('lex', cls.precedence(ring, least))

    @classmethod
    def weight(cls, ring: VarRing, weights: Sequence[int], least: Optional[str] = None) -> "MonomialOrder":
        return cls('weight', cls.precedence(ring, least), tuple(weights))

    @classmethod
    def x0_least(cls, ring: VarRing, kind: str = 'grevlex') -> "MonomialOrder":
        if kind == 'lex':
            return cls.lex(ring, 'x0')
        return cls.grevlex(ring, 'x0')

    @classmethod
    def default(cls, ring: VarRing) -> "MonomialOrder":
        """grevlex, with x0 least when the ring contains x0"""
        return _default_order(ring)

    @classmethod
    def elimination(cls, ring: VarRing, names: Iterable[str],
                    rest: Optional["MonomialOrder"] = None) -> "MonomialOrder":
        """Block order with `names` in the leading block; the rest follows `rest`'s precedence"""
        first = [ring.index(name) for name in names]
        rest_perm = (rest or cls.default(ring)).varperm
        tail = [i for i in rest_perm if i not in first]
        return cls('block', tuple(first + tail), split=len(first))

    @classmethod
    def from_spec(cls, text: str, ring: VarRing) -> "MonomialOrder":
        """Parse `grevlex`, `lex`, `grevlex@x1,x2,x0`, `lex@...`, `weight:3,1,2`.

        Without an explicit precedence x0 is least when the ring has it.
        """
        text = text.strip()
        if text.startswith('weight:'):
            try:
                weights = [int(w) for w in text[len('weight:'):].split(',') if w.strip()]
            except ValueError:
                raise ValueError(f"bad weight list in order {text!r}") from None
            if len(weights) != ring.count:
                raise ValueError(f"order {text!r} needs {ring.count} weights")
            return cls('weight', cls.precedence(ring, 'x0'), tuple(weights))
        kind, _, names = text.partition('@')
        if kind not in ('lex', 'grevlex'):
            raise ValueError(f"unknown order {text!r}")
        if not names:
            return cls(kind, cls.precedence(ring, 'x0'))
        perm = tuple(ring.index(name.strip()) for name in names.split(','))
        if sorted(perm) != list(range(ring.count)):
            raise ValueError(f"order {text!r} must list every variable exactly once")
        return cls(kind, perm)

    def describe(self, ring: VarRing) -> str:
        names = ','.join(ring.names[i] for i in self.varperm)
        if self.kind == 'weight':
            return f"weight:{','.join(map(str, self.weights))}@{names}"
        if self.kind == 'block':
            return f"block{self.split}@{names}"
        return f"{self.kind}@{names}"

    # --- comparison ---
    def key(self, mono: Monomial) -> tuple:
        """Sort key: u < v iff key(u) < key(v)"""
        k = self._keys.get(mono)
        if k is None:
            k = self._compute_key(mono)
            if len(self._keys) >= KEY_CACHE_LIMIT:
                self._keys.clear()
            self._keys[mono] = k
        return k

    def _compute_key(self, mono: Monomial) -> tuple:
        perm = self.varperm
        if self.kind == 'lex':
            return tuple(mono[i] for i in perm)
        if self.kind == 'grevlex':
            return (sum(mono),) + tuple(-mono[i] for i in reversed(perm))
        if self.kind == 'weight':
            return ((sum(w * e for w, e in zip(self.weights, mono)), sum(mono))
                    + tuple(-mono[i] for i in reversed(perm)))
        first, rest = perm[:self.split], perm[self.split:]
        return ((sum(mono[i] for i in first),) + tuple(-mono[i] for i in reversed(first))
                + (sum(mono[i] for i in rest),) + tuple(-mono[i] for i in reversed(rest)))

    def compare(self, u: Monomial, v: Monomial) -> Ordering:
        if len(u) != self.count or len(v) != self.count:
            raise RingMismatchError(f"monomial lengths {len(u)}, {len(v)} do not match order over {self.count} variables")
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return Ordering.LT
        return Ordering.GT if ku > kv else Ordering.EQ


@lru_cache(maxsize=None)
def _default_order(ring: VarRing) -> MonomialOrder:
    return MonomialOrder.grevlex(ring, 'x0')


def random_weight_order(ring: VarRing, rng, low: int = 1, high: int = 100) -> MonomialOrder:
    """Weight order with integer weights in [low, high] and x0 of minimal weight"""
    weights = [rng.randint(low, high) for _ in range(ring.count)]
    if 'x0' in ring:
        weights[ring.index('x0')] = min(weights)
    return MonomialOrder.weight(ring, weights, 'x0')


# ---------- Polynomials ----------
class Polynomial:
    """Immutable sparse polynomial with rational coefficients"""

    __slots__ = ('ring', '_coeffs', '_terms', '_hash')

    def __init__(self, ring: VarRing, coeffs: Optional[Mapping[Sequence[int], Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (coeffs or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != ring.count or any(e < 0 for e in mono):
                raise RingMismatchError(f"exponent vector {mono} does not fit ring {ring}")
            value = clean.get(mono, Fraction(0)) + Fraction(c)
            if value:
                clean[mono] = value
            else:
                clean.pop(mono, None)
        self.ring = ring
        self._coeffs = clean
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: VarRing, coeffs: Dict[Monomial, Fraction]) -> "Polynomial":
        """Trusted constructor: monomials valid, coefficients nonzero Fractions"""
        p = cls.__new__(cls)
        p.ring = ring
        p._coeffs = coeffs
        p._terms = None
        p._hash = None
        return p

    # --- inspection ---
    @property
    def coeffs(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._coeffs)

    @property
    def terms(self) -> Tuple[Term, ...]:
        """Terms strictly descending under the canonical order"""
        if self._terms is None:
            order = MonomialOrder.default(self.ring)
            monos = sorted(self._coeffs, key=order.key, reverse=True)
            self._terms = tuple(Term(self._coeffs[m], m) for m in monos)
        return self._terms

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial"""
        return max((sum(m) for m in self._coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._coeffs}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._coeffs)

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Term:
        if not self._coeffs:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        order = order or MonomialOrder.default(self.ring)
        mono = max(self._coeffs, key=order.key)
        return Term(self._coeffs[mono], mono)

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        return self.leading_term(order).mono

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self._coeffs:
            return self
        return self.scale(1 / self.leading_term(order).coeff)

    # --- arithmetic ---
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: [{self.ring}] vs [{other.ring}]")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._coeffs)
        for m, c in other._coeffs.items():
            value = result.get(m)
            if value is None:
                result[m] = c
            else:
                value += c
                if value:
                    result[m] = value
                else:
                    del result[m]
        return Polynomial._raw(self.ring, result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                value = result.get(m, 0) + c1 * c2
                if value:
                    result[m] = value
                else:
                    result.pop(m, None)
        return Polynomial._raw(self.ring, result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a natural number")
        result, base = self.ring.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * factor for m, c in self._coeffs.items()})

    def mul_term(self, coeff: Fraction, mono: Monomial) -> "Polynomial":
        return Polynomial._raw(self.ring, {mono_mul(m, mono): c * coeff for m, c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._coeffs.items())))
        return self._hash

    # --- ring maps ---
    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Ring homomorphism x_i -> images[x_i]; every variable needs an image"""
        missing = [name for name in self.ring.names if name not in images]
        if missing:
            raise MissingImageError(f"no image for variable(s) {', '.join(missing)}")
        targets = {images[name].ring for name in self.ring.names}
        if len(targets) != 1:
            raise RingMismatchError("substitution images live in different rings")
        target = targets.pop()
        powers: List[Dict[int, Polynomial]] = [{0: target.one(), 1: images[name]} for name in self.ring.names]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * cache[1]
            return cache[e]

        result = target.zero()
        for mono, c in self._coeffs.items():
            term = target.constant(c)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.ring.count:
            raise RingMismatchError(f"point has {len(point)} coordinates, ring has {self.ring.count}")
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for mono, c in self._coeffs.items():
            term = c
            for v, e in zip(values, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    def homogenize(self, homvar: str) -> "Polynomial":
        """Homogenize with a ring variable that does not occur in self"""
        h = self.ring.index(homvar)
        if any(m[h] for m in self._coeffs):
            raise HypothesisViolationError(f"{homvar} already occurs in {self}")
        d = self.total_degree()
        result = {}
        for m, c in self._coeffs.items():
            exps = list(m)
            exps[h] = d - sum(m)
            result[tuple(exps)] = c
        return Polynomial._raw(self.ring, result)

    def dehomogenize(self, homvar: str) -> "Polynomial":
        images = {name: self.ring.var(name) for name in self.ring.names}
        images[homvar] = self.ring.one()
        return self.substitute(images)

    def embed(self, target: VarRing) -> "Polynomial":
        """Same polynomial in another ring, matching variables by name"""
        if target == self.ring:
            return self
        positions = [target.index(name) if name in target else None for name in self.ring.names]
        result = {}
        for m, c in self._coeffs.items():
            exps = [0] * target.count
            for i, e in enumerate(m):
                if e:
                    if positions[i] is None:
                        raise UnknownVariableError(f"{self.ring.names[i]} is not a variable of [{target}]")
                    exps[positions[i]] = e
            result[tuple(exps)] = c
        return Polynomial._raw(target, result)

    # --- text ---
    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        pieces = []
        for k, (c, mono) in enumerate(self.terms):
            mono_text = self.ring.format_monomial(mono)
            magnitude = abs(c)
            if not mono_text:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono_text
            else:
                body = f"{magnitude}*{mono_text}"
            if k == 0:
                pieces.append(('-' if c < 0 else '') + body)
            else:
                pieces.append((' - ' if c < 0 else ' + ') + body)
        return ''.join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


# ---------- Parser ----------
_TOKEN_RE = re.compile(r'(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()])')


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), pos))
        pos = match.end()
    tokens.append(('end', '', len(text)))
    return tokens


class _Parser:
    """Recursive descent over  expr := [+|-] term {(+|-) term};  term := factor {* factor};
    factor := - factor | base [^ nat];  base := number | name | ( expr )"""

    def __init__(self, text: str, ring: VarRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token=None) -> PolynomialSyntaxError:
        token = token or self.peek()
        return PolynomialSyntaxError(message, self.text, token[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == 'end':
            raise self.error("empty polynomial")
        result = self.expr()
        if self.peek()[0] != 'end':
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in ('+', '-') and self.peek()[0] == 'op':
            sign = -1 if self.take()[1] == '-' else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[0] == 'op' and self.peek()[1] in ('+', '-'):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == 'op' and value == '*':
                self.take()
                result = result * self.factor()
            elif kind in ('num', 'name') or (kind == 'op' and value == '('):
                raise self.error("implicit multiplication is not allowed, use '*'")
            else:
                return result

    def factor(self) -> Polynomial:
        kind, value, _ = self.peek()
        if kind == 'op' and value == '-':
            self.take()
            return -self.factor()
        base = self.base()
        if self.peek()[0] == 'op' and self.peek()[1] == '^':
            self.take()
            token = self.take()
            if token[0] != 'num' or '/' in token[1]:
                raise self.error("exponent must be a natural number", token)
            base = base ** int(token[1])
        return base

    def base(self) -> Polynomial:
        token = self.take()
        kind, value, position = token
        if kind == 'num':
            num, _, den = value.partition('/')
            if den and int(den) == 0:
                raise self.error("division by zero in literal", token)
            return self.ring.constant(Fraction(int(num), int(den) if den else 1))
        if kind == 'name':
            if value not in self.ring:
                raise UnknownVariableError(f"unknown variable {value!r} at position {position}")
            return self.ring.var(value)
        if kind == 'op' and value == '(':
            inner = self.expr()
            closing = self.take()
            if closing[1] != ')':
                raise self.error("expected ')'", closing)
            return inner
        raise self.error(f"unexpected {value!r}" if value else "unexpected end of input", token)


# ---------- Functional surface ----------
def parse_poly(text: str, ring: VarRing) -> Polynomial:
    """Parse the `+ - * ^ ( )` grammar with integer and a/b literals"""
    return _Parser(text, ring).parse()


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def neg(p: Polynomial) -> Polynomial:
    return -p


def compare(order: MonomialOrder, u: Monomial, v: Monomial) -> Ordering:
    return order.compare(u, v)


def leading_term(p: Polynomial, order: Optional[MonomialOrder] = None) -> Term:
    return p.leading_term(order)


def substitute(p: Polynomial, images: Mapping[str, Polynomial]) -> Polynomial:
    return p.substitute(images)


def evaluate(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


def homogenize(p: Polynomial, homvar: str) -> Polynomial:
    return p.homogenize(homvar)


def product(polys: Iterable[Polynomial], ring: VarRing) -> Polynomial:
    result = ring.one()
    for p in polys:
        result = result * p
    return result


def power_map(ring: VarRing, m: int, target: Optional[VarRing] = None) -> Dict[str, Polynomial]:
    """Images x_i -> x_i^m"""
    target = target or ring
    return {name: target.var(name) ** m for name in ring.names}
