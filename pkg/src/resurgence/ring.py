"""Homogeneous multivariate polynomials over a prime field.

Polynomials are sparse: a dict from exponent tuples to nonzero residues.
Values are treated as immutable once built; every operation returns a new
object.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_PRIME = 32003


class DimensionError(ValueError):
    """Operands live in rings with different numbers of variables."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldElement:
    """Residue class modulo a prime ``p``."""

    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("field elements over different primes")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __pow__(self, k: int):
        return FieldElement(pow(self.value, k, self.p), self.p)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


# ---------------------------------------------------------------------------
# monomials and orders


def monomial_degree(a: Sequence[int]) -> int:
    return sum(a)


def _grevlex_key(a: Sequence[int]) -> tuple:
    return (sum(a),) + tuple(-x for x in reversed(a))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order. ``key`` maps exponent tuples to sort keys that
    compare the same way the monomials do.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``; a block order
    compares the first ``k`` variables by grevlex and breaks ties by grevlex
    on the rest, so it eliminates the leading block.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.k < 1:
            raise ValueError("block order needs k >= 1")

    def key(self, a: Sequence[int]) -> tuple:
        if self.kind == "grevlex":
            return _grevlex_key(a)
        if self.kind == "lex":
            return tuple(a)
        return _grevlex_key(a[: self.k]) + _grevlex_key(a[self.k:])

    def is_graded(self) -> bool:
        return self.kind != "lex" and self.kind != "block"

    def __str__(self):
        return self.kind if self.kind != "block" else f"block({self.k})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


def monomial_compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b``."""
    if len(a) != len(b):
        raise DimensionError(f"monomials of length {len(a)} and {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def monomial_divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, t: int) -> tuple:
    """All exponent tuples of total degree ``t``, largest first in grevlex."""
    if t < 0:
        return ()
    out = []
    for bars in itertools.combinations(range(t + nvars - 1), nvars - 1):
        prev = -1
        exp = []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(t + nvars - 1 - prev - 1)
        out.append(tuple(exp))
    out.sort(key=_grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, t: int) -> dict:
    return {m: i for i, m in enumerate(monomials_of_degree(nvars, t))}


def count_monomials(nvars: int, t: int) -> int:
    return math.comb(t + nvars - 1, nvars - 1) if t >= 0 else 0


# ---------------------------------------------------------------------------
# rings and polynomials


@dataclass(frozen=True)
class PolynomialRing:
    """k[x0, ..., x_{nvars-1}] with k = F_p."""

    nvars: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def N(self) -> int:
        """Projective dimension of the ambient space."""
        return self.nvars - 1

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> Polynomial:
        if not 0 <= i < self.nvars:
            raise DimensionError(f"x{i} not in ring with {self.nvars} variables")
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> Polynomial:
        if len(exp) != self.nvars:
            raise DimensionError("exponent vector has wrong length")
        return Polynomial(self, {tuple(exp): coeff})

    def linear_form(self, coeffs: Sequence[int]) -> Polynomial:
        if len(coeffs) != self.nvars:
            raise DimensionError("coefficient vector has wrong length")
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * self.nvars
            e[i] = 1
            terms[tuple(e)] = int(c)
        return Polynomial(self, terms)

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self.p)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def extend(self, extra: int = 1) -> PolynomialRing:
        return PolynomialRing(self.nvars + extra, self.p)


class Polynomial:
    """Sparse polynomial: ``terms`` maps exponent tuples to residues in [1, p)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[tuple, int], _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                if len(e) != n:
                    raise DimensionError(f"monomial {e} in ring with {n} variables")
                c = int(c) % p
                if c:
                    clean[tuple(e)] = c
            self.terms = clean
        self._hash = None

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        inv = pow(self.leading_coefficient(order), -1, self.ring.p)
        return self.scale(inv)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ring.nvars != self.ring.nvars:
            raise DimensionError(
                f"rings with {self.ring.nvars} and {other.ring.nvars} variables")
        if other.ring.p != self.ring.p:
            raise ValueError("polynomials over different primes")

    def _lift(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(int(other))
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c = int(c) % p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        self._check(other)
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp: Sequence[int], coeff: int = 1) -> Polynomial:
        p = self.ring.p
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff % p for e, c in self.terms.items()},
            _clean=True,
        )

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self == self.ring.constant(other)
            return NotImplemented
        return (self.ring.nvars == other.ring.nvars and self.ring.p == other.ring.p
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.nvars, self.ring.p, frozenset(self.terms.items())))
        return self._hash

    # -- maps ----------------------------------------------------------------

    def embed(self, ring: PolynomialRing, positions: Sequence[int]) -> Polynomial:
        """Re-read in ``ring``, sending variable i to variable ``positions[i]``."""
        n = ring.nvars
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[positions[i]] += k
            out[tuple(ne)] = c
        return Polynomial(ring, out, _clean=True)

    def evaluate(self, point: Sequence) -> FieldElement:
        return evaluate(self, point)

    def hasse_derivative(self, order: Sequence[int]) -> Polynomial:
        return hasse_derivative(self, order)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, nvars={self.ring.nvars}, p={self.ring.p})"


def poly_arith(f: Polynomial, g, op: str) -> Polynomial:
    """Binary arithmetic dispatch: ``op`` in add, sub, mul, scalar_mul."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(int(g))
    raise ValueError(f"unknown operation {op!r}")


def evaluate(f: Polynomial, point: Sequence) -> FieldElement:
    if len(point) != f.ring.nvars:
        raise DimensionError(f"point of length {len(point)} for {f.ring.nvars} variables")
    p = f.ring.p
    pt = [int(v) % p for v in point]
    total = 0
    for e, c in f.terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v = v * pow(x, k, p) % p
        total += v
    return FieldElement(total, p)


def hasse_derivative(f: Polynomial, order: Sequence[int]) -> Polynomial:
    """The Hasse derivative D^b, with D^b x^a = prod C(a_i, b_i) x^(a-b).

    Unlike iterated partial derivatives this stays meaningful when the
    characteristic is at most the derivative order.
    """
    if len(order) != f.ring.nvars:
        raise DimensionError("derivative multi-index has wrong length")
    p = f.ring.p
    out = {}
    for e, c in f.terms.items():
        if any(a < b for a, b in zip(e, order)):
            continue
        v = c
        for a, b in zip(e, order):
            if b:
                v = v * math.comb(a, b) % p
        if v:
            out[tuple(a - b for a, b in zip(e, order))] = v
    return Polynomial(f.ring, out, _clean=True)


def multi_indices(nvars: int, max_order: int) -> Iterator[tuple]:
    for k in range(max_order + 1):
        yield from monomials_of_degree(nvars, k)


def evaluate_derivatives(f: Polynomial, point: Sequence, max_order: int) -> dict:
    """Values at ``point`` of every Hasse derivative of order <= ``max_order``."""
    return {b: evaluate(hasse_derivative(f, b), point)
            for b in multi_indices(f.ring.nvars, max_order)}


# ---------------------------------------------------------------------------
# text format

_TERM_SPLIT = re.compile(r"([+-])")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``3*x0^2*x1 - x2 + 5``. Variables are ``x0 .. x{nvars-1}``."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    pieces = _TERM_SPLIT.split(s)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2:
        raise ValueError(f"cannot parse polynomial {text!r}")
    terms: dict = {}
    p, n = ring.p, ring.nvars
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = 1
        exp = [0] * n
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            i = int(m.group(1))
            if i >= n:
                raise DimensionError(f"x{i} not in ring with {n} variables")
            exp[i] += int(m.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        e = tuple(exp)
        terms[e] = (terms.get(e, 0) + coeff) % p
    return Polynomial(ring, terms)


def format_monomial(e: Sequence[int]) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms(order):
        mono = format_monomial(e)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def polynomials_from_strings(texts: Iterable[str], ring: PolynomialRing) -> list:
    return [parse_polynomial(t, ring) for t in texts]
