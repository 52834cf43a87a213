"""Gröbner bases and ideal algebra over F_p.

Buchberger's algorithm with the Gebauer-Möller installation of both
Buchberger criteria and sugar-normal pair selection. Everything else
(membership, intersection, quotients, saturation, elimination) is reduced
to basis computations.
"""

from __future__ import annotations

import heapq
import itertools
import json
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import rank_mod_p, row_reduce
from .ring import (
    GREVLEX,
    DimensionError,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    block_order,
    count_monomials,
    monomial_divides,
    monomial_index,
    monomials_of_degree,
    parse_polynomial,
)


class ResourceError(RuntimeError):
    """A budget was exhausted. ``partial`` carries whatever had been built."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class Budget:
    max_spairs: int = 200_000
    max_degree: int = 60


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# Buchberger core on dict polynomials {exp: coeff}


class _Engine:
    def __init__(self, nvars: int, p: int, order: MonomialOrder, budget: Budget):
        self.n = nvars
        self.p = p
        self.order = order
        self.budget = budget
        self._key = order.key
        self._keys: dict = {}
        self._negkeys: dict = {}
        self.lms: list = []       # leading monomial per basis index
        self.tails: list = []     # [(exp, coeff)] of non-leading terms, monic polys
        self.sugar: list = []
        self.active: list = []    # indices currently in G
        self.pairs: list = []     # (sugar, key(lcm), lcm, i, j)
        self.spairs = 0

    def key(self, e):
        k = self._keys.get(e)
        if k is None:
            k = self._key(e)
            self._keys[e] = k
        return k

    def negkey(self, e):
        k = self._negkeys.get(e)
        if k is None:
            k = tuple(-x for x in self.key(e))
            self._negkeys[e] = k
        return k

    def _divisor(self, e):
        lms = self.lms
        for i in self.active:
            m = lms[i]
            for a, b in zip(m, e):
                if a > b:
                    break
            else:
                return i
        return None

    def reduce(self, f: dict, sugar: int) -> tuple[dict, int]:
        """Fully reduce ``f`` against the active basis."""
        p = self.p
        f = dict(f)
        heap = [(self.negkey(e), e) for e in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = f.pop(e, 0)
            if not c:
                continue
            i = self._divisor(e)
            if i is None:
                rem[e] = c
                continue
            q = tuple(a - b for a, b in zip(e, self.lms[i]))
            sugar = max(sugar, sum(q) + self.sugar[i])
            for ge, gc in self.tails[i]:
                ne = tuple(a + b for a, b in zip(ge, q))
                old = f.get(ne)
                if old is None:
                    f[ne] = (-c * gc) % p
                    heapq.heappush(heap, (self.negkey(ne), ne))
                else:
                    v = (old - c * gc) % p
                    if v:
                        f[ne] = v
                    else:
                        # keep a zero placeholder so the stale heap entry is skipped
                        f[ne] = 0
        return rem, sugar

    def _split(self, f: dict):
        lm = max(f, key=self.key)
        inv = pow(f[lm], -1, self.p)
        p = self.p
        tail = [(e, c * inv % p) for e, c in f.items() if e != lm]
        tail.sort(key=lambda t: self.key(t[0]), reverse=True)
        return lm, tail

    def add(self, f: dict, sugar: int, degree_bound=None):
        lm, tail = self._split(f)
        deg = max(sum(lm), max((sum(e) for e, _ in tail), default=0))
        if deg > self.budget.max_degree:
            raise ResourceError(
                f"basis element of degree {deg} exceeds max_degree={self.budget.max_degree}",
                partial=self.snapshot())
        h = len(self.lms)
        self.lms.append(lm)
        self.tails.append(tail)
        self.sugar.append(sugar)
        self._update(h, degree_bound)

    def _update(self, h: int, degree_bound):
        lms = self.lms
        lm_h = lms[h]
        lcms = {}
        for g in self.active:
            lcms[g] = tuple(max(a, b) for a, b in zip(lm_h, lms[g]))

        def coprime(g):
            return all(a == 0 or b == 0 for a, b in zip(lm_h, lms[g]))

        C = list(self.active)
        D = []
        while C:
            g1 = C.pop(0)
            L1 = lcms[g1]
            if coprime(g1):
                D.append(g1)
                continue
            if any(monomial_divides(lcms[g2], L1) for g2 in C):
                continue
            if any(monomial_divides(lcms[g2], L1) for g2 in D):
                continue
            D.append(g1)
        E = [g for g in D if not coprime(g)]

        kept = []
        for pair in self.pairs:
            L = pair[2]
            i, j = pair[3], pair[4]
            if monomial_divides(lm_h, L):
                Li = tuple(max(a, b) for a, b in zip(lms[i], lm_h))
                Lj = tuple(max(a, b) for a, b in zip(lms[j], lm_h))
                if Li != L and Lj != L:
                    continue
            kept.append(pair)
        for g in E:
            L = lcms[g]
            if degree_bound is not None and sum(L) > degree_bound:
                continue
            s = max(self.sugar[g] + sum(L) - sum(lms[g]), self.sugar[h] + sum(L) - sum(lm_h))
            kept.append((s, self.key(L), L, g, h))
        self.pairs = kept
        self.active = [g for g in self.active if not monomial_divides(lm_h, lms[g])] + [h]

    def spoly(self, i: int, j: int, L) -> dict:
        p = self.p
        out: dict = {}
        for idx, sign in ((i, 1), (j, -1)):
            q = tuple(a - b for a, b in zip(L, self.lms[idx]))
            for e, c in self.tails[idx]:
                ne = tuple(a + b for a, b in zip(e, q))
                out[ne] = (out.get(ne, 0) + sign * c) % p
        return {e: c for e, c in out.items() if c}

    def run(self, degree_bound=None):
        while self.pairs:
            best = min(range(len(self.pairs)), key=lambda k: self.pairs[k][:2] + self.pairs[k][3:])
            s, _, L, i, j = self.pairs.pop(best)
            self.spairs += 1
            if self.spairs > self.budget.max_spairs:
                raise ResourceError(
                    f"S-pair budget {self.budget.max_spairs} exhausted", partial=self.snapshot())
            f = self.spoly(i, j, L)
            if not f:
                continue
            r, s = self.reduce(f, s)
            if r:
                self.add(r, s, degree_bound)

    def full(self, e, tail):
        d = {e: 1}
        d.update(tail)
        return d

    def snapshot(self) -> list:
        return [self.full(self.lms[i], self.tails[i]) for i in self.active]

    def reduced_basis(self) -> list:
        G = sorted(self.active, key=lambda i: self.key(self.lms[i]))
        out = []
        for i in G:
            others = [g for g in self.active if g != i]
            saved = self.active
            self.active = others
            tail, _ = self.reduce(dict(self.tails[i]), 0)
            self.active = saved
            self.tails[i] = sorted(tail.items(), key=lambda t: self.key(t[0]), reverse=True)
        for i in sorted(G, key=lambda i: self.key(self.lms[i]), reverse=True):
            out.append(self.full(self.lms[i], self.tails[i]))
        return out


def _canonical_input(polys: Iterable[dict], order: MonomialOrder, p: int) -> list:
    seen = set()
    out = []
    for f in polys:
        if not f:
            continue
        lm = max(f, key=order.key)
        inv = pow(f[lm], -1, p)
        g = {e: c * inv % p for e, c in f.items()}
        sig = frozenset(g.items())
        if sig in seen:
            continue
        seen.add(sig)
        out.append((order.key(lm), sorted(g.items()), g))
    out.sort(key=lambda t: (t[0], t[1]))
    return [g for _, _, g in out]


def buchberger(polys: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
               budget: Budget = DEFAULT_BUDGET, degree_bound: int | None = None) -> list:
    """Reduced Gröbner basis of the ideal generated by ``polys``.

    With ``degree_bound`` (homogeneous input only) pairs whose lcm has degree
    above the bound are dropped; the result is a truncated basis that decides
    membership for forms of degree <= bound.
    """
    if not polys:
        return []
    ring = polys[0].ring
    eng = _Engine(ring.nvars, ring.p, order, budget)
    for f in _canonical_input((g.terms for g in polys), order, ring.p):
        r, s = eng.reduce(f, max(sum(e) for e in f))
        if r:
            eng.add(r, s, degree_bound)
    eng.run(degree_bound)
    return [Polynomial(ring, g, _clean=True) for g in eng.reduced_basis()]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    if not basis or not f:
        return f
    ring = f.ring
    eng = _Engine(ring.nvars, ring.p, order, DEFAULT_BUDGET)
    for g in basis:
        lm, tail = eng._split(g.terms)
        eng.lms.append(lm)
        eng.tails.append(tail)
        eng.sugar.append(0)
        eng.active.append(len(eng.lms) - 1)
    r, _ = eng.reduce(f.terms, 0)
    return Polynomial(ring, r, _clean=True)


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """An ideal given by generators, with a per-order cache of reduced bases."""

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = ()):
        gens = []
        seen = set()
        for g in generators:
            if g.ring.nvars != ring.nvars:
                raise DimensionError("generator from a different ring")
            if g.ring.p != ring.p:
                raise ValueError("generator over a different prime")
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def from_strings(cls, ring: PolynomialRing, texts: Iterable[str]) -> Ideal:
        return cls(ring, [parse_polynomial(t, ring) for t in texts])

    @classmethod
    def maximal(cls, ring: PolynomialRing) -> Ideal:
        return cls(ring, ring.gens())

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def generator_degrees(self) -> list:
        return sorted(g.degree() for g in self.generators)

    def groebner_basis(self, order: MonomialOrder = GREVLEX, budget: Budget = DEFAULT_BUDGET) -> list:
        return groebner_basis(self, order, budget)

    def truncated_basis(self, bound: int, budget: Budget = DEFAULT_BUDGET) -> list:
        for key, basis in list(self._gb.items()):
            if key == (GREVLEX, None) or (key[0] == GREVLEX and key[1] is not None and key[1] >= bound):
                return basis
        basis = buchberger(list(self.generators), GREVLEX, budget, degree_bound=bound)
        with self._lock:
            self._gb.setdefault((GREVLEX, bound), basis)
        return basis

    def contains(self, f: Polynomial, budget: Budget = DEFAULT_BUDGET) -> bool:
        if not f:
            return True
        if self.is_homogeneous() and f.is_homogeneous():
            basis = self.truncated_basis(f.degree(), budget)
        else:
            basis = self.groebner_basis(GREVLEX, budget)
        return not normal_form(f, basis)

    def to_json(self) -> dict:
        return {"ring_dim": self.ring.nvars, "generators": [str(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data, p: int | None = None) -> Ideal:
        if isinstance(data, str):
            data = json.loads(data)
        ring = PolynomialRing(int(data["ring_dim"]), p or PolynomialRing(1).p)
        return cls.from_strings(ring, data["generators"])

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:4])
        more = "" if len(self.generators) <= 4 else f", ... ({len(self.generators)} generators)"
        return f"Ideal({gens}{more})"


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX, budget: Budget = DEFAULT_BUDGET) -> list:
    """Reduced Gröbner basis of ``I``; cached on the ideal per order."""
    cached = I._gb.get((order, None))
    if cached is not None:
        return cached
    if I.is_zero():
        basis = []
    else:
        basis = buchberger(list(I.generators), order, budget)
    with I._lock:
        I._gb.setdefault((order, None), basis)
    return I._gb[(order, None)]


def _same_ring(I: Ideal, J: Ideal):
    if I.ring.nvars != J.ring.nvars:
        raise DimensionError(f"ideals in {I.ring.nvars} and {J.ring.nvars} variables")
    if I.ring.p != J.ring.p:
        raise ValueError("ideals over different primes")


def ideal_subset(I: Ideal, J: Ideal, budget: Budget = DEFAULT_BUDGET) -> bool:
    """True iff every generator of ``I`` reduces to zero modulo ``J``."""
    _same_ring(I, J)
    if I.is_zero():
        return True
    if J.is_zero():
        return False
    if I.is_homogeneous() and J.is_homogeneous():
        basis = J.truncated_basis(max(g.degree() for g in I.generators), budget)
    else:
        basis = J.groebner_basis(GREVLEX, budget)
    return all(not normal_form(g, basis) for g in I.generators)


def ideal_equal(I: Ideal, J: Ideal, budget: Budget = DEFAULT_BUDGET) -> bool:
    return ideal_subset(I, J, budget) and ideal_subset(J, I, budget)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, _dedupe(f * g for f in I.generators for g in J.generators))


def _dedupe(polys: Iterable[Polynomial]) -> list:
    seen = set()
    out = []
    for f in polys:
        if not f:
            continue
        m = f.monic()
        if m not in seen:
            seen.add(m)
            out.append(f)
    return out


def ideal_power(I: Ideal, r: int) -> Ideal:
    """I^r generated by all r-fold products of generators."""
    if r < 1:
        raise ValueError("power must be >= 1")
    if r == 1:
        return I
    prods = []
    for combo in itertools.combinations_with_replacement(I.generators, r):
        f = combo[0]
        for g in combo[1:]:
            f = f * g
        prods.append(f)
    return Ideal(I.ring, _dedupe(prods))


def _extend_front(f: Polynomial, ring: PolynomialRing, k: int) -> Polynomial:
    pad = (0,) * k
    return Polynomial(ring, {pad + e: c for e, c in f.terms.items()}, _clean=True)


def eliminate(I: Ideal, k: int, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I ∩ k[x_k, ..., x_N], returned as an ideal in the remaining variables."""
    n = I.ring.nvars
    if not 1 <= k < n:
        raise ValueError(f"cannot eliminate {k} of {n} variables")
    target = PolynomialRing(n - k, I.ring.p)
    basis = groebner_basis(I, block_order(k), budget)
    keep = []
    for g in basis:
        if all(not any(e[:k]) for e in g.terms):
            keep.append(Polynomial(target, {e[k:]: c for e, c in g.terms.items()}, _clean=True))
    return Ideal(target, keep)


def ideal_intersect(I: Ideal, J: Ideal, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1 - t)·J."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring)
    big = PolynomialRing(I.ring.nvars + 1, I.ring.p)
    t = big.var(0)
    one_minus_t = big.one() - t
    gens = [t * _extend_front(f, big, 1) for f in I.generators]
    gens += [one_minus_t * _extend_front(g, big, 1) for g in J.generators]
    return eliminate(Ideal(big, gens), 1, budget)


def intersect_all(ideals: Sequence[Ideal], budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """Balanced pairwise intersection of a nonempty list of ideals."""
    layer = list(ideals)
    if not layer:
        raise ValueError("nothing to intersect")
    while len(layer) > 1:
        nxt = []
        for a in range(0, len(layer) - 1, 2):
            nxt.append(ideal_intersect(layer[a], layer[a + 1], budget))
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError when g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    p = ring.p
    lm_g = g.leading_monomial()
    inv = pow(g.terms[lm_g], -1, p)
    q: dict = {}
    r = f
    while r:
        lm_r = r.leading_monomial()
        if not monomial_divides(lm_g, lm_r):
            raise ValueError("not an exact division")
        m = tuple(a - b for a, b in zip(lm_r, lm_g))
        c = r.terms[lm_r] * inv % p
        q[m] = c
        r = r - g.mul_monomial(m, c)
    return Polynomial(ring, q)


def _swap(f: Polynomial, i: int, j: int) -> Polynomial:
    if i == j:
        return f
    out = {}
    for e, c in f.terms.items():
        e = list(e)
        e[i], e[j] = e[j], e[i]
        out[tuple(e)] = c
    return Polynomial(f.ring, out, _clean=True)


def colon_variable(I: Ideal, i: int, saturate: bool = False, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I : x_i (or I : x_i^∞) for homogeneous I.

    Uses a grevlex basis with x_i moved to last place, where x_i dividing
    the leading term of a basis element means x_i divides the element.
    """
    if not I.is_homogeneous():
        raise ValueError("variable colon requires a homogeneous ideal")
    last = I.ring.nvars - 1
    swapped = Ideal(I.ring, [_swap(g, i, last) for g in I.generators])
    basis = groebner_basis(swapped, GREVLEX, budget)
    out = []
    for g in basis:
        k = min(e[last] for e in g.terms)
        if not saturate:
            k = min(k, 1)
        if k:
            g = Polynomial(g.ring, {e[:last] + (e[last] - k,): c for e, c in g.terms.items()}, _clean=True)
        out.append(_swap(g, i, last))
    return Ideal(I.ring, out)


def ideal_quotient(I: Ideal, J: Ideal, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I : J = ∩_g (I : g) over generators g of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("quotient by the zero ideal")
    parts = []
    for g in J.generators:
        var = _as_variable(g)
        if var is not None and I.is_homogeneous():
            parts.append(colon_variable(I, var, budget=budget))
            continue
        meet = ideal_intersect(I, Ideal(I.ring, [g]), budget)
        parts.append(Ideal(I.ring, [divide_exact(h, g) for h in meet.generators]))
    return intersect_all(parts, budget)


def _as_variable(g: Polynomial):
    if len(g.terms) != 1:
        return None
    (e, _), = g.terms.items()
    if sum(e) == 1:
        return e.index(1)
    return None


def saturate(I: Ideal, J: Ideal | None = None, budget: Budget = DEFAULT_BUDGET) -> Ideal:
    """I : J^∞; J defaults to the maximal homogeneous ideal M.

    For M this is ∩_i (I : x_i^∞), each factor read off a grevlex basis;
    when all factors agree the intersection is skipped. For other J the
    quotient is iterated until two successive iterates agree.
    """
    if I.is_zero():
        return I
    if J is None and I.is_homogeneous():
        parts = [colon_variable(I, i, saturate=True, budget=budget) for i in range(I.ring.nvars)]
        if all(ideal_equal(parts[0], q, budget) for q in parts[1:]):
            return parts[0]
        return intersect_all(parts, budget)
    if J is None:
        J = Ideal.maximal(I.ring)
    K = I
    for _ in range(budget.max_degree + 1):
        K2 = ideal_quotient(K, J, budget)
        if ideal_subset(K2, K, budget):
            return K
        K = K2
    raise ResourceError("saturation did not stabilize within max_degree iterations", partial=K)


def ideal_quotient_saturate(I: Ideal, J: Ideal | None = None, mode: str = "saturation",
                            budget: Budget = DEFAULT_BUDGET) -> Ideal:
    if mode == "quotient":
        if J is None:
            J = Ideal.maximal(I.ring)
        return ideal_quotient(I, J, budget)
    if mode == "saturation":
        return saturate(I, J, budget)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# graded data


def leading_monomials(I: Ideal, budget: Budget = DEFAULT_BUDGET) -> list:
    return [g.leading_monomial(GREVLEX) for g in groebner_basis(I, GREVLEX, budget)]


def hilbert_function_gb(I: Ideal, t: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """dim I_t, counted as monomials of degree t lying in the initial ideal."""
    if t < 0:
        return 0
    if I.is_zero():
        return 0
    lms = leading_monomials(I, budget)
    n = I.ring.nvars
    inside = 0
    for m in monomials_of_degree(n, t):
        if any(monomial_divides(l, m) for l in lms):
            inside += 1
    return inside


def krull_dimension(I: Ideal, budget: Budget = DEFAULT_BUDGET) -> int:
    """Krull dimension of R/I (affine); -1 for the unit ideal."""
    n = I.ring.nvars
    if I.is_zero():
        return n
    lms = leading_monomials(I, budget)
    if any(sum(m) == 0 for m in lms):
        return -1
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in lms]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            S = set(S)
            if not any(s <= S for s in supports):
                return size
    return 0


def graded_piece(I: Ideal, t: int) -> np.ndarray:
    """Row-reduced basis of I_t in the coordinates of ``monomials_of_degree``."""
    n = I.ring.nvars
    cols = count_monomials(n, t)
    idx = monomial_index(n, t)
    rows = []
    for g in I.generators:
        d = g.degree()
        if d > t:
            continue
        if not g.is_homogeneous():
            raise ValueError("graded pieces need homogeneous generators")
        for m in monomials_of_degree(n, t - d):
            v = np.zeros(cols, dtype=np.int64)
            for e, c in g.terms.items():
                v[idx[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(v)
    if not rows:
        return np.zeros((0, cols), dtype=np.int64)
    R, _ = row_reduce(np.array(rows), I.ring.p)
    return R


def hilbert_function_linear(I: Ideal, t: int) -> int:
    return graded_piece(I, t).shape[0]


def multiply_by_variables(B: np.ndarray, nvars: int, t: int, p: int) -> np.ndarray:
    """Span of R_1 · V for V spanned by rows of ``B`` in degree t; returned in degree t + 1."""
    src = monomials_of_degree(nvars, t)
    dst = monomial_index(nvars, t + 1)
    cols = count_monomials(nvars, t + 1)
    out = []
    for i in range(nvars):
        shift = np.array([dst[m[:i] + (m[i] + 1,) + m[i + 1:]] for m in src], dtype=np.int64)
        M = np.zeros((B.shape[0], cols), dtype=np.int64)
        M[:, shift] = B
        out.append(M)
    if not out or B.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.int64)
    return np.vstack(out) % p


def minimal_generator_degrees(I: Ideal) -> list:
    """Degrees (with repetition) of a minimal homogeneous generating set."""
    if I.is_zero():
        return []
    n, p = I.ring.nvars, I.ring.p
    out = []
    prev = None
    degs = sorted(set(I.generator_degrees()))
    for t in range(degs[0], degs[-1] + 1):
        piece = graded_piece(I, t)
        below = 0
        if prev is not None and prev.shape[0]:
            below = rank_mod_p(multiply_by_variables(prev, n, t - 1, p), p)
        out.extend([t] * (piece.shape[0] - below))
        prev = piece
    return out
