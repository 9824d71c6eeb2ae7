"""Buchberger's algorithm, multivariate division and reduced Groebner bases.

Reduction runs fraction-free on integer coefficient dictionaries with content
removal; bases are converted back to monic rational polynomials at the end.
Pairs are selected by sugar degree (the default) or by the normal strategy
(smallest lcm first); ties go to generator indices.  Pairs are pruned with the
Gebauer-Moeller update, which contains Buchberger's coprime and chain criteria.
"""
from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .orders import DEGREVLEX, TermOrder
from .poly import ContextMismatchError, Polynomial

log = logging.getLogger(__name__)

DEFAULT_MAX_PAIRS = 2_000_000
DEFAULT_MAX_TERMS = 100_000


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its configured resource limit."""

    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Budget:
    """Resource limits for one Buchberger run.

    ``max_pairs`` bounds the number of S-pairs reduced; ``max_terms`` bounds
    the size of any intermediate polynomial; ``max_seconds`` (if set) bounds
    wall-clock time, checked between pairs.
    """

    max_pairs: int = DEFAULT_MAX_PAIRS
    max_terms: int = DEFAULT_MAX_TERMS
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget()


# -- integer kernel ------------------------------------------------------------
def _to_int(p: Polynomial) -> dict:
    """Primitive integer multiple of ``p`` (sign not normalised)."""
    terms = p.terms
    den = 1
    for c in terms.values():
        d = c.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    out = {m: c.numerator * (den // c.denominator) for m, c in terms.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            return out
    return {m: v // g for m, v in out.items()}


def _content_free(p: dict) -> dict:
    g = 0
    for v in p.values():
        g = gcd(g, v)
        if g == 1:
            return p
    if g in (0, 1):
        return p
    return {m: v // g for m, v in p.items()}


def _mask(m) -> int:
    b = 0
    for i, e in enumerate(m):
        if e:
            b |= 1 << i
    return b


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Reducer:
    """Divisor set with precomputed leading data for fast reduction."""

    def __init__(self, order: TermOrder, max_terms: int = DEFAULT_MAX_TERMS):
        self.order = order
        self.key = order.key
        self.max_terms = max_terms
        self.polys: list = []
        self.lm: list = []
        self.lc: list = []
        self.mask: list = []
        self.tails: list = []
        self.active: list = []

    def add(self, p: dict) -> int:
        key = self.key
        m = max(p, key=key)
        c = p[m]
        if c < 0:
            p = {k: -v for k, v in p.items()}
            c = -c
        self.polys.append(p)
        self.lm.append(m)
        self.lc.append(c)
        self.mask.append(_mask(m))
        self.tails.append([(k, v) for k, v in p.items() if k != m])
        i = len(self.polys) - 1
        self.active.append(i)
        return i

    def find_divisor(self, m, mmask, skip=-1):
        lm, masks = self.lm, self.mask
        for j in self.active:
            if j != skip and not masks[j] & ~mmask and _divides(lm[j], m):
                return j
        return None

    def reduce(self, p: dict, full: bool = True, skip: int = -1, track: bool = False):
        """Reduce ``p`` in place; returns ``(remainder, multiplier)``.

        The remainder equals ``multiplier * p - sum(q_j g_j)``.  The multiplier
        is only tracked when ``track`` is set (otherwise it is 1).
        """
        key = self.key
        r: dict = {}
        mult = 1
        max_terms = self.max_terms
        while p:
            m = max(p, key=key)
            c = p[m]
            j = self.find_divisor(m, _mask(m), skip)
            if j is None:
                if not full:
                    r.update(p)
                    break
                r[m] = c
                del p[m]
                continue
            lc = self.lc[j]
            q = tuple(a - b for a, b in zip(m, self.lm[j]))
            g = gcd(c, lc)
            a = lc // g
            b = c // g
            if a != 1:
                for k in p:
                    p[k] *= a
                for k in r:
                    r[k] *= a
                if track:
                    mult *= a
            del p[m]
            for tm, tc in self.tails[j]:
                nm = tuple([x + y for x, y in zip(tm, q)])
                v = p.get(nm, 0) - b * tc
                if v:
                    p[nm] = v
                else:
                    p.pop(nm, None)
            if len(p) > max_terms:
                raise BudgetExceeded(
                    f"intermediate polynomial exceeded {max_terms} terms",
                    terms=len(p),
                    basis_size=len(self.active),
                )
        return r, mult


def _from_int(ctx, p: dict, order: TermOrder, denom: int = 1, monic: bool = True) -> Polynomial:
    if not p:
        return Polynomial.zero(ctx)
    if monic:
        m = max(p, key=order.key)
        denom = p[m]
    return Polynomial._raw(ctx, {k: Fraction(v, denom) for k, v in p.items()})


def _check_ctx(polys):
    ctx = None
    for p in polys:
        if ctx is None:
            ctx = p.ctx
        elif p.ctx != ctx:
            raise ContextMismatchError(f"context mismatch: ({ctx}) vs ({p.ctx})")
    return ctx


# -- public API ---------------------------------------------------------------
@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis together with its term order.

    When ``reduced`` is set the generators are monic, interreduced and sorted
    by leading monomial (largest first), which makes the list canonical.
    """

    generators: tuple
    order: TermOrder
    ctx: object
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.generators, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __contains__(self, f):
        return self.contains(f)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: TermOrder = DEGREVLEX) -> Polynomial:
    """Remainder of ``f`` on division by ``G``.

    Terms are processed from the largest down; each is divided by the first
    element of ``G`` whose leading monomial divides it.
    """
    ctx = _check_ctx([f, *G])
    order.check_arity(ctx.arity)
    if f.is_zero():
        return f
    red = _Reducer(order)
    for g in G:
        if not g.is_zero():
            red.add(_to_int(g))
    den = 1
    for c in f.terms.values():
        d = c.denominator
        den = den * d // gcd(den, d)
    p = {m: c.numerator * (den // c.denominator) for m, c in f.terms.items()}
    r, mult = red.reduce(p, full=True, track=True)
    return _from_int(ctx, r, order, denom=den * mult, monic=False)


def divide(f: Polynomial, G: Sequence[Polynomial], order: TermOrder = DEGREVLEX):
    """Multivariate division over Q: ``f = sum(q_i * G_i) + r``.

    Rational arithmetic throughout; used where quotients are needed.
    """
    ctx = _check_ctx([f, *G])
    key = order.key
    lts = [g.leading_term(order) if g else None for g in G]
    quots = [dict() for _ in G]
    p = dict(f.terms)
    r = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, lt in enumerate(lts):
            if lt is not None and _divides(lt[1], m):
                qc = c / lt[0]
                qm = tuple(a - b for a, b in zip(m, lt[1]))
                quots[i][qm] = quots[i].get(qm, 0) + qc
                for gm, gc in G[i].terms.items():
                    nm = tuple(a + b for a, b in zip(gm, qm))
                    v = p.get(nm, 0) - qc * gc
                    if v:
                        p[nm] = v
                    else:
                        p.pop(nm, None)
                break
        else:
            r[m] = c
            del p[m]
    return [Polynomial(ctx, q) for q in quots], Polynomial._raw(ctx, r)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    cf, mf = f.leading_term(order)
    cg, mg = g.leading_term(order)
    L = _lcm(mf, mg)
    uf = tuple(a - b for a, b in zip(L, mf))
    ug = tuple(a - b for a, b in zip(L, mg))
    return f.mul_term(uf, 1 / cf) - g.mul_term(ug, 1 / cg)


def is_groebner(G: Sequence[Polynomial], order: TermOrder) -> bool:
    """True iff every S-polynomial of ``G`` reduces to zero modulo ``G``."""
    G = [g for g in G if not g.is_zero()]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j], order), G, order).is_zero():
                return False
    return True


def is_reduced(G: Sequence[Polynomial], order: TermOrder) -> bool:
    lms = [g.leading_monomial(order) for g in G]
    for i, g in enumerate(G):
        if g.leading_coefficient(order) != 1:
            return False
        for m in g.terms:
            for j, lm in enumerate(lms):
                if j != i and _divides(lm, m):
                    return False
    return True


def buchberger(
    gens: Iterable[Polynomial],
    order: TermOrder = DEGREVLEX,
    budget: Budget | None = None,
    strategy: str = "sugar",
    ctx=None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``strategy`` is ``"normal"`` (smallest lcm in ``order`` first) or
    ``"sugar"``.  Raises :class:`BudgetExceeded` rather than returning a
    partial answer.
    """
    gens = [g for g in gens]
    ctx = _check_ctx(gens) or ctx
    if ctx is None:
        raise ValueError("cannot infer a context from an empty generator list")
    order.check_arity(ctx.arity)
    budget = budget or DEFAULT_BUDGET
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis((), order, ctx, stats={"pairs": 0})
    if strategy not in ("normal", "sugar"):
        raise ValueError(f"unknown selection strategy {strategy!r}")
    key = order.key

    red = _Reducer(order, budget.max_terms)
    sugar: list = []
    heap: list = []
    live: set = set()
    lcms: dict = {}

    def pair_entry(i, j, L):
        if strategy == "sugar":
            s = max(
                sugar[i] + sum(L) - sum(red.lm[i]),
                sugar[j] + sum(L) - sum(red.lm[j]),
            )
            return (s, key(L), i, j)
        return (key(L), i, j)

    def update(h: int):
        lmh = red.lm[h]
        lm = red.lm
        cand = []
        for g in red.active:
            if g != h:
                coprime = not any(x and y for x, y in zip(lmh, lm[g]))
                cand.append((g, _lcm(lmh, lm[g]), coprime))
        kept = []
        for idx, (g, L, coprime) in enumerate(cand):
            if not coprime and (
                any(_divides(L2, L) for _, L2, _ in cand[idx + 1:])
                or any(_divides(L2, L) for _, L2, _ in kept)
            ):
                continue
            kept.append((g, L, coprime))
        for pr in list(live):
            L = lcms[pr]
            if (
                _divides(lmh, L)
                and _lcm(lm[pr[0]], lmh) != L
                and _lcm(lm[pr[1]], lmh) != L
            ):
                live.discard(pr)
                del lcms[pr]
        for g, L, coprime in kept:
            if coprime:
                continue
            pr = (g, h) if g < h else (h, g)
            live.add(pr)
            lcms[pr] = L
            heapq.heappush(heap, pair_entry(pr[0], pr[1], L))
        red.active = [g for g in red.active if g == h or not _divides(lmh, lm[g])]

    def insert(p: dict, s: int):
        h = red.add(p)
        sugar.append(s)
        update(h)

    stats = {"pairs": 0, "zero_reductions": 0}
    for f in sorted(gens, key=lambda g: key(g.leading_monomial(order))):
        p, _ = red.reduce(_to_int(f), full=True)
        if p:
            insert(_content_free(p), f.total_degree())

    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    while heap:
        entry = heapq.heappop(heap)
        pr = (entry[-2], entry[-1])
        if pr not in live:
            continue
        live.discard(pr)
        stats["pairs"] += 1
        if stats["pairs"] > budget.max_pairs:
            raise BudgetExceeded(
                f"pair budget of {budget.max_pairs} exhausted",
                pairs=stats["pairs"],
                basis_size=len(red.active),
                pending=len(live),
            )
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(
                f"time budget of {budget.max_seconds}s exhausted",
                pairs=stats["pairs"],
                basis_size=len(red.active),
                pending=len(live),
            )
        i, j = pr
        L = lcms.pop(pr)
        ui = tuple(a - b for a, b in zip(L, red.lm[i]))
        uj = tuple(a - b for a, b in zip(L, red.lm[j]))
        ci, cj = red.lc[i], red.lc[j]
        g = gcd(ci, cj)
        ai, aj = cj // g, ci // g
        s: dict = {}
        for m, c in red.tails[i]:
            nm = tuple([x + y for x, y in zip(m, ui)])
            s[nm] = s.get(nm, 0) + ai * c
        for m, c in red.tails[j]:
            nm = tuple([x + y for x, y in zip(m, uj)])
            v = s.get(nm, 0) - aj * c
            if v:
                s[nm] = v
            else:
                s.pop(nm, None)
        s = {m: c for m, c in s.items() if c}
        if not s:
            stats["zero_reductions"] += 1
            continue
        sug = entry[0] if strategy == "sugar" else sum(L)
        h, _ = red.reduce(s, full=True)
        if not h:
            stats["zero_reductions"] += 1
            continue
        insert(_content_free(h), sug)
        if red.lm[-1] == ctx.one():
            break

    basis = _interreduce(red, order, ctx)
    stats["basis_size"] = len(basis)
    log.debug("buchberger: %s", stats)
    return GroebnerBasis(tuple(basis), order, ctx, True, stats)


def _interreduce(red: _Reducer, order: TermOrder, ctx) -> list:
    key = order.key
    if any(red.lm[i] == ctx.one() for i in red.active):
        return [Polynomial.constant(ctx, 1)]
    active = sorted(red.active, key=lambda i: key(red.lm[i]))
    out = []
    for i in active:
        lm, lc = red.lm[i], red.lc[i]
        tail = dict(red.tails[i])
        r, mult = red.reduce(tail, full=True, skip=i, track=True)
        p = {lm: lc * mult}
        p.update(r)
        p = _content_free(p)
        out.append(_from_int(ctx, p, order))
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def reduced_basis(gens, order: TermOrder = DEGREVLEX, **kw) -> GroebnerBasis:
    return buchberger(gens, order, **kw)
