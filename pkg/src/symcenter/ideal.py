"""Ideals and the operations built on elimination.

Every operation that needs auxiliary variables (intersection, radical
membership, implicitization) puts them in a fresh leading block of an
elimination order and drops them again afterwards.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .groebner import Budget, GroebnerBasis, buchberger, divide
from .orders import DEGREVLEX, TermOrder, elimination_order
from .poly import ContextMismatchError, Polynomial, VarContext, parse


class Ideal:
    """Ideal given by generators, with reduced bases cached per term order."""

    def __init__(self, generators: Iterable[Polynomial], ctx: VarContext | None = None,
                 bases: Mapping[TermOrder, GroebnerBasis] | None = None):
        gens = [g for g in generators]
        for g in gens:
            if ctx is None:
                ctx = g.ctx
            elif g.ctx != ctx:
                raise ContextMismatchError(f"generator {g} is not in ({ctx})")
        if ctx is None:
            raise ValueError("an ideal without generators needs an explicit context")
        self.ctx = ctx
        self.generators = tuple(g for g in gens if not g.is_zero())
        self._bases = dict(bases or {})
        self._lock = threading.Lock()

    @classmethod
    def from_strings(cls, texts: Iterable[str], ctx: VarContext) -> "Ideal":
        return cls([parse(t, ctx) for t in texts], ctx)

    def groebner(self, order: TermOrder = DEGREVLEX, budget: Budget | None = None) -> GroebnerBasis:
        with self._lock:
            G = self._bases.get(order)
        if G is None:
            G = buchberger(self.generators, order, budget=budget, ctx=self.ctx)
            with self._lock:
                G = self._bases.setdefault(order, G)
        return G

    def contains(self, f: Polynomial) -> bool:
        return is_member(f, self)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def to_context(self, ctx: VarContext) -> "Ideal":
        return Ideal([g.to_context(ctx) for g in self.generators], ctx)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


def _same_ctx(I: Ideal, J: Ideal):
    if I.ctx != J.ctx:
        raise ContextMismatchError(f"ideals live in ({I.ctx}) and ({J.ctx})")


def is_member(f: Polynomial, I: Ideal, budget: Budget | None = None) -> bool:
    if f.ctx != I.ctx:
        raise ContextMismatchError(f"{f} is not in ({I.ctx})")
    if f.is_zero():
        return True
    G = I.groebner(budget=budget)
    return G.reduce(f).is_zero()


def ideal_equal(I: Ideal, J: Ideal, budget: Budget | None = None) -> bool:
    """Equality by comparing reduced degrevlex bases."""
    _same_ctx(I, J)
    return I.groebner(budget=budget).generators == J.groebner(budget=budget).generators


def eliminate(I: Ideal, drop: Iterable[str], budget: Budget | None = None,
              order: TermOrder | None = None) -> Ideal:
    """``I`` intersected with the subring on the variables not in ``drop``.

    The result lives in the smaller context (same ordering of the remaining
    names).  ``order`` may override the default two-block degrevlex order as
    long as it eliminates ``drop``.
    """
    drop = list(dict.fromkeys(drop))
    for n in drop:
        I.ctx.index(n)
    if not drop:
        return I
    idx = [I.ctx.index(n) for n in drop]
    if order is None:
        order = elimination_order(I.ctx.arity, idx)
    G = buchberger(I.generators, order, budget=budget, ctx=I.ctx)
    dropset = set(idx)
    sub = I.ctx.without(drop)
    kept = [g.to_context(sub) for g in G if not (g.support() & dropset)]
    return Ideal(kept, sub)


def _with_fresh(ctx: VarContext, base: str) -> tuple:
    name = ctx.fresh(base)
    return ctx.extend([name]), name


def intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """``<t f_i, (1 - t) h_j>`` with ``t`` eliminated."""
    _same_ctx(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal([], I.ctx)
    ext, t = _with_fresh(I.ctx, "t")
    T = ext.gen(t)
    gens = [T * f.to_context(ext) for f in I.generators]
    gens += [(1 - T) * h.to_context(ext) for h in J.generators]
    out = eliminate(Ideal(gens, ext), [t], budget=budget)
    return out.to_context(I.ctx)


def intersect_all(ideals: Sequence[Ideal], budget: Budget | None = None) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J, budget=budget)
    return out


def _exact_quotient(f: Polynomial, h: Polynomial) -> Polynomial:
    (q,), r = divide(f, [h], DEGREVLEX)
    if not r.is_zero():
        raise ArithmeticError(f"{h} does not divide {f}")
    return q


def quotient(I: Ideal, H: Ideal, budget: Budget | None = None) -> Ideal:
    """``I : H``, as the intersection of ``(I cap <h>) / h`` over generators of ``H``."""
    _same_ctx(I, H)
    if H.is_zero():
        raise ValueError("quotient by the zero ideal")
    parts = []
    for h in H.generators:
        inter = intersect(I, Ideal([h]), budget=budget)
        parts.append(Ideal([_exact_quotient(g, h) for g in inter.generators], I.ctx))
    return intersect_all(parts, budget=budget)


def radical_member(f: Polynomial, I: Ideal, budget: Budget | None = None) -> bool:
    """``f`` in the radical of ``I`` iff ``1`` in ``I + <1 - w f>``."""
    if f.ctx != I.ctx:
        raise ContextMismatchError(f"{f} is not in ({I.ctx})")
    if f.is_zero():
        return True
    ext, w = _with_fresh(I.ctx, "w")
    W = ext.gen(w)
    gens = [g.to_context(ext) for g in I.generators] + [1 - W * f.to_context(ext)]
    G = buchberger(gens, DEGREVLEX, budget=budget, ctx=ext)
    return G.is_unit()


@dataclass(frozen=True)
class RationalMap:
    """``x_i = f_i(t) / g_i(t)`` from parameter space to ``target``."""

    target: VarContext
    params: VarContext
    numerators: tuple
    denominators: tuple

    def __post_init__(self):
        n = self.target.arity
        if len(self.numerators) != n or len(self.denominators) != n:
            raise ValueError("need one numerator and denominator per target variable")
        for f, g in zip(self.numerators, self.denominators):
            if f.ctx != self.params or g.ctx != self.params:
                raise ContextMismatchError("map components must be polynomials in the parameters")
            if g.is_zero():
                raise ZeroDivisionError("zero denominator in rational map")

    @classmethod
    def from_strings(cls, target: VarContext, params: Sequence[str],
                     images: Mapping[str, str | tuple]) -> "RationalMap":
        """``images[x] = "num"`` or ``("num", "den")``; unmapped targets are an error."""
        pctx = VarContext(tuple(params))
        nums, dens = [], []
        for name in target.names:
            if name not in images:
                raise ValueError(f"no image for {name}")
            img = images[name]
            num, den = (img, "1") if isinstance(img, str) else img
            nums.append(parse(num, pctx))
            dens.append(parse(den, pctx))
        return cls(target, pctx, tuple(nums), tuple(dens))

    def pullback_numerator(self, f: Polynomial) -> Polynomial:
        """Numerator of ``f(f_1/g_1, ..., f_n/g_n)`` over ``prod g_i^deg(f)``."""
        if f.ctx != self.target:
            raise ContextMismatchError(f"{f} is not in ({self.target})")
        d = max(f.total_degree(), 0)
        num = Polynomial.zero(self.params)
        for m, c in f.terms.items():
            t = Polynomial.constant(self.params, c)
            for e, fi, gi in zip(m, self.numerators, self.denominators):
                t = t * fi ** e * gi ** (d - e)
            num = num + t
        return num

    def vanishes_on_image(self, f: Polynomial) -> bool:
        return self.pullback_numerator(f).is_zero()


def implicitize(rmap: RationalMap, budget: Budget | None = None) -> Ideal:
    """Closure of the image: ``Q[x] cap <1 - t g, g_i x_i - f_i>``, ``g = prod g_i``."""
    target, params = rmap.target, rmap.params
    names = list(target.names)
    t = "t"
    while t in target or t in params:
        t += "t"
    for n in params.names:
        if n in target:
            raise ValueError(f"parameter {n} clashes with a target variable")
    ext = VarContext((t,) + params.names + target.names)
    T = ext.gen(t)
    g = Polynomial.constant(ext, 1)
    for gi in rmap.denominators:
        g = g * gi.to_context(ext)
    gens = [1 - T * g]
    for name, fi, gi in zip(names, rmap.numerators, rmap.denominators):
        gens.append(gi.to_context(ext) * ext.gen(name) - fi.to_context(ext))
    return eliminate(Ideal(gens, ext), (t,) + params.names, budget=budget)


def certifies_prime(J: Ideal, rmap: RationalMap, budget: Budget | None = None) -> bool:
    """True when the implicitization of ``rmap`` is exactly ``J`` (so ``J`` is prime)."""
    img = implicitize(rmap, budget=budget)
    return ideal_equal(img.to_context(J.ctx), J, budget=budget)
