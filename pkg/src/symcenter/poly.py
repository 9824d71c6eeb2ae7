"""Sparse multivariate polynomials over the rationals.

Polynomials map exponent tuples to nonzero :class:`fractions.Fraction`
coefficients and carry the :class:`VarContext` they live in.  Values are
immutable; all arithmetic returns new objects.

Text grammar (whitespace is ignored)::

    poly    := ['-'] term (('+' | '-') term)*
    term    := coeff ['*' powprod] | powprod
    powprod := varpow ('*' varpow)*
    varpow  := name ['^' nat]
    coeff   := nat ['/' nat]
    name    := letter (letter | digit | '_')*
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .orders import LEX, TermOrder

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ContextMismatchError(ValueError):
    """Operands live in different variable contexts."""


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class UnknownVariableError(ValueError):
    def __init__(self, name: str, pos: int | None = None):
        where = "" if pos is None else f" at position {pos}"
        super().__init__(f"unknown variable {name!r}{where}")
        self.name = name
        self.pos = pos


@dataclass(frozen=True)
class VarContext:
    """Ordered, duplicate-free list of variable names."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def gens(self) -> tuple:
        return tuple(Polynomial.var(self, n) for n in self.names)

    def gen(self, name: str) -> "Polynomial":
        return Polynomial.var(self, name)

    def one(self) -> tuple:
        return (0,) * len(self.names)

    def fresh(self, base: str) -> str:
        """A variable name based on ``base`` that is not yet in use."""
        if base not in self:
            return base
        i = 0
        while f"{base}{i}" in self:
            i += 1
        return f"{base}{i}"

    def extend(self, names: Sequence[str], front: bool = True) -> "VarContext":
        names = tuple(names)
        return VarContext(names + self.names if front else self.names + names)

    def without(self, names: Iterable[str]) -> "VarContext":
        drop = set(names)
        return VarContext(tuple(n for n in self.names if n not in drop))

    def __str__(self):
        return ", ".join(self.names)


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Polynomial:
    """Immutable sparse polynomial in ``Q[ctx]``."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping | None = None):
        self.ctx = ctx
        clean = {}
        if terms:
            n = ctx.arity
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} does not match arity {n}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = _coerce(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms: dict) -> "Polynomial":
        # trusted constructor: exponent tuples valid, coefficients nonzero Fractions
        p = object.__new__(cls)
        p.ctx = ctx
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ctx) -> "Polynomial":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx, c) -> "Polynomial":
        c = _coerce(c)
        return cls._raw(ctx, {ctx.one(): c} if c else {})

    @classmethod
    def var(cls, ctx, name: str) -> "Polynomial":
        i = ctx.index(name)
        m = [0] * ctx.arity
        m[i] = 1
        return cls._raw(ctx, {tuple(m): Fraction(1)})

    @classmethod
    def monomial(cls, ctx, exps, coeff=1) -> "Polynomial":
        return cls(ctx, {tuple(exps): coeff})

    # -- basic access ----------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ctx.one() in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def support(self) -> frozenset:
        """Indices of variables that occur."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return frozenset(used)

    def variables(self) -> tuple:
        return tuple(self.ctx.names[i] for i in sorted(self.support()))

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self, order: TermOrder = LEX) -> list:
        """``(monomial, coefficient)`` pairs, largest first."""
        key = order.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: TermOrder) -> tuple:
        """``(coefficient, monomial)`` of the order-maximal term."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self._terms, key=order.key)
        return self._terms[m], m

    def leading_monomial(self, order: TermOrder) -> tuple:
        return self.leading_term(order)[1]

    def leading_coefficient(self, order: TermOrder) -> Fraction:
        return self.leading_term(order)[0]

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"context mismatch: ({self.ctx}) vs ({other.ctx})")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.ctx, other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _coerce(c)
        if not c:
            return Polynomial.zero(self.ctx)
        return Polynomial._raw(self.ctx, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, exps, c=1) -> "Polynomial":
        """Multiply by the single term ``c * x^exps``."""
        c = _coerce(c)
        if not c:
            return Polynomial.zero(self.ctx)
        exps = tuple(exps)
        return Polynomial._raw(
            self.ctx,
            {tuple(a + b for a, b in zip(m, exps)): v * c for m, v in self._terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    s = out.get(m, 0) + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
            return Polynomial._raw(self.ctx, out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    # -- conversions -----------------------------------------------------
    def monic(self, order: TermOrder) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def primitive(self, order: TermOrder) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self._terms.values()))
        ints = [c.numerator * (den // c.denominator) for c in self._terms.values()]
        g = gcd(*ints)
        if self.leading_coefficient(order) < 0:
            g = -g
        return self.scale(Fraction(den, g))

    def to_context(self, ctx: VarContext) -> "Polynomial":
        """Re-embed into ``ctx`` by variable name."""
        if ctx == self.ctx:
            return self
        used = self.support()
        pos = {i: ctx.index(self.ctx.names[i]) for i in used}
        n = ctx.arity
        out = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i in used:
                e[pos[i]] = m[i]
            out[tuple(e)] = c
        return Polynomial._raw(ctx, out)

    def substitute(self, images: Mapping[str, "Polynomial"], ctx: VarContext) -> "Polynomial":
        """Replace each variable by a polynomial in ``ctx``.

        Variables missing from ``images`` must exist in ``ctx``.
        """
        gens = []
        for name in self.ctx.names:
            if name in images:
                img = images[name]
                if img.ctx != ctx:
                    raise ContextMismatchError(f"image of {name} is not in ({ctx})")
                gens.append(img)
            else:
                gens.append(Polynomial.var(ctx, name))
        out = Polynomial.zero(ctx)
        powers: dict = {}
        for m, c in self._terms.items():
            t = Polynomial.constant(ctx, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = gens[i] ** e
                    t = t * powers[key]
            out = out + t
        return out

    def format(self, order: TermOrder = LEX) -> str:
        return format_poly(self, order)

    def __str__(self):
        return format_poly(self, LEX)

    def __repr__(self):
        return f"Polynomial({format_poly(self, LEX)!r})"


# -- formatting --------------------------------------------------------------
def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_powprod(names, m) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial, order: TermOrder = LEX) -> str:
    """Canonical text: terms descending in ``order``."""
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        pp = _fmt_powprod(p.ctx.names, m)
        if not pp:
            body = _fmt_coeff(a)
        elif a == 1:
            body = pp
        else:
            body = f"{_fmt_coeff(a)}*{pp}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- parsing -----------------------------------------------------------------
_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|(\d+)|([-+*/^]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN_RE.match(text, pos)
        if not mt:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = mt.start(mt.lastindex)
        if mt.group(1):
            tokens.append(("name", mt.group(1), start))
        elif mt.group(2):
            tokens.append(("nat", int(mt.group(2)), start))
        else:
            tokens.append(("op", mt.group(3), start))
        pos = mt.end()
    tokens.append(("end", None, n))
    return tokens


def variable_names(text: str) -> list:
    """Names occurring in ``text``, in order of first appearance."""
    seen = {}
    for kind, val, _ in _tokenize(text):
        if kind == "name":
            seen.setdefault(val, None)
    return list(seen)


class _Parser:
    def __init__(self, text: str, ctx: VarContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(msg, self.text, tok[2])

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self) -> Polynomial:
        terms: dict = {}
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        while True:
            c, m = self.term()
            c *= sign
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
            t = self.peek()
            if t[0] == "end":
                break
            if t[0] == "op" and t[1] in "+-":
                self.take()
                sign = 1 if t[1] == "+" else -1
                continue
            self.error("expected '+', '-' or end of input")
        return Polynomial._raw(self.ctx, terms)

    def term(self):
        t = self.peek()
        exps = [0] * self.ctx.arity
        if t[0] == "nat":
            self.take()
            num = t[1]
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                d = self.take()
                if d[0] != "nat":
                    self.error("expected denominator", d)
                if d[1] == 0:
                    self.error("zero denominator", d)
                den = d[1]
            c = Fraction(num, den)
            if self.peek()[:2] == ("op", "*"):
                self.take()
                self.powprod(exps)
            return c, tuple(exps)
        if t[0] == "name":
            self.powprod(exps)
            return Fraction(1), tuple(exps)
        self.error("expected a coefficient or variable")

    def powprod(self, exps):
        while True:
            t = self.take()
            if t[0] != "name":
                self.error("expected a variable name", t)
            if t[1] not in self.ctx:
                raise UnknownVariableError(t[1], t[2])
            i = self.ctx.index(t[1])
            e = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                d = self.take()
                if d[0] != "nat":
                    self.error("expected exponent", d)
                e = d[1]
            exps[i] += e
            if self.peek()[:2] == ("op", "*"):
                self.take()
                continue
            return


def parse(text: str, ctx: VarContext) -> Polynomial:
    """Parse ``text`` in the polynomial grammar."""
    if not text.strip():
        raise PolynomialSyntaxError("empty input", text, 0)
    return _Parser(text, ctx).parse()


def parse_list(lines: Iterable[str], ctx: VarContext | None = None) -> list:
    """Parse one polynomial per line; ``#`` starts a comment.

    Without ``ctx`` the context is inferred from the names in order of first
    appearance.
    """
    texts = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            texts.append(line)
    if ctx is None:
        names: dict = {}
        for t in texts:
            for n in variable_names(t):
                names.setdefault(n, None)
        if not names:
            raise ValueError("cannot infer variables from constant input")
        ctx = VarContext(tuple(names))
    return [parse(t, ctx) for t in texts]
