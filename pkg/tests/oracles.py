"""Independent reference implementations used only by the tests (sympy-based)."""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from symcenter.orders import TermOrder
from symcenter.poly import Polynomial, VarContext
from symcenter.sibirsky import SystemSpec, coeff_name


def symbols_for(ctx: VarContext):
    return sp.symbols(list(ctx.names))


def to_sympy(p: Polynomial):
    gens = symbols_for(p.ctx)
    expr = sp.Integer(0)
    for m, c in p.terms.items():
        t = sp.Rational(c.numerator, c.denominator)
        for g, e in zip(gens, m):
            t *= g ** e
        expr += t
    return expr


def from_sympy(expr, ctx: VarContext) -> Polynomial:
    gens = symbols_for(ctx)
    P = sp.Poly(sp.expand(expr), *gens, domain="QQ")
    return Polynomial(ctx, {m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


def sympy_groebner(polys, ctx: VarContext, order: TermOrder) -> list:
    """Reduced monic basis computed by sympy, for lex or degrevlex."""
    gens = symbols_for(ctx)
    name = {"lex": "lex", "degrevlex": "grevlex"}[order.kind]
    G = sp.groebner([to_sympy(p) for p in polys], *gens, order=name, domain="QQ")
    return [from_sympy(g, ctx).monic(order) for g in G.exprs]


def series_focus_quantities(spec: SystemSpec, kmax: int) -> list:
    """Focus quantities by brute-force undetermined coefficients in sympy.

    Builds ``Psi = xy + sum v_jk x^j y^k`` with fresh unknowns, expands the
    derivative of ``Psi`` along the vector field, and solves degree by degree.
    Returns the coefficients of ``(xy)^(k+1)`` with ``v_kk = 0`` (``k >= 2``),
    as polynomials in the coefficient ring of the system, without any sign change.
    """
    x, y = sp.symbols("x y")
    ctx = spec.ctx
    A = {(p, q): sp.Symbol(coeff_name("a", p, q)) for p, q in spec.pairs}
    B = {(p, q): sp.Symbol(coeff_name("b", q, p)) for p, q in spec.pairs}
    P = x - sum(A[pq] * x ** (pq[0] + 1) * y ** pq[1] for pq in spec.pairs)
    Q = -(y - sum(B[pq] * x ** pq[1] * y ** (pq[0] + 1) for pq in spec.pairs))
    top = 2 * (kmax + 1)
    unknowns = {}
    psi = x * y
    for s in range(3, top + 1):
        for j in range(s + 1):
            k = s - j
            if j == k:
                continue
            v = sp.Symbol(f"v_{j}_{k}")
            unknowns[(j, k)] = v
            psi += v * x ** j * y ** k
    X = sp.expand(sp.diff(psi, x) * P + sp.diff(psi, y) * Q)
    poly = sp.Poly(X, x, y)
    coeffs = {m: c for m, c in poly.terms()}
    solution = {}
    out = []
    for s in range(3, top + 1):
        for j in range(s + 1):
            k = s - j
            c = sp.expand(coeffs.get((j, k), 0)).subs(solution)
            if j == k:
                out.append(from_sympy(sp.expand(c), ctx))
            else:
                v = unknowns[(j, k)]
                solution[v] = sp.expand(-c.subs(v, 0) / c.coeff(v))
    return out[:kmax]
