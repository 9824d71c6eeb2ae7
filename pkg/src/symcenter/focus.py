"""Focus quantities by coefficient extraction.

With ``P = x - sum a_pq x^(p+1) y^q`` and ``Q = -y + sum b_qp x^q y^(p+1)``
and ``Psi = xy + sum v_jk x^j y^k``, the coefficient of ``x^J y^K`` in
``Psi_x P + Psi_y Q`` is

    (J - K) v_JK - sum_S (J - p) a_pq v_{J-p, K-q} + sum_S (K - p) b_qp v_{J-q, K-p}.

For ``J != K`` this is set to zero and solved for ``v_JK``.  At ``J = K = k + 1``
we take ``v_kk = 0`` (for ``k >= 2``) and the residual, with its sign flipped
so that the cubic family gives ``g_11 = a_11 - b_11``, is ``g_kk``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ideal import Ideal
from .orders import DEGREVLEX
from .poly import Polynomial
from .sibirsky import SystemSpec, coeff_name, involution, l_operator, sibirsky_basis

# overall sign applied to the residual (calibrated on the cubic g_11)
_SIGN = -1


@dataclass(frozen=True)
class PhaseSeries:
    """Coefficients ``v_jk`` of the Lyapunov function, as polynomials in ``(a, b)``."""

    spec: SystemSpec
    coefficients: dict
    truncation: int

    def __getitem__(self, jk) -> Polynomial:
        return self.coefficients.get(jk, Polynomial.zero(self.spec.ctx))


@dataclass(frozen=True)
class FocusQuantityList:
    spec: SystemSpec
    quantities: tuple
    series: PhaseSeries | None = field(default=None, compare=False, repr=False)

    def __getitem__(self, k: int) -> Polynomial:
        """1-based: ``fq[1]`` is ``g_11``."""
        if k < 1:
            raise IndexError("focus quantities are numbered from 1")
        return self.quantities[k - 1]

    def __len__(self):
        return len(self.quantities)

    def __iter__(self):
        return iter(self.quantities)

    def ideal(self, k: int | None = None) -> Ideal:
        k = len(self.quantities) if k is None else k
        return Ideal(self.quantities[:k], self.spec.ctx)


def _axpy(acc: dict, src: dict, var: int, c: Fraction):
    """``acc += c * x_var * src`` on raw term dictionaries."""
    for m, v in src.items():
        nm = m[:var] + (m[var] + 1,) + m[var + 1:]
        s = acc.get(nm, 0) + c * v
        if s:
            acc[nm] = s
        else:
            acc.pop(nm, None)


def focus_quantities(spec: SystemSpec, kmax: int) -> FocusQuantityList:
    """``g_11, ..., g_{kmax,kmax}`` together with the series they come from."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    ctx = spec.ctx
    avar = [ctx.index(coeff_name("a", p, q)) for p, q in spec.pairs]
    bvar = [ctx.index(coeff_name("b", q, p)) for p, q in spec.pairs]
    pairs = list(zip(spec.pairs, avar, bvar))
    top = 2 * (kmax + 1)
    v: dict = {(1, 1): {ctx.one(): Fraction(1)}}
    g = []
    for s in range(3, top + 1):
        for J in range(s + 1):
            K = s - J
            acc: dict = {}
            for (p, q), ai, bi in pairs:
                src = v.get((J - p, K - q))
                if src and J - p:
                    _axpy(acc, src, ai, Fraction(J - p))
                src = v.get((J - q, K - p))
                if src and K - p:
                    _axpy(acc, src, bi, Fraction(-(K - p)))
            # acc holds sum (J-p) a v - sum (K-p) b v
            if J != K:
                if acc:
                    d = Fraction(1, J - K)
                    v[(J, K)] = {m: c * d for m, c in acc.items()}
            else:
                # residual = -acc with v_JJ = 0
                g.append(Polynomial._raw(ctx, {m: -_SIGN * c for m, c in acc.items()}))
    series = PhaseSeries(
        spec,
        {jk: Polynomial._raw(ctx, t) for jk, t in v.items()},
        top - 1,
    )
    return FocusQuantityList(spec, tuple(g[:kmax]), series)


# -- structure checks ---------------------------------------------------------------
@dataclass
class StructureCheck:
    k: int
    levels_ok: bool
    antisymmetric: bool
    in_sibirsky: bool
    offending: tuple | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.levels_ok and self.antisymmetric and self.in_sibirsky


@dataclass
class StructureReport:
    spec: SystemSpec
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


def check_quantity(spec: SystemSpec, k: int, g: Polynomial, basis=None) -> StructureCheck:
    """Level ``(k, k)``, antisymmetry under conjugation, membership in the Sibirsky ideal."""
    if g.ctx != spec.ctx:
        raise ValueError("focus quantity is not in the coefficient ring of the system")
    chk = StructureCheck(k, True, True, True)
    for nu, c in g.terms.items():
        if l_operator(spec, nu) != (k, k):
            chk.levels_ok = False
            chk.offending = nu
            chk.detail = f"monomial {nu} has L = {l_operator(spec, nu)}, expected {(k, k)}"
            break
    for nu, c in g.terms.items():
        if g.coefficient(involution(nu)) != -c:
            chk.antisymmetric = False
            chk.offending = chk.offending or nu
            chk.detail = chk.detail or f"coefficient of conjugate of {nu} is not {-c}"
            break
    G = basis if basis is not None else sibirsky_basis(spec)
    r = G.reduce(g)
    if not r.is_zero():
        chk.in_sibirsky = False
        chk.detail = chk.detail or f"remainder modulo the Sibirsky ideal: {r.format(DEGREVLEX)}"
    return chk


def verify_structure(spec: SystemSpec, fq: FocusQuantityList | Sequence[Polynomial]) -> StructureReport:
    quantities = fq.quantities if isinstance(fq, FocusQuantityList) else tuple(fq)
    G = sibirsky_basis(spec)
    return StructureReport(
        spec, [check_quantity(spec, k, g, G) for k, g in enumerate(quantities, start=1)]
    )


def swap_conjugate(spec: SystemSpec, f: Polynomial) -> Polynomial:
    """Apply ``a_pq <-> b_qp`` (exponent reversal)."""
    return Polynomial._raw(f.ctx, {involution(m): c for m, c in f.terms.items()})
