"""The monoid of invariants, the Sibirsky ideal and its Hilbert basis.

A system ``dx/dt = x - sum a_pq x^(p+1) y^q``,
``-dy/dt = y - sum b_qp x^q y^(p+1)`` is described by its index pairs
``(p_i, q_i)``.  Coefficient variables are ordered

    a_{p1 q1}, ..., a_{pl ql}, b_{ql pl}, ..., b_{q1 p1}

so that reversing an exponent vector swaps each ``a_pq`` with ``b_qp``.
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .groebner import Budget, GroebnerBasis, buchberger
from .ideal import Ideal
from .orders import DEGREVLEX, block
from .poly import Polynomial, VarContext

log = logging.getLogger(__name__)


def _idx(k: int) -> str:
    return f"m{-k}" if k < 0 else str(k)


def coeff_name(letter: str, i: int, j: int) -> str:
    """``a_{-1,2}`` -> ``a_m1_2``."""
    return f"{letter}_{_idx(i)}_{_idx(j)}"


_NAME = re.compile(r"([ab])_(m?\d+)_(m?\d+)\Z")


def parse_coeff_name(name: str) -> tuple:
    mt = _NAME.match(name)
    if not mt:
        raise ValueError(f"not a coefficient name: {name!r}")

    def num(s):
        return -int(s[1:]) if s.startswith("m") else int(s)

    return mt.group(1), num(mt.group(2)), num(mt.group(3))


@dataclass(frozen=True)
class SystemSpec:
    """Index set ``S = {(p_i, q_i)}`` of a polynomial system."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(p), int(q)) for p, q in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("a system needs at least one pair")
        if len(set(pairs)) != len(pairs):
            raise ValueError(f"duplicate pairs in {pairs}")
        for p, q in pairs:
            if p < -1 or q < 0:
                raise ValueError(f"pair {(p, q)}: need p >= -1 and q >= 0")
            if p + q < 1:
                raise ValueError(f"pair {(p, q)}: need p + q >= 1")

    @property
    def l(self) -> int:
        return len(self.pairs)

    @property
    def a_names(self) -> tuple:
        return tuple(coeff_name("a", p, q) for p, q in self.pairs)

    @property
    def b_names(self) -> tuple:
        # b_{q_l p_l}, ..., b_{q_1 p_1}
        return tuple(coeff_name("b", q, p) for p, q in reversed(self.pairs))

    @property
    def ctx(self) -> VarContext:
        return _ctx(self)

    def columns(self) -> list:
        """Columns of the operator L, one per coefficient variable."""
        cols = [(p, q) for p, q in self.pairs]
        cols += [(q, p) for p, q in reversed(self.pairs)]
        return cols

    def is_resonant(self) -> bool:
        return all(p == q for p, q in self.pairs)

    @classmethod
    def from_text(cls, text: str) -> "SystemSpec":
        """Line 1: ``l``; then ``l`` lines ``p q``.  ``#`` starts a comment."""
        rows = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append(line.split())
        if not rows:
            raise ValueError("empty system spec")
        if len(rows[0]) != 1:
            raise ValueError("first line must hold the number of pairs")
        l = int(rows[0][0])
        pairs = []
        for r in rows[1:]:
            if len(r) != 2:
                raise ValueError(f"expected 'p q', got {' '.join(r)!r}")
            pairs.append((int(r[0]), int(r[1])))
        if len(pairs) != l:
            raise ValueError(f"header announces {l} pairs, found {len(pairs)}")
        return cls(tuple(pairs))

    @classmethod
    def from_file(cls, path) -> "SystemSpec":
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        return "\n".join([str(self.l)] + [f"{p} {q}" for p, q in self.pairs]) + "\n"


@lru_cache(maxsize=None)
def _ctx(spec: SystemSpec) -> VarContext:
    return VarContext(spec.a_names + spec.b_names)


@dataclass(frozen=True)
class MonoidElement:
    nu: tuple
    level: int

    @property
    def degree(self) -> int:
        return sum(self.nu)


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple

    @property
    def vectors(self) -> list:
        return [e.nu for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def max_degree(self) -> int:
        return max((e.degree for e in self.elements), default=0)


# -- operator L and conjugation -------------------------------------------------
def l_operator(spec: SystemSpec, nu: Sequence[int]) -> tuple:
    nu = tuple(nu)
    if len(nu) != 2 * spec.l:
        raise ValueError(f"expected a vector of length {2 * spec.l}, got {len(nu)}")
    if any(v < 0 for v in nu):
        raise ValueError("exponent vectors must be nonnegative")
    L1 = L2 = 0
    for v, (c1, c2) in zip(nu, spec.columns()):
        L1 += v * c1
        L2 += v * c2
    return L1, L2


def involution(nu: Sequence[int]) -> tuple:
    return tuple(reversed(tuple(nu)))


def in_monoid(spec: SystemSpec, nu) -> bool:
    L1, L2 = l_operator(spec, nu)
    return L1 == L2 and L1 >= 0


def monoid_element(spec: SystemSpec, nu) -> MonoidElement:
    L1, L2 = l_operator(spec, nu)
    if L1 != L2 or L1 < 0:
        raise ValueError(f"{tuple(nu)} is not in the monoid: L = {(L1, L2)}")
    return MonoidElement(tuple(nu), L1)


def bracket(spec: SystemSpec, nu) -> Polynomial:
    """The coefficient monomial ``[nu]``."""
    return Polynomial.monomial(spec.ctx, tuple(nu))


def im_re(spec: SystemSpec, nu) -> tuple:
    """``(IM[nu], RE[nu]) = ([nu] - [nu_bar], [nu] + [nu_bar])``."""
    if len(nu) != 2 * spec.l:
        raise ValueError(f"expected a vector of length {2 * spec.l}")
    m, mb = bracket(spec, nu), bracket(spec, involution(nu))
    return m - mb, m + mb


# -- monoid enumeration -----------------------------------------------------------
def enumerate_monoid(spec: SystemSpec, max_total_degree: int, cross_check: bool = False) -> list:
    """All monoid elements of total degree at most ``max_total_degree``.

    Solved as the single Diophantine equation ``L1(nu) - L2(nu) = 0`` by a
    pruned depth-first search.  With ``cross_check`` the result is compared
    against the brute-force level characterisation ``L(nu) = (k, k)``.
    """
    if max_total_degree < 0:
        raise ValueError("degree bound must be nonnegative")
    w = [c1 - c2 for c1, c2 in spec.columns()]
    n = len(w)
    # suffix extremes of reachable weight per remaining unit of degree
    hi = [0] * (n + 1)
    lo = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        hi[i] = max(hi[i + 1], w[i])
        lo[i] = min(lo[i + 1], w[i])
    out = []
    cur = [0] * n

    def rec(i, budget, s):
        if i == n:
            if s == 0:
                out.append(tuple(cur))
            return
        # remaining coordinates can shift s by at most budget*hi / budget*lo
        if s + budget * hi[i] < 0 or s + budget * lo[i] > 0:
            return
        for v in range(budget + 1):
            cur[i] = v
            rec(i + 1, budget - v, s + v * w[i])
        cur[i] = 0

    rec(0, max_total_degree, 0)
    elems = [monoid_element(spec, nu) for nu in out]
    if cross_check:
        other = enumerate_by_level(spec, max_total_degree)
        if {e.nu for e in elems} != {e.nu for e in other}:
            raise AssertionError("Diophantine and level characterisations disagree")
    return elems


def _all_vectors(n: int, bound: int) -> np.ndarray:
    rows = np.zeros((1, 0), dtype=np.int16)
    sums = np.zeros(1, dtype=np.int16)
    for _ in range(n):
        reps = (bound - sums + 1).astype(np.int64)
        idx = np.repeat(np.arange(len(rows)), reps)
        offs = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
        rows = np.hstack([rows[idx], offs[:, None].astype(np.int16)])
        sums = sums[idx] + offs.astype(np.int16)
    return rows


def enumerate_by_level(spec: SystemSpec, max_total_degree: int) -> list:
    """Brute force: every vector with ``|nu| <= bound`` and ``L(nu) = (k, k)``, ``k >= 0``."""
    A = np.array(spec.columns(), dtype=np.int64).T
    V = _all_vectors(2 * spec.l, max_total_degree)
    L = V.astype(np.int64) @ A.T
    ok = (L[:, 0] == L[:, 1]) & (L[:, 0] >= 0)
    return [MonoidElement(tuple(int(x) for x in row), int(k)) for row, k in zip(V[ok], L[ok, 0])]


def level(spec: SystemSpec, k: int, max_total_degree: int | None = None) -> list:
    """Monoid elements with ``L(nu) = (k, k)``."""
    if max_total_degree is None:
        # each column satisfies c1 + c2 >= 1, so |nu| <= L1 + L2 = 2k
        max_total_degree = 2 * k
    return [e for e in enumerate_monoid(spec, max_total_degree) if e.level == k]


def degree_bound(spec: SystemSpec) -> int:
    """Bound on the degree of irreducible invariants: ``2 (1 + n)``.

    ``n`` is the degree of the system, i.e. the largest total degree of a
    nonlinear term ``x^(p+1) y^q``.  (Taking ``n = max(p + q)`` is too small:
    the full cubic family has an irreducible invariant of degree 7.)
    """
    n = max(p + q for p, q in spec.pairs) + 1
    return 2 * (1 + n)


# -- the Sibirsky ideal ---------------------------------------------------------------
def extended_context(spec: SystemSpec) -> VarContext:
    ys = tuple(f"y{i + 1}" for i in range(spec.l))
    return VarContext(("t1", "t2", "s1", "s2") + ys + spec.a_names + spec.b_names)


def symmetry_order(spec: SystemSpec):
    """``{t1, t2, s1, s2} > {y} > {a, b}``, degrevlex inside each block."""
    l = spec.l
    return block(
        (range(4), "degrevlex"),
        (range(4, 4 + l), "degrevlex"),
        (range(4 + l, 4 + 3 * l), "degrevlex"),
    )


def _toric_factor(ctx: VarContext, y: str, e1: int, e2: int) -> Polynomial:
    exps = [0] * ctx.arity
    exps[ctx.index(y)] = 1
    for e, (t, s) in ((e1, ("t1", "s1")), (e2, ("t2", "s2"))):
        if e >= 0:
            exps[ctx.index(t)] += e
        else:
            exps[ctx.index(s)] += -e
    return Polynomial.monomial(ctx, exps)


def extended_generators(spec: SystemSpec) -> list:
    """Generators of the ideal whose elimination gives the Sibirsky ideal."""
    ctx = extended_context(spec)
    l = spec.l
    gens = []
    for i, (p, q) in enumerate(spec.pairs):
        a = ctx.gen(coeff_name("a", p, q))
        gens.append(a - _toric_factor(ctx, f"y{i + 1}", p, q))
    for i in range(l):
        # x_{l+i+1} = b_{q p} of pair l-i, mapped to y_{l-i} t1^q t2^p
        p, q = spec.pairs[l - 1 - i]
        b = ctx.gen(coeff_name("b", q, p))
        gens.append(b - _toric_factor(ctx, f"y{l - i}", q, p))
    t1, t2, s1, s2 = (ctx.gen(n) for n in ("t1", "t2", "s1", "s2"))
    gens += [t1 * s1 - 1, t2 * s2 - 1]
    return gens


@lru_cache(maxsize=32)
def _sibirsky_basis(spec: SystemSpec, budget: Budget | None, strategy: str) -> GroebnerBasis:
    ext = extended_context(spec)
    G = buchberger(extended_generators(spec), symmetry_order(spec), budget=budget, strategy=strategy)
    keep = set(range(4 + spec.l, ext.arity))
    ctx = spec.ctx
    gens = tuple(
        g.to_context(ctx) for g in G if g.support() <= keep
    )
    log.info("sibirsky %s: extended basis %d, %d binomials", spec.pairs, len(G), len(gens))
    return GroebnerBasis(gens, DEGREVLEX, ctx, True, dict(G.stats))


def sibirsky_basis(spec: SystemSpec, budget: Budget | None = None, strategy: str = "sugar") -> GroebnerBasis:
    """Reduced degrevlex Groebner basis of the Sibirsky ideal.

    Restricting the block order to the coefficient block gives degrevlex in
    the coefficient variables, so the eliminated part of the extended basis is
    itself reduced.
    """
    G = _sibirsky_basis(spec, budget, strategy)
    for g in G:
        _check_binomial(spec, g)
    return G


def _check_binomial(spec: SystemSpec, g: Polynomial) -> None:
    terms = list(g.terms.items())
    if len(terms) != 2:
        raise AssertionError(f"non-binomial generator {g}")
    (m1, c1), (m2, c2) = terms
    if c1 != -c2 or m2 != involution(m1):
        raise AssertionError(f"generator {g} is not of the form [nu] - [nu_bar]")
    if not in_monoid(spec, m1):
        raise AssertionError(f"exponent {m1} of {g} is not in the monoid")
    if not kernel_check(spec, g):
        raise AssertionError(f"generator {g} is not in the kernel")


def symmetry_ideal(spec: SystemSpec, budget: Budget | None = None, strategy: str = "sugar") -> Ideal:
    """The Sibirsky ideal, generated by its reduced degrevlex basis."""
    G = sibirsky_basis(spec, budget, strategy)
    return Ideal(G.generators, ctx=spec.ctx, bases={DEGREVLEX: G})


def kernel_check(spec: SystemSpec, f: Polynomial) -> bool:
    """Whether ``f`` maps to zero under ``x_i -> y_i t1^p_i t2^q_i`` (Laurent)."""
    if f.ctx != spec.ctx:
        f = f.to_context(spec.ctx)
    l = spec.l
    cols = spec.columns()
    image: dict = {}
    for nu, c in f.terms.items():
        ys = tuple(nu[i] + nu[2 * l - 1 - i] for i in range(l))
        L1 = sum(v * c1 for v, (c1, _) in zip(nu, cols))
        L2 = sum(v * c2 for v, (_, c2) in zip(nu, cols))
        key = (L1, L2) + ys
        image[key] = image.get(key, 0) + c
    return all(v == 0 for v in image.values())


# -- Hilbert basis -----------------------------------------------------------------------
def _combination(target: tuple, gens: Sequence[tuple], memo: dict | None = None) -> bool:
    """Whether ``target`` is a sum of (repeated) vectors from ``gens``."""
    if memo is None:
        memo = {}
    if not any(target):
        return True
    if target in memo:
        return memo[target]
    ok = False
    for g in gens:
        if all(a >= b for a, b in zip(target, g)):
            if _combination(tuple(a - b for a, b in zip(target, g)), gens, memo):
                ok = True
                break
    memo[target] = ok
    return ok


def is_irreducible(spec: SystemSpec, nu) -> bool:
    """No splitting ``nu = mu + theta`` into two nonzero monoid elements."""
    nu = tuple(nu)
    if not any(nu) or not in_monoid(spec, nu):
        return False
    for mu in itertools.product(*(range(v + 1) for v in nu)):
        if any(mu) and mu != nu and in_monoid(spec, mu):
            return False
    return True


def _minimize(vectors: Iterable[tuple]) -> list:
    vecs = sorted(set(vectors), key=lambda v: (sum(v), v))
    keep = []
    for v in vecs:
        others = [u for u in vecs if u != v and sum(u) <= sum(v)]
        if not _combination(v, others):
            keep.append(v)
    return keep


def hilbert_basis(spec: SystemSpec, budget: Budget | None = None) -> HilbertBasis:
    """Hilbert basis of the monoid read off the Sibirsky basis.

    Exponents of both monomials of every basis binomial, plus the symmetric
    vectors ``e_i + e_(2l-i+1)``, followed by removal of elements that are
    sums of others.
    """
    l = spec.l
    cand = []
    for g in sibirsky_basis(spec, budget):
        for m in g.terms:
            cand.append(m)
    for i in range(l):
        e = [0] * (2 * l)
        e[i] += 1
        e[2 * l - 1 - i] += 1
        cand.append(tuple(e))
    vecs = _minimize(cand)
    elems = [monoid_element(spec, v) for v in vecs]
    elems.sort(key=lambda e: (e.degree, tuple(-x for x in e.nu)))
    return HilbertBasis(tuple(elems))


def monoid_span(basis: Sequence[tuple], max_total_degree: int) -> set:
    """All N-combinations of ``basis`` with total degree at most the bound."""
    basis = [tuple(b) for b in basis if any(b)]
    n = len(basis[0]) if basis else 0
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for v in frontier:
            dv = sum(v)
            for b in basis:
                if dv + sum(b) <= max_total_degree:
                    w = tuple(x + y for x, y in zip(v, b))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    return seen


# -- dimension ---------------------------------------------------------------------------------
def dimension_matrix(spec: SystemSpec) -> list:
    """Rows ``e_i + e_(2l-i+1)`` for ``i <= l`` stacked on the two rows of L."""
    l = spec.l
    rows = []
    for i in range(l):
        r = [0] * (2 * l)
        r[i] = 1
        r[2 * l - 1 - i] = 1
        rows.append(r)
    cols = spec.columns()
    rows.append([c[0] for c in cols])
    rows.append([c[1] for c in cols])
    return rows


def generic_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Exact rank over Q by Gaussian elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return 0
    rank = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / pr[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
    return rank


def dimension(spec: SystemSpec) -> int:
    """``l`` if every pair is resonant (p = q), else ``l + 1``.

    Cross-checked against the rank of :func:`dimension_matrix`.
    """
    d = spec.l if spec.is_resonant() else spec.l + 1
    r = generic_rank(dimension_matrix(spec))
    if r != d:
        raise AssertionError(f"dimension formula {d} disagrees with matrix rank {r}")
    return d
