import random

import pytest
from hypothesis import given, strategies as st

from oracles import sympy_groebner
from symcenter import casebook
from symcenter.groebner import (
    Budget,
    BudgetExceeded,
    buchberger,
    divide,
    is_groebner,
    is_reduced,
    normal_form,
    s_polynomial,
)
from symcenter.ideal import Ideal, is_member
from symcenter.orders import DEGREVLEX, LEX, elimination_order
from symcenter.poly import Polynomial, VarContext, parse
from symcenter.sibirsky import sibirsky_basis, symmetry_ideal

XY = VarContext(("x", "y"))
TXY = VarContext(("t", "x", "y"))
XYZ = VarContext(("x", "y", "z"))


def polys(texts, ctx):
    return [parse(t, ctx) for t in texts]


class TestNormalForm:
    def test_principal(self):
        assert normal_form(parse("x^2", XY), polys(["x"], XY), LEX).is_zero()

    def test_single_division_step(self):
        r = normal_form(parse("x^2*y+y", XY), polys(["x^2-1"], XY), LEX)
        assert r == parse("2*y", XY)

    def test_division_identity(self):
        f = parse("x^3*y^2 - 2*x*y + y^3 + 5", XY)
        G = polys(["x^2 - y", "x*y^2 - 1"], XY)
        qs, r = divide(f, G, DEGREVLEX)
        assert sum((q * g for q, g in zip(qs, G)), r) == f
        lms = [g.leading_monomial(DEGREVLEX) for g in G]
        for m in r.terms:
            assert not any(all(a >= b for a, b in zip(m, lm)) for lm in lms)

    def test_f1_reduces_against_symmetry_basis(self, quadratic):
        f1 = parse("a_0_1^3*b_2_m1 - a_m1_2*b_1_0^3", quadratic.ctx)
        G = symmetry_ideal(quadratic).groebner(DEGREVLEX)
        assert G.reduce(f1).is_zero()


class TestBuchberger:
    def test_principal(self):
        for order in (LEX, DEGREVLEX):
            assert buchberger([parse("x", XY)], order).generators == (parse("x", XY),)

    def test_parabola(self):
        G = buchberger(polys(["t-x", "t^2-y"], TXY), LEX)
        assert list(G) == polys(["t-x", "x^2-y"], TXY)

    def test_zero_generators_dropped(self):
        G = buchberger([Polynomial.zero(XY), parse("x", XY)], LEX)
        assert len(G) == 1
        assert len(buchberger([Polynomial.zero(XY)], LEX)) == 0

    def test_unit_ideal(self):
        G = buchberger(polys(["x*y - 1", "x"], XY), DEGREVLEX)
        assert G.is_unit() and list(G) == [Polynomial.constant(XY, 1)]

    @pytest.mark.parametrize("order", [LEX, DEGREVLEX], ids=str)
    @pytest.mark.parametrize("texts", [
        ["x^2*y - z", "x*y^2 - x", "y*z - x^2"],
        ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
        ["x*y - z^2", "y^2 - x*z", "x^2 - y*z"],
        ["x + y + z", "x*y + y*z + x*z", "x*y*z - 1"],
    ])
    def test_matches_sympy(self, texts, order):
        gens = polys(texts, XYZ)
        G = buchberger(gens, order)
        assert sorted(G.generators, key=str) == sorted(sympy_groebner(gens, XYZ, order), key=str)
        assert is_groebner(G.generators, order) and is_reduced(G.generators, order)

    @pytest.mark.parametrize("strategy", ["normal", "sugar"])
    def test_strategies_agree(self, strategy, quadratic):
        J = casebook.load_case("quadratic").ideal("J3")
        ref = buchberger(J.generators, DEGREVLEX, strategy="normal")
        assert buchberger(J.generators, DEGREVLEX, strategy=strategy) == ref

    def test_canonical_under_permutation(self, cubic):
        gens = list(casebook.load_case("cubic_homogeneous").ideal("J3").generators)
        ref = buchberger(gens, DEGREVLEX)
        rng = random.Random(7)
        for _ in range(5):
            rng.shuffle(gens)
            assert buchberger(gens, DEGREVLEX).generators == ref.generators

    def test_sibirsky_basis_is_sound(self, quadratic, cubic):
        for spec in (quadratic, cubic):
            G = sibirsky_basis(spec)
            assert is_reduced(G.generators, G.order)
            assert is_groebner(G.generators, G.order)

    def test_fixture_list_regenerates_symmetry_ideal(self):
        case = casebook.load_case("quadratic")
        G = buchberger(case.ideal("symmetry").generators, DEGREVLEX)
        assert G == symmetry_ideal(case.spec).groebner(DEGREVLEX)

    def test_elimination_twisted_cubic(self):
        ctx = VarContext(("t", "x", "y", "z"))
        G = buchberger(polys(["x-t", "y-t^2", "z-t^3"], ctx), elimination_order(4, [0]))
        free = [g for g in G if g.leading_monomial(G.order)[0] == 0 and all(m[0] == 0 for m in g.terms)]
        J = Ideal(free, ctx)
        for f in polys(["y-x^2", "z-x^3", "x*z-y^2"], ctx):
            assert is_member(f, J)
        # and nothing in the t-free part can fail to vanish on the curve
        for g in free:
            assert g.substitute({"x": parse("t", ctx), "y": parse("t^2", ctx), "z": parse("t^3", ctx)}, ctx).is_zero()

    def test_pair_budget(self):
        with pytest.raises(BudgetExceeded) as err:
            buchberger(polys(["x^2*y - z", "x*y^2 - x", "y*z - x^2"], XYZ), LEX, budget=Budget(max_pairs=1))
        assert "pairs" in err.value.diagnostics

    def test_term_budget(self):
        gens = polys(["x^3 + y^3 + z^3 - 1", "x^2*y + y^2*z + z^2*x - 2"], XYZ)
        with pytest.raises(BudgetExceeded):
            buchberger(gens, LEX, budget=Budget(max_terms=5))

    def test_time_budget(self):
        gens = polys(["x^5 + y^4 + z^3 - 1", "x^3 + y^3 + z^2 - 1", "x^2*y*z + 3*y - 2"], XYZ)
        with pytest.raises(BudgetExceeded):
            buchberger(gens, LEX, budget=Budget(max_seconds=0.0))

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            buchberger(polys(["x"], XY), LEX, strategy="random")


@st.composite
def small_ideals(draw):
    n = draw(st.integers(1, 3))
    out = []
    for _ in range(n):
        terms = {}
        for _ in range(draw(st.integers(1, 3))):
            m = tuple(draw(st.lists(st.integers(0, 2), min_size=3, max_size=3)))
            terms[m] = draw(st.integers(-3, 3))
        p = Polynomial(XYZ, terms)
        if p:
            out.append(p)
    return out or [Polynomial.var(XYZ, "x")]


class TestProperties:
    @given(small_ideals(), st.sampled_from([LEX, DEGREVLEX]))
    def test_reduced_basis_sound(self, gens, order):
        G = buchberger(gens, order)
        for g in gens:
            assert normal_form(g, G.generators, order).is_zero()
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                assert normal_form(s_polynomial(G[i], G[j], order), G.generators, order).is_zero()
        assert is_reduced(G.generators, order)

    @given(small_ideals(), st.randoms(use_true_random=False))
    def test_permutation_invariant(self, gens, rnd):
        shuffled = list(gens)
        rnd.shuffle(shuffled)
        assert buchberger(shuffled, DEGREVLEX) == buchberger(gens, DEGREVLEX)


class TestMembership:
    def test_trivial(self):
        assert not is_member(parse("x", XY), Ideal(polys(["x^2"], XY)))
        assert is_member(parse("x^2", XY), Ideal(polys(["x"], XY)))

    def test_g22_in_cubic_J3(self, cubic):
        J3 = casebook.load_case("cubic_homogeneous").ideal("J3")
        assert is_member(parse("a_2_0*a_0_2 - b_0_2*b_2_0", cubic.ctx), J3)
