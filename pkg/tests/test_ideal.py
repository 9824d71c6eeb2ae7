from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from symcenter import casebook
from symcenter.focus import focus_quantities
from symcenter.ideal import (
    Ideal,
    RationalMap,
    certifies_prime,
    eliminate,
    ideal_equal,
    implicitize,
    intersect,
    intersect_all,
    is_member,
    quotient,
    radical_member,
)
from symcenter.poly import ContextMismatchError, VarContext, parse

XY = VarContext(("x", "y"))
TXY = VarContext(("t", "x", "y"))


def I(texts, ctx=XY):
    return Ideal([parse(t, ctx) for t in texts], ctx)


def same(A, B):
    return ideal_equal(A, B)


def quadratic_ideals():
    case = casebook.load_case("quadratic")
    return [case.ideal(k) for k in ("J1", "J2", "J3", "symmetry")]


def cubic_ideals():
    case = casebook.load_case("cubic_homogeneous")
    return [case.ideal(k) for k in ("J1", "J2", "J3", "H")]


class TestEliminate:
    def test_parabola(self):
        J = eliminate(I(["t-x", "t^2-y"], TXY), ["t"])
        assert J.ctx.names == ("x", "y")
        assert same(J, I(["x^2-y"]))

    def test_nothing_dropped(self):
        A = I(["x^2-y", "x*y"])
        assert same(eliminate(A, []), A)

    def test_toric_instance(self):
        ctx = VarContext(("t1", "t2", "y1", "a", "b"))
        J = eliminate(I(["a - y1*t1*t2", "b - y1*t1*t2"], ctx), ["y1", "t1", "t2"])
        assert same(J, I(["a-b"], VarContext(("a", "b"))))

    def test_unknown_variable(self):
        with pytest.raises(ValueError):
            eliminate(I(["x"]), ["q"])


class TestIntersect:
    def test_coordinate_axes(self):
        assert same(intersect(I(["x"]), I(["y"])), I(["x*y"]))

    def test_contained_in_both(self):
        for A, B in combinations(quadratic_ideals()[:3], 2):
            K = intersect(A, B)
            assert K.is_subset(A) and K.is_subset(B)

    def test_commutative_and_associative(self):
        A, B, C = quadratic_ideals()[:3]
        assert same(intersect(A, B), intersect(B, A))
        assert same(intersect(intersect(A, B), C), intersect(A, intersect(B, C)))

    def test_cubic_components_meet_in_focus_ideal(self, cubic):
        K = intersect_all(cubic_ideals()[:3])
        assert same(K, focus_quantities(cubic, 5).ideal(5))

    def test_quadratic_components_meet_in_focus_ideal(self, quadratic):
        K = intersect_all(quadratic_ideals())
        assert same(K, focus_quantities(quadratic, 3).ideal(3))

    def test_zero_ideal(self):
        assert intersect(Ideal([], XY), I(["x"])).is_zero()


class TestQuotient:
    def test_trivial(self):
        assert same(quotient(I(["x*y"]), I(["x"])), I(["y"]))
        assert same(quotient(I(["x^2"]), I(["x"])), I(["x"]))

    def test_cubic_J2_saturated_by_H(self):
        _, J2, _, H = cubic_ideals()
        assert same(quotient(J2, H), J2)

    def test_monotone(self):
        for A in quadratic_ideals()[:3]:
            assert A.is_subset(quotient(A, I(["a_1_0 + b_0_1"], A.ctx)))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            quotient(I(["x"]), Ideal([], XY))


class TestRadical:
    def test_trivial(self):
        assert radical_member(parse("x", XY), I(["x^2"]))
        assert not radical_member(parse("y", XY), I(["x"]))

    def test_higher_focus_quantity(self, quadratic):
        fq = focus_quantities(quadratic, 6)
        assert radical_member(fq[6], fq.ideal(3))

    def test_context_checked(self):
        with pytest.raises(ContextMismatchError):
            radical_member(parse("x", TXY), I(["x"]))

    @settings(max_examples=15)
    @given(st.data())
    def test_members_are_radical_members(self, data):
        A = data.draw(st.sampled_from(quadratic_ideals()))
        coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(A), max_size=len(A)))
        x = A.ctx.gen(A.ctx.names[data.draw(st.integers(0, A.ctx.arity - 1))])
        f = sum((x * g.scale(c) for c, g in zip(coeffs, A.generators)), A.ctx.gen(A.ctx.names[0]).scale(0))
        assert is_member(f, A)
        assert radical_member(f, A)


class TestEqual:
    def test_trivial(self):
        assert same(I(["x", "y"]), I(["x+y", "y"]))
        assert not same(I(["x"]), I(["x^2"]))

    def test_quadratic_symmetry_list(self, quadratic):
        from symcenter.sibirsky import symmetry_ideal
        assert same(symmetry_ideal(quadratic), casebook.load_case("quadratic").ideal("symmetry"))

    def test_cached_bases_generate_same_ideal(self):
        for A in quadratic_ideals() + cubic_ideals():
            G = A.groebner()
            assert all(is_member(g, A) for g in G)
            assert all(G.contains(g) for g in A.generators)


class TestImplicitize:
    def test_twisted_cubic(self):
        target = VarContext(("x", "y", "z"))
        rmap = RationalMap.from_strings(target, ["t"], {"x": "t", "y": "t^2", "z": "t^3"})
        J = implicitize(rmap)
        assert J.ctx == target
        assert same(J, I(["y-x^2", "z-x^3"], target))

    def test_output_free_of_parameters(self):
        target = VarContext(("x", "y"))
        rmap = RationalMap.from_strings(target, ["u", "v"], {"x": ("u", "v"), "y": ("u^2", "v+1")})
        J = implicitize(rmap)
        assert J.ctx == target
        for g in J.generators:
            assert rmap.vanishes_on_image(g)

    def test_cubic_J1_linear_map(self):
        case = casebook.load_case("cubic_homogeneous")
        assert certifies_prime(case.ideal("J1"), case.rational_map("J1"))

    def test_quadratic_J3_with_denominator(self):
        case = casebook.load_case("quadratic")
        rmap = case.rational_map("J3")
        assert any(not d.is_constant() for d in rmap.denominators)
        for g in case.ideal("J3").generators:
            assert rmap.vanishes_on_image(g)
        assert certifies_prime(case.ideal("J3"), rmap)

    def test_wrong_map_not_certified(self):
        case = casebook.load_case("quadratic")
        assert not certifies_prime(case.ideal("J1"), case.rational_map("J2"))

    def test_malformed(self):
        with pytest.raises(ValueError):
            RationalMap.from_strings(XY, ["t"], {"x": "t"})
        with pytest.raises(ZeroDivisionError):
            RationalMap.from_strings(XY, ["t"], {"x": "t", "y": ("1", "0")})
