import pytest

from oracles import series_focus_quantities
from symcenter import casebook
from symcenter.focus import (
    FocusQuantityList,
    check_quantity,
    focus_quantities,
    swap_conjugate,
    verify_structure,
)
from symcenter.poly import parse
from symcenter.sibirsky import SystemSpec, symmetry_ideal

SHIPPED = {name: casebook.load_case(name).spec for name in casebook.case_names()}
KMAX = {"quadratic": 6, "cubic_homogeneous": 6, "degree4": 4, "degree5": 3, "full_cubic": 4}


class TestValues:
    def test_linearizable_family(self):
        fq = focus_quantities(SystemSpec(((1, 0),)), 6)
        assert len(fq) == 6 and all(g.is_zero() for g in fq)

    def test_cubic_first_two(self, cubic):
        fq = focus_quantities(cubic, 2)
        assert fq[1] == parse("a_1_1 - b_1_1", cubic.ctx)
        assert fq[2] == parse("a_2_0*a_0_2 - b_0_2*b_2_0", cubic.ctx)

    def test_quadratic_first(self, quadratic):
        assert focus_quantities(quadratic, 1)[1] == parse("a_1_0*a_0_1 - b_1_0*b_0_1", quadratic.ctx)

    def test_single_resonant_pair(self):
        spec = SystemSpec(((1, 1),))
        g11 = focus_quantities(spec, 1)[1]
        ref = series_focus_quantities(spec, 1)[0]
        assert g11 == ref.scale(-1)
        assert g11 == parse("a_1_1 - b_1_1", spec.ctx)

    @pytest.mark.parametrize("name", ["quadratic", "cubic_homogeneous"])
    def test_against_series_oracle(self, name):
        spec = SHIPPED[name]
        mine = focus_quantities(spec, 3)
        ref = series_focus_quantities(spec, 3)
        # the residual convention differs from the oracle's by an overall sign
        assert list(mine) == [g.scale(-1) for g in ref]

    def test_oracle_on_mixed_family(self):
        spec = SystemSpec(((1, 0), (1, 1), (-1, 2)))
        assert list(focus_quantities(spec, 2)) == [g.scale(-1) for g in series_focus_quantities(spec, 2)]

    def test_deterministic_and_prefix_stable(self, cubic):
        a = focus_quantities(cubic, 4)
        b = focus_quantities(cubic, 5)
        assert list(a) == list(b)[:4]
        assert focus_quantities(cubic, 4) == a

    def test_one_based_indexing(self, cubic):
        fq = focus_quantities(cubic, 2)
        with pytest.raises(IndexError):
            fq[0]
        assert isinstance(fq, FocusQuantityList)
        assert list(fq.ideal(1).generators) == [fq[1]]


class TestPhaseSeries:
    def test_normalization(self, quadratic):
        series = focus_quantities(quadratic, 3).series
        assert series[(1, 1)] == quadratic.ctx.gen("a_1_0").constant(quadratic.ctx, 1)
        for k in range(2, 4):
            assert series[(k, k)].is_zero()
        for j, k in [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)]:
            assert series[(j, k)].is_zero()


class TestStructure:
    @pytest.mark.parametrize("name", sorted(KMAX))
    def test_shipped(self, name):
        spec = SHIPPED[name]
        fq = focus_quantities(spec, KMAX[name])
        report = verify_structure(spec, fq)
        assert report.passed, report.failures()
        for k, g in enumerate(fq, start=1):
            assert g.total_degree() <= 2 * k
            assert swap_conjugate(spec, g) == -g

    def test_cubic_g33_reduces(self, cubic):
        g33 = casebook.load_case("cubic_homogeneous").generators("focus")[2]
        assert check_quantity(cubic, 3, g33).passed

    def test_corrupted_level(self, cubic):
        g = focus_quantities(cubic, 2)[2] + cubic.ctx.gen("a_2_0")
        chk = check_quantity(cubic, 2, g)
        assert not chk.levels_ok and not chk.passed
        assert chk.offending is not None

    def test_symmetric_perturbation_breaks_antisymmetry(self, cubic):
        g = focus_quantities(cubic, 2)[2] + parse("a_2_0*a_0_2 + b_0_2*b_2_0", cubic.ctx)
        chk = check_quantity(cubic, 2, g)
        assert chk.levels_ok and not chk.antisymmetric

    def test_quadratic_g33_in_published_ideal(self, quadratic):
        fq = focus_quantities(quadratic, 3)
        assert symmetry_ideal(quadratic).contains(fq[3])
        assert casebook.load_case("quadratic").ideal("symmetry").contains(fq[3])

    def test_wrong_context(self, quadratic, cubic):
        with pytest.raises(ValueError):
            check_quantity(quadratic, 1, focus_quantities(cubic, 1)[1])
