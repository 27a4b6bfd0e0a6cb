"""Tests for R = C[Lambda(1)]_omega, c_w and the universal module X_empty."""

import pytest

from prophecke.field import GaloisField
from prophecke.hecke import HeckeAlgebra
from prophecke.prop_weyl import LambdaElement, ProPWeylGroup, ZKappaGroup, character_from_exponents
from prophecke.root_system import preset
from prophecke.universal import (
    Filtration,
    OmegaComponent,
    OmegaError,
    OmegaSeries,
    UniversalModule,
    c_w_regular_check,
    upward_closure,
    x_j_chain_check,
)


def _make_algebra(name: str = "SL2", q: int = 3) -> HeckeAlgebra:
    rd = preset(name)
    fld = GaloisField(q)
    return HeckeAlgebra(ProPWeylGroup(rd, q, ZKappaGroup.default(rd, q, fld.p)), fld)


F3 = GaloisField(3)


def _x(mu: int, c: int = 1) -> OmegaSeries:
    return OmegaSeries.monomial(F3, [mu], c)


@pytest.fixture(scope="module")
def alg():
    return _make_algebra()


@pytest.fixture(scope="module")
def um(alg):
    return UniversalModule(alg)


# --------------------------------------------------------------------------- #
# Laurent series                                                              #
# --------------------------------------------------------------------------- #


class TestOmegaSeries:
    def test_arithmetic(self):
        s = _x(0) + _x(1)
        assert s * (_x(0) - _x(1)) == _x(0) - _x(2)
        assert (s - s).is_zero()

    def test_characteristic_cancels(self):
        assert (_x(1) + _x(1) + _x(1)).is_zero()

    def test_shift_and_scale(self):
        assert _x(1).shift([2]) == _x(3)
        assert _x(1).scale(2) == _x(1, 2)

    def test_leading_is_lexicographic_max(self):
        assert (_x(-2) + _x(3, 2)).leading() == ((3,), 2)

    def test_leading_of_zero_raises(self):
        with pytest.raises(OmegaError, match="no leading term"):
            OmegaSeries.zero(F3).leading()

    def test_height(self):
        assert (_x(-4) + _x(1)).height == 4

    def test_divide_binomial(self):
        # 1 - x^2 = (1 - x)(1 + x)
        assert (_x(0) - _x(2)).divide_binomial(1, [1]) == _x(0) + _x(1)

    def test_divide_binomial_not_divisible(self):
        assert _x(0).divide_binomial(1, [1]) is None

    def test_divide_by_constant_binomial(self):
        # 1 - 2 = 2 in GF(3), so division by it is multiplication by 2
        assert _x(1).divide_binomial(2, [0]) == _x(1, 2)

    def test_repr(self):
        assert repr(OmegaSeries.zero(F3)) == "0"


# --------------------------------------------------------------------------- #
# omega-components                                                            #
# --------------------------------------------------------------------------- #


class TestOmegaComponent:
    def test_tau_alpha_trivial_character(self, alg):
        assert OmegaComponent(alg).tau_alpha(0) == _x(1)

    def test_tau_alpha_lift_independent(self, alg):
        assert OmegaComponent(alg).tau_alpha_lift_independent(0)

    def test_c_w_values(self, alg):
        comp = OmegaComponent(alg)
        assert comp.c_w(alg.rd.identity) == _x(0) - _x(1)
        assert comp.c_w(alg.rd.longest_element()) == _x(0)

    def test_divide_by_c_w(self, alg):
        comp = OmegaComponent(alg)
        c = comp.c_w(alg.rd.identity)
        assert comp.divide_by_c_w(c * _x(3), alg.rd.identity) == _x(3)

    def test_nontrivial_character_rejected(self, alg):
        psi = character_from_exponents(alg.zk, alg.field, [1])
        with pytest.raises(OmegaError, match="not trivial"):
            OmegaComponent(alg, psi).tau_alpha(0)

    def test_bad_lift_raises(self, alg):
        comp = OmegaComponent(alg)
        alg2 = _make_algebra("GL2")
        with pytest.raises(OmegaError, match="not in Z_kappa cap"):
            OmegaComponent(alg2).tau_alpha_literal(0, [1, 0])
        assert comp.tau_alpha_literal(0, [1])

    def test_literal_projects_back(self, alg):
        comp = OmegaComponent(alg)
        s = _x(2) + _x(-1, 2)
        assert comp.project(comp.literal(s)) == s
        assert comp.in_component(comp.literal(s))

    def test_regularity(self, alg):
        comp = OmegaComponent(alg)
        cert = c_w_regular_check(comp, alg.rd.identity, _x(0))
        assert cert.nonzero
        assert cert.leading == (1,)

    def test_regularity_needs_nonzero(self, alg):
        with pytest.raises(OmegaError, match="nonzero series"):
            c_w_regular_check(OmegaComponent(alg), alg.rd.identity, OmegaSeries.zero(alg.field))


# --------------------------------------------------------------------------- #
# X_empty                                                                     #
# --------------------------------------------------------------------------- #


class TestUniversalModule:
    def test_generator_supports(self, alg, um):
        assert um.x_generator(None).support() == [alg.rd.longest_element()]
        assert um.x_generator(()).support() == [alg.rd.identity]

    def test_rho_vanishes_off_antidominant(self, um):
        assert um.rho(LambdaElement((1,), (0,))).is_zero()
        assert um.rho(LambdaElement((-1,), (0,))) == _x(1)

    def test_z_scalar_is_a_unit(self, um):
        assert um.z_scalar(LambdaElement((1,), (0,))) == _x(1)

    def test_action_of_one(self, alg, um):
        g = um.x_generator(None)
        assert um.x_act(g, alg.one()) == g

    def test_left_multiplication(self, um):
        g = um.x_generator(())
        assert g.left(_x(2)).component(um.rd.identity) == _x(2)
        assert (g - g).is_zero()

    def test_chain_requires_containment(self, um):
        with pytest.raises(OmegaError, match="not contained"):
            x_j_chain_check(um, [0], [])

    def test_chain_reflexive(self, um):
        assert x_j_chain_check(um, [], []).found


class TestFiltration:
    def test_not_upward_closed_raises(self, um):
        with pytest.raises(OmegaError, match="not upward closed"):
            Filtration(um, None, [um.rd.identity])

    def test_minimal_of_whole_group(self, um):
        filt = Filtration(um, None, um.rd.weyl)
        assert filt.minimal() == [um.rd.identity]

    def test_upward_closure(self, um):
        assert upward_closure(um, um.rd.identity) == frozenset(um.rd.weyl)
        assert upward_closure(um, um.w_delta) == frozenset({um.w_delta})

    def test_quotient_reads_component(self, um):
        filt = Filtration(um, None, um.rd.weyl)
        g = um.x_generator(())
        assert filt.quotient(g, um.rd.identity) == um.one()

    def test_quotient_needs_minimal(self, um):
        filt = Filtration(um, None, um.rd.weyl)
        with pytest.raises(OmegaError, match="not minimal"):
            filt.quotient(um.x_generator(None), um.w_delta)
