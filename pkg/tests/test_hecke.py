"""Tests for the pro-p Iwahori-Hecke algebra at q = 0."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prophecke.field import GaloisField
from prophecke.hecke import HeckeAlgebra, HeckeElement, HeckeError
from prophecke.prop_weyl import LambdaElement, ProPWeylGroup, ZKappaGroup
from prophecke.root_system import preset


def _make_algebra(name: str = "SL2", q: int = 3) -> HeckeAlgebra:
    rd = preset(name)
    fld = GaloisField(q)
    zk = ZKappaGroup.default(rd, q, fld.p)
    return HeckeAlgebra(ProPWeylGroup(rd, q, zk), fld)


def _lam(alg: HeckeAlgebra, *mu: int) -> LambdaElement:
    return LambdaElement(tuple(mu), alg.zk.zero)


_ALGEBRAS = {
    ("SL2", 3): _make_algebra("SL2", 3),
    ("SL2", 2): _make_algebra("SL2", 2),
    ("GL2", 3): _make_algebra("GL2", 3),
}
_POOLS = {key: alg.group.enumerate_by_length(2, radius=1, with_zkappa=True) for key, alg in _ALGEBRAS.items()}


@st.composite
def basis_triples(draw):
    key = draw(st.sampled_from(sorted(_ALGEBRAS)))
    pick = st.sampled_from(_POOLS[key])
    return _ALGEBRAS[key], draw(pick), draw(pick), draw(pick)


# --------------------------------------------------------------------------- #
# Construction                                                                #
# --------------------------------------------------------------------------- #


class TestConstruction:
    def test_field_without_roots_of_unity_raises(self):
        rd = preset("SL2")
        zk = ZKappaGroup.default(rd, 4, 2)
        with pytest.raises(HeckeError, match="lacks the 3-th roots of unity"):
            HeckeAlgebra(ProPWeylGroup(rd, 4, zk), GaloisField(2))

    def test_wrong_characteristic_raises(self):
        rd = preset("SL2")
        zk = ZKappaGroup.default(rd, 3, 3)
        with pytest.raises(HeckeError, match="characteristic 5"):
            HeckeAlgebra(ProPWeylGroup(rd, 3, zk), GaloisField(5))

    def test_unknown_override_raises(self):
        alg = _make_algebra()
        with pytest.raises(HeckeError, match="unknown generators"):
            HeckeAlgebra(alg.group, alg.field, cs_override={"s7": {(0,): 1}})

    def test_mixing_algebras_raises(self):
        a, b = _make_algebra(), _make_algebra()
        with pytest.raises(HeckeError, match="different Hecke algebras"):
            a.one() + b.one()


# --------------------------------------------------------------------------- #
# Multiplication                                                              #
# --------------------------------------------------------------------------- #


class TestMultiplication:
    def test_quadratic_relation_sl2(self):
        alg = _make_algebra()
        s = alg.group.affine_generators[0].element
        assert alg.format(alg.mul_t(alg.t(s), alg.t(s))) == "T[s1] + T[t(1)*s1]"

    def test_quadratic_relation_q2(self):
        # Z_kappa is trivial, so c_s = 1 and T_s^2 = T_s
        alg = _make_algebra("SL2", 2)
        s = alg.t(alg.group.affine_generators[0].element)
        assert alg.mul_t(s, s) == s

    def test_one_is_unit(self):
        alg = _make_algebra("GL2")
        for g in _POOLS[("GL2", 3)][:20]:
            x = alg.t(g)
            assert alg.mul_t(alg.one(), x) == x
            assert alg.mul_t(x, alg.one()) == x

    @settings(max_examples=60, deadline=None)
    @given(basis_triples())
    def test_associative(self, data):
        alg, x, y, z = data
        tx, ty, tz = alg.t(x), alg.t(y), alg.t(z)
        assert alg.mul_t(alg.mul_t(tx, ty), tz) == alg.mul_t(tx, alg.mul_t(ty, tz))

    @settings(max_examples=60, deadline=None)
    @given(basis_triples())
    def test_zeta_anti_multiplicative(self, data):
        alg, x, y, _ = data
        tx, ty = alg.t(x), alg.t(y)
        assert alg.zeta(alg.mul_t(tx, ty)) == alg.mul_t(alg.zeta(ty), alg.zeta(tx))

    def test_length_additive_product(self):
        alg = _make_algebra("SL2")
        grp = alg.group
        s1, s0 = (g.element for g in grp.affine_generators)
        assert alg.mul_t(alg.t(s0), alg.t(s1)) == alg.t(grp.multiply(s0, s1))

    def test_scalar_arithmetic(self):
        alg = _make_algebra()
        two = alg.scalar(2)
        assert (two + alg.one()).is_zero()
        assert (alg.one() - alg.one()) == alg.zero()


# --------------------------------------------------------------------------- #
# T*, E and A                                                                 #
# --------------------------------------------------------------------------- #


class TestStarAndE:
    def test_t_star_generator(self):
        alg = _make_algebra()
        gen = alg.group.affine_generators[0]
        assert alg.t_star(gen.element) == alg.t(gen.element) - alg.c_element(gen)

    def test_star_coordinates_round_trip(self):
        alg = _make_algebra("GL2")
        for g in _POOLS[("GL2", 3)][:25]:
            x = alg.t(g)
            assert alg.from_star_coordinates(alg.star_coordinates(x)) == x

    def test_e_on_dominant_is_t_star(self):
        alg = _make_algebra()
        g = alg.group.from_lambda(_lam(alg, 1))
        assert alg.e_of(_lam(alg, 1)) == alg.t_star(g)

    def test_e_on_antidominant_is_t(self):
        alg = _make_algebra()
        g = alg.group.from_lambda(_lam(alg, -1))
        assert alg.e_of(_lam(alg, -1)) == alg.t(g)

    def test_opposite_chambers_multiply_to_zero(self):
        alg = _make_algebra()
        assert alg.mul_t(alg.e_of(_lam(alg, 1)), alg.e_of(_lam(alg, -1))).is_zero()

    def test_same_chamber_multiplies(self):
        alg = _make_algebra()
        assert alg.mul_t(alg.e_of(_lam(alg, 1)), alg.e_of(_lam(alg, 2))) == alg.e_of(_lam(alg, 3))

    def test_a_mul_chamber_rule(self):
        alg = _make_algebra()
        assert alg.a_mul(alg.e(_lam(alg, 1)), alg.e(_lam(alg, -1))).is_zero()
        assert alg.a_mul(alg.e(_lam(alg, -1)), alg.e(_lam(alg, -2))) == alg.e(_lam(alg, -3))

    def test_splittings_of_zero(self):
        alg = _make_algebra()
        assert alg.splittings(_lam(alg, 0)) == [(_lam(alg, 0), _lam(alg, 0))]

    def test_a_coords_reassemble(self):
        alg = _make_algebra()
        n_s = alg.group.affine_generators[0].element
        for x in (alg.one(), alg.t(n_s), alg.t(alg.group.element((0,), (1,)))):
            assert alg.from_a_coords(alg.a_coords(x)) == x


class TestCenter:
    def test_z_is_two_term_sum(self):
        alg = _make_algebra()
        z = alg.z_of(_lam(alg, 1))
        assert z == alg.e_of(_lam(alg, 1)) + alg.e_of(_lam(alg, -1))

    def test_z_commutes_with_generators(self):
        alg = _make_algebra()
        z = alg.z_of(_lam(alg, 1))
        assert all(alg.commutes(z, g) for g in alg.generators())

    def test_z_outside_lambda_s_raises(self):
        alg = _make_algebra()
        with pytest.raises(HeckeError, match="not in Lambda_S"):
            alg.z_of(LambdaElement((1,), (1,)))


class TestInvolutions:
    def test_f_squared_is_identity(self):
        alg = _make_algebra("GL2")
        for g in _POOLS[("GL2", 3)][:25]:
            x = alg.t(g)
            assert alg.f_inv(alg.f_inv(x)) == x

    def test_f_on_e(self):
        alg = _make_algebra()
        for mu in (-2, -1, 0, 1, 2):
            lam = _lam(alg, mu)
            expected = alg.e_of(alg.lam_inverse(lam)).scale(alg.field.sign(alg.lam_length(lam)))
            assert alg.f_inv(alg.e_of(lam)) == expected

    def test_iota_on_generator(self):
        alg = _make_algebra()
        gen = alg.group.affine_generators[0]
        assert alg.iota(alg.t(gen.element)) == alg.c_element(gen) - alg.t(gen.element)


class TestFormat:
    def test_zero(self):
        assert _make_algebra().format(HeckeElement(_make_algebra())) == "0"

    def test_coefficients_printed(self):
        alg = _make_algebra()
        assert alg.format(alg.scalar(2)) == "2*T[1]"
