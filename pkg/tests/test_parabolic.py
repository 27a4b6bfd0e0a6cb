"""Tests for Levi algebras, the H_J^+/H_J^- regions and the j-maps."""

from concurrent.futures import ThreadPoolExecutor

import pytest

from prophecke.field import GaloisField
from prophecke.hecke import HeckeAlgebra
from prophecke.modules import SupportError, character_module
from prophecke.parabolic import (
    LeviError,
    a_wj_embedding_check,
    a_wj_inclusion_check,
    e_coordinates,
    empty_levi_identities,
    extend_to_levi,
    extension_is_unique,
    extension_restricts,
    j_map,
    levi_algebra,
    levi_localization_check,
    plus_minus_membership,
)
from prophecke.prop_weyl import LambdaElement, ProPWeylGroup, ZKappaGroup
from prophecke.root_system import preset


def _make_algebra(name: str = "SL2", q: int = 3) -> HeckeAlgebra:
    rd = preset(name)
    fld = GaloisField(q)
    return HeckeAlgebra(ProPWeylGroup(rd, q, ZKappaGroup.default(rd, q, fld.p)), fld)


@pytest.fixture(scope="module")
def alg():
    return _make_algebra()


@pytest.fixture(scope="module")
def torus(alg):
    return levi_algebra(alg, ())


@pytest.fixture(scope="module")
def sl3():
    return _make_algebra("SL3")


# --------------------------------------------------------------------------- #
# Levi data                                                                   #
# --------------------------------------------------------------------------- #


class TestLeviAlgebra:
    def test_bad_subset_raises(self, alg):
        with pytest.raises(LeviError, match="not a subset"):
            levi_algebra(alg, [3])

    def test_empty_levi_is_a_torus(self, torus):
        assert torus.rd.rank_ss == 0
        assert torus.group.affine_generators == ()
        assert len(torus.off_roots) == 1

    def test_full_levi_has_no_off_roots(self, alg):
        ld = levi_algebra(alg, [0])
        assert ld.off_roots == ()
        assert [g.label for g in ld.group.affine_generators] == ["s1", "s0"]

    def test_levi_vector(self, torus):
        assert torus.levi_vector().mu == (1,)
        assert torus.levi_vector(scale=3).mu == (3,)

    def test_lambda_zero_choices_not_proportional(self, sl3):
        ld = levi_algebra(sl3, ())
        first, second = ld.lambda_zero_choices()
        assert ld.admits_lambda_zero(first.mu) and ld.admits_lambda_zero(second.mu)
        assert first.mu[0] * second.mu[1] != first.mu[1] * second.mu[0]

    def test_lambda_zero_choices_on_a_ray(self, sl3):
        ld = levi_algebra(sl3, [0])
        first, second = ld.lambda_zero_choices()
        assert first.mu == ld.levi_vector(2).mu
        assert second.mu == ld.levi_vector(3).mu
        assert ld.admits_lambda_zero(first.mu)

    def test_admits_lambda_zero(self, sl3):
        ld = levi_algebra(sl3, [0])
        assert ld.admits_lambda_zero(ld.levi_vector().mu)
        assert not ld.admits_lambda_zero((1, 1))
        assert not ld.admits_lambda_zero((-1, -2))

    def test_weyl_map_from_threads(self, sl3):
        ld = levi_algebra(sl3, [0, 1])
        ws = list(ld.rd.weyl) * 16
        with ThreadPoolExecutor(max_workers=4) as pool:
            images = list(pool.map(ld.to_ambient_weyl, ws))
        assert images == [sl3.rd.from_word(w.word) for w in ws]
        assert len(ld._weyl_map) == len(ld.rd.weyl)


class TestRegions:
    def test_membership_signs(self, torus):
        g = torus.group.element((1,))
        assert not plus_minus_membership(torus, g, "+")
        assert plus_minus_membership(torus, g, "-")

    def test_zero_translation_in_both(self, torus):
        assert plus_minus_membership(torus, torus.group.identity, "+")
        assert plus_minus_membership(torus, torus.group.identity, "-")

    def test_unknown_sign_raises(self, torus):
        with pytest.raises(LeviError, match="Unknown sign"):
            plus_minus_membership(torus, torus.group.identity, "0")


# --------------------------------------------------------------------------- #
# j-maps                                                                      #
# --------------------------------------------------------------------------- #


class TestJMap:
    def test_unknown_variant_raises(self, torus):
        with pytest.raises(LeviError, match="Unknown j-map variant"):
            j_map(torus, "*", torus.algebra.one())

    def test_foreign_element_raises(self, alg, torus):
        with pytest.raises(LeviError, match="does not belong"):
            j_map(torus, "+", alg.one())

    def test_plus_sends_t_to_t(self, alg, torus):
        x = torus.algebra.t(torus.group.element((-1,)))
        assert j_map(torus, "+", x) == alg.t(alg.group.element((-1,)))

    def test_outside_region_raises(self, torus):
        x = torus.algebra.t(torus.group.element((1,)))
        with pytest.raises(LeviError, match="outside H_J"):
            j_map(torus, "+", x)

    def test_minus_star_gives_e_on_dominant(self, alg, torus):
        lam = torus.levi_vector()
        x = torus.algebra.t(torus.group.from_lambda(lam))
        assert j_map(torus, "-*", x) == alg.e_of(lam)

    def test_full_levi_j_map_is_identity(self, alg):
        ld = levi_algebra(alg, [0])
        s = ld.group.affine_generators[0].element
        assert j_map(ld, "+", ld.algebra.t(s)) == alg.t(alg.group.affine_generators[0].element)


class TestIdentities:
    def test_empty_levi_identities(self, alg):
        assert empty_levi_identities(alg) == {"+": True, "-*": True}

    def test_localization_on_torus(self, torus):
        witness = levi_localization_check(torus)
        assert witness.ok
        assert witness.powers["u(-1)"] == 1
        assert witness.powers["1"] == 0

    def test_localization_covers_zkappa_parts(self, torus):
        witness = levi_localization_check(torus)
        plain = torus.group.enumerate_by_length(4, radius=1)
        assert len(witness.powers) == len(torus.group.zk.elements()) * len(plain)
        assert witness.powers["u(-1)*t(1)"] == 1
        assert witness.powers["t(1)"] == 0

    def test_localization_for_rank_two_levi(self, sl3):
        witness = levi_localization_check(levi_algebra(sl3, [0]), max_length=2)
        assert witness.ok, witness.failure
        assert any("t(" in name for name in witness.powers)

    def test_localization_full_levi_is_trivial(self, alg):
        witness = levi_localization_check(levi_algebra(alg, [0]), max_length=2)
        assert witness.ok
        assert set(witness.powers.values()) == {0}

    def test_a_wj_checks_on_torus(self, torus):
        assert a_wj_inclusion_check(torus) == (True, None)
        assert a_wj_embedding_check(torus) == (True, None)

    def test_a_wj_embedding_for_rank_two_levi(self, sl3):
        assert a_wj_embedding_check(levi_algebra(sl3, [0])) == (True, None)

    def test_e_coordinates_of_products(self, alg):
        one = alg.group.element((1,)).lam
        two = alg.lam_mul(one, one)
        product = alg.mul_t(alg.e_of(one), alg.e_of(one))
        assert e_coordinates(alg, product) == {two: 1}
        minus = alg.group.element((-1,)).lam
        mixed = alg.e_of(two) + alg.e_of(minus).scale(2)
        assert e_coordinates(alg, mixed) == {two: 1, minus: 2}

    def test_e_coordinates_outside_a(self, alg):
        s = alg.group.affine_generators[0].element
        assert e_coordinates(alg, alg.t(s)) is None
        assert e_coordinates(alg, alg.zero()) == {}


class TestExtension:
    def test_extension_restricts_and_is_unique(self, alg, torus):
        m = character_module(alg, alg.rd.identity, a=[2])
        ext = extend_to_levi(m, torus)
        assert extension_restricts(m, ext) == (True, None)
        assert extension_is_unique(m, torus) == (True, None)

    def test_extension_values(self, alg, torus):
        m = character_module(alg, alg.rd.identity, a=[2])
        ext = extend_to_levi(m, torus)
        # E^J(-1) = E(0) E(1)^-1 = 2^-1 = 2 in GF(3)
        assert int(ext.action(torus.group.element((-1,)).lam)[0, 0]) == 2

    def test_wrong_support_raises(self, alg, torus):
        m = character_module(alg, alg.rd.longest_element())
        with pytest.raises(SupportError, match="needs supp M"):
            extend_to_levi(m, torus)

    def test_rank_two_levi_extension(self, sl3):
        ld = levi_algebra(sl3, [0])
        w_j = sl3.rd.longest_element([0])
        m = character_module(sl3, w_j, a=[2, 1])
        ext = extend_to_levi(m, ld)
        assert extension_restricts(m, ext) == (True, None)
        assert extension_is_unique(m, ld) == (True, None)
        zero = sl3.zk.zero
        # a^mu on mu anti-dominant for alpha_1, zero elsewhere
        assert int(ext.action(LambdaElement((-1, 0), zero))[0, 0]) == 2
        assert int(ext.action(LambdaElement((0, 0), zero))[0, 0]) == 1
        assert int(ext.action(LambdaElement((1, 0), zero))[0, 0]) == 0

    def test_extension_with_independent_lambda_zero(self, sl3):
        ld = levi_algebra(sl3, ())
        m = character_module(sl3, sl3.rd.identity, a=[2, 2])
        first, second = ld.lambda_zero_choices()
        a = extend_to_levi(m, ld, first)
        b = extend_to_levi(m, ld, second)
        for v in ld.rd.box_points(2):
            lam = LambdaElement(tuple(v), sl3.zk.zero)
            assert (a.action(lam) == b.action(lam)).all()
        assert extension_is_unique(m, ld) == (True, None)

    def test_inadmissible_lambda_zero_raises(self, sl3):
        ld = levi_algebra(sl3, ())
        m = character_module(sl3, sl3.rd.identity, a=[2, 2])
        with pytest.raises(LeviError, match="not orthogonal"):
            extend_to_levi(m, ld, LambdaElement((1, 2), sl3.zk.zero))
