"""Tests for Z_kappa, characters and the pro-p Weyl group W(1)."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prophecke.field import GaloisField
from prophecke.prop_weyl import (
    LiftTableError,
    ProPWeylGroup,
    ZKappaError,
    ZKappaGroup,
    act_on_character,
    all_characters,
    character_from_exponents,
    trivial_character,
)
from prophecke.root_system import RootDatumError, preset


def _make_group(name: str = "SL2", q: int = 3, **kwargs) -> ProPWeylGroup:
    rd = preset(name)
    p = 2 if q in (2, 4) else q
    zk = ZKappaGroup.default(rd, q, p)
    return ProPWeylGroup(rd, q, zk, **kwargs)


_GROUPS = {name: _make_group(name) for name in ("SL2", "GL2", "SL3")}
_POOLS = {name: grp.enumerate_by_length(2, radius=1, with_zkappa=True) for name, grp in _GROUPS.items()}


@st.composite
def group_triples(draw):
    name = draw(st.sampled_from(sorted(_GROUPS)))
    pool = _POOLS[name]
    pick = st.sampled_from(pool)
    return _GROUPS[name], draw(pick), draw(pick), draw(pick)


# --------------------------------------------------------------------------- #
# Z_kappa                                                                     #
# --------------------------------------------------------------------------- #


class TestZKappa:
    def test_default_orders(self):
        grp = _make_group("GL2", 3)
        assert grp.zk.orders == (2, 2)
        assert grp.zk.order == 4

    def test_order_not_prime_to_p_raises(self):
        with pytest.raises(ZKappaError, match="not prime to p"):
            ZKappaGroup.default(preset("SL2"), 3, 2)

    def test_wrong_matrix_count_raises(self):
        with pytest.raises(ZKappaError, match="Expected 1 reflection"):
            ZKappaGroup(preset("SL2"), [2], [], [[1]], 3)

    def test_reduce_wrong_length_raises(self):
        with pytest.raises(ZKappaError, match="expected 2"):
            _make_group("GL2").zk.reduce([1])

    def test_action_is_swap_for_gl2(self):
        grp = _make_group("GL2")
        s = grp.rd.simple_reflection(0)
        assert grp.zk.act(s, (1, 0)) == (0, 1)

    def test_coroot_image(self):
        grp = _make_group("SL2", 3)
        k = grp.rd.simple_index[0]
        assert grp.zk.coroot_image(k, 3) == frozenset({(0,), (1,)})


class TestCharacters:
    def test_all_characters_count(self):
        grp = _make_group("GL2")
        chars = all_characters(grp.zk, GaloisField(3))
        assert len(chars) == 4
        assert sum(1 for c in chars if c.is_trivial()) == 1

    def test_character_values(self):
        grp = _make_group("SL2")
        f = GaloisField(3)
        psi = character_from_exponents(grp.zk, f, [1])
        assert psi.value(f, (1,)) == 2
        assert psi.value(f, (0,)) == 1

    def test_exponent_count_checked(self):
        grp = _make_group("SL2")
        with pytest.raises(ZKappaError, match="needs 1 exponents"):
            character_from_exponents(grp.zk, GaloisField(3), [1, 0])

    def test_weyl_action_on_characters(self):
        grp = _make_group("GL2")
        f = GaloisField(3)
        psi = character_from_exponents(grp.zk, f, [1, 0])
        moved = act_on_character(grp.zk, f, grp.rd.simple_reflection(0), psi)
        assert moved.values == (1, 2)
        assert act_on_character(grp.zk, f, grp.rd.identity, psi) == psi

    def test_trivial_character(self):
        assert trivial_character(_make_group("SL3").zk).is_trivial()


# --------------------------------------------------------------------------- #
# Group law                                                                   #
# --------------------------------------------------------------------------- #


class TestGroupLaw:
    @settings(max_examples=150, deadline=None)
    @given(group_triples())
    def test_associative(self, data):
        grp, x, y, z = data
        assert grp.multiply(grp.multiply(x, y), z) == grp.multiply(x, grp.multiply(y, z))

    @settings(max_examples=100, deadline=None)
    @given(group_triples())
    def test_inverse(self, data):
        grp, x, _, _ = data
        assert grp.multiply(x, grp.inverse(x)) == grp.identity
        assert grp.multiply(grp.inverse(x), x) == grp.identity

    def test_ns_square(self):
        grp = _make_group("SL2", 3)
        n_s = grp.canonical_lift(grp.rd.simple_reflection(0))
        assert grp.multiply(n_s, n_s) == grp.element((0,), (1,))

    def test_ns_square_trivial_for_even_q(self):
        grp = _make_group("SL2", 4)
        n_s = grp.canonical_lift(grp.rd.simple_reflection(0))
        assert grp.multiply(n_s, n_s) == grp.identity

    def test_ns_square_not_fixed_raises(self):
        rd = preset("GL2")
        zk = ZKappaGroup.default(rd, 3, 3)
        with pytest.raises(LiftTableError, match="not fixed"):
            ProPWeylGroup(rd, 3, zk, ns_squares={0: [1, 0]})

    def test_element_wrong_length_raises(self):
        with pytest.raises(RootDatumError, match="expected 1"):
            _make_group("SL2").element((1, 0))

    def test_conjugate_moves_translation(self):
        grp = _make_group("SL2")
        n_s = grp.canonical_lift(grp.rd.simple_reflection(0))
        lam = grp.lambda_s_members((2,))
        assert grp.conjugate(n_s, lam).mu == (-2,)
        assert len(grp.orbit(lam)) == 2


# --------------------------------------------------------------------------- #
# Length and affine generators                                                #
# --------------------------------------------------------------------------- #


class TestLength:
    def test_translation_length(self):
        grp = _make_group("SL2")
        # l(mu) = |<mu, alpha>| = 2 |mu| on SL2
        assert grp.length(grp.element((1,))) == 2
        assert grp.length(grp.element((-3,))) == 6

    def test_zkappa_has_length_zero(self):
        grp = _make_group("SL2")
        assert grp.length(grp.element((0,), (1,))) == 0

    def test_affine_generators_have_length_one(self):
        for grp in _GROUPS.values():
            assert all(grp.length(g.element) == 1 for g in grp.affine_generators)

    def test_generator_labels(self):
        assert [g.label for g in _make_group("SL3").affine_generators] == ["s1", "s2", "s0"]

    def test_reduced_decomposition_reassembles(self):
        grp = _make_group("SL3")
        for g in grp.enumerate_by_length(3, radius=1):
            letters, u = grp.reduced_decomposition(g)
            assert len(letters) == grp.length(g)
            assert grp.product(*(n.element for n in letters), u) == g

    def test_length_zero_elements_gl2(self):
        grp = _make_group("GL2")
        assert grp.omega_generators()

    def test_enumerate_is_sorted_by_length(self):
        grp = _make_group("SL2")
        lengths = [grp.length(g) for g in grp.enumerate_by_length(3, radius=1)]
        assert lengths == sorted(lengths)
        assert max(lengths) == 3

    def test_bruhat_identity_below_generator(self):
        grp = _make_group("SL2")
        s0 = grp.affine_generators[-1].element
        assert grp.bruhat_leq(grp.identity, s0)
        assert not grp.bruhat_leq(s0, grp.identity)

    def test_lambda_prime_alpha(self):
        grp = _make_group("SL2")
        lp = grp.lambda_prime_alpha(0)
        assert lp.translation.mu == (1,)
        with pytest.raises(RootDatumError, match="out of range"):
            grp.lambda_prime_alpha(1)


class TestFormat:
    def test_identity(self):
        grp = _make_group("SL2")
        assert grp.format(grp.identity) == "1"

    def test_full_element(self):
        grp = _make_group("SL2")
        n_s = grp.canonical_lift(grp.rd.simple_reflection(0))
        g = grp.multiply(grp.element((1,), (1,)), n_s)
        assert grp.format(g) == "u(1)*t(1)*s1"
