"""Tests for root data, W_0 and the dominant cone."""

import gc
import weakref
from concurrent.futures import ThreadPoolExecutor

import pytest

from prophecke.root_system import PRESETS, RootDatum, RootDatumError, preset


# --------------------------------------------------------------------------- #
# Construction                                                                #
# --------------------------------------------------------------------------- #


class TestPresets:
    @pytest.mark.parametrize(
        "name, order, positives",
        [("SL2", 2, 1), ("GL2", 2, 1), ("SL3", 6, 3), ("Sp4", 8, 4)],
    )
    def test_weyl_order_and_roots(self, name, order, positives):
        rd = preset(name)
        assert len(rd.weyl) == order
        assert rd.n_positive == positives

    def test_unknown_preset_raises(self):
        with pytest.raises(RootDatumError, match="Unknown preset 'G2'"):
            preset("G2")

    def test_preset_names(self):
        assert set(PRESETS) == {"SL2", "GL2", "SL3", "Sp4"}

    def test_preset_is_cached(self):
        assert preset("SL3") is preset("SL3")


class TestValidation:
    def test_bad_diagonal_names_entry(self):
        with pytest.raises(RootDatumError, match=r"cartan\[0\]\[0\] = 4"):
            RootDatum([[2]], [[2]])

    def test_positive_off_diagonal_raises(self):
        with pytest.raises(RootDatumError, match=r"cartan\[0\]\[1\]"):
            RootDatum([[2, 1], [1, 2]], [[1, 0], [0, 1]])

    def test_affine_type_raises(self):
        with pytest.raises(RootDatumError, match="not of finite type"):
            RootDatum([[2, -2], [-2, 2]], [[1, 0], [0, 1]])

    def test_length_mismatch_raises(self):
        with pytest.raises(RootDatumError, match="simple coroots"):
            RootDatum([[2]], [])

    def test_ragged_vectors_raise(self):
        with pytest.raises(RootDatumError, match="expected 2"):
            RootDatum([[1, -1]], [[1]])


# --------------------------------------------------------------------------- #
# Weyl group                                                                  #
# --------------------------------------------------------------------------- #


class TestWeylGroup:
    def test_identity_first(self):
        rd = preset("SL3")
        assert rd.identity.is_identity()
        assert str(rd.identity) == "e"

    def test_longest_element_lengths(self):
        assert preset("SL3").longest_element().length == 3
        assert preset("Sp4").longest_element().length == 4

    def test_longest_of_parabolic(self):
        rd = preset("SL3")
        assert rd.longest_element([0]) == rd.simple_reflection(0)
        assert rd.longest_element([]) == rd.identity

    def test_bad_subset_raises(self):
        with pytest.raises(RootDatumError, match="not a subset"):
            preset("SL2").longest_element([3])

    def test_word_index_out_of_range(self):
        with pytest.raises(RootDatumError, match="out of range"):
            preset("SL2").from_word([1])

    def test_inverse(self):
        rd = preset("Sp4")
        for w in rd.weyl:
            assert rd.mul(w, rd.inverse(w)) == rd.identity

    def test_str_of_reflection(self):
        rd = preset("SL3")
        assert str(rd.from_word([0, 1])) == "s1*s2"

    def test_simple_reflection_matrix(self):
        rd = preset("GL2")
        assert rd.simple_reflection(0).act((1, 0)) == (0, 1)

    def test_delta_w_extremes(self):
        rd = preset("SL3")
        assert rd.delta_w(rd.identity) == frozenset({0, 1})
        assert rd.delta_w(rd.longest_element()) == frozenset()

    def test_bruhat_identity_is_minimum(self):
        rd = preset("SL3")
        assert all(rd.bruhat_leq(rd.identity, w) for w in rd.weyl)
        assert all(rd.bruhat_leq(w, rd.longest_element()) for w in rd.weyl)

    def test_bruhat_incomparable(self):
        rd = preset("SL3")
        assert not rd.bruhat_leq(rd.simple_reflection(0), rd.simple_reflection(1))

    def test_upward_closed(self):
        rd = preset("SL2")
        assert rd.is_upward_closed({rd.longest_element()})
        assert not rd.is_upward_closed({rd.identity})

    def test_bruhat_from_threads_matches_serial(self):
        rd = RootDatum(*PRESETS["Sp4"], name="Sp4")
        pairs = [(u, w) for u in rd.weyl for w in rd.weyl] * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            threaded = list(pool.map(lambda p: rd.bruhat_leq(*p), pairs))
        fresh = RootDatum(*PRESETS["Sp4"], name="Sp4")
        assert threaded == [fresh.bruhat_leq(fresh.weyl[u.index], fresh.weyl[w.index]) for u, w in pairs]

    def test_products_from_threads_match_serial(self):
        rd = RootDatum(*PRESETS["SL3"], name="SL3")
        pairs = [(u, w) for u in rd.weyl for w in rd.weyl] * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            threaded = list(pool.map(lambda p: rd.mul(*p).index, pairs))
        assert threaded == [rd.from_word(u.word + w.word).index for u, w in pairs]

    def test_caches_do_not_keep_root_datum_alive(self):
        rd = RootDatum(*PRESETS["SL3"], name="SL3")
        rd.bruhat_leq(rd.identity, rd.longest_element())
        rd.dominant_generators()
        ref = weakref.ref(rd)
        del rd
        gc.collect()
        assert ref() is None


# --------------------------------------------------------------------------- #
# Dominant cone                                                               #
# --------------------------------------------------------------------------- #


class TestDominantCone:
    def test_regular_dominant(self):
        for name in PRESETS:
            rd = preset(name)
            v = rd.regular_dominant()
            assert rd.is_dominant(v) and rd.is_regular(v)
            assert rd.is_antidominant(rd.regular_antidominant())

    def test_sl2_regular_dominant(self):
        assert preset("SL2").regular_dominant() == (1,)

    def test_lineality(self):
        assert preset("SL2").lineality_basis() == ()
        assert preset("GL2").lineality_basis() == ((1, 1),)

    def test_decompose_dominant_reassembles(self):
        rd = preset("SL3")
        for v in rd.box_points(3):
            if not rd.is_dominant(v):
                continue
            parts, lin = rd.decompose_dominant(v)
            assert lin == []
            assert tuple(sum(p[a] for p in parts) for a in range(2)) == tuple(v)

    def test_decompose_with_lineality(self):
        rd = preset("GL2")
        parts, lin = rd.decompose_dominant((3, 1))
        total = [sum(p[a] for p in parts) + lin[0] * rd.lineality_basis()[0][a] for a in range(2)]
        assert total == [3, 1]

    def test_decompose_not_dominant_raises(self):
        with pytest.raises(RootDatumError, match="not dominant"):
            preset("SL2").decompose_dominant((-1,))

    def test_chamber_of_regular_vector(self):
        rd = preset("SL3")
        assert rd.chamber_of(rd.regular_dominant()) == frozenset({rd.identity})

    def test_wrong_dimension_raises(self):
        with pytest.raises(RootDatumError, match="has length 1, expected 2"):
            preset("SL3").is_dominant((1,))

    def test_levi_of_empty_set(self):
        levi = preset("SL3").levi([])
        assert levi.rank_ss == 0
        assert len(levi.weyl) == 1

    def test_levi_vector(self):
        rd = preset("SL3")
        v = rd.levi_vector([0])
        p = rd.simple_pairings(v)
        assert p[0] == 0 and p[1] > 0
