"""Tests for finite-dimensional A- and H-modules."""

import numpy as np
import pytest

from prophecke.field import GaloisField
from prophecke.hecke import HeckeAlgebra
from prophecke.modules import (
    CategoryError,
    FinAModule,
    FinHModule,
    IntertwinerSearchError,
    ModuleValidationError,
    change_basis_h,
    chamber_seeds,
    character_module,
    decompose_by_support,
    direct_sum_h,
    dual_a,
    find_h_isomorphism,
    find_invertible,
    hypothesis_trivial_on_lambda_prime,
    in_category_c,
    isotypic,
    one_dim_h_module,
    switch_check,
    twist,
)
from prophecke.prop_weyl import OmegaOrbit, ProPWeylGroup, ZKappaGroup, character_from_exponents
from prophecke.root_system import preset


def _make_algebra(name: str = "SL2", q: int = 3) -> HeckeAlgebra:
    rd = preset(name)
    fld = GaloisField(q)
    return HeckeAlgebra(ProPWeylGroup(rd, q, ZKappaGroup.default(rd, q, fld.p)), fld)


@pytest.fixture
def alg():
    return _make_algebra()


@pytest.fixture
def triv(alg):
    return one_dim_h_module(alg, 0, name="triv")


@pytest.fixture
def sign(alg):
    return one_dim_h_module(alg, alg.field.neg(1), name="sign")


def _supersingular(alg: HeckeAlgebra) -> FinHModule:
    # T_s1 -> 0, T_s0 -> -1: z_lambda0 acts by zero
    return FinHModule(
        alg,
        1,
        {"s1": [[0]], "s0": [[alg.field.neg(1)]]},
        lambda u: np.array([[1]], dtype=np.int64),
        name="ss",
    )


# --------------------------------------------------------------------------- #
# A-modules                                                                   #
# --------------------------------------------------------------------------- #


class TestAModules:
    def test_chamber_seeds_sl2(self, alg):
        seeds = chamber_seeds(alg)
        assert {lam.mu for lam in seeds} == {(1,), (-1,), (0,)}
        assert len(seeds) == 3

    def test_character_support(self, alg):
        rd = alg.rd
        assert character_module(alg, rd.identity).support_of() == rd.identity
        assert character_module(alg, rd.longest_element()).support_of() == rd.longest_element()

    def test_missing_seed_raises(self, alg):
        with pytest.raises(ModuleValidationError, match="Missing matrix for seed"):
            FinAModule(alg, 1, {})

    def test_wrong_shape_raises(self, alg):
        seeds = {lam: np.eye(2, dtype=np.int64) for lam in chamber_seeds(alg)}
        with pytest.raises(ModuleValidationError, match="expected \\(1, 1\\)"):
            FinAModule(alg, 1, seeds)

    def test_nonzero_across_chambers_raises(self, alg):
        seeds = {lam: np.array([[1]], dtype=np.int64) for lam in chamber_seeds(alg)}
        with pytest.raises(ModuleValidationError, match="vanish across chambers"):
            FinAModule(alg, 1, seeds)

    def test_zero_eigenvalue_raises(self, alg):
        with pytest.raises(ModuleValidationError, match="must be nonzero"):
            character_module(alg, alg.rd.identity, a=[0])

    def test_twist_moves_support(self, alg):
        rd = alg.rd
        s = rd.simple_reflection(0)
        assert twist(character_module(alg, rd.identity), s).support_of() == s

    def test_dual_moves_support_by_longest(self, alg):
        rd = alg.rd
        m = character_module(alg, rd.identity)
        assert dual_a(m).support_of() == rd.longest_element()

    def test_bidual_is_original(self, alg):
        m = character_module(alg, alg.rd.identity, a=[2])
        back = dual_a(dual_a(m))
        for lam in chamber_seeds(alg):
            assert np.array_equal(back.action(lam), m.action(lam))

    def test_switch_check_dimensions(self, alg):
        m = character_module(alg, alg.rd.identity)
        assert switch_check(m, m) == (1, 1)


# --------------------------------------------------------------------------- #
# H-modules                                                                   #
# --------------------------------------------------------------------------- #


class TestHModules:
    def test_one_dim_modules_validate(self, triv, sign):
        assert triv.dim == sign.dim == 1

    def test_bad_eps_fails_quadratic_relation(self, alg):
        with pytest.raises(ModuleValidationError, match=r"T_s1\^2 = c T_s1 fails"):
            one_dim_h_module(alg, 1)

    def test_missing_generator_raises(self, alg):
        with pytest.raises(ModuleValidationError, match="Missing matrix for generator s1"):
            FinHModule(alg, 1, {}, lambda u: np.array([[1]]))

    def test_supports_of_one_dim_modules(self, alg, triv, sign):
        assert triv.restrict_to_a().support_of() == alg.rd.identity
        assert sign.restrict_to_a().support_of() == alg.rd.longest_element()

    def test_category_c(self, alg, triv):
        assert in_category_c(triv)
        assert not in_category_c(_supersingular(alg))

    def test_decompose_by_support(self, alg, triv, sign):
        pieces = decompose_by_support(direct_sum_h(triv, sign))
        dims = {w: basis.shape[0] for w, (basis, _) in pieces.items()}
        assert dims == {alg.rd.identity: 1, alg.rd.longest_element(): 1}

    def test_decompose_outside_c_raises(self, alg):
        with pytest.raises(CategoryError, match="is not in C"):
            decompose_by_support(_supersingular(alg))

    def test_isomorphism_found_after_basis_change(self, alg, triv, sign):
        m = direct_sum_h(triv, sign)
        swapped = change_basis_h(m, np.array([[0, 1], [1, 0]], dtype=np.int64))
        assert find_h_isomorphism(m, swapped) is not None

    def test_non_isomorphic(self, triv, sign):
        assert find_h_isomorphism(triv, sign) is None

    def test_zkappa_acts_trivially(self, triv):
        assert hypothesis_trivial_on_lambda_prime(triv, 0)


class TestFindInvertible:
    def _units(self, d: int, positions) -> np.ndarray:
        rows = np.zeros((len(positions), d * d), dtype=np.int64)
        for k, pos in enumerate(positions):
            rows[k, pos] = 1
        return rows

    def test_first_invertible_in_lexicographic_order(self):
        # E11, E22, E12 over GF(2): only E11 + E22 (+ E12) is invertible
        space = self._units(2, [0, 3, 1])
        mat = find_invertible(GaloisField(2), space, 2)
        assert np.array_equal(mat, np.eye(2, dtype=np.int64))

    def test_thin_invertible_subset_is_found(self):
        # every basis row and the sum of all rows are singular over GF(2)
        space = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1]], dtype=np.int64)
        mat = find_invertible(GaloisField(2), space, 2)
        assert mat is not None
        assert GaloisField(2).is_invertible(mat)

    def test_exhaustive_miss_returns_none(self):
        assert find_invertible(GaloisField(2), self._units(2, [0, 1]), 2) is None

    def test_empty_space(self):
        assert find_invertible(GaloisField(3), np.zeros((0, 4), dtype=np.int64), 2) is None

    def test_sampling_miss_raises(self):
        # 3^8 combinations exceed the enumeration limit; the last two rows stay zero
        space = self._units(4, range(8))
        with pytest.raises(IntertwinerSearchError, match="8-dimensional space over GF\\(3\\)"):
            find_invertible(GaloisField(3), space, 4, tries=5)


class TestIsotypic:
    def test_trivial_module_single_piece(self, triv):
        pieces = isotypic(triv)
        assert len(pieces) == 1
        assert sum(b.shape[0] for b in pieces.values()) == 1

    def test_nontrivial_character_piece(self, alg):
        psi = character_from_exponents(alg.zk, alg.field, [1])
        m = character_module(alg, alg.rd.identity, psi=psi)
        pieces = isotypic(m)
        assert list(pieces) == [OmegaOrbit.close(psi)]
