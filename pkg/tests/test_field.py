"""Tests for GF(p^m) scalars and matrix algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prophecke.field import (
    FieldError,
    GaloisField,
    SingularMatrixError,
    minimal_field_order,
    split_prime_power,
)


def _make_field(order: int = 9) -> GaloisField:
    return GaloisField(order)


FIELDS = {order: GaloisField(order) for order in (2, 3, 4, 7, 9)}


# --------------------------------------------------------------------------- #
# Prime powers                                                                #
# --------------------------------------------------------------------------- #


class TestPrimePowers:
    def test_split_prime(self):
        assert split_prime_power(7) == (7, 1)

    def test_split_power(self):
        assert split_prime_power(9) == (3, 2)
        assert split_prime_power(64) == (2, 6)

    def test_not_prime_power_raises(self):
        with pytest.raises(FieldError, match="Not a prime power"):
            split_prime_power(6)

    def test_one_raises(self):
        with pytest.raises(FieldError, match="Not a prime power"):
            split_prime_power(1)

    def test_minimal_order_prime_q(self):
        assert minimal_field_order(3) == 3
        assert minimal_field_order(5) == 5

    def test_minimal_order_prime_power_q(self):
        # (4 - 1) | 2^m - 1 first at m = 2
        assert minimal_field_order(4) == 4

    def test_minimal_order_two(self):
        assert minimal_field_order(2) == 2


# --------------------------------------------------------------------------- #
# Construction                                                                #
# --------------------------------------------------------------------------- #


class TestConstruction:
    def test_too_large_raises(self):
        with pytest.raises(FieldError, match="exceeds"):
            GaloisField(2048)

    def test_not_prime_power_raises(self):
        with pytest.raises(FieldError, match="Not a prime power"):
            GaloisField(10)

    def test_generator_is_primitive(self):
        f = _make_field(9)
        powers = {f.pow(f.generator, k) for k in range(8)}
        assert powers == set(range(1, 9))

    def test_equality_by_order(self):
        assert GaloisField(4) == GaloisField(4)
        assert GaloisField(4) != GaloisField(2)

    def test_from_int_reduces_mod_p(self):
        f = _make_field(9)
        assert f.from_int(-1) == f.neg(1)
        assert f.from_int(4) == 1

    def test_check_rejects_out_of_range(self):
        with pytest.raises(FieldError, match="not an element"):
            _make_field(4).check(4)


# --------------------------------------------------------------------------- #
# Field axioms                                                                #
# --------------------------------------------------------------------------- #


@st.composite
def field_triples(draw):
    order = draw(st.sampled_from(sorted(FIELDS)))
    elem = st.integers(min_value=0, max_value=order - 1)
    return FIELDS[order], draw(elem), draw(elem), draw(elem)


class TestAxioms:
    @settings(max_examples=200, deadline=None)
    @given(field_triples())
    def test_distributive(self, data):
        f, a, b, c = data
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))

    @settings(max_examples=200, deadline=None)
    @given(field_triples())
    def test_associative(self, data):
        f, a, b, c = data
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))

    @settings(max_examples=200, deadline=None)
    @given(field_triples())
    def test_inverses(self, data):
        f, a, _, _ = data
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1

    def test_division_by_zero_raises(self):
        with pytest.raises(FieldError, match="Division by zero"):
            _make_field(7).inv(0)

    def test_sign(self):
        f = _make_field(7)
        assert f.sign(2) == 1
        assert f.sign(3) == 6

    def test_characteristic_two_sign_is_one(self):
        assert _make_field(4).sign(1) == 1


class TestRootsOfUnity:
    def test_primitive_fourth_root_in_gf9(self):
        f = _make_field(9)
        r = f.root_of_unity(4)
        assert f.pow(r, 4) == 1
        assert f.pow(r, 2) != 1

    def test_missing_root_raises(self):
        with pytest.raises(FieldError, match="no primitive 4-th root"):
            _make_field(7).root_of_unity(4)


# --------------------------------------------------------------------------- #
# Matrices                                                                    #
# --------------------------------------------------------------------------- #


class TestMatrices:
    def test_inverse(self):
        f = _make_field(9)
        a = f.matrix([[1, 3], [4, 2]])
        assert np.array_equal(f.matmul(a, f.inverse(a)), f.eye(2))

    def test_singular_inverse_raises(self):
        f = _make_field(3)
        with pytest.raises(SingularMatrixError):
            f.inverse(f.matrix([[1, 2], [2, 1]]))

    def test_rank(self):
        f = _make_field(3)
        assert f.rank(f.matrix([[1, 2], [2, 1]])) == 1
        assert f.rank(f.matrix([[1, 0], [0, 1]])) == 2

    def test_nullspace(self):
        f = _make_field(9)
        a = f.matrix([[1, 3, 4], [2, 6, 8]])
        kernel = f.nullspace(a)
        assert kernel.shape[0] == 3 - f.rank(a)
        for row in kernel:
            assert not f.matmul(a, row.reshape(3, 1)).any()

    def test_solve_and_inconsistent(self):
        f = _make_field(5)
        a = f.matrix([[1, 1], [1, 1]])
        x = f.solve(a, np.array([2, 2]))
        assert np.array_equal(f.matmul(a, x.reshape(2, 1)).ravel(), [2, 2])
        assert f.solve(a, np.array([1, 2])) is None

    def test_mpow_negative(self):
        f = _make_field(7)
        a = f.matrix([[2, 1], [0, 3]])
        assert np.array_equal(f.matmul(f.mpow(a, -3), f.mpow(a, 3)), f.eye(2))

    def test_entries_out_of_range_raise(self):
        with pytest.raises(FieldError, match="must lie in"):
            _make_field(3).matrix([[3]])

    def test_restrict_unstable_raises(self):
        f = _make_field(3)
        with pytest.raises(FieldError, match="not stable"):
            f.restrict(f.matrix([[1, 0]]), f.matrix([[0, 1], [1, 0]]))

    def test_kron_shape(self):
        f = _make_field(4)
        assert f.kron(f.eye(2), f.eye(3)).shape == (6, 6)
