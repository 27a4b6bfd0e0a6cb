"""Finite coefficient fields GF(p^m) and exact matrix algebra over them.

Elements are plain ints 0 <= a < p^m. The base-p digits of ``a`` are the
coefficients (lowest degree first) of a polynomial in the Conway generator,
so a prime field uses the ordinary residues.

Matrix helpers take and return ``numpy`` int64 arrays. Arithmetic goes through
dense addition/multiplication tables:
- row operations stay vectorised for extension fields too
- no tolerance anywhere, every comparison is exact
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import conway_polynomials
import numpy as np
import sympy

logger = logging.getLogger(__name__)

MAX_FIELD_ORDER = 1024


class FieldError(ValueError):
    """Raised for invalid field parameters or impossible field operations,
    such as inverting zero or asking for roots of unity the field lacks."""

    pass


class SingularMatrixError(FieldError):
    """Raised when a matrix that has to be invertible is singular."""

    pass


def split_prime_power(n: int) -> Tuple[int, int]:
    """Return (p, m) with n = p^m.

    Raises:
        FieldError: if n is not a prime power.
    """
    if n < 2:
        raise FieldError(f"Not a prime power: {n}")
    factors = sympy.factorint(n)
    if len(factors) != 1:
        raise FieldError(f"Not a prime power: {n}")
    ((p, m),) = factors.items()
    return int(p), int(m)


def minimal_field_order(q: int) -> int:
    """Smallest p^m, p the characteristic of q, with (q - 1) | p^m - 1."""
    p, _ = split_prime_power(q)
    order = p
    while (order - 1) % (q - 1) != 0:
        order *= p
    return order


def _conway_coefficients(p: int, m: int) -> List[int]:
    try:
        return list(conway_polynomials.database()[p][m])
    except KeyError:
        raise FieldError(f"No Conway polynomial known for GF({p}^{m})")


class GaloisField:
    """The field with ``order`` elements, backed by log/exp and addition tables."""

    def __init__(self, order: int):
        p, m = split_prime_power(order)
        if order > MAX_FIELD_ORDER:
            raise FieldError(
                f"Field order {order} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )
        self.p = p
        self.m = m
        self.order = order

        powers = p ** np.arange(m, dtype=np.int64)
        digits = (np.arange(order, dtype=np.int64)[:, None] // powers[None, :]) % p
        self._digits = digits
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        self.neg_table = ((-digits) % p) @ powers

        if m == 1:
            generator = int(sympy.primitive_root(p)) if p > 2 else 1
            exp = [1]
            for _ in range(order - 2):
                exp.append(exp[-1] * generator % p)
        else:
            coefficients = _conway_coefficients(p, m)
            generator = p  # the polynomial "x"
            exp = [1]
            state = [1] + [0] * (m - 1)
            for _ in range(order - 2):
                top = state[-1]
                state = [0] + state[:-1]
                # x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1})
                state = [(s - top * c) % p for s, c in zip(state, coefficients)]
                exp.append(sum(d * p**i for i, d in enumerate(state)))
        self.generator = generator
        self.exp_table = np.array(exp, dtype=np.int64)
        log = np.full(order, -1, dtype=np.int64)
        log[self.exp_table] = np.arange(order - 1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise FieldError(f"Generator of GF({order}) is not primitive")
        self.log_table = log

        mul = np.zeros((order, order), dtype=np.int64)
        nonzero = np.arange(1, order)
        exponents = (log[nonzero][:, None] + log[nonzero][None, :]) % (order - 1)
        mul[1:, 1:] = self.exp_table[exponents]
        self.mul_table = mul
        inv = np.zeros(order, dtype=np.int64)
        inv[1:] = self.exp_table[(-log[1:]) % (order - 1)]
        self.inv_table = inv
        logger.debug("prophecke: built GF(%d) tables", order)

    def __repr__(self) -> str:
        return f"GaloisField({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GaloisField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("GaloisField", self.order))

    # ------------------------------------------------------------------ #
    # Scalars                                                            #
    # ------------------------------------------------------------------ #

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of GF({self.order})")
        return int(a)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p^m)."""
        return int(n) % self.p

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("Division by zero in GF(%d)" % self.order)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise FieldError("Division by zero in GF(%d)" % self.order)
            return 1 if k == 0 else 0
        return int(self.exp_table[(self.log_table[a] * k) % (self.order - 1)])

    def sum(self, values: Iterable[int]) -> int:
        total = 0
        for v in values:
            total = int(self.add_table[total, v])
        return total

    def sign(self, k: int) -> int:
        """(-1)^k as a field element."""
        return 1 if k % 2 == 0 else self.neg(1)

    def root_of_unity(self, n: int) -> int:
        """A primitive n-th root of unity.

        Raises:
            FieldError: if n does not divide p^m - 1.
        """
        if n < 1 or (self.order - 1) % n != 0:
            raise FieldError(
                f"GF({self.order}) has no primitive {n}-th root of unity"
            )
        return int(self.exp_table[((self.order - 1) // n) % (self.order - 1)])

    # ------------------------------------------------------------------ #
    # Matrices                                                           #
    # ------------------------------------------------------------------ #

    def matrix(self, rows: Sequence[Sequence[int]]) -> np.ndarray:
        a = np.array(rows, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.size and (a.min() < 0 or a.max() >= self.order):
            raise FieldError(f"Matrix entries must lie in [0, {self.order})")
        return a

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def scalar_matrix(self, c: int, n: int) -> np.ndarray:
        return self.eye(n) * int(c)

    def madd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_table[a, b]

    def msub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_table[a, self.neg_table[b]]

    def mneg(self, a: np.ndarray) -> np.ndarray:
        return self.neg_table[a]

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return self.mul_table[int(c), a]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise FieldError(f"Shape mismatch {a.shape} x {b.shape}")
        if self.m == 1:
            return (a @ b) % self.p
        acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for j in range(a.shape[1]):
            acc = self.add_table[acc, self.mul_table[a[:, j][:, None], b[j][None, :]]]
        return acc

    def matvec(self, v: np.ndarray, a: np.ndarray) -> np.ndarray:
        """Row vector times matrix."""
        return self.matmul(v[None, :], a)[0]

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ra, ca = a.shape
        rb, cb = b.shape
        return self.mul_table[a[:, None, :, None], b[None, :, None, :]].reshape(
            ra * rb, ca * cb
        )

    def rref(self, a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and pivot columns."""
        r_mat = np.array(a, dtype=np.int64, copy=True)
        rows, cols = r_mat.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(r_mat[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                r_mat[[r, piv]] = r_mat[[piv, r]]
            r_mat[r] = self.mul_table[self.inv_table[r_mat[r, c]], r_mat[r]]
            column = r_mat[:, c].copy()
            column[r] = 0
            hit = np.nonzero(column)[0]
            if hit.size:
                r_mat[hit] = self.add_table[
                    r_mat[hit],
                    self.mul_table[self.neg_table[column[hit]][:, None], r_mat[r][None, :]],
                ]
            pivots.append(c)
            r += 1
        return r_mat, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def row_space(self, a: np.ndarray) -> np.ndarray:
        """Basis (rows, reduced echelon form) of the row space."""
        if a.shape[0] == 0:
            return a.reshape(0, a.shape[1])
        r_mat, pivots = self.rref(a)
        return r_mat[: len(pivots)]

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Rows spanning {x : a @ x = 0}."""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(cols)
        r_mat, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for i, pc in enumerate(pivots):
                basis[k, pc] = self.neg_table[r_mat[i, f]]
        return basis

    def left_nullspace(self, a: np.ndarray) -> np.ndarray:
        """Rows spanning {y : y @ a = 0}."""
        return self.nullspace(a.T)

    def solve(self, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """One solution x of a @ x = b (free variables zero), or None."""
        rows, cols = a.shape
        aug = np.concatenate([a, b.reshape(rows, 1)], axis=1)
        r_mat, pivots = self.rref(aug)
        if pivots and pivots[-1] == cols:
            return None
        x = np.zeros(cols, dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = r_mat[i, cols]
        return x

    def solve_left(self, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """One row vector y with y @ a = b, or None."""
        return self.solve(a.T, b)

    def is_invertible(self, a: np.ndarray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        if a.shape != (n, n):
            raise SingularMatrixError(f"Non-square matrix {a.shape}")
        r_mat, pivots = self.rref(np.concatenate([a, self.eye(n)], axis=1))
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise SingularMatrixError("Matrix is not invertible")
        return r_mat[:, n:]

    def mpow(self, a: np.ndarray, k: int) -> np.ndarray:
        if k < 0:
            a = self.inverse(a)
            k = -k
        result = self.eye(a.shape[0])
        base = a
        while k:
            if k & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            k >>= 1
        return result

    def restrict(self, basis: np.ndarray, a: np.ndarray) -> np.ndarray:
        """Matrix of ``a`` on the row space of ``basis`` (assumed stable)."""
        image = self.matmul(basis, a)
        rows = []
        for row in image:
            coeffs = self.solve_left(basis, row)
            if coeffs is None:
                raise FieldError("Subspace is not stable under the matrix")
            rows.append(coeffs)
        return np.array(rows, dtype=np.int64).reshape(basis.shape[0], basis.shape[0])
