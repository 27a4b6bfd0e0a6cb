"""Finite-dimensional right modules over A and H.

Module elements are row vectors and X acts as ``m -> m @ rho(X)``. All
matrices are int64 arrays over the algebra's GaloisField.
"""

import itertools
import logging
import random
import threading
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from prophecke.field import GaloisField
from prophecke.hecke import HeckeAlgebra, HeckeElement
from prophecke.prop_weyl import (
    Character,
    LambdaElement,
    OmegaOrbit,
    ProPWeylElement,
    all_characters,
)
from prophecke.root_system import WeylElement

logger = logging.getLogger(__name__)


class ModuleValidationError(ValueError):
    """Raised when supplied matrices do not define a module: wrong shapes,
    entries outside the field, or violated A-product or Hecke relations."""

    pass


class CategoryError(ValueError):
    """Raised when an operation that needs a module in the category C
    (every z_lambda invertible) receives a module outside it."""

    pass


class SupportError(ValueError):
    """Raised when an operation needs a support certificate the module lacks
    or a support this implementation does not handle."""

    pass


class IntertwinerSearchError(ValueError):
    """Raised when a solution space is too large to enumerate and seeded
    sampling found no invertible element in it."""

    pass


class IsotypicError(ValueError):
    """Raised when the Z_kappa action cannot be split into eigenspaces."""

    pass


Matrix = np.ndarray

# exhaustive intertwiner search up to this many coefficient vectors
ISO_ENUM_MAX = 4096
ISO_SAMPLES = 256


# --------------------------------------------------------------------------- #
# Right A-modules                                                             #
# --------------------------------------------------------------------------- #


def chamber_seeds(algebra: HeckeAlgebra) -> List[LambdaElement]:
    """Seeds E(lambda) generating A: chamber monoid generators, +/- lineality, Z_kappa units."""
    rd, zk = algebra.rd, algebra.zk
    zero_t = zk.zero
    seen: Dict[LambdaElement, None] = {}
    for w in rd.weyl:
        for h in rd.dominant_generators():
            seen[LambdaElement(tuple(w.act(h)), zero_t)] = None
    for l in rd.lineality_basis():
        seen[LambdaElement(tuple(l), zero_t)] = None
        seen[LambdaElement(tuple(-x for x in l), zero_t)] = None
    zero_mu = tuple(0 for _ in range(rd.lattice_rank))
    for t in zk.generators():
        seen[LambdaElement(zero_mu, t)] = None
    return list(seen)


class FinAModule:
    """A right A-module given by matrices on the chamber seeds.

    ``action(lam)`` completes the seed data by writing nu(lam) in one chamber
    as a sum of that chamber's generators, so E(lam) is a product of seeds.
    """

    def __init__(
        self,
        algebra: HeckeAlgebra,
        dim: int,
        seeds: Dict[LambdaElement, Matrix],
        validate: bool = True,
        name: str = "",
    ):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.name = name
        self.seeds: Dict[LambdaElement, Matrix] = {}
        for lam in chamber_seeds(algebra):
            if lam not in seeds:
                raise ModuleValidationError(f"Missing matrix for seed {lam}")
            mat = np.asarray(seeds[lam], dtype=np.int64)
            if mat.shape != (dim, dim):
                raise ModuleValidationError(f"Seed {lam} has shape {mat.shape}, expected ({dim}, {dim})")
            self.seeds[lam] = self.field.matrix(mat) if dim else mat.reshape(0, 0)
        self._cache: Dict[LambdaElement, Matrix] = {}
        self._lock = threading.Lock()
        if validate:
            self.validate()

    @classmethod
    def from_function(
        cls, algebra: HeckeAlgebra, dim: int, fn: Callable[[LambdaElement], Matrix], **kwargs
    ) -> "FinAModule":
        return cls(algebra, dim, {lam: fn(lam) for lam in chamber_seeds(algebra)}, **kwargs)

    def __repr__(self) -> str:
        return f"FinAModule({self.name or 'unnamed'}, dim={self.dim})"

    def action(self, lam: LambdaElement) -> Matrix:
        """Matrix of E(lam)."""
        hit = self._cache.get(lam)
        if hit is not None:
            return hit
        f, rd, zk = self.field, self.algebra.rd, self.algebra.zk
        mat = f.eye(self.dim)
        w = min(rd.chamber_of(lam.mu), key=lambda x: x.index)
        parts, lin = rd.decompose_dominant(rd.inverse(w).act(lam.mu))
        zero_t = zk.zero
        for h in parts:
            mat = f.matmul(mat, self.seeds[LambdaElement(tuple(w.act(h)), zero_t)])
        for l, c in zip(rd.lineality_basis(), lin):
            vec = tuple(x if c > 0 else -x for x in l)
            step = self.seeds[LambdaElement(vec, zero_t)]
            for _ in range(abs(c)):
                mat = f.matmul(mat, step)
        zero_mu = tuple(0 for _ in range(rd.lattice_rank))
        for k, (tk, o) in enumerate(zip(lam.t, zk.orders)):
            if o == 1 or tk == 0:
                continue
            unit = tuple(1 if a == k else 0 for a in range(len(zk.orders)))
            mat = f.matmul(mat, f.mpow(self.seeds[LambdaElement(zero_mu, unit)], tk))
        with self._lock:
            self._cache.setdefault(lam, mat)
        return mat

    def a_action(self, x) -> Matrix:
        """Matrix of an AElement."""
        f = self.field
        out = f.zeros(self.dim, self.dim)
        for lam, c in x.terms.items():
            out = f.madd(out, f.scale(c, self.action(lam)))
        return out

    def validate(self) -> None:
        """Check the A-product rule on seed pairs and the Z_kappa and lineality relations.

        Raises:
            ModuleValidationError: naming the first failing pair.
        """
        f, rd, zk, alg = self.field, self.algebra.rd, self.algebra.zk, self.algebra
        lams = list(self.seeds)
        eye = f.eye(self.dim)
        zero = f.zeros(self.dim, self.dim)
        for i, l1 in enumerate(lams):
            for l2 in lams[i:]:
                p12 = f.matmul(self.seeds[l1], self.seeds[l2])
                p21 = f.matmul(self.seeds[l2], self.seeds[l1])
                if not np.array_equal(p12, p21):
                    raise ModuleValidationError(f"E({l1.mu},{l1.t}) and E({l2.mu},{l2.t}) do not commute")
                if rd.same_closed_chamber(l1.mu, l2.mu):
                    expected = self.action(alg.lam_mul(l1, l2))
                    if not np.array_equal(p12, expected):
                        raise ModuleValidationError(
                            f"E({l1.mu},{l1.t}) E({l2.mu},{l2.t}) differs from E of the product"
                        )
                elif not np.array_equal(p12, zero):
                    raise ModuleValidationError(
                        f"E({l1.mu},{l1.t}) E({l2.mu},{l2.t}) must vanish across chambers"
                    )
        zero_mu = tuple(0 for _ in range(rd.lattice_rank))
        for t in zk.generators():
            k = t.index(1)
            if not np.array_equal(f.mpow(self.seeds[LambdaElement(zero_mu, t)], zk.orders[k]), eye):
                raise ModuleValidationError(f"E(t) for t = {t} does not have order dividing {zk.orders[k]}")

    def is_invertible_on(self, lam: LambdaElement) -> bool:
        return self.field.is_invertible(self.action(lam))

    def is_zero_on(self, lam: LambdaElement) -> bool:
        return not self.action(lam).any()

    def support_of(self) -> Optional[WeylElement]:
        """w with E(lam) invertible for w^-1 nu(lam) dominant and zero otherwise, if unique."""
        rd = self.algebra.rd
        if self.dim == 0:
            return None
        found = []
        for w in rd.weyl:
            ok = True
            for lam in self.seeds:
                inside = rd.in_chamber(lam.mu, w)
                if inside and not self.is_invertible_on(lam):
                    ok = False
                elif not inside and not self.is_zero_on(lam):
                    ok = False
                if not ok:
                    break
            if ok:
                found.append(w)
        return found[0] if len(found) == 1 else None

    def require_support(self) -> WeylElement:
        w = self.support_of()
        if w is None:
            raise SupportError(f"{self!r} has no support certificate")
        return w

    def zkappa_matrix(self, t: Sequence[int]) -> Matrix:
        zero_mu = tuple(0 for _ in range(self.algebra.rd.lattice_rank))
        return self.action(LambdaElement(zero_mu, self.algebra.zk.reduce(t)))


def character_module(
    algebra: HeckeAlgebra,
    w: WeylElement,
    psi: Optional[Character] = None,
    a: Optional[Sequence[int]] = None,
    name: str = "",
) -> FinAModule:
    """chi(w, psi, a): E(mu, t) -> psi(t) prod a_k^mu_k on chamber w, 0 elsewhere."""
    f, rd, zk = algebra.field, algebra.rd, algebra.zk
    psi = psi or Character(tuple(1 for _ in zk.orders))
    a = tuple(a) if a is not None else tuple(1 for _ in range(rd.lattice_rank))
    if any(x == 0 for x in a):
        raise ModuleValidationError("Translation eigenvalues must be nonzero")

    def value(lam: LambdaElement) -> Matrix:
        if not rd.in_chamber(lam.mu, w):
            return f.zeros(1, 1)
        v = psi.value(f, lam.t)
        for ak, mk in zip(a, lam.mu):
            v = f.mul(v, f.pow(ak, mk))
        return np.array([[v]], dtype=np.int64)

    return FinAModule.from_function(algebra, 1, value, name=name or f"chi({w})")


def direct_sum_a(*mods: FinAModule) -> FinAModule:
    alg = mods[0].algebra
    dim = sum(m.dim for m in mods)
    return FinAModule.from_function(
        alg, dim, lambda lam: _block_diag([m.action(lam) for m in mods]), name="+".join(m.name for m in mods)
    )


def change_basis_a(m: FinAModule, p: Matrix) -> FinAModule:
    """The module with basis rows of p: rho'(X) = p rho(X) p^-1."""
    f = m.field
    p_inv = f.inverse(p)
    return FinAModule.from_function(
        m.algebra, m.dim, lambda lam: f.matmul(f.matmul(p, m.action(lam)), p_inv), name=m.name
    )


def twist(m: FinAModule, w: WeylElement) -> FinAModule:
    """n_w M: E(lam) acts as E(n_w^-1 lam n_w) on M; the support moves by w."""
    alg = m.algebra
    n_inv = alg.group.inverse(alg.group.canonical_lift(w))
    return FinAModule.from_function(
        alg, m.dim, lambda lam: m.action(alg.group.conjugate(n_inv, lam)), name=f"{w}.{m.name}"
    )


def dual_a(m: FinAModule) -> FinAModule:
    """(M*)^f: E(lam) acts by (-1)^l(lam) rho(lam^-1)^T."""
    f, alg = m.field, m.algebra
    return FinAModule.from_function(
        alg,
        m.dim,
        lambda lam: f.scale(f.sign(alg.lam_length(lam)), m.action(alg.lam_inverse(lam)).T.copy()),
        name=f"{m.name}*",
    )


def submodule_a(m: FinAModule, basis: Matrix) -> FinAModule:
    """The A-stable subspace spanned by the rows of ``basis``."""
    f = m.field
    return FinAModule.from_function(
        m.algebra, basis.shape[0], lambda lam: f.restrict(basis, m.action(lam)), name=f"{m.name}|sub"
    )


def _block_diag(mats: Sequence[Matrix]) -> Matrix:
    n = sum(x.shape[0] for x in mats)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for x in mats:
        d = x.shape[0]
        out[k : k + d, k : k + d] = x
        k += d
    return out


# --------------------------------------------------------------------------- #
# Right H-modules                                                             #
# --------------------------------------------------------------------------- #


class FinHModule:
    """A right H-module given by T_n for the affine generator lifts and a rule for length-zero T_u.

    Args:
        algebra: the Hecke algebra.
        dim: dimension.
        generators: affine generator label -> matrix of T_n.
        length_zero: maps a length-zero element u of W(1) to the matrix of T_u.
    """

    def __init__(
        self,
        algebra: HeckeAlgebra,
        dim: int,
        generators: Dict[str, Matrix],
        length_zero: Callable[[ProPWeylElement], Matrix],
        validate: bool = True,
        name: str = "",
    ):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.name = name
        self.generators: Dict[str, Matrix] = {}
        for gen in algebra.group.affine_generators:
            if gen.label not in generators:
                raise ModuleValidationError(f"Missing matrix for generator {gen.label}")
            mat = np.asarray(generators[gen.label], dtype=np.int64).reshape(dim, dim)
            self.generators[gen.label] = self.field.matrix(mat) if dim else mat
        self._length_zero = length_zero
        self._cache: Dict[ProPWeylElement, Matrix] = {}
        self._lock = threading.Lock()
        if validate:
            self.validate()

    def __repr__(self) -> str:
        return f"FinHModule({self.name or 'unnamed'}, dim={self.dim})"

    def t_action(self, g: ProPWeylElement) -> Matrix:
        """Matrix of T_g."""
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        f, grp = self.field, self.algebra.group
        if grp.length(g) == 0:
            mat = np.asarray(self._length_zero(g), dtype=np.int64).reshape(self.dim, self.dim)
        else:
            letters, u = grp.reduced_decomposition(g)
            mat = f.eye(self.dim)
            for gen in letters:
                mat = f.matmul(mat, self.generators[gen.label])
            mat = f.matmul(mat, self.t_action(u))
        with self._lock:
            self._cache.setdefault(g, mat)
        return mat

    def h_action(self, x: HeckeElement) -> Matrix:
        f = self.field
        out = f.zeros(self.dim, self.dim)
        for g, c in x.terms.items():
            out = f.madd(out, f.scale(c, self.t_action(g)))
        return out

    def t_star_action(self, g: ProPWeylElement) -> Matrix:
        return self.h_action(self.algebra.t_star(g))

    def e_action(self, lam: LambdaElement) -> Matrix:
        return self.h_action(self.algebra.e_of(lam))

    def generator_matrices(self) -> List[Tuple[HeckeElement, Matrix]]:
        alg = self.algebra
        return [(x, self.h_action(x)) for x in alg.generators()]

    def validate(self, samples: int = 40, seed: int = 0) -> None:
        """Quadratic relations exactly, braid and length-zero relations on sampled pairs.

        Raises:
            ModuleValidationError: naming the failing relation.
        """
        f, alg, grp = self.field, self.algebra, self.algebra.group
        for gen in grp.affine_generators:
            tn = self.generators[gen.label]
            lhs = f.matmul(tn, tn)
            rhs = f.matmul(self.h_action(alg.c_element(gen)), tn)
            if not np.array_equal(lhs, rhs):
                raise ModuleValidationError(f"T_{gen.label}^2 = c T_{gen.label} fails")
        elements = grp.enumerate_by_length(2, radius=1)
        zero_mu = [0] * alg.rd.lattice_rank
        elements += [grp.element(zero_mu, t) for t in alg.zk.generators()]
        rng = random.Random(seed)
        pairs = [(x, y) for x in elements for y in elements if grp.length(grp.multiply(x, y)) == grp.length(x) + grp.length(y)]
        rng.shuffle(pairs)
        for x, y in pairs[:samples]:
            lhs = f.matmul(self.t_action(x), self.t_action(y))
            if not np.array_equal(lhs, self.t_action(grp.multiply(x, y))):
                raise ModuleValidationError(
                    f"T_({grp.format(x)}) T_({grp.format(y)}) != T of the product on {self!r}"
                )

    def restrict_to_a(self) -> FinAModule:
        return FinAModule.from_function(self.algebra, self.dim, self.e_action, name=f"{self.name}|A")


def one_dim_h_module(
    algebra: HeckeAlgebra,
    eps: int,
    psi: Optional[Character] = None,
    a: Optional[Sequence[int]] = None,
    name: str = "",
) -> FinHModule:
    """1-dim H-module: T_n -> eps (0 or the field element -1) for every affine lift, T_u -> psi(t) prod a_k^mu_k.

    psi must be trivial on every beta^vee(k^x) and a trivial on every coroot
    for this to be a module; validation checks it.
    """
    f, rd, zk = algebra.field, algebra.rd, algebra.zk
    psi = psi or Character(tuple(1 for _ in zk.orders))
    a = tuple(a) if a is not None else tuple(1 for _ in range(rd.lattice_rank))
    eps = f.check(eps)

    def length_zero(u: ProPWeylElement) -> Matrix:
        v = psi.value(f, u.t)
        for ak, mk in zip(a, u.mu):
            v = f.mul(v, f.pow(ak, mk))
        return np.array([[v]], dtype=np.int64)

    gens = {g.label: np.array([[eps]], dtype=np.int64) for g in algebra.group.affine_generators}
    return FinHModule(algebra, 1, gens, length_zero, name=name or f"triv({eps})")


def direct_sum_h(*mods: FinHModule, validate: bool = True) -> FinHModule:
    alg = mods[0].algebra
    dim = sum(m.dim for m in mods)
    gens = {label: _block_diag([m.generators[label] for m in mods]) for label in mods[0].generators}
    return FinHModule(
        alg,
        dim,
        gens,
        lambda u: _block_diag([m.t_action(u) for m in mods]),
        validate=validate,
        name="+".join(m.name for m in mods),
    )


def change_basis_h(m: FinHModule, p: Matrix, validate: bool = True) -> FinHModule:
    f = m.field
    p_inv = f.inverse(p)

    def conj(x: Matrix) -> Matrix:
        return f.matmul(f.matmul(p, x), p_inv)

    return FinHModule(
        m.algebra,
        m.dim,
        {label: conj(x) for label, x in m.generators.items()},
        lambda u: conj(m.t_action(u)),
        validate=validate,
        name=m.name,
    )


def dual_h(m: FinHModule) -> FinHModule:
    """(M*)^f: rho*(X) = rho(f(X))^T."""
    alg = m.algebra
    gens = {
        g.label: m.h_action(alg.f_inv(alg.t(g.element))).T.copy() for g in alg.group.affine_generators
    }
    return FinHModule(
        alg, m.dim, gens, lambda u: m.t_action(alg.group.inverse(u)).T.copy(), name=f"{m.name}*"
    )


def dual(m):
    """Dual of an A- or H-module."""
    if isinstance(m, FinHModule):
        return dual_h(m)
    return dual_a(m)


# --------------------------------------------------------------------------- #
# Category C, support decomposition, isotypic parts                           #
# --------------------------------------------------------------------------- #


def z_matrix(m: FinHModule, lam: Optional[LambdaElement] = None) -> Matrix:
    alg = m.algebra
    lam = lam or alg.group.lambda_s_members(alg.rd.regular_dominant())
    return m.h_action(alg.z_of(lam))


def in_category_c(m: FinHModule) -> bool:
    """z_lambda0 invertible for the fixed regular dominant lambda0 in Lambda_S(1)."""
    return m.field.is_invertible(z_matrix(m))


def decompose_by_support(m: FinHModule) -> Dict[WeylElement, Tuple[Matrix, FinAModule]]:
    """M = sum_w M_w with M_w = M E(w lambda0) (basis rows, restricted A-module).

    Raises:
        CategoryError: if m is not in C or the pieces do not fill M.
    """
    if not in_category_c(m):
        raise CategoryError(f"{m!r} is not in C: z_lambda0 is not invertible")
    f, alg = m.field, m.algebra
    lam0 = alg.rd.regular_dominant()
    a_mod = m.restrict_to_a()
    out: Dict[WeylElement, Tuple[Matrix, FinAModule]] = {}
    total = 0
    for w in alg.rd.weyl:
        lam_w = alg.group.lambda_s_members(w.act(lam0))
        basis = f.row_space(m.e_action(lam_w))
        total += basis.shape[0]
        out[w] = (basis, submodule_a(a_mod, basis) if basis.shape[0] else None)
    if total != m.dim or f.rank(np.concatenate([b for b, _ in out.values()], axis=0)) != m.dim:
        raise CategoryError(f"Support pieces of {m!r} do not form a direct sum decomposition")
    logger.debug("prophecke: support decomposition dims %s", {str(w): b.shape[0] for w, (b, _) in out.items()})
    return out


def isotypic(m, characters: Optional[Iterable[Character]] = None) -> Dict[OmegaOrbit, Matrix]:
    """Z_kappa-isotypic pieces M_omega (as basis rows), one per omega-orbit.

    Raises:
        IsotypicError: if |Z_kappa| is not invertible or the pieces do not fill M.
    """
    alg = m.algebra
    f, zk = alg.field, alg.zk
    if zk.order % f.p == 0:
        raise IsotypicError(f"|Z_kappa| = {zk.order} is divisible by p = {f.p}")
    if isinstance(m, FinHModule):
        zero_mu = [0] * alg.rd.lattice_rank
        rho = lambda t: m.t_action(alg.group.element(zero_mu, t))  # noqa: E731
    else:
        rho = m.zkappa_matrix
    elements = zk.elements()
    mats = {t: rho(t) for t in elements}
    inv_order = f.inv(f.from_int(zk.order))
    pieces: Dict[OmegaOrbit, Matrix] = {}
    total = 0
    for psi in characters or all_characters(zk, f):
        e = f.zeros(m.dim, m.dim)
        for t in elements:
            e = f.madd(e, f.scale(f.inv(psi.value(f, t)), mats[t]))
        e = f.scale(inv_order, e)
        basis = f.row_space(e)
        if basis.shape[0]:
            pieces[OmegaOrbit.close(psi)] = basis
            total += basis.shape[0]
    if characters is None and total != m.dim:
        raise IsotypicError(f"Z_kappa eigenspaces of {m!r} have total dimension {total} != {m.dim}")
    return pieces


def hypothesis_trivial_on_lambda_prime(m, alpha: int) -> bool:
    """Z_kappa n Lambda'_alpha(1) acts trivially on m."""
    alg = m.algebra
    f = alg.field
    zero_mu = [0] * alg.rd.lattice_rank
    for t in alg.group.lambda_prime_alpha(alpha).zkappa_part:
        mat = m.t_action(alg.group.element(zero_mu, t)) if isinstance(m, FinHModule) else m.zkappa_matrix(t)
        if not np.array_equal(mat, f.eye(m.dim)):
            return False
    return True


# --------------------------------------------------------------------------- #
# Intertwiners                                                                #
# --------------------------------------------------------------------------- #


def intertwiner_space(field: GaloisField, pairs: Iterable[Tuple[Matrix, Matrix]], d1: int, d2: int) -> Matrix:
    """Rows spanning {P (d1 x d2) : A P = P B for all (A, B)}, each row a flattened P."""
    blocks = []
    eye1, eye2 = field.eye(d1), field.eye(d2)
    for a, b in pairs:
        blocks.append(field.msub(field.kron(a, eye2), field.kron(eye1, b.T.copy())))
    if not blocks:
        return field.eye(d1 * d2)
    return field.nullspace(np.concatenate(blocks, axis=0))


def find_invertible(field: GaloisField, space: Matrix, d: int, seed: int = 0, tries: int = ISO_SAMPLES) -> Optional[Matrix]:
    """The first invertible combination of the rows of space, as a d x d matrix.

    Coefficient vectors are visited in lexicographic order when there are at
    most ISO_ENUM_MAX of them, so None means no invertible element exists.
    Larger spaces are sampled with a seeded generator.

    Raises:
        IntertwinerSearchError: if sampling a large space finds nothing.
    """
    k = space.shape[0]
    if k == 0:
        return None
    if field.order ** k <= ISO_ENUM_MAX:
        for coeffs in itertools.product(range(field.order), repeat=k):
            if not any(coeffs):
                continue
            mat = field.matvec(np.array(coeffs, dtype=np.int64), space).reshape(d, d)
            if field.is_invertible(mat):
                return mat
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = np.array([rng.randrange(field.order) for _ in range(k)], dtype=np.int64)
        mat = field.matvec(coeffs, space).reshape(d, d)
        if field.is_invertible(mat):
            return mat
    raise IntertwinerSearchError(
        f"no invertible element in {tries} samples of a {k}-dimensional space over GF({field.order})"
    )


def h_pairs(m1: FinHModule, m2: FinHModule) -> List[Tuple[Matrix, Matrix]]:
    return [(m1.h_action(x), m2.h_action(x)) for x in m1.algebra.generators()]


def find_h_isomorphism(m1: FinHModule, m2: FinHModule, seed: int = 0) -> Optional[Matrix]:
    """P invertible with rho1(X) P = P rho2(X) for all generators, or None."""
    if m1.dim != m2.dim:
        return None
    space = intertwiner_space(m1.field, h_pairs(m1, m2), m1.dim, m2.dim)
    return find_invertible(m1.field, space, m1.dim, seed=seed)


def h_endomorphisms(m: FinHModule) -> Matrix:
    return intertwiner_space(m.field, h_pairs(m, m), m.dim, m.dim)


def a_hom_space(source: FinAModule, target: FinAModule, seeds: Optional[Iterable[LambdaElement]] = None) -> Matrix:
    """Linear maps source -> target commuting with E(lam) for the given seeds (default: all)."""
    lams = list(seeds) if seeds is not None else list(source.seeds)
    return intertwiner_space(
        source.field, [(source.action(l), target.action(l)) for l in lams], source.dim, target.dim
    )


def switch_check(source: FinAModule, target: FinAModule) -> Tuple[int, int]:
    """Dimensions of Hom_A(source, target) and Hom_{A_w}(source, target), w = supp target."""
    w = target.require_support()
    rd = source.algebra.rd
    chamber = [lam for lam in source.seeds if rd.in_chamber(lam.mu, w)]
    full = a_hom_space(source, target)
    partial = a_hom_space(source, target, chamber)
    return full.shape[0], partial.shape[0]
