"""The pro-p Weyl group W(1) in the split model.

Lambda(1) = X_*(S) x Z_kappa and W(1) is the extension of W_0 by Lambda(1)
given by symbols n_w (one per w in W_0) with

    n_w n_s = n_{ws}                  if l(ws) > l(w)
    n_w n_s = w s (n_s^2) n_{ws}      otherwise

so that (mu1, t1) n_u * (mu2, t2) n_v = (mu1 + u mu2, t1 + u t2 + kappa(u, v)) n_{uv}.
"""

import itertools
import logging
import random
import threading
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy

from prophecke.field import GaloisField
from prophecke.root_system import RootDatum, RootDatumError, Vector, WeylElement

logger = logging.getLogger(__name__)

BRUHAT_CACHE_MAX = 200_000


class ZKappaError(ValueError):
    """Raised when Z_kappa data are inconsistent: orders not prime to p,
    matrices that do not define a W_0-action, or malformed elements."""

    pass


class LiftTableError(ValueError):
    """Raised when the n_s^2 values do not produce a 2-cocycle, so the
    multiplication on W(1) would not be associative."""

    pass


# --------------------------------------------------------------------------- #
# Z_kappa                                                                     #
# --------------------------------------------------------------------------- #


_COXETER_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}

class ZKappaGroup:
    """A finite abelian group prod Z/orders[k] with a W_0-action.

    Args:
        rd: the ambient root datum.
        orders: cyclic orders (elementary divisors).
        reflection_matrices: integer matrix per simple reflection, acting on columns.
        coroot_generators: alpha_i^vee(g) for a generator g of k^x, per simple i.
        p: coefficient characteristic; every order must be prime to it.
    """

    def __init__(
        self,
        rd: RootDatum,
        orders: Sequence[int],
        reflection_matrices: Sequence[Sequence[Sequence[int]]],
        coroot_generators: Sequence[Sequence[int]],
        p: int,
    ):
        self.rd = rd
        self.p = p
        self.orders: Tuple[int, ...] = tuple(int(o) for o in orders)
        if any(o < 1 for o in self.orders):
            raise ZKappaError(f"Cyclic orders must be >= 1, got {self.orders}")
        for o in self.orders:
            if sympy.igcd(o, p) != 1:
                raise ZKappaError(f"Z_kappa order {o} is not prime to p = {p}")
        if len(reflection_matrices) != rd.rank_ss or len(coroot_generators) != rd.rank_ss:
            raise ZKappaError(f"Expected {rd.rank_ss} reflection matrices and coroot generators")
        n = len(self.orders)
        self._simple = []
        for i, mat in enumerate(reflection_matrices):
            m = tuple(tuple(int(x) for x in row) for row in mat)
            if len(m) != n or any(len(row) != n for row in m):
                raise ZKappaError(f"Reflection matrix {i} must be {n}x{n}")
            for a in range(n):
                for b in range(n):
                    if (m[a][b] * self.orders[b]) % self.orders[a] != 0:
                        raise ZKappaError(f"Reflection matrix {i} entry [{a}][{b}] is not well defined mod orders")
            self._simple.append(m)
        self.coroot_generators = tuple(self.reduce(c) for c in coroot_generators)
        self._validate_action()
        self._actions: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
        for w in rd.weyl:
            mat = _identity(n)
            for i in w.word:
                mat = _matmul(mat, self._simple[i])
            self._actions[w.index] = mat
        self._root_coroots = self._build_root_coroots()

    @classmethod
    def default(cls, rd: RootDatum, q: int, p: int) -> "ZKappaGroup":
        """(Z/(q-1))^n with W_0 acting through its matrices on X_*(S)."""
        n = rd.lattice_rank
        mats = [rd.simple_reflection(i).matrix for i in range(rd.rank_ss)]
        return cls(rd, [q - 1] * n, mats, list(rd.simple_coroots), p)

    def __repr__(self) -> str:
        return f"ZKappaGroup(orders={self.orders})"

    def _validate_action(self) -> None:
        n = len(self.orders)
        gens = [tuple(1 if a == b else 0 for a in range(n)) for b in range(n)]
        ident = _identity(n)
        for i, m in enumerate(self._simple):
            sq = _matmul(m, m)
            for g in gens:
                if self._apply(sq, g) != self.reduce(g):
                    raise ZKappaError(f"Reflection matrix {i} does not square to the identity")
            for j in range(i + 1, self.rd.rank_ss):
                c = self.rd.cartan[i][j] * self.rd.cartan[j][i]
                prod = _matmul(m, self._simple[j])
                power = ident
                for _ in range(_COXETER_ORDER[c]):
                    power = _matmul(power, prod)
                for g in gens:
                    if self._apply(power, g) != self.reduce(g):
                        raise ZKappaError(f"Reflection matrices {i}, {j} violate the braid relation")
        for i, c in enumerate(self.coroot_generators):
            if self._apply(self._simple[i], c) != self.neg(c):
                raise ZKappaError(f"Reflection {i} does not invert alpha_{i}^vee(g)")

    def _build_root_coroots(self) -> Dict[int, Tuple[int, ...]]:
        out: Dict[int, Tuple[int, ...]] = {}
        rd = self.rd
        for w in rd.weyl:
            for i in range(rd.rank_ss):
                k = w.root_perm[rd.simple_index[i]]
                if k not in out:
                    out[k] = self.act(w, self.coroot_generators[i])
        return out

    # ------------------------------------------------------------------ #
    # Group operations                                                   #
    # ------------------------------------------------------------------ #

    @property
    def zero(self) -> Tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    @property
    def order(self) -> int:
        total = 1
        for o in self.orders:
            total *= o
        return total

    def reduce(self, t: Sequence[int]) -> Tuple[int, ...]:
        if len(t) != len(self.orders):
            raise ZKappaError(f"Z_kappa element {tuple(t)} has {len(t)} entries, expected {len(self.orders)}")
        return tuple(int(x) % o for x, o in zip(t, self.orders))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def neg(self, a: Sequence[int]) -> Tuple[int, ...]:
        return tuple((-x) % o for x, o in zip(a, self.orders))

    def scale(self, m: int, a: Sequence[int]) -> Tuple[int, ...]:
        return tuple((m * x) % o for x, o in zip(a, self.orders))

    def elements(self) -> List[Tuple[int, ...]]:
        return list(itertools.product(*(range(o) for o in self.orders)))

    def generators(self) -> List[Tuple[int, ...]]:
        n = len(self.orders)
        return [tuple(1 if a == b else 0 for a in range(n)) for b in range(n) if self.orders[b] > 1]

    def _apply(self, mat, t: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce([sum(mat[a][b] * t[b] for b in range(len(t))) for a in range(len(mat))])

    def act(self, w: WeylElement, t: Sequence[int]) -> Tuple[int, ...]:
        return self._apply(self._actions[w.index], t)

    def root_coroot(self, k: int, m: int = 1) -> Tuple[int, ...]:
        """beta^vee(g^m) for the root with index k."""
        return self.scale(m, self._root_coroots[k])

    def coroot_image(self, k: int, q: int) -> FrozenSet[Tuple[int, ...]]:
        """The subgroup beta^vee(k^x) of Z_kappa."""
        return frozenset(self.root_coroot(k, m) for m in range(q - 1))

    def restrict(self, levi: RootDatum, J: Sequence[int]) -> "ZKappaGroup":
        """The same group with the action of W_{0,J} only, indexed by the Levi's simple roots."""
        js = sorted(J)
        return ZKappaGroup(
            levi,
            self.orders,
            [self._simple[j] for j in js],
            [self.coroot_generators[j] for j in js],
            self.p,
        )


# --------------------------------------------------------------------------- #
# Characters and omega-orbits                                                 #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Character:
    """A field-valued character of Z_kappa, stored by its values on the unit vectors."""

    values: Tuple[int, ...]

    def value(self, field: GaloisField, t: Sequence[int]) -> int:
        out = 1
        for v, e in zip(self.values, t):
            out = field.mul(out, field.pow(v, e))
        return out

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)


def trivial_character(zk: ZKappaGroup) -> Character:
    return Character(tuple(1 for _ in zk.orders))


def all_characters(zk: ZKappaGroup, field: GaloisField) -> List[Character]:
    """Every character of Z_kappa (field must contain the needed roots of unity)."""
    choices = []
    for o in zk.orders:
        zeta = field.root_of_unity(o)
        choices.append([field.pow(zeta, j) for j in range(o)])
    return [Character(tuple(v)) for v in itertools.product(*choices)]


def character_from_exponents(zk: ZKappaGroup, field: GaloisField, exponents: Sequence[int]) -> Character:
    """psi(e_k) = zeta_{o_k}^{exponents[k]}."""
    if len(exponents) != len(zk.orders):
        raise ZKappaError(f"Character needs {len(zk.orders)} exponents, got {len(exponents)}")
    return Character(
        tuple(field.pow(field.root_of_unity(o), e) for o, e in zip(zk.orders, exponents))
    )


def act_on_character(zk: ZKappaGroup, field: GaloisField, w: WeylElement, psi: Character) -> Character:
    """(w psi)(t) = psi(w^-1 t)."""
    w_inv = zk.rd.inverse(w)
    return Character(tuple(psi.value(field, zk.act(w_inv, g)) for g in _unit_vectors(len(zk.orders))))


@dataclass(frozen=True)
class OmegaOrbit:
    """An orbit omega of characters under the conjugation action of Lambda(1).

    Lambda(1) is abelian in the split model, so orbits are singletons; closing
    is still done through ``close`` so callers never assume it.
    """

    characters: FrozenSet[Character]

    @classmethod
    def close(cls, psi: Character) -> "OmegaOrbit":
        # conjugation by Lambda(1) fixes Z_kappa pointwise
        return cls(frozenset({psi}))

    @property
    def representative(self) -> Character:
        return min(self.characters, key=lambda c: c.values)


# --------------------------------------------------------------------------- #
# Lambda(1) and W(1) elements                                                 #
# --------------------------------------------------------------------------- #


@dataclass(frozen=True, order=True)
class LambdaElement:
    mu: Vector
    t: Tuple[int, ...]


@dataclass(frozen=True)
class ProPWeylElement:
    """(mu, t) n_w in W(1)."""

    mu: Vector
    t: Tuple[int, ...]
    w: WeylElement

    @property
    def lam(self) -> LambdaElement:
        return LambdaElement(self.mu, self.t)

    @property
    def image(self) -> Tuple[Vector, Tuple[int, ...]]:
        """Image in W = W_0 x| X_*: (mu, word)."""
        return self.mu, self.w.word

    def sort_key(self) -> tuple:
        return (self.w.word, self.mu, self.t)

    def is_lambda(self) -> bool:
        return self.w.is_identity()


@dataclass(frozen=True)
class AffineGenerator:
    """A lift in W(1) of a simple affine reflection.

    ``outward_root`` is the root pointing out of the base alcove across the
    reflecting wall; ``coroot_root`` indexes the root beta with c = sum over
    beta^vee(k^x).
    """

    label: str
    element: ProPWeylElement
    outward_root: int
    coroot_root: int


@dataclass(frozen=True)
class LambdaPrimeAlpha:
    """Generators of Lambda'_alpha(1) in the split model."""

    alpha: int
    translation: LambdaElement
    zkappa_part: FrozenSet[Tuple[int, ...]]


class ProPWeylGroup:
    """W(1) for a root datum, a q and a Z_kappa.

    Args:
        rd: root datum.
        q: residue field size (prime power).
        zk: Z_kappa with its W_0-action.
        ns_squares: optional override of n_{s_i}^2 per simple index.
        cocycle_samples: sample size for the cocycle check above rank 2.
    """

    def __init__(
        self,
        rd: RootDatum,
        q: int,
        zk: ZKappaGroup,
        ns_squares: Optional[Dict[int, Sequence[int]]] = None,
        cocycle_samples: int = 2000,
        seed: int = 0,
    ):
        self.rd = rd
        self.q = q
        self.zk = zk
        self.ns_squares: Dict[int, Tuple[int, ...]] = {}
        for i in range(rd.rank_ss):
            if ns_squares and i in ns_squares:
                self.ns_squares[i] = zk.reduce(ns_squares[i])
            elif q % 2 == 1:
                self.ns_squares[i] = zk.scale((q - 1) // 2, zk.coroot_generators[i])
            else:
                self.ns_squares[i] = zk.zero
            s = rd.simple_reflection(i)
            if zk.act(s, self.ns_squares[i]) != self.ns_squares[i]:
                raise LiftTableError(f"n_s^2 for s{i + 1} is not fixed by s{i + 1}")
        self._kappa: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        self._bruhat_cache: Dict[Tuple[Tuple[Vector, int], Tuple[Vector, int]], bool] = {}
        self._lock = threading.Lock()
        n = rd.n_positive
        self._inverts: Dict[int, Tuple[bool, ...]] = {
            w.index: tuple(rd.inverse(w).root_perm[k] >= n for k in range(n)) for w in rd.weyl
        }
        self.check_cocycle(cocycle_samples, seed)
        self.affine_generators: Tuple[AffineGenerator, ...] = self._build_affine_generators()
        logger.debug("prophecke: W(1) over %s with %d affine generators", rd.name, len(self.affine_generators))

    # ------------------------------------------------------------------ #
    # Cocycle                                                            #
    # ------------------------------------------------------------------ #

    def kappa(self, u: WeylElement, v: WeylElement) -> Tuple[int, ...]:
        """kappa(u, v) with n_u n_v = kappa(u, v) n_{uv}."""
        key = (u.index, v.index)
        hit = self._kappa.get(key)
        if hit is not None:
            return hit
        rd, zk = self.rd, self.zk
        acc = zk.zero
        w = u
        for i in v.word:
            s = rd.simple_reflection(i)
            ws = rd.mul(w, s)
            if ws.length < w.length:
                acc = zk.add(acc, zk.act(ws, self.ns_squares[i]))
            w = ws
        with self._lock:
            self._kappa.setdefault(key, acc)
        return acc

    def check_cocycle(self, samples: int = 2000, seed: int = 0) -> None:
        """kappa(u,v) + kappa(uv,x) = u kappa(v,x) + kappa(u,vx).

        Exhaustive when rank_ss <= 2, otherwise on a seeded sample.

        Raises:
            LiftTableError: with the failing triple.
        """
        rd, zk = self.rd, self.zk
        if rd.rank_ss <= 2:
            triples = itertools.product(rd.weyl, repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.choice(rd.weyl), rng.choice(rd.weyl), rng.choice(rd.weyl)) for _ in range(samples))
        for u, v, x in triples:
            uv, vx = rd.mul(u, v), rd.mul(v, x)
            lhs = zk.add(self.kappa(u, v), self.kappa(uv, x))
            rhs = zk.add(zk.act(u, self.kappa(v, x)), self.kappa(u, vx))
            if lhs != rhs:
                raise LiftTableError(f"Cocycle identity fails at ({u}, {v}, {x})")

    # ------------------------------------------------------------------ #
    # Group law                                                          #
    # ------------------------------------------------------------------ #

    def element(self, mu: Sequence[int], t: Optional[Sequence[int]] = None, w: Optional[WeylElement] = None) -> ProPWeylElement:
        mu = tuple(int(x) for x in mu)
        if len(mu) != self.rd.lattice_rank:
            raise RootDatumError(f"Translation {mu} has length {len(mu)}, expected {self.rd.lattice_rank}")
        return ProPWeylElement(mu, self.zk.reduce(t) if t is not None else self.zk.zero, w or self.rd.identity)

    @property
    def identity(self) -> ProPWeylElement:
        return self.element(tuple(0 for _ in range(self.rd.lattice_rank)))

    def from_lambda(self, lam: LambdaElement) -> ProPWeylElement:
        return ProPWeylElement(lam.mu, lam.t, self.rd.identity)

    def multiply(self, a: ProPWeylElement, b: ProPWeylElement) -> ProPWeylElement:
        u, v = a.w, b.w
        mu = tuple(x + y for x, y in zip(a.mu, u.act(b.mu)))
        zk = self.zk
        t = zk.add(zk.add(a.t, zk.act(u, b.t)), self.kappa(u, v))
        return ProPWeylElement(mu, t, self.rd.mul(u, v))

    def product(self, *factors: ProPWeylElement) -> ProPWeylElement:
        out = self.identity
        for f in factors:
            out = self.multiply(out, f)
        return out

    def inverse(self, a: ProPWeylElement) -> ProPWeylElement:
        rd, zk = self.rd, self.zk
        u_inv = rd.inverse(a.w)
        mu = tuple(-x for x in u_inv.act(a.mu))
        t = zk.neg(zk.act(u_inv, zk.add(a.t, self.kappa(a.w, u_inv))))
        return ProPWeylElement(mu, t, u_inv)

    def canonical_lift(self, w: WeylElement) -> ProPWeylElement:
        """n_w."""
        return ProPWeylElement(self.identity.mu, self.zk.zero, w)

    def lift_along_word(self, word: Iterable[int]) -> ProPWeylElement:
        """n_{s_{i1}} ... n_{s_{ik}}."""
        out = self.identity
        for i in word:
            out = self.multiply(out, self.canonical_lift(self.rd.simple_reflection(i)))
        return out

    def conjugate(self, g: ProPWeylElement, lam: LambdaElement) -> LambdaElement:
        """g lam g^-1; Lambda(1) is abelian so only the W_0-part acts."""
        return LambdaElement(g.w.act(lam.mu), self.zk.act(g.w, lam.t))

    def orbit(self, lam: LambdaElement) -> FrozenSet[LambdaElement]:
        """The W(1)-conjugacy orbit of lam."""
        return frozenset(self.conjugate(self.canonical_lift(w), lam) for w in self.rd.weyl)

    def lambda_s_members(self, xi: Sequence[int]) -> LambdaElement:
        """The Lambda_S(1) element with nu = xi."""
        xi = tuple(int(x) for x in xi)
        if len(xi) != self.rd.lattice_rank:
            raise RootDatumError(f"{xi} is not in X_*(S)")
        return LambdaElement(xi, self.zk.zero)

    def in_lambda_s(self, lam: LambdaElement) -> bool:
        return lam.t == self.zk.zero

    def lambda_prime_alpha(self, i: int) -> LambdaPrimeAlpha:
        """Generators of Lambda'_alpha(1) for the simple root alpha_i."""
        if not 0 <= i < self.rd.rank_ss:
            raise RootDatumError(f"Simple root index {i} out of range")
        k = self.rd.simple_index[i]
        return LambdaPrimeAlpha(
            alpha=i,
            translation=LambdaElement(self.rd.coroots[k], self.zk.zero),
            zkappa_part=self.zk.coroot_image(k, self.q),
        )

    # ------------------------------------------------------------------ #
    # Length and affine structure                                        #
    # ------------------------------------------------------------------ #

    def length(self, g: ProPWeylElement) -> int:
        """l(mu, w) = sum over alpha > 0 of |<mu, alpha> - [w^-1 alpha < 0]|."""
        inv = self._inverts[g.w.index]
        return sum(abs(self.rd.pairing(g.mu, k) - (1 if inv[k] else 0)) for k in range(self.rd.n_positive))

    def _build_affine_generators(self) -> Tuple[AffineGenerator, ...]:
        rd = self.rd
        gens = []
        for i in range(rd.rank_ss):
            k = rd.simple_index[i]
            gens.append(
                AffineGenerator(
                    label=f"s{i + 1}",
                    element=self.canonical_lift(rd.simple_reflection(i)),
                    outward_root=rd.negate_root(k),
                    coroot_root=k,
                )
            )
        for c, theta in enumerate(rd.highest_roots):
            w, i = next(
                (w, i) for w in rd.weyl for i in range(rd.rank_ss) if w.root_perm[rd.simple_index[i]] == theta
            )
            n_w = self.canonical_lift(w)
            n_s = self.canonical_lift(rd.simple_reflection(i))
            conj = self.product(n_w, n_s, self.inverse(n_w))
            el = self.multiply(self.element(rd.coroots[theta]), conj)
            gens.append(
                AffineGenerator(
                    label="s0" if c == 0 else f"s0_{c + 1}",
                    element=el,
                    outward_root=theta,
                    coroot_root=theta,
                )
            )
        for g in gens:
            if self.length(g.element) != 1:
                raise RootDatumError(f"Affine generator {g.label} has length {self.length(g.element)}")
        return tuple(gens)

    def c_multiset(self, gen: AffineGenerator) -> Dict[Tuple[int, ...], int]:
        """Multiplicities of beta^vee(g^m), m = 0 .. q-2 (the support of c_s)."""
        counts: Dict[Tuple[int, ...], int] = {}
        for m in range(self.q - 1):
            t = self.zk.root_coroot(gen.coroot_root, m)
            counts[t] = counts.get(t, 0) + 1
        return counts

    def reduced_decomposition(self, g: ProPWeylElement) -> Tuple[List[AffineGenerator], ProPWeylElement]:
        """g = n1 ... nk u with affine generator lifts n_j and l(u) = 0."""
        letters: List[AffineGenerator] = []
        x = g
        ell = self.length(x)
        while ell > 0:
            for gen in self.affine_generators:
                y = self.multiply(self.inverse(gen.element), x)
                ly = self.length(y)
                if ly < ell:
                    letters.append(gen)
                    x, ell = y, ly
                    break
            else:
                raise RootDatumError(f"No left descent for an element of length {ell}")
        return letters, x

    def left_descent(self, g: ProPWeylElement) -> Optional[AffineGenerator]:
        ell = self.length(g)
        for gen in self.affine_generators:
            if self.length(self.multiply(gen.element, g)) < ell:
                return gen
        return None

    def bruhat_leq(self, a: ProPWeylElement, b: ProPWeylElement) -> bool:
        """Extended Bruhat order on W(1): equal, or images strictly comparable."""
        if a == b:
            return True
        if a.mu == b.mu and a.w == b.w:
            return False
        return self._bruhat_images((a.mu, a.w.index), (b.mu, b.w.index))

    def bruhat_lt(self, a: ProPWeylElement, b: ProPWeylElement) -> bool:
        return a != b and self.bruhat_leq(a, b)

    def _bruhat_images(self, x: Tuple[Vector, int], y: Tuple[Vector, int]) -> bool:
        hit = self._bruhat_cache.get((x, y))
        if hit is None:
            hit = self._bruhat_step(x, y)
            with self._lock:
                if len(self._bruhat_cache) < BRUHAT_CACHE_MAX:
                    self._bruhat_cache[(x, y)] = hit
        return hit

    def _bruhat_step(self, x: Tuple[Vector, int], y: Tuple[Vector, int]) -> bool:
        rd = self.rd
        gx = ProPWeylElement(x[0], self.zk.zero, rd.weyl[x[1]])
        gy = ProPWeylElement(y[0], self.zk.zero, rd.weyl[y[1]])
        ly = self.length(gy)
        if ly == 0:
            return x == y
        if self.length(gx) > ly:
            return False
        s = self.left_descent(gy)
        sy = self.multiply(s.element, gy)
        sx = self.multiply(s.element, gx)
        if self.length(sx) < self.length(gx):
            return self._bruhat_images((sx.mu, sx.w.index), (sy.mu, sy.w.index))
        return self._bruhat_images(x, (sy.mu, sy.w.index))

    # ------------------------------------------------------------------ #
    # Enumeration                                                        #
    # ------------------------------------------------------------------ #

    def length_zero_elements(self, radius: int) -> List[ProPWeylElement]:
        """Length-zero W-images (t = 0) with translation in the box."""
        out = []
        for mu in self.rd.box_points(radius):
            for w in self.rd.weyl:
                g = ProPWeylElement(tuple(mu), self.zk.zero, w)
                if self.length(g) == 0:
                    out.append(g)
        return out

    def omega_generators(self, radius: Optional[int] = None) -> List[ProPWeylElement]:
        """Length-zero lifts of the lattice basis vectors modulo the coroot lattice."""
        rd = self.rd
        radius = radius or max(2, rd.default_box_radius)
        candidates = self.length_zero_elements(radius)
        coroot_mat = sympy.Matrix([list(c) for c in rd.simple_coroots]).T if rd.rank_ss else None
        out: List[ProPWeylElement] = []
        for a in range(rd.lattice_rank):
            e = tuple(1 if b == a else 0 for b in range(rd.lattice_rank))
            match = None
            for g in sorted(candidates, key=lambda g: (rd.nu_height(g.mu), g.sort_key())):
                diff = [x - y for x, y in zip(g.mu, e)]
                if _in_integer_span(coroot_mat, diff):
                    match = g
                    break
            if match is None:
                raise RootDatumError(f"No length-zero element for lattice class of {e} in the box")
            if match != self.identity and match not in out:
                out.append(match)
        return out

    def enumerate_by_length(self, max_length: int, radius: int = 2, with_zkappa: bool = False) -> List[ProPWeylElement]:
        """Elements of length <= max_length reachable from length-zero elements in a box."""
        level = {g for g in self.length_zero_elements(radius)}
        seen = set(level)
        for ell in range(max_length):
            nxt = set()
            for x in level:
                for gen in self.affine_generators:
                    y = self.multiply(x, gen.element)
                    y = ProPWeylElement(y.mu, self.zk.zero, y.w)
                    if y not in seen and self.length(y) == ell + 1:
                        nxt.add(y)
            seen |= nxt
            level = nxt
        out = sorted(seen, key=lambda g: (self.length(g), g.sort_key()))
        if with_zkappa:
            out = [ProPWeylElement(g.mu, t, g.w) for g in out for t in self.zk.elements()]
        return out

    # ------------------------------------------------------------------ #
    # Printing                                                           #
    # ------------------------------------------------------------------ #

    def format(self, g: ProPWeylElement) -> str:
        parts = []
        if any(g.mu):
            parts.append("u(" + ",".join(str(x) for x in g.mu) + ")")
        if any(g.t):
            parts.append("t(" + ",".join(str(x) for x in g.t) + ")")
        parts.extend(f"s{i + 1}" for i in g.w.word)
        return "*".join(parts) if parts else "1"


def _identity(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))


def _matmul(a, b) -> Tuple[Tuple[int, ...], ...]:
    n = len(b)
    cols = len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(cols)) for i in range(len(a)))


def _unit_vectors(n: int) -> List[Tuple[int, ...]]:
    return [tuple(1 if a == b else 0 for a in range(n)) for b in range(n)]


def _in_integer_span(mat: Optional["sympy.Matrix"], v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if mat is None:
        return False
    try:
        sol, params = mat.gauss_jordan_solve(sympy.Matrix(list(v)))
    except ValueError:
        return False
    return params.shape[0] == 0 and all(x.is_integer for x in sol)
