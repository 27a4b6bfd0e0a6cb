"""The pro-p Iwahori-Hecke algebra H at q = 0.

Elements are stored in Iwahori-Matsumoto coordinates {T_g : g in W(1)} over a
GaloisField. Multiplication peels a reduced decomposition g = n1 ... nk u of
the right factor and applies

    T_x T_n = T_{xn}                         if l(xn) = l(x) + 1
    T_x T_n = sum_z c_n(z) T_{x n^-1 z n}    otherwise

which is T_n^2 = c_n T_n with the q-term gone.
"""

import itertools
import logging
import threading
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from prophecke.field import GaloisField, split_prime_power
from prophecke.prop_weyl import (
    AffineGenerator,
    LambdaElement,
    ProPWeylElement,
    ProPWeylGroup,
)
from prophecke.root_system import WeylElement

logger = logging.getLogger(__name__)


class HeckeError(ValueError):
    """Raised for invalid Hecke algebra input, such as mixing elements of
    different algebras or asking for z_lambda outside Lambda_S(1)."""

    pass


class ACoordinatesError(HeckeError):
    """Raised when an element cannot be written as sum_w a_w T_{n_w} over the
    searched window of E-basis elements."""

    pass


Terms = Dict[ProPWeylElement, int]


class HeckeElement:
    """A finitely supported map W(1) -> F in the T basis."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Optional[Mapping[ProPWeylElement, int]] = None):
        self.algebra = algebra
        self.terms: Terms = {g: int(c) for g, c in (terms or {}).items() if c}

    def _check(self, other: "HeckeElement") -> None:
        if not isinstance(other, HeckeElement) or other.algebra is not self.algebra:
            raise HeckeError("Cannot combine elements of different Hecke algebras")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return HeckeElement(self.algebra, _add_terms(self.algebra.field, self.terms, other.terms))

    def __neg__(self) -> "HeckeElement":
        f = self.algebra.field
        return HeckeElement(self.algebra, {g: f.neg(c) for g, c in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.mul_t(self, other)
        return self.scale(int(other))

    def __rmul__(self, other):
        return self.scale(int(other))

    def scale(self, c: int) -> "HeckeElement":
        f = self.algebra.field
        return HeckeElement(self.algebra, {g: f.mul(c, v) for g, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and other.algebra is self.algebra and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, g: ProPWeylElement) -> int:
        return self.terms.get(g, 0)

    def support(self) -> List[ProPWeylElement]:
        return sorted(self.terms, key=self.algebra.sort_key)

    def max_length(self) -> int:
        return max((self.algebra.group.length(g) for g in self.terms), default=-1)

    def __repr__(self) -> str:
        return f"HeckeElement({self.algebra.format(self)})"


class AElement:
    """A finitely supported map Lambda(1) -> F in the E basis of the subalgebra A."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Optional[Mapping[LambdaElement, int]] = None):
        self.algebra = algebra
        self.terms: Dict[LambdaElement, int] = {lam: int(c) for lam, c in (terms or {}).items() if c}

    def __add__(self, other: "AElement") -> "AElement":
        return AElement(self.algebra, _add_terms(self.algebra.field, self.terms, other.terms))

    def __neg__(self) -> "AElement":
        f = self.algebra.field
        return AElement(self.algebra, {k: f.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other: "AElement") -> "AElement":
        return self + (-other)

    def __mul__(self, other: "AElement") -> "AElement":
        return self.algebra.a_mul(self, other)

    def scale(self, c: int) -> "AElement":
        f = self.algebra.field
        return AElement(self.algebra, {k: f.mul(c, v) for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, AElement) and other.algebra is self.algebra and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"AElement({sorted(self.terms.items())})"


def _add_terms(field: GaloisField, a: Mapping, b: Mapping) -> Dict:
    out = dict(a)
    for k, c in b.items():
        v = field.add(out.get(k, 0), c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


class HeckeAlgebra:
    """H over ``field`` for the W(1) of ``group``.

    Args:
        group: the pro-p Weyl group.
        field: coefficient field; must contain the (q-1)-th roots of unity.
        cs_override: optional c_s per affine generator label, as {Z_kappa element: coefficient}.
    """

    def __init__(
        self,
        group: ProPWeylGroup,
        field: GaloisField,
        cs_override: Optional[Mapping[str, Mapping[Tuple[int, ...], int]]] = None,
    ):
        self.group = group
        self.rd = group.rd
        self.zk = group.zk
        self.field = field
        if (field.order - 1) % (group.q - 1) != 0:
            raise HeckeError(f"GF({field.order}) lacks the {group.q - 1}-th roots of unity")
        if field.p != _characteristic(group.q):
            raise HeckeError(f"Field characteristic {field.p} differs from that of q = {group.q}")
        self.c: Dict[str, Dict[ProPWeylElement, int]] = {}
        overrides = dict(cs_override or {})
        for gen in group.affine_generators:
            if gen.label in overrides:
                raw = {self.zk.reduce(t): field.check(c) for t, c in overrides.pop(gen.label).items()}
            else:
                raw = {t: field.from_int(m) for t, m in group.c_multiset(gen).items()}
            zero_mu = [0] * self.rd.lattice_rank
            self.c[gen.label] = {group.element(zero_mu, t): v for t, v in raw.items() if v}
        if overrides:
            raise HeckeError(f"c_s override for unknown generators {sorted(overrides)}")
        self._lock = threading.Lock()
        self._mul_cache: Dict[Tuple[ProPWeylElement, ProPWeylElement], Terms] = {}
        self._star_cache: Dict[ProPWeylElement, Terms] = {}
        self._e_cache: Dict[ProPWeylElement, Terms] = {}

    def __repr__(self) -> str:
        return f"HeckeAlgebra({self.rd.name}, q={self.group.q}, GF({self.field.order}))"

    # ------------------------------------------------------------------ #
    # Basis elements                                                     #
    # ------------------------------------------------------------------ #

    def sort_key(self, g: ProPWeylElement) -> tuple:
        return (self.group.length(g), g.w.word, g.mu, g.t)

    def zero(self) -> HeckeElement:
        return HeckeElement(self)

    def one(self) -> HeckeElement:
        return self.t(self.group.identity)

    def t(self, g: ProPWeylElement) -> HeckeElement:
        return HeckeElement(self, {g: 1})

    def scalar(self, c: int) -> HeckeElement:
        return self.one().scale(self.field.check(c))

    def c_element(self, gen: AffineGenerator) -> HeckeElement:
        return HeckeElement(self, self.c[gen.label])

    # ------------------------------------------------------------------ #
    # Multiplication                                                     #
    # ------------------------------------------------------------------ #

    def _right_mul_gen(self, terms: Terms, gen: AffineGenerator, star: bool = False) -> Terms:
        """terms * T_n (or T*-coordinates times T*_n when star is set)."""
        grp, f = self.group, self.field
        n = gen.element
        n_inv = grp.inverse(n)
        out: Terms = {}
        for x, cx in terms.items():
            xn = grp.multiply(x, n)
            if grp.length(xn) > grp.length(x):
                out[xn] = f.add(out.get(xn, 0), cx)
                continue
            base = grp.multiply(x, n_inv)
            for z, cz in self.c[gen.label].items():
                y = grp.product(base, z, n)
                coeff = f.mul(cx, cz)
                if star:
                    coeff = f.neg(coeff)
                out[y] = f.add(out.get(y, 0), coeff)
        return {k: v for k, v in out.items() if v}

    def _right_mul_length_zero(self, terms: Terms, u: ProPWeylElement) -> Terms:
        grp = self.group
        return {grp.multiply(x, u): c for x, c in terms.items()}

    def _mul_basis(self, x: ProPWeylElement, y: ProPWeylElement, star: bool = False) -> Terms:
        key = (x, y, star)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        letters, u = self.group.reduced_decomposition(y)
        terms: Terms = {x: 1}
        for gen in letters:
            terms = self._right_mul_gen(terms, gen, star=star)
        terms = self._right_mul_length_zero(terms, u)
        with self._lock:
            self._mul_cache.setdefault(key, terms)
        return terms

    def _mul_terms(self, a: Terms, b: Terms, star: bool = False) -> Terms:
        f = self.field
        out: Terms = {}
        for x, cx in a.items():
            for y, cy in b.items():
                c = f.mul(cx, cy)
                for g, cg in self._mul_basis(x, y, star).items():
                    out[g] = f.add(out.get(g, 0), f.mul(c, cg))
        return {k: v for k, v in out.items() if v}

    def mul_t(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """Product in H."""
        a._check(b)
        if a.algebra is not self:
            raise HeckeError("Element belongs to a different Hecke algebra")
        return HeckeElement(self, self._mul_terms(a.terms, b.terms))

    def mul_star(self, a: Mapping[ProPWeylElement, int], b: Mapping[ProPWeylElement, int]) -> Terms:
        """Product of two elements given in T* coordinates, in T* coordinates."""
        return self._mul_terms(dict(a), dict(b), star=True)

    def product(self, *factors: HeckeElement) -> HeckeElement:
        out = self.one()
        for x in factors:
            out = self.mul_t(out, x)
        return out

    def commutator(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        return self.mul_t(a, b) - self.mul_t(b, a)

    def commutes(self, a: HeckeElement, b: HeckeElement) -> bool:
        return self.commutator(a, b).is_zero()

    # ------------------------------------------------------------------ #
    # T*, E and the subalgebra A                                         #
    # ------------------------------------------------------------------ #

    def t_star_generator(self, gen: AffineGenerator) -> HeckeElement:
        """T*_n = T_n - c_n."""
        return self.t(gen.element) - self.c_element(gen)

    def t_star(self, g: ProPWeylElement) -> HeckeElement:
        """T*_g as a T-basis expansion."""
        hit = self._star_cache.get(g)
        if hit is None:
            letters, u = self.group.reduced_decomposition(g)
            x = self.product(*(self.t_star_generator(gen) for gen in letters), self.t(u))
            hit = x.terms
            with self._lock:
                self._star_cache.setdefault(g, hit)
        return HeckeElement(self, hit)

    def star_coordinates(self, x: HeckeElement) -> Terms:
        """Coordinates of x in the T* basis (peeling top-length terms)."""
        rest = x
        out: Terms = {}
        f = self.field
        while not rest.is_zero():
            g = max(rest.terms, key=self.sort_key)
            c = rest.terms[g]
            out[g] = f.add(out.get(g, 0), c)
            rest = rest - self.t_star(g).scale(c)
        return {k: v for k, v in out.items() if v}

    def from_star_coordinates(self, coords: Mapping[ProPWeylElement, int]) -> HeckeElement:
        out = self.zero()
        for g, c in coords.items():
            out = out + self.t_star(g).scale(c)
        return out

    def e_of_element(self, g: ProPWeylElement) -> HeckeElement:
        """E(g) by the alcove walk along a reduced decomposition of g.

        A letter whose outward root, moved by the finite part of the prefix,
        is negative contributes T_n, otherwise T*_n.
        """
        hit = self._e_cache.get(g)
        if hit is None:
            rd = self.rd
            letters, u = self.group.reduced_decomposition(g)
            prefix = rd.identity
            factors = []
            for gen in letters:
                gamma = prefix.root_perm[gen.outward_root]
                factors.append(self.t(gen.element) if not rd.is_positive_root(gamma) else self.t_star_generator(gen))
                prefix = rd.mul(prefix, gen.element.w)
            hit = self.product(*factors, self.t(u)).terms
            with self._lock:
                self._e_cache.setdefault(g, hit)
        return HeckeElement(self, hit)

    def e_of(self, lam: LambdaElement) -> HeckeElement:
        return self.e_of_element(self.group.from_lambda(lam))

    def splittings(self, lam: LambdaElement, radius: Optional[int] = None) -> List[Tuple[LambdaElement, LambdaElement]]:
        """All (lam1, lam2) = (anti-dominant, dominant) with lam = lam1 lam2 and lengths adding."""
        rd, grp = self.rd, self.group
        radius = radius if radius is not None else max(rd.nu_height(lam.mu), 1)
        total = grp.length(grp.from_lambda(lam))
        out = []
        for mu2 in rd.box_points(radius):
            mu1 = tuple(a - b for a, b in zip(lam.mu, mu2))
            if not (rd.is_dominant(mu2) and rd.is_antidominant(mu1)):
                continue
            l1 = LambdaElement(mu1, lam.t)
            l2 = LambdaElement(tuple(mu2), self.zk.zero)
            if grp.length(grp.from_lambda(l1)) + grp.length(grp.from_lambda(l2)) == total:
                out.append((l1, l2))
        return out

    def e_of_split(self, lam1: LambdaElement, lam2: LambdaElement) -> HeckeElement:
        """T_{lam1} T*_{lam2}."""
        grp = self.group
        return self.mul_t(self.t(grp.from_lambda(lam1)), self.t_star(grp.from_lambda(lam2)))

    def lam_mul(self, a: LambdaElement, b: LambdaElement) -> LambdaElement:
        return LambdaElement(tuple(x + y for x, y in zip(a.mu, b.mu)), self.zk.add(a.t, b.t))

    def lam_inverse(self, a: LambdaElement) -> LambdaElement:
        return LambdaElement(tuple(-x for x in a.mu), self.zk.neg(a.t))

    def lam_length(self, a: LambdaElement) -> int:
        return self.group.length(self.group.from_lambda(a))

    def e(self, lam: LambdaElement, c: int = 1) -> AElement:
        return AElement(self, {lam: c})

    def a_mul(self, x: AElement, y: AElement) -> AElement:
        """E(l1) E(l2) = E(l1 l2) if nu(l1), nu(l2) share a closed chamber, else 0."""
        rd, f = self.rd, self.field
        out: Dict[LambdaElement, int] = {}
        for l1, c1 in x.terms.items():
            for l2, c2 in y.terms.items():
                if not rd.same_closed_chamber(l1.mu, l2.mu):
                    continue
                key = self.lam_mul(l1, l2)
                out[key] = f.add(out.get(key, 0), f.mul(c1, c2))
        return AElement(self, out)

    def a_to_hecke(self, x: AElement) -> HeckeElement:
        out = self.zero()
        for lam, c in x.terms.items():
            out = out + self.e_of(lam).scale(c)
        return out

    def z_of(self, lam: LambdaElement) -> HeckeElement:
        """z_lambda = sum of E over the W(1)-orbit of lambda in Lambda_S(1)."""
        return self.a_to_hecke(self.z_of_a(lam))

    def z_of_a(self, lam: LambdaElement) -> AElement:
        if not self.group.in_lambda_s(lam):
            raise HeckeError(f"{lam} is not in Lambda_S(1)")
        return AElement(self, {l: 1 for l in self.group.orbit(lam)})

    def generators(self, omega_radius: Optional[int] = None) -> List[HeckeElement]:
        """Algebra generators: T_n for affine lifts, T_t for Z_kappa, T_u for Omega(1)."""
        grp = self.group
        gens = [self.t(g.element) for g in grp.affine_generators]
        gens += [self.t(grp.element([0] * self.rd.lattice_rank, t)) for t in self.zk.generators()]
        gens += [self.t(u) for u in grp.omega_generators(omega_radius)]
        return gens

    # ------------------------------------------------------------------ #
    # Involutions                                                        #
    # ------------------------------------------------------------------ #

    def zeta(self, x: HeckeElement) -> HeckeElement:
        """T_g -> T_{g^-1}, an anti-automorphism."""
        return HeckeElement(self, {self.group.inverse(g): c for g, c in x.terms.items()})

    def iota(self, x: HeckeElement) -> HeckeElement:
        """T_g -> (-1)^l(g) T*_g, the automorphism fixing T_t with T_n -> c_n - T_n."""
        out = self.zero()
        f = self.field
        for g, c in x.terms.items():
            out = out + self.t_star(g).scale(f.mul(c, f.sign(self.group.length(g))))
        return out

    def f_inv(self, x: HeckeElement) -> HeckeElement:
        """f = iota o zeta; f^2 = id and f(E(l)) = (-1)^l(l) E(l^-1)."""
        return self.iota(self.zeta(x))

    # ------------------------------------------------------------------ #
    # Coordinates over A                                                 #
    # ------------------------------------------------------------------ #

    def a_coords(self, x: HeckeElement, margin: int = 1) -> Dict[WeylElement, AElement]:
        """Some a_w in A with x = sum_w E(a_w) T_{n_w}.

        Columns E(lambda) T_{n_w} are taken for lambda in the box around the
        translations of x (widened by ``margin``), all Z_kappa parts, ordered
        by decreasing length of lambda n_w then word. Free variables are zero.

        Raises:
            ACoordinatesError: if x is not in the span of the window.
        """
        rd, grp, f = self.rd, self.group, self.field
        if x.is_zero():
            return {}
        lo = [min(g.mu[a] for g in x.terms) - margin for a in range(rd.lattice_rank)]
        hi = [max(g.mu[a] for g in x.terms) + margin for a in range(rd.lattice_rank)]
        lams = [
            LambdaElement(tuple(mu), t)
            for mu in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
            for t in self.zk.elements()
        ]
        columns: List[Tuple[WeylElement, LambdaElement]] = [(w, lam) for w in rd.weyl for lam in lams]
        columns.sort(
            key=lambda c: (
                -grp.length(grp.multiply(grp.from_lambda(c[1]), grp.canonical_lift(c[0]))),
                c[0].word,
                c[1].mu,
                c[1].t,
            )
        )
        images = [self.mul_t(self.e_of(lam), self.t(grp.canonical_lift(w))) for w, lam in columns]
        rows: Dict[ProPWeylElement, int] = {}
        for img in images + [x]:
            for g in img.terms:
                rows.setdefault(g, len(rows))
        mat = np.zeros((len(rows), len(columns)), dtype=np.int64)
        for j, img in enumerate(images):
            for g, c in img.terms.items():
                mat[rows[g], j] = c
        rhs = np.zeros(len(rows), dtype=np.int64)
        for g, c in x.terms.items():
            rhs[rows[g]] = c
        sol = f.solve(mat, rhs)
        if sol is None:
            raise ACoordinatesError(f"{self.format(x)} is not in the span of E(lambda) T_(n_w) over the window")
        out: Dict[WeylElement, Dict[LambdaElement, int]] = {}
        for j, val in enumerate(sol):
            if val:
                w, lam = columns[j]
                out.setdefault(w, {})[lam] = int(val)
        return {w: AElement(self, terms) for w, terms in out.items()}

    def from_a_coords(self, coords: Mapping[WeylElement, AElement]) -> HeckeElement:
        out = self.zero()
        for w, a in coords.items():
            out = out + self.mul_t(self.a_to_hecke(a), self.t(self.group.canonical_lift(w)))
        return out

    # ------------------------------------------------------------------ #
    # Printing                                                           #
    # ------------------------------------------------------------------ #

    def format(self, x, basis: str = "T") -> str:
        """Canonical text form, terms sorted by (length, word, mu, t)."""
        terms = x.terms if isinstance(x, HeckeElement) else x
        if not terms:
            return "0"
        parts = []
        for g in sorted(terms, key=self.sort_key):
            c = terms[g]
            body = f"{basis}[{self.group.format(g)}]"
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)


def _characteristic(q: int) -> int:
    return split_prime_power(q)[0]
