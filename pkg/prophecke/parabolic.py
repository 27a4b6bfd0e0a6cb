"""Levi Hecke algebras H_J, the regions H_J^+ / H_J^- and the embeddings j_J into H."""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from prophecke.hecke import HeckeAlgebra, HeckeElement
from prophecke.modules import FinAModule, Matrix, SupportError
from prophecke.prop_weyl import LambdaElement, ProPWeylElement, ProPWeylGroup
from prophecke.root_system import RootDatum, Vector, WeylElement

logger = logging.getLogger(__name__)

SIGNS = ("+", "-")
J_VARIANTS = ("+", "+*", "-", "-*")


class LeviError(ValueError):
    """Raised for an invalid subset J, an unknown j-map variant, or an element
    whose support leaves the region H_J^+ / H_J^- a j-map is defined on."""

    pass


# --------------------------------------------------------------------------- #
# Levi data                                                                   #
# --------------------------------------------------------------------------- #


@dataclass
class LeviData:
    """H_J for the Levi L_J: same lattice, same Lambda(1) and Z_kappa, roots Sigma_J."""

    J: Tuple[int, ...]
    ambient: HeckeAlgebra
    rd: RootDatum
    group: ProPWeylGroup
    algebra: HeckeAlgebra
    off_roots: Tuple[int, ...]
    _weyl_map: Dict[int, WeylElement] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def to_ambient_weyl(self, w: WeylElement) -> WeylElement:
        hit = self._weyl_map.get(w.index)
        if hit is None:
            hit = self.ambient.rd.from_word([self.J[i] for i in w.word])
            with self._lock:
                self._weyl_map.setdefault(w.index, hit)
        return hit

    def to_ambient(self, g: ProPWeylElement) -> ProPWeylElement:
        """The same element of W(1), with W_{0,J} read inside W_0."""
        return ProPWeylElement(g.mu, g.t, self.to_ambient_weyl(g.w))

    def levi_vector(self, scale: int = 1) -> LambdaElement:
        v = self.ambient.rd.levi_vector(self.J)
        return LambdaElement(tuple(scale * x for x in v), self.ambient.zk.zero)

    def admits_lambda_zero(self, v: Sequence[int]) -> bool:
        """<v, alpha_j> = 0 for j in J and > 0 for the other simple roots."""
        p = self.ambient.rd.simple_pairings(v)
        return all(p[i] == 0 if i in self.J else p[i] > 0 for i in range(len(p)))

    def lambda_zero_choices(self, radius: int = 3) -> Tuple[LambdaElement, LambdaElement]:
        """Two admissible lambda_0.

        The second is the first admissible box vector (by L1 norm, then
        lexicographically) not proportional to levi_vector(). When the
        admissible cone is a ray, the choices are its second and third
        multiples of levi_vector().
        """
        rd, zero = self.ambient.rd, self.ambient.zk.zero
        base = rd.levi_vector(self.J)
        for v in sorted(rd.box_points(radius), key=lambda v: (sum(abs(x) for x in v), v)):
            if self.admits_lambda_zero(v) and not _proportional(v, base):
                return LambdaElement(base, zero), LambdaElement(tuple(v), zero)
        return self.levi_vector(2), self.levi_vector(3)


def _proportional(a: Vector, b: Vector) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def levi_algebra(ambient: HeckeAlgebra, J: Iterable[int]) -> LeviData:
    """H_J for J a subset of the simple indices (0-based)."""
    rd = ambient.rd
    js = tuple(sorted(set(J)))
    if any(not 0 <= j < rd.rank_ss for j in js):
        raise LeviError(f"J = {list(js)} is not a subset of the {rd.rank_ss} simple roots")
    levi_rd = rd.levi(js)
    zk = ambient.zk.restrict(levi_rd, js)
    grp = ambient.group
    ns = {k: grp.ns_squares[j] for k, j in enumerate(js)}
    group = ProPWeylGroup(levi_rd, grp.q, zk, ns_squares=ns)
    algebra = HeckeAlgebra(group, ambient.field)
    inside = set(rd.positive_roots_of(js))
    off = tuple(k for k in rd.positive_roots if k not in inside)
    logger.debug("prophecke: Levi %s with %d off-J positive roots", levi_rd.name, len(off))
    return LeviData(js, ambient, levi_rd, group, algebra, off)


# --------------------------------------------------------------------------- #
# H_J^+ and H_J^-                                                             #
# --------------------------------------------------------------------------- #


def plus_minus_membership(ld: LeviData, g: ProPWeylElement, sign: str) -> bool:
    """Whether T^J_g lies in H_J^sign.

    H_J^+ asks <nu(g), alpha> <= 0 and H_J^- asks >= 0, for every positive root
    alpha outside Sigma_J.
    """
    if sign not in SIGNS:
        raise LeviError(f"Unknown sign {sign!r}")
    rd = ld.ambient.rd
    pairings = [rd.pairing(g.mu, k) for k in ld.off_roots]
    if sign == "+":
        return all(p <= 0 for p in pairings)
    return all(p >= 0 for p in pairings)


def j_map(ld: LeviData, variant: str, x: HeckeElement) -> HeckeElement:
    """j_J^variant(x) for x in H_J^+ (variants + and +*) or H_J^- (- and -*).

    Unstarred variants send T^J_w to T_w; starred ones send T^{J*}_w to T*_w.
    Membership is checked on the T^J support, resp. the T^{J*} support.

    Raises:
        LeviError: if x has support outside the region.
    """
    if variant not in J_VARIANTS:
        raise LeviError(f"Unknown j-map variant {variant!r}; expected one of {J_VARIANTS}")
    if x.algebra is not ld.algebra:
        raise LeviError("Element does not belong to the Levi algebra")
    sign, star = variant[0], variant.endswith("*")
    amb = ld.ambient
    coords = ld.algebra.star_coordinates(x) if star else x.terms
    for g in coords:
        if not plus_minus_membership(ld, g, sign):
            raise LeviError(f"{ld.group.format(g)} is outside H_J^{sign} for J = {list(ld.J)}")
    mapped = {ld.to_ambient(g): c for g, c in coords.items()}
    if star:
        return amb.from_star_coordinates(mapped)
    return HeckeElement(amb, mapped)


def region_elements(ld: LeviData, sign: str, max_length: int, radius: int = 2) -> List[ProPWeylElement]:
    """Levi elements of length <= max_length (no Z_kappa part) inside H_J^sign."""
    return [g for g in ld.group.enumerate_by_length(max_length, radius) if plus_minus_membership(ld, g, sign)]


# --------------------------------------------------------------------------- #
# Identities                                                                  #
# --------------------------------------------------------------------------- #


@dataclass
class LocalizationWitness:
    ok: bool
    powers: Dict[str, int]
    failure: Optional[str] = None


def levi_localization_check(ld: LeviData, max_length: int = 4, k_max: int = 16) -> LocalizationWitness:
    """Every T^J_w (l_J(w) <= max_length) times some E^J(lambda_0)^k lies in H_J^-.

    w runs over W_J(1) with every Z_kappa part. lambda_0 pairs to zero with
    Sigma_J and positively off J.
    """
    alg, grp = ld.algebra, ld.group
    lam0 = ld.levi_vector()
    powers: Dict[str, int] = {}
    for g in grp.enumerate_by_length(max_length, radius=1, with_zkappa=True):
        tg = alg.t(g)
        for k in range(k_max + 1):
            lam = LambdaElement(tuple(k * x for x in lam0.mu), lam0.t)
            prod = alg.mul_t(tg, alg.e_of(lam))
            if all(plus_minus_membership(ld, h, "-") for h in prod.terms):
                powers[grp.format(g)] = k
                break
        else:
            return LocalizationWitness(False, powers, f"T^J_({grp.format(g)}) E^J(lambda_0)^k leaves H_J^- for k <= {k_max}")
    return LocalizationWitness(True, powers)


def _chamber_lambdas(ld: LeviData, radius: int) -> List[LambdaElement]:
    rd = ld.ambient.rd
    w_j = rd.longest_element(ld.J)
    zero = ld.ambient.zk.zero
    return [LambdaElement(tuple(v), zero) for v in rd.box_points(radius) if rd.in_chamber(v, w_j)]


def a_wj_inclusion_check(ld: LeviData, radius: int = 2) -> Tuple[bool, Optional[str]]:
    """E(lambda) = j^{-*}(E^J(lambda)) for lambda in the chamber w_J in a box."""
    amb = ld.ambient
    for lam in _chamber_lambdas(ld, radius):
        e_j = ld.algebra.e_of(lam)
        try:
            image = j_map(ld, "-*", e_j)
        except LeviError as exc:
            return False, f"E^J({lam.mu}) outside H_J^-: {exc}"
        if image != amb.e_of(lam):
            return False, f"j^-*(E^J({lam.mu})) != E({lam.mu})"
    return True, None


def e_coordinates(algebra: HeckeAlgebra, x: HeckeElement) -> Optional[Dict[LambdaElement, int]]:
    """Coefficients of x in the E(lambda) basis of A, or None if x is not in A.

    Peels the longest translation term off x, using that E(lambda) is T_lambda
    plus strictly shorter terms.
    """
    grp, identity = algebra.group, algebra.rd.identity
    coords: Dict[LambdaElement, int] = {}
    rest = x
    while not rest.is_zero():
        g = max(rest.terms, key=lambda h: (grp.length(h), algebra.sort_key(h)))
        if g.w != identity:
            return None
        c = rest.terms[g]
        coords[g.lam] = c
        rest = rest - algebra.e_of(g.lam).scale(c)
        if g in rest.terms:
            return None
    return coords


def a_wj_embedding_check(ld: LeviData, radius: int = 1) -> Tuple[bool, Optional[str]]:
    """E(lambda) -> E^J(lambda) sends products to products on the chamber w_J.

    For lambda (any Z_kappa part) and mu (none) in the chamber w_J in a box,
    E(lambda) E(mu) is expanded in the E basis of A and mapped term by term
    to H_J, then compared with E^J(lambda) E^J(mu).
    """
    amb, alg = ld.ambient, ld.algebra
    lams = _chamber_lambdas(ld, radius)
    lefts = [LambdaElement(a.mu, t) for a in lams for t in amb.zk.elements()]
    for a in lefts:
        for b in lams:
            coords = e_coordinates(amb, amb.mul_t(amb.e_of(a), amb.e_of(b)))
            if coords is None:
                return False, f"E({a.mu}, {a.t}) E({b.mu}) is not in A"
            image = alg.zero()
            for lam, c in coords.items():
                image = image + alg.e_of(lam).scale(c)
            if image != alg.mul_t(alg.e_of(a), alg.e_of(b)):
                return False, f"image of E({a.mu}, {a.t}) E({b.mu}) != E^J({a.mu}, {a.t}) E^J({b.mu})"
    return True, None


def spans_equal(algebra: HeckeAlgebra, first: Sequence[HeckeElement], second: Sequence[HeckeElement]) -> bool:
    """span(first) == span(second) as subspaces of H."""
    f = algebra.field
    support = sorted({g for x in list(first) + list(second) for g in x.terms}, key=algebra.sort_key)
    col = {g: k for k, g in enumerate(support)}

    def rows(xs: Sequence[HeckeElement]) -> Matrix:
        mat = f.zeros(len(xs), len(support))
        for r, x in enumerate(xs):
            for g, c in x.terms.items():
                mat[r, col[g]] = c
        return mat

    a, b = rows(first), rows(second)
    ra, rb = f.rank(a), f.rank(b)
    return ra == rb == f.rank(np.concatenate([a, b], axis=0))


def empty_levi_identities(ambient: HeckeAlgebra, radius: int = 2) -> Dict[str, bool]:
    """j_empty^+(H_empty^+) = A_{w_Delta} and j_empty^{-*}(H_empty^-) = A_1 on a box."""
    ld = levi_algebra(ambient, ())
    rd, zero = ambient.rd, ambient.zk.zero
    w_delta = rd.longest_element()
    box = [LambdaElement(tuple(v), zero) for v in rd.box_points(radius)]
    grp = ld.group
    out: Dict[str, bool] = {}
    for variant, sign, chamber in (("+", "+", w_delta), ("-*", "-", rd.identity)):
        images = [
            j_map(ld, variant, ld.algebra.t(grp.from_lambda(lam)))
            for lam in box
            if plus_minus_membership(ld, grp.from_lambda(lam), sign)
        ]
        targets = [ambient.e_of(lam) for lam in box if rd.in_chamber(lam.mu, chamber)]
        out[variant] = spans_equal(ambient, images, targets)
    return out


# --------------------------------------------------------------------------- #
# Extension of A-modules to A_J                                               #
# --------------------------------------------------------------------------- #


def extend_to_levi(
    m: FinAModule, ld: LeviData, lam0: Optional[LambdaElement] = None, k_max: int = 64
) -> FinAModule:
    """The A_J-module M_J extending M, for supp M = w_J(Lambda^+(1)).

    E^J(mu) = E(lambda_0^n mu) E(lambda_0)^-n with n minimal such that
    lambda_0^n mu is in the chamber w_J, and zero when mu is not
    anti-dominant for Sigma_J. lambda_0 defaults to levi_vector().

    Raises:
        LeviError: if lam0 is not orthogonal to Sigma_J and positive off J.
        SupportError: if supp M is not the chamber w_J.
    """
    amb, f = ld.ambient, m.field
    rd = amb.rd
    w_j = rd.longest_element(ld.J)
    if m.require_support() != w_j:
        raise SupportError(f"extend_to_levi needs supp M = w_J(Lambda^+) for J = {list(ld.J)}")
    if lam0 is None:
        lam0 = ld.levi_vector()
    if not ld.admits_lambda_zero(lam0.mu):
        raise LeviError(f"lambda_0 = {lam0.mu} is not orthogonal to J = {list(ld.J)} and positive off J")
    if not m.is_invertible_on(lam0):
        raise SupportError(f"E({lam0.mu}) is not invertible on {m!r}")
    a0_inv = f.inverse(m.action(lam0))

    def action(mu: LambdaElement) -> Matrix:
        if not ld.rd.is_antidominant(mu.mu):
            return f.zeros(m.dim, m.dim)
        for n in range(k_max + 1):
            shifted = tuple(a + n * b for a, b in zip(mu.mu, lam0.mu))
            if rd.in_chamber(shifted, w_j):
                return f.matmul(m.action(LambdaElement(shifted, mu.t)), f.mpow(a0_inv, n))
        raise SupportError(f"No power of lambda_0 moves {mu.mu} into the chamber w_J")

    return FinAModule.from_function(ld.algebra, m.dim, action, name=f"{m.name}^J")


def extension_is_unique(m: FinAModule, ld: LeviData, radius: int = 2) -> Tuple[bool, Optional[str]]:
    """The two lambda_zero_choices() give the same A_J-action on a box."""
    lam_a, lam_b = ld.lambda_zero_choices()
    first = extend_to_levi(m, ld, lam_a)
    second = extend_to_levi(m, ld, lam_b)
    zk = ld.ambient.zk
    for v in ld.rd.box_points(radius):
        for t in zk.elements():
            lam = LambdaElement(tuple(v), t)
            if not np.array_equal(first.action(lam), second.action(lam)):
                return False, f"E^J({lam.mu}, {lam.t}) depends on lambda_0"
    return True, None


def extension_restricts(m: FinAModule, ext: FinAModule, radius: int = 2) -> Tuple[bool, Optional[str]]:
    """E^J(lambda) = E(lambda) on the chamber w_J."""
    rd = m.algebra.rd
    w_j_support = m.require_support()
    zero = m.algebra.zk.zero
    for v in rd.box_points(radius):
        if rd.in_chamber(v, w_j_support):
            lam = LambdaElement(tuple(v), zero)
            if not np.array_equal(m.action(lam), ext.action(lam)):
                return False, f"extension disagrees with M at {lam.mu}"
    return True, None
