"""The group algebra C[Lambda(1)]_omega and the universal bimodules X_J inside
X_empty = n_{w_Delta} C[Lambda(1)]_omega (x)_A H.

Elements of C[Lambda(1)]_psi are stored as Laurent polynomials on X_*(S):
the monomial x^mu stands for tau_(mu, 1) e_psi, where
e_psi = |Z_kappa|^-1 sum_t psi(t)^-1 tau_t.  X_empty is free over this ring on
the slots Y_w = R (x) T*_{n_w}.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from prophecke.field import GaloisField
from prophecke.hecke import AElement, HeckeAlgebra, HeckeElement
from prophecke.modules import (
    FinAModule,
    FinHModule,
    IsotypicError,
    Matrix,
    SupportError,
    find_h_isomorphism,
    isotypic,
)
from prophecke.prop_weyl import Character, LambdaElement, OmegaOrbit, ProPWeylElement
from prophecke.root_system import WeylElement
from prophecke.tensor_hom import ChamberBasis, tensor_h

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


class OmegaError(ValueError):
    """Raised for invalid input to the universal-module constructions: a
    character that is not trivial on Z_kappa cap Lambda'_alpha(1), a Bruhat
    set that is not upward closed, or a zero series where a nonzero one is
    required."""

    pass


class TruncationError(ValueError):
    """Raised when a computation needs more of C[Lambda(1)] or of X_J than
    the truncation bound allows."""

    pass


# --------------------------------------------------------------------------- #
# Laurent series in R = C[Lambda(1)]_psi                                      #
# --------------------------------------------------------------------------- #


class OmegaSeries:
    """A finitely supported sum of a_mu x^mu over GF(p^m)."""

    __slots__ = ("field", "terms")

    def __init__(self, field: GaloisField, terms: Optional[Mapping[Monomial, int]] = None):
        self.field = field
        self.terms: Dict[Monomial, int] = {tuple(mu): c for mu, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, field: GaloisField, mu: Sequence[int], c: int = 1) -> "OmegaSeries":
        return cls(field, {tuple(mu): c})

    @classmethod
    def zero(cls, field: GaloisField) -> "OmegaSeries":
        return cls(field)

    def __add__(self, other: "OmegaSeries") -> "OmegaSeries":
        f = self.field
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = f.add(out.get(mu, 0), c)
        return OmegaSeries(f, out)

    def __neg__(self) -> "OmegaSeries":
        return OmegaSeries(self.field, {mu: self.field.neg(c) for mu, c in self.terms.items()})

    def __sub__(self, other: "OmegaSeries") -> "OmegaSeries":
        return self + (-other)

    def __mul__(self, other: "OmegaSeries") -> "OmegaSeries":
        f = self.field
        out: Dict[Monomial, int] = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                key = tuple(x + y for x, y in zip(mu, nu))
                out[key] = f.add(out.get(key, 0), f.mul(a, b))
        return OmegaSeries(f, out)

    def scale(self, c: int) -> "OmegaSeries":
        return OmegaSeries(self.field, {mu: self.field.mul(c, a) for mu, a in self.terms.items()})

    def shift(self, mu: Sequence[int]) -> "OmegaSeries":
        return OmegaSeries(self.field, {tuple(x + y for x, y in zip(nu, mu)): c for nu, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, OmegaSeries) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Tuple[Monomial, int]:
        """Largest monomial in lexicographic order, with its coefficient."""
        if not self.terms:
            raise OmegaError("The zero series has no leading term")
        mu = max(self.terms)
        return mu, self.terms[mu]

    @property
    def height(self) -> int:
        return max((sum(abs(x) for x in mu) for mu in self.terms), default=0)

    def divide_binomial(self, a: int, gamma: Sequence[int]) -> Optional["OmegaSeries"]:
        """g with self = (1 - a x^gamma) g, or None if there is none."""
        f = self.field
        gamma = tuple(gamma)
        if not any(gamma):
            one_minus = f.sub(1, a)
            return self.scale(f.inv(one_minus)) if one_minus else (self if self.is_zero() else None)
        grade = lambda mu: sum(x * y for x, y in zip(mu, gamma))  # noqa: E731
        rest = dict(self.terms)
        top = max((grade(mu) for mu in rest), default=0)
        quotient: Dict[Monomial, int] = {}
        while rest:
            mu = min(rest, key=lambda m: (grade(m), m))
            if grade(mu) > top:
                return None
            c = rest.pop(mu)
            quotient[mu] = c
            nxt = tuple(x + y for x, y in zip(mu, gamma))
            rest[nxt] = f.add(rest.get(nxt, 0), f.mul(c, a))
            if not rest[nxt]:
                del rest[nxt]
        return OmegaSeries(f, quotient)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{mu}" for mu, c in sorted(self.terms.items()))


# --------------------------------------------------------------------------- #
# The group ring C[Lambda(1)] and its psi-component                           #
# --------------------------------------------------------------------------- #

GroupRingElement = Dict[LambdaElement, int]


def chi_tilde(x: AElement) -> GroupRingElement:
    """E(lam) -> tau_lam for lam dominant, 0 otherwise, extended linearly."""
    rd = x.algebra.rd
    return {lam: c for lam, c in x.terms.items() if c and rd.is_dominant(lam.mu)}


def group_ring_mul(algebra: HeckeAlgebra, a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    f = algebra.field
    out: GroupRingElement = {}
    for x, cx in a.items():
        for y, cy in b.items():
            key = algebra.lam_mul(x, y)
            out[key] = f.add(out.get(key, 0), f.mul(cx, cy))
    return {k: v for k, v in out.items() if v}


class OmegaComponent:
    """C[Lambda(1)]_omega for the orbit of one character psi."""

    def __init__(self, algebra: HeckeAlgebra, psi: Optional[Character] = None):
        self.algebra = algebra
        self.field = algebra.field
        zk = algebra.zk
        if zk.order % self.field.p == 0:
            raise OmegaError(f"|Z_kappa| = {zk.order} is not invertible in GF({self.field.order})")
        self.psi = psi or Character(tuple(1 for _ in zk.orders))
        self.omega = OmegaOrbit.close(self.psi)
        self._inv_order = self.field.inv(self.field.from_int(zk.order))

    def value(self, t: Sequence[int]) -> int:
        return self.psi.value(self.field, t)

    def tau(self, lam: LambdaElement) -> OmegaSeries:
        """tau_lam e_psi = psi(t) x^mu."""
        return OmegaSeries.monomial(self.field, lam.mu, self.value(lam.t))

    def project(self, x: GroupRingElement) -> OmegaSeries:
        """x e_psi."""
        out = OmegaSeries.zero(self.field)
        for lam, c in x.items():
            out = out + self.tau(lam).scale(c)
        return out

    def literal(self, s: OmegaSeries) -> GroupRingElement:
        """The element of C[Lambda(1)] that s stands for."""
        f, zk = self.field, self.algebra.zk
        out: GroupRingElement = {}
        for mu, a in s.terms.items():
            for t in zk.elements():
                c = f.mul(a, f.mul(self._inv_order, f.inv(self.value(t))))
                out[LambdaElement(mu, t)] = c
        return {k: v for k, v in out.items() if v}

    def in_component(self, x: GroupRingElement) -> bool:
        """tau_t x = psi(t) x and x tau_t = psi(t) x for the generators t of Z_kappa."""
        f, alg = self.field, self.algebra
        zero_mu = tuple(0 for _ in range(alg.rd.lattice_rank))
        for t in alg.zk.generators():
            tau_t = {LambdaElement(zero_mu, t): 1}
            scaled = {k: f.mul(v, self.value(t)) for k, v in x.items()}
            scaled = {k: v for k, v in scaled.items() if v}
            if group_ring_mul(alg, tau_t, x) != scaled or group_ring_mul(alg, x, tau_t) != scaled:
                return False
        return True

    # ------------------------------------------------------------------ #
    # tau_alpha and c_w                                                  #
    # ------------------------------------------------------------------ #

    def check_lambda_prime(self, i: int) -> None:
        lp = self.algebra.group.lambda_prime_alpha(i)
        for t in lp.zkappa_part:
            if self.value(t) != 1:
                raise OmegaError(f"psi is not trivial on Z_kappa cap Lambda'_alpha for alpha_{i + 1} (at t = {t})")

    def tau_alpha_literal(self, i: int, lift: Optional[Sequence[int]] = None) -> GroupRingElement:
        """|Z_kappa|^-1 sum_{psi in omega} sum_t psi(t)^-1 tau_{a_alpha t} in C[Lambda(1)]."""
        f, alg = self.field, self.algebra
        zk = alg.zk
        lp = alg.group.lambda_prime_alpha(i)
        z = zk.reduce(lift) if lift is not None else zk.zero
        if z not in lp.zkappa_part and z != zk.zero:
            raise OmegaError(f"{z} is not in Z_kappa cap Lambda'_alpha for alpha_{i + 1}")
        out: GroupRingElement = {}
        for psi in self.omega.characters:
            for t in zk.elements():
                key = LambdaElement(lp.translation.mu, zk.add(z, t))
                c = f.mul(self._inv_order, f.inv(psi.value(f, t)))
                out[key] = f.add(out.get(key, 0), c)
        return {k: v for k, v in out.items() if v}

    def tau_alpha(self, i: int, lift: Optional[Sequence[int]] = None) -> OmegaSeries:
        self.check_lambda_prime(i)
        return self.project(self.tau_alpha_literal(i, lift))

    def tau_alpha_lift_independent(self, i: int) -> bool:
        lp = self.algebra.group.lambda_prime_alpha(i)
        base = self.tau_alpha(i)
        return all(self.tau_alpha(i, z) == base for z in lp.zkappa_part)

    def c_factors(self, w: WeylElement) -> List[Tuple[int, Monomial]]:
        """(a, gamma) with c_w = prod (1 - a x^gamma), in simple-root order."""
        rd = self.algebra.rd
        w_inv = rd.inverse(w)
        out = []
        for i in range(rd.rank_ss):
            if rd.is_positive_root(w_inv.root_perm[rd.simple_index[i]]):
                mu, a = self.tau_alpha(i).leading()
                out.append((a, mu))
        return out

    def c_w(self, w: WeylElement) -> OmegaSeries:
        """prod over simple alpha with w^-1 alpha > 0 of (1 - tau_alpha)."""
        f, rd = self.field, self.algebra.rd
        one = OmegaSeries.monomial(f, [0] * rd.lattice_rank)
        taus = [self.tau_alpha(i) for i in range(rd.rank_ss)]
        for i in range(len(taus)):
            for j in range(i + 1, len(taus)):
                if (one - taus[i]) * (one - taus[j]) != (one - taus[j]) * (one - taus[i]):
                    raise OmegaError(f"1 - tau_{i + 1} and 1 - tau_{j + 1} do not commute")
        out = one
        for a, gamma in self.c_factors(w):
            out = out * (one - OmegaSeries.monomial(f, gamma, a))
        return out

    def divide_by_c_w(self, x: OmegaSeries, w: WeylElement) -> Optional[OmegaSeries]:
        for a, gamma in self.c_factors(w):
            x = x.divide_binomial(a, gamma)
            if x is None:
                return None
        return x


@dataclass
class RegularityCertificate:
    nonzero: bool
    leading: Optional[Monomial]
    expected_leading: Monomial


def c_w_regular_check(component: OmegaComponent, w: WeylElement, f: OmegaSeries) -> RegularityCertificate:
    """c_w f != 0, with the leading monomial of c_w f equal to the sum of leading monomials."""
    if f.is_zero():
        raise OmegaError("c_w_regular_check needs a nonzero series")
    c = component.c_w(w)
    product = c * f
    expected = tuple(x + y for x, y in zip(c.leading()[0], f.leading()[0]))
    leading = product.leading()[0] if not product.is_zero() else None
    return RegularityCertificate(leading == expected, leading, expected)


# --------------------------------------------------------------------------- #
# X_empty and its elements                                                    #
# --------------------------------------------------------------------------- #

RMatrix = Dict[Tuple[WeylElement, WeylElement], OmegaSeries]


class XElement:
    """sum_w f_w (x) T*_{n_w} in X_empty."""

    __slots__ = ("module", "components")

    def __init__(self, module: "UniversalModule", components: Optional[Mapping[WeylElement, OmegaSeries]] = None):
        self.module = module
        self.components: Dict[WeylElement, OmegaSeries] = {
            w: s for w, s in (components or {}).items() if not s.is_zero()
        }

    def component(self, w: WeylElement) -> OmegaSeries:
        return self.components.get(w) or OmegaSeries.zero(self.module.field)

    def __add__(self, other: "XElement") -> "XElement":
        out = dict(self.components)
        for w, s in other.components.items():
            out[w] = out[w] + s if w in out else s
        return XElement(self.module, out)

    def __neg__(self) -> "XElement":
        return XElement(self.module, {w: -s for w, s in self.components.items()})

    def __sub__(self, other: "XElement") -> "XElement":
        return self + (-other)

    def left(self, r: OmegaSeries) -> "XElement":
        """r x for r in C[Lambda(1)]_omega."""
        return XElement(self.module, {w: r * s for w, s in self.components.items()})

    def scale(self, c: int) -> "XElement":
        return XElement(self.module, {w: s.scale(c) for w, s in self.components.items()})

    def support(self) -> List[WeylElement]:
        return sorted(self.components, key=lambda w: w.index)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        return isinstance(other, XElement) and self.components == other.components

    def __hash__(self) -> int:
        return hash(frozenset(self.components.items()))

    def __repr__(self) -> str:
        parts = [f"({s}) (x) T*[{w}]" for w, s in sorted(self.components.items(), key=lambda kv: kv[0].index)]
        return " + ".join(parts) if parts else "0"


class UniversalModule:
    """X_empty = n_{w_Delta} C[Lambda(1)]_omega (x)_A H as an (R, H)-bimodule.

    E(lam) for anti-dominant lam acts on the left factor as
    tau of n_{w_Delta}^-1 lam n_{w_Delta}; H is free over the anti-dominant
    localisation of A on {T_{n_v}}, and the slots are re-expressed in the
    star basis through the unitriangular change T*_{n_w} = sum P_wv T_{n_v}.
    """

    def __init__(self, algebra: HeckeAlgebra, psi: Optional[Character] = None):
        self.algebra = algebra
        self.field = algebra.field
        self.rd = algebra.rd
        self.omega = OmegaComponent(algebra, psi)
        self.chambers = ChamberBasis(algebra, "tensor", "antidominant")
        grp = algebra.group
        self.w_delta = self.rd.longest_element()
        self._n_inv = grp.inverse(grp.canonical_lift(self.w_delta))
        self.slots: List[WeylElement] = list(self.rd.weyl)
        lead, c = self.rho(self.chambers.lam1).leading()
        self._lam1_inv = OmegaSeries.monomial(self.field, [-x for x in lead], self.field.inv(c))
        self._p, self._p_inv = self._star_change()
        self._cache: Dict[ProPWeylElement, RMatrix] = {}
        self._spans: Dict[tuple, "TruncatedSpan"] = {}
        self._lock = threading.Lock()

    def rho(self, lam: LambdaElement) -> OmegaSeries:
        """Action of E(lam) on n_{w_Delta} C[Lambda(1)]_omega (lam anti-dominant)."""
        if not self.rd.is_antidominant(lam.mu):
            return OmegaSeries.zero(self.field)
        return self.omega.tau(self.algebra.group.conjugate(self._n_inv, lam))

    def _star_change(self) -> Tuple[Matrix, Matrix]:
        f, alg, grp = self.field, self.algebra, self.algebra.group
        n = len(self.slots)
        idx = {w: k for k, w in enumerate(self.slots)}
        p = f.zeros(n, n)
        for w in self.slots:
            for x, c in alg.t_star(grp.canonical_lift(w)).terms.items():
                scalar = self.rho(LambdaElement(x.mu, x.t)).terms.get(tuple(x.mu), 0)
                p[idx[w], idx[x.w]] = f.add(int(p[idx[w], idx[x.w]]), f.mul(c, scalar))
        return p, f.inverse(p)

    def _t_basis_matrix(self, y: ProPWeylElement) -> RMatrix:
        f = self.field
        out: RMatrix = {}
        for v in self.slots:
            k, splits = self.chambers.splits(y, v)
            shift = OmegaSeries.monomial(f, [0] * self.rd.lattice_rank)
            for _ in range(k):
                shift = shift * self._lam1_inv
            for v2, lam, c in splits:
                entry = (shift * self.rho(lam)).scale(c)
                key = (v, v2)
                out[key] = out[key] + entry if key in out else entry
        return out

    def _conjugate_by_p(self, m: RMatrix) -> RMatrix:
        f = self.field
        slots = self.slots
        zero = OmegaSeries.zero(f)
        out: RMatrix = {}
        for a, wa in enumerate(slots):
            for d, wd in enumerate(slots):
                acc = zero
                for b, wb in enumerate(slots):
                    pab = int(self._p[a, b])
                    if not pab:
                        continue
                    for c, wc in enumerate(slots):
                        qcd = int(self._p_inv[c, d])
                        entry = m.get((wb, wc))
                        if qcd and entry is not None:
                            acc = acc + entry.scale(f.mul(pab, qcd))
                if not acc.is_zero():
                    out[(wa, wd)] = acc
        return out

    def matrix(self, y: ProPWeylElement) -> RMatrix:
        """R-matrix of T_y on the star slots (row-vector convention)."""
        hit = self._cache.get(y)
        if hit is None:
            hit = self._conjugate_by_p(self._t_basis_matrix(y))
            with self._lock:
                self._cache.setdefault(y, hit)
        return hit

    # ------------------------------------------------------------------ #
    # Right H-action                                                     #
    # ------------------------------------------------------------------ #

    def act_basis(self, x: XElement, y: ProPWeylElement) -> XElement:
        """x T_y, applied letter by letter along a reduced decomposition."""
        letters, u = self.algebra.group.reduced_decomposition(y)
        for gen in letters:
            x = self._apply(x, self.matrix(gen.element))
        if u != self.algebra.group.identity:
            x = self._apply(x, self.matrix(u))
        return x

    def _apply(self, x: XElement, m: RMatrix) -> XElement:
        out: Dict[WeylElement, OmegaSeries] = {}
        for (v, v2), entry in m.items():
            s = x.components.get(v)
            if s is None:
                continue
            term = s * entry
            out[v2] = out[v2] + term if v2 in out else term
        return XElement(self, out)

    def x_act(self, x: XElement, h: HeckeElement) -> XElement:
        out = XElement(self)
        for y, c in h.terms.items():
            out = out + self.act_basis(x, y).scale(c)
        return out

    def x_generator(self, J: Optional[Iterable[int]] = None) -> XElement:
        """1 (x) T*_{n_{w_Delta w_J w_Delta}}, the generator of X_J."""
        rd = self.rd
        w_j = rd.longest_element(J)
        u = rd.mul(rd.mul(self.w_delta, w_j), self.w_delta)
        return XElement(self, {u: OmegaSeries.monomial(self.field, [0] * rd.lattice_rank)})

    def one(self) -> OmegaSeries:
        return OmegaSeries.monomial(self.field, [0] * self.rd.lattice_rank)

    def z_scalar(self, lam: LambdaElement) -> OmegaSeries:
        """The series by which z_lam acts: only the anti-dominant conjugate survives."""
        out = OmegaSeries.zero(self.field)
        for mu in self.algebra.group.orbit(lam):
            out = out + self.rho(mu)
        return out

    def span(self, J: Optional[Iterable[int]], radius: int, shift_radius: int = 0) -> "TruncatedSpan":
        """Cached truncated_span."""
        js = tuple(sorted(range(self.rd.rank_ss) if J is None else set(J)))
        key = (js, radius, shift_radius)
        hit = self._spans.get(key)
        if hit is None:
            hit = truncated_span(self, js, radius, shift_radius)
            with self._lock:
                self._spans.setdefault(key, hit)
        return hit


# --------------------------------------------------------------------------- #
# Truncated spans and membership                                              #
# --------------------------------------------------------------------------- #


@dataclass
class TruncatedSpan:
    """F-span of r g_J T_y for y = (mu, n_v) and monomials r, within a box."""

    module: UniversalModule
    J: Tuple[int, ...]
    radius: int
    shift_radius: int
    elements: List[XElement]
    columns: List[Tuple[WeylElement, Monomial]]
    matrix: Matrix

    def vector(self, x: XElement) -> Optional[np.ndarray]:
        """Coordinates of x on the columns, or None if x leaves them."""
        f = self.module.field
        col = {c: k for k, c in enumerate(self.columns)}
        vec = np.zeros(len(self.columns), dtype=np.int64)
        for w, s in x.components.items():
            for mu, c in s.terms.items():
                k = col.get((w, mu))
                if k is None:
                    return None
                vec[k] = f.add(int(vec[k]), c)
        return vec

    def element(self, row: np.ndarray) -> XElement:
        f = self.module.field
        comps: Dict[WeylElement, Dict[Monomial, int]] = {}
        for k, c in enumerate(row):
            if c:
                w, mu = self.columns[k]
                comps.setdefault(w, {})[mu] = int(c)
        return XElement(self.module, {w: OmegaSeries(f, t) for w, t in comps.items()})


def truncated_span(um: UniversalModule, J: Optional[Iterable[int]], radius: int, shift_radius: int = 0) -> TruncatedSpan:
    rd, grp = um.rd, um.algebra.group
    js = tuple(sorted(range(rd.rank_ss) if J is None else set(J)))
    g = um.x_generator(js)
    base: List[XElement] = []
    for mu in rd.box_points(radius):
        for v in rd.weyl:
            x = um.act_basis(g, grp.element(mu, None, v))
            if not x.is_zero():
                base.append(x)
    elements = [x.left(OmegaSeries.monomial(um.field, nu)) for x in base for nu in rd.box_points(shift_radius)]
    columns = sorted({(w, mu) for x in elements for w, s in x.components.items() for mu in s.terms}, key=lambda c: (c[0].index, c[1]))
    col = {c: k for k, c in enumerate(columns)}
    mat = np.zeros((len(elements), len(columns)), dtype=np.int64)
    for r, x in enumerate(elements):
        for w, s in x.components.items():
            for mu, c in s.terms.items():
                mat[r, col[(w, mu)]] = c
    logger.debug("prophecke: X_%s truncation with %d elements, %d columns", list(js), len(elements), len(columns))
    return TruncatedSpan(um, js, radius, shift_radius, elements, columns, mat)


@dataclass
class Membership:
    found: bool
    inconclusive: bool
    coordinates: Optional[np.ndarray] = None
    bound: Optional[str] = None


def x_membership(x: XElement, span: TruncatedSpan) -> Membership:
    """x in the truncated X_J; not finding it is inconclusive, never a refutation."""
    if x.is_zero():
        return Membership(True, False, np.zeros(len(span.elements), dtype=np.int64))
    bound = f"radius={span.radius}, shift_radius={span.shift_radius}"
    vec = span.vector(x)
    if vec is None or not len(span.elements):
        return Membership(False, True, bound=bound)
    sol = span.module.field.solve_left(span.matrix, vec)
    if sol is None:
        return Membership(False, True, bound=bound)
    return Membership(True, False, sol)


def x_j_chain_check(um: UniversalModule, J: Iterable[int], J2: Iterable[int], radius: int = 0) -> Membership:
    """g_{J'} in X_J for J subset of J'."""
    if not set(J) <= set(J2):
        raise OmegaError(f"J = {sorted(J)} is not contained in J' = {sorted(J2)}")
    return x_membership(um.x_generator(J2), um.span(J, radius))


def x_center_check(um: UniversalModule, J: Optional[Iterable[int]], lam: LambdaElement, radius: int = 1) -> Tuple[bool, Optional[str]]:
    """(f (x) X) z_lam = f tau (x) X on the spanning set of X_J, tau a unit of R."""
    scalar = um.z_scalar(lam)
    if len(scalar.terms) != 1:
        return False, f"z_{lam.mu} acts by {scalar}, not by a unit of R"
    z = um.algebra.z_of(lam)
    for x in um.span(J, radius).elements:
        if um.x_act(x, z) != x.left(scalar):
            return False, f"z_{lam.mu} disagrees with the tau-shift on {x!r}"
    return True, None


# --------------------------------------------------------------------------- #
# Bruhat filtration                                                           #
# --------------------------------------------------------------------------- #


class Filtration:
    """X_{J,A} = X_J cap sum_{v in A} Y_v for A upward closed in the Bruhat order."""

    def __init__(self, um: UniversalModule, J: Optional[Iterable[int]], A: Iterable[WeylElement]):
        self.module = um
        self.J = J
        self.A = frozenset(A)
        if not um.rd.is_upward_closed(self.A):
            raise OmegaError(f"{sorted(str(w) for w in self.A)} is not upward closed")

    def in_empty_piece(self, x: XElement) -> bool:
        return all(w in self.A for w in x.components)

    def contains(self, x: XElement, span: TruncatedSpan) -> Membership:
        if not self.in_empty_piece(x):
            return Membership(False, False)
        return x_membership(x, span)

    def minimal(self) -> List[WeylElement]:
        rd = self.module.rd
        return [w for w in self.A if not any(v != w and rd.bruhat_leq(v, w) for v in self.A)]

    def quotient(self, x: XElement, w: WeylElement) -> OmegaSeries:
        """Image of x in X_{empty,A} / X_{empty,A minus w} = R."""
        if w not in self.minimal():
            raise OmegaError(f"{w} is not minimal in A")
        if not self.in_empty_piece(x):
            raise OmegaError("element is not in X_{empty,A}")
        return x.component(w)

    def intersection(self, span: TruncatedSpan) -> List[XElement]:
        """Truncated elements of X_{J,A}."""
        f = self.module.field
        outside = [k for k, (w, _) in enumerate(span.columns) if w not in self.A]
        if not outside:
            return list(span.elements)
        kernel = f.left_nullspace(span.matrix[:, outside])
        return [span.element(f.matvec(row, span.matrix)) for row in kernel]


@dataclass
class QuotientCertificate:
    verdict: str
    w: WeylElement
    checked: int
    section: Optional[XElement] = None
    witness: Optional[str] = None


def _series_matrix(series: Sequence[OmegaSeries], target: OmegaSeries) -> Tuple[Matrix, np.ndarray]:
    columns = sorted({mu for s in list(series) + [target] for mu in s.terms})
    col = {mu: k for k, mu in enumerate(columns)}
    mat = np.zeros((len(series), len(columns)), dtype=np.int64)
    for r, s in enumerate(series):
        for mu, a in s.terms.items():
            mat[r, col[mu]] = a
    vec = np.zeros(len(columns), dtype=np.int64)
    for mu, a in target.terms.items():
        vec[col[mu]] = a
    return mat, vec


def quotient_identity_check(
    um: UniversalModule, A: Iterable[WeylElement], w: WeylElement, radius: int = 2, shift_radius: int = 0
) -> QuotientCertificate:
    """X_{Delta,A}/X_{Delta,A'} = c_w (X_{empty,A}/X_{empty,A'}) on a truncation, A' = A minus w.

    Every truncated element of X_{Delta,A} must have w-component in c_w R
    (a counterexample fails the check); c_w itself must be reached as such a
    component (not reaching it is inconclusive).
    """
    filt = Filtration(um, None, A)
    if w not in filt.minimal():
        raise OmegaError(f"{w} is not minimal in A")
    members = filt.intersection(um.span(None, radius, shift_radius))
    omega = um.omega
    quotients = [x.component(w) for x in members]
    for x, q in zip(members, quotients):
        if not q.is_zero() and omega.divide_by_c_w(q, w) is None:
            return QuotientCertificate("fail", w, len(members), witness=f"{q} is not divisible by c_w in {x!r}")
    if not members:
        return QuotientCertificate("inconclusive", w, 0, witness=f"no elements of X_Delta,A at radius {radius}")
    mat, vec = _series_matrix(quotients, omega.c_w(w))
    sol = um.field.solve_left(mat, vec)
    if sol is None:
        return QuotientCertificate(
            "inconclusive", w, len(members), witness=f"c_w not reached at radius {radius}, shift_radius {shift_radius}"
        )
    section = XElement(um)
    for coeff, x in zip(sol, members):
        if coeff:
            section = section + x.scale(int(coeff))
    return QuotientCertificate("pass", w, len(members), section=section)


def upward_closure(um: UniversalModule, w: WeylElement) -> frozenset:
    rd = um.rd
    return frozenset(v for v in rd.weyl if rd.bruhat_leq(w, v))


# --------------------------------------------------------------------------- #
# M (x)_R X_Delta                                                             #
# --------------------------------------------------------------------------- #


def adapted_basis(um: UniversalModule, radius: int = 2, shift_radius: int = 0) -> Dict[WeylElement, XElement]:
    """b_w in X_Delta with b_w in sum_{v >= w} Y_v and w-component c_w.

    Raises:
        TruncationError: if some b_w is not found at this radius.
    """
    out: Dict[WeylElement, XElement] = {}
    for w in um.rd.weyl:
        if w == um.w_delta:
            out[w] = um.x_generator()
            continue
        cert = quotient_identity_check(um, upward_closure(um, w), w, radius, shift_radius)
        if cert.section is None:
            raise TruncationError(f"No adapted basis element at {w} ({cert.verdict}: {cert.witness})")
        out[w] = cert.section
    return out


def adapted_coordinates(um: UniversalModule, basis: Mapping[WeylElement, XElement], x: XElement) -> Dict[WeylElement, OmegaSeries]:
    """r_w with x = sum r_w b_w; slots are cleared in order of increasing length."""
    coords: Dict[WeylElement, OmegaSeries] = {}
    for w in sorted(um.rd.weyl, key=lambda v: (v.length, v.index)):
        q = x.component(w)
        if q.is_zero():
            continue
        r = um.omega.divide_by_c_w(q, w)
        if r is None:
            raise OmegaError(f"{x!r} is not in X_Delta: slot {w} is not divisible by c_w")
        b_w = basis[w]
        lead = b_w.component(w)
        c = um.omega.c_w(w)
        if lead != c:
            raise OmegaError(f"Basis element at {w} does not have leading component c_w")
        coords[w] = r
        x = x - b_w.left(r)
    if not x.is_zero():
        raise OmegaError(f"Residue {x!r} after clearing every slot")
    return coords


def r_action(m: FinAModule, s: OmegaSeries) -> Matrix:
    """rho_M(s) for supp M = Lambda^+(1): x^mu -> E(mu + k lam) E(k lam)^-1."""
    f, rd = m.field, m.algebra.rd
    lam = rd.regular_dominant()
    zero = m.algebra.zk.zero
    out = f.zeros(m.dim, m.dim)
    for mu, c in s.terms.items():
        k = 0
        while not rd.is_dominant(tuple(a + k * b for a, b in zip(mu, lam))):
            k += 1
        shifted = m.action(LambdaElement(tuple(a + k * b for a, b in zip(mu, lam)), zero))
        base = m.action(LambdaElement(tuple(k * b for b in lam), zero))
        out = f.madd(out, f.scale(c, f.matmul(shifted, f.inverse(base))))
    return out


@dataclass
class UniversalTensor:
    module: FinHModule
    unit: Matrix
    basis: Dict[WeylElement, XElement]
    psi: Character


def _character_of(m: FinAModule) -> Character:
    pieces = isotypic(m)
    if len(pieces) != 1:
        raise IsotypicError(f"{m!r} is not isotypic: {len(pieces)} omega-components")
    return next(iter(pieces)).representative


def tensor_with_module(m: FinAModule, radius: int = 2, validate: bool = True) -> UniversalTensor:
    """M (x)_{C[Lambda(1)]_omega} X_Delta for supp M = Lambda^+(1) and M = M_omega.

    Raises:
        SupportError: if supp M is not the dominant chamber.
        IsotypicError: if M has more than one omega-component.
    """
    alg = m.algebra
    rd, f = alg.rd, alg.field
    psi = _character_of(m) if m.dim else Character(tuple(1 for _ in alg.zk.orders))
    if m.dim and m.require_support() != rd.identity:
        raise SupportError("tensor_with_module needs supp M = Lambda^+(1)")
    um = UniversalModule(alg, psi)
    basis = adapted_basis(um, radius)
    order = list(rd.weyl)
    idx = {w: k for k, w in enumerate(order)}
    d, n = m.dim, len(order)

    def action(y: ProPWeylElement) -> Matrix:
        out = f.zeros(n * d, n * d)
        for w in order:
            coords = adapted_coordinates(um, basis, um.act_basis(basis[w], y))
            for v, r in coords.items():
                out[idx[w] * d : (idx[w] + 1) * d, idx[v] * d : (idx[v] + 1) * d] = r_action(m, r)
        return out

    gens = {gen.label: action(gen.element) for gen in alg.group.affine_generators}
    module = FinHModule(alg, n * d, gens, action, validate=validate, name=f"{m.name} (x)_R X_Delta")
    unit = f.zeros(d, n * d)
    for v, r in adapted_coordinates(um, basis, um.x_generator()).items():
        unit[:, idx[v] * d : (idx[v] + 1) * d] = r_action(m, r)
    return UniversalTensor(module, unit, basis, psi)


def check_universal_tensor(m: FinAModule, radius: int = 2, seed: int = 0) -> Tuple[bool, Optional[Matrix], str]:
    """tensor_with_module(m) ~ tensor_h(m), and the unit is injective."""
    ut = tensor_with_module(m, radius)
    f = m.field
    if f.rank(ut.unit) != m.dim:
        return False, None, "unit m -> m (x) g_Delta is not injective"
    ref = tensor_h(m).module
    if ref.dim != ut.module.dim:
        return False, None, f"dimensions differ: {ut.module.dim} vs {ref.dim}"
    p = find_h_isomorphism(ut.module, ref, seed=seed)
    if p is None:
        return False, None, "no invertible H-intertwiner"
    return True, p, ""
