"""M (x)_A H and Hom_A(H, M) for A-modules supported on the dominant or
anti-dominant chamber.

H is free over the localisation of A at a regular element of the support
chamber, on a basis {B_v : v in W_0} adapted to that chamber:

    side     support         B_v                    expansion basis
    tensor   anti-dominant   T_{n_v}                T
    tensor   dominant        T*_{lam0 n_v}          T*
    hom      dominant        T*_{n_v}               T*
    hom      anti-dominant   T_{n_v lam0}           T

To act by T_y we expand E(lam1^k) B_v T_y (tensor) or T_y B_v E(lam1^k) (hom)
and raise k until every basis term splits as E(lam'') B_v' (resp. B_v' E(lam''))
with lam'' in the support chamber and lengths adding.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from prophecke.hecke import HeckeAlgebra
from prophecke.modules import (
    FinAModule,
    FinHModule,
    Matrix,
    SupportError,
    find_h_isomorphism,
    twist,
)
from prophecke.prop_weyl import LambdaElement, ProPWeylElement
from prophecke.root_system import WeylElement

logger = logging.getLogger(__name__)

K_MAX = 64


class LocalizationError(ValueError):
    """Raised when no power of the regular chamber element makes every term
    of an expansion split along the chamber-adapted basis."""

    pass


@dataclass
class InducedModule:
    """An H-module built from an A-module, with its chamber-adapted basis."""

    module: FinHModule
    side: str
    chamber: str
    basis_elements: Dict[WeylElement, ProPWeylElement]
    source: FinAModule
    unit: Optional[Matrix] = None
    depths: Dict[str, int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.module.dim


def _chamber_of_support(m: FinAModule) -> str:
    rd = m.algebra.rd
    w = m.require_support()
    if w == rd.identity:
        return "dominant"
    if w == rd.longest_element():
        return "antidominant"
    raise SupportError(f"Support {w} is neither the dominant nor the anti-dominant chamber")


Split = Tuple[int, List[Tuple[WeylElement, LambdaElement, int]]]


class ChamberBasis:
    """The basis {B_v} of H over A localised at a regular element of one chamber.

    ``splits(y, v)`` returns (k, [(v', lam'', c), ...]) with
    E(lam1^k) B_v T_y = sum c E(lam'') B_v' (tensor side) or
    T_y B_v E(lam1^k) = sum c B_v' E(lam'') (hom side).
    """

    def __init__(self, algebra: HeckeAlgebra, side: str, chamber: str):
        if side not in ("tensor", "hom") or chamber not in ("dominant", "antidominant"):
            raise SupportError(f"Unknown side/chamber {side}/{chamber}")
        self.algebra = algebra
        self.side = side
        self.chamber = chamber
        grp, rd = algebra.group, algebra.rd
        vec = rd.regular_dominant() if chamber == "dominant" else rd.regular_antidominant()
        self.lam1 = grp.lambda_s_members(vec)
        self.star = chamber == "dominant"
        lam0 = grp.from_lambda(self.lam1)
        self.basis: Dict[WeylElement, ProPWeylElement] = {}
        for v in rd.weyl:
            n_v = grp.canonical_lift(v)
            if side == "tensor" and chamber == "dominant":
                b = grp.multiply(lam0, n_v)
            elif side == "hom" and chamber == "antidominant":
                b = grp.multiply(n_v, lam0)
            else:
                b = n_v
            self.basis[v] = b
        self.index = {v: k for k, v in enumerate(rd.weyl)}
        self.depth = 0
        self._cache: Dict[Tuple[ProPWeylElement, WeylElement], Split] = {}
        self._lock = threading.Lock()

    def _power(self, k: int) -> ProPWeylElement:
        return self.algebra.group.from_lambda(LambdaElement(tuple(k * x for x in self.lam1.mu), self.algebra.zk.zero))

    def _expand(self, y: ProPWeylElement, v: WeylElement, k: int) -> Dict[ProPWeylElement, int]:
        alg = self.algebra
        first, second = {self._power(k): 1}, {self.basis[v]: 1}
        if self.side == "hom":
            first, second = second, first
        if self.star:
            y_coords = alg.star_coordinates(alg.t(y))
            if self.side == "tensor":
                return alg.mul_star(alg.mul_star(first, second), y_coords)
            return alg.mul_star(alg.mul_star(y_coords, first), second)
        ty = {y: 1}
        if self.side == "tensor":
            return alg._mul_terms(alg._mul_terms(first, second), ty)
        return alg._mul_terms(alg._mul_terms(ty, first), second)

    def _split(self, x: ProPWeylElement) -> Optional[Tuple[WeylElement, LambdaElement]]:
        grp, rd = self.algebra.group, self.algebra.rd
        v = x.w
        b = self.basis[v]
        lam = grp.multiply(x, grp.inverse(b)) if self.side == "tensor" else grp.multiply(grp.inverse(b), x)
        if not lam.is_lambda():
            return None
        inside = rd.is_dominant(lam.mu) if self.chamber == "dominant" else rd.is_antidominant(lam.mu)
        if not inside or grp.length(x) != grp.length(lam) + grp.length(b):
            return None
        return v, lam.lam

    def splits(self, y: ProPWeylElement, v: WeylElement) -> Split:
        """Raises LocalizationError when no power up to K_MAX works."""
        key = (y, v)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        for k in range(K_MAX + 1):
            terms = self._expand(y, v, k)
            found = [(self._split(x), c) for x, c in terms.items()]
            if all(s is not None for s, _ in found):
                break
        else:
            raise LocalizationError(
                f"No power <= {K_MAX} of E({self.lam1.mu}) splits T_({self.algebra.group.format(y)}) at {v}"
            )
        out: Split = (k, [(s[0], s[1], c) for s, c in found])
        with self._lock:
            self.depth = max(self.depth, k)
            self._cache.setdefault(key, out)
        return out


class _Localizer:
    def __init__(self, m: FinAModule, side: str):
        self.m = m
        self.alg: HeckeAlgebra = m.algebra
        self.chamber = _chamber_of_support(m)
        self.cb = ChamberBasis(self.alg, side, self.chamber)
        self.side = side
        self.d = m.dim
        self.a1_inv = m.field.inverse(m.action(self.cb.lam1))

    def action(self, y: ProPWeylElement) -> Matrix:
        """Block matrix of T_y on the basis M (x) B_v, v in W_0 order."""
        f, d, cb = self.m.field, self.d, self.cb
        size = len(cb.basis) * d
        out = f.zeros(size, size)
        for v in cb.basis:
            k, splits = cb.splits(y, v)
            a_inv_k = f.mpow(self.a1_inv, k)
            for v2, lam, c in splits:
                if self.side == "tensor":
                    block = f.matmul(a_inv_k, self.m.action(lam))
                    r, s = cb.index[v], cb.index[v2]
                else:
                    block = f.matmul(self.m.action(lam), a_inv_k)
                    r, s = cb.index[v2], cb.index[v]
                rows = slice(r * d, (r + 1) * d)
                cols = slice(s * d, (s + 1) * d)
                out[rows, cols] = f.madd(out[rows, cols], f.scale(c, block))
        return out

    def build(self, validate: bool = True) -> InducedModule:
        grp, cb = self.alg.group, self.cb
        gens = {gen.label: self.action(gen.element) for gen in grp.affine_generators}
        module = FinHModule(
            self.alg,
            len(cb.basis) * self.d,
            gens,
            self.action,
            validate=validate,
            name=f"{self.side}({self.m.name})",
        )
        logger.debug("prophecke: %s over %s chamber, localisation depth %d", self.side, self.chamber, cb.depth)
        return InducedModule(
            module=module,
            side=self.side,
            chamber=self.chamber,
            basis_elements=dict(cb.basis),
            source=self.m,
            unit=self._unit() if self.side == "tensor" else None,
            depths={"max_k": cb.depth},
        )

    def _unit(self) -> Matrix:
        """m -> m (x) 1 in the B-coordinates."""
        f, d, cb = self.m.field, self.d, self.cb
        out = f.zeros(d, len(cb.basis) * d)
        e = cb.index[self.alg.rd.identity]
        block = f.eye(d) if self.chamber == "antidominant" else self.a1_inv
        out[:, e * d : (e + 1) * d] = block
        return out


def tensor_h(m: FinAModule, validate: bool = True) -> InducedModule:
    """M (x)_A H, dimension |W_0| dim M.

    Raises:
        SupportError: if supp M is not the dominant or anti-dominant chamber.
    """
    return _Localizer(m, "tensor").build(validate)


def hom_from_h(m: FinAModule, validate: bool = True) -> InducedModule:
    """Hom_A(H, M) realised by values at the basis B_v."""
    return _Localizer(m, "hom").build(validate)


def hom_embedding(n: FinHModule) -> Tuple[InducedModule, Matrix]:
    """N -> Hom_A(H, N|_A), x -> (X -> x X), as a matrix in the B-coordinates."""
    ind = hom_from_h(n.restrict_to_a())
    f, d = n.field, n.dim
    blocks = []
    for v, b in ind.basis_elements.items():
        blocks.append(n.t_star_action(b) if ind.chamber == "dominant" else n.t_action(b))
    return ind, np.concatenate(blocks, axis=1) if blocks else f.zeros(d, 0)


def tensor_counit(n: FinHModule) -> Tuple[InducedModule, Matrix]:
    """N|_A (x)_A H -> N, x (x) X -> x X."""
    ind = tensor_h(n.restrict_to_a())
    blocks = []
    for v, b in ind.basis_elements.items():
        blocks.append(n.t_star_action(b) if ind.chamber == "dominant" else n.t_action(b))
    return ind, np.concatenate(blocks, axis=0)


def is_equivariant(p: Matrix, m1: FinHModule, m2: FinHModule) -> bool:
    """rho1(X) P = P rho2(X) on the algebra generators."""
    f = m1.field
    for x in m1.algebra.generators():
        if not np.array_equal(f.matmul(m1.h_action(x), p), f.matmul(p, m2.h_action(x))):
            return False
    return True


@dataclass
class IsoResult:
    found: bool
    intertwiner: Optional[Matrix]
    hom_dim: int
    tensor_dim: int
    diagnostics: str = ""


def check_iso_hom_tensor(m: FinAModule, seed: int = 0) -> IsoResult:
    """Hom_A(H, M) ~ n_{w_Delta} M (x)_A H for supp M = Lambda^+(1).

    Raises:
        SupportError: if supp M is not the dominant chamber.
    """
    rd = m.algebra.rd
    if m.require_support() != rd.identity:
        raise SupportError("check_iso_hom_tensor needs supp M = Lambda^+(1)")
    hom = hom_from_h(m).module
    ten = tensor_h(twist(m, rd.longest_element())).module
    if hom.dim != ten.dim:
        return IsoResult(False, None, hom.dim, ten.dim, "dimension mismatch")
    p = find_h_isomorphism(hom, ten, seed=seed)
    if p is None:
        return IsoResult(False, None, hom.dim, ten.dim, "no invertible H-intertwiner in the solution space")
    return IsoResult(True, p, hom.dim, ten.dim)
