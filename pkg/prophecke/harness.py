"""Lemma suites over a configured group: context, built-in module corpus and a threaded runner.

Every suite returns Reports and never raises for a mathematical disagreement:
a disagreement is a ``fail`` with a witness, an exhausted truncation is
``inconclusive`` with the bound that ran out.
"""

import itertools
import logging
import os
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from prophecke.field import GaloisField
from prophecke.hecke import HeckeAlgebra
from prophecke.models import Config, ModuleKind, ModuleSpec, Report, RunSummary, Verdict
from prophecke.modules import (
    FinAModule,
    FinHModule,
    IntertwinerSearchError,
    Matrix,
    ModuleValidationError,
    SupportError,
    chamber_seeds,
    change_basis_a,
    change_basis_h,
    character_module,
    decompose_by_support,
    direct_sum_a,
    direct_sum_h,
    dual_a,
    dual_h,
    h_endomorphisms,
    hypothesis_trivial_on_lambda_prime,
    in_category_c,
    isotypic,
    one_dim_h_module,
    switch_check,
    twist,
)
from prophecke.parabolic import (
    a_wj_embedding_check,
    a_wj_inclusion_check,
    empty_levi_identities,
    extend_to_levi,
    extension_is_unique,
    extension_restricts,
    levi_algebra,
    levi_localization_check,
)
from prophecke.prop_weyl import (
    Character,
    LambdaElement,
    ProPWeylGroup,
    ZKappaGroup,
    all_characters,
    character_from_exponents,
    trivial_character,
)
from prophecke.root_system import RootDatum, WeylElement, preset
from prophecke.tensor_hom import LocalizationError, check_iso_hom_tensor, is_equivariant, tensor_h
from prophecke.universal import (
    Membership,
    OmegaComponent,
    OmegaError,
    OmegaSeries,
    TruncationError,
    UniversalModule,
    c_w_regular_check,
    check_universal_tensor,
    quotient_identity_check,
    upward_closure,
    x_center_check,
    x_j_chain_check,
)

logger = logging.getLogger(__name__)

DEFAULT_THREADS = 4
C_FAMILY_MIN = 50
C_FAMILY_MAX_DIM = 6
CHARACTER_LIMIT = 4
TENSOR_SOURCES = 4


class UnknownSuiteError(ValueError):
    """Raised when a suite name is not in the registry."""

    pass


# --------------------------------------------------------------------------- #
# Context                                                                     #
# --------------------------------------------------------------------------- #


@dataclass
class Context:
    config: Config
    rd: RootDatum
    zk: ZKappaGroup
    group: ProPWeylGroup
    field: GaloisField
    algebra: HeckeAlgebra
    psi: Character
    a_modules: Dict[str, FinAModule] = field(default_factory=dict)
    h_modules: Dict[str, FinHModule] = field(default_factory=dict)

    def rng(self, salt: str) -> random.Random:
        """A generator that depends only on the config seed and the suite."""
        return random.Random(f"{self.config.seed}:{salt}")


def build_root_datum(cfg: Config) -> RootDatum:
    if isinstance(cfg.group, str):
        return preset(cfg.group)
    return RootDatum(cfg.group.simple_roots, cfg.group.simple_coroots)


def build_context(cfg: Config) -> Context:
    """Root datum, Z_kappa, W(1), the field and H for a validated config.

    Raises:
        ValueError: any of the domain errors raised while building the objects.
    """
    rd = build_root_datum(cfg)
    fld = GaloisField(cfg.field_order)
    if cfg.zkappa is not None:
        z = cfg.zkappa
        zk = ZKappaGroup(rd, z.orders, z.reflection_matrices, z.coroot_generators, fld.p)
    else:
        zk = ZKappaGroup.default(rd, cfg.q, fld.p)
    group = ProPWeylGroup(rd, cfg.q, zk, ns_squares=cfg.ns_squares, seed=cfg.seed)
    algebra = HeckeAlgebra(group, fld)
    if cfg.omega.exponents:
        psi = character_from_exponents(zk, fld, cfg.omega.exponents)
    else:
        psi = trivial_character(zk)
    ctx = Context(cfg, rd, zk, group, fld, algebra, psi)
    for spec in cfg.modules:
        module = build_module(ctx, spec)
        if isinstance(module, FinHModule):
            ctx.h_modules[spec.name] = module
        else:
            ctx.a_modules[spec.name] = module
    logger.info(
        "prophecke: context %s q=%d GF(%d), |W_0|=%d, %d config modules",
        rd.name,
        cfg.q,
        fld.order,
        len(rd.weyl),
        len(cfg.modules),
    )
    return ctx


def build_module(ctx: Context, spec: ModuleSpec):
    """A FinAModule or FinHModule from its config entry."""
    alg, fld = ctx.algebra, ctx.field
    psi = character_from_exponents(ctx.zk, fld, spec.psi) if spec.psi else None
    if spec.kind == ModuleKind.h_character:
        eps = fld.neg(fld.one) if spec.eps == -1 else 0
        return one_dim_h_module(alg, eps, psi, spec.a, name=spec.name)
    if spec.kind == ModuleKind.a_character:
        return character_module(alg, ctx.rd.from_word(spec.chamber), psi, spec.a, name=spec.name)
    seeds = chamber_seeds(alg)
    if len(spec.seeds) != len(seeds):
        raise ModuleValidationError(f"module {spec.name}: {len(spec.seeds)} seed matrices, expected {len(seeds)}")
    return FinAModule(alg, spec.dim, {lam: np.array(mat, dtype=np.int64) for lam, mat in zip(seeds, spec.seeds)}, name=spec.name)


# --------------------------------------------------------------------------- #
# Built-in corpus                                                             #
# --------------------------------------------------------------------------- #


def random_invertible(fld: GaloisField, d: int, rng: random.Random) -> Matrix:
    while True:
        mat = np.array([[rng.randrange(fld.order) for _ in range(d)] for _ in range(d)], dtype=np.int64)
        if fld.is_invertible(mat):
            return mat


@dataclass
class Corpus:
    h_modules: List[FinHModule]
    a_modules: List[FinAModule]
    family_source: Optional[Callable[[], List[FinHModule]]] = field(default=None, repr=False)
    _family: Optional[List[FinHModule]] = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def a_supported_on(self, w: WeylElement) -> List[FinAModule]:
        return [m for m in self.a_modules if m.support_of() == w]

    def category_c_family(self) -> List[FinHModule]:
        """The seeded family of modules in C, built on first use."""
        with self._lock:
            if self._family is None:
                self._family = self.family_source() if self.family_source else []
            return self._family


def _eigenvalues(ctx: Context) -> Tuple[int, ...]:
    # a nontrivial translation eigenvalue where the field has one
    g = ctx.field.generator if ctx.field.order > 2 else 1
    return tuple(g for _ in range(ctx.rd.lattice_rank))


def _h_characters(ctx: Context) -> List[FinHModule]:
    """One-dimensional H-modules: psi trivial on every alpha^vee(k^x), a trivial on every coroot."""
    alg, fld, rd = ctx.algebra, ctx.field, ctx.rd
    minus_one = fld.neg(fld.one)
    lambda_prime = [t for i in range(rd.rank_ss) for t in ctx.group.lambda_prime_alpha(i).zkappa_part]
    psis = [psi for psi in all_characters(ctx.zk, fld) if all(psi.value(fld, t) == fld.one for t in lambda_prime)]
    eigenvalues = [None]
    a = _eigenvalues(ctx)
    if all(_pairing_value(fld, a, c) == fld.one for c in rd.simple_coroots):
        eigenvalues.append(a)
    out = []
    for a in eigenvalues:
        for j, psi in enumerate(psis[:CHARACTER_LIMIT]):
            for eps, tag in ((0, "triv"), (minus_one, "sign")):
                suffix = "" if a is None and psi.is_trivial() else f"_{j}{'a' if a else ''}"
                out.append(one_dim_h_module(alg, eps, psi, a, name=f"{tag}{suffix}"))
    return out


def _pairing_value(fld: GaloisField, a: Sequence[int], coroot: Sequence[int]) -> int:
    v = fld.one
    for ak, ck in zip(a, coroot):
        v = fld.mul(v, fld.pow(ak, ck))
    return v


def category_c_family(ctx: Context, a_modules: Sequence[FinAModule]) -> List[FinHModule]:
    """Seeded modules in C of dimensions 1 to C_FAMILY_MAX_DIM.

    Each is a basis change of a direct sum drawn from the one-dimensional
    H-modules and the small induced modules M (x)_A H. max(C_FAMILY_MIN,
    samples) of them are kept, each checked with in_category_c.
    """
    fld, rd = ctx.field, ctx.rd
    rng = ctx.rng("category-c")
    pool = [m for m in _h_characters(ctx) if in_category_c(m)]
    n = len(rd.weyl)
    for m in [m for m in a_modules if n * m.dim <= C_FAMILY_MAX_DIM][:TENSOR_SOURCES]:
        try:
            induced = tensor_h(m).module
        except (LocalizationError, SupportError):
            continue
        if in_category_c(induced):
            induced.name = f"ind({m.name})"
            pool.append(induced)
    count = max(C_FAMILY_MIN, ctx.config.bounds.samples)
    out: List[FinHModule] = []
    attempts = 0
    while len(out) < count and attempts < 4 * count:
        d = 1 + attempts % C_FAMILY_MAX_DIM
        attempts += 1
        parts: List[FinHModule] = []
        left = d
        while left:
            part = rng.choice([m for m in pool if m.dim <= left])
            parts.append(part)
            left -= part.dim
        summed = direct_sum_h(*parts, validate=False) if len(parts) > 1 else parts[0]
        m = change_basis_h(summed, random_invertible(fld, d, rng), validate=False)
        m.name = f"c{len(out):03d}[{'+'.join(p.name for p in parts)}]"
        if in_category_c(m):
            out.append(m)
    logger.debug("prophecke: category C family of %d modules from a pool of %d", len(out), len(pool))
    return out


def build_corpus(ctx: Context) -> Corpus:
    """1- and 2-dimensional modules: characters, direct sums and seeded basis changes, plus the config modules.

    The larger family of modules in C is attached lazily, see category_c_family.
    """
    alg, fld, rd = ctx.algebra, ctx.field, ctx.rd
    rng = ctx.rng("corpus")
    minus_one = fld.neg(fld.one)
    triv = one_dim_h_module(alg, 0, name="triv")
    sign = one_dim_h_module(alg, minus_one, name="sign")
    h_mods = [triv, sign, direct_sum_h(triv, sign)]
    conj_h = change_basis_h(h_mods[-1], random_invertible(fld, 2, rng))
    conj_h.name = "triv+sign'"
    h_mods.append(conj_h)
    h_mods += list(ctx.h_modules.values())

    characters = [c for c in all_characters(ctx.zk, fld) if not c.is_trivial()]
    a_mods: List[FinAModule] = []
    for w, tag in ((rd.identity, "dom"), (rd.longest_element(), "anti")):
        base = character_module(alg, w, name=f"chi_{tag}")
        shifted = character_module(alg, w, a=_eigenvalues(ctx), name=f"chi_{tag}_a")
        a_mods += [base, shifted]
        if characters:
            a_mods.append(character_module(alg, w, psi=characters[0], name=f"chi_{tag}_psi"))
        pair = direct_sum_a(base, shifted)
        conj_a = change_basis_a(pair, random_invertible(fld, 2, rng))
        conj_a.name = f"{pair.name}'"
        a_mods += [pair, conj_a]
    a_mods += list(ctx.a_modules.values())
    logger.debug("prophecke: corpus with %d H-modules, %d A-modules", len(h_mods), len(a_mods))
    return Corpus(h_mods, a_mods, family_source=lambda: category_c_family(ctx, a_mods))


# --------------------------------------------------------------------------- #
# Registry                                                                    #
# --------------------------------------------------------------------------- #

SuiteFn = Callable[[Context, Corpus], List[Report]]


@dataclass(frozen=True)
class Suite:
    name: str
    statement: str
    run: SuiteFn


SUITES: Dict[str, Suite] = {}


def suite(name: str, statement: str) -> Callable[[SuiteFn], SuiteFn]:
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = Suite(name, statement, fn)
        return fn

    return register


def list_suites() -> List[Tuple[str, str]]:
    return [(s.name, s.statement) for s in SUITES.values()]


def _report(suite_name: str, instance: str, failure: Optional[str] = None, **details) -> Report:
    verdict = Verdict.passed if failure is None else Verdict.failed
    return Report(suite=suite_name, instance=instance, verdict=verdict, witness=failure, details=details)


def _inconclusive(suite_name: str, instance: str, bound: str, **details) -> Report:
    return Report(suite=suite_name, instance=instance, verdict=Verdict.inconclusive, bound=bound, details=details)


def _sample(rng: random.Random, pool: Sequence, arity: int, limit: int) -> List[tuple]:
    """Every arity-tuple from pool when there are at most limit of them, else limit seeded draws."""
    if len(pool) ** arity <= limit:
        return list(itertools.product(pool, repeat=arity))
    return [tuple(rng.choice(pool) for _ in range(arity)) for _ in range(limit)]


def _box_lambdas(ctx: Context, radius: int, with_zkappa: bool = False):
    ts = ctx.zk.elements() if with_zkappa else [ctx.zk.zero]
    return [LambdaElement(tuple(v), t) for v in ctx.rd.box_points(radius) for t in ts]


def _subsets(n: int) -> List[Tuple[int, ...]]:
    return [c for k in range(n + 1) for c in itertools.combinations(range(n), k)]


# --------------------------------------------------------------------------- #
# Algebra suites                                                              #
# --------------------------------------------------------------------------- #


@suite("assoc", "H is associative; T_n^2 = c_n T_n; T_x T_y = T_xy when lengths add")
def _assoc(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, b = ctx.algebra, ctx.group, ctx.config.bounds
    rng = ctx.rng("assoc")
    pool = grp.enumerate_by_length(b.max_length, radius=1, with_zkappa=True)
    triples = _sample(rng, pool, 3, b.samples)
    failure = None
    for x, y, z in triples:
        tx, ty, tz = alg.t(x), alg.t(y), alg.t(z)
        if alg.mul_t(alg.mul_t(tx, ty), tz) != alg.mul_t(tx, alg.mul_t(ty, tz)):
            failure = f"(T_{grp.format(x)} T_{grp.format(y)}) T_{grp.format(z)} differs from the other bracketing"
            break
    reports = [_report("assoc", "triples", failure, checked=len(triples), max_length=b.max_length)]

    failure = None
    for gen in grp.affine_generators:
        tn = alg.t(gen.element)
        if alg.mul_t(tn, tn) != alg.mul_t(alg.c_element(gen), tn):
            failure = f"T_{gen.label}^2 != c T_{gen.label}"
            break
    reports.append(_report("assoc", "quadratic", failure, generators=len(grp.affine_generators)))

    failure = None
    pairs = _sample(rng, pool, 2, b.samples)
    for x, y in pairs:
        xy = grp.multiply(x, y)
        if grp.length(xy) == grp.length(x) + grp.length(y) and alg.mul_t(alg.t(x), alg.t(y)) != alg.t(xy):
            failure = f"T_{grp.format(x)} T_{grp.format(y)} != T_{grp.format(xy)}"
            break
    reports.append(_report("assoc", "length-additive", failure, checked=len(pairs)))
    return reports


@suite("star-braid", "T*_x T*_y = T*_xy when lengths add; T* is unitriangular; T*-coordinate products agree with T")
def _star_braid(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, b = ctx.algebra, ctx.group, ctx.config.bounds
    rng = ctx.rng("star-braid")
    pool = grp.enumerate_by_length(b.max_length, radius=1, with_zkappa=True)
    reports = []

    failure = None
    for g in pool:
        star = alg.t_star(g)
        lower = [h for h in star.terms if h != g and grp.length(h) >= grp.length(g)]
        if star.coefficient(g) != 1 or lower:
            failure = f"T*_{grp.format(g)} is not T_{grp.format(g)} plus shorter terms"
            break
    reports.append(_report("star-braid", "unitriangular", failure, checked=len(pool)))

    braid, cross = None, None
    pairs = _sample(rng, pool, 2, b.samples)
    for x, y in pairs:
        xy = grp.multiply(x, y)
        product = alg.mul_t(alg.t_star(x), alg.t_star(y))
        if braid is None and grp.length(xy) == grp.length(x) + grp.length(y) and product != alg.t_star(xy):
            braid = f"T*_{grp.format(x)} T*_{grp.format(y)} != T*_{grp.format(xy)}"
        if cross is None and alg.from_star_coordinates(alg.mul_star({x: 1}, {y: 1})) != product:
            cross = f"T*-coordinate product of {grp.format(x)}, {grp.format(y)} disagrees with the T product"
    reports.append(_report("star-braid", "length-additive", braid, checked=len(pairs)))
    reports.append(_report("star-braid", "star-coordinates", cross, checked=len(pairs)))
    return reports


@suite("e-basis", "E(lambda) is independent of the decomposition and unitriangular against T_lambda")
def _e_basis(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, b = ctx.algebra, ctx.group, ctx.config.bounds
    lams = _box_lambdas(ctx, b.nu_height, with_zkappa=True)
    split_failure, tri_failure = None, None
    splits = 0
    for lam in lams:
        e = alg.e_of(lam)
        g = grp.from_lambda(lam)
        for l1, l2 in alg.splittings(lam):
            splits += 1
            if split_failure is None and alg.e_of_split(l1, l2) != e:
                split_failure = f"E({lam.mu}, {lam.t}) != T_({l1.mu}) T*_({l2.mu})"
        lower = [h for h in e.terms if h != g and grp.length(h) >= grp.length(g)]
        if tri_failure is None and (e.coefficient(g) != 1 or lower):
            tri_failure = f"E({lam.mu}, {lam.t}) is not T_lambda plus shorter terms"
    return [
        _report("e-basis", "decomposition", split_failure, lambdas=len(lams), splittings=splits),
        _report("e-basis", "triangular", tri_failure, lambdas=len(lams)),
    ]


@suite("a-product", "E(l1) E(l2) = E(l1 l2) in a common closed chamber and 0 otherwise; H = sum_w A T_(n_w)")
def _a_product(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, b = ctx.algebra, ctx.group, ctx.config.bounds
    rng = ctx.rng("a-product")
    lams = _box_lambdas(ctx, b.nu_height, with_zkappa=True)
    pairs = _sample(rng, lams, 2, b.samples)
    failure = None
    for l1, l2 in pairs:
        oracle = alg.a_to_hecke(alg.a_mul(alg.e(l1), alg.e(l2)))
        if alg.mul_t(alg.e_of(l1), alg.e_of(l2)) != oracle:
            failure = f"E({l1.mu}, {l1.t}) E({l2.mu}, {l2.t}) disagrees with the chamber rule"
            break
    reports = [_report("a-product", "chamber-rule", failure, checked=len(pairs))]

    failure = None
    elements = grp.enumerate_by_length(min(b.max_length, 2), radius=1)
    for g in elements:
        x = alg.t(g)
        if alg.from_a_coords(alg.a_coords(x)) != x:
            failure = f"A-coordinates of T_{grp.format(g)} do not reassemble it"
            break
    reports.append(_report("a-product", "a-coordinates", failure, checked=len(elements)))
    return reports


@suite("center", "z_lambda commutes with every algebra generator")
def _center(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, b = ctx.algebra, ctx.group, ctx.config.bounds
    gens = alg.generators(b.box_radius)
    reports = []
    for v in ctx.rd.box_points(b.nu_height):
        lam = grp.lambda_s_members(v)
        z = alg.z_of(lam)
        bad = next((g for g in gens if not alg.commutes(z, g)), None)
        failure = None if bad is None else f"z_{lam.mu} does not commute with {alg.format(bad)}"
        reports.append(_report("center", f"z{list(lam.mu)}", failure, orbit=len(grp.orbit(lam))))
    return reports


@suite("center-mult", "z_lambda z_mu = z_(lambda mu) for lambda, mu in a closed chamber with nu(lambda) regular")
def _center_mult(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, rd, b = ctx.algebra, ctx.group, ctx.rd, ctx.config.bounds
    dominant = [tuple(v) for v in rd.box_points(b.nu_height) if rd.is_dominant(v)]
    reports = []
    for v1 in dominant:
        if not rd.is_regular(v1):
            continue
        for v2 in dominant:
            l1, l2 = grp.lambda_s_members(v1), grp.lambda_s_members(v2)
            lhs = alg.mul_t(alg.z_of(l1), alg.z_of(l2))
            failure = None if lhs == alg.z_of(alg.lam_mul(l1, l2)) else f"z_{v1} z_{v2} != z_{tuple(a + c for a, c in zip(v1, v2))}"
            reports.append(_report("center-mult", f"z{list(v1)}*z{list(v2)}", failure))
    if not reports:
        reports.append(_inconclusive("center-mult", "box", f"no regular dominant vector at nu_height={b.nu_height}"))
    return reports


@suite("involutions", "f^2 = id; f(E(lambda)) = (-1)^l(lambda) E(lambda^-1); zeta anti-multiplicative; iota multiplicative")
def _involutions(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, grp, fld, b = ctx.algebra, ctx.group, ctx.field, ctx.config.bounds
    rng = ctx.rng("involutions")
    pool = grp.enumerate_by_length(b.max_length, radius=1, with_zkappa=True)
    failure = next(
        (f"f^2(T_{grp.format(g)}) != T_{grp.format(g)}" for g in pool if alg.f_inv(alg.f_inv(alg.t(g))) != alg.t(g)),
        None,
    )
    reports = [_report("involutions", "f-squared", failure, checked=len(pool))]

    failure = None
    lams = _box_lambdas(ctx, b.nu_height, with_zkappa=True)
    for lam in lams:
        expected = alg.e_of(alg.lam_inverse(lam)).scale(fld.sign(alg.lam_length(lam)))
        if alg.f_inv(alg.e_of(lam)) != expected:
            failure = f"f(E({lam.mu}, {lam.t})) != (-1)^l E(lambda^-1)"
            break
    reports.append(_report("involutions", "f-on-E", failure, checked=len(lams)))

    zeta_failure, iota_failure = None, None
    pairs = _sample(rng, pool, 2, b.samples)
    for x, y in pairs:
        tx, ty = alg.t(x), alg.t(y)
        xy = alg.mul_t(tx, ty)
        if zeta_failure is None and alg.zeta(xy) != alg.mul_t(alg.zeta(ty), alg.zeta(tx)):
            zeta_failure = f"zeta(T_{grp.format(x)} T_{grp.format(y)}) != zeta(T_y) zeta(T_x)"
        if iota_failure is None and alg.iota(xy) != alg.mul_t(alg.iota(tx), alg.iota(ty)):
            iota_failure = f"iota(T_{grp.format(x)} T_{grp.format(y)}) != iota(T_x) iota(T_y)"
    reports.append(_report("involutions", "zeta", zeta_failure, checked=len(pairs)))
    reports.append(_report("involutions", "iota", iota_failure, checked=len(pairs)))
    return reports


# --------------------------------------------------------------------------- #
# Module suites                                                               #
# --------------------------------------------------------------------------- #


def _guarded(suite_name: str, instance: str, check: Callable[[], Report]) -> Report:
    """Run one instance; an exhausted bound is inconclusive, any other domain error a fail."""
    try:
        return check()
    except (LocalizationError, TruncationError, IntertwinerSearchError) as exc:
        return _inconclusive(suite_name, instance, str(exc))
    except ValueError as exc:
        return _report(suite_name, instance, f"{type(exc).__name__}: {exc}")


def _stable(fld: GaloisField, basis: Matrix, mats: Sequence[Matrix]) -> bool:
    """The row space of basis is preserved by every matrix."""
    r = fld.rank(basis)
    return all(fld.rank(np.concatenate([basis, fld.matmul(basis, x)], axis=0)) == r for x in mats)


def _same_action(first: FinAModule, second: FinAModule) -> bool:
    return all(np.array_equal(first.action(lam), second.action(lam)) for lam in first.seeds)


@suite("support-decomp", "A module in C is the direct sum of its support pieces M E(w lambda_0), functorially")
def _support_decomp(ctx: Context, corpus: Corpus) -> List[Report]:
    fld = ctx.field
    rng = ctx.rng("support-decomp")

    def check(m: FinHModule) -> Report:
        if not in_category_c(m):
            return _report("support-decomp", m.name, None, in_category_c=False)
        pieces = decompose_by_support(m)
        for w, (basis, sub) in pieces.items():
            if sub is not None and sub.support_of() != w:
                return _report("support-decomp", m.name, f"piece at {w} has support {sub.support_of()}")
        endo = h_endomorphisms(m)
        coeffs = np.array([rng.randrange(fld.order) for _ in range(endo.shape[0])], dtype=np.int64)
        p = fld.matvec(coeffs, endo).reshape(m.dim, m.dim) if endo.shape[0] else fld.eye(m.dim)
        for w, (basis, _) in pieces.items():
            if basis.shape[0] and not _stable(fld, basis, [p]):
                return _report("support-decomp", m.name, f"an endomorphism moves the piece at {w}")
        dims = {str(w): int(basis.shape[0]) for w, (basis, _) in pieces.items() if basis.shape[0]}
        return _report("support-decomp", m.name, None, dims=dims, endomorphisms=int(endo.shape[0]))

    mods = list(corpus.h_modules) + corpus.category_c_family()
    return [_guarded("support-decomp", m.name, lambda m=m: check(m)) for m in mods]


@suite("twist", "supp(n_w M) = w supp M and n_w2 (n_w1 M) = n_(w2 w1) M")
def _twist(ctx: Context, corpus: Corpus) -> List[Report]:
    rd, b = ctx.rd, ctx.config.bounds
    rng = ctx.rng("twist")
    pairs = _sample(rng, list(rd.weyl), 2, b.samples)

    def check(m: FinAModule) -> Report:
        s = m.support_of()
        for w in rd.weyl if s is not None else ():
            moved = twist(m, w).support_of()
            if moved != rd.mul(w, s):
                return _report("twist", m.name, f"supp(n_{w} M) = {moved}, expected {rd.mul(w, s)}")
        for w1, w2 in pairs:
            if not _same_action(twist(twist(m, w1), w2), twist(m, rd.mul(w2, w1))):
                return _report("twist", m.name, f"n_{w2} (n_{w1} M) differs from n_({rd.mul(w2, w1)}) M")
        return _report("twist", m.name, None, support=str(s), compositions=len(pairs))

    return [_guarded("twist", m.name, lambda m=m: check(m)) for m in corpus.a_modules]


@suite("isotypic", "M = sum_omega M_omega with every piece stable under the action")
def _isotypic(ctx: Context, corpus: Corpus) -> List[Report]:
    fld, alg = ctx.field, ctx.algebra

    def check(m) -> Report:
        pieces = isotypic(m)
        if isinstance(m, FinHModule):
            mats = [m.h_action(x) for x in alg.generators(ctx.config.bounds.box_radius)]
        else:
            mats = list(m.seeds.values())
        for omega, basis in pieces.items():
            if not _stable(fld, basis, mats):
                return _report("isotypic", m.name, f"piece for {omega.representative.values} is not stable")
        return _report("isotypic", m.name, None, pieces=len(pieces))

    mods = list(corpus.h_modules) + list(corpus.a_modules)
    return [_guarded("isotypic", m.name, lambda m=m: check(m)) for m in mods]


@suite("hom-tensor", "dim M (x)_A H = |W_0| dim M, the unit is injective, Hom_A(H, n_(w_Delta) M) ~ M (x)_A H")
def _hom_tensor(ctx: Context, corpus: Corpus) -> List[Report]:
    rd = ctx.rd
    n = len(rd.weyl)

    def check(m: FinAModule) -> Report:
        ind = tensor_h(m)
        if ind.dim != n * m.dim:
            return _report("hom-tensor", m.name, f"dim M (x)_A H = {ind.dim}, expected {n * m.dim}")
        if ctx.field.rank(ind.unit) != m.dim:
            return _report("hom-tensor", m.name, "unit M -> M (x)_A H is not injective")
        details = {"dim": ind.dim, "depth": ind.depths.get("max_k", 0)}
        if m.require_support() == rd.identity:
            res = check_iso_hom_tensor(m, seed=ctx.config.seed)
            if not res.found:
                return _report("hom-tensor", m.name, res.diagnostics, **details)
            details["iso"] = True
        return _report("hom-tensor", m.name, None, **details)

    mods = corpus.a_supported_on(rd.identity) + corpus.a_supported_on(rd.longest_element())
    return [_guarded("hom-tensor", m.name, lambda m=m: check(m)) for m in mods]


@suite("switch-aw", "Hom_A(M, N) = Hom_(A_w)(M, N) for w = supp N")
def _switch_aw(ctx: Context, corpus: Corpus) -> List[Report]:
    def check(target: FinAModule) -> Report:
        target.require_support()
        for source in corpus.a_modules:
            full, partial = switch_check(source, target)
            if full != partial:
                return _report("switch-aw", target.name, f"from {source.name}: dim Hom_A = {full}, dim Hom_A_w = {partial}")
        return _report("switch-aw", target.name, None, sources=len(corpus.a_modules))

    return [_guarded("switch-aw", m.name, lambda m=m: check(m)) for m in corpus.a_modules]


@suite("dual", "(M*)^f is a module, its bidual is M, and duality commutes with restriction to A")
def _dual(ctx: Context, corpus: Corpus) -> List[Report]:
    rd = ctx.rd
    w_delta = rd.longest_element()

    def check_h(m: FinHModule) -> Report:
        d = dual_h(m)
        if not is_equivariant(ctx.field.eye(m.dim), m, dual_h(d)):
            return _report("dual", m.name, "the bidual differs from M")
        if not _same_action(d.restrict_to_a(), dual_a(m.restrict_to_a())):
            return _report("dual", m.name, "(M*)^f restricted to A is not the dual of M restricted to A")
        return _report("dual", m.name, None)

    def check_a(m: FinAModule) -> Report:
        if not _same_action(dual_a(dual_a(m)), m):
            return _report("dual", m.name, "the bidual differs from M")
        s = m.support_of()
        if s is not None and dual_a(m).support_of() != rd.mul(s, w_delta):
            return _report("dual", m.name, f"supp(M*) = {dual_a(m).support_of()}, expected {rd.mul(s, w_delta)}")
        return _report("dual", m.name, None)

    reports = [_guarded("dual", m.name, lambda m=m: check_h(m)) for m in corpus.h_modules]
    reports += [_guarded("dual", m.name, lambda m=m: check_a(m)) for m in corpus.a_modules]
    return reports


# --------------------------------------------------------------------------- #
# Parabolic suites                                                            #
# --------------------------------------------------------------------------- #


@suite("extend-aj", "An A-module supported on w_J extends uniquely to A_J and the extension restricts back")
def _extend_aj(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, rd, b = ctx.algebra, ctx.rd, ctx.config.bounds
    reports = []
    for J in _subsets(rd.rank_ss):
        w_j = rd.longest_element(J)
        mods = [character_module(alg, w_j, a=_eigenvalues(ctx), name=f"chi_wJ{list(J)}")]
        mods += [m for m in corpus.a_supported_on(w_j)]

        def check(m: FinAModule, J=J) -> Report:
            ld = levi_algebra(alg, J)
            ok, why = extension_is_unique(m, ld, radius=b.nu_height)
            if ok:
                ok, why = extension_restricts(m, extend_to_levi(m, ld), radius=b.nu_height)
            return _report("extend-aj", f"J{list(J)}:{m.name}", why)

        reports += [_guarded("extend-aj", f"J{list(J)}:{m.name}", lambda m=m, check=check: check(m)) for m in mods]
    return reports


@suite("j-maps", "j_empty^+(H^+) = A_(w_Delta), j_empty^(-*)(H^-) = A_1, E(lambda) = j^(-*)(E^J(lambda)) on the chamber w_J")
def _j_maps(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, rd, b = ctx.algebra, ctx.rd, ctx.config.bounds
    reports = []
    identities = empty_levi_identities(alg, radius=b.nu_height)
    for variant, ok in sorted(identities.items()):
        reports.append(_report("j-maps", f"empty{variant}", None if ok else f"span of j^{variant} images differs from its A-chamber"))
    for J in _subsets(rd.rank_ss):

        def check(J=J) -> Report:
            ld = levi_algebra(alg, J)
            ok, why = a_wj_inclusion_check(ld, radius=b.nu_height)
            if ok:
                ok, why = a_wj_embedding_check(ld, radius=min(b.nu_height, 1))
            return _report("j-maps", f"J{list(J)}", why)

        reports.append(_guarded("j-maps", f"J{list(J)}", check))
    return reports


@suite("levi-localization", "Every T^J_w times a power of E^J(lambda_0) lies in H_J^-")
def _levi_localization(ctx: Context, corpus: Corpus) -> List[Report]:
    alg, rd, b = ctx.algebra, ctx.rd, ctx.config.bounds

    def check(J: Tuple[int, ...]) -> Report:
        wit = levi_localization_check(levi_algebra(alg, J), max_length=b.max_length)
        depth = max(wit.powers.values(), default=0)
        return _report("levi-localization", f"J{list(J)}", wit.failure, elements=len(wit.powers), max_power=depth)

    return [_guarded("levi-localization", f"J{list(J)}", lambda J=J: check(J)) for J in _subsets(rd.rank_ss)]


# --------------------------------------------------------------------------- #
# Universal module suites                                                     #
# --------------------------------------------------------------------------- #


def _universal(ctx: Context) -> UniversalModule:
    return UniversalModule(ctx.algebra, ctx.psi)


def _membership_report(suite_name: str, instance: str, mem: Membership) -> Report:
    if mem.found:
        return _report(suite_name, instance, None)
    return _inconclusive(suite_name, instance, mem.bound or "truncation")


def _psi_outside_hypothesis(ctx: Context, comp: OmegaComponent, suite_name: str) -> Optional[Report]:
    """tau_alpha needs psi trivial on every Z_kappa cap Lambda'_alpha(1)."""
    for i in range(ctx.rd.rank_ss):
        try:
            comp.check_lambda_prime(i)
        except OmegaError as exc:
            return _inconclusive(suite_name, "psi", f"hypothesis not met: {exc}")
    return None


@suite("xj-chain", "X_J' is contained in X_J for J in J'")
def _xj_chain(ctx: Context, corpus: Corpus) -> List[Report]:
    rd, b = ctx.rd, ctx.config.bounds
    um = _universal(ctx)
    reports = []
    for J in _subsets(rd.rank_ss):
        for J2 in _subsets(rd.rank_ss):
            if J == J2 or not set(J) <= set(J2):
                continue
            inst = f"J{list(J)}<J{list(J2)}"
            reports.append(
                _guarded("xj-chain", inst, lambda J=J, J2=J2, inst=inst: _membership_report(
                    "xj-chain", inst, x_j_chain_check(um, J, J2, radius=b.nu_height)
                ))
            )
    return reports


@suite("xj-center", "z_lambda acts on X_J as multiplication by a unit of C[Lambda(1)]_omega")
def _xj_center(ctx: Context, corpus: Corpus) -> List[Report]:
    rd, grp, b = ctx.rd, ctx.group, ctx.config.bounds
    um = _universal(ctx)
    lam = grp.lambda_s_members(rd.regular_dominant())

    def check(J: Tuple[int, ...]) -> Report:
        ok, why = x_center_check(um, J, lam, radius=min(b.nu_height, 1))
        return _report("xj-center", f"J{list(J)}", why)

    return [_guarded("xj-center", f"J{list(J)}", lambda J=J: check(J)) for J in _subsets(rd.rank_ss)]


@suite("tau-cw", "tau_alpha lies in C[Lambda(1)]_omega and does not depend on the lift; the factors of c_w commute")
def _tau_cw(ctx: Context, corpus: Corpus) -> List[Report]:
    rd = ctx.rd
    comp = OmegaComponent(ctx.algebra, ctx.psi)
    skipped = _psi_outside_hypothesis(ctx, comp, "tau-cw")
    if skipped:
        return [skipped]

    def check_root(i: int) -> Report:
        if not comp.tau_alpha_lift_independent(i):
            return _report("tau-cw", f"alpha{i + 1}", "tau_alpha depends on the lift")
        if not comp.in_component(comp.tau_alpha_literal(i)):
            return _report("tau-cw", f"alpha{i + 1}", "tau_alpha is not in C[Lambda(1)]_omega")
        return _report("tau-cw", f"alpha{i + 1}", None, tau=repr(comp.tau_alpha(i)))

    def check_cw() -> Report:
        sizes = {str(w): len(comp.c_w(w).terms) for w in rd.weyl}
        return _report("tau-cw", "c_w", None, terms=sizes)

    reports = [_guarded("tau-cw", f"alpha{i + 1}", lambda i=i: check_root(i)) for i in range(rd.rank_ss)]
    reports.append(_guarded("tau-cw", "c_w", check_cw))
    return reports


def _random_series(ctx: Context, rng: random.Random, radius: int) -> OmegaSeries:
    fld = ctx.field
    points = list(ctx.rd.box_points(radius))
    terms = {tuple(rng.choice(points)): rng.randrange(1, fld.order) for _ in range(rng.randint(1, 4))}
    return OmegaSeries(fld, terms)


@suite("cw-regular", "c_w is not a zero divisor: c_w f has the expected leading monomial")
def _cw_regular(ctx: Context, corpus: Corpus) -> List[Report]:
    rd, b = ctx.rd, ctx.config.bounds
    rng = ctx.rng("cw-regular")
    comp = OmegaComponent(ctx.algebra, ctx.psi)
    skipped = _psi_outside_hypothesis(ctx, comp, "cw-regular")
    if skipped:
        return [skipped]
    weyl = list(rd.weyl)

    def check() -> Report:
        for _ in range(b.samples):
            f = _random_series(ctx, rng, max(b.nu_height, 1))
            w = rng.choice(weyl)
            cert = c_w_regular_check(comp, w, f)
            if not cert.nonzero:
                return _report("cw-regular", "samples", f"c_{w} * {f!r} has leading {cert.leading}, expected {cert.expected_leading}")
        return _report("cw-regular", "samples", None, checked=b.samples)

    return [_guarded("cw-regular", "samples", check)]


@suite("filtration-quotient", "X_(Delta,A) / X_(Delta,A - w) = c_w (X_(empty,A) / X_(empty,A - w)) for each Bruhat step")
def _filtration_quotient(ctx: Context, corpus: Corpus) -> List[Report]:
    rd, b = ctx.rd, ctx.config.bounds
    um = _universal(ctx)
    skipped = _psi_outside_hypothesis(ctx, um.omega, "filtration-quotient")
    if skipped:
        return [skipped]

    def check(w: WeylElement) -> Report:
        cert = quotient_identity_check(um, upward_closure(um, w), w, radius=b.nu_height, shift_radius=min(b.nu_height, 1))
        inst = f"w={w}"
        if cert.verdict == "pass":
            return _report("filtration-quotient", inst, None, checked=cert.checked)
        if cert.verdict == "inconclusive":
            return _inconclusive("filtration-quotient", inst, cert.witness, checked=cert.checked)
        return _report("filtration-quotient", inst, cert.witness, checked=cert.checked)

    steps = sorted(rd.weyl, key=lambda w: (w.length, w.index))
    return [_guarded("filtration-quotient", f"w={w}", lambda w=w: check(w)) for w in steps]


@suite("unit-injectivity", "m -> m (x) g_Delta is injective and M (x)_R X_Delta ~ M (x)_A H")
def _unit_injectivity(ctx: Context, corpus: Corpus) -> List[Report]:
    rd, b = ctx.rd, ctx.config.bounds

    def eligible(m: FinAModule) -> bool:
        return len(isotypic(m)) == 1 and all(hypothesis_trivial_on_lambda_prime(m, i) for i in range(rd.rank_ss))

    def check(m: FinAModule) -> Report:
        ok, _, msg = check_universal_tensor(m, radius=max(b.nu_height, 1), seed=ctx.config.seed)
        return _report("unit-injectivity", m.name, None if ok else msg)

    mods = [m for m in corpus.a_supported_on(rd.identity) if eligible(m)]
    if not mods:
        return [_inconclusive("unit-injectivity", "corpus", "no corpus module meets the hypotheses")]
    return [_guarded("unit-injectivity", m.name, lambda m=m: check(m)) for m in mods]


# --------------------------------------------------------------------------- #
# Runner                                                                      #
# --------------------------------------------------------------------------- #


def thread_count() -> int:
    raw = os.environ.get("PROPHECKE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("prophecke: ignoring PROPHECKE_THREADS=%r", raw)
    return min(DEFAULT_THREADS, os.cpu_count() or 1)


def run_suite(ctx: Context, name: str, corpus: Optional[Corpus] = None, timings: bool = False) -> List[Report]:
    """Reports of one suite, sorted by instance.

    Raises:
        UnknownSuiteError: if name is not registered.
    """
    entry = SUITES.get(name)
    if entry is None:
        raise UnknownSuiteError(f"Unknown suite '{name}'. Valid: {sorted(SUITES)}")
    corpus = corpus or build_corpus(ctx)
    start = time.perf_counter()
    try:
        reports = entry.run(ctx, corpus)
    except (LocalizationError, TruncationError, IntertwinerSearchError) as exc:
        reports = [_inconclusive(name, "suite", str(exc))]
    except ValueError as exc:
        reports = [_report(name, "suite", f"{type(exc).__name__}: {exc}")]
    elapsed = time.perf_counter() - start
    if timings:
        reports = [r.model_copy(update={"seconds": round(elapsed, 3)}) for r in reports]
    counts = {v.value: sum(1 for r in reports if r.verdict == v) for v in Verdict}
    logger.info("prophecke: suite %s finished in %.2fs: %s", name, elapsed, counts)
    return sorted(reports, key=lambda r: r.instance)


def run_suites(cfg: Config, names: Sequence[str], timings: bool = False, threads: Optional[int] = None) -> RunSummary:
    """Run suites on a thread pool; the summary is ordered by suite then instance."""
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UnknownSuiteError(f"Unknown suite(s) {unknown}. Valid: {sorted(SUITES)}")
    ctx = build_context(cfg)
    corpus = build_corpus(ctx)
    workers = min(threads or thread_count(), max(len(names), 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda n: run_suite(ctx, n, corpus, timings), names))
    reports = [r for batch in results for r in batch]
    reports.sort(key=lambda r: (r.suite, r.instance))
    return RunSummary(suites=sorted(names), reports=reports)
