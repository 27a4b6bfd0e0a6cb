"""Based reduced root data of split groups and the finite Weyl group W_0.

The cocharacter lattice X_*(S) is Z^n. Roots are integer covectors, coroots
integer vectors, and ``cartan[i][j] = <alpha_j, alpha_i^vee>``. Roots are
generated in simple-root coordinates and indexed positives first (by height),
then negatives, so ``root_index[k + N]`` is ``-root[k]``.
"""

import itertools
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy

logger = logging.getLogger(__name__)

MAX_WEYL_ORDER = 100_000
MAX_ROOTS = 10_000

Vector = Tuple[int, ...]


class RootDatumError(ValueError):
    """Raised when lattice data do not form a based reduced root datum of
    finite type, or when an enumeration exceeds its configured bound."""

    pass


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _primitive(vec: Sequence) -> Vector:
    """Clear denominators and divide out the content of a rational vector."""
    fracs = [Fraction(str(x)) if not isinstance(x, (int, Fraction)) else Fraction(x) for x in vec]
    den = 1
    for f in fracs:
        den = den * f.denominator // sympy.igcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for v in ints:
        g = sympy.igcd(g, v)
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    # fix the sign so the first nonzero entry is positive
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class WeylElement:
    """An element of W_0: a reduced word plus its matrix on X_*(S).

    ``root_perm[k]`` is the index of w(root k). Equality and hashing use the
    word only (words are canonical per datum).
    """

    word: Tuple[int, ...]
    matrix: Tuple[Tuple[int, ...], ...] = field(compare=False, repr=False)
    root_perm: Tuple[int, ...] = field(compare=False, repr=False)
    index: int = field(compare=False, repr=False, default=0)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, v: Sequence) -> tuple:
        """w(v) for a (possibly rational) vector v in X_*(S)."""
        return tuple(_dot(row, v) for row in self.matrix)

    def is_identity(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        if not self.word:
            return "e"
        return "*".join(f"s{i + 1}" for i in self.word)


class RootDatum:
    """A based reduced root datum (X^*(S), Sigma, X_*(S), Sigma^vee).

    Args:
        simple_roots: covectors alpha_i on Z^n, one per simple root.
        simple_coroots: vectors alpha_i^vee in Z^n.
        name: optional display name (preset name).
        max_weyl_order: enumeration cap for W_0.
    """

    def __init__(
        self,
        simple_roots: Sequence[Sequence[int]],
        simple_coroots: Sequence[Sequence[int]],
        name: Optional[str] = None,
        max_weyl_order: int = MAX_WEYL_ORDER,
    ):
        if len(simple_roots) != len(simple_coroots):
            raise RootDatumError(
                f"{len(simple_roots)} simple roots but {len(simple_coroots)} simple coroots"
            )
        if not simple_roots and not simple_coroots:
            raise RootDatumError("Lattice rank cannot be inferred from an empty basis")
        self.simple_roots: Tuple[Vector, ...] = tuple(tuple(int(x) for x in r) for r in simple_roots)
        self.simple_coroots: Tuple[Vector, ...] = tuple(tuple(int(x) for x in c) for c in simple_coroots)
        self.rank_ss = len(self.simple_roots)
        self.lattice_rank = len((self.simple_roots or self.simple_coroots)[0])
        for k, vec in enumerate(self.simple_roots + self.simple_coroots):
            if len(vec) != self.lattice_rank:
                raise RootDatumError(f"Vector {k} has length {len(vec)}, expected {self.lattice_rank}")
        self.name = name or "custom"
        self.cartan: Tuple[Vector, ...] = tuple(
            tuple(_dot(self.simple_roots[j], self.simple_coroots[i]) for j in range(self.rank_ss))
            for i in range(self.rank_ss)
        )
        self._lock = threading.Lock()
        self._bruhat_cache: Dict[Tuple[int, int], bool] = {}
        self._generator_cache: Dict[int, Tuple[Vector, ...]] = {}
        self._validate_cartan()
        self._build_roots()
        self._build_weyl(max_weyl_order)
        self._build_components()
        logger.debug(
            "prophecke: root datum %s rank %d, %d positive roots, |W_0| = %d",
            self.name,
            self.rank_ss,
            self.n_positive,
            len(self.weyl),
        )

    @classmethod
    def empty(cls, lattice_rank: int, name: str = "torus") -> "RootDatum":
        """The root datum with no roots on Z^lattice_rank."""
        datum = cls.__new__(cls)
        datum.simple_roots = ()
        datum.simple_coroots = ()
        datum.rank_ss = 0
        datum.lattice_rank = lattice_rank
        datum.name = name
        datum.cartan = ()
        datum._lock = threading.Lock()
        datum._bruhat_cache = {}
        datum._generator_cache = {}
        datum._build_roots()
        datum._build_weyl(MAX_WEYL_ORDER)
        datum._build_components()
        return datum

    def __repr__(self) -> str:
        return f"RootDatum({self.name}, rank_ss={self.rank_ss}, lattice_rank={self.lattice_rank})"

    # ------------------------------------------------------------------ #
    # Construction                                                       #
    # ------------------------------------------------------------------ #

    def _validate_cartan(self) -> None:
        c = self.cartan
        for i in range(self.rank_ss):
            if c[i][i] != 2:
                raise RootDatumError(f"cartan[{i}][{i}] = {c[i][i]}, expected 2")
            for j in range(self.rank_ss):
                if i == j:
                    continue
                if c[i][j] > 0:
                    raise RootDatumError(f"cartan[{i}][{j}] = {c[i][j]} must be <= 0")
                if (c[i][j] == 0) != (c[j][i] == 0):
                    raise RootDatumError(
                        f"cartan[{i}][{j}] = {c[i][j]} but cartan[{j}][{i}] = {c[j][i]}"
                    )
                if c[i][j] * c[j][i] >= 4:
                    raise RootDatumError(
                        f"cartan[{i}][{j}] * cartan[{j}][{i}] = {c[i][j] * c[j][i]} is not of finite type"
                    )

    def _reflect_simple_coords(self, i: int, coords: Vector) -> Vector:
        pairing = sum(coords[j] * self.cartan[i][j] for j in range(self.rank_ss))
        out = list(coords)
        out[i] -= pairing
        return tuple(out)

    def _reflect_coroot_coords(self, i: int, coords: Vector) -> Vector:
        pairing = sum(coords[j] * self.cartan[j][i] for j in range(self.rank_ss))
        out = list(coords)
        out[i] -= pairing
        return tuple(out)

    def _build_roots(self) -> None:
        n = self.rank_ss
        found: Dict[Vector, Vector] = {}
        frontier = []
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            found[e] = e
            frontier.append(e)
        while frontier:
            nxt = []
            for c in frontier:
                d = found[c]
                for i in range(n):
                    c2 = self._reflect_simple_coords(i, c)
                    if c2 not in found:
                        found[c2] = self._reflect_coroot_coords(i, d)
                        nxt.append(c2)
                        if len(found) > MAX_ROOTS:
                            raise RootDatumError("Root closure exceeds bound; Cartan data not of finite type")
            frontier = nxt
        positives = sorted(
            (c for c in found if all(x >= 0 for x in c)), key=lambda c: (sum(c), tuple(-x for x in c))
        )
        if 2 * len(positives) != len(found) or any(
            not (all(x >= 0 for x in c) or all(x <= 0 for x in c)) for c in found
        ):
            raise RootDatumError("Roots do not split into positive and negative roots")
        self.n_positive = len(positives)
        coords = positives + [tuple(-x for x in c) for c in positives]
        self.root_coords: Tuple[Vector, ...] = tuple(coords)
        self.coroot_coords: Tuple[Vector, ...] = tuple(found[c] for c in coords)
        self._root_lookup = {c: k for k, c in enumerate(coords)}
        lat = range(self.lattice_rank)
        self.roots: Tuple[Vector, ...] = tuple(
            tuple(sum(c[j] * self.simple_roots[j][a] for j in range(n)) for a in lat) for c in coords
        )
        self.coroots: Tuple[Vector, ...] = tuple(
            tuple(sum(d[j] * self.simple_coroots[j][a] for j in range(n)) for a in lat)
            for d in self.coroot_coords
        )
        self.simple_index: Tuple[int, ...] = tuple(
            self._root_lookup[tuple(1 if j == i else 0 for j in range(n))] for i in range(n)
        )
        self._simple_perms = tuple(
            tuple(self._root_lookup[self._reflect_simple_coords(i, c)] for c in coords) for i in range(n)
        )
        self._simple_mats = tuple(
            tuple(
                tuple(
                    (1 if a == b else 0) - self.simple_coroots[i][a] * self.simple_roots[i][b]
                    for b in lat
                )
                for a in lat
            )
            for i in range(n)
        )

    def _build_weyl(self, cap: int) -> None:
        n_roots = len(self.root_coords)
        lat = self.lattice_rank
        identity = WeylElement(
            word=(),
            matrix=tuple(tuple(1 if a == b else 0 for b in range(lat)) for a in range(lat)),
            root_perm=tuple(range(n_roots)),
            index=0,
        )
        elements: List[WeylElement] = [identity]
        by_perm: Dict[Tuple[int, ...], WeylElement] = {identity.root_perm: identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.rank_ss):
                    perm = tuple(w.root_perm[k] for k in self._simple_perms[i])
                    if perm in by_perm:
                        continue
                    mat = _matmul(w.matrix, self._simple_mats[i])
                    el = WeylElement(word=w.word + (i,), matrix=mat, root_perm=perm, index=len(elements))
                    elements.append(el)
                    by_perm[perm] = el
                    nxt.append(el)
                    if len(elements) > cap:
                        raise RootDatumError(f"Weyl group enumeration exceeds bound {cap}")
            frontier = nxt
        for w in elements:
            if self.inversion_count_of(w) != w.length:
                raise RootDatumError(f"Word {w.word} is not reduced")
        self.weyl: Tuple[WeylElement, ...] = tuple(elements)
        self._by_perm = by_perm
        self._by_word = {w.word: w for w in elements}
        self._mul_table: Dict[Tuple[int, int], WeylElement] = {}

    def _build_components(self) -> None:
        n = self.rank_ss
        seen: set = set()
        comps: List[Tuple[int, ...]] = []
        for i in range(n):
            if i in seen:
                continue
            stack, comp = [i], set()
            while stack:
                a = stack.pop()
                if a in comp:
                    continue
                comp.add(a)
                stack.extend(b for b in range(n) if b != a and self.cartan[a][b] != 0)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        self.components: Tuple[Tuple[int, ...], ...] = tuple(comps)
        highest = []
        for comp in comps:
            best = max(
                (k for k in range(self.n_positive) if all(
                    self.root_coords[k][j] == 0 for j in range(n) if j not in comp
                )),
                key=lambda k: (sum(self.root_coords[k]), self.root_coords[k]),
            )
            highest.append(best)
        self.highest_roots: Tuple[int, ...] = tuple(highest)

    # ------------------------------------------------------------------ #
    # Roots and pairings                                                 #
    # ------------------------------------------------------------------ #

    @property
    def positive_roots(self) -> range:
        return range(self.n_positive)

    def negate_root(self, k: int) -> int:
        return k + self.n_positive if k < self.n_positive else k - self.n_positive

    def is_positive_root(self, k: int) -> bool:
        return k < self.n_positive

    def root_of_coords(self, coords: Sequence[int]) -> int:
        try:
            return self._root_lookup[tuple(coords)]
        except KeyError:
            raise RootDatumError(f"{tuple(coords)} is not a root")

    def pairing(self, v: Sequence, k: int):
        """<v, alpha_k> for v in X_*(S) (ints or Fractions)."""
        return _dot(v, self.roots[k])

    def simple_pairings(self, v: Sequence) -> tuple:
        return tuple(_dot(v, r) for r in self.simple_roots)

    def is_dominant(self, v: Sequence) -> bool:
        self._check_dim(v)
        return all(p >= 0 for p in self.simple_pairings(v))

    def is_antidominant(self, v: Sequence) -> bool:
        self._check_dim(v)
        return all(p <= 0 for p in self.simple_pairings(v))

    def is_regular(self, v: Sequence) -> bool:
        self._check_dim(v)
        return all(self.pairing(v, k) != 0 for k in self.positive_roots)

    def same_closed_chamber(self, v1: Sequence, v2: Sequence) -> bool:
        """True iff v1 and v2 lie in a common closed Weyl chamber."""
        return all(self.pairing(v1, k) * self.pairing(v2, k) >= 0 for k in self.positive_roots)

    def _check_dim(self, v: Sequence) -> None:
        if len(v) != self.lattice_rank:
            raise RootDatumError(f"Vector {tuple(v)} has length {len(v)}, expected {self.lattice_rank}")

    @staticmethod
    def nu_height(v: Sequence[int]) -> int:
        """Size of a lattice vector used by truncation bounds (L1 norm)."""
        return sum(abs(x) for x in v)

    # ------------------------------------------------------------------ #
    # Weyl group                                                         #
    # ------------------------------------------------------------------ #

    def enumerate_w0(self) -> Tuple[WeylElement, ...]:
        return self.weyl

    @property
    def identity(self) -> WeylElement:
        return self.weyl[0]

    def simple_reflection(self, i: int) -> WeylElement:
        return self._by_word[(i,)]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        w = self.identity
        for i in word:
            if not 0 <= i < self.rank_ss:
                raise RootDatumError(f"Simple reflection index {i} out of range")
            w = self.mul(w, self.simple_reflection(i))
        return w

    def inversion_count_of(self, w: WeylElement) -> int:
        return sum(1 for k in range(self.n_positive) if w.root_perm[k] >= self.n_positive)

    def mul(self, u: WeylElement, v: WeylElement) -> WeylElement:
        key = (u.index, v.index)
        hit = self._mul_table.get(key)
        if hit is None:
            hit = self._by_perm[tuple(u.root_perm[k] for k in v.root_perm)]
            with self._lock:
                self._mul_table.setdefault(key, hit)
        return hit

    def inverse(self, w: WeylElement) -> WeylElement:
        inv = [0] * len(w.root_perm)
        for k, img in enumerate(w.root_perm):
            inv[img] = k
        return self._by_perm[tuple(inv)]

    def act_root(self, w: WeylElement, k: int) -> int:
        return w.root_perm[k]

    def act_inverse(self, w: WeylElement, v: Sequence) -> tuple:
        return self.inverse(w).act(v)

    def chamber_of(self, v: Sequence) -> FrozenSet[WeylElement]:
        """All w with w^-1(v) dominant."""
        self._check_dim(v)
        return frozenset(w for w in self.weyl if self.is_dominant(self.inverse(w).act(v)))

    def in_chamber(self, v: Sequence, w: WeylElement) -> bool:
        return self.is_dominant(self.inverse(w).act(v))

    def delta_w(self, w: WeylElement) -> FrozenSet[int]:
        """Simple root indices i with w(alpha_i) > 0."""
        return frozenset(i for i in range(self.rank_ss) if w.root_perm[self.simple_index[i]] < self.n_positive)

    def parabolic_subgroup(self, J: Iterable[int]) -> Tuple[WeylElement, ...]:
        js = set(J)
        return tuple(w for w in self.weyl if set(w.word) <= js)

    def longest_element(self, J: Optional[Iterable[int]] = None) -> WeylElement:
        """Longest element w_J of W_{0,J} (J = None means all of Delta)."""
        js = set(range(self.rank_ss)) if J is None else set(J)
        if not js <= set(range(self.rank_ss)):
            raise RootDatumError(f"J = {sorted(js)} is not a subset of Delta")
        return max(self.parabolic_subgroup(js), key=lambda w: (w.length, w.index))

    def positive_roots_of(self, J: Iterable[int]) -> Tuple[int, ...]:
        js = set(J)
        return tuple(
            k for k in self.positive_roots
            if all(self.root_coords[k][j] == 0 for j in range(self.rank_ss) if j not in js)
        )

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        """Bruhat order on W_0."""
        return self._bruhat(u.index, w.index)

    def _bruhat(self, u_idx: int, w_idx: int) -> bool:
        key = (u_idx, w_idx)
        hit = self._bruhat_cache.get(key)
        if hit is None:
            hit = self._bruhat_step(u_idx, w_idx)
            with self._lock:
                self._bruhat_cache.setdefault(key, hit)
        return hit

    def _bruhat_step(self, u_idx: int, w_idx: int) -> bool:
        u, w = self.weyl[u_idx], self.weyl[w_idx]
        if w.length == 0:
            return u.length == 0
        if u.length > w.length:
            return False
        s = self.simple_reflection(w.word[0])
        sw = self.mul(s, w)
        su = self.mul(s, u)
        if su.length < u.length:
            return self._bruhat(su.index, sw.index)
        return self._bruhat(u.index, sw.index)

    def is_upward_closed(self, subset: Iterable[WeylElement]) -> bool:
        chosen = set(subset)
        return all(
            v in chosen for u in chosen for v in self.weyl if self.bruhat_leq(u, v)
        )

    # ------------------------------------------------------------------ #
    # Dominant cone                                                      #
    # ------------------------------------------------------------------ #

    def box_points(self, radius: int) -> Iterable[Vector]:
        return itertools.product(range(-radius, radius + 1), repeat=self.lattice_rank)

    @property
    def default_box_radius(self) -> int:
        biggest = max((abs(x) for c in self.simple_coroots for x in c), default=1)
        return 3 * max(biggest, 1)

    def lineality_basis(self) -> Tuple[Vector, ...]:
        """Primitive integer basis of {v : <v, alpha> = 0 for all roots}."""
        if self.rank_ss == 0:
            return tuple(tuple(1 if a == b else 0 for b in range(self.lattice_rank)) for a in range(self.lattice_rank))
        kernel = sympy.Matrix([list(r) for r in self.simple_roots]).nullspace()
        return tuple(_primitive(list(v)) for v in kernel)

    def dominant_generators(self, radius: Optional[int] = None) -> Tuple[Vector, ...]:
        """Pointed Hilbert generators of the dominant monoid modulo the lineality.

        One representative (smallest L1 norm) per class of simple pairings;
        together with +/- lineality_basis() they generate all dominant lattice
        points.
        """
        radius = radius or self.default_box_radius
        hit = self._generator_cache.get(radius)
        if hit is None:
            hit = self._dominant_generators(radius)
            with self._lock:
                self._generator_cache.setdefault(radius, hit)
        return hit

    def _dominant_generators(self, radius: int) -> Tuple[Vector, ...]:
        reps: Dict[Vector, Vector] = {}
        for v in self.box_points(radius):
            p = self.simple_pairings(v)
            if any(x < 0 for x in p) or not any(p):
                continue
            best = reps.get(p)
            if best is None or (self.nu_height(v), v) < (self.nu_height(best), best):
                reps[p] = v
        keys = set(reps)
        irreducible = []
        for p in sorted(reps, key=lambda k: (sum(k), k)):
            split = any(
                k != p and all(a <= b for a, b in zip(k, p)) and tuple(b - a for a, b in zip(k, p)) in keys
                for k in keys
            )
            if not split:
                irreducible.append(reps[p])
        logger.debug("prophecke: %d dominant generators in box %d", len(irreducible), radius)
        return tuple(irreducible)

    def decompose_dominant(self, v: Sequence[int], radius: Optional[int] = None) -> Tuple[List[Vector], List[int]]:
        """Write a dominant v as sum of pointed generators plus a lineality part.

        Returns:
            (generators with multiplicity, integer coefficients on lineality_basis()).

        Raises:
            RootDatumError: if v is not dominant or no decomposition is found.
        """
        v = tuple(int(x) for x in v)
        if not self.is_dominant(v):
            raise RootDatumError(f"{v} is not dominant")
        gens = self.dominant_generators(radius)
        target = self.simple_pairings(v)
        gen_pairs = [self.simple_pairings(g) for g in gens]

        chosen: List[int] = []

        def search(rest: Tuple[int, ...]) -> bool:
            if not any(rest):
                return True
            for idx, gp in enumerate(gen_pairs):
                if chosen and idx < chosen[-1]:
                    continue
                if all(a <= b for a, b in zip(gp, rest)):
                    chosen.append(idx)
                    if search(tuple(b - a for a, b in zip(gp, rest))):
                        return True
                    chosen.pop()
            return False

        if not search(target):
            raise RootDatumError(f"No generator decomposition for {v}; enlarge the box radius")
        parts = [gens[i] for i in chosen]
        residue = [v[a] - sum(g[a] for g in parts) for a in range(self.lattice_rank)]
        return parts, self.lineality_coefficients(residue)

    def lineality_coefficients(self, v: Sequence[int]) -> List[int]:
        basis = self.lineality_basis()
        if not basis:
            if any(v):
                raise RootDatumError(f"{tuple(v)} is not in the lineality space")
            return []
        mat = sympy.Matrix([list(b) for b in basis]).T
        sol, params = mat.gauss_jordan_solve(sympy.Matrix(list(v)))
        if params.shape[0] or any(not x.is_integer for x in sol):
            raise RootDatumError(f"{tuple(v)} is not an integer combination of the lineality basis")
        return [int(x) for x in sol]

    def regular_dominant(self) -> Vector:
        """The regular dominant lattice vector of smallest length in the box."""
        best = None
        for v in self.box_points(self.default_box_radius):
            if not (self.is_dominant(v) and self.is_regular(v)):
                continue
            key = (sum(self.pairing(v, k) for k in self.positive_roots), self.nu_height(v), v)
            if best is None or key < best[0]:
                best = (key, tuple(v))
        if best is None:
            raise RootDatumError("Box radius too small to find a regular dominant vector")
        return best[1]

    def regular_antidominant(self) -> Vector:
        return tuple(-x for x in self.regular_dominant())

    def levi_vector(self, J: Iterable[int]) -> Vector:
        """Dominant v with <v, alpha_j> = 0 for j in J and > 0 off J."""
        js = set(J)
        gens = [g for g in self.dominant_generators() if all(self.simple_pairings(g)[j] == 0 for j in js)]
        v = tuple(sum(g[a] for g in gens) for a in range(self.lattice_rank))
        p = self.simple_pairings(v)
        if any(p[i] <= 0 for i in range(self.rank_ss) if i not in js):
            raise RootDatumError(f"No Levi vector for J = {sorted(js)} in the search box")
        return v

    def levi(self, J: Iterable[int]) -> "RootDatum":
        """Root datum of the Levi subgroup L_J (same lattice)."""
        js = sorted(set(J))
        if not js:
            return RootDatum.empty(self.lattice_rank, name=f"{self.name}[]")
        return RootDatum(
            [self.simple_roots[j] for j in js],
            [self.simple_coroots[j] for j in js],
            name=f"{self.name}{[j + 1 for j in js]}",
        )


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


# --------------------------------------------------------------------------- #
# Presets                                                                     #
# --------------------------------------------------------------------------- #

PRESETS: Dict[str, Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]] = {
    "SL2": (((2,),), ((1,),)),
    "GL2": (((1, -1),), ((1, -1),)),
    "SL3": (((2, -1), (-1, 2)), ((1, 0), (0, 1))),
    "Sp4": (((1, -1), (0, 2)), ((1, -1), (0, 1))),
}


@lru_cache(maxsize=None)
def preset(name: str) -> RootDatum:
    """Built-in root datum by name (SL2, GL2, SL3, Sp4)."""
    try:
        roots, coroots = PRESETS[name]
    except KeyError:
        raise RootDatumError(f"Unknown preset '{name}'. Valid: {sorted(PRESETS)}")
    return RootDatum(roots, coroots, name=name)
