"""Pydantic config and report models for prophecke."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from prophecke.field import FieldError, MAX_FIELD_ORDER, minimal_field_order, split_prime_power
from prophecke.root_system import PRESETS, RootDatum, RootDatumError


# --------------------------------------------------------------------------- #
# Enums                                                                       #
# --------------------------------------------------------------------------- #


class Verdict(str, Enum):
    passed = "pass"
    failed = "fail"
    inconclusive = "inconclusive"


class OutputFormat(str, Enum):
    json = "json"
    text = "text"


class ModuleKind(str, Enum):
    a_matrices = "a_matrices"
    a_character = "a_character"
    h_character = "h_character"


# --------------------------------------------------------------------------- #
# Config models                                                               #
# --------------------------------------------------------------------------- #


class LatticeData(BaseModel):
    simple_roots: List[List[int]] = Field(..., min_length=1)
    simple_coroots: List[List[int]] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _check_root_datum(self) -> "LatticeData":
        try:
            RootDatum(self.simple_roots, self.simple_coroots)
        except RootDatumError as exc:
            raise ValueError(str(exc))
        return self


class ZKappaSpec(BaseModel):
    orders: List[int] = Field(..., min_length=1)
    reflection_matrices: List[List[List[int]]]
    coroot_generators: List[List[int]]


class OmegaSpec(BaseModel):
    # psi(t) = prod zeta_k^(e_k t_k), zeta_k a primitive orders[k]-th root of unity
    exponents: List[int] = Field(default_factory=list)


class ModuleSpec(BaseModel):
    name: str = Field(..., min_length=1, max_length=64)
    kind: ModuleKind = ModuleKind.a_character
    dim: int = Field(1, ge=1, le=6)
    # a_matrices: one dim x dim matrix per chamber seed, in `prophecke seeds` order
    seeds: Optional[List[List[List[int]]]] = None
    chamber: List[int] = Field(default_factory=list)
    psi: List[int] = Field(default_factory=list)
    a: Optional[List[int]] = None
    eps: Literal[0, -1] = 0

    @model_validator(mode="after")
    def _check_shape(self) -> "ModuleSpec":
        if self.kind == ModuleKind.a_matrices:
            if not self.seeds:
                raise ValueError("a_matrices modules need seed matrices")
            for k, mat in enumerate(self.seeds):
                if len(mat) != self.dim or any(len(row) != self.dim for row in mat):
                    raise ValueError(f"seeds[{k}] is not {self.dim}x{self.dim}")
        elif self.dim != 1:
            raise ValueError(f"{self.kind.value} modules are one-dimensional")
        return self


class Bounds(BaseModel):
    max_length: int = Field(3, ge=0, le=12)
    nu_height: int = Field(2, ge=0, le=8)
    box_radius: Optional[int] = Field(None, ge=1, le=12)
    samples: int = Field(200, ge=1, le=20_000)


class Config(BaseModel):
    group: Union[str, LatticeData] = "SL2"
    q: int = Field(3, ge=2)
    field_order: Optional[int] = Field(None, ge=2, le=MAX_FIELD_ORDER)
    zkappa: Optional[ZKappaSpec] = None
    ns_squares: Optional[Dict[int, List[int]]] = None
    omega: OmegaSpec = Field(default_factory=OmegaSpec)
    modules: List[ModuleSpec] = Field(default_factory=list)
    bounds: Bounds = Field(default_factory=Bounds)
    seed: int = 0

    @field_validator("group")
    @classmethod
    def _known_preset(cls, v):
        if isinstance(v, str) and v not in PRESETS:
            raise ValueError(f"unknown preset '{v}', valid: {sorted(PRESETS)}")
        return v

    @field_validator("q")
    @classmethod
    def _prime_power(cls, v: int) -> int:
        try:
            split_prime_power(v)
        except FieldError as exc:
            raise ValueError(str(exc))
        return v

    @model_validator(mode="after")
    def _check_field(self) -> "Config":
        p, _ = split_prime_power(self.q)
        if self.field_order is None:
            self.field_order = minimal_field_order(self.q)
        try:
            fp, _ = split_prime_power(self.field_order)
        except FieldError as exc:
            raise ValueError(f"field_order: {exc}")
        if fp != p:
            raise ValueError(f"field_order: characteristic {fp} differs from that of q = {self.q}")
        if (self.field_order - 1) % (self.q - 1) != 0:
            raise ValueError(f"field_order: (q - 1) = {self.q - 1} does not divide {self.field_order} - 1")
        if self.field_order > MAX_FIELD_ORDER:
            raise ValueError(f"field_order: {self.field_order} exceeds {MAX_FIELD_ORDER}")
        for k, spec in enumerate(self.modules):
            for j, mat in enumerate(spec.seeds or []):
                for row in mat:
                    if any(not 0 <= x < self.field_order for x in row):
                        raise ValueError(f"modules[{k}].seeds[{j}]: entries must lie in [0, {self.field_order})")
            if spec.a and any(not 0 < x < self.field_order for x in spec.a):
                raise ValueError(f"modules[{k}].a: eigenvalues must lie in [1, {self.field_order})")
        names = [m.name for m in self.modules]
        if len(set(names)) != len(names):
            raise ValueError("modules: names must be unique")
        return self


# --------------------------------------------------------------------------- #
# Report models                                                               #
# --------------------------------------------------------------------------- #


class Report(BaseModel):
    suite: str
    instance: str
    verdict: Verdict
    witness: Optional[str] = None
    bound: Optional[str] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    seconds: Optional[float] = None

    @model_validator(mode="after")
    def _evidence(self) -> "Report":
        if self.verdict != Verdict.passed and not (self.witness or self.bound):
            raise ValueError(f"{self.verdict.value} report for {self.suite}/{self.instance} needs a witness or bound")
        return self


class RunSummary(BaseModel):
    suites: List[str]
    reports: List[Report] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _count(self) -> "RunSummary":
        self.counts = {v.value: sum(1 for r in self.reports if r.verdict == v) for v in Verdict}
        return self

    @property
    def exit_code(self) -> int:
        """0 all pass, 2 any fail, 3 inconclusive without fails."""
        if self.counts.get(Verdict.failed.value):
            return 2
        if self.counts.get(Verdict.inconclusive.value):
            return 3
        return 0


def parse_config(path) -> Config:
    """Read and validate a JSON config file.

    Raises:
        pydantic.ValidationError: with the paths of the offending fields.
    """
    return Config.model_validate_json(Path(path).read_text(encoding="utf-8"))
