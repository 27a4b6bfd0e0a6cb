"""prophecke - exact pro-p Iwahori-Hecke algebras at q = 0 and a lemma verification harness."""

from prophecke.field import GaloisField
from prophecke.root_system import RootDatum, WeylElement, preset
from prophecke.prop_weyl import LambdaElement, ProPWeylElement, ProPWeylGroup, ZKappaGroup
from prophecke.hecke import AElement, HeckeAlgebra, HeckeElement
from prophecke.modules import FinAModule, FinHModule, decompose_by_support
from prophecke.tensor_hom import check_iso_hom_tensor, hom_from_h, tensor_h
from prophecke.parabolic import levi_algebra
from prophecke.universal import OmegaComponent, OmegaSeries, UniversalModule
from prophecke.models import Config, Report, RunSummary, parse_config

__version__ = "0.1.0"

__all__ = [
    "GaloisField",
    "RootDatum",
    "WeylElement",
    "preset",
    "ZKappaGroup",
    "ProPWeylGroup",
    "ProPWeylElement",
    "LambdaElement",
    "HeckeAlgebra",
    "HeckeElement",
    "AElement",
    "FinAModule",
    "FinHModule",
    "decompose_by_support",
    "tensor_h",
    "hom_from_h",
    "check_iso_hom_tensor",
    "levi_algebra",
    "OmegaSeries",
    "OmegaComponent",
    "UniversalModule",
    "Config",
    "Report",
    "RunSummary",
    "parse_config",
]
