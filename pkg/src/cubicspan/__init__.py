"""Secant/tangent generation of rational points on cubic surfaces over finite fields."""
from .gf import FieldSpec, FieldElement, gf
from .forms import Form, cubic_form, fermat, form_from_json, form_to_json
from .smoothcheck import is_smooth, exhaustive_singular_search
from .surface import SurfaceModel, PlaneType, PointClass, NotSmoothError, ContractViolation
from .span import span_closure, single_generators, pigeonhole_check, build_theorem_T
from .harness import random_surface, sample_corpus, CorpusFilter, verify_surface, census

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "FieldElement", "gf", "Form", "cubic_form", "fermat", "form_from_json",
    "form_to_json", "is_smooth", "exhaustive_singular_search", "SurfaceModel", "PlaneType",
    "PointClass", "NotSmoothError", "ContractViolation", "span_closure", "single_generators",
    "pigeonhole_check", "build_theorem_T", "random_surface", "sample_corpus", "CorpusFilter",
    "verify_surface", "census",
]
