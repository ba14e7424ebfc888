"""Classification of smooth Fano polytopes by projection along a vertex."""

__version__ = "0.1.0"

from .canon import NormalForm, are_isomorphic, normal_form
from .classify import classify, run_classification
from .classlist import ClassList, export_classes, import_classes
from .enumeration import fano_oracle, reflexive_classes
from .polytope import LatticePolytope, from_points, project_along_vertex, simplex

__all__ = [
    "ClassList",
    "LatticePolytope",
    "NormalForm",
    "are_isomorphic",
    "classify",
    "export_classes",
    "fano_oracle",
    "from_points",
    "import_classes",
    "normal_form",
    "project_along_vertex",
    "reflexive_classes",
    "run_classification",
    "simplex",
]
