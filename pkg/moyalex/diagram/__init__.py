"""Colored MOY diagrams: data model, files, faces and region indices."""

from .editor import DiagramEditor
from .graph import (
    Basepoint,
    Crossing,
    Edge,
    HalfEdge,
    MOYDiagram,
    Side,
    Sign,
    Vertex,
    mirror,
    reverse,
)
from .io import build_diagram, color_variables, load, parse, read_document, serialize, to_document, to_pd
from .regions import (
    CrossingKind,
    FaceStructure,
    Region,
    RegionModel,
    StateCrossing,
    build_regions,
    delta_weight,
    legal_basepoint,
    legal_basepoints,
    region_indices,
    region_model,
)
from .tangle import Tangle, braid_closure
from .validation import ValidationIssue, ValidationReport, validate

__all__ = [
    "Basepoint",
    "Crossing",
    "CrossingKind",
    "DiagramEditor",
    "Edge",
    "FaceStructure",
    "HalfEdge",
    "MOYDiagram",
    "Region",
    "RegionModel",
    "Side",
    "Sign",
    "StateCrossing",
    "Tangle",
    "ValidationIssue",
    "ValidationReport",
    "Vertex",
    "braid_closure",
    "build_diagram",
    "build_regions",
    "color_variables",
    "delta_weight",
    "legal_basepoint",
    "legal_basepoints",
    "load",
    "mirror",
    "parse",
    "read_document",
    "region_indices",
    "region_model",
    "reverse",
    "serialize",
    "to_document",
    "to_pd",
    "validate",
]
