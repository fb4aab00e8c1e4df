"""Dynkin diagram folding, Weyl and Artin groups, lattice reflections and a
linear model of deformation spaces with exceptional configurations."""

from .artin import BraidWord, GarsideNormalForm, normal_form, project_to_weyl, words_equal
from .defmodel import DeformationModel, build_model, census, orbit_relation, wall_codimension
from .dynkin import (
    DiagramAutomorphism,
    DynkinDiagram,
    KodairaFiberType,
    affinize,
    build_diagram,
    fold,
    kodaira_to_affine,
    named_automorphisms,
    parse_type,
)
from .errors import WeylBraidError
from .lattice import (
    BField,
    ExceptionalConfiguration,
    IntegralLattice,
    embed_ade,
    enhanced_symmetry_bfield,
    reflect_in_class,
    spherical_twist_cohomology,
)
from .weyl import WeylElement, enumerate_group, fixed_subgroup, roots, word_to_element

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "GarsideNormalForm",
    "normal_form",
    "project_to_weyl",
    "words_equal",
    "DeformationModel",
    "build_model",
    "census",
    "orbit_relation",
    "wall_codimension",
    "DiagramAutomorphism",
    "DynkinDiagram",
    "KodairaFiberType",
    "affinize",
    "build_diagram",
    "fold",
    "kodaira_to_affine",
    "named_automorphisms",
    "parse_type",
    "WeylBraidError",
    "BField",
    "ExceptionalConfiguration",
    "IntegralLattice",
    "embed_ade",
    "enhanced_symmetry_bfield",
    "reflect_in_class",
    "spherical_twist_cohomology",
    "WeylElement",
    "enumerate_group",
    "fixed_subgroup",
    "roots",
    "word_to_element",
]
