"""Exact bar-complex machinery for CDGAs over the rationals.

The package computes, entirely in exact rational arithmetic and inside
an explicit degree window:

* finitely presented graded-commutative differential algebras and their
  cohomology algebras (:mod:`embar.cdga`);
* the two-sided normalized bar complex of a triple A <- B -> C with its
  shuffle product (:mod:`embar.barcomplex`, :mod:`embar.shuffle`);
* its cohomology, which for cohomology-algebra inputs is the bigraded
  Tor over the middle algebra -- the Eilenberg-Moore second page -- with
  an independent Koszul-resolution oracle (:mod:`embar.tor`);
* formality certificates for pull-backs via module freeness and
  positive bar-degree vanishing (:mod:`embar.formality`).
"""

from .barcomplex import (
    BarChain,
    BarComplexWindow,
    BarSystem,
    BarWord,
    ThetaMap,
    bar_augmentation,
    bar_d,
    bar_delta,
    build_window,
    enumerate_words,
    induced_bar_map,
)
from .cdga import (
    AlgebraMorphism,
    GeneratorPresentation,
    Generator,
    GradedAlgebra,
    build_free,
    check_morphism,
    cohomology_algebra,
    ground_field,
    identity_morphism,
    is_quasi_iso,
    morphism_from_images,
)
from .formality import (
    FormalityCertificate,
    check_free_module,
    check_positive_vanishing,
    formality_certificate,
)
from .linalg import RationalMatrix, cohomology_at, quotient_basis, rank_and_kernel
from .parser import parse_input, render_definitions
from .shuffle import bar_product, check_cdga_structure, shuffles
from .tor import (
    TorResult,
    bar_cohomology,
    compare_windows,
    koszul_tor_oracle,
    oracle_agrees,
    tor_algebra,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMorphism",
    "BarChain",
    "BarComplexWindow",
    "BarSystem",
    "BarWord",
    "FormalityCertificate",
    "GeneratorPresentation",
    "Generator",
    "GradedAlgebra",
    "RationalMatrix",
    "ThetaMap",
    "TorResult",
    "bar_augmentation",
    "bar_cohomology",
    "bar_d",
    "bar_delta",
    "bar_product",
    "build_free",
    "build_window",
    "check_cdga_structure",
    "check_free_module",
    "check_morphism",
    "check_positive_vanishing",
    "cohomology_algebra",
    "cohomology_at",
    "compare_windows",
    "enumerate_words",
    "formality_certificate",
    "ground_field",
    "identity_morphism",
    "induced_bar_map",
    "is_quasi_iso",
    "koszul_tor_oracle",
    "morphism_from_images",
    "oracle_agrees",
    "parse_input",
    "quotient_basis",
    "rank_and_kernel",
    "render_definitions",
    "shuffles",
    "tor_algebra",
]
