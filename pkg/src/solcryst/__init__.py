"""Crystallographic groups of the solvable Lie group Sol1^4 and their Sol^3 quotients."""

from .affine import AffineElem, ContextMismatch, NotInLatticeSpan, Relation, decompose, verify_presentation
from .cohomology import CocycleClass, NotACocycle, h1_classes, is_coboundary
from .crystal import (CaseA, CaseB, CrystGroupSpec, HasTorsion, InflationRequired, MappingTorus,
                      TopologyDescriptor, TorsionReport, TwistedIBundleUnion, classify_sol3_group,
                      enumerate_by_class, enumerate_groups, is_torsion_free, presentation,
                      quotient_is_torsion_free, topology)
from .exact import QuadExt
from .holonomy import HolonomySpec, IncompatibleType, UnknownType, compatible, compatible_types
from .lattice import LatticeSpec, solve_c1c2
from .matz import (Mat2Z, NotAdmissible, Vec2Q, Verdict, cokernel, enumerate_weak_classes,
                   is_admissible, smith_normal_form, weakly_conjugate)

__all__ = [
    "AffineElem", "CaseA", "CaseB", "CocycleClass", "ContextMismatch", "CrystGroupSpec", "HasTorsion",
    "HolonomySpec", "IncompatibleType", "InflationRequired", "LatticeSpec", "MappingTorus", "Mat2Z",
    "NotACocycle", "NotAdmissible", "NotInLatticeSpan", "QuadExt", "Relation", "TopologyDescriptor",
    "TorsionReport", "TwistedIBundleUnion", "UnknownType", "Vec2Q", "Verdict", "classify_sol3_group",
    "cokernel", "compatible", "compatible_types", "decompose", "enumerate_by_class", "enumerate_groups",
    "enumerate_weak_classes", "h1_classes", "is_admissible", "is_coboundary", "is_torsion_free",
    "presentation", "quotient_is_torsion_free", "smith_normal_form", "solve_c1c2", "topology",
    "verify_presentation", "weakly_conjugate",
]
