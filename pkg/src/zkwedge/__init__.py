"""Wedge-of-spheres decompositions of moment-angle complexes of shifted simplicial complexes."""

__version__ = "0.1.0"

from .errors import ComplexError, NonRegularStepError, NotShiftedError, SizeLimitError, WedgeError, ZkError
from .scomplex import (SimplicialComplex, ShiftVerdict, combine, construct, is_shifted, shifted_closure,
                       skeleton, subcomplex)
from .zhomology import cohomology_dims, reduced_homology, smith_normal_form
from .hochster import BigradedBetti, bigraded_betti, zk_profile
from .wedge import (SphereWedge, SymbolicWedge, combine_wedge, porter_fibre, realize, torus_ops)
from .decomposer import (build_regular_sequence, construction_step, decompose, decompose_with_trace,
                         split_theta)
from .families import FamilyElement, element, op_disjoint_union, op_glue, op_join
from .series import (IntPolynomial, RationalFunction, classical_series, face_ring_poincare, golod_verdict,
                     ratfun)
