"""Newton polyhedra, toric charts and smoothness certificates for mixed polynomials."""

from .errors import InputError, MixresError, ParseError, PreconditionError
from .mixed_poly import (ExponentPair, GaussianRational, MixedPolynomial, MixedTerm,
                         conjugate, evaluate, is_convenient, parse, render, restrict,
                         wirtinger)
from .newton import (DualDiagram2D, Face, WeightVector, dual_diagram, face,
                     newton_boundary, support, weight_min)
from .faces import (FaceDegreeRecord, FaceTypeVerdict, check_weight_transfer,
                    classify_face_type, degrees, face_function)
from .fan import (ConeSubdivision, SimplicialCone, canonical_subdivision, is_admissible,
                  is_convenient_subdivision, is_regular, make_cone)
from .toric import (ChartFactorization, ChartMonomial, SmoothnessCertificate, certify,
                    chart_map, factorize, lambda_of_cone, pullback, strict_transform_probe)
from .nondeg import CriticalityReport, criticality_residual, sample_nondegeneracy, vertex_rule
from .lab import FractionalMonomial, class_probe, wirtinger_orders, xi_eval

__version__ = "0.1.0"
