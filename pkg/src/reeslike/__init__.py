"""Rees-like algebras R[at, t^2]: arithmetic, conductor-square patching and
certified elementary reduction of unimodular rows and matrices."""

from .certs import ElemCert, UmRow, transport_dual
from .errors import ReesError
from .kernels import BACKEND
from .patching import (
    Certification,
    ConductorSquare,
    factor_one_plus_nilpotent,
    lift_E_certificate,
    patch_element,
    patch_matrix,
    patch_row,
    patch_unit,
)
from .poly import Poly, PolyRing, parse_poly
from .reduction import (
    ReductionReport,
    k1_reduce,
    reduce_row_artinian,
    reduce_row_euclidean,
    reduce_row_rees_patched,
    register_corner_solver,
)
from .rees import ReesCtx, ReesElem, parse_context
from .rings import IdealFG, RingCtx, parse_ideal, parse_ring
from .verify import verify_certificate

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Certification", "ConductorSquare", "ElemCert", "IdealFG", "Poly", "PolyRing",
    "ReductionReport", "ReesCtx", "ReesElem", "ReesError", "RingCtx", "UmRow",
    "factor_one_plus_nilpotent", "k1_reduce", "lift_E_certificate", "parse_context", "parse_ideal",
    "parse_poly", "parse_ring", "patch_element", "patch_matrix", "patch_row", "patch_unit",
    "reduce_row_artinian", "reduce_row_euclidean", "reduce_row_rees_patched", "register_corner_solver",
    "transport_dual", "verify_certificate",
]
