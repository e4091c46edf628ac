"""Exact invariants of primitive birational contractions of Calabi-Yau threefolds."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    InconsistentInvariantsError,
    InvariantsError,
    ParseError,
    RankMismatchError,
    ValidationError,
)
from .lattice import (
    BasisChange,
    CubicForm,
    CurveClass,
    DivisorClass,
    LinearForm,
    QuadricMatrix,
    eval_cubic,
    eval_linear,
    hessian_quadric,
    is_on_cubic_cone,
    is_primitive,
    pair,
)
from .gw import GwSequence, InstantonSeries, gw_brute, gw_sequence, gw_total, invert_gw, moebius, series_sums
from .flop import FloppedForms, flop, flop_nodes, solve_n1_n2
from .type3 import (
    ConicBundleData,
    DoubleLine,
    LinePair,
    Type3Invariants,
    Variant,
    fiber_contribution,
    invariants,
    n1_from_fibers,
)
from .faces import ContractionFace, FaceClassification, FaceSignature, FaceType, classify_face, face_signature
from .documents import (
    ThreefoldDocument,
    parse_conic_bundle,
    parse_threefold,
    serialize_conic_bundle,
    serialize_threefold,
)
