"""Contraction type of a codimension one face of the nef cone.

A face is Type II exactly when the quadratic form ``L -> D . L^2`` is
degenerate for ``D`` in its relative interior. Among the remaining faces of a
threefold general in moduli, Type I faces have nonnegative instanton numbers
while Type III_0 faces have ``n_2 = -2``, so a negative instanton number
marks III_0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, ValidationError
from .gw import InstantonSeries
from .lattice import (
    CubicForm,
    CurveClass,
    DivisorClass,
    _check_rank,
    eval_cubic,
    hessian_quadric,
    is_primitive,
)


class FaceType(str, enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III0 = "III0"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ContractionFace:
    """Data attached to one face: its primitive contracted class, an interior divisor and instanton numbers."""

    eta: CurveClass
    interior_divisor: DivisorClass
    instantons: Optional[InstantonSeries] = None
    label: str = ""

    def __post_init__(self):
        if self.eta.is_zero():
            raise ValidationError("eta must be nonzero")
        if not is_primitive(self.eta):
            raise ValidationError(f"eta not primitive: ({self.eta})")
        if self.interior_divisor.is_zero():
            raise ValidationError("interior divisor must be nonzero")
        _check_rank(self.eta.rank, self.interior_divisor)

    @property
    def rank(self) -> int:
        return self.eta.rank


@dataclass(frozen=True)
class FaceClassification:
    face_type: FaceType
    reason: str


@dataclass(frozen=True)
class FaceSignature:
    """Every quantity :func:`classify_face` looks at."""

    hessian_rank: int
    hessian_determinant: int
    cubic_value: int
    instanton_summary: str
    min_instanton: Optional[int]
    classification: FaceClassification


def _check_face(mu: CubicForm, face: ContractionFace) -> int:
    _check_rank(mu.rank, face.eta, face.interior_divisor)
    d = face.interior_divisor
    d3 = eval_cubic(mu, d, d, d)
    if d3 == 0:
        raise DomainError(f"interior divisor ({d}) lies on the cubic cone D^3 = 0")
    return d3


def _classify(degenerate: bool, instantons: Optional[InstantonSeries]) -> FaceClassification:
    if degenerate:
        return FaceClassification(FaceType.TYPE_II, "quadratic form D.L^2 is degenerate")
    if instantons is None:
        return FaceClassification(FaceType.INDETERMINATE, "nondegenerate D.L^2 and no instanton data")
    if not instantons:
        return FaceClassification(FaceType.INDETERMINATE, "nondegenerate D.L^2 and all instanton numbers zero")
    if not instantons.is_nonnegative():
        d, n = min(instantons, key=lambda item: (item[1], item[0]))
        return FaceClassification(FaceType.TYPE_III0, f"negative instanton number n_{d}={n}")
    return FaceClassification(FaceType.TYPE_I, "nondegenerate D.L^2 and all instanton numbers nonnegative")


def classify_face(mu: CubicForm, face: ContractionFace) -> FaceClassification:
    """Type II, I, III_0 or indeterminate.

    Degeneracy is tested first and short-circuits the instanton check.
    """
    _check_face(mu, face)
    q = hessian_quadric(mu, face.interior_divisor)
    return _classify(q.degenerate, face.instantons)


def _summary(instantons: Optional[InstantonSeries]) -> str:
    if instantons is None:
        return "absent"
    if not instantons:
        return "empty"
    return ",".join(f"{d}:{n}" for d, n in instantons)


def face_signature(mu: CubicForm, face: ContractionFace) -> FaceSignature:
    d3 = _check_face(mu, face)
    q = hessian_quadric(mu, face.interior_divisor)
    det = q.determinant
    instantons = face.instantons
    return FaceSignature(
        hessian_rank=q.rank,
        hessian_determinant=det,
        cubic_value=d3,
        instanton_summary=_summary(instantons),
        min_instanton=min(instantons.values.values()) if instantons else None,
        classification=_classify(det == 0, instantons),
    )
