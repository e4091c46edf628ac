"""JSON documents describing a threefold or a conic bundle.

Threefold document::

    {
      "rank": 2,
      "cubic": [{"i": 0, "j": 0, "k": 0, "c": 8}, {"i": 0, "j": 0, "k": 1, "c": 4}],
      "c2": [56, 24],
      "faces": [
        {"label": "H-face", "eta": [0, 1], "interior_divisor": [1, 0],
         "instantons": {"1": 4}}
      ]
    }

Cubic entries must have sorted, in-range indices with no repeats. Instanton
degrees are strings because JSON object keys are. ``faces`` and
``instantons`` are optional.

Conic bundle document::

    {"variant": "irreducible", "genus": 2,
     "line_pairs": {"1": 1}, "double_lines": {"2": 1}}

Every number in either document is an integer; floats are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvariantsError, ParseError, ValidationError
from .faces import ContractionFace
from .gw import InstantonSeries
from .lattice import CubicForm, CurveClass, DivisorClass, LinearForm
from .type3 import ConicBundleData, Variant

_THREEFOLD_KEYS = {"rank", "cubic", "c2", "faces"}
_FACE_KEYS = {"label", "eta", "interior_divisor", "instantons"}
_CONIC_KEYS = {"variant", "genus", "line_pairs", "double_lines"}


@dataclass(frozen=True)
class ThreefoldDocument:
    rank: int
    cubic: CubicForm
    c2: LinearForm
    faces: tuple[ContractionFace, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.cubic.rank != self.rank:
            raise ValidationError(f"cubic rank {self.cubic.rank} differs from document rank {self.rank}")
        if self.c2.rank != self.rank:
            raise ValidationError(f"c2 has length {self.c2.rank}, expected {self.rank}")
        for n, face in enumerate(self.faces):
            if face.rank != self.rank:
                raise ValidationError(f"face {n} has rank {face.rank}, expected {self.rank}")
        object.__setattr__(self, "faces", tuple(self.faces))

    def face(self, index: int) -> ContractionFace:
        if not 0 <= index < len(self.faces):
            raise ValidationError(f"face index {index} out of range (document has {len(self.faces)} faces)")
        return self.faces[index]


def _load(text) -> object:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc.reason}") from None
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _reject_constant(name):
    raise ValidationError(f"non-finite number {name} is not allowed")


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ValidationError(f"{where}: expected a list of integers")
    return [_int(v, f"{where}[{n}]") for n, v in enumerate(value)]


def _object(value, where: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{where}: expected an object")
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise ValidationError(f"{where}: unknown keys {unknown}")
    missing = sorted(required - set(value))
    if missing:
        raise ValidationError(f"{where}: missing keys {missing}")
    return value


def _int_keyed(value, where: str) -> dict[int, int]:
    if not isinstance(value, dict):
        raise ValidationError(f"{where}: expected an object with integer-string keys")
    out = {}
    for key, count in value.items():
        try:
            k = int(key, 10)
        except ValueError:
            raise ValidationError(f"{where}: key {key!r} is not an integer") from None
        if str(k) != key:
            raise ValidationError(f"{where}: key {key!r} is not in canonical decimal form")
        out[k] = _int(count, f"{where}[{key!r}]")
    return out


def _parse_cubic(entries, rank: int) -> CubicForm:
    if not isinstance(entries, list):
        raise ValidationError("cubic: expected a list of {i,j,k,c} entries")
    coeffs: dict[tuple[int, int, int], int] = {}
    for n, entry in enumerate(entries):
        where = f"cubic[{n}]"
        entry = _object(entry, where, {"i", "j", "k", "c"}, {"i", "j", "k", "c"})
        i, j, k = (_int(entry[x], f"{where}.{x}") for x in "ijk")
        if not i <= j <= k:
            raise ValidationError(f"{where}: indices ({i},{j},{k}) are not sorted")
        if i < 0 or k >= rank:
            raise ValidationError(f"{where}: indices ({i},{j},{k}) out of range for rank {rank}")
        if (i, j, k) in coeffs:
            raise ValidationError(f"{where}: duplicate entry for ({i},{j},{k})")
        coeffs[(i, j, k)] = _int(entry["c"], f"{where}.c")
    return CubicForm(rank, coeffs)


def _parse_face(raw, n: int, rank: int) -> ContractionFace:
    where = f"faces[{n}]"
    raw = _object(raw, where, _FACE_KEYS, {"eta", "interior_divisor"})
    eta = _int_list(raw["eta"], f"{where}.eta")
    divisor = _int_list(raw["interior_divisor"], f"{where}.interior_divisor")
    for name, vec in (("eta", eta), ("interior_divisor", divisor)):
        if len(vec) != rank:
            raise ValidationError(f"{where}.{name}: length {len(vec)}, expected {rank}")
    instantons = None
    if raw.get("instantons") is not None:
        instantons = InstantonSeries(_int_keyed(raw["instantons"], f"{where}.instantons"))
    label = raw.get("label", "")
    if not isinstance(label, str):
        raise ValidationError(f"{where}.label: expected a string")
    try:
        return ContractionFace(CurveClass(eta), DivisorClass(divisor), instantons, label)
    except InvariantsError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def parse_threefold(text) -> ThreefoldDocument:
    """Parse and validate a threefold document from ``str`` or UTF-8 ``bytes``."""
    raw = _object(_load(text), "document", _THREEFOLD_KEYS, {"rank", "cubic", "c2"})
    rank = _int(raw["rank"], "rank")
    if rank < 1:
        raise ValidationError(f"rank must be >= 1, got {rank}")
    cubic = _parse_cubic(raw["cubic"], rank)
    c2 = _int_list(raw["c2"], "c2")
    if len(c2) != rank:
        raise ValidationError(f"c2: length {len(c2)}, expected {rank}")
    faces_raw = raw.get("faces", [])
    if not isinstance(faces_raw, list):
        raise ValidationError("faces: expected a list")
    faces = tuple(_parse_face(f, n, rank) for n, f in enumerate(faces_raw))
    return ThreefoldDocument(rank, cubic, LinearForm(c2), faces)


def threefold_to_dict(doc: ThreefoldDocument) -> dict:
    faces = []
    for face in doc.faces:
        entry = {"label": face.label, "eta": list(face.eta.coords), "interior_divisor": list(face.interior_divisor.coords)}
        if face.instantons is not None:
            entry["instantons"] = {str(d): n for d, n in face.instantons}
        faces.append(entry)
    return {
        "rank": doc.rank,
        "cubic": [{"i": i, "j": j, "k": k, "c": c} for i, j, k, c in doc.cubic.entries()],
        "c2": list(doc.c2.coeffs),
        "faces": faces,
    }


def serialize_threefold(doc: ThreefoldDocument) -> str:
    """Canonical JSON text: sorted cubic entries, zero coefficients dropped."""
    return json.dumps(threefold_to_dict(doc), indent=2) + "\n"


def parse_conic_bundle(text) -> ConicBundleData:
    raw = _object(_load(text), "document", _CONIC_KEYS, {"variant", "genus"})
    variant = raw["variant"]
    if variant not in {v.value for v in Variant}:
        raise ValidationError(f"variant: expected one of {[v.value for v in Variant]}, got {json.dumps(variant)}")
    try:
        return ConicBundleData(
            genus=_int(raw["genus"], "genus"),
            line_pairs=_int_keyed(raw.get("line_pairs", {}), "line_pairs"),
            double_lines=_int_keyed(raw.get("double_lines", {}), "double_lines"),
            variant=Variant(variant),
        )
    except ValidationError:
        raise
    except InvariantsError as exc:
        raise ValidationError(str(exc)) from None


def conic_bundle_to_dict(data: ConicBundleData) -> dict:
    return {
        "variant": data.variant.value,
        "genus": data.genus,
        "line_pairs": {str(r): a for r, a in data.line_pairs.items()},
        "double_lines": {str(s): b for s, b in data.double_lines.items()},
    }


def serialize_conic_bundle(data: ConicBundleData) -> str:
    return json.dumps(conic_bundle_to_dict(data), indent=2) + "\n"


def parse_document(text) -> ThreefoldDocument | ConicBundleData:
    """Dispatch on the document kind: a ``variant`` key means a conic bundle."""
    raw = _load(text)
    if isinstance(raw, dict) and "variant" in raw:
        return parse_conic_bundle(text)
    return parse_threefold(text)
