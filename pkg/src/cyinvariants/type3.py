"""Invariants of a Type III contraction from its conic-bundle fibre data.

The exceptional divisor E is a conic bundle over a smooth curve C of genus g,
with ``a_r`` line-pair fibres carrying an A_r singularity (r >= 0) and ``b_s``
double-line fibres carrying a D_s singularity (s >= 2). With

    S = sum a_r (r + 1) + sum b_s s

we get ``K_E^2 = E^3 = 8(1 - g) - S``, ``c2 . E = 4(g - 1) + 2S``,
``n1 = 2S`` and ``n2 = 2g - 2``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import DomainError, InconsistentInvariantsError, ValidationError
from .lattice import _as_int


class Variant(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    ELLIPTIC_QUASI_RULED = "elliptic_quasi_ruled"
    DEL_PEZZO_7 = "del_pezzo_7"


@dataclass(frozen=True)
class LinePair:
    """Line-pair fibre with an A_r singularity where the lines meet (r = 0: smooth point)."""

    r: int

    def __post_init__(self):
        if _as_int(self.r) < 0:
            raise DomainError(f"line pair needs r >= 0, got {self.r}")


@dataclass(frozen=True)
class DoubleLine:
    """Double-line fibre with a D_s singularity. s = 2 means two A_1 points, s = 3 an A_3."""

    s: int

    def __post_init__(self):
        if _as_int(self.s) < 2:
            raise DomainError(f"double line needs s >= 2, got {self.s}")


def fiber_contribution(fibre: LinePair | DoubleLine) -> int:
    """Contribution of one singular fibre to ``n1``: ``2(r+1)`` or ``2s``."""
    if isinstance(fibre, LinePair):
        return 2 * (fibre.r + 1)
    if isinstance(fibre, DoubleLine):
        return 2 * fibre.s
    raise TypeError(f"not a singular fibre: {fibre!r}")


def _clean_counts(counts: Mapping[int, int], lowest: int, what: str) -> dict[int, int]:
    clean = {}
    for key, count in counts.items():
        key, count = _as_int(key), _as_int(count)
        if key < lowest:
            raise ValidationError(f"{what} index must be >= {lowest}, got {key}")
        if count < 0:
            raise ValidationError(f"{what} count must be >= 0, got {count} for index {key}")
        if count:
            clean[key] = count
    return dict(sorted(clean.items()))


@dataclass(frozen=True)
class ConicBundleData:
    """Genus of the base curve and singular-fibre multiplicities.

    ``line_pairs[r] = a_r`` and ``double_lines[s] = b_s``. The two special
    variants with reducible generic fibre carry no fibre maps: the elliptic
    quasi-ruled case has genus 1, the degree 7 del Pezzo case genus 0.
    """

    genus: int
    line_pairs: Mapping[int, int] = field(default_factory=dict)
    double_lines: Mapping[int, int] = field(default_factory=dict)
    variant: Variant = Variant.IRREDUCIBLE

    def __post_init__(self):
        try:
            variant = Variant(self.variant)
        except ValueError:
            raise ValidationError(f"unknown conic bundle variant {self.variant!r}") from None
        genus = _as_int(self.genus)
        if genus < 0:
            raise ValidationError(f"genus must be >= 0, got {genus}")
        line_pairs = _clean_counts(self.line_pairs, 0, "line pair")
        double_lines = _clean_counts(self.double_lines, 2, "double line")
        if variant is not Variant.IRREDUCIBLE:
            required = 1 if variant is Variant.ELLIPTIC_QUASI_RULED else 0
            if genus != required:
                raise ValidationError(f"{variant.value} requires genus {required}, got {genus}")
            if line_pairs or double_lines:
                raise ValidationError(f"{variant.value} takes no singular fibre data")
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "line_pairs", line_pairs)
        object.__setattr__(self, "double_lines", double_lines)

    def __hash__(self):
        return hash((self.variant, self.genus, tuple(self.line_pairs.items()), tuple(self.double_lines.items())))

    def fibres(self) -> Iterator[LinePair | DoubleLine]:
        """Every singular fibre, repeated by multiplicity."""
        for r, count in self.line_pairs.items():
            for _ in range(count):
                yield LinePair(r)
        for s, count in self.double_lines.items():
            for _ in range(count):
                yield DoubleLine(s)

    def reduced(self) -> "ConicBundleData":
        """Irreducible-fibre data with the same GW invariants.

        The degree 7 del Pezzo case deforms to a smooth del Pezzo surface of
        degree 7 fibred over P^1 with one line-pair fibre.
        """
        if self.variant is Variant.DEL_PEZZO_7:
            return ConicBundleData(genus=0, line_pairs={0: 1})
        return self


@dataclass(frozen=True)
class Type3Invariants:
    ke2: int
    e3: int
    c2e: int
    n1: int
    n2: int
    variant: Variant = Variant.IRREDUCIBLE

    def __post_init__(self):
        if self.e3 != self.ke2:
            raise InconsistentInvariantsError(f"E^3={self.e3} differs from K_E^2={self.ke2}")
        if self.n1 + 8 * self.n2 != -2 * self.e3:
            raise InconsistentInvariantsError("n1 + 8 n2 != -2 E^3")
        if self.n1 + 2 * self.n2 != self.c2e:
            raise InconsistentInvariantsError("n1 + 2 n2 != c2.E")

    def as_dict(self) -> dict[str, int]:
        return {"ke2": self.ke2, "e3": self.e3, "c2e": self.c2e, "n1": self.n1, "n2": self.n2}


def _fibre_sums(data: ConicBundleData) -> tuple[int, int]:
    s1 = sum(a * (r + 1) for r, a in data.line_pairs.items())
    s2 = sum(b * s for s, b in data.double_lines.items())
    return s1, s2


def invariants(data: ConicBundleData) -> Type3Invariants:
    if data.variant is Variant.ELLIPTIC_QUASI_RULED:
        # E deforms away entirely, so every GW invariant of a multiple of eta vanishes
        return Type3Invariants(0, 0, 0, 0, 0, variant=data.variant)
    variant = data.variant
    data = data.reduced()
    g = data.genus
    s1, s2 = _fibre_sums(data)
    ke2 = 8 * (1 - g) - s1 - s2
    return Type3Invariants(
        ke2=ke2,
        e3=ke2,
        c2e=4 * (g - 1) + 2 * s1 + 2 * s2,
        n1=2 * s1 + 2 * s2,
        n2=2 * g - 2,
        variant=variant,
    )


def n1_from_fibers(data: ConicBundleData) -> int:
    """``n1`` as the sum of per-fibre contributions."""
    if data.variant is not Variant.IRREDUCIBLE:
        raise DomainError(f"per-fibre decomposition needs irreducible generic fibre, got {data.variant.value}")
    return sum(fiber_contribution(f) for f in data.fibres())
