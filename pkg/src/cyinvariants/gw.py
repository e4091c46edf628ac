"""Instanton numbers and 3-point Gromov-Witten values of multiples of a primitive class.

For a primitive class ``eta`` vanishing on a contraction face, write ``n_d``
for the instanton number of ``d * eta``. The multiple-cover formula gives

    Phi_{m eta}(D, D, D) = (D . eta)^3 * sum_{d | m} n_d d^3

and the exchange value used throughout is the normalized divisor sum
``G_m = sum_{d | m} n_d d^3``. Mobius inversion recovers ``n`` from ``G``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, InconsistentInvariantsError, ValidationError
from .lattice import _as_int


def format_rational(value: Fraction) -> str:
    """``p/q`` for non-integral values, plain decimal otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class InstantonSeries:
    """Finitely supported map ``d -> n_d`` for ``d >= 1``.

    Absent degrees mean ``n_d = 0``; zero values are dropped on construction.
    Negative values are allowed (Type III contractions have ``n_2 < 0`` for
    genus zero).
    """

    values: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, n in self.values.items():
            d, n = _as_int(d), _as_int(n)
            if d < 1:
                raise ValidationError(f"instanton degree must be >= 1, got {d}")
            if n:
                clean[d] = n
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    @classmethod
    def from_list(cls, numbers: Iterable[int]) -> "InstantonSeries":
        """``[n_1, n_2, ...]`` -> series."""
        return cls({d: n for d, n in enumerate(numbers, start=1)})

    def __getitem__(self, degree: int) -> int:
        return self.values.get(degree, 0)

    def __iter__(self):
        return iter(self.values.items())

    def __len__(self):
        return len(self.values)

    def __bool__(self):
        return bool(self.values)

    def __eq__(self, other):
        if not isinstance(other, InstantonSeries):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values.items()))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.values)

    @property
    def max_degree(self) -> int:
        return max(self.values, default=0)

    def is_nonnegative(self) -> bool:
        return all(n >= 0 for n in self.values.values())

    def to_list(self, length: int | None = None) -> list[int]:
        length = self.max_degree if length is None else length
        return [self[d] for d in range(1, length + 1)]


@dataclass(frozen=True)
class GwSequence:
    """Normalized values ``G_1 .. G_M`` with ``G_m = Phi_{m eta}(D,D,D) / (D . eta)^3``."""

    normalized: tuple[int, ...]

    def __post_init__(self):
        values = tuple(_as_int(g) for g in self.normalized)
        if not values:
            raise ValidationError("a GW sequence needs at least one entry")
        object.__setattr__(self, "normalized", values)

    def __len__(self):
        return len(self.normalized)

    def __getitem__(self, m: int) -> int:
        """1-based access, ``seq[m] == G_m``."""
        if not 1 <= m <= len(self.normalized):
            raise IndexError(m)
        return self.normalized[m - 1]


def moebius(k: int) -> int:
    """Mobius function by trial division."""
    k = _as_int(k)
    if k < 1:
        raise DomainError(f"moebius is defined for k >= 1, got {k}")
    result = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def series_sums(series: InstantonSeries) -> tuple[int, int]:
    """``(sum n_d d, sum n_d d^3)``, the two sums that drive a flop."""
    n1 = sum(n * d for d, n in series)
    n3 = sum(n * d**3 for d, n in series)
    return n1, n3


def _check_degree(m) -> int:
    m = _as_int(m)
    if m < 1:
        raise DomainError(f"curve multiple must be >= 1, got {m}")
    return m


def gw_total(series: InstantonSeries, pairing: int, m: int) -> int:
    """``Phi_{m eta}(D,D,D)`` given ``pairing = D . eta``, by the divisor-sum formula."""
    m = _check_degree(m)
    return _as_int(pairing) ** 3 * sum(series[d] * d**3 for d in divisors(m))


def gw_brute(series: InstantonSeries, pairing: int, m: int) -> int:
    """``Phi_{m eta}(D,D,D)`` summed over all ``k * B = m eta`` with weights ``1/k^3``.

    Intermediate values are exact rationals; the result must be an integer.
    Kept deliberately independent of :func:`gw_total` so the two can check
    each other.
    """
    m = _check_degree(m)
    a = m * _as_int(pairing)  # D . (m eta)
    total = Fraction(0)
    for k in range(1, m + 1):
        if m % k == 0:
            total += Fraction(series[m // k], k**3)
    value = a**3 * total
    if value.denominator != 1:
        raise InconsistentInvariantsError(
            f"multiple-cover sum is not integral: {format_rational(value)}"
        )
    return value.numerator


def gw_sequence(series: InstantonSeries, length: int) -> GwSequence:
    """``G_1 .. G_length`` for ``series``."""
    length = _check_degree(length)
    return GwSequence(tuple(gw_total(series, 1, m) for m in range(1, length + 1)))


def invert_gw(sequence: GwSequence | Iterable[int]) -> InstantonSeries:
    """Recover instanton numbers from normalized GW values by Mobius inversion.

    ``n_m = m^-3 * sum_{d | m} mu(m/d) G_d``. Raises
    :class:`InconsistentInvariantsError` if some ``n_m`` is not an integer.
    """
    if not isinstance(sequence, GwSequence):
        sequence = GwSequence(tuple(sequence))
    values = {}
    for m in range(1, len(sequence) + 1):
        numerator = sum(moebius(m // d) * sequence[d] for d in divisors(m))
        n_m = Fraction(numerator, m**3)
        if n_m.denominator != 1:
            raise InconsistentInvariantsError(
                f"n_{m}={format_rational(n_m)} is not an integer; "
                "the sequence is not realizable by integer instanton numbers"
            )
        values[m] = n_m.numerator
    return InstantonSeries(values)
