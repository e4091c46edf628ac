"""Change of the cubic and c2 forms across a flop.

With ``N1 = sum n_d d`` and ``N3 = sum n_d d^3`` over the instanton numbers of
the flopped class ``eta``, the flopped forms satisfy, for every divisor D,

    (D')^3       = D^3 - (D . eta)^3 N3
    c2(X') . D'  = c2(X) . D + 2 (D . eta) N1

Flopping back is the same operation with ``-eta``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, InconsistentInvariantsError
from .gw import InstantonSeries, format_rational, series_sums
from .lattice import CubicForm, CurveClass, LinearForm, _as_int, _check_rank, all_sorted_triples


@dataclass(frozen=True)
class FloppedForms:
    cubic: CubicForm
    c2: LinearForm

    def __post_init__(self):
        _check_rank(self.cubic.rank, self.c2)


def flop(mu: CubicForm, c2: LinearForm, eta: CurveClass, series: InstantonSeries) -> FloppedForms:
    """Cubic and c2 forms of the flopped threefold.

    ``eta`` is the primitive class contracted by the flopping face, in
    coordinates dual to the divisor basis; ``series`` holds its instanton
    numbers ``n_d``.
    """
    _check_rank(mu.rank, c2, eta)
    if eta.is_zero():
        raise DomainError("cannot flop along the zero curve class")
    n1, n3 = series_sums(series)
    if n1 == 0 and n3 == 0:
        return FloppedForms(mu, c2)
    e = eta.coords
    coeffs = dict(mu.coeffs)
    for i, j, k in all_sorted_triples(mu.rank):
        shift = e[i] * e[j] * e[k] * n3
        if shift:
            coeffs[(i, j, k)] = coeffs.get((i, j, k), 0) - shift
    new_c2 = tuple(c + 2 * ei * n1 for c, ei in zip(c2.coeffs, e))
    return FloppedForms(CubicForm(mu.rank, coeffs), LinearForm(new_c2))


def flop_nodes(mu: CubicForm, c2: LinearForm, curves: Iterable[CurveClass]) -> FloppedForms:
    """Flop a collection of disjoint (-1,-1)-curves.

    Curves of equal class are grouped; each class ``C`` is flopped once with
    ``n = {1: multiplicity}``. So ``D^3`` drops by ``sum (D . C_i)^3`` and
    ``c2 . D`` grows by ``2 sum D . C_i``.
    """
    counts = Counter()
    for curve in curves:
        _check_rank(mu.rank, curve)
        if curve.is_zero():
            raise DomainError("node curve classes must be nonzero")
        counts[curve] += 1
    result = FloppedForms(mu, c2)
    for curve in sorted(counts, key=lambda c: c.coords):
        result = flop(result.cubic, result.c2, curve, InstantonSeries({1: counts[curve]}))
    return result


def solve_n1_n2(e_cubed: int, c2_dot_e: int) -> tuple[int, int]:
    """Solve ``n1 + 8 n2 = -2 E^3`` and ``n1 + 2 n2 = c2 . E`` exactly.

    These come from flopping a Type III exceptional divisor ``E`` in a
    family, which sends ``E`` to ``-E``. Raises
    :class:`InconsistentInvariantsError` when the solution is not integral.
    """
    e_cubed, c2_dot_e = _as_int(e_cubed), _as_int(c2_dot_e)
    n2, rem = divmod(-2 * e_cubed - c2_dot_e, 6)
    if rem:
        raise InconsistentInvariantsError(
            f"E^3={e_cubed}, c2.E={c2_dot_e} give "
            f"n2={format_rational(Fraction(-2 * e_cubed - c2_dot_e, 6))}, not an integer"
        )
    return c2_dot_e - 2 * n2, n2
