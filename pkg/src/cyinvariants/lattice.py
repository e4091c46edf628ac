"""Divisor and curve lattices, the cubic cup-product form and the c2 linear form.

Everything here is exact integer arithmetic. Divisor classes are coordinate
vectors in a fixed basis ``e_0 .. e_{rho-1}`` of H^2(X, Z)/Tors, curve classes
are coordinate vectors in the dual basis of H_2(X, Z)/Tors, so the pairing
``D . C`` is the plain dot product.

The cubic form is stored sparsely by sorted index triple ``i <= j <= k`` and
extended symmetrically at evaluation time.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, RankMismatchError, ValidationError


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise TypeError(f"expected an integer, got bool {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise TypeError(f"expected an integer, got {type(value).__name__} {value!r}") from None


def _check_rank(expected: int, *objs) -> None:
    for obj in objs:
        if obj.rank != expected:
            raise RankMismatchError(f"rank mismatch: expected {expected}, got {obj.rank}")


def _distinct_orderings(triple: tuple[int, int, int]) -> set[tuple[int, int, int]]:
    return set(permutations(triple))


@dataclass(frozen=True)
class _LatticeVector:
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(_as_int(c) for c in self.coords)
        if not coords:
            raise ValidationError("lattice vectors must have rank >= 1")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def basis(cls, rank: int, index: int):
        if not 0 <= index < rank:
            raise DomainError(f"basis index {index} out of range for rank {rank}")
        return cls(tuple(int(i == index) for i in range(rank)))

    @classmethod
    def zero(cls, rank: int):
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _check_rank(self.rank, other)
        return type(self)(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return type(self)(tuple(-a for a in self.coords))

    def __mul__(self, scalar):
        scalar = _as_int(scalar)
        return type(self)(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


class DivisorClass(_LatticeVector):
    """A class in H^2(X, Z)/Tors, given by integer coordinates."""


class CurveClass(_LatticeVector):
    """A class in H_2(X, Z)/Tors, in the basis dual to the divisor basis."""


def pair(divisor: DivisorClass, curve: CurveClass) -> int:
    """Intersection number ``D . C``."""
    _check_rank(divisor.rank, curve)
    return sum(a * b for a, b in zip(divisor.coords, curve.coords))


def is_primitive(curve: CurveClass) -> bool:
    """True iff the gcd of the coordinates of a nonzero class is 1."""
    if curve.is_zero():
        raise DomainError("primitivity is undefined for the zero class")
    return reduce(math.gcd, curve.coords) == 1


@dataclass(frozen=True)
class CubicForm:
    """Symmetric integer trilinear form ``mu(e_i, e_j, e_k)``.

    ``coeffs`` maps sorted triples ``(i, j, k)`` with ``i <= j <= k`` to
    integers. Zero coefficients are dropped so that equal forms compare equal.
    """

    rank: int
    coeffs: Mapping[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        rank = _as_int(self.rank)
        if rank < 1:
            raise ValidationError(f"rank must be >= 1, got {rank}")
        clean = {}
        for key, value in self.coeffs.items():
            i, j, k = (_as_int(x) for x in key)
            if not i <= j <= k:
                raise ValidationError(f"cubic index ({i},{j},{k}) is not sorted")
            if i < 0 or k >= rank:
                raise ValidationError(f"cubic index ({i},{j},{k}) out of range for rank {rank}")
            value = _as_int(value)
            if value:
                clean[(i, j, k)] = value
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, rank: int) -> "CubicForm":
        return cls(rank, {})

    @classmethod
    def from_symmetric(cls, rank: int, entries: Mapping[tuple[int, int, int], int]) -> "CubicForm":
        """Build from a map whose keys may be in any order.

        Keys that are permutations of each other must agree.
        """
        coeffs: dict[tuple[int, int, int], int] = {}
        for key, value in entries.items():
            skey = tuple(sorted(key))
            if skey in coeffs and coeffs[skey] != value:
                raise ValidationError(f"asymmetric entries for {skey}")
            coeffs[skey] = value
        return cls(rank, coeffs)

    def coefficient(self, i: int, j: int, k: int) -> int:
        return self.coeffs.get(tuple(sorted((i, j, k))), 0)

    def entries(self) -> list[tuple[int, int, int, int]]:
        """Nonzero coefficients as sorted ``(i, j, k, c)`` tuples."""
        return [(i, j, k, c) for (i, j, k), c in self.coeffs.items()]

    def __eq__(self, other):
        if not isinstance(other, CubicForm):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, tuple(self.coeffs.items())))


@dataclass(frozen=True)
class LinearForm:
    """Integer linear form on the divisor lattice, ``coeffs[i] = c2 . e_i``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(_as_int(c) for c in self.coeffs)
        if not coeffs:
            raise ValidationError("linear form must have rank >= 1")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, rank: int) -> "LinearForm":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coeffs)


def eval_cubic(mu: CubicForm, d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> int:
    """Evaluate ``mu(D1, D2, D3)`` using the symmetric extension of the stored coefficients."""
    _check_rank(mu.rank, d1, d2, d3)
    x, y, z = d1.coords, d2.coords, d3.coords
    total = 0
    for triple, c in mu.coeffs.items():
        for a, b, k in _distinct_orderings(triple):
            total += c * x[a] * y[b] * z[k]
    return total


def eval_linear(form: LinearForm, divisor: DivisorClass) -> int:
    _check_rank(form.rank, divisor)
    return sum(a * b for a, b in zip(form.coeffs, divisor.coords))


def is_on_cubic_cone(mu: CubicForm, divisor: DivisorClass) -> bool:
    """True iff ``D^3 == 0``."""
    return eval_cubic(mu, divisor, divisor, divisor) == 0


# -- exact integer linear algebra ---------------------------------------------

def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix by Bareiss elimination."""
    m = [list(map(_as_int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise RankMismatchError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matrix_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix (fraction-free row reduction)."""
    m = [list(map(_as_int, row)) for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, rows):
            f = m[r][col]
            if f:
                m[r] = [p * a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True)
class QuadricMatrix:
    """Symmetric matrix ``q_ij = mu(D, e_i, e_j)`` of the quadratic form ``L -> D . L^2``."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def determinant(self) -> int:
        return determinant(self.entries)

    @property
    def rank(self) -> int:
        return matrix_rank(self.entries)

    @property
    def degenerate(self) -> bool:
        return self.determinant == 0

    def __call__(self, vector: DivisorClass) -> int:
        """Value of the quadratic form on ``vector``."""
        _check_rank(self.size, vector)
        v = vector.coords
        return sum(v[i] * qij * v[j] for i, row in enumerate(self.entries) for j, qij in enumerate(row))


def hessian_quadric(mu: CubicForm, divisor: DivisorClass) -> QuadricMatrix:
    _check_rank(mu.rank, divisor)
    n = mu.rank
    q = [[0] * n for _ in range(n)]
    x = divisor.coords
    for triple, c in mu.coeffs.items():
        for a, b, k in _distinct_orderings(triple):
            q[b][k] += c * x[a]
    return QuadricMatrix(tuple(tuple(row) for row in q))


# -- change of basis ----------------------------------------------------------

@dataclass(frozen=True)
class BasisChange:
    """An integral change of divisor basis.

    Column ``a`` of ``matrix`` holds the old coordinates of the new basis
    vector ``e'_a``, so old coordinates are ``x = P x'``. Curve coordinates
    transform by the transpose, which keeps every pairing ``D . C`` fixed.
    """

    matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = tuple(tuple(_as_int(a) for a in row) for row in self.matrix)
        det = determinant(p)
        if det not in (1, -1):
            raise DomainError(f"basis change must be unimodular, determinant is {det}")
        object.__setattr__(self, "matrix", p)
        object.__setattr__(self, "inverse", _integer_inverse(p))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def divisor(self, d: DivisorClass) -> DivisorClass:
        _check_rank(self.rank, d)
        return DivisorClass(tuple(sum(row[j] * d[j] for j in range(self.rank)) for row in self.inverse))

    def curve(self, c: CurveClass) -> CurveClass:
        _check_rank(self.rank, c)
        p = self.matrix
        return CurveClass(tuple(sum(p[i][a] * c[i] for i in range(self.rank)) for a in range(self.rank)))

    def linear(self, form: LinearForm) -> LinearForm:
        _check_rank(self.rank, form)
        p = self.matrix
        return LinearForm(tuple(sum(p[i][a] * form.coeffs[i] for i in range(self.rank)) for a in range(self.rank)))

    def cubic(self, mu: CubicForm) -> CubicForm:
        _check_rank(self.rank, mu)
        columns = [DivisorClass(tuple(row[a] for row in self.matrix)) for a in range(self.rank)]
        coeffs = {
            (a, b, c): eval_cubic(mu, columns[a], columns[b], columns[c])
            for a, b, c in combinations_with_replacement(range(self.rank), 3)
        }
        return CubicForm(self.rank, coeffs)


def _integer_inverse(p: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(p)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == r)) for i in range(n)] for r, row in enumerate(p)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise DomainError("matrix has no integral inverse")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


def all_sorted_triples(rank: int) -> Iterable[tuple[int, int, int]]:
    return combinations_with_replacement(range(rank), 3)
