"""Internal consistency checks run by ``cyinvariants check``."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .documents import ThreefoldDocument
from .errors import InvariantsError
from .faces import classify_face
from .flop import flop, solve_n1_n2
from .gw import gw_brute, gw_sequence, gw_total, invert_gw, series_sums
from .lattice import DivisorClass, eval_cubic, eval_linear, pair
from .type3 import ConicBundleData, Variant, invariants, n1_from_fibers

GW_CHECK_DEGREE = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def probe_divisors(doc: ThreefoldDocument) -> list[DivisorClass]:
    """Basis vectors, pairwise sums and differences, and every face's interior divisor."""
    rank = doc.rank
    basis = [DivisorClass.basis(rank, i) for i in range(rank)]
    probes = list(basis)
    for a, b in combinations(basis, 2):
        probes += [a + b, a - b]
    probes += [face.interior_divisor for face in doc.faces]
    return probes


def _face_checks(doc: ThreefoldDocument, index: int) -> list[CheckResult]:
    face = doc.face(index)
    prefix = f"face_{index}"
    results = []
    try:
        kind = classify_face(doc.cubic, face)
        results.append(CheckResult(f"{prefix}.classify", True, kind.face_type.value))
    except InvariantsError as exc:
        results.append(CheckResult(f"{prefix}.classify", False, str(exc)))
    series = face.instantons
    if series is None:
        return results

    flopped = flop(doc.cubic, doc.c2, face.eta, series)
    back = flop(flopped.cubic, flopped.c2, -face.eta, series)
    results.append(CheckResult(f"{prefix}.flop_involution", back.cubic == doc.cubic and back.c2 == doc.c2))

    n1, n3 = series_sums(series)
    bad = []
    for d in probe_divisors(doc):
        p = pair(d, face.eta)
        if eval_cubic(flopped.cubic, d, d, d) != eval_cubic(doc.cubic, d, d, d) - p**3 * n3:
            bad.append(f"cubic at ({d})")
        if eval_linear(flopped.c2, d) != eval_linear(doc.c2, d) + 2 * p * n1:
            bad.append(f"c2 at ({d})")
    results.append(CheckResult(f"{prefix}.flop_evaluation", not bad, "; ".join(bad)))

    p = pair(face.interior_divisor, face.eta)
    mismatched = [m for m in range(1, GW_CHECK_DEGREE + 1) if gw_total(series, p, m) != gw_brute(series, p, m)]
    results.append(CheckResult(f"{prefix}.gw_oracle", not mismatched, f"mismatch at m={mismatched}" if mismatched else ""))

    length = max(GW_CHECK_DEGREE, series.max_degree)
    results.append(CheckResult(f"{prefix}.gw_round_trip", invert_gw(gw_sequence(series, length)) == series))
    return results


def check_threefold(doc: ThreefoldDocument) -> list[CheckResult]:
    results = [CheckResult("cubic.symmetric", all(i <= j <= k for i, j, k, _ in doc.cubic.entries()))]
    for index in range(len(doc.faces)):
        results += _face_checks(doc, index)
    return results


def check_conic_bundle(data: ConicBundleData) -> list[CheckResult]:
    try:
        inv = invariants(data)
    except InvariantsError as exc:
        return [CheckResult("identities", False, str(exc))]
    results = [CheckResult("identities", True)]
    if data.variant is Variant.ELLIPTIC_QUASI_RULED:
        results.append(CheckResult("all_zero", inv.as_dict() == dict.fromkeys(inv.as_dict(), 0)))
        return results
    try:
        solved = solve_n1_n2(inv.e3, inv.c2e)
        results.append(CheckResult("solve_n1_n2", solved == (inv.n1, inv.n2), f"solved={solved}"))
    except InvariantsError as exc:
        results.append(CheckResult("solve_n1_n2", False, str(exc)))
    reduced = data.reduced()
    results.append(CheckResult("n1_from_fibers", n1_from_fibers(reduced) == inv.n1))
    results.append(CheckResult("n2_genus", inv.n2 == 2 * reduced.genus - 2))
    return results
