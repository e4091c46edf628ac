"""Command line interface.

Every subcommand prints one ``key=value`` pair per line on stdout. Exit
status is 0 on success, 1 on a domain or validation error and 2 on a usage
error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import __version__
from .checks import check_conic_bundle, check_threefold
from .documents import ThreefoldDocument, parse_conic_bundle, parse_document, parse_threefold
from .errors import InvariantsError
from .faces import ContractionFace, face_signature
from .flop import FloppedForms, flop, flop_nodes
from .gw import InstantonSeries, gw_brute, gw_total, invert_gw
from .lattice import CurveClass, DivisorClass, eval_cubic, eval_linear, hessian_quadric
from .type3 import ConicBundleData, Variant, invariants


class CommandError(InvariantsError):
    """Bad input discovered while running a command; exit status 1."""


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part, 10) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    key, sep, value = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return int(key, 10), int(value, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected INDEX:COUNT, got {text!r}") from None


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from None


def _threefold(args) -> ThreefoldDocument:
    return parse_threefold(_read(args.input))


def _divisor(doc: ThreefoldDocument, coords) -> DivisorClass:
    d = DivisorClass(coords)
    if d.rank != doc.rank:
        raise CommandError(f"divisor ({d}) has rank {d.rank}, document has rank {doc.rank}")
    return d


def _series(pairs) -> InstantonSeries:
    values: dict[int, int] = {}
    for d, n in pairs or ():
        if d in values:
            raise CommandError(f"degree {d} given twice")
        values[d] = n
    return InstantonSeries(values)


def _emit_forms(out: TextIO, forms: FloppedForms) -> None:
    for i, j, k, c in forms.cubic.entries():
        print(f"cubic_{i}_{j}_{k}={c}", file=out)
    print("c2=" + ",".join(str(c) for c in forms.c2.coeffs), file=out)


# -- subcommands ----------------------------------------------------------------

def cmd_eval(args, out):
    doc = _threefold(args)
    divisors = [_divisor(doc, v) for v in args.divisor]
    if len(divisors) == 1:
        (d,) = divisors
        print(f"divisor={d}", file=out)
        print(f"d3={eval_cubic(doc.cubic, d, d, d)}", file=out)
        print(f"c2_d={eval_linear(doc.c2, d)}", file=out)
    elif len(divisors) == 3:
        print(f"mu={eval_cubic(doc.cubic, *divisors)}", file=out)
    else:
        raise CommandError("eval takes one --divisor (D^3 and c2.D) or three (mu(D1,D2,D3))")


def cmd_hessian(args, out):
    doc = _threefold(args)
    if args.face is not None:
        d = doc.face(args.face).interior_divisor
    elif args.divisor is not None:
        d = _divisor(doc, args.divisor)
    else:
        raise CommandError("hessian needs --divisor or --face")
    q = hessian_quadric(doc.cubic, d)
    for i, row in enumerate(q.entries):
        print(f"q_{i}=" + ",".join(str(v) for v in row), file=out)
    print(f"det={q.determinant}", file=out)
    print(f"rank={q.rank}", file=out)
    print(f"degenerate={str(q.degenerate).lower()}", file=out)


def cmd_flop(args, out):
    doc = _threefold(args)
    if args.face is not None:
        if args.eta is not None or args.instanton:
            raise CommandError("give either --face or --eta/--instanton, not both")
        face = doc.face(args.face)
        if face.instantons is None:
            raise CommandError(f"face {args.face} carries no instanton data")
        eta, series = face.eta, face.instantons
    elif args.eta is not None:
        eta, series = CurveClass(args.eta), _series(args.instanton)
    else:
        raise CommandError("flop needs --face or --eta")
    _emit_forms(out, flop(doc.cubic, doc.c2, eta, series))


def cmd_flop_nodes(args, out):
    doc = _threefold(args)
    curves = [CurveClass(v) for v in args.eta or ()]
    _emit_forms(out, flop_nodes(doc.cubic, doc.c2, curves))


def cmd_gw(args, out):
    series = _series(args.instanton)
    top = args.max_degree if args.max_degree is not None else max(series.max_degree, 1)
    if top < 1:
        raise CommandError("--max-degree must be >= 1")
    for m in range(1, top + 1):
        total = gw_total(series, args.pairing, m)
        if total != gw_brute(series, args.pairing, m):
            raise CommandError(f"multiple-cover oracle disagrees at m={m}")
        print(f"phi_{m}={total}", file=out)


def cmd_invert_gw(args, out):
    series = invert_gw(args.g)
    for m in range(1, len(args.g) + 1):
        print(f"n_{m}={series[m]}", file=out)


def cmd_type3(args, out):
    if args.input is not None:
        if args.genus is not None or args.line_pair or args.double_line or args.variant is not None:
            raise CommandError("give either --input or fibre flags, not both")
        data = parse_conic_bundle(_read(args.input))
    else:
        variant = Variant(args.variant or Variant.IRREDUCIBLE.value)
        genus = args.genus
        if genus is None:
            genus = {Variant.ELLIPTIC_QUASI_RULED: 1, Variant.DEL_PEZZO_7: 0}.get(variant)
            if genus is None:
                raise CommandError("type3 needs --genus or --input")
        data = ConicBundleData(
            genus=genus,
            line_pairs=_counts(args.line_pair, "line pair"),
            double_lines=_counts(args.double_line, "double line"),
            variant=variant,
        )
    for key, value in invariants(data).as_dict().items():
        print(f"{key}={value}", file=out)


def _counts(pairs, what) -> dict[int, int]:
    counts: dict[int, int] = {}
    for index, count in pairs or ():
        if index in counts:
            raise CommandError(f"{what} index {index} given twice")
        counts[index] = count
    return counts


def cmd_classify(args, out):
    doc = _threefold(args)
    indices = [args.face] if args.face is not None else range(len(doc.faces))
    for n in indices:
        face: ContractionFace = doc.face(n)
        sig = face_signature(doc.cubic, face)
        print(f"face_{n}.label={face.label}", file=out)
        print(f"face_{n}.type={sig.classification.face_type.value}", file=out)
        print(f"face_{n}.reason={sig.classification.reason}", file=out)
        print(f"face_{n}.d3={sig.cubic_value}", file=out)
        print(f"face_{n}.hessian_rank={sig.hessian_rank}", file=out)
        print(f"face_{n}.hessian_det={sig.hessian_determinant}", file=out)
        print(f"face_{n}.instantons={sig.instanton_summary}", file=out)


def cmd_check(args, out):
    doc = parse_document(_read(args.input))
    if isinstance(doc, ConicBundleData):
        results = check_conic_bundle(doc)
    else:
        results = check_threefold(doc)
    for r in results:
        line = f"{r.name}={'ok' if r.ok else 'fail'}"
        if not r.ok and r.detail:
            line += f" ({r.detail})"
        print(line, file=out)
    if not all(r.ok for r in results):
        raise CommandError("consistency check failed")


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyinvariants",
        description="Exact invariants of primitive contractions of Calabi-Yau threefolds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text, description):
        p = sub.add_parser(name, help=help_text, description=description)
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "evaluate the cubic and c2 forms",
            "With one divisor D print D^3 and c2.D; with three print mu(D1,D2,D3).")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--divisor", type=_vector, action="append", required=True, metavar="i,j,...")

    p = add("hessian", cmd_hessian, "matrix of the quadratic form L -> D.L^2",
            "Print q_ij = mu(D, e_i, e_j), its determinant and rank. "
            "A degenerate form at an interior divisor marks a Type II face.")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--divisor", type=_vector, metavar="i,j,...")
    p.add_argument("--face", type=int, metavar="INDEX")

    p = add("flop", cmd_flop, "cubic and c2 forms after a flop",
            "(D')^3 = D^3 - (D.eta)^3 sum n_d d^3 and "
            "c2(X').D' = c2(X).D + 2 (D.eta) sum n_d d. Flop back with -eta.")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--face", type=int, metavar="INDEX")
    p.add_argument("--eta", type=_vector, metavar="i,j,...")
    p.add_argument("--instanton", type=_pair, action="append", metavar="D:N",
                   help="instanton number n_D=N of D*eta (repeatable; with --eta)")

    p = add("flop-nodes", cmd_flop_nodes, "flop disjoint (-1,-1)-curves",
            "(D')^3 = D^3 - sum (D.C_i)^3 and c2(X').D' = c2(X).D + 2 sum D.C_i. "
            "Pass --eta once per node.")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--eta", type=_vector, action="append", metavar="i,j,...")

    p = add("gw", cmd_gw, "3-point GW values from instanton numbers",
            "Phi_{m eta}(D,D,D) = (D.eta)^3 sum_{d|m} n_d d^3, checked against the "
            "sum over k*B = m*eta of n(B)/k^3.")
    p.add_argument("--instanton", type=_pair, action="append", metavar="D:N")
    p.add_argument("--pairing", type=int, default=1, metavar="P", help="D.eta (default 1)")
    p.add_argument("--max-degree", type=int, metavar="M")

    p = add("invert-gw", cmd_invert_gw, "instanton numbers from normalized GW values",
            "Given G_m = sum_{d|m} n_d d^3 for m = 1..M, print n_m = m^-3 sum_{d|m} mu(m/d) G_d.")
    p.add_argument("--g", type=int, action="append", required=True, metavar="VALUE")

    p = add("type3", cmd_type3, "invariants of a Type III contraction",
            "K_E^2 = E^3 = 8(1-g) - sum a_r (r+1) - sum b_s s, n1 = 2 sum a_r (r+1) + 2 sum b_s s, "
            "n2 = 2g - 2, and c2.E = n1 + 2 n2.")
    p.add_argument("--input", metavar="PATH")
    p.add_argument("--genus", type=int, metavar="N")
    p.add_argument("--line-pair", type=_pair, action="append", metavar="R:COUNT")
    p.add_argument("--double-line", type=_pair, action="append", metavar="S:COUNT")
    p.add_argument("--variant", choices=[v.value for v in Variant])

    p = add("classify", cmd_classify, "contraction type of nef-cone faces",
            "Type II if D.L^2 is degenerate at the interior divisor; otherwise III0 if some "
            "instanton number is negative, I if all are nonnegative, indeterminate without data.")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--face", type=int, metavar="INDEX")

    p = add("check", cmd_check, "run all consistency identities on a document",
            "For threefold documents: flop involution, flop evaluation law, multiple-cover oracle "
            "and inversion round trip per face. For conic bundle documents: Type III identities.")
    p.add_argument("--input", required=True, metavar="PATH")
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    saved = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    finally:
        sys.stdout, sys.stderr = saved
    try:
        args.func(args, out)
    except InvariantsError as exc:
        print(f"error: {exc}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
