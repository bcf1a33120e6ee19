"""Command-line front end: ``reeslike check|patch|reduce|k1|verify``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .certs import UmRow
from .errors import (
    BoundViolation,
    DeterminantMismatch,
    DualMismatch,
    ImageMismatch,
    MalformedCertificate,
    MalformedElement,
    MalformedInput,
    NoCornerSolver,
    NoRowSolver,
    NotAUnit,
    NotInAlgebra,
    NotUnimodular,
    PreconditionFailed,
    UnsupportedRing,
)
from .patching import Certification, ConductorSquare, patch_matrix, patch_row
from .reduction import ReductionReport, Stage, k1_reduce, reduce_row_artinian, reduce_row_rees_patched
from .rees import ReesCtx
from .suites import SUITES, run_suite
from . import textio
from .verify import verify_certificate

DEFAULT_CTX = "rees{ring=Zn:4,a=ideal[2]}"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CORNER = 0, 1, 2, 3

_INPUT_ERRORS = (MalformedInput, MalformedElement, MalformedCertificate, NotInAlgebra, UnsupportedRing, OSError)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def _read(path: str) -> str:
    return Path(path).read_text()


def _context(text: str) -> ReesCtx:
    return textio.as_context(textio.parse_ambient(text))


def cmd_check(args) -> int:
    ctx = _context(args.ctx)
    if args.trials < 0:
        raise MalformedInput("--trials must be non-negative")
    res = run_suite(args.suite, ctx, args.seed, args.trials)
    _emit(res.render(), args.out)
    return EXIT_OK if res.ok else EXIT_FAIL


def _read_row(objs, alg):
    if "row" not in objs:
        raise MalformedInput("input has no 'row' line")
    row = textio.parse_row(objs["row"], alg)
    if "dual" in objs:
        try:
            return UmRow(alg, row, textio.parse_row(objs["dual"], alg))
        except (NotUnimodular, ValueError) as exc:
            raise MalformedInput(f"bad dual: {exc}") from exc
    return row


def cmd_reduce(args) -> int:
    objs = textio.parse_objects(_read(args.input))
    ctx = textio.as_context(textio.object_ambient(objs, _context(args.ctx)))
    row = _read_row(objs, ctx)
    entries = list(row.entries) if isinstance(row, UmRow) else row
    if args.mode == "direct":
        rep = ReductionReport(Certification.FAILED, ctx, entries)
        try:
            cert = reduce_row_artinian(row, ctx)
        except NotUnimodular as exc:
            rep.log.append(Stage("direct", False, str(exc)))
        else:
            rep.status = Certification.FULLY_ELEMENTARY
            rep.cert_A = cert
            rep.final_row = cert.apply_row(entries)
            rep.log.append(Stage("direct", True, "split, reduce mod nilradical, lift, clean up"))
    else:
        try:
            rep = reduce_row_rees_patched(row, ambient=ctx)
        except NotUnimodular as exc:
            rep = ReductionReport(Certification.FAILED, ctx, entries, log=[Stage("corner", False, str(exc))])
    _emit(textio.format_report(rep), args.out)
    return {Certification.FULLY_ELEMENTARY: EXIT_OK, Certification.CORNER_CERTIFIED: EXIT_CORNER}.get(
        rep.status, EXIT_FAIL)


def cmd_patch(args) -> int:
    objs = textio.parse_objects(_read(args.input))
    ctx = textio.as_context(textio.object_ambient(objs, _context(args.ctx)))
    sq = ConductorSquare(ctx)
    mode = args.mode
    if mode == "row":
        need = ("row1", "dual1", "row2", "dual2")
        missing = [k for k in need if k not in objs]
        if missing:
            raise MalformedInput(f"missing {', '.join(missing)}")
        try:
            r1 = UmRow(sq.Rt, textio.parse_row(objs["row1"], sq.Rt), textio.parse_row(objs["dual1"], sq.Rt))
            r2 = UmRow(sq.Ru_bar, textio.parse_row(objs["row2"], sq.Ru_bar), textio.parse_row(objs["dual2"], sq.Ru_bar))
        except (NotUnimodular, ValueError) as exc:
            raise MalformedInput(str(exc)) from exc
        out = patch_row(r1, r2, sq)
        text = f"patched mode=row ambient={ctx.handle}\nrow {textio.format_row(out.entries, ctx)}\n"
        text += f"dual {textio.format_row(out.dual, ctx)}\n"
        _emit(text, args.out)
        return EXIT_OK
    need = ("matrix1", "inverse1", "matrix2", "inverse2")
    missing = [k for k in need if k not in objs]
    if missing:
        raise MalformedInput(f"missing {', '.join(missing)}")
    m1, i1 = (textio.parse_matrix(objs[k], sq.Rt) for k in need[:2])
    m2, i2 = (textio.parse_matrix(objs[k], sq.Ru_bar) for k in need[2:])
    pm = patch_matrix(m1, i1, m2, i2, sq, mode, cert1=objs.get("cert1"), cert2=objs.get("cert2"))
    text = f"patched mode={pm.mode} ambient={ctx.handle}\n"
    text += f"matrix {textio.format_matrix(pm.matrix, ctx)}\ninverse {textio.format_matrix(pm.inverse, ctx)}\n"
    if pm.level is not None:
        text += f"level {pm.level} route={pm.route}\n"
        if pm.cert is not None:
            text += textio.format_block("cert_A", pm.cert)
    _emit(text, args.out)
    return EXIT_CORNER if pm.level is Certification.CORNER_CERTIFIED else EXIT_OK


def cmd_k1(args) -> int:
    objs = textio.parse_objects(_read(args.input))
    alg = textio.object_ambient(objs, textio.parse_ambient(args.ctx))
    if "matrix" not in objs or "inverse" not in objs:
        raise MalformedInput("input needs 'matrix' and 'inverse' lines")
    m = textio.parse_matrix(objs["matrix"], alg)
    m_inv = textio.parse_matrix(objs["inverse"], alg)
    r = args.size if args.size is not None else max(3, alg.base.dim + 2)
    try:
        res = k1_reduce(m, m_inv, r, alg)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    text = f"k1 ambient={alg.handle} n={len(m)} r={r}\n"
    text += f"matrix {textio.format_matrix(res.matrix, alg)}\ninverse {textio.format_matrix(res.inverse, alg)}\n"
    text += textio.format_block("sigma1", res.sigma1) + textio.format_block("sigma2", res.sigma2)
    _emit(text, args.out)
    return EXIT_OK


def _read_start(text: str, alg, key=None):
    for k in [key] if key else ["row", "matrix"]:
        raw = textio.find_value(text, k)
        if raw is not None:
            return textio.parse_matrix(raw, alg) if raw.replace(" ", "").startswith("[[") else textio.parse_row(raw, alg)
    raise MalformedInput(f"expected a '{key or 'row'}' or 'matrix' line")


def cmd_verify(args) -> int:
    text = _read(args.cert)
    cert = textio.extract_block(text, args.block) if args.block else textio.parse_cert(text)
    start = _read_start(_read(args.start), cert.ambient, args.start_key)
    expected = _read_start(_read(args.expected), cert.ambient, args.expected_key)
    try:
        res = verify_certificate(cert, start, expected, side=args.side)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    if res.ok:
        sys.stdout.write(f"verified ops={len(cert)} ambient={cert.ambient.handle}\n")
        return EXIT_OK
    pos, got, want = res.diff
    sys.stdout.write(f"mismatch at {pos}: got {got}, expected {want}\n")
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reeslike", description="Rees-like algebras: patching and elementary reduction")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ctx=True):
        if ctx:
            sp.add_argument("--ctx", default=DEFAULT_CTX, help="context, e.g. 'rees{ring=Z,a=ideal[2]}'")
        sp.add_argument("--out", help="also write the report to this file")

    c = sub.add_parser("check", help="run a randomized identity suite")
    common(c)
    c.add_argument("--suite", required=True, choices=sorted(SUITES))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=100)
    c.set_defaults(func=cmd_check)

    pt = sub.add_parser("patch", help="glue corner rows or matrices into one over A")
    common(pt)
    pt.add_argument("input")
    pt.add_argument("--mode", default="GL", choices=["row", "GL", "SL", "E"])
    pt.set_defaults(func=cmd_patch)

    r = sub.add_parser("reduce", help="reduce a unimodular row over A to e_1")
    common(r)
    r.add_argument("input")
    r.add_argument("--mode", default="patched", choices=["direct", "patched"])
    r.set_defaults(func=cmd_reduce)

    k = sub.add_parser("k1", help="shrink an invertible matrix by elementary operations")
    common(k)
    k.add_argument("input")
    k.add_argument("--size", type=int, help="target size (default max(3, dim R + 2))")
    k.set_defaults(func=cmd_k1)

    v = sub.add_parser("verify", help="replay a certificate independently")
    v.add_argument("cert")
    v.add_argument("start")
    v.add_argument("expected")
    v.add_argument("--side", default="right", choices=["right", "left"])
    v.add_argument("--block", help="read the certificate from this named block of a report")
    v.add_argument("--start-key", help="line key holding the start (default row, then matrix)")
    v.add_argument("--expected-key", help="line key holding the expected value")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BoundViolation, NoCornerSolver, NoRowSolver) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ImageMismatch, DualMismatch, DeterminantMismatch, NotAUnit, PreconditionFailed, NotUnimodular) as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
