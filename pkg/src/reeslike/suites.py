"""Randomized identity suites behind ``reeslike check``.

A suite builds cases from a seeded generator, checks each against an
independent oracle and reports counts, a digest of every case and outcome,
and a minimized counterexample on failure. Reports depend only on the
context, seed and trial count.
"""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from dataclasses import dataclass, field

from . import fuzz
from . import matrices as mx
from .errors import ImageMismatch, NotInAlgebra, ReesError, UnsupportedRing
from .patching import Certification, ConductorSquare, patch_element, patch_matrix, patch_row
from .poly import Poly
from .reduction import k1_reduce, reduce_row_artinian, reduce_row_rees_patched
from .rees import (
    ReesCtx,
    ReesElem,
    extended_membership,
    is_nilpotent,
    quotient_image,
    star_membership,
    star_primary_components,
)
from .rings import INTEGERS, IdealFG, RingCtx, ideal_intersect
from .certs import UmRow
from .verify import verify_certificate


class InvalidCase(Exception):
    """A shrinking candidate that no longer describes a valid input."""


@dataclass
class SuiteResult:
    suite: str
    ctx: ReesCtx
    seed: int
    trials: int
    passed: int = 0
    failed: int = 0
    counts: Counter = field(default_factory=Counter)
    digest: str = ""
    first_failure: str | None = None
    minimized: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def render(self) -> str:
        lines = [f"check suite={self.suite} ctx={self.ctx.handle} seed={self.seed} trials={self.trials}"]
        if self.counts:
            lines.append("counts " + " ".join(f"{k}={self.counts[k]}" for k in sorted(self.counts)))
        verdict = "pass" if self.ok else "fail"
        lines.append(f"result={verdict} passed={self.passed} failed={self.failed} digest={self.digest}")
        if self.first_failure is not None:
            lines.append(f"failure {self.first_failure}")
            lines.append(f"minimized {self.minimized}")
        return "\n".join(lines) + "\n"


# plain-int oracles


def _pmul(f, g, ring: RingCtx):
    if not f or not g:
        return []
    out = [ring.zero_elem] * (len(f) + len(g) - 1)
    for a, x in enumerate(f):
        for b, y in enumerate(g):
            out[a + b] = ring.add(out[a + b], ring.mul(x, y))
    while out and out[-1] == 0:
        out.pop()
    return out


def _ppow_is_zero(cs, k: int, ring: RingCtx) -> bool:
    acc = [ring.one_elem]
    for _ in range(k):
        acc = _pmul(acc, cs, ring)
        if not acc:
            return True
    return not acc


def _oracle_eta2(cs, residue: RingCtx):
    out = [residue.reduce(c) for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _oracle_i2(cs):
    out = []
    for c in cs:
        out += [c, 0]
    while out and out[-1] == 0:
        out.pop()
    return out


def _elem(ctx, cs):
    try:
        return ReesElem(ctx, Poly(ctx.ring, cs, "t"))
    except NotInAlgebra as exc:
        raise InvalidCase(str(exc)) from None


def _row_len(ctx: ReesCtx) -> int:
    return max(2, ctx.ring.dim + 2)


def _cert(ctx, n, items):
    try:
        return fuzz.cert_from_items(ctx, n, items)
    except (NotInAlgebra, ReesError) as exc:
        raise InvalidCase(str(exc)) from None


def _unit(ctx, item):
    try:
        return fuzz.unit_from_item(ctx, item)
    except (ValueError, ReesError) as exc:
        raise InvalidCase(str(exc)) from None


# suites: make(ctx, rng, k, params) -> case; check(ctx, case, counts) -> failure text or None


def _make_square(ctx, rng, k, params):
    ring = ctx.ring
    h = fuzz.random_coeffs(ring, rng, rng.randint(0, 6), ctx.a.normal)
    residue = ctx.residue_ring
    if k % 2 == 0:
        # bump corner 2 by a nonzero residue at an even degree
        c = fuzz.random_scalar(residue, rng) if not residue.is_zero_ring else 0
        while c == 0 and not residue.is_zero_ring:
            c = fuzz.random_scalar(residue, rng)
        bump = ("u", rng.randint(0, 3), [c])
    else:
        # bump corner 1 by a coefficient outside a at an odd degree
        c = fuzz.random_scalar(ring, rng, 9)
        if not residue.is_zero_ring:
            while c in ctx.a:
                c = fuzz.random_scalar(ring, rng, 9)
        bump = ("t", rng.randint(0, 3), [c])
    return [h, bump]


def _check_square(ctx, case, counts):
    sq = ConductorSquare(ctx)
    hcs, (where, pos, cval) = case
    h = _elem(ctx, hcs)
    residue = sq.residue
    f, g = sq.i1(h), sq.eta1(h)
    if list(sq.eta2(f).coeffs) != _oracle_eta2(h.coeffs, residue):
        return "eta2 . i1 disagrees with coefficient reduction"
    if sq.eta2(f) != sq.i2(g) or list(sq.i2(g).coeffs) != _oracle_i2(_oracle_eta2(h.coeffs[::2], residue)):
        return "square does not commute"
    counts["commutes"] += 1
    if (not g) != star_membership(h, ctx.a):
        return "kernel of eta1 differs from a*"
    if patch_element(f, g, sq) != h:
        return "matched pair did not patch back to h"
    counts["matched"] += 1
    c = cval[0] if cval else 0
    if where == "u":
        g2 = g + Poly(residue, [0] * pos + [c], "u")
        f2 = f
    else:
        f2 = f + Poly(ctx.ring, [0] * (2 * pos + 1) + [c], "t")
        g2 = g
    mismatch = _oracle_eta2(f2.coeffs, residue) != _oracle_i2(list(g2.coeffs))
    try:
        patch_element(f2, g2, sq)
        raised = False
    except ImageMismatch:
        raised = True
    if raised != mismatch:
        return f"perturbed pair: mismatch={mismatch} but patch_element raised={raised}"
    counts["rejected" if raised else "perturbation-vacuous"] += 1
    return None


def _make_prop38(ctx, rng, k, params):
    ring = ctx.ring
    h = fuzz.random_coeffs(ring, rng, rng.randint(0, 8), ctx.a.normal)
    if k % 2 and fuzz.nil_generator(ring):
        nu = fuzz.nil_generator(ring)
        h = [ring.mul(nu, c) for c in h]
    f1 = fuzz.random_coeffs(ring, rng, rng.randint(0, 5), ctx.a.normal)
    f2 = fuzz.random_coeffs(ring, rng, rng.randint(0, 5), ctx.a.normal)
    b = fuzz.random_scalar(ring, rng, 12)
    return [h, f1, f2, ("b", [b])]


def _check_prop38(ctx, case, counts):
    ring = ctx.ring
    hcs, f1cs, f2cs, (_, bl) = case
    h, f1, f2 = _elem(ctx, hcs), _elem(ctx, f1cs), _elem(ctx, f2cs)
    b = IdealFG(ring, (bl[0] if bl else 0,))
    # a nilpotent f satisfies f^k = 0 with k at most log2 of the modulus
    k = max(1, ring.modulus.bit_length()) if ring.is_finite else 1
    direct = _ppow_is_zero(list(h.coeffs), k, ring) if ring.is_finite else not h.coeffs
    if is_nilpotent(h) != direct:
        return f"is_nilpotent={is_nilpotent(h)} but direct powering says {direct}"
    counts["nilpotent" if direct else "not-nilpotent"] += 1
    q1, q2 = quotient_image(f1, b), quotient_image(f2, b)
    if quotient_image(f1 * f2, b) != q1 * q2:
        return "quotient_image is not multiplicative"
    if quotient_image(f1 + f2, b) != q1 + q2:
        return "quotient_image is not additive"
    if (not quotient_image(f1, b)) != star_membership(f1, b):
        return "kernel of quotient_image differs from b*"
    if extended_membership(f1, b) and not star_membership(f1, b):
        return "bA is not contained in b*"
    counts["multiplicative"] += 1
    return None


def _prop39_params(ctx, rng):
    return {"b1": rng.randint(1, 36), "b2": rng.randint(1, 36)}


def _make_prop39(ctx, rng, k, params):
    if ctx.ring.tag != INTEGERS:
        raise UnsupportedRing("the star-ideal suite runs over Z")
    ring = ctx.ring
    f = fuzz.random_coeffs(ring, rng, rng.randint(0, 6), ctx.a.normal, 40)
    p = (2, 3, 5)[k % 3]
    g1 = fuzz.random_coeffs(ring, rng, rng.randint(0, 4), ctx.a.normal, 9)
    g2 = fuzz.random_coeffs(ring, rng, rng.randint(0, 4), ctx.a.normal, 9)
    forced = rng.random() < 0.5
    if forced:
        g1 = [p * c for c in g1]
    return [f, ("b", params["b1"], params["b2"], []), ("p", p, []), g1, g2]


def _check_prop39(ctx, case, counts):
    ring = ctx.ring
    fcs, (_, b1v, b2v, _), (_, p, _), g1cs, g2cs = case
    f = _elem(ctx, fcs)
    b1, b2 = IdealFG(ring, (b1v,)), IdealFG(ring, (b2v,))
    lhs = star_membership(f, ideal_intersect(b1, b2))
    if lhs != (star_membership(f, b1) and star_membership(f, b2)):
        return "(b1 cap b2)* differs from b1* cap b2*"
    counts["intersection"] += 1
    if b1v >= 2:
        comps = star_primary_components(b1)
        if star_membership(f, b1) != all(star_membership(f, q) for _, q in comps):
            return "b* differs from the intersection of its primary components"
        counts["primary"] += 1
    pi = IdealFG(ring, (p,))
    g1, g2 = _elem(ctx, g1cs), _elem(ctx, g2cs)
    # oracle: reduce the product coefficientwise mod p
    prod_in = not _oracle_eta2(_pmul(list(g1.coeffs), list(g2.coeffs), ring), RingCtx.modular(p))
    if star_membership(g1 * g2, pi) != prod_in:
        return "star membership of a product disagrees with reduction mod p"
    if prod_in:
        if not (star_membership(g1, pi) or star_membership(g2, pi)):
            return f"({p})* is not prime: product in it, neither factor"
        counts["prime-witness"] += 1
    else:
        counts["prime-avoid"] += 1
    return None


def _make_row(ctx, rng, k, params):
    n = _row_len(ctx)
    return fuzz.random_op_items(ctx, n, rng, rng.randint(5, 30), 3)


def _row_of(ctx, items):
    cert = _cert(ctx, _row_len(ctx), items)
    return fuzz.row_from_cert(ctx, cert)


def _check_patch_row(ctx, case, counts):
    sq = ConductorSquare(ctx)
    row = _row_of(ctx, case)
    r1 = UmRow(sq.Rt, [sq.i1(x) for x in row.entries], [sq.i1(x) for x in row.dual])
    r2 = UmRow(sq.Ru_bar, [sq.eta1(x) for x in row.entries], [sq.eta1(x) for x in row.dual])
    out = patch_row(r1, r2, sq)
    if out.entries != row.entries or out.dual != row.dual:
        return "patched row differs from the original"
    if mx.dot(out.entries, out.dual, ctx) != ctx.one:
        return "patched dual does not pair to 1"
    counts["rows"] += 1
    return None


def _make_matrix(ctx, rng, k, params):
    n = _row_len(ctx) + k % 2
    items = fuzz.random_op_items(ctx, n, rng, rng.randint(3, 15), 2)
    return [("n", n, [])] + items + [("unit", fuzz.unit_item(ctx, rng))]


def _split_matrix_case(ctx, case):
    n = case[0][1]
    uitem = case[-1][1]
    if not uitem:
        raise InvalidCase("empty unit description")
    return n, case[1:-1], _unit(ctx, uitem)


def _check_patch_matrix(ctx, case, counts):
    sq = ConductorSquare(ctx)
    n, items, u = _split_matrix_case(ctx, case)
    cert = _cert(ctx, n, items)
    m, m_inv = fuzz.gl_from_items(ctx, n, items, u)
    pair = []
    for mm in (m, m_inv):
        pair.append(mx.map_matrix(mm, sq.i1))
        pair.append(mx.map_matrix(mm, sq.eta1))
    got = patch_matrix(pair[0], pair[2], pair[1], pair[3], sq, "GL")
    if got.matrix != m or got.inverse != m_inv:
        return "GL patching did not recover the matrix"
    if mx.mat_mul(got.matrix, got.inverse, ctx) != mx.identity(ctx, n):
        return "patched M times patched inverse is not I"
    counts["GL"] += 1
    e = cert.matrix()
    e_inv = cert.inverse().matrix()
    c1 = cert.mapped(sq.i1, sq.Rt)
    c2 = cert.mapped(sq.eta1, sq.Ru_bar)
    m1, m1i = mx.map_matrix(e, sq.i1), mx.map_matrix(e_inv, sq.i1)
    m2, m2i = mx.map_matrix(e, sq.eta1), mx.map_matrix(e_inv, sq.eta1)
    sl = patch_matrix(m1, m1i, m2, m2i, sq, "SL")
    if mx.det(sl.matrix, ctx) != ctx.one:
        return "SL patching lost det = 1"
    counts["SL"] += 1
    el = patch_matrix(m1, m1i, m2, m2i, sq, "E", cert1=c1, cert2=c2)
    if el.level is Certification.FULLY_ELEMENTARY:
        if not verify_certificate(el.cert, mx.identity(ctx, n), e).ok:
            return "E-mode certificate does not replay to the patched matrix"
        counts["E-full"] += 1
    else:
        counts["E-corner"] += 1
    return None


def _expect_full(ctx: ReesCtx) -> bool:
    a = ctx.a
    return a.is_zero or a.is_unit or ctx.ring.is_nilpotent(a.normal)


def _check_reduce(ctx, case, counts, cross=False):
    row = _row_of(ctx, case)
    r = len(row)
    rep = reduce_row_rees_patched(row)
    e1 = mx.unit_row(ctx, r)
    if rep.status is Certification.FAILED or rep.final_row != e1:
        return f"patched reduction failed with status {rep.status}"
    if _expect_full(ctx) and rep.status is not Certification.FULLY_ELEMENTARY:
        return f"expected FullyElementary, got {rep.status}"
    counts[str(rep.status)] += 1
    if rep.cert_A is not None and not verify_certificate(rep.cert_A, row.entries, e1).ok:
        return "cert_A fails independent verification"
    sq = ConductorSquare(ctx)
    corner1 = [sq.i1(x) for x in row.entries]
    if not verify_certificate(rep.cert_corner1, corner1, mx.unit_row(sq.Rt, r)).ok:
        return "corner-1 certificate fails independent verification"
    corner2 = [sq.eta1(x) for x in row.entries]
    if not verify_certificate(rep.cert_corner2, corner2, mx.unit_row(sq.Ru_bar, r)).ok:
        return "corner-2 certificate fails independent verification"
    if cross:
        direct = reduce_row_artinian(row)
        if not verify_certificate(direct, row.entries, e1).ok:
            return "direct certificate fails independent verification"
        counts["cross-agree"] += 1
    return None


def _check_crossval(ctx, case, counts):
    return _check_reduce(ctx, case, counts, cross=True)


_K1_SIZES = (4, 5, 6)


def _make_k1(ctx, rng, k, params):
    n = _K1_SIZES[k % 3]
    items = fuzz.random_op_items(ctx, n, rng, rng.randint(n, 2 * n), 2, 2)
    return [("n", n, [])] + items + [("unit", fuzz.unit_item(ctx, rng, 1))]


def _check_k1(ctx, case, counts):
    n, items, u = _split_matrix_case(ctx, case)
    m, m_inv = fuzz.gl_from_items(ctx, n, items, u)
    r = max(3, ctx.ring.dim + 2)
    res = k1_reduce(m, m_inv, r, ctx)
    if len(res.matrix) != r:
        return f"reduced size {len(res.matrix)} != {r}"
    target = mx.block_diag(res.matrix, n, ctx)
    # sigma2 . M . sigma1 = target, checked as M . sigma1 = sigma2^-1 . target
    mid = res.sigma2.inverse().apply_left(target)
    if not verify_certificate(res.sigma1, m, mid).ok:
        return "M . sigma1 does not match"
    if not verify_certificate(res.sigma2, mid, target, side="left").ok:
        return "sigma2 . (M . sigma1) is not diag(M', I)"
    if mx.mat_mul(res.matrix, res.inverse, ctx) != mx.identity(ctx, r):
        return "M' is not invertible with the tracked inverse"
    counts[f"n{n}"] += 1
    return None


SUITES = {
    "square": (_make_square, _check_square, None),
    "prop38": (_make_prop38, _check_prop38, None),
    "prop39": (_make_prop39, _check_prop39, _prop39_params),
    "patch-row": (_make_row, _check_patch_row, None),
    "patch-matrix": (_make_matrix, _check_patch_matrix, None),
    "reduce": (_make_row, _check_reduce, None),
    "crossval": (_make_row, _check_crossval, None),
    "k1": (_make_k1, _check_k1, None),
}


def _removable(item) -> bool:
    return isinstance(item, tuple) and len(item) == 3 and isinstance(item[0], int)


def run_suite(name: str, ctx: ReesCtx, seed: int, trials: int, params: dict | None = None) -> SuiteResult:
    """Run ``trials`` cases of a suite from one seeded generator."""
    if name not in SUITES:
        raise KeyError(name)
    make, check, setup = SUITES[name]
    rng = random.Random(seed)
    if params is None:
        params = setup(ctx, rng) if setup else {}
    res = SuiteResult(name, ctx, seed, trials)
    h = hashlib.sha256()

    def outcome(case):
        try:
            return check(ctx, case, Counter())
        except InvalidCase:
            return None
        except (ReesError, AssertionError, ArithmeticError, ValueError) as exc:
            return f"{type(exc).__name__}: {exc}"

    for k in range(trials):
        case = make(ctx, rng, k, params)
        try:
            msg = check(ctx, case, res.counts)
        except UnsupportedRing:
            raise
        except (ReesError, AssertionError, ArithmeticError, ValueError) as exc:
            msg = f"{type(exc).__name__}: {exc}"
        h.update(repr((k, case, msg, sorted(res.counts.items()))).encode())
        if msg is None:
            res.passed += 1
            continue
        res.failed += 1
        if res.first_failure is None:
            res.first_failure = f"trial={k} {msg} case={fuzz.describe_case(case)}"
            small = fuzz.shrink(case, lambda c: outcome(c) is not None, _removable)
            res.minimized = f"{outcome(small)} case={fuzz.describe_case(small)}"
    res.digest = h.hexdigest()[:16]
    return res
