from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from reeslike import fuzz
from reeslike import matrices as mx
from reeslike.certs import ElemCert, UmRow, empty_cert
from reeslike.errors import (
    DeterminantMismatch,
    DualMismatch,
    ImageMismatch,
    MalformedCertificate,
    NotAUnit,
    PreconditionFailed,
)
from reeslike.patching import (
    Certification,
    ConductorSquare,
    factor_one_plus_nilpotent,
    lift_E_certificate,
    patch_element,
    patch_matrix,
    patch_row,
    patch_unit,
    whitehead_ops,
)
from reeslike.poly import Poly, PolyRing
from reeslike.rees import ReesCtx, star_membership
from reeslike.rings import RingCtx
from reeslike.verify import verify_certificate

Z = RingCtx.integers()
Z4 = RingCtx.modular(4)
SQ_Z2 = ConductorSquare(ReesCtx.of(Z, 2))
SQ_Z3 = ConductorSquare(ReesCtx.of(Z, 3))
SQ_Z4 = ConductorSquare(ReesCtx.of(Z4, 2))

CONTEXTS = [
    ReesCtx.of(Z, 2), ReesCtx.of(Z, 6), ReesCtx.of(Z4, 2), ReesCtx.of(RingCtx.modular(12), 6),
    ReesCtx.of(RingCtx.prime_field(5), 0), ReesCtx.of(RingCtx.prime_field(5), 1),
]


def test_square_maps_on_an_element():
    sq = SQ_Z3
    h = sq.A("2 + 3*t + t^2")
    assert sq.i1(h) == sq.Rt("2 + 3*t + t^2")
    assert sq.eta1(h) == sq.Ru_bar("2 + u")
    assert sq.eta2(sq.i1(h)) == sq.i2(sq.eta1(h)) == sq.Rt_bar("2 + t^2")


def test_patch_element_examples():
    sq = SQ_Z3
    h = patch_element(sq.Rt("2 + 3*t + t^2"), sq.Ru_bar("2 + u"), sq)
    assert h == sq.A("2 + 3*t + t^2")
    with pytest.raises(ImageMismatch) as err:
        patch_element(sq.Rt("2 + t + t^2"), sq.Ru_bar("2 + u"), sq)
    assert err.value.degree == 1
    assert patch_element(sq.Rt.zero, sq.Ru_bar.zero, sq).is_zero()


def test_patch_unit_examples():
    sq = SQ_Z4
    c, c_inv = patch_unit(sq.Rt("1 + 2*t"), sq.Rt("1 - 2*t"), sq.Ru_bar.one, sq.Ru_bar.one, sq)
    assert c == sq.A("1 + 2*t") and c * c_inv == sq.A.one
    one = patch_unit(sq.Rt.one, sq.Rt.one, sq.Ru_bar.one, sq.Ru_bar.one, SQ_Z4)[0]
    assert one == sq.A.one
    minus = sq.Rt("-1")
    neg = patch_unit(minus, minus, sq.eta2(minus).with_var("u"), sq.eta2(minus).with_var("u"), sq)[0]
    assert neg == sq.A("-1")
    with pytest.raises(NotAUnit):
        patch_unit(sq.Rt("1 + 2*t"), sq.Rt.one, sq.Ru_bar.one, sq.Ru_bar.one, sq)


def test_patch_row_example():
    sq = SQ_Z2
    Rt, Ru = sq.Rt, sq.Ru_bar
    # (1 + 2t)(1 - 2t) + 2t * 2t = 1 over Z[t]
    r1 = UmRow(Rt, [Rt("1 + 2*t"), Rt("2*t")], [Rt("1 - 2*t"), Rt("2*t")])
    r2 = UmRow(Ru, [Ru.one, Ru.zero], [Ru.one, Ru.zero])
    out = patch_row(r1, r2, sq)
    assert out.entries == (sq.A("1 + 2*t"), sq.A("2*t"))
    assert mx.dot(out.entries, out.dual, sq.A) == sq.A.one


def test_patch_row_trivial_and_length_mismatch():
    sq = SQ_Z2
    e = UmRow(sq.Rt, [sq.Rt.one, sq.Rt.zero], [sq.Rt.one, sq.Rt.zero])
    f = UmRow(sq.Ru_bar, [sq.Ru_bar.one, sq.Ru_bar.zero], [sq.Ru_bar.one, sq.Ru_bar.zero])
    assert patch_row(e, f, sq).entries == (sq.A.one, sq.A.zero)
    g = UmRow(sq.Ru_bar, [sq.Ru_bar.one], [sq.Ru_bar.one])
    with pytest.raises(ValueError):
        patch_row(e, g, sq)


def test_dual_mismatch_surfaces():
    sq = SQ_Z2
    Rt, Ru = sq.Rt, sq.Ru_bar
    # row (1, 2t): duals (1, 0) on one corner and (1, 1) on the other pair to 1
    # separately but their images over (Z/2)[t] disagree
    r1 = UmRow(Rt, [Rt.one, Rt("2*t")], [Rt.one, Rt.zero])
    r2 = UmRow(Ru, [Ru.one, Ru.zero], [Ru.one, Ru.one])
    with pytest.raises(DualMismatch):
        patch_row(r1, r2, sq)


def test_patch_matrix_identity_is_fully_elementary():
    sq = SQ_Z2
    i1, i2 = mx.identity(sq.Rt, 2), mx.identity(sq.Ru_bar, 2)
    pm = patch_matrix(i1, i1, i2, i2, sq, "E", cert1=empty_cert(sq.Rt, 2), cert2=empty_cert(sq.Ru_bar, 2))
    assert pm.level is Certification.FULLY_ELEMENTARY and len(pm.cert) == 0
    assert pm.matrix == mx.identity(sq.A, 2)


def test_patch_matrix_elementary_example():
    sq = SQ_Z2
    c1 = ElemCert(sq.Rt, 2, [(0, 1, sq.Rt("2*t"))])
    c2 = empty_cert(sq.Ru_bar, 2)
    pm = patch_matrix(c1.matrix(), c1.inverse().matrix(), c2.matrix(), c2.matrix(), sq, "E", cert1=c1, cert2=c2)
    assert pm.level is Certification.FULLY_ELEMENTARY
    assert pm.matrix == [[sq.A.one, sq.A("2*t")], [sq.A.zero, sq.A.one]]
    assert verify_certificate(pm.cert, mx.identity(sq.A, 2), pm.matrix).ok


def test_patch_matrix_corner_certified():
    # e21(t) e12(2) e21(-t) glues to a matrix over Z[2t, t^2], but neither
    # certification route applies: its cert uses t, and the kernel (2) is not nilpotent
    sq = SQ_Z2
    c1 = ElemCert(sq.Rt, 2, [(1, 0, sq.Rt("t")), (0, 1, sq.Rt("2")), (1, 0, sq.Rt("-t"))])
    assert c1.matrix() == [[sq.Rt("1 - 2*t"), sq.Rt("2")], [sq.Rt("-2*t^2"), sq.Rt("1 + 2*t")]]
    c2 = empty_cert(sq.Ru_bar, 2)
    pm = patch_matrix(c1.matrix(), c1.inverse().matrix(), c2.matrix(), c2.matrix(), sq, "E", cert1=c1, cert2=c2)
    assert pm.level is Certification.CORNER_CERTIFIED and pm.cert is None
    assert mx.mat_mul(pm.matrix, pm.inverse, sq.A) == mx.identity(sq.A, 2)


def test_patch_matrix_sl_rejects_det_minus_one():
    sq = SQ_Z2
    d1 = [[sq.Rt.one, sq.Rt.zero], [sq.Rt.zero, sq.Rt("-1")]]
    d2 = mx.map_matrix(d1, lambda f: sq.eta2(f).with_var("u"))
    with pytest.raises(DeterminantMismatch):
        patch_matrix(d1, d1, d2, d2, sq, "SL")
    # GL mode accepts it
    assert patch_matrix(d1, d1, d2, d2, sq, "GL").matrix[1][1] == sq.A("-1")


def test_patch_matrix_mismatch_reports_position():
    sq = SQ_Z2
    e = ElemCert(sq.Rt, 2, [(0, 1, sq.Rt("t"))])
    i2 = mx.identity(sq.Ru_bar, 2)
    with pytest.raises(ImageMismatch) as err:
        patch_matrix(e.matrix(), e.inverse().matrix(), i2, i2, sq, "GL")
    assert err.value.index == (0, 1)


def test_lift_examples():
    sq = SQ_Z2
    assert len(lift_E_certificate(empty_cert(sq.Ru_bar, 2), "eta1", sq)) == 0
    c = ElemCert(sq.Ru_bar, 2, [(0, 1, sq.Ru_bar("1 + u"))])
    lifted = lift_E_certificate(c, "eta1", sq)
    assert lifted.ops == ((0, 1, sq.A("1 + t^2")),)
    sq3 = SQ_Z3
    c = ElemCert(sq3.Rt_bar, 2, [(1, 0, sq3.Rt_bar("t"))])
    assert lift_E_certificate(c, "eta2", sq3).ops == ((1, 0, sq3.Rt("t")),)


def test_lift_along_mod():
    src = PolyRing(RingCtx.modular(3))
    c = ElemCert(src, 2, [(0, 1, src("2 + t"))])
    out = lift_E_certificate(c, "mod", target=PolyRing(RingCtx.modular(9)))
    assert out.ops[0][2] == PolyRing(RingCtx.modular(9))("2 + t")


@pytest.mark.parametrize("sq", [SQ_Z2, SQ_Z4, ConductorSquare(ReesCtx.of(RingCtx.modular(12), 6))])
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_lift_maps_back_onto_original(sq, seed):
    rng = random.Random(seed)
    items = fuzz.random_op_items(sq.Ru_bar, 3, rng, rng.randint(0, 20), 3)
    c = fuzz.cert_from_items(sq.Ru_bar, 3, items)
    up = lift_E_certificate(c, "eta1", sq)
    assert mx.map_matrix(up.matrix(), sq.eta1) == c.matrix()
    c_t = c.mapped(sq.i2, sq.Rt_bar)
    up = lift_E_certificate(c_t, "eta2", sq)
    assert mx.map_matrix(up.matrix(), sq.eta2) == c_t.matrix()


def test_factor_examples():
    A = ReesCtx.of(Z4, 2)
    assert len(factor_one_plus_nilpotent(mx.identity(A, 3), A)) == 0
    d = [[A.one, A("2*t")], [A.zero, A.one]]
    assert factor_one_plus_nilpotent(d, A).ops == ((0, 1, A("2*t")),)
    d = [[A("1 + 2*t"), A("2")], [A("2*t"), A("1 + 2*t")]]
    cert = factor_one_plus_nilpotent(d, A)
    assert len(cert) <= 10 and cert.matrix() == d


def test_factor_preconditions():
    A = ReesCtx.of(Z4, 2)
    with pytest.raises(PreconditionFailed):
        factor_one_plus_nilpotent([[A.one, A.one], [A.zero, A.one]], A)
    with pytest.raises(PreconditionFailed):
        factor_one_plus_nilpotent([[A("3"), A.zero], [A.zero, A.one]], A)
    with pytest.raises(PreconditionFailed):
        # det = 1 + 2t is not 1
        factor_one_plus_nilpotent([[A("1 + 2*t"), A.zero], [A.zero, A.one]], A)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 4))
def test_factor_replays_random_inputs(seed, n):
    A = ReesCtx.of(RingCtx.modular(8), 2)
    rng = random.Random(seed)
    nil = [(i, j, [2 * c for c in fuzz.random_coeffs(A.ring, rng, 3, 2)])
           for i, j, _ in fuzz.random_op_items(A, n, rng, rng.randint(0, 8))]
    # an elementary product with nilpotent coefficients, times diag(u, u^-1)
    d = fuzz.cert_from_items(A, n, nil).matrix()
    u = A("1 + 2*t^2")
    d = mx.mat_mul(d, [[u if (i == j == 0) else A.inverse(u) if i == j == 1 else (A.one if i == j else A.zero)
                        for j in range(n)] for i in range(n)], A)
    cert = factor_one_plus_nilpotent(d, A)
    assert verify_certificate(cert, mx.identity(A, n), d).ok


@pytest.mark.parametrize("p", ["3", "1/2", "-5/7"])
def test_whitehead_product_is_diagonal(p):
    Q = PolyRing(RingCtx.rational())
    x = Q(p)
    m = ElemCert(Q, 2, whitehead_ops([x, Q.inverse(x)], Q)).matrix()
    assert m == [[x, Q.zero], [Q.zero, Q.inverse(x)]]


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.handle)
def test_square_commutes_and_kernel_is_star(ctx):
    sq = ConductorSquare(ctx)
    rng = random.Random(11)
    for _ in range(300):
        h = fuzz.random_element(ctx, rng, rng.randint(0, 6))
        assert sq.commutes_on(h)
        assert (not sq.eta1(h)) == star_membership(h, ctx.a)
        assert patch_element(sq.i1(h), sq.eta1(h), sq) == h


def test_square_on_generators():
    for ctx in CONTEXTS:
        sq = ConductorSquare(ctx)
        gens = [ctx.one, ctx("t^2"), ctx([0, ctx.a.normal])]
        assert all(sq.commutes_on(g) for g in gens)


def test_cert_validation():
    A = ReesCtx.of(Z, 2)
    with pytest.raises(MalformedCertificate):
        ElemCert(A, 2, [(0, 0, A.one)])
    with pytest.raises(MalformedCertificate):
        ElemCert(A, 2, [(0, 2, A.one)])
    with pytest.raises(MalformedCertificate):
        ElemCert(A, 2, [(0, 1, Poly(Z, [0, 1]))])
