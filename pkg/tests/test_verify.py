from __future__ import annotations

import random
from types import SimpleNamespace

import pytest
from hypothesis import given, settings, strategies as st

from reeslike import fuzz
from reeslike import matrices as mx
from reeslike.certs import ElemCert, empty_cert
from reeslike.errors import MalformedCertificate
from reeslike.poly import Poly, PolyRing
from reeslike.rees import ReesCtx, ReesElem
from reeslike.rings import RingCtx
from reeslike.verify import replay, verify_certificate

F2 = RingCtx.prime_field(2)
Z = RingCtx.integers()


def test_empty_certificate():
    P = PolyRing(F2)
    row = [P("t"), P("1 + t")]
    assert verify_certificate(empty_cert(P, 2), row, row).ok


def test_hand_replayed_example():
    P = PolyRing(F2)
    cert = ElemCert(P, 2, [(1, 0, P.one), (0, 1, P("1 + t"))])
    assert verify_certificate(cert, [P("t"), P("1 + t")], [P.one, P.zero]).ok


def test_mismatch_reports_first_diff():
    P = PolyRing(F2)
    cert = ElemCert(P, 2, [(1, 0, P.one)])
    res = verify_certificate(cert, [P("t"), P("1 + t")], [P.one, P.zero])
    assert not res.ok
    assert res.diff == (1, "1 + t", "0")


def test_parity_violation():
    A = ReesCtx.of(Z, 2)
    bogus = ReesElem(A, Poly(Z, [0, 1]), check=False)
    raw = SimpleNamespace(ambient=A, n=2, ops=[(0, 1, bogus)])
    with pytest.raises(MalformedCertificate):
        verify_certificate(raw, [A.one, A.zero], [A.one, A.zero])
    with pytest.raises(MalformedCertificate):
        ElemCert(A, 2, raw.ops)


@pytest.mark.parametrize("op", [(0, 0), (0, 2), (-1, 1)])
def test_bad_indices(op):
    P = PolyRing(F2)
    raw = SimpleNamespace(ambient=P, n=2, ops=[(op[0], op[1], P.one)])
    with pytest.raises(MalformedCertificate):
        verify_certificate(raw, [P.one, P.zero], [P.one, P.zero])


def test_left_side_on_matrices():
    P = PolyRing(RingCtx.modular(6))
    cert = ElemCert(P, 3, [(0, 2, P("t")), (1, 0, P("5"))])
    m = cert.matrix()
    assert verify_certificate(cert.inverse(), m, mx.identity(P, 3), side="left").ok
    assert verify_certificate(cert.inverse(), m, mx.identity(P, 3), side="right").ok
    with pytest.raises(ValueError):
        verify_certificate(cert, [P.one, P.zero, P.zero], [P.one, P.zero, P.zero], side="left")


def _sympy_product(cert, modulus):
    import sympy
    t = sympy.Symbol("t")
    acc = sympy.eye(cert.n)
    for i, j, lam in cert.ops:
        e = sympy.eye(cert.n)
        cs = lam.poly.coeffs if hasattr(lam, "poly") else lam.coeffs
        e[i, j] = sum(int(c) * t**k for k, c in enumerate(cs))
        acc = (acc * e).expand()
    return [[sympy.Poly(x, t, modulus=modulus) if modulus else sympy.Poly(x, t) for x in acc.row(r)]
            for r in range(cert.n)]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), which=st.sampled_from(["Z2", "Z4", "F5"]))
def test_replay_matches_sympy(seed, which):
    # an independent oracle for the verifier itself
    alg = {"Z2": ReesCtx.of(Z, 2), "Z4": ReesCtx.of(RingCtx.modular(4), 2),
           "F5": PolyRing(RingCtx.prime_field(5))}[which]
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    cert = fuzz.cert_from_items(alg, n, fuzz.random_op_items(alg, n, rng, rng.randint(0, 6), 3))
    modulus = {"Z2": None, "Z4": 4, "F5": 5}[which]
    ours = replay(alg, n, cert.ops)
    theirs = _sympy_product(cert, modulus)
    for r in range(n):
        for c in range(n):
            got = [int(x) % modulus if modulus else int(x) for x in ours[r][c]]
            want = [int(x) % modulus if modulus else int(x) for x in reversed(theirs[r][c].all_coeffs())]
            while want and want[-1] == 0:
                want.pop()
            assert got == want


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_verifier_agrees_with_solver_side_application(seed):
    A = ReesCtx.of(RingCtx.modular(12), 6)
    rng = random.Random(seed)
    row, _ = fuzz.random_um_row(A, 3, rng)
    cert = fuzz.cert_from_items(A, 3, fuzz.random_op_items(A, 3, rng, 5, 2))
    out = cert.apply_row(list(row.entries))
    assert verify_certificate(cert, list(row.entries), out).ok
    assert verify_certificate(cert.inverse(), out, list(row.entries)).ok


def test_verifier_imports_no_solver_code():
    import ast
    import inspect

    from reeslike import verify
    tree = ast.parse(inspect.getsource(verify))
    mods = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert not mods & {"matrices", "reduction", "patching", "certs", "kernels"}
