"""Independent certificate replay.

The verifier rebuilds every elementary matrix from scratch and multiplies
coefficient lists with its own schoolbook routines, touching only the base
ring arithmetic of :class:`RingCtx`. It deliberately shares nothing with the
solvers' row and matrix helpers, so a bug there cannot hide itself here.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import MalformedCertificate
from .poly import Poly, PolyRing
from .rees import ReesCtx, ReesElem


class VerifyResult(NamedTuple):
    ok: bool
    diff: tuple | None = None

    def __bool__(self):
        return self.ok


def _coeffs(x, ambient) -> tuple:
    if isinstance(ambient, ReesCtx):
        if not isinstance(x, ReesElem) or x.ctx != ambient:
            raise ValueError(f"{x!r} is not an element of {ambient}")
        cs = x.poly.coeffs
    else:
        if not isinstance(x, Poly) or x.ring != ambient.ring or x.var != ambient.var:
            raise ValueError(f"{x!r} is not an element of {ambient}")
        cs = x.coeffs
    return _norm(tuple(cs), ambient.base)


def _norm(cs, ring):
    cs = [ring.reduce(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _add(f, g, ring):
    n = max(len(f), len(g))
    return _norm([ring.add(f[k] if k < len(f) else 0, g[k] if k < len(g) else 0) for k in range(n)], ring)


def _mul(f, g, ring):
    if not f or not g:
        return ()
    out = [ring.zero_elem] * (len(f) + len(g) - 1)
    for a, x in enumerate(f):
        if x:
            for b, y in enumerate(g):
                out[a + b] = ring.add(out[a + b], ring.mul(x, y))
    return _norm(out, ring)


def _check_op(op, n, ambient):
    try:
        i, j, lam = op
    except (TypeError, ValueError):
        raise MalformedCertificate(f"cannot read op {op!r}") from None
    if not (isinstance(i, int) and isinstance(j, int)) or i == j or not (0 <= i < n and 0 <= j < n):
        raise MalformedCertificate(f"op indices ({i}, {j}) invalid for size {n}")
    try:
        cs = _coeffs(lam, ambient)
    except ValueError as exc:
        raise MalformedCertificate(str(exc)) from None
    if isinstance(ambient, ReesCtx):
        g = ambient.a
        for k in range(1, len(cs), 2):
            if cs[k] not in g:
                raise MalformedCertificate(f"coefficient {cs[k]} of t^{k} is not in {g}")
    return i, j, cs


def _elementary(n, i, j, lam, ring):
    m = [[(ring.one_elem,) if a == b else () for b in range(n)] for a in range(n)]
    m[i][j] = lam
    for a in range(n):
        m[a][a] = _norm(m[a][a], ring)
    return m


def _matmul(a, b, ring):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for r in range(rows):
        line = []
        for c in range(cols):
            acc = ()
            for k in range(inner):
                acc = _add(acc, _mul(a[r][k], b[k][c], ring), ring)
            line.append(acc)
        out.append(line)
    return out


def _transpose(m):
    return [list(col) for col in zip(*m)]


def replay(ambient, n: int, ops) -> list[list[tuple]]:
    """The product of the certificate's elementary matrices, as coefficient tuples."""
    ring = ambient.base
    acc = [[(ring.one_elem,) if a == b else () for b in range(n)] for a in range(n)]
    acc = [[_norm(x, ring) for x in row] for row in acc]
    for op in ops:
        i, j, lam = _check_op(op, n, ambient)
        acc = _matmul(acc, _elementary(n, i, j, lam, ring), ring)
    return acc


def verify_certificate(cert, start, expected, side: str = "right") -> VerifyResult:
    """Replay ``cert`` on ``start`` and compare with ``expected`` exactly.

    ``start`` is a row or a matrix; ``side`` says whether the certificate
    multiplies from the right (rows and matrices) or the left (matrices).
    On mismatch ``diff`` is (position, got, expected) of the first
    differing entry in row-major order.
    """
    ambient, n, ops = cert.ambient, cert.n, list(cert.ops)
    if not isinstance(ambient, (ReesCtx, PolyRing)):
        raise MalformedCertificate(f"unknown ambient {ambient!r}")
    if not isinstance(n, int) or n < 1:
        raise MalformedCertificate(f"bad size {n!r}")
    ring = ambient.base
    is_row = not (start and isinstance(start[0], (list, tuple)))
    s = [list(start)] if is_row else [list(r) for r in start]
    e = [list(expected)] if is_row else [list(r) for r in expected]
    if side not in ("right", "left") or (is_row and side == "left"):
        raise ValueError(f"cannot apply a certificate on the {side} of a row")
    s = [[_coeffs(x, ambient) for x in r] for r in s]
    e = [[_coeffs(x, ambient) for x in r] for r in e]
    width = len(s[0]) if side == "right" else len(s)
    if width != n:
        raise ValueError(f"start has {width} columns for a size-{n} certificate")
    prod = replay(ambient, n, ops)
    got = _matmul(s, prod, ring) if side == "right" else _matmul(prod, s, ring)
    if len(got) != len(e) or any(len(a) != len(b) for a, b in zip(got, e)):
        return VerifyResult(False, ("shape", len(got), len(e)))
    for r, (ga, ea) in enumerate(zip(got, e)):
        for c, (x, y) in enumerate(zip(ga, ea)):
            if x != y:
                pos = c if is_row else (r, c)
                return VerifyResult(False, (pos, _show(x, ambient), _show(y, ambient)))
    return VerifyResult(True, None)


def _show(cs, ambient) -> str:
    var = "t" if isinstance(ambient, ReesCtx) else ambient.var
    return str(Poly(ambient.base, cs, var))
