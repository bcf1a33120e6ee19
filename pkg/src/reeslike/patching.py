"""The conductor square and pullback patching.

    A = R[at, t^2] --i1--> R[t]
        |                   |
       eta1               eta2
        v                   v
    (R/a)[u]  ----i2--->  (R/a)[t]        (u = t^2)

A is the fiber product of R[t] and (R/a)[u] over (R/a)[t], so compatible
pairs of elements, rows and invertible matrices glue to a unique object
over A.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from . import matrices as mx
from .certs import ElemCert, UmRow
from .errors import (
    DeterminantMismatch,
    DualMismatch,
    ImageMismatch,
    NotAUnit,
    NotInAlgebra,
    PreconditionFailed,
)
from .poly import Poly, PolyRing, double_degree, even_part
from .rees import ReesCtx, ReesElem


class Certification(enum.Enum):
    FULLY_ELEMENTARY = "FullyElementary"
    CORNER_CERTIFIED = "CornerCertified"
    FAILED = "Failed"

    def __str__(self):
        return self.value

    @property
    def rank(self) -> int:
        return {"FullyElementary": 2, "CornerCertified": 1, "Failed": 0}[self.value]


def weakest(levels) -> Certification:
    return min(levels, key=lambda c: c.rank)


@dataclass(frozen=True)
class ConductorSquare:
    ctx: ReesCtx

    @property
    def A(self) -> ReesCtx:
        return self.ctx

    @cached_property
    def residue(self):
        return self.ctx.residue_ring

    @cached_property
    def Rt(self) -> PolyRing:
        return PolyRing(self.ctx.ring, "t")

    @cached_property
    def Ru_bar(self) -> PolyRing:
        return PolyRing(self.residue, "u")

    @cached_property
    def Rt_bar(self) -> PolyRing:
        return PolyRing(self.residue, "t")

    def algebra(self, name: str):
        return {"A": self.A, "R[t]": self.Rt, "(R/a)[u]": self.Ru_bar, "(R/a)[t]": self.Rt_bar}[name]

    # the four maps
    def i1(self, h: ReesElem) -> Poly:
        return h.poly

    def eta1(self, h: ReesElem) -> Poly:
        return even_part(h.poly.map_coeffs(self.residue), "u")

    def i2(self, g: Poly) -> Poly:
        return double_degree(g, "t")

    def eta2(self, f: Poly) -> Poly:
        return f.map_coeffs(self.residue)

    # canonical lifts back up the surjections
    def lift_eta1(self, g: Poly) -> ReesElem:
        """Coefficients lifted to [0, a) and placed at even degrees."""
        return ReesElem(self.ctx, double_degree(g.map_coeffs(self.ctx.ring), "t"), check=False)

    def lift_eta2(self, g: Poly) -> Poly:
        return g.map_coeffs(self.ctx.ring)

    def commutes_on(self, h: ReesElem) -> bool:
        return self.eta2(self.i1(h)) == self.i2(self.eta1(h))


def _first_diff(f: Poly, g: Poly) -> int:
    for k in range(max(len(f.coeffs), len(g.coeffs))):
        if f.coeff(k) != g.coeff(k):
            return k
    return -1


def patch_element(f: Poly, g: Poly, sq: ConductorSquare) -> ReesElem:
    """The unique h in A with i1(h) = f and eta1(h) = g."""
    if not sq.Rt.contains(f) or not sq.Ru_bar.contains(g):
        raise ValueError(f"expected elements of {sq.Rt} and {sq.Ru_bar}")
    lhs, rhs = sq.eta2(f), sq.i2(g)
    if lhs != rhs:
        k = _first_diff(lhs, rhs)
        raise ImageMismatch(f"images in {sq.Rt_bar} differ at degree {k}", degree=k)
    h = ReesElem(sq.ctx, f)
    assert sq.eta1(h) == g
    return h


def patch_unit(u1: Poly, u1_inv: Poly, u2: Poly, u2_inv: Poly, sq: ConductorSquare):
    """Glue units of R[t] and (R/a)[u]; returns (c, c^-1) over A."""
    if u1 * u1_inv != 1:
        raise NotAUnit(f"{u1} * {u1_inv} != 1 in {sq.Rt}")
    if u2 * u2_inv != 1:
        raise NotAUnit(f"{u2} * {u2_inv} != 1 in {sq.Ru_bar}")
    c = patch_element(u1, u2, sq)
    c_inv = patch_element(u1_inv, u2_inv, sq)
    if c * c_inv != sq.A.one:
        raise NotAUnit("patched unit does not invert")  # pragma: no cover - fiber product law
    return c, c_inv


def _patch_vector(v1, v2, sq: ConductorSquare, what: str) -> list[ReesElem]:
    out = []
    for k, (f, g) in enumerate(zip(v1, v2)):
        try:
            out.append(patch_element(f, g, sq))
        except ImageMismatch as exc:
            raise ImageMismatch(f"{what} entry {k + 1}: {exc}", index=k, degree=exc.degree) from None
    return out


def patch_row(r1: UmRow, r2: UmRow, sq: ConductorSquare) -> UmRow:
    if len(r1) != len(r2):
        raise ValueError(f"rows of lengths {len(r1)} and {len(r2)}")
    if r1.ambient != sq.Rt or r2.ambient != sq.Ru_bar:
        raise ValueError(f"rows must live over {sq.Rt} and {sq.Ru_bar}")
    entries = _patch_vector(r1.entries, r2.entries, sq, "row")
    try:
        dual = _patch_vector(r1.dual, r2.dual, sq, "dual")
    except ImageMismatch as exc:
        raise DualMismatch(f"supplied duals do not glue: {exc}") from None
    if mx.dot(entries, dual, sq.A) != sq.A.one:
        raise DualMismatch("patched dual does not pair to 1")  # pragma: no cover
    return UmRow(sq.A, entries, dual)


def patch_matrix_entries(m1, m2, sq: ConductorSquare) -> list[list[ReesElem]]:
    if len(m1) != len(m2) or any(len(a) != len(b) for a, b in zip(m1, m2)):
        raise ValueError("matrix shapes differ")
    out = []
    for i, (a, b) in enumerate(zip(m1, m2)):
        try:
            out.append(_patch_vector(a, b, sq, f"matrix row {i + 1}"))
        except ImageMismatch as exc:
            raise ImageMismatch(str(exc), index=(i, exc.index), degree=exc.degree) from None
    return out


@dataclass
class PatchedMatrix:
    matrix: list
    inverse: list
    mode: str
    level: Certification | None = None
    cert: ElemCert | None = None
    route: str = ""


def patch_matrix(m1, m1_inv, m2, m2_inv, sq: ConductorSquare, mode: str = "GL",
                 cert1: ElemCert | None = None, cert2: ElemCert | None = None) -> PatchedMatrix:
    """Glue invertible matrices over R[t] and (R/a)[u] into one over A.

    ``mode`` is ``GL``, ``SL`` or ``E``. In mode ``E`` both inputs come with
    certificates, and the result carries a certification level: an
    A-certificate when one can be built, ``CornerCertified`` otherwise.
    """
    mode = mode.upper()
    if mode not in ("GL", "SL", "E"):
        raise ValueError(f"unknown mode {mode!r}")
    Rt, Ru = sq.Rt, sq.Ru_bar
    n = len(m1)
    if mx.mat_mul(m1, m1_inv, Rt) != mx.identity(Rt, n):
        raise NotAUnit("first matrix and its claimed inverse do not multiply to I")
    if mx.mat_mul(m2, m2_inv, Ru) != mx.identity(Ru, n):
        raise NotAUnit("second matrix and its claimed inverse do not multiply to I")
    if mode == "E":
        if cert1 is None or cert2 is None:
            raise PreconditionFailed("mode E needs certificates for both matrices")
        if cert1.matrix() != mx.copy_matrix(m1) or cert2.matrix() != mx.copy_matrix(m2):
            raise PreconditionFailed("a certificate does not replay to its matrix")
    if mode in ("SL", "E"):
        d1, d2 = mx.det(m1, Rt), mx.det(m2, Ru)
        if d1 != Rt.one or d2 != Ru.one:
            raise DeterminantMismatch(f"determinants {d1} and {d2} are not both 1")

    m = patch_matrix_entries(m1, m2, sq)
    m_inv = patch_matrix_entries(m1_inv, m2_inv, sq)
    A = sq.A
    if mx.mat_mul(m, m_inv, A) != mx.identity(A, n):
        raise NotAUnit("patched inverse fails")  # pragma: no cover - fiber product law
    out = PatchedMatrix(m, m_inv, mode)
    if mode in ("SL", "E"):
        # det(m) glues det(m1) = 1 and det(m2) = 1
        c, _ = patch_unit(mx.det(m1, Rt), Rt.one, mx.det(m2, Ru), Ru.one, sq)
        if mx.det(m, A) != c or c != A.one:
            raise DeterminantMismatch("patched determinant is not 1")  # pragma: no cover
    if mode == "E":
        out.level, out.cert, out.route = certify_patched(m, cert1, cert2, sq)
    return out


def certify_patched(m, cert1: ElemCert, cert2: ElemCert, sq: ConductorSquare):
    """Try to write the patched matrix ``m`` as an elementary product over A.

    Route 1: lift ``cert2`` along eta1 to psi over A; the discrepancy
    psi^-1 m is I modulo a*, and when that is nilpotent it factors.
    Route 2: every coefficient of ``cert1`` already lies in A, in which case
    ``cert1`` read over A replays to ``m`` because i1 is injective.
    """
    A = sq.A
    psi = lift_E_certificate(cert2, "eta1", sq, check=False)
    d = psi.inverse().apply_left(m)
    try:
        tail = factor_one_plus_nilpotent(d, A)
    except PreconditionFailed:
        pass
    else:
        cert = psi.then(tail)
        if cert.matrix() == m:
            return Certification.FULLY_ELEMENTARY, cert, "lift-eta1+nilpotent-factor"
    try:
        cert = cert1.mapped(lambda f: ReesElem(sq.ctx, f), A)
    except NotInAlgebra:
        return Certification.CORNER_CERTIFIED, None, "corner-only"
    if cert.matrix() == m:
        return Certification.FULLY_ELEMENTARY, cert, "corner1-in-A"
    return Certification.CORNER_CERTIFIED, None, "corner-only"  # pragma: no cover


def lift_E_certificate(cert: ElemCert, along: str, sq: ConductorSquare | None = None,
                       target=None, check: bool = True) -> ElemCert:
    """Lift each e_ij(lam) along a surjection by lifting lam canonically.

    ``along`` is ``eta1`` ((R/a)[u] -> A), ``eta2`` ((R/a)[t] -> R[t]) or
    ``mod`` (S[x] -> R[x] for a quotient S of R given as ``target``).
    """
    if along == "eta1":
        if cert.ambient != sq.Ru_bar:
            raise ValueError(f"eta1 lifting expects a certificate over {sq.Ru_bar}")
        lifted = cert.mapped(sq.lift_eta1, sq.A)
        down = sq.eta1
    elif along == "eta2":
        if cert.ambient != sq.Rt_bar:
            raise ValueError(f"eta2 lifting expects a certificate over {sq.Rt_bar}")
        lifted = cert.mapped(sq.lift_eta2, sq.Rt)
        down = sq.eta2
    elif along == "mod":
        if not isinstance(target, PolyRing) or not isinstance(cert.ambient, PolyRing):
            raise ValueError("mod lifting works between polynomial rings")
        src = cert.ambient
        lifted = cert.mapped(lambda f: f.map_coeffs(target.ring), target)

        def down(f):
            return f.map_coeffs(src.ring)
    else:
        raise ValueError(f"unknown surjection {along!r}")
    if check and mx.map_matrix(lifted.matrix(), down) != cert.matrix():
        raise AssertionError("lifted certificate does not map onto the original")
    return lifted


def _coeffs(x):
    return x.poly.coeffs if isinstance(x, ReesElem) else x.coeffs


def factor_one_plus_nilpotent(d, alg) -> ElemCert:
    """Elementary certificate for ``d`` = I + (nilpotent), det(d) = 1.

    Gauss-Jordan with unit pivots brings d to diag(u_1, ..., u_n); the
    diagonal is then absorbed pairwise as diag(p, p^-1) with
    p = u_1 ... u_k, each written as five elementary factors.
    """
    n = len(d)
    ring = alg.base
    one = alg.one
    for i in range(n):
        for j in range(n):
            x = d[i][j] - one if i == j else d[i][j]
            if not all(ring.is_nilpotent(c) for c in _coeffs(x)):
                raise PreconditionFailed(f"entry ({i + 1}, {j + 1}) is not I plus a nilpotent")
    m = mx.copy_matrix(d)
    left = []
    for k in range(n):
        inv = alg.inverse(m[k][k])
        for i in range(n):
            if i != k and m[i][k]:
                lam = -(m[i][k] * inv)
                mx.op_left(m, i, k, lam)
                left.append((i, k, lam))
    diag = [m[k][k] for k in range(n)]
    prod = one
    for u in diag:
        prod = prod * u
    if prod != one:
        raise PreconditionFailed("determinant is not 1")
    ops = [(i, k, -lam) for i, k, lam in left]
    ops += whitehead_ops(diag, alg)
    return ElemCert(alg, n, ops)


def whitehead_ops(diag, alg) -> list:
    """Elementary ops whose product is diag(u_1, ..., u_n) when prod u_k = 1."""
    ops = []
    p = alg.one
    for k in range(len(diag) - 1):
        p = p * diag[k]
        if p == alg.one:
            continue
        p_inv = alg.inverse(p)
        # e12(p) e21(-1/p) e12(p - 1) e21(1) e12(-1) = diag(p, 1/p)
        ops += [(k, k + 1, p), (k + 1, k, -p_inv), (k, k + 1, p - 1), (k + 1, k, alg.one), (k, k + 1, -alg.one)]
    return ops
