"""Elementary reduction engines producing replayable certificates.

Every engine takes a row (an :class:`UmRow` or a plain sequence plus its
ambient) and returns operations carrying it to e_1 = (1, 0, ..., 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from . import matrices as mx
from .certs import ElemCert, UmRow, empty_cert
from .errors import (
    BoundViolation,
    NoCornerSolver,
    NoRowSolver,
    NotUnimodular,
    UnsupportedRing,
)
from .patching import Certification, ConductorSquare, lift_E_certificate, patch_matrix, whitehead_ops
from .poly import Poly, PolyRing, double_degree, even_part
from .rees import ReesCtx, ReesElem
from .rings import MODULAR, CRTComponent, RingCtx, artinian_split, factorize


def _unpack(row, ambient=None):
    if isinstance(row, UmRow):
        return row.ambient, list(row.entries)
    if ambient is None:
        first = row[0] if len(row) else None
        if isinstance(first, ReesElem):
            ambient = first.ctx
        elif isinstance(first, Poly):
            ambient = PolyRing(first.ring, first.var)
        else:
            raise ValueError("a plain row needs its ambient")
    entries = [ambient(x) if not ambient.contains(x) else x for x in row]
    return ambient, entries


def _check_length(n: int):
    if n < 2:
        raise ValueError(f"rows must have at least 2 entries, got {n}")


def normalize_unit_first(v, alg) -> list:
    """Ops taking a row whose first entry is a unit to e_1.

    Clears the tail with multiples of the unit, then turns (u, 0, ...) into
    (1, 0, ...) with the chain r2 += u^-1(1-u) r1; r1 += r2; r2 -= (1-u) r1.
    """
    u = v[0]
    if not alg.is_unit(u):
        raise NotUnimodular(f"{u} is not a unit")
    inv = alg.inverse(u)
    ops = [(0, j, -(v[j] * inv)) for j in range(1, len(v)) if v[j]]
    one = alg.one
    if u != one:
        ops += [(0, 1, inv * (one - u)), (1, 0, one), (0, 1, -(one - u))]
    return ops


def reduce_row_euclidean(row, ambient: PolyRing | None = None) -> ElemCert:
    """Reduce a unimodular row over F[x] to e_1 by repeated division."""
    alg, v = _unpack(row, ambient)
    n = len(v)
    _check_length(n)
    if not isinstance(alg, PolyRing):
        raise UnsupportedRing(f"the Euclidean engine works over F[x], not {alg}")
    if alg.base.is_zero_ring:
        return empty_cert(alg, n)
    if not alg.base.is_field:
        raise UnsupportedRing(f"{alg.base} is not a field")
    ops = []

    def act(i, j, lam):
        ops.append((i, j, lam))
        mx.op_on_row(v, i, j, lam)

    last = float("inf")
    while True:
        live = [k for k in range(n) if v[k]]
        if not live:
            raise NotUnimodular("the row is zero")
        p = min(live, key=lambda k: (v[k].degree, k))
        deg = v[p].degree
        if len(live) == 1:
            break
        assert deg < last, "pivot degree must strictly decrease"
        last = deg
        for j in live:
            if j != p:
                q, _ = divmod(v[j], v[p])
                act(p, j, -q)
    if deg != 0:
        raise NotUnimodular(f"entries share the non-unit factor {v[p]}")
    if p != 0:
        act(p, 0, alg.one)
        act(0, p, -alg.one)
    ops += normalize_unit_first(v, alg)
    return ElemCert(alg, n, ops)


# CRT plumbing shared by the artinian and patched engines


def _local_parts(ring: RingCtx) -> list[CRTComponent]:
    if ring.tag == MODULAR and len(factorize(ring.modulus)) > 1:
        return artinian_split(ring)
    return [CRTComponent(ring, ring.reduce, lambda x: x)]


def _restrict_ambient(alg, ring: RingCtx):
    if isinstance(alg, ReesCtx):
        return ReesCtx(ring, alg.a.image_in(ring))
    return PolyRing(ring, alg.var)


def _restrict(x, local):
    if isinstance(local, ReesCtx):
        return ReesElem(local, x.poly.map_coeffs(local.ring), check=False)
    return x.map_coeffs(local.ring)


def _embed_poly(f: Poly, ring: RingCtx, embed: Callable) -> Poly:
    return Poly(ring, [embed(c) for c in f.coeffs], f.var)


def _embed(x, alg, embed: Callable):
    if isinstance(alg, ReesCtx):
        return ReesElem(alg, _embed_poly(x.poly, alg.ring, embed), check=False)
    return _embed_poly(x, alg.base, embed)


def _embed_cert(cert: ElemCert, alg, embed: Callable) -> ElemCert:
    return cert.mapped(lambda lam: _embed(lam, alg, embed), alg)


def _residue_field(ring: RingCtx) -> RingCtx:
    if ring.is_field:
        return ring
    return RingCtx.prime_field(factorize(ring.modulus)[0][0])


def reduce_row_artinian(row, ambient=None) -> ElemCert:
    """Reduce a unimodular row over S[x] or S[at, t^2], S artinian, to e_1.

    Each local factor is reduced modulo its nilradical to a field, solved
    there by division, lifted back, and finished with unit cleanup.
    """
    alg, v = _unpack(row, ambient)
    n = len(v)
    _check_length(n)
    ring = alg.base
    if ring.is_zero_ring:
        return empty_cert(alg, n)
    if not ring.is_artinian:
        raise UnsupportedRing(f"{ring} is not artinian")
    ops = []
    for part in _local_parts(ring):
        local = _restrict_ambient(alg, part.ring)
        cert = _artinian_local([_restrict(x, local) for x in v], local)
        ops += _embed_cert(cert, alg, part.embed).ops
    cert = ElemCert(alg, n, ops)
    if cert.apply_row(v) != mx.unit_row(alg, n):
        raise AssertionError("artinian reduction did not reach e_1")  # pragma: no cover
    return cert


def _artinian_local(v, local) -> ElemCert:
    ring = local.base
    field = _residue_field(ring)
    if isinstance(local, ReesCtx):
        if local.a.is_unit:
            # the reduced algebra is F[t]
            bar = PolyRing(field, "t")

            def down(x):
                return x.poly.map_coeffs(field)

            def up(f):
                return ReesElem(local, f.map_coeffs(ring), check=False)
        else:
            # a is nilpotent here, so odd coefficients die and t^2 becomes u
            bar = PolyRing(field, "u")

            def down(x):
                return even_part(x.poly.map_coeffs(field), "u")

            def up(f):
                return ReesElem(local, double_degree(f.map_coeffs(ring), "t"), check=False)
    else:
        bar = PolyRing(field, local.var)

        def down(x):
            return x.map_coeffs(field)

        def up(f):
            return f.map_coeffs(ring)

    cert_bar = reduce_row_euclidean([down(x) for x in v], bar)
    lifted = cert_bar.mapped(up, local)
    w = lifted.apply_row(v)
    return lifted.then(normalize_unit_first(w, local))


# corner solver registry


class CornerSolver(NamedTuple):
    name: str
    applies: Callable[[PolyRing], bool]
    solve: Callable


def _trivial(row, ambient):
    return empty_cert(ambient, len(row))


_REGISTRY: list[CornerSolver] = [
    CornerSolver("zero-ring", lambda alg: alg.base.is_zero_ring, _trivial),
    CornerSolver("euclidean", lambda alg: alg.base.is_field, reduce_row_euclidean),
    CornerSolver("artinian", lambda alg: alg.base.is_artinian, reduce_row_artinian),
]


def corner_solvers() -> list[CornerSolver]:
    return list(_REGISTRY)


def register_corner_solver(name: str, applies: Callable, solve: Callable) -> None:
    """Add a solver ahead of the bundled ones.

    ``applies(poly_ring)`` decides whether it handles a corner;
    ``solve(entries, poly_ring)`` returns an ElemCert reaching e_1.
    """
    _REGISTRY.insert(0, CornerSolver(name, applies, solve))


def unregister_corner_solver(name: str) -> None:
    _REGISTRY[:] = [s for s in _REGISTRY if s.name != name]


def solve_corner(entries, alg: PolyRing, solvers=None) -> tuple[str, ElemCert]:
    for s in solvers if solvers is not None else _REGISTRY:
        if s.applies(alg):
            return s.name, s.solve(list(entries), alg)
    raise NoCornerSolver(f"no corner solver is registered for {alg}")


# the patched pipeline over A


class Stage(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ReductionReport:
    status: Certification
    ambient: object
    row: list
    cert_A: ElemCert | None = None
    cert_corner1: ElemCert | None = None
    cert_corner2: ElemCert | None = None
    final_row: list | None = None
    matrix: list | None = None
    log: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status is not Certification.FAILED


def reduce_row_rees_patched(row, corner_solvers=None, ambient: ReesCtx | None = None) -> ReductionReport:
    """Reduce a unimodular row over A = R[at, t^2] by solving on both corners.

    Corner 1 is R[t], corner 2 is (R/a)[u]. The corner-2 certificate is
    lifted to R[t]; the leftover discrepancy lies in aR[t] and is absorbed by
    unit cleanup and a Whitehead factor whose image mod a is I. The two
    corner matrices then agree over (R/a)[t] and glue to a matrix over A,
    which is finally certified over A when possible.
    """
    ctx, v = _unpack(row, ambient)
    if not isinstance(ctx, ReesCtx):
        raise UnsupportedRing(f"the patched pipeline works over a Rees-like algebra, not {ctx}")
    r = len(v)
    bound = ctx.ring.dim + 2
    if r < bound:
        raise BoundViolation(f"rows of length {r} < dim R + 2 = {bound}")
    parts = _local_parts(ctx.ring)
    if len(parts) == 1:
        rep = _patched_local(v, ctx, corner_solvers)
    else:
        rep = _patched_split(v, ctx, parts, corner_solvers)
    e1 = mx.unit_row(ctx, r)
    if rep.status is Certification.FULLY_ELEMENTARY:
        rep.final_row = rep.cert_A.apply_row(v)
    elif rep.matrix is not None:
        rep.final_row = mx.row_times(v, rep.matrix, ctx)
    if rep.final_row is not None and rep.final_row != e1:
        rep.log.append(Stage("final-row", False, "replay does not reach e_1"))
        rep.status = Certification.FAILED
    return rep


def _patched_local(v, ctx: ReesCtx, solvers) -> ReductionReport:
    sq = ConductorSquare(ctx)
    r = len(v)
    rep = ReductionReport(Certification.FAILED, ctx, list(v))
    log = rep.log
    row1 = [sq.i1(x) for x in v]
    row2 = [sq.eta1(x) for x in v]

    name, s1 = solve_corner(row1, sq.Rt, solvers)
    log.append(Stage("corner1", s1.apply_row(row1) == mx.unit_row(sq.Rt, r), f"solver={name}"))
    name, s2 = solve_corner(row2, sq.Ru_bar, solvers)
    log.append(Stage("corner2", s2.apply_row(row2) == mx.unit_row(sq.Ru_bar, r), f"solver={name}"))
    rep.cert_corner1, rep.cert_corner2 = s1, s2
    if not (log[0].ok and log[1].ok):
        return rep

    # the corner solutions differ over (R/a)[t] by a matrix fixing e_1
    img2 = s2.mapped(sq.i2, sq.Rt_bar)
    phi = s1.mapped(sq.eta2, sq.Rt_bar).inverse().apply_left(img2.matrix())
    log.append(Stage("compare", phi[0] == mx.unit_row(sq.Rt_bar, r)))

    if ctx.a_is_unit:
        tau = s1
        log.append(Stage("lift", True, "degenerate square, corner 2 is the zero ring"))
    else:
        psi = lift_E_certificate(img2, "eta2", sq)
        disc = psi.apply_row(row1)
        log.append(Stage("lift", True, "corner-2 certificate lifted along eta2"))
        if disc == mx.unit_row(sq.Rt, r):
            tau = psi
            log.append(Stage("correct", True, "no discrepancy"))
        elif sq.Rt.is_unit(disc[0]):
            fix = [(0, j, -(disc[j] * sq.Rt.inverse(disc[0]))) for j in range(1, r) if disc[j]]
            fix += whitehead_ops([sq.Rt.inverse(disc[0]), disc[0]], sq.Rt)
            tau = psi.then(fix)
            log.append(Stage("correct", True, "unit cleanup and Whitehead factor"))
        else:
            # both corners are certified but there is no constructive glue
            log.append(Stage("correct", False, "discrepancy has a non-unit leading entry"))
            rep.status = Certification.CORNER_CERTIFIED
            return rep
    agree = mx.map_matrix(tau.matrix(), sq.eta2) == img2.matrix()
    log.append(Stage("agree", agree))
    if not agree or tau.apply_row(row1) != mx.unit_row(sq.Rt, r):
        return rep

    pm = patch_matrix(tau.matrix(), tau.inverse().matrix(), s2.matrix(), s2.inverse().matrix(),
                      sq, mode="E", cert1=tau, cert2=s2)
    log.append(Stage("patch", True, f"route={pm.route}"))
    rep.cert_corner1 = tau
    rep.matrix = pm.matrix
    rep.status = pm.level
    rep.cert_A = pm.cert
    log.append(Stage("certify", pm.level is Certification.FULLY_ELEMENTARY, str(pm.level)))
    return rep


def _patched_split(v, ctx: ReesCtx, parts, solvers) -> ReductionReport:
    rep = ReductionReport(Certification.FAILED, ctx, list(v))
    sq = ConductorSquare(ctx)
    r = len(v)
    subs = []
    for part in parts:
        local = _restrict_ambient(ctx, part.ring)
        sub = _patched_local([_restrict(x, local) for x in v], local, solvers)
        rep.log += [Stage(f"{part.ring}:{s.name}", s.ok, s.detail) for s in sub.log]
        subs.append((part, sub))
    levels = [sub.status for _, sub in subs]
    rep.status = min(levels, key=lambda c: c.rank)
    if rep.status is Certification.FAILED:
        return rep

    def cat(certs, alg, embed_for):
        ops = []
        for (part, _), cert in zip(subs, certs):
            ops += cert.mapped(embed_for(part), alg).ops
        return ElemCert(alg, r, ops)

    def into_rt(part):
        return lambda f: _embed_poly(f, ctx.ring, part.embed)

    def into_ru(part):
        # residues of the factor lift to [0, q), embed, then reduce mod a
        return lambda f: Poly(sq.residue, [part.embed(c) for c in f.coeffs], "u")

    rep.cert_corner1 = cat([s.cert_corner1 for _, s in subs], sq.Rt, into_rt)
    rep.cert_corner2 = cat([s.cert_corner2 for _, s in subs], sq.Ru_bar, into_ru)
    if rep.status is Certification.FULLY_ELEMENTARY:
        rep.cert_A = cat([s.cert_A for _, s in subs], ctx, lambda part: lambda x: _embed(x, ctx, part.embed))
        rep.matrix = rep.cert_A.matrix()
    elif all(sub.matrix is not None for _, sub in subs):
        m = [[ctx.zero] * r for _ in range(r)]
        for part, sub in subs:
            for i in range(r):
                for j in range(r):
                    m[i][j] = m[i][j] + _embed(sub.matrix[i][j], ctx, part.embed)
        rep.matrix = m
    return rep


# size reduction of K1 representatives


@dataclass
class K1Reduction:
    matrix: list
    sigma1: ElemCert
    sigma2: ElemCert
    inverse: list

    def __iter__(self):
        return iter((self.matrix, self.sigma1, self.sigma2))


def solve_row(entries, alg, corner_solvers=None) -> ElemCert:
    """An elementary certificate carrying ``entries`` to e_1 over ``alg``."""
    if isinstance(alg, ReesCtx):
        try:
            rep = reduce_row_rees_patched(entries, corner_solvers, ambient=alg)
        except NoCornerSolver as exc:
            raise NoRowSolver(str(exc)) from None
        if rep.status is not Certification.FULLY_ELEMENTARY:
            raise NoRowSolver(f"no elementary certificate over {alg} (status {rep.status})")
        return rep.cert_A
    try:
        return solve_corner(entries, alg, corner_solvers)[1]
    except NoCornerSolver as exc:
        raise NoRowSolver(str(exc)) from None


def k1_reduce(m, m_inv, r: int, ambient, corner_solvers=None) -> K1Reduction:
    """Shrink an invertible n x n matrix to r x r by elementary operations.

    Returns (M', sigma1, sigma2) with sigma2 . M . sigma1 = diag(M', I).
    Each step carries the last row (unimodular, its dual being the last
    column of the inverse) to (0, ..., 0, 1) and clears the last column.
    """
    alg = ambient
    n = len(m)
    bound = max(3, alg.base.dim + 2)
    if r < bound:
        raise BoundViolation(f"target size {r} < max(3, dim R + 2) = {bound}")
    if r > n:
        raise BoundViolation(f"target size {r} exceeds matrix size {n}")
    if mx.mat_mul(m, m_inv, alg) != mx.identity(alg, n):
        raise ValueError("the supplied inverse is wrong")
    cur, inv = mx.copy_matrix(m), mx.copy_matrix(m_inv)
    right, left_blocks = [], []
    for size in range(n, r, -1):
        last = size - 1
        if cur[last][:size] == mx.unit_row(alg, size, last):
            ops = []
        else:
            tau = solve_row(cur[last][:size], alg, corner_solvers)
            ops = list(tau.ops) + [(0, last, alg.one), (last, 0, -alg.one)]
        block = ElemCert(alg, n, ops)
        cur = block.apply_right(cur)
        inv = block.inverse().apply_left(inv)
        assert cur[last][:size] == mx.unit_row(alg, size, last)
        clear = [(i, last, -cur[i][last]) for i in range(last) if cur[i][last]]
        for i, j, lam in clear:
            mx.op_left(cur, i, j, lam)
        for i, j, lam in clear:
            mx.op_right(inv, i, j, -lam)
        right += ops
        left_blocks.append(clear)
    sigma1 = ElemCert(alg, n, right)
    sigma2 = ElemCert(alg, n, [op for block in reversed(left_blocks) for op in block])
    if cur != mx.block_diag([row[:r] for row in cur[:r]], n, alg):
        raise AssertionError("peeling left a non-identity tail")  # pragma: no cover
    return K1Reduction([row[:r] for row in cur[:r]], sigma1, sigma2, [row[:r] for row in inv[:r]])
