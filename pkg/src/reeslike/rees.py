"""The Rees-like algebra A = R[at, t^2] = R + at + Rt^2 + at^3 + ... inside R[t].

An element of A is a polynomial in t over R whose odd-degree coefficients
lie in the ideal a. :class:`ReesCtx` plays the role of the algebra (it is
the ambient handle used by rows, matrices and certificates) and
:class:`ReesElem` is an element carrying the parity invariant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ClosureViolation, MalformedInput, NotInAlgebra, UnsupportedQuotient, UnsupportedRing
from .poly import Poly, PolyRing, format_poly, is_unit_poly, parse_poly, unit_inverse
from .rings import INTEGERS, IdealFG, RingCtx, factorize, parse_ideal, parse_ring, quotient_ring


def rees_membership(f: Poly, ctx: ReesCtx) -> bool:
    """True iff every odd-degree coefficient of ``f`` lies in a."""
    if f.ring != ctx.ring:
        raise ValueError(f"polynomial over {f.ring}, context over {ctx.ring}")
    a = ctx.a
    return all(c in a for c in f.coeffs[1::2])


@dataclass(frozen=True)
class ReesCtx:
    ring: RingCtx
    a: IdealFG

    def __post_init__(self):
        if self.a.ring != self.ring:
            raise ValueError(f"ideal over {self.a.ring} used with base ring {self.ring}")

    @classmethod
    def of(cls, ring: RingCtx, *gens) -> ReesCtx:
        return cls(ring, IdealFG(ring, gens))

    @property
    def dim_A(self) -> int:
        return self.ring.dim + 1

    @property
    def a_is_zero(self) -> bool:
        return self.a.is_zero

    @property
    def a_is_unit(self) -> bool:
        return self.a.is_unit

    @property
    def handle(self) -> str:
        return f"rees{{ring={self.ring.descriptor},a=ideal[{self.a.normal}]}}"

    @property
    def base(self) -> RingCtx:
        return self.ring

    @property
    def poly_ring(self) -> PolyRing:
        return PolyRing(self.ring, "t")

    @property
    def residue_ring(self) -> RingCtx:
        """R/a."""
        return quotient_ring(self.ring, self.a)

    def __str__(self):
        return self.handle

    def __call__(self, value) -> ReesElem:
        if isinstance(value, ReesElem):
            if value.ctx != self:
                raise NotInAlgebra(f"{value} belongs to {value.ctx}, not {self}")
            return value
        if isinstance(value, Poly):
            return ReesElem(self, value)
        if isinstance(value, str):
            return ReesElem(self, parse_poly(value, self.ring, "t"))
        if isinstance(value, (list, tuple)):
            return ReesElem(self, Poly(self.ring, value, "t"))
        return ReesElem(self, Poly(self.ring, [value], "t"))

    @property
    def zero(self) -> ReesElem:
        return ReesElem(self, Poly(self.ring, (), "t"), check=False)

    @property
    def one(self) -> ReesElem:
        return ReesElem(self, Poly(self.ring, [1], "t"), check=False)

    def contains(self, x) -> bool:
        return isinstance(x, ReesElem) and x.ctx == self and rees_membership(x.poly, self)

    def is_unit(self, x: ReesElem) -> bool:
        # A sits integrally inside R[t], so units of R[t] lying in A are units of A
        return is_unit_poly(x.poly)

    def inverse(self, x: ReesElem) -> ReesElem:
        return ReesElem(self, unit_inverse(x.poly))

    def format(self, x: ReesElem) -> str:
        return format_poly(x.poly)

    def parse(self, text: str) -> ReesElem:
        f = parse_poly(text, self.ring, "t")
        if not rees_membership(f, self):
            raise NotInAlgebra(f"{text!r} has an odd-degree coefficient outside {self.a}")
        return ReesElem(self, f, check=False)


class ReesElem:
    """Element of R[at, t^2]; the parity invariant is checked on construction."""

    __slots__ = ("ctx", "poly")

    def __init__(self, ctx: ReesCtx, poly: Poly, *, check: bool = True):
        if poly.ring != ctx.ring or poly.var != "t":
            raise NotInAlgebra(f"{poly!r} is not a polynomial in t over {ctx.ring}")
        if check and not rees_membership(poly, ctx):
            raise NotInAlgebra(f"{format_poly(poly)} has an odd-degree coefficient outside {ctx.a}")
        self.ctx = ctx
        self.poly = poly

    def _wrap(self, poly: Poly) -> ReesElem:
        if not rees_membership(poly, self.ctx):
            raise ClosureViolation(f"{format_poly(poly)} escaped {self.ctx}")
        return ReesElem(self.ctx, poly, check=False)

    def _other(self, other):
        if isinstance(other, ReesElem):
            if other.ctx != self.ctx:
                raise ValueError(f"mixing {self.ctx} and {other.ctx}")
            return other.poly
        if isinstance(other, int) and not isinstance(other, bool):
            return Poly(self.ctx.ring, [other], "t")
        return None

    def __add__(self, other):
        g = self._other(other)
        return NotImplemented if g is None else self._wrap(self.poly + g)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._other(other)
        return NotImplemented if g is None else self._wrap(self.poly - g)

    def __rsub__(self, other):
        g = self._other(other)
        return NotImplemented if g is None else self._wrap(g - self.poly)

    def __mul__(self, other):
        g = self._other(other)
        return NotImplemented if g is None else self._wrap(self.poly * g)

    __rmul__ = __mul__

    def __neg__(self):
        return ReesElem(self.ctx, -self.poly, check=False)

    def __pow__(self, k: int):
        return self._wrap(self.poly**k)

    def __eq__(self, other):
        if isinstance(other, ReesElem):
            return self.ctx == other.ctx and self.poly == other.poly
        if isinstance(other, int):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.poly))

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    @property
    def coeffs(self):
        return self.poly.coeffs

    @property
    def degree(self):
        return self.poly.degree

    def __str__(self):
        return format_poly(self.poly)

    def __repr__(self):
        return f"ReesElem({self.ctx.handle}, {format_poly(self.poly)!r})"


def rees_arith(f: ReesElem, g: ReesElem, op: str) -> ReesElem:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def quotient_context(ctx: ReesCtx, b: IdealFG) -> ReesCtx:
    """(R/b)[a't, t^2] with a' the image of a in R/b."""
    if b.ring != ctx.ring:
        raise UnsupportedQuotient(f"ideal over {b.ring} does not live in {ctx.ring}")
    target = quotient_ring(ctx.ring, b)
    return ReesCtx(target, ctx.a.image_in(target))


def quotient_image(f: ReesElem, b: IdealFG) -> ReesElem:
    """Coefficientwise reduction A -> (R/b)[a't, t^2].

    Its kernel is b* = bR[t] intersected with A (see :func:`star_membership`).
    """
    qctx = quotient_context(f.ctx, b)
    return ReesElem(qctx, f.poly.map_coeffs(qctx.ring), check=False)


def extended_membership(f: ReesElem, b: IdealFG) -> bool:
    """Membership in the extended ideal bA = b + abt + bt^2 + abt^3 + ..."""
    ab = f.ctx.a.product(b)
    return all(c in (ab if k % 2 else b) for k, c in enumerate(f.poly.coeffs))


def is_nilpotent(f: ReesElem) -> bool:
    """nil(A) = nil(R)[nil(a)t, t^2]: every coefficient nilpotent in R."""
    ring = f.ctx.ring
    return all(ring.is_nilpotent(c) for c in f.poly.coeffs)


def star_membership(f: ReesElem, b: IdealFG) -> bool:
    """Membership in b* = bR[t] intersected with A."""
    if b.ring != f.ctx.ring:
        raise ValueError("ideal over a different ring")
    return all(c in b for c in f.poly.coeffs)


def star_primary_components(b: IdealFG) -> list[tuple[int, IdealFG]]:
    """Primary components (p, (p^k)) of b = (m) over Z, m >= 2."""
    if b.ring.tag != INTEGERS:
        raise UnsupportedRing("primary components are computed over Z only")
    m = b.normal
    if m < 2:
        raise ValueError(f"need a proper nonzero ideal, got ({m})")
    return [(p, IdealFG(b.ring, (p**k,))) for p, k in factorize(m)]


def localized_membership(f: Poly, s, k: int, ctx: ReesCtx) -> bool:
    """Is f/s^k in S^-1 A for S = {s^m}?

    Equivalent to s^m f lying in A for some m; the search over m is bounded
    by the largest prime exponent of the generator of a.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    ring = ctx.ring
    if not (ring.tag == INTEGERS or ring.is_field):
        raise UnsupportedRing(f"localization over {ring} is not supported")
    if s == 0:
        raise ValueError("s must be nonzero")
    if f.ring != ring:
        raise ValueError("polynomial over a different ring")
    odd = f.coeffs[1::2]
    if ring.is_field or ctx.a.is_unit:
        # s is a unit, or every odd coefficient already lies in a
        return rees_membership(f, ctx)
    n = ctx.a.normal
    if n == 0:
        return all(c == 0 for c in odd)
    bound = max(e for _, e in factorize(n))
    sm = pow(s, bound, n)
    return all(c * sm % n == 0 for c in odd)


def parse_context(text: str) -> ReesCtx:
    """Parse ``rees{ring=Z, a=ideal[2]}``."""
    m = re.fullmatch(r"\s*rees\{\s*ring\s*=\s*([^,\s]+)\s*,\s*a\s*=\s*(ideal\[[^\]]*\])\s*\}\s*", text)
    if not m:
        raise MalformedInput(f"cannot parse context {text!r}")
    ring = parse_ring(m.group(1))
    return ReesCtx(ring, parse_ideal(m.group(2), ring))

