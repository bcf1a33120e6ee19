"""Dense univariate polynomials over a :class:`~reeslike.rings.RingCtx`.

Coefficients are stored low degree first with trailing zeros trimmed; the
zero polynomial has no coefficients and degree ``-inf``. The variable label
is ``t`` or ``u`` (``u`` stands for t^2 in the conductor square).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import MalformedElement, MalformedInput, NonUnitLeadingCoeff, NotAUnit
from .rings import IdealFG, RingCtx, canonicalize, nilpotency_bound, quotient_ring

NEG_INF = float("-inf")

_KERNEL_LIMIT = kernels.MAX_COMPILED_MODULUS


def _trim(cs: list) -> tuple:
    k = len(cs)
    while k and cs[k - 1] == 0:
        k -= 1
    return tuple(cs[:k])


class Poly:
    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, ring: RingCtx, coeffs=(), var: str = "t", *, canonical: bool = False):
        if not canonical:
            coeffs = [ring.reduce(c) for c in coeffs]
        self.ring = ring
        self.var = var
        self.coeffs = _trim(list(coeffs))

    @classmethod
    def const(cls, ring: RingCtx, c, var: str = "t") -> Poly:
        return cls(ring, [c], var)

    @classmethod
    def monomial(cls, ring: RingCtx, c, k: int, var: str = "t") -> Poly:
        return cls(ring, [0] * k + [c], var)

    # structure
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero_elem

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero_elem

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([self.ring.reduce(other)])
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.var, self.coeffs))

    def __repr__(self):
        return f"Poly({self.ring.descriptor}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic
    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.ring != self.ring or other.var != self.var:
                raise ValueError(f"mixing {self.ring}[{self.var}] with {other.ring}[{other.var}]")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(self.ring, [other], self.var)
        return None

    def _new(self, cs) -> Poly:
        return Poly(self.ring, _trim(cs), self.var, canonical=True)

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        n = self.ring.modulus
        if n and n < _KERNEL_LIMIT:
            return self._new(kernels.add_mod(list(self.coeffs), list(g.coeffs), n))
        a, b = self.coeffs, g.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = self.ring.add(out[i], y)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        n = self.ring.modulus
        if n and n < _KERNEL_LIMIT:
            return self._new(kernels.sub_mod(list(self.coeffs), list(g.coeffs), n))
        return self + (-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g - self

    def __mul__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        a, b = self.coeffs, g.coeffs
        if not a or not b:
            return self._new([])
        n = self.ring.modulus
        if n and n < _KERNEL_LIMIT:
            if len(b) == 1:
                return self._new(kernels.scale_mod(list(a), b[0], n))
            return self._new(kernels.mul_mod(list(a), list(b), n))
        out = [self.ring.zero_elem] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        if n:
            out = [c % n for c in out]
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly(self.ring, [1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def scale(self, c) -> Poly:
        return self * c

    def map_coeffs(self, target: RingCtx, var: str | None = None) -> Poly:
        return Poly(target, [target.reduce(c) for c in self.coeffs], var or self.var)

    def with_var(self, var: str) -> Poly:
        return Poly(self.ring, self.coeffs, var, canonical=True)


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Division with remainder by ``g`` whose leading coefficient is a unit."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    if not ring.is_unit(g.lc):
        raise NonUnitLeadingCoeff(f"leading coefficient {g.lc} of divisor is not a unit in {ring}")
    inv = ring.inv(g.lc)
    rem = list(f.coeffs)
    dg = len(g.coeffs) - 1
    q = [ring.zero_elem] * max(len(rem) - dg, 0)
    gc = g.coeffs
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = ring.mul(c, inv)
        q[k - dg] = c
        for i, y in enumerate(gc):
            rem[k - dg + i] = ring.sub(rem[k - dg + i], ring.mul(c, y))
    qp = Poly(ring, _trim(q), f.var, canonical=True)
    rp = Poly(ring, _trim(rem[:dg]), f.var, canonical=True)
    assert qp * g + rp == f, "division reconstruction failed"
    return qp, rp


def nilpotent_coeffs(f: Poly) -> bool:
    return all(f.ring.is_nilpotent(c) for c in f.coeffs)


def is_unit_poly(f: Poly) -> bool:
    """Units of R[x]: unit constant term, nilpotent higher coefficients."""
    if f.is_zero():
        return f.ring.is_zero_ring
    ring = f.ring
    return ring.is_unit(f.coeffs[0]) and all(ring.is_nilpotent(c) for c in f.coeffs[1:])


def unit_inverse(f: Poly) -> Poly:
    """Inverse of a unit of R[x] as c^-1 * sum (-m)^k with m nilpotent."""
    if not is_unit_poly(f):
        raise NotAUnit(f"{f} is not a unit of {f.ring}[{f.var}]")
    ring = f.ring
    c_inv = ring.inv(f.coeff(0))
    m = (f * c_inv) - 1
    total = Poly(ring, [1], f.var)
    term = Poly(ring, [1], f.var)
    for _ in range(nilpotency_bound(ring) + 1):
        term = term * (-m)
        if term.is_zero():
            break
        total = total + term
    inv = total * c_inv
    if not (f * inv == 1):
        raise NotAUnit(f"failed to invert {f}")
    return inv


# ring maps on coefficients


@dataclass(frozen=True)
class RingMap:
    """Coefficient transport between R and R/b.

    ``kind`` is ``"mod"`` (reduction R -> R/b) or ``"lift"`` (canonical lift
    R/b -> R with representatives in ``[0, b)``).
    """

    source: RingCtx
    target: RingCtx
    kind: str

    def __call__(self, x):
        return self.target.reduce(x)


def mod_map(ring: RingCtx, ideal: IdealFG) -> RingMap:
    return RingMap(ring, quotient_ring(ring, ideal), "mod")


def lift_map(ring: RingCtx, ideal: IdealFG) -> RingMap:
    return RingMap(quotient_ring(ring, ideal), ring, "lift")


def coeff_map(f: Poly, hom: RingMap, var: str | None = None) -> Poly:
    if f.ring != hom.source:
        raise ValueError(f"map expects {hom.source}, polynomial is over {f.ring}")
    return Poly(hom.target, [hom(c) for c in f.coeffs], var or f.var)


def double_degree(f: Poly, var: str = "t") -> Poly:
    """u -> t^2."""
    out = []
    for c in f.coeffs:
        out.append(c)
        out.append(f.ring.zero_elem)
    return Poly(f.ring, _trim(out), var, canonical=True)


def even_part(f: Poly, var: str = "u") -> Poly:
    """Keep the even-degree coefficients, renaming t^2 to u."""
    return Poly(f.ring, _trim(list(f.coeffs[::2])), var, canonical=True)


@dataclass(frozen=True)
class PolyRing:
    """The polynomial ring ``ring[var]`` viewed as an ambient algebra."""

    ring: RingCtx
    var: str = "t"

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring != self.ring or value.var != self.var:
                raise MalformedElement(f"{value!r} is not in {self.handle}")
            return value
        if isinstance(value, str):
            return parse_poly(value, self.ring, self.var)
        if isinstance(value, (list, tuple)):
            return Poly(self.ring, value, self.var)
        return Poly(self.ring, [value], self.var)

    @property
    def zero(self) -> Poly:
        return Poly(self.ring, (), self.var, canonical=True)

    @property
    def one(self) -> Poly:
        return Poly(self.ring, [1], self.var)

    @property
    def handle(self) -> str:
        return f"{self.ring.descriptor}[{self.var}]"

    @property
    def base(self) -> RingCtx:
        return self.ring

    def contains(self, x) -> bool:
        return isinstance(x, Poly) and x.ring == self.ring and x.var == self.var

    def is_unit(self, x: Poly) -> bool:
        return is_unit_poly(x)

    def inverse(self, x: Poly) -> Poly:
        return unit_inverse(x)

    def format(self, x: Poly) -> str:
        return format_poly(x)

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.ring, self.var)

    def __str__(self):
        return self.handle


# text syntax


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts: list[tuple[bool, str]] = []
    for k, c in enumerate(f.coeffs):
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = str(mag)
        else:
            mono = f.var if k == 1 else f"{f.var}^{k}"
            body = mono if mag == 1 else f"{str(mag)}*{mono}"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TERM = re.compile(r"^(?P<c>\d+(?:/\d+)?)?(?:(?(c)\*)(?P<v>[a-z])(?:\^(?P<e>\d+))?)?$")


def parse_poly(text: str, ring: RingCtx, var: str = "t") -> Poly:
    """Parse ``2 + 3*t + t^2`` style text; exact inverse of :func:`format_poly`."""
    s = text.replace(" ", "")
    if not s:
        raise MalformedInput("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise MalformedInput(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, object] = {}
    for sign, body in pieces:
        m = _TERM.match(body)
        if not m or (m.group("c") is None and m.group("v") is None):
            raise MalformedInput(f"bad term {body!r} in {text!r}")
        if m.group("v") is not None and m.group("v") != var:
            raise MalformedInput(f"expected variable {var!r} in {text!r}")
        try:
            c = canonicalize(m.group("c") or "1", ring)
        except MalformedElement as exc:
            raise MalformedInput(str(exc)) from exc
        if sign == "-":
            c = ring.neg(c)
        if m.group("v") is None:
            k = 0
        else:
            k = int(m.group("e")) if m.group("e") is not None else 1
        coeffs[k] = ring.add(coeffs.get(k, ring.zero_elem), c)
    deg = max(coeffs)
    return Poly(ring, [coeffs.get(k, ring.zero_elem) for k in range(deg + 1)], var, canonical=True)


def poly_zero(ring: RingCtx, var: str = "t") -> Poly:
    return Poly(ring, (), var, canonical=True)
