"""Base rings: Q, F_p, Z, Z/n (and the zero ring that quotients produce).

Ring elements are plain Python values kept in canonical form: ``int`` for
Z, residues in ``[0, n)`` for F_p and Z/n, :class:`fractions.Fraction` for Q.
Equality of canonical values is equality of ring elements.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple

from .errors import MalformedElement, MalformedInput, NotAUnit, UnsupportedRing

RATIONAL = "Q"
PRIME = "Fp"
INTEGERS = "Z"
MODULAR = "Zn"
ZERO = "Zero"


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` by trial division, as ((p, k), ...)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


@dataclass(frozen=True)
class RingCtx:
    tag: str
    modulus: int = 0

    def __post_init__(self):
        if self.tag == PRIME:
            if not is_prime(self.modulus):
                raise UnsupportedRing(f"F_p needs a prime, got {self.modulus}")
        elif self.tag == MODULAR:
            if self.modulus < 2:
                raise UnsupportedRing(f"Z/n needs n >= 2, got {self.modulus}")
        elif self.tag == ZERO:
            object.__setattr__(self, "modulus", 1)
        elif self.tag in (RATIONAL, INTEGERS):
            object.__setattr__(self, "modulus", 0)
        else:
            raise UnsupportedRing(f"unknown ring tag {self.tag!r}")

    # constructors
    @classmethod
    def rational(cls) -> RingCtx:
        return cls(RATIONAL)

    @classmethod
    def prime_field(cls, p: int) -> RingCtx:
        return cls(PRIME, p)

    @classmethod
    def integers(cls) -> RingCtx:
        return cls(INTEGERS)

    @classmethod
    def modular(cls, n: int) -> RingCtx:
        return cls(MODULAR, n)

    @classmethod
    def zero(cls) -> RingCtx:
        return cls(ZERO, 1)

    # capability metadata
    @property
    def dim(self) -> int:
        return 1 if self.tag == INTEGERS else 0

    @property
    def is_field(self) -> bool:
        return self.tag in (RATIONAL, PRIME)

    @property
    def is_artinian(self) -> bool:
        return self.tag != INTEGERS

    @property
    def is_zero_ring(self) -> bool:
        return self.tag == ZERO

    @property
    def is_finite(self) -> bool:
        return self.tag in (PRIME, MODULAR, ZERO)

    @property
    def descriptor(self) -> str:
        if self.tag in (PRIME, MODULAR):
            return f"{self.tag}:{self.modulus}"
        return self.tag

    def __str__(self):
        return self.descriptor

    def __repr__(self):
        return f"RingCtx({self.descriptor})"

    # arithmetic on canonical values
    def reduce(self, x):
        """Canonical representative of an ``int`` or ``Fraction``.

        Also transports a canonical value of a quotient or parent ring, since
        residues in ``[0, m)`` are canonical lifts.
        """
        if self.modulus:
            if isinstance(x, Fraction):
                if x.denominator == 1:
                    return x.numerator % self.modulus
                return x.numerator * self.inv(x.denominator % self.modulus) % self.modulus
            return x % self.modulus
        if self.tag == RATIONAL:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise MalformedElement(f"{x} is not an integer")
            return x.numerator
        return int(x)

    @property
    def zero_elem(self):
        return Fraction(0) if self.tag == RATIONAL else 0

    @property
    def one_elem(self):
        return self.reduce(1)

    def add(self, x, y):
        return (x + y) % self.modulus if self.modulus else x + y

    def sub(self, x, y):
        return (x - y) % self.modulus if self.modulus else x - y

    def mul(self, x, y):
        return (x * y) % self.modulus if self.modulus else x * y

    def neg(self, x):
        return (-x) % self.modulus if self.modulus else -x

    def is_unit(self, x) -> bool:
        if self.tag == INTEGERS:
            return x in (1, -1)
        if self.tag == MODULAR:
            return math.gcd(x, self.modulus) == 1
        if self.tag == ZERO:
            return True
        return x != 0

    def inv(self, x):
        if self.tag == INTEGERS:
            if x in (1, -1):
                return x
        elif self.tag == RATIONAL:
            if x != 0:
                return 1 / Fraction(x)
        elif self.tag == ZERO:
            return 0
        elif math.gcd(x, self.modulus) == 1:
            return pow(x, -1, self.modulus)
        raise NotAUnit(f"{x} is not a unit of {self}")

    def is_nilpotent(self, x) -> bool:
        if self.tag in (MODULAR, ZERO):
            return x % _radical(self.modulus) == 0
        return x == 0

    def elements(self):
        if not self.is_finite:
            raise UnsupportedRing(f"{self} is infinite")
        return range(self.modulus)

    def format(self, x) -> str:
        return str(x)


def _radical(n: int) -> int:
    return math.prod(p for p, _ in factorize(n)) if n > 1 else 1


_INT = re.compile(r"^[+-]?\d+$")
_FRAC = re.compile(r"^([+-]?\d+)/([+-]?\d+)$")


def canonicalize(raw, ring: RingCtx):
    """Unique canonical representative of ``raw`` (int, Fraction or text)."""
    if isinstance(raw, bool):
        raise MalformedElement(f"not a ring element: {raw!r}")
    if isinstance(raw, str):
        s = raw.strip().replace(" ", "")
        if _INT.match(s):
            return ring.reduce(int(s))
        m = _FRAC.match(s)
        if not m:
            raise MalformedElement(f"cannot parse element {raw!r}")
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise MalformedElement(f"zero denominator in {raw!r}")
        raw = Fraction(num, den)
    if isinstance(raw, Fraction) and ring.modulus and math.gcd(raw.denominator, ring.modulus) != 1:
        raise MalformedElement(f"denominator of {raw} is not invertible in {ring}")
    if isinstance(raw, (int, Fraction)):
        return ring.reduce(raw)
    raise MalformedElement(f"not a ring element: {raw!r}")


def parse_ring(text: str) -> RingCtx:
    s = text.strip()
    if s == "Q":
        return RingCtx.rational()
    if s == "Z":
        return RingCtx.integers()
    if s == "Zero":
        return RingCtx.zero()
    m = re.fullmatch(r"(Fp|Zn):(\d+)", s)
    if not m:
        raise MalformedInput(f"unknown ring descriptor {text!r}")
    try:
        return RingCtx(m.group(1), int(m.group(2)))
    except UnsupportedRing as exc:
        raise MalformedInput(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class IdealFG:
    """Finitely generated ideal, normalized to one generator.

    ``normal`` is the gcd generator: a non-negative integer over Z; a divisor
    of n in ``[1, n)`` over Z/n, with 0 standing for the zero ideal; 0 or 1
    over a field.
    """

    ring: RingCtx
    gens: tuple
    normal: int = field(init=False)

    def __post_init__(self):
        gens = tuple(canonicalize(g, self.ring) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        r = self.ring
        if r.is_field:
            g = 1 if any(x != 0 for x in gens) else 0
        elif r.tag == INTEGERS:
            g = math.gcd(*gens) if gens else 0
        else:
            g = math.gcd(r.modulus, *gens) % r.modulus
        object.__setattr__(self, "normal", g)

    @classmethod
    def principal(cls, ring: RingCtx, g) -> IdealFG:
        return cls(ring, (g,))

    def __eq__(self, other):
        return isinstance(other, IdealFG) and (self.ring, self.normal) == (other.ring, other.normal)

    def __hash__(self):
        return hash((self.ring, self.normal))

    def __contains__(self, x) -> bool:
        if self.normal == 0:
            return x == 0
        if self.ring.is_field:
            return True
        return x % self.normal == 0

    @property
    def generator(self):
        return self.ring.reduce(self.normal)

    @property
    def is_zero(self) -> bool:
        return self.normal == 0

    @property
    def is_unit(self) -> bool:
        return self.normal == 1 or self.ring.is_zero_ring

    def _lifted(self) -> int:
        # Z/n: the zero ideal is generated by n itself
        return self.ring.modulus if (self.ring.modulus and self.normal == 0) else self.normal

    def normalized(self) -> IdealFG:
        return IdealFG(self.ring, (self.normal,))

    def intersect(self, other: IdealFG) -> IdealFG:
        _same_ring(self, other)
        if self.ring.is_field:
            return IdealFG(self.ring, (min(self.normal, other.normal),))
        return IdealFG(self.ring, (math.lcm(self._lifted(), other._lifted()),))

    def product(self, other: IdealFG) -> IdealFG:
        _same_ring(self, other)
        return IdealFG(self.ring, (self._lifted() * other._lifted(),))

    def plus(self, other: IdealFG) -> IdealFG:
        _same_ring(self, other)
        return IdealFG(self.ring, (math.gcd(self.normal, other.normal),))

    def image_in(self, target: RingCtx) -> IdealFG:
        return IdealFG(target, tuple(target.reduce(g) for g in self.gens))

    def __str__(self):
        return "ideal[" + ",".join(str(g) for g in self.gens) + "]"

    def __repr__(self):
        return f"IdealFG({self.ring.descriptor}, {self})"


def _same_ring(i: IdealFG, j: IdealFG):
    if i.ring != j.ring:
        raise ValueError(f"ideals over different rings: {i.ring} and {j.ring}")


def ideal_membership(x, ideal: IdealFG) -> bool:
    return x in ideal


def ideal_intersect(i: IdealFG, j: IdealFG) -> IdealFG:
    return i.intersect(j)


def parse_ideal(text: str, ring: RingCtx) -> IdealFG:
    m = re.fullmatch(r"\s*ideal\[(.*)\]\s*", text)
    if not m:
        raise MalformedInput(f"cannot parse ideal {text!r}")
    body = m.group(1).strip()
    try:
        gens = tuple(canonicalize(g, ring) for g in body.split(",")) if body else ()
    except MalformedElement as exc:
        raise MalformedInput(str(exc)) from exc
    return IdealFG(ring, gens)


def quotient_ring(ring: RingCtx, ideal: IdealFG) -> RingCtx:
    """R/I as a roster ring. Values transport with ``target.reduce``."""
    if ideal.ring != ring:
        raise ValueError("ideal belongs to a different ring")
    if ideal.is_unit:
        return RingCtx.zero()
    if ideal.is_zero:
        return ring
    return RingCtx.modular(ideal.normal)


def nilradical(ring: RingCtx) -> IdealFG:
    if ring.tag in (MODULAR, ZERO):
        return IdealFG(ring, (_radical(ring.modulus),))
    return IdealFG(ring, (0,))


def nilpotency_bound(ring: RingCtx) -> int:
    """An exponent k with x**k == 0 for every nilpotent x of the ring."""
    if ring.tag == MODULAR:
        return max(k for _, k in factorize(ring.modulus))
    return 1


class CRTComponent(NamedTuple):
    ring: RingCtx
    forward: Callable
    embed: Callable


def artinian_split(ring: RingCtx) -> list[CRTComponent]:
    """Chinese-remainder decomposition of Z/n into Z/p^k factors.

    ``forward`` reduces into the factor. ``embed`` sends a factor value to
    the element of Z/n congruent to it there and to 0 in every other factor,
    so summing the embeddings of all forward images returns the original.
    """
    if ring.tag == PRIME:
        ring = RingCtx.modular(ring.modulus)
    if ring.tag != MODULAR:
        raise UnsupportedRing(f"artinian_split needs Z/n, got {ring}")
    n = ring.modulus
    out = []
    for p, k in factorize(n):
        q = p**k
        comp = RingCtx.modular(q)
        rest = n // q
        idem = rest * pow(rest, -1, q) % n

        def forward(x, q=q):
            return x % q

        def embed(x, idem=idem, n=n):
            return x * idem % n

        out.append(CRTComponent(comp, forward, embed))
    return out


def crt_combine(components: list[CRTComponent], values) -> int:
    n = math.prod(c.ring.modulus for c in components)
    return sum(c.embed(v) for c, v in zip(components, values)) % n
