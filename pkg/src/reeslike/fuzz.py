"""Seeded random generators and a counterexample shrinker.

Every generator draws from a caller-owned :class:`random.Random`, so a job
seeded once reproduces the same cases. Generated objects are described by
plain coefficient lists so the shrinker can work on them without knowing
the algebra.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from . import matrices as mx
from .certs import ElemCert, UmRow, transport_dual
from .poly import Poly
from .rees import ReesCtx, ReesElem
from .rings import INTEGERS, MODULAR, RATIONAL, ZERO, RingCtx, _radical


def random_scalar(ring: RingCtx, rng: random.Random, mag: int = 3):
    if ring.tag == ZERO:
        return 0
    if ring.tag == INTEGERS:
        return rng.randint(-mag, mag)
    if ring.tag == RATIONAL:
        return Fraction(rng.randint(-mag, mag), rng.randint(1, mag))
    return rng.randrange(ring.modulus)


def random_unit_scalar(ring: RingCtx, rng: random.Random):
    if ring.tag == INTEGERS:
        return rng.choice((1, -1))
    if ring.tag == RATIONAL:
        return Fraction(rng.choice((1, -1)) * rng.randint(1, 4), rng.randint(1, 4))
    if ring.tag == ZERO:
        return 0
    while True:
        c = rng.randrange(1, ring.modulus)
        if math.gcd(c, ring.modulus) == 1:
            return c


def nil_generator(ring: RingCtx) -> int:
    """A generator of nil(R): rad(n) for Z/n, 0 otherwise."""
    return _radical(ring.modulus) % ring.modulus if ring.tag == MODULAR else 0


def random_coeffs(ring: RingCtx, rng: random.Random, deg: int, odd_gen=None, mag: int = 3) -> list:
    """Coefficients of a random polynomial of degree <= deg.

    With ``odd_gen`` set, odd-degree coefficients are multiples of it, which
    puts the polynomial in R[at, t^2] for a = (odd_gen).
    """
    out = []
    for k in range(deg + 1):
        c = random_scalar(ring, rng, mag)
        if odd_gen is not None and k % 2:
            c = ring.mul(ring.reduce(odd_gen), c)
        out.append(c)
    return out


def random_element(alg, rng: random.Random, deg: int = 3, mag: int = 3):
    if isinstance(alg, ReesCtx):
        cs = random_coeffs(alg.ring, rng, deg, alg.a.normal, mag)
        return ReesElem(alg, Poly(alg.ring, cs, "t"), check=False)
    return Poly(alg.ring, random_coeffs(alg.ring, rng, deg, None, mag), alg.var)


def element_from_coeffs(alg, cs):
    """Rebuild an element from plain coefficients; raises NotInAlgebra if invalid."""
    if isinstance(alg, ReesCtx):
        return ReesElem(alg, Poly(alg.ring, cs, "t"))
    return Poly(alg.ring, cs, alg.var)


def random_op_items(alg, n: int, rng: random.Random, count: int, deg: int = 3, mag: int = 3) -> list:
    """``count`` random ops as (i, j, coeffs) items."""
    items = []
    for _ in range(count):
        i, j = rng.sample(range(n), 2)
        items.append((i, j, list(random_element(alg, rng, rng.randint(0, deg), mag).coeffs)))
    return items


def cert_from_items(alg, n: int, items) -> ElemCert:
    return ElemCert(alg, n, [(i, j, element_from_coeffs(alg, cs)) for i, j, cs in items])


def row_from_cert(alg, cert: ElemCert) -> UmRow:
    """e_1 . cert, with the dual of e_1 transported along."""
    e1 = mx.unit_row(alg, cert.n)
    return UmRow(alg, cert.apply_row(e1), transport_dual(e1, cert))


def random_um_row(alg, n: int, rng: random.Random, lo: int = 5, hi: int = 30, deg: int = 3):
    items = random_op_items(alg, n, rng, rng.randint(lo, hi), deg)
    cert = cert_from_items(alg, n, items)
    return row_from_cert(alg, cert), cert


def unit_item(alg, rng: random.Random, deg: int = 2) -> list:
    """[c, q0, q1, ...] describing the unit c + nu*(q0 + q1 t^2 + ...), nu = nil generator."""
    ring = alg.base
    out = [random_unit_scalar(ring, rng)]
    if nil_generator(ring):
        out += [random_scalar(ring, rng) for _ in range(rng.randint(0, deg))]
    return out


def unit_from_item(alg, item):
    """The unit described by :func:`unit_item`; ValueError if not a unit."""
    ring = alg.base
    c, qs = item[0], item[1:]
    nu = nil_generator(ring)
    cs = [ring.reduce(c)] + [ring.zero_elem] * (2 * len(qs))
    for k, q in enumerate(qs):
        cs[2 * k] = ring.add(cs[2 * k], ring.mul(nu, ring.reduce(q)))
    u = element_from_coeffs(alg, cs)
    if not alg.is_unit(u):
        raise ValueError(f"{u} is not a unit")
    return u


def gl_from_items(alg, n: int, items, unit) -> tuple[list, list]:
    """M = cert . diag(u, 1, ..., 1) together with its inverse."""
    cert = cert_from_items(alg, n, items)
    d = mx.identity(alg, n)
    d_inv = mx.identity(alg, n)
    d[0][0], d_inv[0][0] = unit, alg.inverse(unit)
    m = mx.mat_mul(cert.matrix(), d, alg)
    m_inv = mx.mat_mul(d_inv, cert.inverse().matrix(), alg)
    return m, m_inv


# shrinking


def _smaller(c):
    if isinstance(c, Fraction):
        return [Fraction(0)] + ([Fraction(math.trunc(c))] if c.denominator != 1 else [])
    if c == 0:
        return []
    half = -((-c) // 2) if c < 0 else c // 2
    step = c - 1 if c > 0 else c + 1
    return list(dict.fromkeys([0, half, step]))


def _coeff_variants(cs: list):
    if cs:
        yield cs[:-1]
    for k, c in enumerate(cs):
        for s in _smaller(c):
            yield cs[:k] + [s] + cs[k + 1:]


def _item_variants(item):
    if isinstance(item, list):
        yield from _coeff_variants(item)
    elif isinstance(item, tuple) and item and isinstance(item[-1], list):
        for cs in _coeff_variants(item[-1]):
            yield item[:-1] + (cs,)


def shrink(case: list, fails: Callable[[list], bool], removable: Callable[[object], bool] = lambda it: False,
           max_steps: int = 500) -> list:
    """Greedy minimization of a failing case.

    A case is a list of items: coefficient lists, or tuples whose last entry
    is a coefficient list. Candidates drop removable items, then drop
    trailing coefficients, then move coefficients toward 0. The first
    candidate that still fails is kept; stops at a fixed point.
    """
    cur = list(case)
    for _ in range(max_steps):
        for cand in _candidates(cur, removable):
            if fails(cand):
                cur = cand
                break
        else:
            return cur
    return cur


def _candidates(case, removable):
    for k, item in enumerate(case):
        if removable(item):
            yield case[:k] + case[k + 1:]
    for k, item in enumerate(case):
        for v in _item_variants(item):
            yield case[:k] + [v] + case[k + 1:]


def describe_case(case) -> str:
    parts = []
    for item in case:
        if isinstance(item, tuple):
            parts.append("(" + ", ".join(str(x) for x in item) + ")")
        else:
            parts.append(str(item))
    return "; ".join(parts)

