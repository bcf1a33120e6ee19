from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from reeslike.errors import ClosureViolation, MalformedInput, NotInAlgebra, UnsupportedRing
from reeslike.poly import Poly
from reeslike.rees import (
    ReesCtx,
    ReesElem,
    extended_membership,
    is_nilpotent,
    localized_membership,
    parse_context,
    quotient_context,
    quotient_image,
    rees_arith,
    rees_membership,
    star_membership,
    star_primary_components,
)
from reeslike.rings import IdealFG, RingCtx

Z = RingCtx.integers()
Z4 = RingCtx.modular(4)
ZA2 = ReesCtx.of(Z, 2)


def test_membership_examples():
    assert rees_membership(Poly(Z, [3, 2, 5, 4]), ZA2)
    assert not rees_membership(Poly(Z, [0, 1]), ZA2)
    assert rees_membership(Poly(Z, []), ZA2)


def test_construction_checks_parity():
    with pytest.raises(NotInAlgebra):
        ZA2("t")
    with pytest.raises(NotInAlgebra):
        ZA2.parse("1 + 3*t")


def test_arith_examples():
    two_t = ZA2("2*t")
    assert two_t * two_t == ZA2("4*t^2")
    assert rees_arith(two_t, ZA2("t^2"), "mul") == ZA2("2*t^3")
    c4 = ReesCtx.of(Z4, 2)
    assert c4("1 + 2*t") + c4("3 + 2*t") == c4.zero


def test_closure_violation_is_internal_error():
    # force an element that bypasses the check, then combine it
    bogus = ReesElem(ZA2, Poly(Z, [0, 1]), check=False)
    with pytest.raises(ClosureViolation):
        bogus + ZA2.one


def test_dimension_metadata():
    assert ZA2.dim_A == 2
    assert ReesCtx.of(Z4, 2).dim_A == 1


def test_quotient_image_extremes():
    f = ZA2("3 + 2*t + 5*t^2")
    same = quotient_image(f, IdealFG(Z, (0,)))
    assert same.poly.coeffs == f.poly.coeffs
    gone = quotient_image(f, IdealFG(Z, (1,)))
    assert gone.is_zero() and gone.ctx.ring.is_zero_ring


def test_quotient_context():
    q = quotient_context(ZA2, IdealFG(Z, (6,)))
    assert q.ring == RingCtx.modular(6) and q.a.normal == 2


def test_nilpotent_examples():
    c4 = ReesCtx.of(Z4, 2)
    assert is_nilpotent(c4("2 + 2*t"))
    assert (c4("2 + 2*t") ** 2).is_zero()
    assert not is_nilpotent(c4("1 + 2*t"))
    assert is_nilpotent(c4.zero)


def test_star_examples():
    six = IdealFG(Z, (6,))
    assert star_membership(ZA2("6 + 6*t + 12*t^2"), six)
    assert not star_membership(ZA2("2*t"), six)
    assert star_membership(ZA2.zero, six)


def test_extended_ideal_vs_star():
    # bA has odd part ab; b* has odd part a cap b
    b = IdealFG(Z, (2,))
    f = ZA2("2*t")
    assert star_membership(f, b)
    assert not extended_membership(f, b)
    assert extended_membership(ZA2("2 + 4*t"), b)


@pytest.mark.parametrize("m,want", [(12, [(2, 4), (3, 3)]), (7, [(7, 7)]), (8, [(2, 8)])])
def test_primary_components(m, want):
    comps = star_primary_components(IdealFG(Z, (m,)))
    assert [(p, q.normal) for p, q in comps] == want


def test_primary_components_need_integers():
    with pytest.raises(UnsupportedRing):
        star_primary_components(IdealFG(Z4, (2,)))


def _saturation_oracle(f, s, ctx, search=12):
    return any(rees_membership(f * Poly(Z, [s**m]), ctx) for m in range(search))


def test_localized_examples():
    assert localized_membership(Poly(Z, [0, 2]), 2, 0, ReesCtx.of(Z, 4))
    assert not localized_membership(Poly(Z, [0, 1]), 2, 0, ReesCtx.of(Z, 3))
    assert localized_membership(Poly(Z, [3, 2, 5]), 7, 0, ZA2)


@given(st.lists(st.integers(-30, 30), max_size=6), st.sampled_from([2, 3, 5, 6]), st.sampled_from([2, 4, 6, 8, 12, 9]))
def test_localized_matches_saturation_search(cs, s, a):
    ctx = ReesCtx.of(Z, a)
    f = Poly(Z, cs)
    assert localized_membership(f, s, 0, ctx) == _saturation_oracle(f, s, ctx)


def test_localization_over_z_mod_n_unsupported():
    with pytest.raises(UnsupportedRing):
        localized_membership(Poly(Z4, [1]), 1, 0, ReesCtx.of(Z4, 2))


@given(st.lists(st.integers(-20, 20), max_size=7), st.lists(st.integers(-20, 20), max_size=7))
def test_algebra_closed_under_ring_ops(a, b):
    def lift(cs):
        return ZA2([c * (2 if k % 2 else 1) for k, c in enumerate(cs)])
    f, g = lift(a), lift(b)
    for h in (f + g, f - g, f * g, -f):
        assert rees_membership(h.poly, ZA2)


@pytest.mark.parametrize("text", ["rees{ring=Z, a=ideal[2]}", "rees{ring=Zn:12,a=ideal[6]}", "rees{ring=Fp:5,a=ideal[0]}"])
def test_parse_context(text):
    ctx = parse_context(text)
    assert parse_context(ctx.handle) == ctx


@pytest.mark.parametrize("text", ["rees{ring=Q", "rees{ring=Zn:1,a=ideal[1]}", "ring=Z"])
def test_parse_context_errors(text):
    with pytest.raises(MalformedInput):
        parse_context(text)
