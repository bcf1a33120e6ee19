from __future__ import annotations

import pytest

from reeslike import fuzz, suites
from reeslike.errors import UnsupportedRing
from reeslike.rees import ReesCtx, parse_context
from reeslike.rings import RingCtx
from reeslike.suites import SUITES, InvalidCase, run_suite

Z4 = ReesCtx.of(RingCtx.modular(4), 2)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_small(name):
    ctx = Z4 if name != "prop39" else ReesCtx.of(RingCtx.integers(), 2)
    res = run_suite(name, ctx, seed=5, trials=12)
    assert res.ok, res.render()
    assert res.passed == 12 and len(res.digest) == 16


def test_render_layout():
    text = run_suite("square", Z4, 1, 4).render()
    lines = text.splitlines()
    assert lines[0] == f"check suite=square ctx={Z4.handle} seed=1 trials=4"
    assert lines[1].startswith("counts ")
    assert lines[2].startswith("result=pass passed=4 failed=0 digest=")


def test_seed_changes_digest():
    a = run_suite("square", Z4, 1, 20)
    b = run_suite("square", Z4, 2, 20)
    assert a.digest != b.digest
    assert a.render() == run_suite("square", Z4, 1, 20).render()


def test_unsupported_suite_context():
    with pytest.raises(UnsupportedRing):
        run_suite("prop39", Z4, 0, 3)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", Z4, 0, 1)


def test_shrink_minimizes_coefficients():
    # fails whenever the first coefficient list has an entry >= 5
    case = [[9, 7, 6, 8], ("x", [3, 3])]
    small = fuzz.shrink(case, lambda c: any(x >= 5 for x in c[0]))
    assert small == [[5], ("x", [])]


def test_shrink_drops_removable_items():
    case = [("n", 3, []), (0, 1, [4, 2]), (1, 0, [1]), (0, 2, [7])]
    small = fuzz.shrink(case, lambda c: any(isinstance(it[0], int) and it[2] and it[2][0] >= 7 for it in c),
                        lambda it: isinstance(it[0], int))
    assert small == [("n", 3, []), (0, 2, [7])]


def test_failing_suite_reports_minimized_case(monkeypatch):
    def make(ctx, rng, k, params):
        return [fuzz.random_coeffs(ctx.ring, rng, 5)]

    def check(ctx, case, counts):
        if len(case[0]) == 0:
            raise InvalidCase("empty")
        counts["seen"] += 1
        return "too long" if len(case[0]) >= 3 else None

    monkeypatch.setitem(SUITES, "toy", (make, check, None))
    res = run_suite("toy", ReesCtx.of(RingCtx.integers(), 2), 3, 30)
    assert not res.ok and res.failed > 0
    text = res.render()
    assert "result=fail" in text and "failure trial=" in text
    minimized = text.splitlines()[-1]
    assert minimized.startswith("minimized too long case=")
    assert minimized.endswith("case=[0, 0, 0]")


def test_degenerate_square_counts_vacuous_mismatches():
    res = run_suite("square", parse_context("rees{ring=Fp:5,a=ideal[1]}"), 0, 30)
    assert res.ok
    # the residue ring is zero, so a perturbed pair is still a matched pair
    assert res.counts["perturbation-vacuous"] == 30 and res.counts["rejected"] == 0


def test_expect_full_classification():
    assert suites._expect_full(Z4)
    assert suites._expect_full(parse_context("rees{ring=Fp:5,a=ideal[0]}"))
    assert suites._expect_full(parse_context("rees{ring=Fp:5,a=ideal[1]}"))
    assert not suites._expect_full(parse_context("rees{ring=Zn:12,a=ideal[2]}"))
